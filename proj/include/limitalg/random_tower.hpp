#pragma once

#include "limitalg/tower.hpp"

#include <random>

namespace limitalg {

/// Uniformly steps through the available ballot moves, so every word returned
/// satisfies COUNT and LATTICE for the given multiplicities mult[s].
Word random_lattice_word(const LevelShape& source, const std::vector<int>& mult,
                         std::mt19937_64& rng);

/// Finite single-block tower with the given sizes (each dividing the next) and
/// random valid words.
TowerSpec random_tuhf_tower(const std::vector<int>& sizes, std::mt19937_64& rng);

} // namespace limitalg
