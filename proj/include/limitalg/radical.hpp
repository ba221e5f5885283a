#pragma once

#include "limitalg/algebra.hpp"
#include "limitalg/links.hpp"

#include <optional>
#include <string>
#include <vector>

namespace limitalg {

struct DonsigChain {
    std::vector<MatrixUnit> T; // T_0 .. T_d
    std::vector<MatrixUnit> S; // S_1 .. S_d
};

/// T_{l+1} = embed(T_l) S_{l+1} embed(T_l) at the first level where T_l has a
/// link, S the least witness. nullopt when some T_l has no link up to horizon.
std::optional<DonsigChain> donsig_chain(const TowerSpec& tower, const MatrixUnit& T0, int depth,
                                        int horizon = kDefaultHorizon);

/// Re-verifies every step by exact Element multiplication.
bool verify_chain(const TowerSpec& tower, const DonsigChain& chain);

struct ChainCycle {
    DonsigChain chain;  // prefix T_0..T_d
    int cycle_start = 0; // T_d has the same state as T_{cycle_start}
    int cycle_length() const { return static_cast<int>(chain.T.size()) - 1 - cycle_start; }
    // state of each T_l inside the repeating regime: (summand, strict)
    std::vector<std::pair<int, bool>> states;
};

/// Infinite Donsig chain in a repeat tower: once a chain unit lies in the
/// repeating regime, whether it links and where the next unit lands depend
/// only on its block and on whether it is diagonal, so a repeated state
/// closes the chain into a cycle. Throws TowerError for other towers.
std::optional<ChainCycle> chain_cycle_certificate(const TowerSpec& tower, const MatrixUnit& e,
                                                  int horizon = kDefaultHorizon);

struct NilpotencyCertificate {
    int exponent = 0;
    int horizon = 0;      // last level checked
    bool closed = false;  // true when the check provably covers every level
    std::string closure;  // how closure was established
    int recurrence_from = -1, recurrence_to = -1;
};

struct NilpotencyCounterexample {
    int level = 0;
    std::vector<MatrixUnit> b; // (e b)^k != 0 for b = sum of these units
    bool single_unit = false;
};

struct NilpotencyResult {
    std::optional<NilpotencyCertificate> certificate;
    std::optional<NilpotencyCounterexample> counterexample;
};

/// Checks e b_1 e b_2 ... e b_k = 0 for all matrix units b_i at every level in
/// [e.level, horizon] (which gives (e b)^k = 0 for every b); with
/// pattern_closure, tries to extend the check to all levels.
NilpotencyResult uniform_nilpotency(const TowerSpec& tower, const MatrixUnit& e, int exponent,
                                    int horizon, bool pattern_closure = true);

enum class RadicalState { InRadical, NotInRadical, Unknown };
const char* to_string(RadicalState s);

struct RadicalStatus {
    RadicalState state = RadicalState::Unknown;
    std::string certificate; // linkless-decomposition | uniform-nilpotency | chain-cycle
    int level = -1;          // linkless decomposition level
    std::vector<UnitLinkReport> subordinates;
    std::optional<NilpotencyCertificate> nilpotency;
    std::optional<ChainCycle> cycle;
    int expand_horizon = 0, link_horizon = 0;
    std::vector<std::string> notes;
};

RadicalStatus radical_membership(const TowerSpec& tower, const MatrixUnit& e,
                                 int expand_horizon = 4, int link_horizon = kDefaultHorizon,
                                 int max_exponent = 3);

/// Trace-form radical of the level algebra, as matrix units when the span is
/// spanned by units (always true for triangular algebras).
struct FiniteRadical {
    std::vector<UnitCoord> units;
    int dimension = 0;
    bool unit_spanned = true;
};

FiniteRadical finite_level_radical(const LevelShape& shape);

struct FactorizationCheck {
    int summand;
    UnitCoord subordinate;
    int I, J;
    bool applicable; // I >= J, so the middle factor exists in the block
    bool holds;
};

struct ExtremalReport {
    Decomposition decomposition;
    std::vector<FactorizationCheck> checks;
    bool all_hold = true;
};

/// e_{i_k j_k} = e_{i_k I} e_{I J} e_{J j_k} per summand, with (I,J) the
/// extremal pair of that summand. The product is computed in the full matrix
/// algebra, since e_{i_k I} and e_{J j_k} need not be upper-triangular.
ExtremalReport extremal_subordinate_check(const TowerSpec& tower, const MatrixUnit& e, int level);

} // namespace limitalg
