#pragma once

// Crossed products A x| G of a finite-dimensional multi-matrix algebra by a
// finite abelian group acting through summand permutations composed with
// conjugation by diagonal roots of unity. Scalars live in Q(zeta_m), m the
// group exponent. Basis: e U_g with index unit * |G| + g.

#include "limitalg/algebra.hpp"
#include "limitalg/cyclotomic.hpp"
#include "limitalg/group.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace limitalg {

enum class BaseKind { Triangular, Full };

struct BaseAlgebra {
    BaseKind kind = BaseKind::Triangular;
    LevelShape shape; // may be empty: the zero algebra

    std::vector<UnitCoord> units() const;
    std::string to_string() const;
};

struct GeneratorAction {
    std::vector<int> perm;              // summand s -> perm[s]; empty = identity
    std::vector<std::vector<int>> diag; // per summand exponents a_i of zeta_m^{a_i}
};

struct CrossedSystem {
    std::string name;
    BaseAlgebra base;
    FiniteAbelianGroup group;
    std::vector<GeneratorAction> generators; // one per cyclic factor
};

class CrossedError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// alpha_g on base units: unit b -> coeff * unit target.
struct MonomialMap {
    std::vector<int> target;
    std::vector<Cyclotomic> coeff;
};

class CrossedAlgebra {
public:
    explicit CrossedAlgebra(CrossedSystem sys);

    const CrossedSystem& system() const { return sys_; }
    const FiniteAbelianGroup& group() const { return sys_.group; }
    int field_order() const { return m_; }
    Cyclotomic zero() const { return Cyclotomic(m_); }

    const std::vector<UnitCoord>& base_units() const { return units_; }
    int base_dim() const { return static_cast<int>(units_.size()); }
    int dim() const { return base_dim() * group().size(); }
    int index(int unit, int g) const { return unit * group().size() + g; }
    int unit_of(int i) const { return i / group().size(); }
    int group_of(int i) const { return i % group().size(); }
    int unit_index(const UnitCoord& u) const;
    std::string label(int i) const;

    const MonomialMap& alpha(int g) const { return alpha_[g]; }
    const FiniteAlgebra<Cyclotomic>& base() const { return base_; }
    const FiniteAlgebra<Cyclotomic>& algebra() const { return alg_; }

    /// Image of basis vector i in the left-regular covariant representation
    /// on C^n (x) l^2(G), as (row, col) -> value.
    std::map<std::pair<int, int>, Cyclotomic> model_matrix(int i) const;
    int model_size() const;

    /// Checks x y against the model for every basis pair.
    bool verify_covariance() const;

private:
    CrossedSystem sys_;
    int m_;
    std::vector<UnitCoord> units_;
    std::map<UnitCoord, int> unit_index_;
    std::vector<int> offsets_;
    std::vector<MonomialMap> alpha_;
    FiniteAlgebra<Cyclotomic> base_;
    FiniteAlgebra<Cyclotomic> alg_;
};

CrossedAlgebra build_crossed(const CrossedSystem& sys);

Rows<Cyclotomic> radical_traceform(const CrossedAlgebra& A);
Rows<Cyclotomic> base_radical(const CrossedAlgebra& A);

struct TightnessReport {
    bool tight = false;
    int radical_dim = 0;
    int expected_dim = 0;              // dim(Rad A) * |G|
    Rows<Cyclotomic> radical;          // oracle basis (crossed coordinates)
    Rows<Cyclotomic> ideal_core;       // J_G in base coordinates
    bool core_generates = false;       // J_G x| G equals the radical
    int nilpotency_index = 0;          // of the oracle radical, 0 if not nilpotent
};

TightnessReport radical_tightness_check(const CrossedAlgebra& A);

struct CorollaryReport {
    bool equal = false;
    int dimension = 0;
    std::vector<UnitCoord> linkless_units; // e with e A e = 0
};

CorollaryReport corollary_formula_check(const CrossedAlgebra& A);

struct DualActionReport {
    bool multiplicative = true;
    bool group_action = true;
    bool trivial_is_identity = true;
};

/// alpha-hat_gamma(e U_g) = conj(gamma(g)) e U_g, as a diagonal scaling.
std::vector<Cyclotomic> dual_action(const CrossedAlgebra& A, const Character& gamma);
DualActionReport verify_dual_action(const CrossedAlgebra& A);

struct IdealLattice {
    std::vector<std::vector<int>> ideals; // basis index sets, canonical order
    std::vector<std::vector<int>> meet, join;
    int find(const std::vector<int>& ideal) const;
};

IdealLattice enumerate_invariant_ideals(const CrossedAlgebra& A);
IdealLattice enumerate_dual_invariant_ideals(const CrossedAlgebra& A);

struct LatticeIsoReport {
    int base_size = 0;
    int crossed_size = 0;
    bool bijective = false;
    bool meets_preserved = false;
    bool joins_preserved = false;
    bool ok() const { return bijective && meets_preserved && joins_preserved; }
};

LatticeIsoReport verify_lattice_iso(const CrossedAlgebra& A);

struct DiagReport {
    int crossed_diag_dim = 0;
    int expected_dim = 0; // dim diag(A) * |G|
    bool equal = false;
    int ampliation = 0;
    int ampliation_diag_dim = 0;
    int ampliation_expected = 0;
    bool ampliation_equal = false;
};

DiagReport diag_check(const CrossedAlgebra& A, int ampliation = 2);

struct PermanenceReport {
    bool applicable = false; // base semisimple
    bool crossed_semisimple = false;
    bool holds() const { return !applicable || crossed_semisimple; }
};

PermanenceReport semisimplicity_permanence_check(const CrossedAlgebra& A);

struct LinksLemmaEntry {
    int element;  // basis index of a = e U_h
    int g;        // group element
    UnitCoord b;  // e b alpha_g(e) != 0
};

struct LinksLemmaReport {
    int checked = 0;
    int skipped_radical = 0;
    std::vector<LinksLemmaEntry> witnesses;
    std::vector<int> failures;
};

LinksLemmaReport links_lemma_check(const CrossedAlgebra& A);

/// Text format:
///   base triangular 2 2        (or: base full 2)
///   group 2 2                  (cyclic factor orders; omit for the trivial group)
///   generator 0 perm 1 0
///   generator 0 diag 0 : 0 1   (exponents of zeta_m on summand 0)
CrossedSystem parse_crossed(const std::string& text, const std::string& name = {});
std::string to_text(const CrossedSystem& sys);

const std::vector<std::string>& crossed_preset_names();
CrossedSystem crossed_preset(const std::string& name);
const std::string& crossed_preset_source(const std::string& name);
CrossedSystem load_crossed(const std::string& name_or_path);

/// Base in {T_2, T_3, T_2+T_2}, G in {Z_1, Z_2, Z_3, Z_2xZ_2}, generators built
/// from diagonal roots of unity and summand swaps; invalid combinations
/// (relations failing) are dropped.
std::vector<CrossedSystem> tightness_family();

} // namespace limitalg
