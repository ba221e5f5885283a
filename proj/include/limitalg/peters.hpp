#pragma once

// Peters' parametrization for finite dynamical systems (X, phi). Subsets of X
// are bitmasks; an ideal of C(X) is stored as its zero-set.

#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace limitalg {

using Subset = std::uint64_t;

class PetersError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct FiniteDynSys {
    std::vector<std::string> labels;
    std::vector<int> phi; // permutation of 0..|X|-1

    int size() const { return static_cast<int>(labels.size()); }
    Subset all() const { return size() == 64 ? ~Subset{0} : (Subset{1} << size()) - 1; }
    Subset image(Subset s) const;     // phi(S)
    Subset preimage(Subset s) const;  // phi^{-1}(S)
    Subset preimage(Subset s, int times) const;
    std::string to_string(Subset s) const; // "{a,b}"
};

FiniteDynSys make_system(std::vector<std::string> labels, std::vector<int> phi);
/// points = a b c
/// phi: a->b b->a c->c
FiniteDynSys parse_system(const std::string& text);
FiniteDynSys load_system(const std::string& path);
std::string to_text(const FiniteDynSys& sys);

/// X_0, X_1, ..., constant after the last entry.
struct SubsetSequence {
    std::vector<Subset> sets;

    Subset at(int n) const;
    int stabilization() const; // first index from which the sequence is constant
    SubsetSequence normalized() const;
    friend bool operator==(const SubsetSequence& a, const SubsetSequence& b);
};

struct StarCheck {
    bool ok = true;
    int index = -1; // first violated n
    std::string witness;
};

/// X_{n+1} u phi(X_{n+1}) subset of X_n for all n, tail included.
StarCheck check_star(const FiniteDynSys& sys, const SubsetSequence& seq);

/// I_n: functions vanishing on zero[n]; constant after the last entry.
struct IdealSequence {
    std::vector<Subset> zero;
    Subset at(int n) const;
};

// ideal operations in zero-set form
bool ideal_contains(Subset big, Subset small); // I(small) subset of I(big)
Subset ideal_meet(Subset a, Subset b);
Subset ideal_sum(Subset a, Subset b);
Subset ideal_alpha(const FiniteDynSys& sys, Subset z); // alpha(f) = f o phi^{-1}

IdealSequence sets_to_ideals(const SubsetSequence& seq);
SubsetSequence ideals_to_sets(const IdealSequence& iseq);
/// I_n subset of I_{n+1} n alpha(I_{n+1}) for n < count (count < 0: whole sequence + tail).
StarCheck check_bigstar(const FiniteDynSys& sys, const IdealSequence& iseq, int count = -1);

std::vector<SubsetSequence> enumerate_sequences(const FiniteDynSys& sys, int horizon);
SubsetSequence random_sequence(const FiniteDynSys& sys, int horizon, std::mt19937_64& rng);

struct LatticePair {
    SubsetSequence meet, join;
};
LatticePair lattice_ops(const SubsetSequence& a, const SubsetSequence& b);

bool recurrent_dense(const FiniteDynSys& sys);

/// N x N lower-triangular matrices over C(X), indices 0..N-1.
struct TruncatedSemicrossed {
    FiniteDynSys sys;
    int N = 0;
};

/// Homogeneous ideal: entry (i,j), i >= j, holds the functions vanishing on zero[i][j].
struct HomogeneousIdeal {
    int N = 0;
    std::vector<std::vector<Subset>> zero;
    friend bool operator==(const HomogeneousIdeal&, const HomogeneousIdeal&) = default;
};

TruncatedSemicrossed build_truncated(const FiniteDynSys& sys, int N);
HomogeneousIdeal zero_ideal(const TruncatedSemicrossed& model);
HomogeneousIdeal full_ideal(const TruncatedSemicrossed& model);
/// zero[i][j] = phi^{-j}(X_{i-j}).
HomogeneousIdeal ideal_from_sequence(const TruncatedSemicrossed& model, const SubsetSequence& seq);
HomogeneousIdeal ideal_intersection(const HomogeneousIdeal& a, const HomogeneousIdeal& b);
HomogeneousIdeal ideal_plus(const HomogeneousIdeal& a, const HomogeneousIdeal& b);

/// Empty when the ideal is two-sided and shift invariant (zero[i+1][j+1] =
/// phi^{-1}(zero[i][j])); otherwise the failed closure product.
std::optional<std::string> ideal_diagnostic(const TruncatedSemicrossed& model,
                                            const HomogeneousIdeal& ideal);
/// Corner ideals I_{n,0}, n = 0..N-1. Throws PetersError on non-invariant input.
IdealSequence extract_bigstar(const TruncatedSemicrossed& model, const HomogeneousIdeal& ideal);

} // namespace limitalg
