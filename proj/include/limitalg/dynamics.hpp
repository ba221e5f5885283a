#pragma once

// Finite abelian group actions on towers, given on supports only: generator g
// maps level n into level N(n) >= n by labeling words, exactly like a step.

#include "limitalg/group.hpp"
#include "limitalg/links.hpp"
#include "limitalg/tower_parser.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace limitalg {

struct ActionMap {
    int from = 0;
    int to = 0;
    Embedding map;
};

class TowerAction {
public:
    TowerAction() = default; // trivial group
    TowerAction(const TowerSpec& tower, const std::vector<ActionBlock>& blocks);

    const FiniteAbelianGroup& group() const { return group_; }
    const std::vector<std::string>& names() const { return names_; }
    const std::map<int, ActionMap>& maps(int generator) const { return maps_.at(generator); }

    /// Highest level on which every generator has a map (or -1).
    int max_level() const;

private:
    FiniteAbelianGroup group_;
    std::vector<std::string> names_;
    std::vector<std::map<int, ActionMap>> maps_;
};

/// Level-preserving action by `orders` generators that fixes every support
/// (conjugation by diagonal unitaries), defined on levels 0..top.
TowerAction diagonal_action(const TowerSpec& tower, const std::vector<int>& orders, int top);

MatrixUnitSum apply_generator(const TowerSpec& tower, const TowerAction& action, int generator,
                              const MatrixUnitSum& x);
MatrixUnitSum apply_action(const TowerSpec& tower, const TowerAction& action, int g,
                           const MatrixUnitSum& x);
MatrixUnitSum apply_action(const TowerSpec& tower, const TowerAction& action, int g,
                           const MatrixUnit& e);

/// Compares two sums after embedding both to a common level.
bool same_element(const TowerSpec& tower, const MatrixUnitSum& a, const MatrixUnitSum& b);

struct ActionCheck {
    bool compatible = true;
    bool orders = true;
    bool commute = true;
    std::vector<std::string> problems;
    bool ok() const { return compatible && orders && commute; }
};

/// Compatibility squares between mapped levels and group relations, on every
/// matrix unit of mapped levels <= horizon.
ActionCheck verify_action(const TowerSpec& tower, const TowerAction& action, int horizon);

/// Occurrences (a,b) of e and (a',b') of alpha_g(e) in one summand with b <= a'.
std::optional<LinkWitness> twisted_link(const TowerSpec& tower, const TowerAction& action,
                                        const MatrixUnit& e, int g, int horizon);
/// Same for a pair of sums: x A y != 0 at some level <= horizon.
std::optional<LinkWitness> link_between(const TowerSpec& tower, const MatrixUnitSum& x,
                                        const MatrixUnitSum& y, int horizon);

struct TechnicalTuple {
    int g = 0, n1 = 0; // first twisted link e_j A alpha_g(e_i) at level n1
    int h = 0, N = 0;  // second twisted link at level N
    int k = 0, l = 0, m = 0;
    int n2 = 0;        // e_m A alpha_g(e_k) != 0 seen at level n2
    int ratio = 0;     // n2/N as block sizes
    int l_last = 0, m_first = 0, kp_last = 0, lp_first = 0;
    bool first = false, second = false, third = false, fourth = false, fifth = false;
    bool satisfiable() const { return first && second && third && fourth && fifth; }
    bool lemma_hypotheses = false; // e_m A e_l = e_l A e_k = 0 (checked to horizon)
    bool extracted = false;        // from the index chase, not the exhaustive sweep
};

struct TechnicalAudit {
    bool applicable = false; // e strictly upper and certified linkless
    std::string reason;
    std::vector<TechnicalTuple> tuples;
    int satisfiable = 0;
    int embedding_order_violations = 0; // (4)/(5) failing: would be a bug
};

TechnicalAudit technical_index_audit(const TowerSpec& tower, const TowerAction& action,
                                     const MatrixUnit& e, int h1, int h2);

} // namespace limitalg
