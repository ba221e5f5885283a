#pragma once

// Links: e has a link when e A e != 0. For a matrix unit embedded at level N
// as sum_r e_{a_r b_r} this happens iff some summand has b_r <= a_r' for two
// of its occurrences, witnessed by f = e_{b_r a_r'}.

#include "limitalg/tower.hpp"

#include <optional>
#include <string>
#include <vector>

namespace limitalg {

inline constexpr int kDefaultHorizon = 12;

struct LinkWitness {
    int level = 0;
    MatrixUnit f;
    UnitCoord first;  // occurrence r
    UnitCoord second; // occurrence r'
};

/// Lexicographically least witness (summand, col(r), row(r')) at level N.
std::optional<LinkWitness> has_link_at(const TowerSpec& tower, const MatrixUnit& e, int level);
/// Same search on an already embedded sum.
std::optional<LinkWitness> find_link(const MatrixUnitSum& image);

enum class CertificateKind { Frozen, Separation };
const char* to_string(CertificateKind k);

/// Per summand (maxRow, minCol) of an embedded unit; used in certificate traces.
struct SeparationState {
    int summand;
    int max_row;
    int min_col;
};

struct LinklessCertificate {
    CertificateKind kind = CertificateKind::Frozen;
    int level = 0; // level at which the image was inspected
    // Frozen: summands of the image at `level`, all carried identically onward.
    std::vector<int> summands;
    // Separation: active-summand sets of the repeating step, starting at
    // `level`, until one recurs at index cycle_start.
    std::vector<std::vector<int>> active_sets;
    int cycle_start = 0;
    // (maxRow, minCol) transfer for the first few levels, for display.
    std::vector<std::vector<SeparationState>> trace;
};

std::optional<LinklessCertificate> certify_linkless(const TowerSpec& tower, const MatrixUnit& e,
                                                    int horizon = kDefaultHorizon);

/// Re-checks a certificate against the tower; true when it is sound for e.
bool check_certificate(const TowerSpec& tower, const MatrixUnit& e,
                       const LinklessCertificate& cert);

enum class LinkState { Linked, NotLinkedUpTo, CertifiedLinkless };
const char* to_string(LinkState s);

struct LinkStatus {
    LinkState state = LinkState::NotLinkedUpTo;
    int horizon = 0;
    std::optional<LinkWitness> witness;
    std::optional<LinklessCertificate> certificate;
};

/// True when summand s at level n is carried by identity words at every later level.
bool summand_frozen(const TowerSpec& tower, int level, int summand);

/// Highest level searched for a horizon (clamped for finite towers).
int effective_horizon(const TowerSpec& tower, int horizon);

LinkStatus link_status(const TowerSpec& tower, const MatrixUnit& e, int horizon = kDefaultHorizon);

struct UnitLinkReport {
    MatrixUnit unit;
    LinkStatus status;
};

enum class DonsigVerdict { Semisimple, NotSemisimple, Inconclusive };
const char* to_string(DonsigVerdict v);

struct DonsigReport {
    int level = 0;
    int horizon = 0;
    std::vector<UnitLinkReport> units; // levels 0..level, canonical order
    DonsigVerdict verdict = DonsigVerdict::Inconclusive;
};

/// All matrix units at a level in canonical (summand,row,col) order.
std::vector<MatrixUnit> units_at(const TowerSpec& tower, int level);

DonsigReport donsig_report(const TowerSpec& tower, int level, int horizon = kDefaultHorizon);

std::vector<MatrixUnit> linkless_units_at(const TowerSpec& tower, int level,
                                          int horizon = kDefaultHorizon);

} // namespace limitalg
