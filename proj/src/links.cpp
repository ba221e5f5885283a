#include "limitalg/links.hpp"

#include <algorithm>
#include <set>

namespace limitalg {

const char* to_string(CertificateKind k)
{
    return k == CertificateKind::Frozen ? "frozen" : "separation";
}

const char* to_string(LinkState s)
{
    switch (s) {
    case LinkState::Linked: return "linked";
    case LinkState::NotLinkedUpTo: return "not-linked-up-to";
    case LinkState::CertifiedLinkless: return "certified-linkless";
    }
    return "?";
}

const char* to_string(DonsigVerdict v)
{
    switch (v) {
    case DonsigVerdict::Semisimple: return "semisimple (evidence)";
    case DonsigVerdict::NotSemisimple: return "not semisimple";
    case DonsigVerdict::Inconclusive: return "inconclusive";
    }
    return "?";
}

std::optional<LinkWitness> find_link(const MatrixUnitSum& image)
{
    const auto& us = image.units;
    size_t i = 0;
    while (i < us.size()) {
        size_t j = i;
        while (j < us.size() && us[j].summand == us[i].summand)
            ++j;
        // units [i,j) share a summand and are sorted by row
        size_t rc = i;
        for (size_t k = i; k < j; ++k)
            if (us[k].col < us[rc].col)
                rc = k;
        const int c = us[rc].col;
        for (size_t k = i; k < j; ++k)
            if (us[k].row >= c) {
                LinkWitness w;
                w.level = image.level;
                w.f = {image.level, us[i].summand, c, us[k].row};
                w.first = us[rc];
                w.second = us[k];
                return w;
            }
        i = j;
    }
    return std::nullopt;
}

std::optional<LinkWitness> has_link_at(const TowerSpec& tower, const MatrixUnit& e, int level)
{
    return find_link(embed_unit(tower, e, level));
}

int effective_horizon(const TowerSpec& tower, int horizon)
{
    auto last = tower.last_level();
    return last ? std::min(horizon, *last) : horizon;
}

bool summand_frozen(const TowerSpec& tower, int level, int summand)
{
    int m = level, s = summand;
    const int rs = tower.regime_start();
    std::set<int> seen;
    for (;;) {
        if (!tower.has_level(m + 1))
            return true;
        if (tower.continuation() == Continuation::Spawn && m >= rs) {
            if (s >= tower.spawn_generators())
                return true;
            auto t = tower.step(m).identity_carry(s);
            return t && *t == s;
        }
        if (tower.continuation() == Continuation::Repeat && m >= rs && !seen.insert(s).second)
            return true;
        auto t = tower.step(m).identity_carry(s);
        if (!t)
            return false;
        s = *t;
        ++m;
    }
}

namespace {

std::vector<SeparationState> separation_states(const MatrixUnitSum& image)
{
    std::vector<SeparationState> out;
    for (const auto& u : image.units) {
        if (out.empty() || out.back().summand != u.summand)
            out.push_back({u.summand, u.row, u.col});
        out.back().max_row = std::max(out.back().max_row, u.row);
        out.back().min_col = std::min(out.back().min_col, u.col);
    }
    return out;
}

std::vector<int> image_summands(const MatrixUnitSum& image)
{
    std::vector<int> s;
    for (const auto& u : image.units)
        if (s.empty() || s.back() != u.summand)
            s.push_back(u.summand);
    return s;
}

std::optional<LinklessCertificate> separation_from(const TowerSpec& tower, const MatrixUnit& e,
                                                   int level)
{
    MatrixUnitSum img = embed_unit(tower, e, level);
    if (find_link(img))
        return std::nullopt;
    LinklessCertificate cert;
    cert.kind = CertificateKind::Separation;
    cert.level = level;
    const auto& pattern = tower.repeat_pattern();
    std::vector<int> active = image_summands(img);
    for (;;) {
        auto it = std::find(cert.active_sets.begin(), cert.active_sets.end(), active);
        if (it != cert.active_sets.end()) {
            cert.cycle_start = static_cast<int>(it - cert.active_sets.begin());
            break;
        }
        cert.active_sets.push_back(active);
        std::vector<int> next;
        for (size_t u = 0; u < pattern.size(); ++u) {
            int hits = 0;
            for (const auto& seg : pattern[u])
                if (std::binary_search(active.begin(), active.end(), seg.source))
                    ++hits;
            if (hits >= 2)
                return std::nullopt;
            if (hits == 1)
                next.push_back(static_cast<int>(u));
        }
        active = std::move(next);
    }
    for (int n = level; n < level + 4; ++n) {
        if (img.units.size() > 4096)
            break;
        cert.trace.push_back(separation_states(img));
        img = embed_sum(tower, img, n + 1);
    }
    return cert;
}

} // namespace

std::optional<LinklessCertificate> certify_linkless(const TowerSpec& tower, const MatrixUnit& e,
                                                    int horizon)
{
    validate_unit(tower, e);
    const int h = std::max(effective_horizon(tower, horizon), e.level);
    MatrixUnitSum img{e.level, {e.coord()}};
    for (int n = e.level; n <= h; ++n) {
        if (n > e.level)
            img = embed_sum(tower, img, n);
        if (find_link(img))
            return std::nullopt;
        auto sums = image_summands(img);
        if (std::all_of(sums.begin(), sums.end(),
                        [&](int s) { return summand_frozen(tower, n, s); })) {
            LinklessCertificate cert;
            cert.kind = CertificateKind::Frozen;
            cert.level = n;
            cert.summands = sums;
            return cert;
        }
        if (tower.continuation() == Continuation::Repeat && n >= tower.regime_start())
            return separation_from(tower, e, n);
    }
    return std::nullopt;
}

bool check_certificate(const TowerSpec& tower, const MatrixUnit& e, const LinklessCertificate& cert)
{
    if (cert.level < e.level || !tower.has_level(cert.level))
        return false;
    auto img = embed_unit(tower, e, cert.level);
    if (find_link(img))
        return false;
    if (cert.kind == CertificateKind::Frozen) {
        if (cert.summands != image_summands(img))
            return false;
        for (int s : cert.summands)
            if (!summand_frozen(tower, cert.level, s))
                return false;
        return true;
    }
    if (tower.continuation() != Continuation::Repeat || cert.level < tower.regime_start())
        return false;
    auto again = separation_from(tower, e, cert.level);
    return again && again->active_sets == cert.active_sets &&
           again->cycle_start == cert.cycle_start;
}

LinkStatus link_status(const TowerSpec& tower, const MatrixUnit& e, int horizon)
{
    validate_unit(tower, e);
    LinkStatus st;
    st.horizon = std::max(effective_horizon(tower, horizon), e.level);
    MatrixUnitSum img{e.level, {e.coord()}};
    for (int n = e.level; n <= st.horizon; ++n) {
        if (n > e.level)
            img = embed_sum(tower, img, n);
        if (auto w = find_link(img)) {
            st.state = LinkState::Linked;
            st.witness = w;
            return st;
        }
    }
    if (auto c = certify_linkless(tower, e, horizon)) {
        st.state = LinkState::CertifiedLinkless;
        st.certificate = std::move(c);
    }
    return st;
}

std::vector<MatrixUnit> units_at(const TowerSpec& tower, int level)
{
    std::vector<MatrixUnit> out;
    const auto& sh = tower.shape(level);
    for (int s = 0; s < sh.summands(); ++s)
        for (int i = 1; i <= sh.size(s); ++i)
            for (int j = i; j <= sh.size(s); ++j)
                out.push_back({level, s, i, j});
    return out;
}

DonsigReport donsig_report(const TowerSpec& tower, int level, int horizon)
{
    DonsigReport rep;
    rep.level = level;
    rep.horizon = horizon;
    bool all_linked = true, some_linkless = false;
    for (int n = 0; n <= level; ++n)
        for (const auto& u : units_at(tower, n)) {
            auto st = link_status(tower, u, horizon);
            all_linked = all_linked && st.state == LinkState::Linked;
            some_linkless = some_linkless || st.state == LinkState::CertifiedLinkless;
            rep.units.push_back({u, std::move(st)});
        }
    rep.verdict = some_linkless ? DonsigVerdict::NotSemisimple
                  : all_linked  ? DonsigVerdict::Semisimple
                                : DonsigVerdict::Inconclusive;
    return rep;
}

std::vector<MatrixUnit> linkless_units_at(const TowerSpec& tower, int level, int horizon)
{
    std::vector<MatrixUnit> out;
    for (const auto& u : units_at(tower, level))
        if (link_status(tower, u, horizon).state == LinkState::CertifiedLinkless)
            out.push_back(u);
    return out;
}

} // namespace limitalg
