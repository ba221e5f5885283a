#include "limitalg/dynamics.hpp"

#include <algorithm>
#include <set>

namespace limitalg {

TowerAction::TowerAction(const TowerSpec& tower, const std::vector<ActionBlock>& blocks)
{
    std::vector<int> orders;
    for (const auto& b : blocks) {
        if (b.order < 1)
            throw TowerError("action '" + b.generator + "': order must be positive");
        orders.push_back(b.order);
        names_.push_back(b.generator);
        std::map<int, ActionMap> m;
        for (const auto& lm : b.maps) {
            if (lm.to < lm.from)
                throw TowerError("action '" + b.generator + "': level " + std::to_string(lm.from) +
                                 " must map to a level >= itself");
            if (!tower.has_level(lm.to))
                throw TowerError("action '" + b.generator + "': level " + std::to_string(lm.to) +
                                 " is outside the tower");
            if (m.count(lm.from))
                throw TowerError("action '" + b.generator + "': level " + std::to_string(lm.from) +
                                 " mapped twice");
            try {
                m.emplace(lm.from, ActionMap{lm.from, lm.to,
                                             Embedding(tower.shape(lm.from), tower.shape(lm.to),
                                                       lm.words)});
            } catch (const TowerError& err) {
                throw TowerError("action '" + b.generator + "' on level " +
                                 std::to_string(lm.from) + ": " + err.what());
            }
        }
        maps_.push_back(std::move(m));
    }
    group_ = FiniteAbelianGroup(orders);
}

int TowerAction::max_level() const
{
    if (maps_.empty())
        return -1;
    int best = -1;
    for (size_t g = 0; g < maps_.size(); ++g) {
        int top = maps_[g].empty() ? -1 : maps_[g].rbegin()->first;
        best = g == 0 ? top : std::min(best, top);
    }
    return best;
}

TowerAction diagonal_action(const TowerSpec& tower, const std::vector<int>& orders, int top)
{
    std::vector<ActionBlock> blocks;
    for (size_t g = 0; g < orders.size(); ++g) {
        ActionBlock b{"g" + std::to_string(g), orders[g], {}};
        for (int n = 0; n <= top; ++n) {
            ActionLevelMap lm{n, n, {}};
            const auto& sh = tower.shape(n);
            for (int s = 0; s < sh.summands(); ++s) {
                Word w;
                for (int p = 1; p <= sh.size(s); ++p)
                    w.push_back({s, p});
                lm.words.push_back(std::move(w));
            }
            b.maps.push_back(std::move(lm));
        }
        blocks.push_back(std::move(b));
    }
    return TowerAction(tower, blocks);
}

MatrixUnitSum apply_generator(const TowerSpec& tower, const TowerAction& action, int generator,
                              const MatrixUnitSum& x)
{
    const auto& maps = action.maps(generator);
    auto it = maps.lower_bound(x.level);
    if (it == maps.end())
        throw TowerError("action '" + action.names()[generator] + "' is not given at level " +
                         std::to_string(x.level) + " or above");
    const MatrixUnitSum lifted = embed_sum(tower, x, it->first);
    MatrixUnitSum out{it->second.to, {}};
    for (const auto& u : lifted.units) {
        auto img = it->second.map.image(u.summand, u.row, u.col);
        out.units.insert(out.units.end(), img.begin(), img.end());
    }
    std::sort(out.units.begin(), out.units.end());
    return out;
}

MatrixUnitSum apply_action(const TowerSpec& tower, const TowerAction& action, int g,
                           const MatrixUnitSum& x)
{
    const auto coords = action.group().element(g);
    MatrixUnitSum cur = x;
    for (size_t i = 0; i < coords.size(); ++i)
        for (int t = 0; t < coords[i]; ++t)
            cur = apply_generator(tower, action, static_cast<int>(i), cur);
    return cur;
}

MatrixUnitSum apply_action(const TowerSpec& tower, const TowerAction& action, int g,
                           const MatrixUnit& e)
{
    return apply_action(tower, action, g, MatrixUnitSum{e.level, {e.coord()}});
}

bool same_element(const TowerSpec& tower, const MatrixUnitSum& a, const MatrixUnitSum& b)
{
    const int top = std::max(a.level, b.level);
    return embed_sum(tower, a, top).units == embed_sum(tower, b, top).units;
}

namespace {

std::vector<UnitCoord> all_units(const LevelShape& sh)
{
    std::vector<UnitCoord> out;
    for (int s = 0; s < sh.summands(); ++s)
        for (int i = 1; i <= sh.size(s); ++i)
            for (int j = i; j <= sh.size(s); ++j)
                out.push_back({s, i, j});
    return out;
}

std::string where(const TowerAction& a, int gen, int level, const UnitCoord& u)
{
    return a.names()[gen] + " at " + to_string(MatrixUnit{level, u.summand, u.row, u.col});
}

} // namespace

ActionCheck verify_action(const TowerSpec& tower, const TowerAction& action, int horizon)
{
    ActionCheck rep;
    const int rank = action.group().rank();
    for (int gen = 0; gen < rank; ++gen) {
        std::vector<int> levels;
        for (const auto& [from, _] : action.maps(gen))
            if (from <= horizon)
                levels.push_back(from);
        for (size_t a = 0; a < levels.size(); ++a)
            for (const auto& u : all_units(tower.shape(levels[a]))) {
                MatrixUnitSum x{levels[a], {u}};
                const auto ax = apply_generator(tower, action, gen, x);
                for (size_t b = a + 1; b < levels.size(); ++b) {
                    const auto other = apply_generator(tower, action, gen,
                                                       embed_sum(tower, x, levels[b]));
                    if (other.level < ax.level || !same_element(tower, ax, other)) {
                        rep.compatible = false;
                        rep.problems.push_back("embedding does not commute with " +
                                               where(action, gen, levels[a], u) + " (level " +
                                               std::to_string(levels[b]) + ")");
                    }
                }
                try {
                    MatrixUnitSum cur = x;
                    for (int t = 0; t < action.group().orders()[gen]; ++t)
                        cur = apply_generator(tower, action, gen, cur);
                    if (!same_element(tower, cur, x)) {
                        rep.orders = false;
                        rep.problems.push_back("order relation fails for " +
                                               where(action, gen, levels[a], u));
                    }
                    for (int other = gen + 1; other < rank; ++other) {
                        auto p = apply_generator(tower, action, other,
                                                 apply_generator(tower, action, gen, x));
                        auto q = apply_generator(tower, action, gen,
                                                 apply_generator(tower, action, other, x));
                        if (!same_element(tower, p, q)) {
                            rep.commute = false;
                            rep.problems.push_back("generators " + action.names()[gen] + ", " +
                                                   action.names()[other] + " do not commute at " +
                                                   where(action, gen, levels[a], u));
                        }
                    }
                } catch (const TowerError&) {
                    // relation leaves the levels where the action is given
                }
            }
    }
    return rep;
}

namespace {

std::optional<LinkWitness> link_at(const MatrixUnitSum& x, const MatrixUnitSum& y)
{
    std::optional<LinkWitness> best;
    for (const auto& a : x.units)
        for (const auto& b : y.units) {
            if (a.summand != b.summand || a.col > b.row)
                continue;
            auto key = std::make_tuple(a.summand, a.col, b.row);
            if (!best || key < std::make_tuple(best->f.summand, best->f.row, best->f.col))
                best = LinkWitness{x.level, {x.level, a.summand, a.col, b.row}, a, b};
        }
    return best;
}

} // namespace

std::optional<LinkWitness> link_between(const TowerSpec& tower, const MatrixUnitSum& x,
                                        const MatrixUnitSum& y, int horizon)
{
    const int h = effective_horizon(tower, horizon);
    for (int n = std::max(x.level, y.level); n <= h; ++n)
        if (auto w = link_at(embed_sum(tower, x, n), embed_sum(tower, y, n)))
            return w;
    return std::nullopt;
}

std::optional<LinkWitness> twisted_link(const TowerSpec& tower, const TowerAction& action,
                                        const MatrixUnit& e, int g, int horizon)
{
    validate_unit(tower, e);
    const MatrixUnitSum x{e.level, {e.coord()}};
    return link_between(tower, x, apply_action(tower, action, g, x), horizon);
}

namespace {

MatrixUnitSum projection(int level, int pos) { return {level, {{0, pos, pos}}}; }

// Positions of a sum of diagonal units, increasing.
std::vector<int> positions(const TowerSpec& tower, const MatrixUnitSum& p, int level)
{
    std::vector<int> out;
    for (const auto& u : embed_sum(tower, p, level).units)
        out.push_back(u.row);
    return out;
}

// alpha_g(x) when it is defined and lands at or below `level`.
std::optional<MatrixUnitSum> twist(const TowerSpec& tower, const TowerAction& action, int g,
                                   const MatrixUnitSum& x, int level)
{
    try {
        auto y = apply_action(tower, action, g, x);
        if (y.level <= level)
            return y;
    } catch (const TowerError&) {
    }
    return std::nullopt;
}

bool linked_at(const TowerSpec& tower, const MatrixUnitSum& x, const MatrixUnitSum& y, int n)
{
    return n >= std::max(x.level, y.level) &&
           link_at(embed_sum(tower, x, n), embed_sum(tower, y, n)).has_value();
}

// The theorem's five inequalities for k < l < m at level N and alpha_g.
void evaluate(const TowerSpec& tower, const TowerAction& action, TechnicalTuple& t, int h2,
              TechnicalAudit& audit)
{
    const auto ek = projection(t.N, t.k), el = projection(t.N, t.l), em = projection(t.N, t.m);
    for (int n2 = t.N; n2 <= h2; ++n2) {
        auto ak = twist(tower, action, t.g, ek, n2);
        auto al = twist(tower, action, t.g, el, n2);
        if (!ak || !al || !linked_at(tower, em, *ak, n2))
            continue;
        t.n2 = n2;
        t.ratio = tower.shape(n2).size(0) / tower.shape(t.N).size(0);
        t.l_last = positions(tower, el, n2).back();
        t.m_first = positions(tower, em, n2).front();
        t.kp_last = positions(tower, *ak, n2).back();
        t.lp_first = positions(tower, *al, n2).front();
        t.fourth = t.l * t.ratio <= t.l_last;
        t.first = t.l_last < t.m_first;
        t.third = t.m_first <= t.kp_last;
        t.second = t.kp_last < t.lp_first;
        t.fifth = t.lp_first <= (t.l - 1) * t.ratio + 1;
        if (!t.fourth || !t.fifth)
            ++audit.embedding_order_violations;
        if (t.satisfiable())
            ++audit.satisfiable;
        audit.tuples.push_back(t);
        return;
    }
}

bool unlinked_to(const TowerSpec& tower, const MatrixUnitSum& x, const MatrixUnitSum& y, int h2)
{
    return !link_between(tower, x, y, h2).has_value();
}

} // namespace

TechnicalAudit technical_index_audit(const TowerSpec& tower, const TowerAction& action,
                                     const MatrixUnit& e, int h1, int h2)
{
    validate_unit(tower, e);
    TechnicalAudit audit;
    if (!tower.is_tuhf()) {
        audit.reason = "unsupported: the index audit needs a single-block (TUHF) tower";
        return audit;
    }
    h1 = std::max(effective_horizon(tower, h1), e.level);
    h2 = std::max(effective_horizon(tower, h2), h1);
    if (e.diagonal()) {
        audit.reason = "not applicable: diagonal unit";
    } else {
        auto ls = link_status(tower, e, h2);
        if (ls.state == LinkState::Linked)
            audit.reason = "not applicable: e A e != 0 (link at level " +
                           std::to_string(ls.witness->level) + ")";
        else if (ls.state == LinkState::NotLinkedUpTo)
            audit.reason = "not applicable: e A e = 0 only checked up to level " +
                           std::to_string(ls.horizon);
        else {
            audit.applicable = true;
            audit.reason = "e A e = 0 certified";
        }
    }
    const int G = action.group().size();

    // index chase: e_j A alpha_g(e_i) at n1, then e_J A alpha_h(e_I) at N
    if (audit.applicable) {
        const auto ei = projection(e.level, e.row), ej = projection(e.level, e.col);
        for (int g = 0; g < G; ++g)
            for (int n1 = e.level; n1 <= h1; ++n1) {
                auto ai = twist(tower, action, g, ei, n1);
                if (!ai || !linked_at(tower, ej, *ai, n1))
                    continue;
                const int I = positions(tower, ei, n1).back();
                const int J = positions(tower, ej, n1).front();
                const auto eI = projection(n1, I), eJ = projection(n1, J);
                for (int h = 0; h < G; ++h)
                    for (int N = n1; N <= h1; ++N) {
                        auto aI = twist(tower, action, h, eI, N);
                        if (!aI || !linked_at(tower, eJ, *aI, N))
                            continue;
                        TechnicalTuple t;
                        t.extracted = true;
                        t.n1 = n1;
                        t.h = h;
                        t.g = h;
                        t.N = N;
                        t.k = positions(tower, eI, N).back();
                        t.l = positions(tower, eJ, N).front();
                        t.m = positions(tower, eJ, N).back();
                        t.lemma_hypotheses =
                            unlinked_to(tower, projection(N, t.m), projection(N, t.l), h2) &&
                            unlinked_to(tower, projection(N, t.l), projection(N, t.k), h2);
                        evaluate(tower, action, t, h2, audit);
                        break;
                    }
                break;
            }
    }

    // exhaustive sweep over k < l < m at levels e.level..h1
    for (int N = e.level; N <= h1; ++N) {
        const int K = tower.shape(N).size(0);
        for (int l = 2; l < K; ++l)
            for (int k = 1; k < l; ++k) {
                const bool lk = unlinked_to(tower, projection(N, l), projection(N, k), h2);
                for (int m = l + 1; m <= K; ++m) {
                    const bool ml =
                        lk && unlinked_to(tower, projection(N, m), projection(N, l), h2);
                    for (int g = 0; g < G; ++g) {
                        TechnicalTuple t;
                        t.g = t.h = g;
                        t.n1 = t.N = N;
                        t.k = k;
                        t.l = l;
                        t.m = m;
                        t.lemma_hypotheses = ml;
                        evaluate(tower, action, t, h2, audit);
                    }
                }
            }
    }
    return audit;
}

} // namespace limitalg
