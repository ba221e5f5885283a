#include "limitalg/radical.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace limitalg {

const char* to_string(RadicalState s)
{
    switch (s) {
    case RadicalState::InRadical: return "in-radical";
    case RadicalState::NotInRadical: return "not-in-radical";
    case RadicalState::Unknown: return "unknown";
    }
    return "?";
}

namespace {

struct ChainStep {
    MatrixUnit S, next;
};

std::optional<ChainStep> chain_step(const TowerSpec& tower, const MatrixUnit& T, int horizon)
{
    const int h = effective_horizon(tower, T.level + horizon);
    MatrixUnitSum img{T.level, {T.coord()}};
    for (int n = T.level; n <= h; ++n) {
        if (n > T.level)
            img = embed_sum(tower, img, n);
        if (auto w = find_link(img))
            return ChainStep{w->f, {n, w->first.summand, w->first.row, w->second.col}};
    }
    return std::nullopt;
}

} // namespace

std::optional<DonsigChain> donsig_chain(const TowerSpec& tower, const MatrixUnit& T0, int depth,
                                        int horizon)
{
    validate_unit(tower, T0);
    DonsigChain c;
    c.T.push_back(T0);
    for (int l = 0; l < depth; ++l) {
        auto st = chain_step(tower, c.T.back(), horizon);
        if (!st)
            return std::nullopt;
        c.S.push_back(st->S);
        c.T.push_back(st->next);
    }
    return c;
}

bool verify_chain(const TowerSpec& tower, const DonsigChain& chain)
{
    if (chain.T.size() != chain.S.size() + 1)
        return false;
    for (size_t l = 0; l < chain.S.size(); ++l) {
        const auto& S = chain.S[l];
        const auto& next = chain.T[l + 1];
        if (S.level != next.level || S.level < chain.T[l].level)
            return false;
        Element E = embed_element(tower, Element::unit(tower, chain.T[l]), S.level);
        Element P = multiply(multiply(E, Element::unit(tower, S)), E);
        if (!(P == Element::unit(tower, next)))
            return false;
    }
    return true;
}

std::optional<ChainCycle> chain_cycle_certificate(const TowerSpec& tower, const MatrixUnit& e,
                                                  int horizon)
{
    if (tower.continuation() != Continuation::Repeat)
        throw TowerError("chain cycles need a tower with a repeating step");
    validate_unit(tower, e);
    ChainCycle cc;
    cc.chain.T.push_back(e);
    if (e.diagonal()) {
        cc.states.push_back({e.summand, false});
        return cc;
    }
    std::map<std::pair<int, bool>, int> seen;
    const int bound = tower.regime_start() + 2 * tower.shape(tower.regime_start()).summands() + 2;
    for (int guard = 0; guard <= bound; ++guard) {
        const MatrixUnit& T = cc.chain.T.back();
        const int l = static_cast<int>(cc.chain.T.size()) - 1;
        if (T.level >= tower.regime_start()) {
            std::pair<int, bool> state{T.summand, !T.diagonal()};
            cc.states.push_back(state);
            auto [it, fresh] = seen.emplace(state, l);
            if (!fresh) {
                cc.cycle_start = it->second;
                return cc;
            }
        }
        auto st = chain_step(tower, T, horizon);
        if (!st)
            return std::nullopt;
        cc.chain.S.push_back(st->S);
        cc.chain.T.push_back(st->next);
    }
    return std::nullopt;
}

namespace {

// Longest sequence of units u_1..u_k of one summand with col(u_i) <= row(u_{i+1}).
// Units are strictly upper-triangular here, so rows strictly increase along it.
std::vector<UnitCoord> longest_link_chain(const std::vector<UnitCoord>& us)
{
    const size_t n = us.size();
    std::vector<int> best(n, 1), nxt(n, -1);
    for (size_t i = n; i-- > 0;)
        for (size_t j = i + 1; j < n; ++j)
            if (us[i].col <= us[j].row && best[j] + 1 > best[i]) {
                best[i] = best[j] + 1;
                nxt[i] = static_cast<int>(j);
            }
    int start = -1;
    for (size_t i = 0; i < n; ++i)
        if (start < 0 || best[i] > best[start])
            start = static_cast<int>(i);
    std::vector<UnitCoord> out;
    for (int i = start; i >= 0; i = nxt[i])
        out.push_back(us[i]);
    return out;
}

std::optional<NilpotencyCounterexample> level_counterexample(const TowerSpec& tower,
                                                             const MatrixUnitSum& img, int k)
{
    std::map<int, std::vector<UnitCoord>> by_summand;
    for (const auto& u : img.units)
        by_summand[u.summand].push_back(u);
    for (const auto& [s, us] : by_summand) {
        std::vector<UnitCoord> chain;
        for (const auto& u : us)
            if (u.row == u.col) {
                chain.assign(k, u);
                break;
            }
        if (chain.empty()) {
            chain = longest_link_chain(us);
            if (static_cast<int>(chain.size()) < k)
                continue;
            chain.resize(k);
        }
        std::set<MatrixUnit> b;
        for (int i = 0; i + 1 < k; ++i)
            b.insert({img.level, s, chain[i].col, chain[i + 1].row});
        b.insert({img.level, s, chain[k - 1].col, chain[k - 1].col});
        NilpotencyCounterexample ce;
        ce.level = img.level;
        ce.b.assign(b.begin(), b.end());
        ce.single_unit = b.size() == 1;
        // (e b)^k != 0 exactly: all coefficients are non-negative
        Element bel(img.level, tower.shape(img.level));
        for (const auto& u : ce.b)
            bel.add_to(u.coord(), 1);
        Element eb = multiply(Element::from_sum(tower, img), bel);
        if (power(eb, static_cast<unsigned>(k)).is_zero())
            throw TowerError("internal: nilpotency witness failed to verify");
        return ce;
    }
    return std::nullopt;
}

std::vector<UnitCoord> generator_image(const MatrixUnitSum& img, int g)
{
    std::vector<UnitCoord> out;
    for (const auto& u : img.units)
        if (u.summand < g)
            out.push_back(u);
    return out;
}

} // namespace

NilpotencyResult uniform_nilpotency(const TowerSpec& tower, const MatrixUnit& e, int exponent,
                                    int horizon, bool pattern_closure)
{
    if (exponent < 1)
        throw TowerError("exponent must be at least 1");
    validate_unit(tower, e);
    NilpotencyResult res;
    const int h = std::max(effective_horizon(tower, horizon), e.level);
    std::vector<std::pair<int, std::vector<UnitCoord>>> gens;
    MatrixUnitSum img{e.level, {e.coord()}};
    for (int n = e.level; n <= h; ++n) {
        if (n > e.level)
            img = embed_sum(tower, img, n);
        if (auto ce = level_counterexample(tower, img, exponent)) {
            res.counterexample = std::move(ce);
            return res;
        }
        if (tower.continuation() == Continuation::Spawn && n >= tower.regime_start())
            gens.push_back({n, generator_image(img, tower.spawn_generators())});
    }
    NilpotencyCertificate cert;
    cert.exponent = exponent;
    cert.horizon = h;
    if (pattern_closure) {
        if (tower.last_level() && h == *tower.last_level()) {
            cert.closed = true;
            cert.closure = "finite tower checked to its top level";
        } else if (tower.continuation() == Continuation::Spawn) {
            for (size_t j = 1; j < gens.size() && !cert.closed; ++j)
                for (size_t i = 0; i < j; ++i)
                    if (gens[i].second == gens[j].second) {
                        cert.closed = true;
                        cert.recurrence_from = gens[i].first;
                        cert.recurrence_to = gens[j].first;
                        cert.closure = "generator blocks recur from level " +
                                       std::to_string(gens[i].first) + " to level " +
                                       std::to_string(gens[j].first) +
                                       "; all other blocks are carried by identity words";
                        break;
                    }
        }
    }
    res.certificate = cert;
    return res;
}

RadicalStatus radical_membership(const TowerSpec& tower, const MatrixUnit& e, int expand_horizon,
                                 int link_horizon, int max_exponent)
{
    validate_unit(tower, e);
    RadicalStatus st;
    st.expand_horizon = expand_horizon;
    st.link_horizon = link_horizon;
    if (e.diagonal()) {
        st.notes.push_back("diagonal units are idempotent and never in the radical");
    }
    const int h = std::max(effective_horizon(tower, expand_horizon), e.level);
    MatrixUnitSum img{e.level, {e.coord()}};
    for (int n = e.level; n <= h && !e.diagonal(); ++n) {
        if (n > e.level)
            img = embed_sum(tower, img, n);
        std::vector<UnitLinkReport> subs;
        bool all = true;
        for (const auto& u : img.as_units()) {
            auto ls = link_status(tower, u, std::max(link_horizon, n));
            all = all && ls.state == LinkState::CertifiedLinkless;
            subs.push_back({u, std::move(ls)});
            if (!all)
                break;
        }
        if (all) {
            st.state = RadicalState::InRadical;
            st.certificate = "linkless-decomposition";
            st.level = n;
            st.subordinates = std::move(subs);
            return st;
        }
    }
    if (tower.continuation() == Continuation::Repeat) {
        if (auto cc = chain_cycle_certificate(tower, e, link_horizon)) {
            st.state = RadicalState::NotInRadical;
            st.certificate = "chain-cycle";
            st.cycle = std::move(cc);
            return st;
        }
    } else if (e.diagonal()) {
        st.state = RadicalState::NotInRadical;
        st.certificate = "chain-cycle";
        ChainCycle cc;
        cc.chain.T.push_back(e);
        cc.states.push_back({e.summand, false});
        st.cycle = std::move(cc);
        return st;
    } else {
        st.notes.push_back("chain cycles need a repeating tower");
    }
    for (int k = 1; k <= max_exponent && !e.diagonal(); ++k) {
        auto nr = uniform_nilpotency(tower, e, k, expand_horizon, true);
        if (nr.certificate && nr.certificate->closed) {
            st.state = RadicalState::InRadical;
            st.certificate = "uniform-nilpotency";
            st.nilpotency = nr.certificate;
            return st;
        }
    }
    return st;
}

FiniteRadical finite_level_radical(const LevelShape& shape)
{
    const auto basis = triangular_basis(shape);
    const auto rad = radical_basis(triangular_algebra(shape));
    FiniteRadical fr;
    fr.dimension = static_cast<int>(rad.size());
    for (const auto& row : rad) {
        int nz = 0, at = -1;
        for (size_t i = 0; i < row.size(); ++i)
            if (sgn(row[i]) != 0) {
                ++nz;
                at = static_cast<int>(i);
            }
        if (nz == 1)
            fr.units.push_back(basis[at]);
        else
            fr.unit_spanned = false;
    }
    std::sort(fr.units.begin(), fr.units.end());
    return fr;
}

ExtremalReport extremal_subordinate_check(const TowerSpec& tower, const MatrixUnit& e, int level)
{
    ExtremalReport rep;
    rep.decomposition = decompose(tower, e, level);
    for (const auto& x : rep.decomposition.extremal) {
        for (const auto& u : rep.decomposition.units.units) {
            if (u.summand != x.summand)
                continue;
            FactorizationCheck c{x.summand, u, x.max_row, x.min_col, x.max_row >= x.min_col,
                                 false};
            using Sparse = std::map<std::pair<int, int>, Rational>;
            auto mul = [](const Sparse& x, const Sparse& y) {
                Sparse z;
                for (const auto& [ij, v] : x)
                    for (const auto& [kl, w] : y)
                        if (ij.second == kl.first)
                            z[{ij.first, kl.second}] += v * w;
                std::erase_if(z, [](const auto& kv) { return sgn(kv.second) == 0; });
                return z;
            };
            const Sparse left{{{u.row, x.max_row}, 1}}, mid{{{x.max_row, x.min_col}, 1}},
                right{{{x.min_col, u.col}, 1}}, target{{{u.row, u.col}, 1}};
            c.holds = mul(mul(left, mid), right) == target;
            rep.checks.push_back(c);
            rep.all_hold = rep.all_hold && c.holds;
        }
    }
    return rep;
}

} // namespace limitalg
