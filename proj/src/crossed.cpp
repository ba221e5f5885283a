#include "limitalg/crossed.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <set>

namespace limitalg {

std::vector<UnitCoord> BaseAlgebra::units() const
{
    std::vector<UnitCoord> out;
    for (int s = 0; s < shape.summands(); ++s)
        for (int i = 1; i <= shape.size(s); ++i)
            for (int j = kind == BaseKind::Full ? 1 : i; j <= shape.size(s); ++j)
                out.push_back({s, i, j});
    return out;
}

std::string BaseAlgebra::to_string() const
{
    std::string s;
    for (int k : shape.sizes)
        s += (s.empty() ? "" : "+") + std::string(kind == BaseKind::Full ? "M" : "T") +
             std::to_string(k);
    return s.empty() ? "0" : s;
}

namespace {

MonomialMap identity_map(int n, int m)
{
    MonomialMap id;
    for (int b = 0; b < n; ++b) {
        id.target.push_back(b);
        id.coeff.push_back(Cyclotomic(m, 1));
    }
    return id;
}

// (a o b)(x) = a(b(x))
MonomialMap compose(const MonomialMap& a, const MonomialMap& b)
{
    MonomialMap r;
    for (size_t x = 0; x < b.target.size(); ++x) {
        const int y = b.target[x];
        r.target.push_back(a.target[y]);
        r.coeff.push_back(b.coeff[x] * a.coeff[y]);
    }
    return r;
}

bool same_map(const MonomialMap& a, const MonomialMap& b)
{
    return a.target == b.target && a.coeff == b.coeff;
}

} // namespace

CrossedAlgebra::CrossedAlgebra(CrossedSystem sys) : sys_(std::move(sys)), m_(sys_.group.exponent())
{
    const auto& shape = sys_.base.shape;
    for (int k : shape.sizes)
        if (k < 1)
            throw CrossedError("block sizes must be positive");
    units_ = sys_.base.units();
    for (size_t i = 0; i < units_.size(); ++i)
        unit_index_[units_[i]] = static_cast<int>(i);
    int off = 0;
    for (int k : shape.sizes) {
        offsets_.push_back(off);
        off += k;
    }
    const int n = base_dim();
    const auto& G = sys_.group;
    if (static_cast<int>(sys_.generators.size()) != G.rank())
        throw CrossedError("need one generator action per cyclic factor (" +
                           std::to_string(G.rank()) + "), got " +
                           std::to_string(sys_.generators.size()));

    std::vector<MonomialMap> gens;
    for (int gi = 0; gi < G.rank(); ++gi) {
        const auto& ga = sys_.generators[gi];
        std::vector<int> perm = ga.perm;
        if (perm.empty())
            for (int s = 0; s < shape.summands(); ++s)
                perm.push_back(s);
        if (static_cast<int>(perm.size()) != shape.summands())
            throw CrossedError("generator " + std::to_string(gi) + ": permutation has wrong length");
        std::vector<int> sorted = perm;
        std::sort(sorted.begin(), sorted.end());
        for (int s = 0; s < shape.summands(); ++s)
            if (sorted[s] != s)
                throw CrossedError("generator " + std::to_string(gi) + ": not a permutation");
        for (int s = 0; s < shape.summands(); ++s)
            if (shape.size(perm[s]) != shape.size(s))
                throw CrossedError("generator " + std::to_string(gi) +
                                   ": permutation mixes blocks of different sizes");
        std::vector<std::vector<int>> diag = ga.diag;
        if (diag.empty())
            for (int k : shape.sizes)
                diag.push_back(std::vector<int>(k, 0));
        if (static_cast<int>(diag.size()) != shape.summands())
            throw CrossedError("generator " + std::to_string(gi) + ": diagonal has wrong length");
        for (int s = 0; s < shape.summands(); ++s) {
            if (diag[s].empty())
                diag[s].assign(shape.size(s), 0);
            if (static_cast<int>(diag[s].size()) != shape.size(s))
                throw CrossedError("generator " + std::to_string(gi) + ": diagonal of block " +
                                   std::to_string(s) + " has wrong length");
        }
        MonomialMap mm;
        for (const auto& u : units_) {
            mm.target.push_back(unit_index_.at({perm[u.summand], u.row, u.col}));
            mm.coeff.push_back(Cyclotomic::root_of_unity(
                m_, long(diag[u.summand][u.row - 1]) - diag[u.summand][u.col - 1]));
        }
        gens.push_back(std::move(mm));
    }
    const MonomialMap id = identity_map(n, m_);
    for (int gi = 0; gi < G.rank(); ++gi) {
        MonomialMap p = id;
        for (int k = 0; k < G.orders()[gi]; ++k)
            p = compose(gens[gi], p);
        if (!same_map(p, id))
            throw CrossedError("generator " + std::to_string(gi) + " does not have order dividing " +
                               std::to_string(G.orders()[gi]));
        for (int gj = gi + 1; gj < G.rank(); ++gj)
            if (!same_map(compose(gens[gi], gens[gj]), compose(gens[gj], gens[gi])))
                throw CrossedError("generators " + std::to_string(gi) + " and " +
                                   std::to_string(gj) + " do not commute");
    }
    for (int g = 0; g < G.size(); ++g) {
        const auto c = G.element(g);
        MonomialMap a = id;
        for (int gi = 0; gi < G.rank(); ++gi)
            for (int k = 0; k < c[gi]; ++k)
                a = compose(gens[gi], a);
        alpha_.push_back(std::move(a));
    }

    const Cyclotomic one(m_, 1);
    base_ = FiniteAlgebra<Cyclotomic>(n, zero());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const auto& x = units_[i];
            const auto& y = units_[j];
            if (x.summand == y.summand && x.col == y.row)
                base_.table[i][j].push_back({unit_index_.at({x.summand, x.row, y.col}), one});
        }
    alg_ = FiniteAlgebra<Cyclotomic>(dim(), zero());
    for (int i = 0; i < dim(); ++i)
        for (int j = 0; j < dim(); ++j) {
            const int a = unit_of(i), g = group_of(i);
            const int b = unit_of(j), h = group_of(j);
            // (a U_g)(b U_h) = a alpha_g(b) U_{gh}
            const int t = alpha_[g].target[b];
            for (const auto& [p, c] : base_.table[a][t])
                alg_.table[i][j].push_back({index(p, G.add(g, h)), c * alpha_[g].coeff[b]});
        }
}

int CrossedAlgebra::unit_index(const UnitCoord& u) const
{
    return unit_index_.at(u);
}

std::string CrossedAlgebra::label(int i) const
{
    const auto& u = units_[unit_of(i)];
    return "e" + std::to_string(u.summand) + ":" + std::to_string(u.row) + ":" +
           std::to_string(u.col) + " U" + group().to_string(group_of(i));
}

int CrossedAlgebra::model_size() const
{
    int n = 0;
    for (int k : sys_.base.shape.sizes)
        n += k;
    return n * group().size();
}

std::map<std::pair<int, int>, Cyclotomic> CrossedAlgebra::model_matrix(int i) const
{
    const auto& G = group();
    const int n = model_size() / G.size();
    const int b = unit_of(i), g = group_of(i);
    std::map<std::pair<int, int>, Cyclotomic> M;
    for (int h = 0; h < G.size(); ++h) {
        const int k = G.add(g, h);
        const auto& al = alpha_[G.inverse(k)];
        const auto& u = units_[al.target[b]];
        const int off = offsets_[u.summand];
        M[{k * n + off + u.row - 1, h * n + off + u.col - 1}] = al.coeff[b];
    }
    return M;
}

bool CrossedAlgebra::verify_covariance() const
{
    using Sparse = std::map<std::pair<int, int>, Cyclotomic>;
    std::vector<Sparse> mats;
    for (int i = 0; i < dim(); ++i)
        mats.push_back(model_matrix(i));
    for (int i = 0; i < dim(); ++i)
        for (int j = 0; j < dim(); ++j) {
            Sparse lhs;
            for (const auto& [rc, v] : mats[i])
                for (const auto& [rc2, w] : mats[j])
                    if (rc.second == rc2.first) {
                        auto it = lhs.emplace(std::make_pair(rc.first, rc2.second), zero()).first;
                        it->second += v * w;
                    }
            Sparse rhs;
            for (const auto& [k, c] : alg_.table[i][j])
                for (const auto& [rc, v] : mats[k]) {
                    auto it = rhs.emplace(rc, zero()).first;
                    it->second += c * v;
                }
            std::erase_if(lhs, [](const auto& kv) { return kv.second.is_zero(); });
            std::erase_if(rhs, [](const auto& kv) { return kv.second.is_zero(); });
            if (lhs != rhs)
                return false;
        }
    return true;
}

CrossedAlgebra build_crossed(const CrossedSystem& sys)
{
    CrossedAlgebra A(sys);
    if (!A.verify_covariance())
        throw CrossedError("covariance identity fails");
    return A;
}

Rows<Cyclotomic> radical_traceform(const CrossedAlgebra& A)
{
    return radical_basis(A.algebra());
}

Rows<Cyclotomic> base_radical(const CrossedAlgebra& A)
{
    return radical_basis(A.base());
}

namespace {

Rows<Cyclotomic> lift(const CrossedAlgebra& A, const Rows<Cyclotomic>& base_rows)
{
    Rows<Cyclotomic> out;
    for (const auto& r : base_rows)
        for (int g = 0; g < A.group().size(); ++g) {
            Row<Cyclotomic> v(A.dim(), A.zero());
            for (int b = 0; b < A.base_dim(); ++b)
                v[A.index(b, g)] = r[b];
            out.push_back(std::move(v));
        }
    return out;
}

// Basis (in coefficient coordinates x) of {x : sum x_i U_i lies in span V}.
Rows<Cyclotomic> intersection_coords(const Rows<Cyclotomic>& U, const Rows<Cyclotomic>& V,
                                     const Cyclotomic& zero)
{
    if (U.empty())
        return {};
    const size_t len = U.front().size();
    const size_t p = U.size(), q = V.size();
    Rows<Cyclotomic> cons(len, Row<Cyclotomic>(p + q, zero));
    for (size_t e = 0; e < len; ++e) {
        for (size_t i = 0; i < p; ++i)
            cons[e][i] = U[i][e];
        for (size_t j = 0; j < q; ++j)
            cons[e][p + j] = zero - V[j][e];
    }
    Rows<Cyclotomic> xs;
    for (auto& v : nullspace(cons, p + q, zero)) {
        v.resize(p);
        xs.push_back(std::move(v));
    }
    return span_basis(std::move(xs));
}

} // namespace

TightnessReport radical_tightness_check(const CrossedAlgebra& A)
{
    TightnessReport rep;
    rep.radical = radical_traceform(A);
    rep.radical_dim = static_cast<int>(rep.radical.size());
    const auto expected = lift(A, base_radical(A));
    rep.expected_dim = static_cast<int>(expected.size());
    rep.tight = same_span(rep.radical, expected);

    // J_G = {a : a U_e in Rad}
    Rows<Cyclotomic> ue;
    for (int b = 0; b < A.base_dim(); ++b)
        ue.push_back(A.algebra().basis(A.index(b, A.group().identity())));
    for (const auto& x : intersection_coords(ue, rep.radical, A.zero()))
        rep.ideal_core.push_back(x);
    rep.ideal_core = span_basis(rep.ideal_core);
    rep.core_generates = same_span(lift(A, rep.ideal_core), rep.radical);
    rep.nilpotency_index = nilpotency_index(A.algebra(), rep.radical);
    return rep;
}

CorollaryReport corollary_formula_check(const CrossedAlgebra& A)
{
    CorollaryReport rep;
    const auto& T = A.base().table;
    Rows<Cyclotomic> span;
    for (int e = 0; e < A.base_dim(); ++e) {
        bool zero = true;
        for (int b = 0; b < A.base_dim() && zero; ++b)
            for (const auto& [p, c] : T[e][b])
                if (!T[p][e].empty())
                    zero = false;
        if (!zero)
            continue;
        rep.linkless_units.push_back(A.base_units()[e]);
        for (int g = 0; g < A.group().size(); ++g)
            span.push_back(A.algebra().basis(A.index(e, g)));
    }
    const auto rad = radical_traceform(A);
    rep.dimension = static_cast<int>(rad.size());
    rep.equal = same_span(rad, span);
    return rep;
}

std::vector<Cyclotomic> dual_action(const CrossedAlgebra& A, const Character& gamma)
{
    std::vector<Cyclotomic> s;
    for (int i = 0; i < A.dim(); ++i)
        s.push_back(gamma(A.group(), A.group_of(i)).conjugate());
    return s;
}

DualActionReport verify_dual_action(const CrossedAlgebra& A)
{
    DualActionReport rep;
    const auto& G = A.group();
    const auto chars = characters(G);
    std::vector<std::vector<Cyclotomic>> scal;
    for (const auto& c : chars)
        scal.push_back(dual_action(A, c));
    const Cyclotomic one(A.field_order(), 1);
    for (const auto& v : scal.front())
        rep.trivial_is_identity = rep.trivial_is_identity && v == one;
    for (const auto& s : scal)
        for (int i = 0; i < A.dim(); ++i)
            for (int j = 0; j < A.dim(); ++j)
                for (const auto& [k, c] : A.algebra().table[i][j]) {
                    (void)c;
                    if (!(s[i] * s[j] == s[k]))
                        rep.multiplicative = false;
                }
    for (size_t a = 0; a < chars.size(); ++a)
        for (size_t b = 0; b < chars.size(); ++b) {
            const auto ab = multiply(G, chars[a], chars[b]);
            const auto sab = dual_action(A, ab);
            for (int i = 0; i < A.dim(); ++i)
                if (!(scal[a][i] * scal[b][i] == sab[i]))
                    rep.group_action = false;
        }
    return rep;
}

int IdealLattice::find(const std::vector<int>& ideal) const
{
    auto it = std::find(ideals.begin(), ideals.end(), ideal);
    return it == ideals.end() ? -1 : static_cast<int>(it - ideals.begin());
}

namespace {

using Mask = std::uint64_t;

std::vector<int> to_list(Mask m)
{
    std::vector<int> v;
    for (int i = 0; i < 64; ++i)
        if (m >> i & 1u)
            v.push_back(i);
    return v;
}

// edges[i]: basis elements reachable from i by one multiplication or action
IdealLattice lattice_from_edges(const std::vector<std::vector<int>>& edges)
{
    const int n = static_cast<int>(edges.size());
    if (n > 64)
        throw CrossedError("ideal enumeration supports at most 64 basis elements");
    std::vector<Mask> principal(n, 0);
    for (int i = 0; i < n; ++i) {
        std::vector<int> stack{i};
        Mask m = Mask(1) << i;
        while (!stack.empty()) {
            const int x = stack.back();
            stack.pop_back();
            for (int y : edges[x])
                if (!(m >> y & 1u)) {
                    m |= Mask(1) << y;
                    stack.push_back(y);
                }
        }
        principal[i] = m;
    }
    std::set<Mask> seen{0};
    std::vector<Mask> queue{0};
    for (size_t q = 0; q < queue.size(); ++q)
        for (Mask p : principal) {
            const Mask j = queue[q] | p;
            if (seen.insert(j).second)
                queue.push_back(j);
        }
    std::vector<Mask> all(seen.begin(), seen.end());
    std::sort(all.begin(), all.end(), [](Mask a, Mask b) {
        const int pa = std::popcount(a), pb = std::popcount(b);
        return pa != pb ? pa < pb : to_list(a) < to_list(b);
    });
    IdealLattice L;
    std::map<Mask, int> pos;
    for (size_t i = 0; i < all.size(); ++i) {
        L.ideals.push_back(to_list(all[i]));
        pos[all[i]] = static_cast<int>(i);
    }
    const size_t k = all.size();
    L.meet.assign(k, std::vector<int>(k, -1));
    L.join.assign(k, std::vector<int>(k, -1));
    for (size_t a = 0; a < k; ++a)
        for (size_t b = 0; b < k; ++b) {
            auto mi = pos.find(all[a] & all[b]);
            auto jo = pos.find(all[a] | all[b]);
            if (mi == pos.end() || jo == pos.end())
                throw CrossedError("ideal family is not closed under meet/join");
            L.meet[a][b] = mi->second;
            L.join[a][b] = jo->second;
        }
    return L;
}

} // namespace

IdealLattice enumerate_invariant_ideals(const CrossedAlgebra& A)
{
    const int n = A.base_dim();
    std::vector<std::vector<int>> edges(n);
    const auto& T = A.base().table;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            for (const auto& [p, c] : T[i][j])
                edges[i].push_back(p);
            for (const auto& [p, c] : T[j][i])
                edges[i].push_back(p);
        }
        for (int g = 0; g < A.group().size(); ++g)
            edges[i].push_back(A.alpha(g).target[i]);
    }
    return lattice_from_edges(edges);
}

IdealLattice enumerate_dual_invariant_ideals(const CrossedAlgebra& A)
{
    const int n = A.dim();
    std::vector<std::vector<int>> edges(n);
    const auto& T = A.algebra().table;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            for (const auto& [p, c] : T[i][j])
                if (!c.is_zero())
                    edges[i].push_back(p);
            for (const auto& [p, c] : T[j][i])
                if (!c.is_zero())
                    edges[i].push_back(p);
        }
    // the dual action scales each e U_g, so every basis span is invariant
    return lattice_from_edges(edges);
}

LatticeIsoReport verify_lattice_iso(const CrossedAlgebra& A)
{
    const auto base = enumerate_invariant_ideals(A);
    const auto cross = enumerate_dual_invariant_ideals(A);
    LatticeIsoReport rep;
    rep.base_size = static_cast<int>(base.ideals.size());
    rep.crossed_size = static_cast<int>(cross.ideals.size());
    std::vector<int> phi;
    std::set<int> hit;
    bool all_found = true;
    for (const auto& J : base.ideals) {
        std::vector<int> img;
        for (int b : J)
            for (int g = 0; g < A.group().size(); ++g)
                img.push_back(A.index(b, g));
        std::sort(img.begin(), img.end());
        const int k = cross.find(img);
        all_found = all_found && k >= 0;
        phi.push_back(k);
        hit.insert(k);
    }
    rep.bijective = all_found && hit.size() == base.ideals.size() &&
                    base.ideals.size() == cross.ideals.size();
    if (!all_found)
        return rep;
    rep.meets_preserved = rep.joins_preserved = true;
    for (size_t a = 0; a < base.ideals.size(); ++a)
        for (size_t b = 0; b < base.ideals.size(); ++b) {
            if (phi[base.meet[a][b]] != cross.meet[phi[a]][phi[b]])
                rep.meets_preserved = false;
            if (phi[base.join[a][b]] != cross.join[phi[a]][phi[b]])
                rep.joins_preserved = false;
        }
    return rep;
}

namespace {

Row<Cyclotomic> dense(const std::map<std::pair<int, int>, Cyclotomic>& M, int size, bool adjoint,
                      const Cyclotomic& zero)
{
    Row<Cyclotomic> v(size_t(size) * size, zero);
    for (const auto& [rc, x] : M) {
        if (adjoint)
            v[size_t(rc.second) * size + rc.first] = x.conjugate();
        else
            v[size_t(rc.first) * size + rc.second] = x;
    }
    return v;
}

// diag = B cap B* in coefficient coordinates of the given matrices.
Rows<Cyclotomic> diag_coords(const std::vector<std::map<std::pair<int, int>, Cyclotomic>>& mats,
                             int size, const Cyclotomic& zero)
{
    Rows<Cyclotomic> B, Bs;
    for (const auto& M : mats) {
        B.push_back(dense(M, size, false, zero));
        Bs.push_back(dense(M, size, true, zero));
    }
    return intersection_coords(B, Bs, zero);
}

} // namespace

DiagReport diag_check(const CrossedAlgebra& A, int ampliation)
{
    DiagReport rep;
    const int S = A.model_size();
    std::vector<std::map<std::pair<int, int>, Cyclotomic>> mats;
    for (int i = 0; i < A.dim(); ++i)
        mats.push_back(A.model_matrix(i));
    const auto crossed_diag = diag_coords(mats, S, A.zero());
    rep.crossed_diag_dim = static_cast<int>(crossed_diag.size());

    // diag of the base in its own block-diagonal model
    const int n = A.group().size() ? S / A.group().size() : 0;
    std::vector<int> offsets;
    int off = 0;
    for (int k : A.system().base.shape.sizes) {
        offsets.push_back(off);
        off += k;
    }
    std::vector<std::map<std::pair<int, int>, Cyclotomic>> base_mats;
    const Cyclotomic one(A.field_order(), 1);
    for (const auto& u : A.base_units())
        base_mats.push_back(
            {{{offsets[u.summand] + u.row - 1, offsets[u.summand] + u.col - 1}, one}});
    const auto base_diag = diag_coords(base_mats, n, A.zero());
    const auto expected = lift(A, base_diag);
    rep.expected_dim = static_cast<int>(expected.size());
    rep.equal = same_span(crossed_diag, expected);

    // diag(A (x) M_p) = diag(A) (x) M_p; coordinates (unit, u, v)
    const int p = ampliation;
    rep.ampliation = p;
    if (p >= 1) {
        std::vector<std::map<std::pair<int, int>, Cyclotomic>> amp;
        for (const auto& bm : base_mats)
            for (int u = 0; u < p; ++u)
                for (int v = 0; v < p; ++v) {
                    const auto& [rc, x] = *bm.begin();
                    amp.push_back({{{rc.first * p + u, rc.second * p + v}, x}});
                }
        const auto amp_diag = diag_coords(amp, n * p, A.zero());
        rep.ampliation_diag_dim = static_cast<int>(amp_diag.size());
        Rows<Cyclotomic> amp_expected;
        for (const auto& d : base_diag)
            for (int u = 0; u < p; ++u)
                for (int v = 0; v < p; ++v) {
                    Row<Cyclotomic> row(size_t(A.base_dim()) * p * p, A.zero());
                    for (int b = 0; b < A.base_dim(); ++b)
                        row[(size_t(b) * p + u) * p + v] = d[b];
                    amp_expected.push_back(std::move(row));
                }
        rep.ampliation_expected = static_cast<int>(amp_expected.size());
        rep.ampliation_equal = same_span(amp_diag, amp_expected);
    }
    return rep;
}

PermanenceReport semisimplicity_permanence_check(const CrossedAlgebra& A)
{
    PermanenceReport rep;
    rep.applicable = base_radical(A).empty();
    rep.crossed_semisimple = radical_traceform(A).empty();
    return rep;
}

LinksLemmaReport links_lemma_check(const CrossedAlgebra& A)
{
    LinksLemmaReport rep;
    const auto rad = radical_traceform(A);
    const auto& units = A.base_units();
    for (int i = 0; i < A.dim(); ++i) {
        if (contains_span(rad, Rows<Cyclotomic>{A.algebra().basis(i)})) {
            ++rep.skipped_radical;
            continue;
        }
        ++rep.checked;
        const auto& e = units[A.unit_of(i)];
        bool found = false;
        for (int g = 0; g < A.group().size() && !found; ++g) {
            const auto& t = units[A.alpha(g).target[A.unit_of(i)]];
            if (t.summand != e.summand)
                continue;
            const UnitCoord b{e.summand, e.col, t.row};
            if (A.system().base.kind == BaseKind::Triangular && b.row > b.col)
                continue;
            rep.witnesses.push_back({i, g, b});
            found = true;
        }
        if (!found)
            rep.failures.push_back(i);
    }
    return rep;
}

} // namespace limitalg
