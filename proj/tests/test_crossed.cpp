#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "limitalg/crossed.hpp"
#include "limitalg/linalg.hpp"

#include <set>

using namespace limitalg;

namespace {

using C = Cyclotomic;
using Dense = std::vector<std::vector<C>>;

Dense dense(const CrossedAlgebra& A, int i)
{
    const int n = A.model_size();
    Dense m(n, std::vector<C>(n, A.zero()));
    for (const auto& [rc, v] : A.model_matrix(i))
        m[rc.first][rc.second] = v;
    return m;
}

Dense dmul(const Dense& a, const Dense& b, const C& zero)
{
    const size_t n = a.size();
    Dense c(n, std::vector<C>(n, zero));
    for (size_t i = 0; i < n; ++i)
        for (size_t k = 0; k < n; ++k)
            if (!a[i][k].is_zero())
                for (size_t j = 0; j < n; ++j)
                    if (!b[k][j].is_zero())
                        c[i][j] += a[i][k] * b[k][j];
    return c;
}

Row<C> flatten(const Dense& m)
{
    Row<C> r;
    for (const auto& row : m)
        r.insert(r.end(), row.begin(), row.end());
    return r;
}

Dense combine(const std::vector<Dense>& basis, const Row<C>& x, const C& zero)
{
    const size_t n = basis[0].size();
    Dense m(n, std::vector<C>(n, zero));
    for (size_t i = 0; i < x.size(); ++i)
        if (!x[i].is_zero())
            for (size_t r = 0; r < n; ++r)
                for (size_t c = 0; c < n; ++c)
                    m[r][c] += x[i] * basis[i][r][c];
    return m;
}

// Radical through traces in the faithful model, then checked to be a
// nilpotent two-sided ideal (so it equals the Jacobson radical).
Rows<C> model_radical(const CrossedAlgebra& A, bool& nilpotent_ideal)
{
    const int d = A.dim();
    std::vector<Dense> rho;
    for (int i = 0; i < d; ++i)
        rho.push_back(dense(A, i));
    Rows<C> gram(d, Row<C>(d, A.zero()));
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            const auto p = dmul(rho[i], rho[j], A.zero());
            for (size_t k = 0; k < p.size(); ++k)
                gram[i][j] += p[k][k];
        }
    const Rows<C> R = nullspace(gram, d, A.zero());
    nilpotent_ideal = true;
    if (R.empty())
        return R;
    Rows<C> image;
    std::vector<Dense> Rm;
    for (const auto& x : R) {
        Rm.push_back(combine(rho, x, A.zero()));
        image.push_back(flatten(Rm.back()));
    }
    for (const auto& r : Rm)
        for (const auto& b : rho) {
            nilpotent_ideal = nilpotent_ideal &&
                              contains_span(image, Rows<C>{flatten(dmul(r, b, A.zero()))}) &&
                              contains_span(image, Rows<C>{flatten(dmul(b, r, A.zero()))});
        }
    // powers of the span die out
    std::vector<Dense> power = Rm;
    for (int k = 0; k <= d && !power.empty(); ++k) {
        Rows<C> next;
        std::vector<Dense> nm;
        for (const auto& p : power)
            for (const auto& r : Rm) {
                auto q = dmul(p, r, A.zero());
                auto f = flatten(q);
                bool nz = false;
                for (const auto& v : f)
                    nz = nz || !v.is_zero();
                if (nz && !contains_span(next, Rows<C>{f})) {
                    next.push_back(f);
                    nm.push_back(std::move(q));
                }
            }
        power = std::move(nm);
    }
    nilpotent_ideal = nilpotent_ideal && power.empty();
    return R;
}

// ideals spanned by basis subsets, found by trying every subset
int brute_crossed_ideals(const CrossedAlgebra& A)
{
    const int d = A.dim();
    const auto& T = A.algebra().table;
    int count = 0;
    for (long mask = 0; mask < (1L << d); ++mask) {
        bool ok = true;
        for (int i = 0; i < d && ok; ++i) {
            if (!(mask >> i & 1))
                continue;
            for (int j = 0; j < d && ok; ++j)
                for (const auto* prod : {&T[i][j], &T[j][i]})
                    for (const auto& [k, v] : *prod)
                        if (!v.is_zero() && !(mask >> k & 1))
                            ok = false;
        }
        count += ok;
    }
    return count;
}

int brute_base_ideals(const CrossedAlgebra& A)
{
    const int d = A.base_dim();
    const auto& T = A.base().table;
    int count = 0;
    for (long mask = 0; mask < (1L << d); ++mask) {
        bool ok = true;
        for (int i = 0; i < d && ok; ++i) {
            if (!(mask >> i & 1))
                continue;
            for (int g = 0; g < A.group().size(); ++g)
                ok = ok && (mask >> A.alpha(g).target[i] & 1);
            for (int j = 0; j < d && ok; ++j)
                for (const auto* prod : {&T[i][j], &T[j][i]})
                    for (const auto& [k, v] : *prod)
                        if (!v.is_zero() && !(mask >> k & 1))
                            ok = false;
        }
        count += ok;
    }
    return count;
}

} // namespace

TEST_CASE("cyclotomic arithmetic")
{
    const auto i = C::root_of_unity(4, 1);
    CHECK(i * i == C(4, -1));
    CHECK(i * i.inverse() == C(4, 1));
    CHECK(i.conjugate() == C::root_of_unity(4, -1));
    const auto z = C::root_of_unity(3, 1);
    CHECK(z * z * z == C(3, 1));
    CHECK((C(3, 1) + z + z * z).is_zero());
    CHECK(cyclotomic_polynomial(6) == std::vector<long>{1, -1, 1});
    CHECK(euler_phi(12) == 4);
}

TEST_CASE("groups and characters")
{
    const FiniteAbelianGroup G({2, 2});
    CHECK(G.size() == 4);
    CHECK(G.exponent() == 2);
    const auto chars = characters(G);
    CHECK(chars.size() == 4);
    for (const auto& ch : chars)
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b)
                CHECK(ch(G, G.add(a, b)) == ch(G, a) * ch(G, b));
}

TEST_CASE("radical matches the model-trace oracle")
{
    auto systems = tightness_family();
    for (const auto& name : crossed_preset_names())
        systems.push_back(crossed_preset(name));
    int checked = 0;
    for (size_t k = 0; k < systems.size(); ++k) {
        const auto A = build_crossed(systems[k]);
        bool nilpotent_ideal = false;
        const auto oracle = model_radical(A, nilpotent_ideal);
        CHECK_MESSAGE(nilpotent_ideal, systems[k].name);
        CHECK_MESSAGE(same_span(oracle, radical_traceform(A)), systems[k].name);
        ++checked;
    }
    CHECK(checked == static_cast<int>(systems.size()));
}

TEST_CASE("worked crossed examples")
{
    const auto A = build_crossed(crossed_preset("t2-z2-sign"));
    CHECK(A.dim() == 6);
    const auto rad = radical_traceform(A);
    CHECK(rad.size() == 2);
    const auto lat = verify_lattice_iso(A);
    CHECK(lat.base_size == 5);
    CHECK(lat.crossed_size == 5);
    CHECK(lat.ok());
    CHECK(brute_crossed_ideals(A) == 5);
    const auto d = diag_check(A);
    CHECK(d.crossed_diag_dim == 4);
    CHECK(d.equal);
    CHECK(radical_traceform(build_crossed(crossed_preset("c2-z2-flip")))
              .empty());
    CHECK(radical_traceform(build_crossed(crossed_preset("m2-z2-sign"))).empty());
    CHECK(radical_traceform(build_crossed(crossed_preset("t3-trivial"))).size() == 3);
    CHECK(enumerate_invariant_ideals(build_crossed(crossed_preset("t3-trivial"))).ideals.size() ==
          14);
}

TEST_CASE("ideal lattices agree with subset enumeration")
{
    for (const auto& sys : tightness_family()) {
        const auto A = build_crossed(sys);
        if (A.dim() > 12)
            continue;
        CHECK_MESSAGE(static_cast<int>(enumerate_invariant_ideals(A).ideals.size()) ==
                          brute_base_ideals(A),
                      sys.name);
        CHECK_MESSAGE(static_cast<int>(enumerate_dual_invariant_ideals(A).ideals.size()) ==
                          brute_crossed_ideals(A),
                      sys.name);
    }
}

TEST_CASE("family-wide structure checks")
{
    const auto fam = tightness_family();
    CHECK(fam.size() >= 40);
    std::set<std::string> names;
    for (const auto& sys : fam) {
        names.insert(sys.name);
        const auto A = build_crossed(sys);
        CHECK(A.verify_covariance());
        const auto dual = verify_dual_action(A);
        CHECK(dual.multiplicative);
        CHECK(dual.group_action);
        CHECK(dual.trivial_is_identity);
        const auto t = radical_tightness_check(A);
        CHECK_MESSAGE(t.tight, sys.name);
        CHECK(t.core_generates);
        CHECK(links_lemma_check(A).failures.empty());
    }
    CHECK(names.size() == fam.size());
}

TEST_CASE("crossed system input errors")
{
    CHECK_THROWS_AS(parse_crossed("group 2\n"), CrossedError);
    CHECK_THROWS_AS(parse_crossed("base triangular 2\nfoo 1\n"), CrossedError);
    CHECK_THROWS_AS(parse_crossed("base triangular x\n"), CrossedError);
    // a swap of order 2 declared as order 3
    CHECK_THROWS_AS(CrossedAlgebra(parse_crossed("base triangular 2 2\ngroup 3\ngenerator 0 perm 1 0\n")),
                    CrossedError);
    // swapping blocks of different sizes
    CHECK_THROWS_AS(CrossedAlgebra(parse_crossed("base triangular 2 3\ngroup 2\ngenerator 0 perm 1 0\n")),
                    CrossedError);
    const auto sys = crossed_preset("t2t2-z2-swap");
    const auto again = parse_crossed(to_text(sys));
    CHECK(to_text(again) == to_text(sys));
    CHECK_THROWS_AS(load_crossed("no-such-system"), CrossedError);
}
