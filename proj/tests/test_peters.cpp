#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "limitalg/peters.hpp"

#include <algorithm>
#include <random>
#include <set>

using namespace limitalg;

namespace {

// every (X_0..X_H) with X_{n+1} u phi(X_{n+1}) inside X_n and phi(X_H) inside X_H
std::set<std::vector<Subset>> brute_sequences(const FiniteDynSys& sys, int H)
{
    const int n = sys.size();
    auto image = [&](Subset s) {
        Subset out = 0;
        for (int x = 0; x < n; ++x)
            if (s >> x & 1)
                out |= Subset{1} << sys.phi[x];
        return out;
    };
    std::set<std::vector<Subset>> out;
    const long total = 1L << (n * (H + 1));
    for (long code = 0; code < total; ++code) {
        std::vector<Subset> xs(H + 1);
        for (int k = 0; k <= H; ++k)
            xs[k] = (code >> (k * n)) & ((1L << n) - 1);
        bool ok = (image(xs[H]) & ~xs[H]) == 0;
        for (int k = 0; k < H && ok; ++k)
            ok = ((xs[k + 1] | image(xs[k + 1])) & ~xs[k]) == 0;
        if (ok)
            out.insert(xs);
    }
    return out;
}

std::vector<Subset> padded(const SubsetSequence& s, int H)
{
    std::vector<Subset> v;
    for (int k = 0; k <= H; ++k)
        v.push_back(s.at(k));
    return v;
}

FiniteDynSys sys_of(const std::string& text) { return parse_system(text); }

} // namespace

TEST_CASE("enumeration counts")
{
    const auto one = sys_of("points = a\nphi: a->a\n");
    for (int H = 0; H <= 5; ++H)
        CHECK(enumerate_sequences(one, H).size() == static_cast<size_t>(H + 2));
    CHECK(enumerate_sequences(sys_of("points = 1 2\nphi: 1->1 2->2\n"), 1).size() == 9);
    CHECK(enumerate_sequences(sys_of("points = 1 2\nphi: 1->2 2->1\n"), 0).size() == 2);
}

TEST_CASE("enumeration equals brute force")
{
    const std::vector<std::string> systems = {
        "points = a\nphi: a->a\n",
        "points = 1 2\nphi: 1->1 2->2\n",
        "points = 1 2\nphi: 1->2 2->1\n",
        "points = a b c\nphi: a->b b->c c->a\n",
        "points = a b c\nphi: a->b b->a c->c\n",
    };
    for (const auto& text : systems) {
        const auto sys = sys_of(text);
        for (int H = 0; H <= (sys.size() == 3 ? 2 : 3); ++H) {
            const auto brute = brute_sequences(sys, H);
            const auto got = enumerate_sequences(sys, H);
            std::set<std::vector<Subset>> mine;
            for (const auto& s : got) {
                mine.insert(padded(s, H));
                CHECK(check_star(sys, s).ok);
            }
            CHECK(mine.size() == got.size());
            CHECK(mine == brute);
            CHECK(std::is_sorted(got.begin(), got.end(), [&](const auto& a, const auto& b) {
                return padded(a, H) < padded(b, H);
            }));
        }
    }
}

TEST_CASE("star checks and witnesses")
{
    const auto sw = sys_of("points = 1 2\nphi: 1->2 2->1\n");
    CHECK(check_star(sw, {{3, 0}}).ok);
    const auto bad = check_star(sw, {{1}});
    CHECK_FALSE(bad.ok);
    CHECK(bad.index == 0);
    CHECK(bad.witness == "phi({1})={2} not a subset of X_0={1}");
    CHECK(check_star(sw, {{sw.all()}}).ok);
    CHECK_FALSE(check_bigstar(sw, sets_to_ideals({{1}})).ok);
}

TEST_CASE("ideal duality")
{
    const auto one = sys_of("points = 1\nphi: 1->1\n");
    const auto I = sets_to_ideals({{1, 0}});
    CHECK(I.at(0) == 1); // I_0 = 0: vanishes everywhere
    CHECK(I.at(5) == 0); // everything
    std::mt19937_64 rng(5);
    const auto sys = sys_of("points = a b c d\nphi: a->b b->a c->d d->c\n");
    for (int trial = 0; trial < 100; ++trial) {
        const auto s = random_sequence(sys, 4, rng);
        CHECK(check_star(sys, s).ok);
        CHECK(ideals_to_sets(sets_to_ideals(s)) == s);
        CHECK(check_bigstar(sys, sets_to_ideals(s)).ok);
    }
    for (const auto& s : enumerate_sequences(sys, 2))
        CHECK(check_bigstar(sys, sets_to_ideals(s)).ok == check_star(sys, s).ok);
    // star fails, bigstar fails too
    for (Subset a = 0; a < 16; ++a)
        for (Subset b = 0; b < 16; ++b) {
            const SubsetSequence s{{a, b}};
            CHECK(check_star(sys, s).ok == check_bigstar(sys, sets_to_ideals(s)).ok);
        }
}

TEST_CASE("lattice operations stay in the class")
{
    std::mt19937_64 rng(9);
    const auto sys = sys_of("points = a b c\nphi: a->b b->c c->a\n");
    const SubsetSequence top{{sys.all()}};
    for (int trial = 0; trial < 100; ++trial) {
        const auto a = random_sequence(sys, 3, rng), b = random_sequence(sys, 3, rng);
        const auto p = lattice_ops(a, b);
        CHECK(check_star(sys, p.meet).ok);
        CHECK(check_star(sys, p.join).ok);
        CHECK(lattice_ops(a, top).meet == a);
        CHECK(lattice_ops(a, a).meet == a);
        const auto model = build_truncated(sys, 5);
        CHECK(ideal_from_sequence(model, p.meet) ==
              ideal_plus(ideal_from_sequence(model, a), ideal_from_sequence(model, b)));
        CHECK(ideal_from_sequence(model, p.join) ==
              ideal_intersection(ideal_from_sequence(model, a), ideal_from_sequence(model, b)));
    }
}

TEST_CASE("truncated model")
{
    const auto sw = sys_of("points = 1 2\nphi: 1->2 2->1\n");
    const auto m = build_truncated(sw, 6);
    CHECK(extract_bigstar(m, zero_ideal(m)).at(3) == sw.all());
    CHECK(extract_bigstar(m, full_ideal(m)).at(3) == 0);
    const SubsetSequence s{{3, 1, 0}};
    const auto I = ideal_from_sequence(m, s);
    CHECK_FALSE(ideal_diagnostic(m, I));
    CHECK(ideals_to_sets(extract_bigstar(m, I)) == s);
    // shift relation: entry (i,j) is phi^{-j} of the corner on its diagonal
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j <= i; ++j)
            CHECK(I.zero[i][j] == sw.preimage(I.zero[i - j][0], j));

    auto broken = I;
    broken.zero[2][0] = sw.all();
    const auto d = ideal_diagnostic(m, broken);
    REQUIRE(d);
    CHECK(d->find("is not in the ideal") != std::string::npos);
    CHECK_THROWS_AS(extract_bigstar(m, broken), PetersError);
}

TEST_CASE("injectivity and brute-force invariant ideals of the N=6 truncation")
{
    for (const auto& text : {"points = 1 2\nphi: 1->2 2->1\n", "points = 1 2\nphi: 1->1 2->2\n"}) {
        const auto sys = sys_of(text);
        const auto m = build_truncated(sys, 6);
        const auto seqs = enumerate_sequences(sys, 4);
        std::vector<HomogeneousIdeal> ideals;
        for (const auto& s : seqs) {
            const auto I = ideal_from_sequence(m, s);
            CHECK(std::find(ideals.begin(), ideals.end(), I) == ideals.end());
            ideals.push_back(I);
        }
        // every pattern with entry (i,j) = phi^{-j}(corner_{i-j}) that is an ideal
        int invariant = 0;
        for (int code = 0; code < (1 << 12); ++code) {
            HomogeneousIdeal J = zero_ideal(m);
            for (int d = 0; d < 6; ++d)
                for (int j = 0; d + j < 6; ++j)
                    J.zero[d + j][j] = sys.preimage((code >> (2 * d)) & 3, j);
            if (ideal_diagnostic(m, J))
                continue;
            ++invariant;
            CHECK(check_bigstar(sys, extract_bigstar(m, J), 5).ok);
        }
        CHECK(invariant >= static_cast<int>(seqs.size()));
    }
}

TEST_CASE("recurrence and system input")
{
    CHECK(recurrent_dense(sys_of("points = a b c\nphi: a->a b->b c->c\n")));
    CHECK(recurrent_dense(make_system({}, {})));
    CHECK_THROWS_AS(sys_of("points = a b\nphi: a->b b->b\n"), PetersError);
    CHECK_THROWS_AS(sys_of("points = a b\nphi: a->b\n"), PetersError);
    CHECK_THROWS_AS(sys_of("phi: a->a\n"), PetersError);
    const auto s = sys_of("points = x y\nphi: x->y y->x\n");
    CHECK(parse_system(to_text(s)).phi == s.phi);
}
