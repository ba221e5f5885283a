#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "limitalg/dynamics.hpp"
#include "limitalg/random_tower.hpp"
#include "oracles.hpp"

#include <random>

using namespace limitalg;

namespace {

const char* kSwap = R"(
level 0 = [2,2]
level 1 = [4,4]
embed 0 -> 1 {
  target 0 : (0,1)(0,2)(1,1)(1,2)
  target 1 : (1,1)(1,2)(0,1)(0,2)
}
repeat
action g order 2 {
  level 0 -> 0 {
    target 0 : (1,1)(1,2)
    target 1 : (0,1)(0,2)
  }
  level 1 -> 1 {
    target 0 : (1,1)(1,2)(1,3)(1,4)
    target 1 : (0,1)(0,2)(0,3)(0,4)
  }
}
)";

// x A y != 0 at level N, searched over every matrix unit b
bool dense_link(const TowerSpec& t, const MatrixUnitSum& x, const MatrixUnitSum& y, int N)
{
    auto to_dense = [&](const MatrixUnitSum& s) {
        auto b = oracle::zero(t.shape(s.level));
        for (const auto& u : s.units)
            b = oracle::add(b, oracle::unit(t.shape(s.level), u.summand, u.row, u.col));
        return oracle::embed(t, s.level, N, b);
    };
    const auto X = to_dense(x), Y = to_dense(y);
    for (const auto& b : oracle::units(t, N))
        if (!oracle::is_zero(oracle::mul(oracle::mul(X, oracle::unit(t.shape(N), b.summand, b.row, b.col)), Y)))
            return true;
    return false;
}

// diagonal positions carrying the projection e_p (level n) at level N
std::vector<int> dense_positions(const TowerSpec& t, int n, int p, int N)
{
    const auto D = oracle::unit_at(t, {n, 0, p, p}, N);
    std::vector<int> out;
    for (size_t i = 0; i < D[0].size(); ++i)
        if (D[0][i][i] != 0)
            out.push_back(static_cast<int>(i) + 1);
    return out;
}

} // namespace

TEST_CASE("actions parse, validate and act")
{
    const auto doc = parse_document(kSwap);
    const TowerAction act(doc.tower, doc.actions);
    CHECK(act.group().size() == 2);
    CHECK(verify_action(doc.tower, act, 3).ok());
    const auto img = apply_action(doc.tower, act, 1, MatrixUnit{0, 0, 1, 2});
    REQUIRE(img.units.size() == 1);
    CHECK(img.units[0] == UnitCoord{1, 1, 2});
    CHECK(same_element(doc.tower, apply_action(doc.tower, act, 0, MatrixUnit{0, 1, 1, 2}),
                       MatrixUnitSum{0, {{1, 1, 2}}}));

    auto blocks = doc.actions;
    blocks[0].order = 3;
    const TowerAction wrong(doc.tower, blocks);
    const auto chk = verify_action(doc.tower, wrong, 3);
    CHECK_FALSE(chk.orders);
    CHECK_FALSE(chk.problems.empty());

    blocks = doc.actions;
    blocks[0].maps[0].words[1] = blocks[0].maps[0].words[0];
    CHECK_THROWS_AS(TowerAction(doc.tower, blocks), TowerError);
}

TEST_CASE("twisted links agree with the dense search")
{
    const auto doc = parse_document(kSwap);
    const TowerAction act(doc.tower, doc.actions);
    const auto& t = doc.tower;
    for (int n = 0; n <= 1; ++n)
        for (const auto& e : oracle::units(t, n, true))
            for (int g = 0; g < 2; ++g) {
                const MatrixUnitSum x{n, {e.coord()}};
                const auto y = apply_action(t, act, g, x);
                const auto w = twisted_link(t, act, e, g, 3);
                bool dense = false;
                for (int N = std::max(n, y.level); N <= 3 && !dense; ++N)
                    dense = dense_link(t, x, y, N);
                CHECK(w.has_value() == dense);
            }
    const auto w = twisted_link(t, act, {0, 0, 1, 2}, 1, 3);
    REQUIRE(w);
    CHECK(w->level == 1);
    CHECK(w->f == MatrixUnit{1, 0, 2, 3});
}

TEST_CASE("technical audit on the presets")
{
    const auto s = preset_tower("standard-2");
    auto a = technical_index_audit(s, diagonal_action(s, {2}, 6), {0, 0, 1, 2}, 4, 4);
    CHECK_FALSE(a.applicable);
    CHECK(a.satisfiable == 0);
    CHECK(a.embedding_order_violations == 0);
    CHECK_FALSE(a.tuples.empty());
    a = technical_index_audit(s, TowerAction(), {0, 0, 1, 2}, 4, 4);
    CHECK_FALSE(a.applicable);
    CHECK(a.satisfiable == 0);

    const auto r = preset_tower("refinement-2");
    a = technical_index_audit(r, diagonal_action(r, {2}, 6), {0, 0, 1, 2}, 3, 4);
    CHECK(a.applicable);
    CHECK(a.satisfiable == 0);

    const auto doc = parse_document(kSwap);
    a = technical_index_audit(doc.tower, TowerAction(doc.tower, doc.actions), {0, 0, 1, 2}, 2, 2);
    CHECK(a.reason.rfind("unsupported", 0) == 0);
}

TEST_CASE("audit tuples recomputed densely on random towers")
{
    std::mt19937_64 rng(21);
    int tuples = 0;
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<int> sizes{2};
        for (int j = 0; j < 2; ++j)
            sizes.push_back(sizes.back() * (2 + static_cast<int>(rng() % 2)));
        const auto t = random_tuhf_tower(sizes, rng);
        const auto act = diagonal_action(t, {2}, 2);
        const auto a = technical_index_audit(t, act, {0, 0, 1, 2}, 1, 2);
        CHECK(a.satisfiable == 0);
        CHECK(a.embedding_order_violations == 0);
        for (const auto& x : a.tuples) {
            ++tuples;
            const auto L = dense_positions(t, x.N, x.l, x.n2);
            const auto M = dense_positions(t, x.N, x.m, x.n2);
            CHECK(x.l_last == L.back());
            CHECK(x.m_first == M.front());
            CHECK(x.kp_last == dense_positions(t, x.N, x.k, x.n2).back());
            CHECK(x.lp_first == L.front());
            const int r = t.shape(x.n2).size(0) / t.shape(x.N).size(0);
            CHECK(x.fourth == (x.l * r <= x.l_last));
            CHECK(x.fifth == (x.lp_first <= (x.l - 1) * r + 1));
            CHECK_FALSE((x.l * r <= x.l_last && x.l_last < x.m_first && x.m_first <= x.kp_last &&
                         x.kp_last < x.lp_first && x.lp_first <= (x.l - 1) * r + 1));
            CHECK(dense_link(t, {x.N, {{0, x.m, x.m}}}, {x.N, {{0, x.k, x.k}}}, x.n2));
        }
    }
    CHECK(tuples > 0);
}
