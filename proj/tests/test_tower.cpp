#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "limitalg/random_tower.hpp"
#include "limitalg/tower_parser.hpp"
#include "oracles.hpp"

#include <random>

using namespace limitalg;

namespace {

Word w(std::initializer_list<std::pair<int, int>> ls)
{
    Word out;
    for (auto [s, p] : ls)
        out.push_back({s, p});
    return out;
}

bool has_issue(const ValidationReport& r, EmbeddingIssueKind k)
{
    for (const auto& i : r.issues)
        if (i.kind == k)
            return true;
    return false;
}

// every word over {1..k} with each label m times, by brute force
void all_words(int k, int m, Word& cur, std::vector<int>& left, std::vector<Word>& out)
{
    if (static_cast<int>(cur.size()) == k * m) {
        out.push_back(cur);
        return;
    }
    for (int p = 1; p <= k; ++p)
        if (left[p] > 0) {
            --left[p];
            cur.push_back({0, p});
            all_words(k, m, cur, left, out);
            cur.pop_back();
            ++left[p];
        }
}

} // namespace

TEST_CASE("word validation agrees with the ballot oracle on every T2 -> T4 and T3 -> T6 word")
{
    for (auto [k, m] : {std::pair{2, 2}, std::pair{3, 2}}) {
        std::vector<Word> words;
        Word cur;
        std::vector<int> left(k + 1, m);
        left[0] = 0;
        all_words(k, m, cur, left, words);
        int valid = 0;
        for (const auto& word : words) {
            const bool ok = validate_embedding(LevelShape{k}, LevelShape{k * m}, {word}).ok();
            CHECK(ok == oracle::ballot_word(word, k, m));
            valid += ok;
        }
        // ballot words with m copies of k labels: 2 for (2,2), 5 for (3,2)
        CHECK(valid == (k == 2 ? 2 : 5));
    }
}

TEST_CASE("invalid words name the failed condition")
{
    const LevelShape t2{2}, t4{4};
    CHECK(has_issue(validate_embedding(t2, t4, {w({{0, 1}, {0, 2}, {0, 1}})}), EmbeddingIssueKind::Count));
    CHECK(has_issue(validate_embedding(t2, t4, {w({{0, 2}, {0, 1}, {0, 1}, {0, 2}})}),
                    EmbeddingIssueKind::Lattice));
    CHECK(has_issue(validate_embedding(t2, t4, {w({{0, 1}, {0, 2}, {0, 1}, {0, 3}})}),
                    EmbeddingIssueKind::Range));
    CHECK(has_issue(validate_embedding(LevelShape{2, 2}, t4, {w({{0, 1}, {0, 2}, {0, 1}, {0, 2}})}),
                    EmbeddingIssueKind::Injective));
    CHECK(has_issue(validate_embedding(t2, LevelShape{2, 2}, {w({{0, 1}, {0, 2}}), Word{}}),
                    EmbeddingIssueKind::Unital));
    CHECK_THROWS_WITH_AS(Embedding(t2, t4, {w({{0, 2}, {0, 1}, {0, 1}, {0, 2}})}),
                         doctest::Contains("LATTICE"), TowerError);
}

TEST_CASE("images match the dense entrywise embedding")
{
    for (const auto& name : preset_names()) {
        const auto t = preset_tower(name);
        for (int n = 0; n <= 2; ++n)
            for (const auto& e : oracle::units(t, n)) {
                const auto img = embed_unit(t, e, n + 2);
                auto dense = oracle::zero(t.shape(n + 2));
                for (const auto& u : img.units)
                    dense = oracle::add(dense, oracle::unit(t.shape(n + 2), u.summand, u.row, u.col));
                CHECK(dense == oracle::unit_at(t, e, n + 2));
            }
    }
}

TEST_CASE("preset images")
{
    auto s = preset_tower("standard-2");
    auto img = embed_unit(s, {0, 0, 1, 2}, 1);
    REQUIRE(img.units.size() == 2);
    CHECK(img.units[0] == UnitCoord{0, 1, 2});
    CHECK(img.units[1] == UnitCoord{0, 3, 4});
    auto r = preset_tower("refinement-2");
    img = embed_unit(r, {0, 0, 1, 2}, 1);
    CHECK(img.units[0] == UnitCoord{0, 1, 3});
    CHECK(img.units[1] == UnitCoord{0, 2, 4});
    auto p = preset_tower("paper-example-taf");
    CHECK(p.shape(3).sizes == std::vector<int>{2, 4, 4, 4});
    CHECK(p.shape(5).summands() == 6);
}

TEST_CASE("parser roundtrip and errors")
{
    for (const auto& name : preset_names()) {
        const auto t = preset_tower(name);
        const auto again = parse_tower(to_text(t));
        for (int n = 0; n <= 4; ++n) {
            CHECK(again.shape(n) == t.shape(n));
            CHECK(again.step(n).words() == t.step(n).words());
        }
    }
    CHECK_THROWS_AS(parse_tower("level 0 = [2]\nlevel 1 = [4]\nembed 0 -> 1 {\n  target 0 : (0,1) (0,2) (0,1)\n}\n"),
                    TowerError);
    CHECK_THROWS_AS(parse_tower("level 0 = [2\n"), ParseError);
    CHECK_THROWS_AS(load_document("no-such-tower"), TowerError);
}

TEST_CASE("embedding order on random words matches a direct count")
{
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 300; ++trial) {
        const int k = 2 + static_cast<int>(rng() % 3), m = 1 + static_cast<int>(rng() % 4);
        const Word word = random_lattice_word(LevelShape{k}, {m}, rng);
        REQUIRE(oracle::ballot_word(word, k, m));
        const Embedding step(LevelShape{k}, LevelShape{k * m}, {word});
        const auto rep = verify_embedding_order(step);
        CHECK(rep.violations == 0);
        for (int i = 1; i <= k; ++i) {
            int first = 0, last = 0;
            for (size_t q = 0; q < word.size(); ++q)
                if (word[q].pos == i) {
                    if (!first)
                        first = static_cast<int>(q) + 1;
                    last = static_cast<int>(q) + 1;
                }
            CHECK(first <= (i - 1) * m + 1);
            CHECK(last >= i * m);
            CHECK(rep.entries[i - 1].first == first);
            CHECK(rep.entries[i - 1].last == last);
        }
    }
}

TEST_CASE("element arithmetic agrees with dense blocks")
{
    const auto t = preset_tower("paper-example-taf");
    const auto us = oracle::units(t, 2);
    for (size_t a = 0; a < us.size(); a += 3)
        for (size_t b = 0; b < us.size(); b += 2) {
            const auto p = multiply(Element::unit(t, us[a]), Element::unit(t, us[b]));
            const auto dense = oracle::mul(oracle::unit_at(t, us[a], 2), oracle::unit_at(t, us[b], 2));
            CHECK(p.is_zero() == oracle::is_zero(dense));
        }
    CHECK_THROWS_AS(power(Element::unit(t, us[0]), 0), TowerError);
}
