#include "limitalg/crossed.hpp"
#include "limitalg/dynamics.hpp"
#include "limitalg/links.hpp"
#include "limitalg/peters.hpp"
#include "limitalg/radical.hpp"
#include "limitalg/random_tower.hpp"
#include "limitalg/tower_parser.hpp"
#include "oracles.hpp"

#include <functional>
#include <iostream>
#include <random>
#include <set>

using namespace limitalg;

namespace {

int failures = 0;

void report(int id, const std::string& title, const std::function<std::string()>& run)
{
    std::string problem;
    try {
        problem = run();
    } catch (const std::exception& ex) {
        problem = std::string("exception: ") + ex.what();
    }
    std::cout << (problem.empty() ? "PASS" : "FAIL") << " " << id << " " << title;
    if (!problem.empty()) {
        std::cout << ": " << problem;
        ++failures;
    }
    std::cout << "\n";
}

oracle::Blocks dense_power(const oracle::Blocks& x, int k)
{
    auto p = x;
    for (int i = 1; i < k; ++i)
        p = oracle::mul(p, x);
    return p;
}

std::string nilpotent_example()
{
    const auto t = preset_tower("paper-example-taf");
    const MatrixUnit e{1, 0, 1, 2};
    for (int n = 1; n <= 5; ++n) {
        const auto E = oracle::unit_at(t, e, n);
        if (!oracle::is_zero(oracle::mul(E, E)))
            return "e^2 != 0 at level " + std::to_string(n);
        if (n > 4)
            continue;
        for (const auto& b : oracle::units(t, n)) {
            const auto Eb = oracle::mul(E, oracle::unit(t.shape(n), b.summand, b.row, b.col));
            if (!oracle::is_zero(dense_power(Eb, 3)))
                return "(e b)^3 != 0 for b = " + to_string(b);
        }
    }
    const auto r = uniform_nilpotency(t, e, 3, 4);
    if (!r.certificate || !r.certificate->closed)
        return "no closed pattern certificate";
    return {};
}

std::string non_decomposable()
{
    const auto t = preset_tower("paper-example-taf");
    const MatrixUnit e{1, 0, 1, 2};
    for (int n = 1; n <= 5; ++n) {
        const auto img = embed_unit(t, e, n);
        bool all_linkless = true;
        for (const auto& c : img.units) {
            const MatrixUnit u{n, c.summand, c.row, c.col};
            const auto st = link_status(t, u);
            if (c.summand == 0) {
                if (st.state != LinkState::Linked || st.witness->level != n + 1 ||
                    !oracle::linked_at_outer(t, u, n + 1))
                    return to_string(u) + " is not linked at the next level";
                all_linkless = false;
            } else if (st.state != LinkState::CertifiedLinkless ||
                       st.certificate->kind != CertificateKind::Frozen) {
                return to_string(u) + " lacks a frozen certificate";
            }
        }
        if (all_linkless)
            return "all-linkless decomposition at level " + std::to_string(n);
    }
    return {};
}

std::string tuhf_radical()
{
    const auto r = preset_tower("refinement-2");
    for (int n = 0; n <= 3; ++n)
        for (const auto& e : oracle::units(r, n, true)) {
            if (link_status(r, e).state != LinkState::CertifiedLinkless)
                return to_string(e) + " not certified linkless";
            if (radical_membership(r, e).state != RadicalState::InRadical)
                return to_string(e) + " not in radical";
        }
    const auto s = preset_tower("standard-2");
    for (int n = 0; n <= 3; ++n)
        for (const auto& e : oracle::units(s, n)) {
            const auto st = link_status(s, e);
            if (st.state != LinkState::Linked || st.witness->level > n + 1 ||
                !has_link_at(s, e, n + 1) || !oracle::linked_at_outer(s, e, n + 1))
                return to_string(e) + " not linked at the next level";
            const auto rm = radical_membership(s, e);
            if (rm.state != RadicalState::NotInRadical || rm.certificate != "chain-cycle")
                return to_string(e) + " lacks a chain-cycle verdict";
        }
    const auto c = donsig_chain(s, {0, 0, 1, 2}, 3);
    if (!c || c->S.size() != 3 || !verify_chain(s, *c))
        return "depth-3 chain does not verify";
    for (size_t l = 0; l < c->S.size(); ++l) {
        const int N = c->S[l].level;
        const auto E = oracle::unit_at(s, c->T[l], N);
        if (oracle::mul(oracle::mul(E, oracle::unit_at(s, c->S[l], N)), E) !=
            oracle::unit_at(s, c->T[l + 1], N))
            return "T_l S T_l mismatch at step " + std::to_string(l + 1);
    }
    return {};
}

std::string embedding_order()
{
    std::mt19937_64 rng(2024);
    for (auto [k, m] : {std::pair{2, 4}, std::pair{3, 4}})
        for (int trial = 0; trial < 1000; ++trial) {
            const Word w = random_lattice_word(LevelShape{k}, {m}, rng);
            if (!oracle::ballot_word(w, k, m))
                return "generator produced an invalid word";
            const auto rep = verify_embedding_order(Embedding(LevelShape{k}, LevelShape{k * m}, {w}));
            if (rep.violations)
                return std::to_string(rep.violations) + " violations for T" + std::to_string(k);
            for (int i = 1; i <= k; ++i) {
                int first = 0, last = 0;
                for (size_t q = 0; q < w.size(); ++q)
                    if (w[q].pos == i) {
                        if (!first)
                            first = static_cast<int>(q) + 1;
                        last = static_cast<int>(q) + 1;
                    }
                if (first > (i - 1) * m + 1 || last < i * m)
                    return "direct count disagrees for T" + std::to_string(k);
            }
        }
    return {};
}

std::string family_check(const std::function<std::string(const CrossedSystem&, const CrossedAlgebra&)>& f)
{
    const auto fam = tightness_family();
    if (fam.size() < 40)
        return "family has only " + std::to_string(fam.size()) + " systems";
    for (const auto& sys : fam) {
        const auto problem = f(sys, build_crossed(sys));
        if (!problem.empty())
            return sys.name + ": " + problem;
    }
    return {};
}

std::string tightness()
{
    return family_check([](const CrossedSystem&, const CrossedAlgebra& A) -> std::string {
        const auto t = radical_tightness_check(A);
        if (!t.tight || !t.core_generates)
            return "radical not tight";
        if (!corollary_formula_check(A).equal)
            return "span formula fails";
        return {};
    });
}

std::string lattices()
{
    auto p = family_check([](const CrossedSystem&, const CrossedAlgebra& A) -> std::string {
        return verify_lattice_iso(A).ok() ? "" : "lattice map fails";
    });
    if (!p.empty())
        return p;
    const auto rep = verify_lattice_iso(build_crossed(crossed_preset("t2-z2-sign")));
    if (rep.base_size != 5 || rep.crossed_size != 5)
        return "t2-z2-sign lattices have " + std::to_string(rep.base_size) + " and " +
               std::to_string(rep.crossed_size) + " elements";
    return {};
}

std::string diag_permanence()
{
    auto p = family_check([](const CrossedSystem&, const CrossedAlgebra& A) -> std::string {
        const auto d = diag_check(A);
        if (!d.equal || !d.ampliation_equal)
            return "diag formula fails";
        return semisimplicity_permanence_check(A).holds() ? "" : "permanence fails";
    });
    if (!p.empty())
        return p;
    for (const char* name : {"c2-z2-flip", "m2-z2-sign"}) {
        const auto A = build_crossed(crossed_preset(name));
        const auto pc = semisimplicity_permanence_check(A);
        if (!radical_traceform(A).empty() || !pc.applicable || !pc.crossed_semisimple)
            return std::string(name) + " has a nonzero radical";
    }
    return {};
}

size_t brute_count(const FiniteDynSys& sys, int H)
{
    const int n = sys.size();
    std::set<std::vector<Subset>> out;
    for (long code = 0; code < (1L << (n * (H + 1))); ++code) {
        std::vector<Subset> xs(H + 1);
        for (int k = 0; k <= H; ++k)
            xs[k] = (code >> (k * n)) & ((1L << n) - 1);
        bool ok = (sys.image(xs[H]) & ~xs[H]) == 0;
        for (int k = 0; k < H && ok; ++k)
            ok = ((xs[k + 1] | sys.image(xs[k + 1])) & ~xs[k]) == 0;
        if (ok)
            out.insert(xs);
    }
    return out.size();
}

std::string peters()
{
    const auto one = parse_system("points = a\nphi: a->a\n");
    const auto id = parse_system("points = 1 2\nphi: 1->1 2->2\n");
    const auto sw = parse_system("points = 1 2\nphi: 1->2 2->1\n");
    for (int H = 0; H <= 6; ++H) {
        const auto got = enumerate_sequences(one, H).size();
        if (got != static_cast<size_t>(H + 2) || brute_count(one, H) != got)
            return "|X|=1 count wrong at H=" + std::to_string(H);
    }
    if (enumerate_sequences(id, 1).size() != 9 || brute_count(id, 1) != 9)
        return "identity count is not 9";
    if (enumerate_sequences(sw, 0).size() != 2 || brute_count(sw, 0) != 2)
        return "swap count is not 2";

    std::mt19937_64 rng(8);
    const auto sys = parse_system("points = a b c d\nphi: a->b b->c c->a d->d\n");
    const auto model = build_truncated(sys, 8);
    for (int trial = 0; trial < 100; ++trial) {
        const auto s = random_sequence(sys, 5, rng);
        if (!check_star(sys, s).ok)
            return "random sequence violates star";
        if (ideals_to_sets(sets_to_ideals(s)) != s)
            return "ideal roundtrip differs";
        const auto I = ideal_from_sequence(model, s);
        if (ideal_diagnostic(model, I) || ideals_to_sets(extract_bigstar(model, I)) != s.normalized())
            return "truncation roundtrip differs";
    }

    for (const auto* s : {&sw, &id}) {
        const auto m = build_truncated(*s, 6);
        int invariant = 0;
        for (int code = 0; code < (1 << 12); ++code) {
            HomogeneousIdeal J = zero_ideal(m);
            for (int d = 0; d < 6; ++d)
                for (int j = 0; d + j < 6; ++j)
                    J.zero[d + j][j] = s->preimage((code >> (2 * d)) & 3, j);
            if (ideal_diagnostic(m, J))
                continue;
            ++invariant;
            if (!check_bigstar(*s, extract_bigstar(m, J), 5).ok)
                return "extracted corner sequence violates bigstar";
        }
        if (invariant == 0)
            return "no invariant ideals found";
    }
    return {};
}

std::string index_chase()
{
    std::mt19937_64 rng(5);
    long tuples = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const int steps = 2 + static_cast<int>(rng() % 2);
        std::vector<int> sizes{2};
        for (int j = 0; j < steps; ++j)
            sizes.push_back(sizes.back() * (2 + static_cast<int>(rng() % 2)));
        const auto t = random_tuhf_tower(sizes, rng);
        const int order = 2 + static_cast<int>(rng() % 2);
        const auto act = diagonal_action(t, {order}, steps);
        if (!verify_action(t, act, steps).ok())
            return "random action fails verification";
        const auto a = technical_index_audit(t, act, {0, 0, 1, 2}, 1, steps);
        if (a.satisfiable)
            return "satisfiable chain in trial " + std::to_string(trial);
        tuples += static_cast<long>(a.tuples.size());
    }
    if (tuples == 0)
        return "audit produced no tuples";
    return family_check([](const CrossedSystem&, const CrossedAlgebra& A) -> std::string {
        return links_lemma_check(A).failures.empty() ? "" : "element without a witness";
    });
}

} // namespace

int main()
{
    report(1, "nilpotent non-linkless unit in the spawning tower", nilpotent_example);
    report(2, "no linkless decomposition of the spawning unit", non_decomposable);
    report(3, "TUHF radical on refinement-2 and standard-2", tuhf_radical);
    report(4, "embedding order on random words", embedding_order);
    report(5, "radical tightness on the crossed family", tightness);
    report(6, "ideal lattice isomorphism on the crossed family", lattices);
    report(7, "diag formula and permanence of semisimplicity", diag_permanence);
    report(8, "Peters counts and roundtrips", peters);
    report(9, "index-chase audits and the links lemma", index_chase);
    return failures ? 1 : 0;
}
