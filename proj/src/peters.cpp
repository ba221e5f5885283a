#include "limitalg/peters.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace limitalg {

namespace {

Subset bit(int x) { return Subset{1} << x; }

} // namespace

Subset FiniteDynSys::image(Subset s) const
{
    Subset out = 0;
    for (int x = 0; x < size(); ++x)
        if (s & bit(x))
            out |= bit(phi[x]);
    return out;
}

Subset FiniteDynSys::preimage(Subset s) const
{
    Subset out = 0;
    for (int x = 0; x < size(); ++x)
        if (s & bit(phi[x]))
            out |= bit(x);
    return out;
}

Subset FiniteDynSys::preimage(Subset s, int times) const
{
    for (int t = 0; t < times; ++t)
        s = preimage(s);
    return s;
}

std::string FiniteDynSys::to_string(Subset s) const
{
    std::string out = "{";
    for (int x = 0; x < size(); ++x)
        if (s & bit(x))
            out += (out.size() > 1 ? "," : "") + labels[x];
    return out + "}";
}

FiniteDynSys make_system(std::vector<std::string> labels, std::vector<int> phi)
{
    if (labels.size() > 64)
        throw PetersError("at most 64 points are supported");
    if (phi.size() != labels.size())
        throw PetersError("phi must be defined on every point");
    std::set<std::string> names(labels.begin(), labels.end());
    if (names.size() != labels.size())
        throw PetersError("duplicate point label");
    std::vector<bool> hit(labels.size());
    for (int y : phi) {
        if (y < 0 || y >= static_cast<int>(labels.size()))
            throw PetersError("phi leaves X");
        if (hit[y])
            throw PetersError("phi is not a bijection: " + labels[y] + " has two preimages");
        hit[y] = true;
    }
    return {std::move(labels), std::move(phi)};
}

FiniteDynSys parse_system(const std::string& text)
{
    std::istringstream lines(text);
    std::string raw;
    std::vector<std::string> labels;
    std::map<std::string, std::string> arrows;
    bool have_points = false;
    int line = 0;
    auto fail = [&](const std::string& msg) -> void {
        throw PetersError("line " + std::to_string(line) + ": " + msg);
    };
    while (std::getline(lines, raw)) {
        ++line;
        if (auto h = raw.find('#'); h != std::string::npos)
            raw.erase(h);
        std::istringstream in(raw);
        std::string kw;
        if (!(in >> kw))
            continue;
        if (kw == "points" || kw == "points=") {
            std::string tok;
            if (kw == "points" && (!(in >> tok) || tok != "="))
                fail("expected 'points = ...'");
            while (in >> tok)
                labels.push_back(tok);
            have_points = true;
        } else if (kw == "phi:" || kw == "phi") {
            std::string tok;
            if (kw == "phi" && (!(in >> tok) || tok != ":"))
                fail("expected 'phi: a->b ...'");
            while (in >> tok) {
                auto p = tok.find("->");
                if (p == std::string::npos || p == 0 || p + 2 >= tok.size())
                    fail("expected 'x->y', found '" + tok + "'");
                if (!arrows.emplace(tok.substr(0, p), tok.substr(p + 2)).second)
                    fail("phi given twice on " + tok.substr(0, p));
            }
        } else {
            fail("unknown directive '" + kw + "'");
        }
    }
    if (!have_points)
        throw PetersError("missing 'points = ...' line");
    std::map<std::string, int> idx;
    for (size_t i = 0; i < labels.size(); ++i)
        idx[labels[i]] = static_cast<int>(i);
    std::vector<int> phi(labels.size(), -1);
    for (const auto& [a, b] : arrows) {
        if (!idx.count(a) || !idx.count(b))
            throw PetersError("phi mentions unknown point in " + a + "->" + b);
        phi[idx[a]] = idx[b];
    }
    for (size_t i = 0; i < labels.size(); ++i)
        if (phi[i] < 0)
            throw PetersError("phi is not defined on " + labels[i]);
    return make_system(labels, phi);
}

FiniteDynSys load_system(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw PetersError("cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_system(ss.str());
}

std::string to_text(const FiniteDynSys& sys)
{
    std::string out = "points =";
    for (const auto& l : sys.labels)
        out += " " + l;
    out += "\nphi:";
    for (int x = 0; x < sys.size(); ++x)
        out += " " + sys.labels[x] + "->" + sys.labels[sys.phi[x]];
    return out + "\n";
}

Subset SubsetSequence::at(int n) const
{
    if (sets.empty())
        return 0;
    return sets[std::min<size_t>(n, sets.size() - 1)];
}

int SubsetSequence::stabilization() const
{
    int s = static_cast<int>(sets.size()) - 1;
    while (s > 0 && sets[s - 1] == sets[s])
        --s;
    return std::max(s, 0);
}

SubsetSequence SubsetSequence::normalized() const
{
    SubsetSequence out = *this;
    if (!out.sets.empty())
        out.sets.resize(stabilization() + 1);
    return out;
}

bool operator==(const SubsetSequence& a, const SubsetSequence& b)
{
    return a.normalized().sets == b.normalized().sets;
}

StarCheck check_star(const FiniteDynSys& sys, const SubsetSequence& seq)
{
    StarCheck c;
    const int n_max = static_cast<int>(seq.sets.size());
    for (int n = 0; n < std::max(n_max, 1); ++n) {
        const Subset cur = seq.at(n), next = seq.at(n + 1);
        if ((cur | sys.all()) != sys.all()) {
            c = {false, n, "X_" + std::to_string(n) + " is not a subset of X"};
            return c;
        }
        if ((next & ~cur) != 0) {
            c = {false, n, "X_" + std::to_string(n + 1) + "=" + sys.to_string(next) +
                               " not a subset of X_" + std::to_string(n) + "=" +
                               sys.to_string(cur)};
            return c;
        }
        const Subset img = sys.image(next);
        if ((img & ~cur) != 0) {
            c = {false, n, "phi(" + sys.to_string(next) + ")=" + sys.to_string(img) +
                               " not a subset of X_" + std::to_string(n) + "=" +
                               sys.to_string(cur)};
            return c;
        }
    }
    return c;
}

Subset IdealSequence::at(int n) const
{
    if (zero.empty())
        return 0;
    return zero[std::min<size_t>(n, zero.size() - 1)];
}

bool ideal_contains(Subset big, Subset small) { return (big & ~small) == 0; }
Subset ideal_meet(Subset a, Subset b) { return a | b; }
Subset ideal_sum(Subset a, Subset b) { return a & b; }
Subset ideal_alpha(const FiniteDynSys& sys, Subset z) { return sys.image(z); }

IdealSequence sets_to_ideals(const SubsetSequence& seq) { return {seq.sets}; }
SubsetSequence ideals_to_sets(const IdealSequence& iseq) { return {iseq.zero}; }

StarCheck check_bigstar(const FiniteDynSys& sys, const IdealSequence& iseq, int count)
{
    StarCheck c;
    const int n_max = count >= 0 ? count : std::max<int>(iseq.zero.size(), 1);
    for (int n = 0; n < n_max; ++n) {
        const Subset cur = iseq.at(n), next = iseq.at(n + 1);
        const Subset rhs = ideal_meet(next, ideal_alpha(sys, next));
        if (!ideal_contains(rhs, cur)) {
            c = {false, n, "I_" + std::to_string(n) + " (zero set " + sys.to_string(cur) +
                               ") not inside I_" + std::to_string(n + 1) + " n alpha(I_" +
                               std::to_string(n + 1) + ") (zero set " + sys.to_string(rhs) + ")"};
            return c;
        }
    }
    return c;
}

namespace {

std::vector<Subset> invariant_subsets(const FiniteDynSys& sys)
{
    if (sys.size() > 20)
        throw PetersError("enumeration supports at most 20 points");
    std::vector<Subset> out;
    for (Subset s = 0; s <= sys.all(); ++s)
        if ((sys.image(s) & ~s) == 0)
            out.push_back(s);
    return out;
}

void extend(const FiniteDynSys& sys, std::vector<Subset>& cur, int n,
            std::vector<SubsetSequence>& out)
{
    if (n < 0) {
        out.push_back(SubsetSequence{cur}.normalized());
        return;
    }
    const Subset need = cur[n + 1] | sys.image(cur[n + 1]);
    const Subset free = sys.all() & ~need;
    for (Subset extra = free;; extra = (extra - 1) & free) {
        cur[n] = need | extra;
        extend(sys, cur, n - 1, out);
        if (extra == 0)
            break;
    }
}

} // namespace

std::vector<SubsetSequence> enumerate_sequences(const FiniteDynSys& sys, int horizon)
{
    if (horizon < 0)
        throw PetersError("horizon must be non-negative");
    std::vector<SubsetSequence> out;
    std::vector<Subset> cur(horizon + 1);
    for (Subset tail : invariant_subsets(sys)) {
        cur[horizon] = tail;
        extend(sys, cur, horizon - 1, out);
    }
    auto padded = [&](const SubsetSequence& s) {
        std::vector<Subset> v;
        for (int n = 0; n <= horizon; ++n)
            v.push_back(s.at(n));
        return v;
    };
    std::sort(out.begin(), out.end(),
              [&](const auto& a, const auto& b) { return padded(a) < padded(b); });
    return out;
}

SubsetSequence random_sequence(const FiniteDynSys& sys, int horizon, std::mt19937_64& rng)
{
    Subset tail = 0;
    std::vector<bool> done(sys.size());
    for (int x = 0; x < sys.size(); ++x) {
        if (done[x])
            continue;
        Subset orbit = 0;
        for (int y = x; !done[y]; y = sys.phi[y]) {
            done[y] = true;
            orbit |= bit(y);
        }
        if (rng() & 1)
            tail |= orbit;
    }
    std::vector<Subset> sets(horizon + 1);
    sets[horizon] = tail;
    for (int n = horizon - 1; n >= 0; --n)
        sets[n] = sets[n + 1] | sys.image(sets[n + 1]) | (rng() & rng() & sys.all());
    return SubsetSequence{sets}.normalized();
}

LatticePair lattice_ops(const SubsetSequence& a, const SubsetSequence& b)
{
    const size_t len = std::max(a.sets.size(), b.sets.size());
    LatticePair p;
    for (size_t n = 0; n < len; ++n) {
        p.meet.sets.push_back(a.at(static_cast<int>(n)) & b.at(static_cast<int>(n)));
        p.join.sets.push_back(a.at(static_cast<int>(n)) | b.at(static_cast<int>(n)));
    }
    p.meet = p.meet.normalized();
    p.join = p.join.normalized();
    return p;
}

bool recurrent_dense(const FiniteDynSys& sys)
{
    for (int x = 0; x < sys.size(); ++x) {
        int y = sys.phi[x], steps = 1;
        while (y != x && steps <= sys.size()) {
            y = sys.phi[y];
            ++steps;
        }
        if (y != x)
            return false; // discrete: every point must be recurrent
    }
    return true;
}

TruncatedSemicrossed build_truncated(const FiniteDynSys& sys, int N)
{
    if (N < 1)
        throw PetersError("truncation size must be positive");
    return {sys, N};
}

namespace {

HomogeneousIdeal filled(int N, Subset z)
{
    HomogeneousIdeal I;
    I.N = N;
    for (int i = 0; i < N; ++i)
        I.zero.emplace_back(i + 1, z);
    return I;
}

} // namespace

HomogeneousIdeal zero_ideal(const TruncatedSemicrossed& model)
{
    return filled(model.N, model.sys.all());
}

HomogeneousIdeal full_ideal(const TruncatedSemicrossed& model) { return filled(model.N, 0); }

HomogeneousIdeal ideal_from_sequence(const TruncatedSemicrossed& model, const SubsetSequence& seq)
{
    HomogeneousIdeal I = filled(model.N, 0);
    for (int i = 0; i < model.N; ++i)
        for (int j = 0; j <= i; ++j)
            I.zero[i][j] = model.sys.preimage(seq.at(i - j), j);
    return I;
}

HomogeneousIdeal ideal_intersection(const HomogeneousIdeal& a, const HomogeneousIdeal& b)
{
    HomogeneousIdeal c = a;
    for (int i = 0; i < a.N; ++i)
        for (int j = 0; j <= i; ++j)
            c.zero[i][j] = a.zero[i][j] | b.zero[i][j];
    return c;
}

HomogeneousIdeal ideal_plus(const HomogeneousIdeal& a, const HomogeneousIdeal& b)
{
    HomogeneousIdeal c = a;
    for (int i = 0; i < a.N; ++i)
        for (int j = 0; j <= i; ++j)
            c.zero[i][j] = a.zero[i][j] & b.zero[i][j];
    return c;
}

std::optional<std::string> ideal_diagnostic(const TruncatedSemicrossed& model,
                                            const HomogeneousIdeal& ideal)
{
    const auto& sys = model.sys;
    const int N = model.N;
    if (ideal.N != N || static_cast<int>(ideal.zero.size()) != N)
        return "ideal has the wrong truncation size";
    auto in = [&](int i, int j, int x) { return !(ideal.zero[i][j] & bit(x)); };
    auto unit = [&](int i, int j, int x) {
        return "e_{" + std::to_string(i) + "," + std::to_string(j) + "}[" + sys.labels[x] + "]";
    };
    for (int i = 0; i < N; ++i)
        for (int j = 0; j <= i; ++j)
            for (int x = 0; x < sys.size(); ++x) {
                if (!in(i, j, x))
                    continue;
                for (int k = i; k < N; ++k)
                    if (!in(k, j, x))
                        return unit(k, i, x) + " * " + unit(i, j, x) + " = " + unit(k, j, x) +
                               " is not in the ideal";
                for (int l = 0; l <= j; ++l)
                    if (!in(i, l, x))
                        return unit(i, j, x) + " * " + unit(j, l, x) + " = " + unit(i, l, x) +
                               " is not in the ideal";
            }
    for (int i = 0; i + 1 < N; ++i)
        for (int j = 0; j <= i; ++j)
            if (ideal.zero[i + 1][j + 1] != sys.preimage(ideal.zero[i][j]))
                return "shift invariance fails: entry (" + std::to_string(i + 1) + "," +
                       std::to_string(j + 1) + ") vanishes on " +
                       sys.to_string(ideal.zero[i + 1][j + 1]) + ", expected phi^{-1} of " +
                       sys.to_string(ideal.zero[i][j]);
    return std::nullopt;
}

IdealSequence extract_bigstar(const TruncatedSemicrossed& model, const HomogeneousIdeal& ideal)
{
    if (auto d = ideal_diagnostic(model, ideal))
        throw PetersError("not an invariant ideal: " + *d);
    IdealSequence out;
    for (int n = 0; n < model.N; ++n)
        out.zero.push_back(ideal.zero[n][0]);
    return out;
}

} // namespace limitalg
