#include "limitalg/crossed.hpp"

#include <fstream>
#include <sstream>

namespace limitalg {

namespace {

[[noreturn]] void fail(int line, const std::string& msg)
{
    throw CrossedError("line " + std::to_string(line) + ": " + msg);
}

std::vector<int> read_ints(std::istringstream& in, int line)
{
    std::vector<int> v;
    std::string tok;
    while (in >> tok) {
        try {
            size_t used = 0;
            v.push_back(std::stoi(tok, &used));
            if (used != tok.size())
                throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            fail(line, "expected an integer, found '" + tok + "'");
        }
    }
    return v;
}

} // namespace

CrossedSystem parse_crossed(const std::string& text, const std::string& name)
{
    CrossedSystem sys;
    sys.name = name;
    bool have_base = false;
    std::istringstream lines(text);
    std::string raw;
    int line = 0;
    std::vector<int> group;
    std::map<int, GeneratorAction> gens;
    while (std::getline(lines, raw)) {
        ++line;
        if (auto h = raw.find('#'); h != std::string::npos)
            raw.erase(h);
        std::istringstream in(raw);
        std::string kw;
        if (!(in >> kw))
            continue;
        if (kw == "base") {
            std::string kind;
            in >> kind;
            if (kind == "triangular")
                sys.base.kind = BaseKind::Triangular;
            else if (kind == "full")
                sys.base.kind = BaseKind::Full;
            else
                fail(line, "base must be 'triangular' or 'full'");
            sys.base.shape = LevelShape(read_ints(in, line));
            for (int k : sys.base.shape.sizes)
                if (k < 1)
                    fail(line, "block sizes must be positive");
            have_base = true;
        } else if (kw == "group") {
            group = read_ints(in, line);
            for (int d : group)
                if (d < 1)
                    fail(line, "cyclic orders must be positive");
        } else if (kw == "generator") {
            int g = -1;
            std::string what;
            if (!(in >> g) || g < 0)
                fail(line, "expected a generator index");
            in >> what;
            auto& ga = gens[g];
            if (what == "perm") {
                ga.perm = read_ints(in, line);
            } else if (what == "diag") {
                int s = -1;
                std::string colon;
                if (!(in >> s >> colon) || s < 0 || colon != ":")
                    fail(line, "expected 'diag <summand> : <exponents>'");
                if (static_cast<int>(ga.diag.size()) <= s)
                    ga.diag.resize(s + 1);
                ga.diag[s] = read_ints(in, line);
            } else {
                fail(line, "expected 'perm' or 'diag' after the generator index");
            }
        } else {
            fail(line, "unknown directive '" + kw + "'");
        }
    }
    if (!have_base)
        throw CrossedError("missing 'base' line");
    sys.group = FiniteAbelianGroup(group);
    for (const auto& [g, ga] : gens)
        if (g >= static_cast<int>(group.size()))
            throw CrossedError("generator " + std::to_string(g) + " has no cyclic factor");
    sys.generators.resize(group.size());
    for (auto& [g, ga] : gens) {
        ga.diag.resize(ga.diag.empty() ? 0 : sys.base.shape.summands());
        sys.generators[g] = ga;
    }
    return sys;
}

std::string to_text(const CrossedSystem& sys)
{
    std::ostringstream os;
    os << "base " << (sys.base.kind == BaseKind::Full ? "full" : "triangular");
    for (int k : sys.base.shape.sizes)
        os << ' ' << k;
    os << '\n';
    if (sys.group.rank()) {
        os << "group";
        for (int d : sys.group.orders())
            os << ' ' << d;
        os << '\n';
    }
    for (size_t g = 0; g < sys.generators.size(); ++g) {
        const auto& ga = sys.generators[g];
        if (!ga.perm.empty()) {
            os << "generator " << g << " perm";
            for (int p : ga.perm)
                os << ' ' << p;
            os << '\n';
        }
        for (size_t s = 0; s < ga.diag.size(); ++s) {
            if (ga.diag[s].empty())
                continue;
            os << "generator " << g << " diag " << s << " :";
            for (int a : ga.diag[s])
                os << ' ' << a;
            os << '\n';
        }
    }
    return os.str();
}

namespace {

const std::map<std::string, std::string>& crossed_presets()
{
    static const std::map<std::string, std::string> p = {
        {"t2-z2-sign", "base triangular 2\ngroup 2\ngenerator 0 diag 0 : 0 1\n"},
        {"c2-z2-flip", "base triangular 1 1\ngroup 2\ngenerator 0 perm 1 0\n"},
        {"m2-z2-sign", "base full 2\ngroup 2\ngenerator 0 diag 0 : 0 1\n"},
        {"t2t2-z2-swap", "base triangular 2 2\ngroup 2\ngenerator 0 perm 1 0\n"},
        {"t2-trivial", "base triangular 2\n"},
        {"t3-trivial", "base triangular 3\n"},
    };
    return p;
}

} // namespace

const std::vector<std::string>& crossed_preset_names()
{
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (const auto& [k, _] : crossed_presets())
            v.push_back(k);
        return v;
    }();
    return names;
}

CrossedSystem crossed_preset(const std::string& name)
{
    auto it = crossed_presets().find(name);
    if (it == crossed_presets().end())
        throw CrossedError("unknown crossed-product preset '" + name + "'");
    return parse_crossed(it->second, name);
}

const std::string& crossed_preset_source(const std::string& name)
{
    auto it = crossed_presets().find(name);
    if (it == crossed_presets().end())
        throw CrossedError("unknown crossed-product preset '" + name + "'");
    return it->second;
}

CrossedSystem load_crossed(const std::string& name_or_path)
{
    if (crossed_presets().count(name_or_path))
        return crossed_preset(name_or_path);
    std::ifstream in(name_or_path);
    if (!in)
        throw CrossedError("cannot open '" + name_or_path + "' (not a preset or readable file)");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_crossed(ss.str(), name_or_path);
}

namespace {

// All generator actions on `base` with exponents mod m (first entry of each
// block fixed to 0, since scalar blocks act trivially).
std::vector<GeneratorAction> generator_options(const LevelShape& base, int m)
{
    std::vector<std::vector<int>> perms;
    std::vector<int> id;
    for (int s = 0; s < base.summands(); ++s)
        id.push_back(s);
    perms.push_back(id);
    if (base.summands() == 2 && base.size(0) == base.size(1))
        perms.push_back({1, 0});
    int free = 0;
    for (int k : base.sizes)
        free += k - 1;
    std::vector<GeneratorAction> out;
    for (const auto& p : perms) {
        long combos = 1;
        for (int i = 0; i < free; ++i)
            combos *= m;
        for (long c = 0; c < combos; ++c) {
            GeneratorAction ga;
            if (p != id)
                ga.perm = p;
            long x = c;
            for (int k : base.sizes) {
                std::vector<int> d{0};
                for (int i = 1; i < k; ++i) {
                    d.push_back(static_cast<int>(x % m));
                    x /= m;
                }
                ga.diag.push_back(d);
            }
            out.push_back(std::move(ga));
        }
    }
    return out;
}

} // namespace

std::vector<CrossedSystem> tightness_family()
{
    const std::vector<LevelShape> bases = {LevelShape{2}, LevelShape{3}, LevelShape{2, 2}};
    const std::vector<std::vector<int>> groups = {{}, {2}, {3}, {2, 2}};
    std::vector<CrossedSystem> out;
    for (const auto& b : bases)
        for (const auto& g : groups) {
            FiniteAbelianGroup G(g);
            const auto opts = generator_options(b, G.exponent());
            std::vector<std::vector<GeneratorAction>> choices{{}};
            for (size_t f = 0; f < g.size(); ++f) {
                std::vector<std::vector<GeneratorAction>> next;
                for (const auto& ch : choices)
                    for (const auto& o : opts) {
                        auto c = ch;
                        c.push_back(o);
                        next.push_back(std::move(c));
                    }
                choices = std::move(next);
            }
            int k = 0;
            for (const auto& ch : choices) {
                CrossedSystem sys;
                sys.base = {BaseKind::Triangular, b};
                sys.group = G;
                sys.generators = ch;
                try {
                    CrossedAlgebra probe(sys);
                } catch (const CrossedError&) {
                    continue;
                }
                std::string gname;
                for (int d : g)
                    gname += (gname.empty() ? "Z" : "xZ") + std::to_string(d);
                sys.name = sys.base.to_string() + "/" + (gname.empty() ? "Z1" : gname) + "#" +
                           std::to_string(k++);
                out.push_back(std::move(sys));
            }
        }
    return out;
}

} // namespace limitalg
