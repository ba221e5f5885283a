#include "limitalg/random_tower.hpp"
#include "limitalg/tower_parser.hpp"

#include <fstream>
#include <map>
#include <sstream>

namespace limitalg {

namespace {

const std::map<std::string, std::string>& presets()
{
    static const std::map<std::string, std::string> p = {
        {"standard-2", R"(# T_2 -> T_4 -> T_8 -> ..., e_ij -> e_ij + e_{i+k,j+k}
level 0 = [2]
level 1 = [4]
embed 0 -> 1 {
  target 0 : (0,1) (0,2) (0,1) (0,2)
}
repeat
)"},
        {"refinement-2", R"(# T_2 -> T_4 -> ..., e_ij -> e_ij (x) I_2
level 0 = [2]
level 1 = [4]
embed 0 -> 1 {
  target 0 : (0,1) (0,1) (0,2) (0,2)
}
repeat
)"},
        {"paper-example-taf", R"(# T_2 feeds itself and a fresh T_4 at every level; older T_4's are carried
level 0 = [2]
level 1 = [2,4]
embed 0 -> 1 {
  target 0 : (0,1) (0,2)
  target 1 : (0,1) (0,2) (0,1) (0,2)
}
spawn 1
)"},
    };
    return p;
}

} // namespace

const std::vector<std::string>& preset_names()
{
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (const auto& [k, _] : presets())
            v.push_back(k);
        return v;
    }();
    return names;
}

const std::string& preset_source(const std::string& name)
{
    auto it = presets().find(name);
    if (it == presets().end())
        throw TowerError("unknown preset '" + name + "'");
    return it->second;
}

TowerSpec preset_tower(const std::string& name)
{
    return parse_tower(preset_source(name), name);
}

TowerDocument load_document(const std::string& name_or_path)
{
    if (presets().count(name_or_path))
        return parse_document(preset_source(name_or_path), name_or_path);
    std::ifstream in(name_or_path);
    if (!in)
        throw TowerError("cannot open '" + name_or_path + "' (not a preset or readable file)");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_document(ss.str(), name_or_path);
}

Word random_lattice_word(const LevelShape& source, const std::vector<int>& mult,
                         std::mt19937_64& rng)
{
    std::vector<std::vector<int>> cnt(source.summands());
    for (int s = 0; s < source.summands(); ++s)
        cnt[s].assign(source.size(s) + 1, 0);
    Word w;
    std::vector<DiagonalLabel> avail;
    for (;;) {
        avail.clear();
        for (int s = 0; s < source.summands(); ++s)
            for (int p = 1; p <= source.size(s); ++p) {
                const int cap = p == 1 ? mult[s] : cnt[s][p - 1];
                if (cnt[s][p] < cap)
                    avail.push_back({s, p});
            }
        if (avail.empty())
            return w;
        std::uniform_int_distribution<size_t> d(0, avail.size() - 1);
        const auto l = avail[d(rng)];
        ++cnt[l.summand][l.pos];
        w.push_back(l);
    }
}

TowerSpec random_tuhf_tower(const std::vector<int>& sizes, std::mt19937_64& rng)
{
    std::vector<LevelShape> lv;
    std::vector<std::vector<Word>> ws;
    for (size_t n = 0; n < sizes.size(); ++n) {
        lv.push_back(LevelShape{sizes[n]});
        if (n > 0) {
            if (sizes[n] % sizes[n - 1] != 0)
                throw TowerError("random tower sizes must divide each other");
            ws.push_back({random_lattice_word(lv[n - 1], {sizes[n] / sizes[n - 1]}, rng)});
        }
    }
    return TowerSpec(std::move(lv), std::move(ws));
}

} // namespace limitalg
