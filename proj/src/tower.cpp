#include "limitalg/tower.hpp"

#include <algorithm>
#include <deque>
#include <mutex>
#include <sstream>

namespace limitalg {

int64_t LevelShape::triangular_dim() const
{
    int64_t d = 0;
    for (int k : sizes)
        d += int64_t(k) * (k + 1) / 2;
    return d;
}

void LevelShape::validate() const
{
    if (sizes.empty())
        throw TowerError("level shape must have at least one block");
    for (int k : sizes)
        if (k < 1)
            throw TowerError("block sizes must be positive");
}

const char* to_string(EmbeddingIssueKind k)
{
    switch (k) {
    case EmbeddingIssueKind::Shape: return "SHAPE";
    case EmbeddingIssueKind::Range: return "RANGE";
    case EmbeddingIssueKind::Count: return "COUNT";
    case EmbeddingIssueKind::Lattice: return "LATTICE";
    case EmbeddingIssueKind::Injective: return "INJECTIVE";
    case EmbeddingIssueKind::Unital: return "UNITAL";
    }
    return "?";
}

ValidationReport validate_embedding(const LevelShape& source, const LevelShape& target,
                                    const std::vector<Word>& words)
{
    ValidationReport rep;
    auto issue = [&](EmbeddingIssue i) { rep.issues.push_back(std::move(i)); };

    if (words.size() != target.sizes.size()) {
        issue({EmbeddingIssueKind::Shape, -1, -1, -1, -1, 0,
               "expected " + std::to_string(target.sizes.size()) + " target words, got " +
                   std::to_string(words.size())});
        return rep;
    }
    bool range_ok = true;
    for (int t = 0; t < target.summands(); ++t) {
        if (static_cast<int>(words[t].size()) != target.size(t))
            issue({EmbeddingIssueKind::Shape, t, -1, -1, -1, 0,
                   "word length " + std::to_string(words[t].size()) + " differs from block size " +
                       std::to_string(target.size(t))});
        for (const auto& l : words[t]) {
            if (l.summand < 0 || l.summand >= source.summands() || l.pos < 1 ||
                l.pos > source.size(l.summand)) {
                range_ok = false;
                issue({EmbeddingIssueKind::Range, t, l.summand, l.pos, -1, 0,
                       "label (" + std::to_string(l.summand) + "," + std::to_string(l.pos) +
                           ") outside the source level"});
            }
        }
    }
    if (!range_ok)
        return rep;

    std::vector<int> total(source.summands(), 0);
    for (int t = 0; t < target.summands(); ++t) {
        // counts[s][p]
        std::vector<std::vector<int>> counts(source.summands());
        for (int s = 0; s < source.summands(); ++s)
            counts[s].assign(source.size(s) + 1, 0);
        std::vector<bool> lattice_reported(source.summands(), false);
        for (size_t i = 0; i < words[t].size(); ++i) {
            const auto& l = words[t][i];
            ++counts[l.summand][l.pos];
            if (l.pos > 1 && !lattice_reported[l.summand] &&
                counts[l.summand][l.pos] > counts[l.summand][l.pos - 1]) {
                lattice_reported[l.summand] = true;
                issue({EmbeddingIssueKind::Lattice, t, l.summand, l.pos - 1, l.pos,
                       static_cast<int>(i + 1),
                       "prefix of length " + std::to_string(i + 1) + " has more (" +
                           std::to_string(l.summand) + "," + std::to_string(l.pos) +
                           ") than (" + std::to_string(l.summand) + "," +
                           std::to_string(l.pos - 1) + ")"});
            }
        }
        int64_t covered = 0;
        for (int s = 0; s < source.summands(); ++s) {
            const int m = counts[s][1];
            for (int p = 2; p <= source.size(s); ++p)
                if (counts[s][p] != m) {
                    issue({EmbeddingIssueKind::Count, t, s, 1, p, 0,
                           "position " + std::to_string(p) + " occurs " +
                               std::to_string(counts[s][p]) + " times, position 1 occurs " +
                               std::to_string(m)});
                    break;
                }
            total[s] += m;
            covered += int64_t(m) * source.size(s);
        }
        if (covered != target.size(t))
            issue({EmbeddingIssueKind::Unital, t, -1, -1, -1, 0,
                   "multiplicities cover " + std::to_string(covered) + " of " +
                       std::to_string(target.size(t)) + " positions"});
    }
    for (int s = 0; s < source.summands(); ++s)
        if (total[s] < 1)
            issue({EmbeddingIssueKind::Injective, -1, s, -1, -1, 0,
                   "source block " + std::to_string(s) + " is not embedded"});
    return rep;
}

Embedding::Embedding(LevelShape source, LevelShape target, std::vector<Word> words)
    : source_(std::move(source)), target_(std::move(target)), words_(std::move(words))
{
    source_.validate();
    target_.validate();
    auto rep = validate_embedding(source_, target_, words_);
    if (!rep.ok()) {
        const auto& i = rep.issues.front();
        std::string where = i.target >= 0 ? " (target " + std::to_string(i.target) + ")" : "";
        throw TowerError(std::string(to_string(i.kind)) + " violation" + where + ": " + i.message);
    }
    const int nt = target_.summands(), ns = source_.summands();
    mult_.assign(nt, std::vector<int>(ns, 0));
    occ_.resize(nt);
    for (int t = 0; t < nt; ++t) {
        occ_[t].resize(ns);
        for (int s = 0; s < ns; ++s)
            occ_[t][s].resize(source_.size(s));
        for (size_t i = 0; i < words_[t].size(); ++i) {
            const auto& l = words_[t][i];
            occ_[t][l.summand][l.pos - 1].push_back(static_cast<int>(i + 1));
        }
        for (int s = 0; s < ns; ++s)
            mult_[t][s] = static_cast<int>(occ_[t][s][0].size());
    }
}

std::vector<UnitCoord> Embedding::image(int summand, int row, int col) const
{
    std::vector<UnitCoord> out;
    for (int t = 0; t < target_.summands(); ++t) {
        const auto& rows = occ_[t][summand][row - 1];
        const auto& cols = occ_[t][summand][col - 1];
        for (size_t r = 0; r < rows.size(); ++r)
            out.push_back({t, rows[r], cols[r]});
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::optional<int> Embedding::identity_carry(int source) const
{
    std::optional<int> found;
    for (int t = 0; t < target_.summands(); ++t) {
        const int m = mult_[t][source];
        if (m == 0)
            continue;
        if (m != 1 || found || target_.size(t) != source_.size(source))
            return std::nullopt;
        for (int p = 1; p <= source_.size(source); ++p)
            if (words_[t][p - 1] != DiagonalLabel{source, p})
                return std::nullopt;
        found = t;
    }
    return found;
}

std::optional<std::vector<Segment>> segment_pattern(const LevelShape& source, const Word& word)
{
    std::vector<Segment> segs;
    size_t i = 0;
    while (i < word.size()) {
        const auto l = word[i];
        if (l.pos != 1)
            return std::nullopt;
        const int s = l.summand;
        const int k = source.size(s);
        if (k == 1)
            return std::nullopt; // run and refinement are indistinguishable
        int j = 0;
        while (i + j < word.size() && word[i + j] == DiagonalLabel{s, 1})
            ++j;
        if (i + size_t(j) * k > word.size())
            return std::nullopt;
        for (int p = 1; p <= k; ++p)
            for (int c = 0; c < j; ++c)
                if (word[i + size_t(p - 1) * j + c] != DiagonalLabel{s, p})
                    return std::nullopt;
        segs.push_back({s, j});
        i += size_t(j) * k;
    }
    return segs;
}

Word render_segments(const LevelShape& source, const std::vector<Segment>& segments)
{
    Word w;
    for (const auto& seg : segments)
        for (int p = 1; p <= source.size(seg.source); ++p)
            for (int c = 0; c < seg.multiplicity; ++c)
                w.push_back({seg.source, p});
    return w;
}

namespace detail {

struct TowerCache {
    std::mutex mu;
    std::deque<LevelShape> shapes;
    std::deque<Embedding> steps;
};

} // namespace detail

TowerSpec::TowerSpec(std::vector<LevelShape> levels, std::vector<std::vector<Word>> embeddings,
                     Continuation continuation, int spawn_generators, std::string name)
    : levels_(std::move(levels)), words_(std::move(embeddings)), continuation_(continuation),
      spawn_generators_(spawn_generators), name_(std::move(name)),
      cache_(std::make_shared<detail::TowerCache>())
{
    if (levels_.empty())
        throw TowerError("tower needs at least one level");
    if (words_.size() + 1 != levels_.size())
        throw TowerError("tower with " + std::to_string(levels_.size()) + " levels needs " +
                         std::to_string(levels_.size() - 1) + " embeddings");
    for (const auto& l : levels_)
        l.validate();
    for (size_t n = 0; n < words_.size(); ++n) {
        try {
            cache_->steps.emplace_back(levels_[n], levels_[n + 1], words_[n]);
        } catch (const TowerError& e) {
            throw TowerError("embedding " + std::to_string(n) + " -> " + std::to_string(n + 1) +
                             ": " + e.what());
        }
    }
    cache_->shapes.assign(levels_.begin(), levels_.end());

    if (continuation_ == Continuation::None)
        return;
    if (words_.empty())
        throw TowerError("repeat/spawn needs at least one explicit embedding");
    const LevelShape& src = levels_[levels_.size() - 2];
    const LevelShape& dst = levels_.back();
    const auto& tmpl = words_.back();

    if (continuation_ == Continuation::Repeat) {
        if (src.summands() != dst.summands())
            throw TowerError("shape: repeat needs the same number of blocks on both sides");
        for (const auto& w : tmpl) {
            auto segs = segment_pattern(src, w);
            if (!segs)
                throw TowerError("shape: repeated word is not a concatenation of runs and "
                                 "refinements (or uses a size-1 block)");
            pattern_.push_back(*segs);
        }
        // the pattern must reproduce the template's shape
        for (int t = 0; t < dst.summands(); ++t)
            if (render_segments(src, pattern_[t]) != tmpl[t])
                throw TowerError("shape: repeated word does not match its segment pattern");
        return;
    }

    // Spawn
    const int g = spawn_generators_;
    if (g < 1 || g > src.summands())
        throw TowerError("shape: spawn generator count out of range");
    for (int s = 0; s < g; ++s)
        if (dst.size(s) != src.size(s))
            throw TowerError("shape: spawn generators must keep their block size");
    int fresh = 0;
    while (fresh < dst.summands()) {
        bool only_gen = std::all_of(tmpl[fresh].begin(), tmpl[fresh].end(),
                                    [g](const DiagonalLabel& l) { return l.summand < g; });
        if (!only_gen)
            break;
        ++fresh;
    }
    if (fresh < g)
        throw TowerError("shape: spawn generator targets must be fed by generators only");
    if (fresh + (src.summands() - g) != dst.summands())
        throw TowerError("shape: spawn must carry every non-generator block");
    for (int s = g; s < src.summands(); ++s) {
        auto t = cache_->steps.back().identity_carry(s);
        if (!t || *t != fresh + (s - g))
            throw TowerError("shape: spawn must carry block " + std::to_string(s) +
                             " by the identity word");
    }
}

bool TowerSpec::has_level(int n) const
{
    if (n < 0)
        return false;
    return continuation_ != Continuation::None || n < explicit_levels();
}

std::optional<int> TowerSpec::last_level() const
{
    if (continuation_ != Continuation::None)
        return std::nullopt;
    return explicit_levels() - 1;
}

void TowerSpec::check_level(int n) const
{
    if (!has_level(n))
        throw TowerError("level " + std::to_string(n) + " is outside the tower");
}

const LevelShape& TowerSpec::shape(int n) const
{
    check_level(n);
    if (n < explicit_levels())
        return levels_[n];
    step(n - 1);
    std::lock_guard<std::mutex> lock(cache_->mu);
    return cache_->shapes[n];
}

const Embedding& TowerSpec::step(int n) const
{
    check_level(n);
    check_level(n + 1);
    std::lock_guard<std::mutex> lock(cache_->mu);
    auto& c = *cache_;
    while (static_cast<int>(c.steps.size()) <= n) {
        const int m = static_cast<int>(c.steps.size()); // build m -> m+1
        const LevelShape& src = c.shapes[m];
        std::vector<Word> words;
        LevelShape dst;
        if (continuation_ == Continuation::Repeat) {
            for (const auto& segs : pattern_) {
                words.push_back(render_segments(src, segs));
                dst.sizes.push_back(static_cast<int>(words.back().size()));
            }
        } else {
            const auto& tmpl = words_.back();
            const int g = spawn_generators_;
            const int fresh = static_cast<int>(tmpl.size()) -
                              (levels_[levels_.size() - 2].summands() - g);
            for (int t = 0; t < fresh; ++t) {
                words.push_back(tmpl[t]);
                dst.sizes.push_back(static_cast<int>(tmpl[t].size()));
            }
            for (int s = g; s < src.summands(); ++s) {
                Word w;
                for (int p = 1; p <= src.size(s); ++p)
                    w.push_back({s, p});
                words.push_back(std::move(w));
                dst.sizes.push_back(src.size(s));
            }
        }
        c.steps.emplace_back(src, dst, std::move(words));
        c.shapes.push_back(dst);
    }
    return c.steps[n];
}

bool TowerSpec::is_tuhf() const
{
    for (const auto& l : levels_)
        if (l.summands() != 1)
            return false;
    return continuation_ != Continuation::Spawn;
}

std::string to_string(const MatrixUnit& u)
{
    std::ostringstream os;
    os << u.level << ':' << u.summand << ':' << u.row << ':' << u.col;
    return os.str();
}

void validate_unit(const TowerSpec& tower, const MatrixUnit& u)
{
    if (!tower.has_level(u.level))
        throw TowerError("unit " + to_string(u) + ": level outside the tower");
    const auto& sh = tower.shape(u.level);
    if (u.summand < 0 || u.summand >= sh.summands())
        throw TowerError("unit " + to_string(u) + ": no such block");
    const int k = sh.size(u.summand);
    if (u.row < 1 || u.col > k || u.row > u.col)
        throw TowerError("unit " + to_string(u) + ": needs 1 <= row <= col <= " +
                         std::to_string(k));
}

std::vector<MatrixUnit> MatrixUnitSum::as_units() const
{
    std::vector<MatrixUnit> out;
    out.reserve(units.size());
    for (const auto& c : units)
        out.push_back({level, c.summand, c.row, c.col});
    return out;
}

MatrixUnitSum embed_sum(const TowerSpec& tower, const MatrixUnitSum& e, int target_level)
{
    if (target_level < e.level)
        throw TowerError("cannot embed level " + std::to_string(e.level) + " into lower level " +
                         std::to_string(target_level));
    if (!tower.has_level(target_level))
        throw TowerError("level " + std::to_string(target_level) + " is outside the tower");
    std::vector<UnitCoord> cur = e.units;
    for (int n = e.level; n < target_level; ++n) {
        const auto& st = tower.step(n);
        std::vector<UnitCoord> next;
        for (const auto& u : cur) {
            auto img = st.image(u.summand, u.row, u.col);
            next.insert(next.end(), img.begin(), img.end());
        }
        std::sort(next.begin(), next.end());
        cur = std::move(next);
    }
    return {target_level, std::move(cur)};
}

MatrixUnitSum embed_unit(const TowerSpec& tower, const MatrixUnit& e, int target_level)
{
    validate_unit(tower, e);
    return embed_sum(tower, {e.level, {e.coord()}}, target_level);
}

EmbeddingOrderReport verify_embedding_order(const Embedding& st, int level)
{
    if (st.source().summands() != 1 || st.target().summands() != 1)
        throw TowerError("embedding order audit needs a single-block (TUHF) step");
    EmbeddingOrderReport rep;
    rep.level = level;
    const int n = st.source().size(0), m = st.target().size(0);
    rep.source_size = n;
    rep.target_size = m;
    const int ratio = m / n; // unital: m = ratio * n
    for (int i = 1; i <= n; ++i) {
        const auto& occ = st.occurrences(0, 0, i);
        OrderViolation v;
        v.diagonal = i;
        v.first = occ.front();
        v.last = occ.back();
        v.first_ok = v.first <= (i - 1) * ratio + 1;
        v.last_ok = v.last >= i * ratio;
        if (!v.first_ok || !v.last_ok)
            ++rep.violations;
        rep.entries.push_back(v);
    }
    return rep;
}

EmbeddingOrderReport verify_embedding_order(const TowerSpec& tower, int level)
{
    return verify_embedding_order(tower.step(level), level);
}

Element Element::unit(const TowerSpec& tower, const MatrixUnit& u, Rational c)
{
    validate_unit(tower, u);
    Element e(u.level, tower.shape(u.level));
    e.set(u.coord(), c);
    return e;
}

Element Element::from_sum(const TowerSpec& tower, const MatrixUnitSum& s)
{
    Element e(s.level, tower.shape(s.level));
    for (const auto& c : s.units)
        e.add_to(c, 1);
    return e;
}

Rational Element::coeff(const UnitCoord& c) const
{
    auto it = coeffs_.find(c);
    return it == coeffs_.end() ? Rational(0) : it->second;
}

void Element::set(const UnitCoord& c, const Rational& v)
{
    if (c.summand < 0 || c.summand >= shape_.summands() || c.row < 1 || c.row > c.col ||
        c.col > shape_.size(c.summand))
        throw TowerError("coordinate outside the upper-triangular level");
    if (sgn(v) == 0)
        coeffs_.erase(c);
    else
        coeffs_[c] = v;
}

void Element::add_to(const UnitCoord& c, const Rational& v)
{
    set(c, coeff(c) + v);
}

namespace {

void check_same_level(const Element& a, const Element& b)
{
    if (a.level() != b.level() || !(a.shape() == b.shape()))
        throw TowerError("level mismatch: " + std::to_string(a.level()) + " vs " +
                         std::to_string(b.level()));
}

} // namespace

Element add(const Element& a, const Element& b)
{
    check_same_level(a, b);
    Element r = a;
    for (const auto& [c, v] : b.coeffs())
        r.add_to(c, v);
    return r;
}

Element scale(const Element& a, const Rational& c)
{
    Element r(a.level(), a.shape());
    if (sgn(c) == 0)
        return r;
    for (const auto& [k, v] : a.coeffs())
        r.set(k, v * c);
    return r;
}

Element multiply(const Element& a, const Element& b)
{
    check_same_level(a, b);
    // index b by (summand,row)
    std::map<std::pair<int, int>, std::vector<std::pair<int, Rational>>> by_row;
    for (const auto& [c, v] : b.coeffs())
        by_row[{c.summand, c.row}].push_back({c.col, v});
    std::map<UnitCoord, Rational> acc;
    for (const auto& [c, v] : a.coeffs()) {
        auto it = by_row.find({c.summand, c.col});
        if (it == by_row.end())
            continue;
        for (const auto& [col, w] : it->second)
            acc[{c.summand, c.row, col}] += v * w;
    }
    Element r(a.level(), a.shape());
    for (const auto& [c, v] : acc)
        r.set(c, v);
    return r;
}

Element power(const Element& a, unsigned n)
{
    if (n == 0)
        throw TowerError("power 0 is not defined for non-unital elements");
    Element result;
    bool have = false;
    Element base = a;
    while (n) {
        if (n & 1u) {
            result = have ? multiply(result, base) : base;
            have = true;
        }
        n >>= 1u;
        if (n)
            base = multiply(base, base);
    }
    return result;
}

Element embed_element(const TowerSpec& tower, const Element& a, int target_level)
{
    Element r(target_level, tower.shape(target_level));
    for (const auto& [c, v] : a.coeffs()) {
        auto img = embed_sum(tower, {a.level(), {c}}, target_level);
        for (const auto& u : img.units)
            r.add_to(u, v);
    }
    return r;
}

Decomposition decompose(const TowerSpec& tower, const MatrixUnit& e, int level)
{
    Decomposition d;
    d.units = embed_unit(tower, e, level);
    for (const auto& u : d.units.units) {
        if (d.extremal.empty() || d.extremal.back().summand != u.summand)
            d.extremal.push_back({u.summand, u.row, u.col});
        auto& x = d.extremal.back();
        x.max_row = std::max(x.max_row, u.row);
        x.min_col = std::min(x.min_col, u.col);
    }
    return d;
}

} // namespace limitalg
