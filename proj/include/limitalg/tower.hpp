#pragma once

// Finite stages of strongly maximal TAF/TUHF towers. A level is a direct sum of
// upper-triangular blocks T_{k_1} + ... + T_{k_r}; a step between consecutive
// levels is a regular embedding given by diagonal labeling words. Levels are
// 0-based, summands are 0-based, matrix positions are 1-based.

#include "limitalg/scalar.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

namespace limitalg {

/// Raised for malformed input (bad shapes, invalid words, out-of-range units).
class TowerError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct LevelShape {
    std::vector<int> sizes;

    LevelShape() = default;
    LevelShape(std::initializer_list<int> s) : sizes(s) {}
    explicit LevelShape(std::vector<int> s) : sizes(std::move(s)) {}

    int summands() const { return static_cast<int>(sizes.size()); }
    int size(int summand) const { return sizes.at(summand); }
    /// Dimension of the triangular algebra: sum of k(k+1)/2.
    int64_t triangular_dim() const;
    void validate() const;

    friend bool operator==(const LevelShape&, const LevelShape&) = default;
};

struct DiagonalLabel {
    int summand = 0;
    int pos = 1;

    friend auto operator<=>(const DiagonalLabel&, const DiagonalLabel&) = default;
};

using Word = std::vector<DiagonalLabel>;

enum class EmbeddingIssueKind { Shape, Range, Count, Lattice, Injective, Unital };

const char* to_string(EmbeddingIssueKind k);

struct EmbeddingIssue {
    EmbeddingIssueKind kind;
    int target = -1;
    int source = -1;
    int pos = -1;          // lower position of the offending pair (Lattice/Count)
    int other_pos = -1;    // higher position (Lattice/Count)
    int prefix_length = 0; // Lattice: length of the shortest violating prefix
    std::string message;
};

struct ValidationReport {
    std::vector<EmbeddingIssue> issues;
    bool ok() const { return issues.empty(); }
};

ValidationReport validate_embedding(const LevelShape& source, const LevelShape& target,
                                    const std::vector<Word>& words);

/// One image unit of a step: block `summand` of the target level.
struct UnitCoord {
    int summand = 0;
    int row = 1;
    int col = 1;

    friend auto operator<=>(const UnitCoord&, const UnitCoord&) = default;
};

/// A validated single-step embedding with precomputed occurrence tables.
class Embedding {
public:
    Embedding(LevelShape source, LevelShape target, std::vector<Word> words);

    const LevelShape& source() const { return source_; }
    const LevelShape& target() const { return target_; }
    const std::vector<Word>& words() const { return words_; }

    int multiplicity(int target, int source) const { return mult_[target][source]; }
    /// Positions (1-based, increasing) of label (source, pos) in word_target.
    const std::vector<int>& occurrences(int target, int source, int pos) const
    {
        return occ_[target][source][pos - 1];
    }

    /// Image of e_{row,col} in source block `summand`: the r-th occurrence of
    /// row is paired with the r-th occurrence of col. Canonical order.
    std::vector<UnitCoord> image(int summand, int row, int col) const;

    /// True when source block s is carried onto exactly one target block by the
    /// identity word; returns that block.
    std::optional<int> identity_carry(int source) const;

private:
    LevelShape source_;
    LevelShape target_;
    std::vector<Word> words_;
    std::vector<std::vector<int>> mult_;
    std::vector<std::vector<std::vector<std::vector<int>>>> occ_;
};

/// How a tower continues past its last explicit level.
enum class Continuation {
    None,   // finite tower
    Repeat, // the last step's segment pattern repeats forever
    Spawn,  // generators re-spawn the last step's new blocks; other blocks carried
};

/// One segment of a repeatable word: either a run (s,1)(s,2)...(s,k) when
/// multiplicity is 1, or (s,1)^j (s,2)^j ... (s,k)^j for multiplicity j.
struct Segment {
    int source = 0;
    int multiplicity = 1;

    friend bool operator==(const Segment&, const Segment&) = default;
};

/// Splits a word into segments over `source`; nullopt if not segment-shaped or
/// ambiguous (a size-1 source block appearing in the word).
std::optional<std::vector<Segment>> segment_pattern(const LevelShape& source, const Word& word);

Word render_segments(const LevelShape& source, const std::vector<Segment>& segments);

namespace detail {
struct TowerCache;
}

class TowerSpec {
public:
    TowerSpec(std::vector<LevelShape> levels, std::vector<std::vector<Word>> embeddings,
              Continuation continuation = Continuation::None, int spawn_generators = 0,
              std::string name = {});

    const std::string& name() const { return name_; }
    Continuation continuation() const { return continuation_; }
    int spawn_generators() const { return spawn_generators_; }
    bool stationary() const { return continuation_ == Continuation::Repeat; }

    /// Number of levels written out explicitly.
    int explicit_levels() const { return static_cast<int>(levels_.size()); }
    /// First level from which every step follows the continuation rule.
    int regime_start() const { return explicit_levels() - 2; }
    bool has_level(int n) const;
    /// Highest level, or nullopt for infinite towers.
    std::optional<int> last_level() const;

    const LevelShape& shape(int n) const;
    /// Embedding of level n into level n+1.
    const Embedding& step(int n) const;

    /// Segment patterns of the repeating step (Repeat towers only).
    const std::vector<std::vector<Segment>>& repeat_pattern() const { return pattern_; }

    /// Single-block levels everywhere (checked on explicit levels and the rule).
    bool is_tuhf() const;

    const std::vector<LevelShape>& explicit_shapes() const { return levels_; }
    const std::vector<std::vector<Word>>& explicit_words() const { return words_; }

private:
    void check_level(int n) const;

    std::vector<LevelShape> levels_;
    std::vector<std::vector<Word>> words_;
    Continuation continuation_;
    int spawn_generators_;
    std::string name_;
    std::vector<std::vector<Segment>> pattern_;
    std::shared_ptr<detail::TowerCache> cache_;
};

struct MatrixUnit {
    int level = 0;
    int summand = 0;
    int row = 1;
    int col = 1;

    bool diagonal() const { return row == col; }
    UnitCoord coord() const { return {summand, row, col}; }
    friend auto operator<=>(const MatrixUnit&, const MatrixUnit&) = default;
};

std::string to_string(const MatrixUnit& u);

/// Checks the unit exists and is upper-triangular in the tower.
void validate_unit(const TowerSpec& tower, const MatrixUnit& u);

/// Sum of matrix units at one level with pairwise disjoint rows and columns
/// inside each block.
struct MatrixUnitSum {
    int level = 0;
    std::vector<UnitCoord> units; // canonical order

    bool empty() const { return units.empty(); }
    std::vector<MatrixUnit> as_units() const;
};

MatrixUnitSum embed_unit(const TowerSpec& tower, const MatrixUnit& e, int target_level);
MatrixUnitSum embed_sum(const TowerSpec& tower, const MatrixUnitSum& e, int target_level);

struct OrderViolation {
    int diagonal = 0; // i
    int first = 0;    // i_1
    int last = 0;     // i_{m/n}
    bool first_ok = true;
    bool last_ok = true;
};

struct EmbeddingOrderReport {
    int level = 0;
    int source_size = 0;
    int target_size = 0;
    std::vector<OrderViolation> entries; // one per diagonal unit
    int violations = 0;
};

/// Checks i_1 <= (i-1)m/n + 1 and i_{m/n} >= i m/n for every diagonal unit of
/// a single-block step.
EmbeddingOrderReport verify_embedding_order(const Embedding& step, int level = 0);
EmbeddingOrderReport verify_embedding_order(const TowerSpec& tower, int level);

/// Exact element of one level: coefficients keyed by (summand,row,col).
class Element {
public:
    Element() = default;
    Element(int level, LevelShape shape) : level_(level), shape_(std::move(shape)) {}

    static Element unit(const TowerSpec& tower, const MatrixUnit& u, Rational c = 1);
    static Element from_sum(const TowerSpec& tower, const MatrixUnitSum& s);

    int level() const { return level_; }
    const LevelShape& shape() const { return shape_; }
    const std::map<UnitCoord, Rational>& coeffs() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }

    Rational coeff(const UnitCoord& c) const;
    void set(const UnitCoord& c, const Rational& v);
    void add_to(const UnitCoord& c, const Rational& v);

    friend bool operator==(const Element& a, const Element& b)
    {
        return a.level_ == b.level_ && a.coeffs_ == b.coeffs_;
    }

private:
    int level_ = 0;
    LevelShape shape_;
    std::map<UnitCoord, Rational> coeffs_;
};

Element add(const Element& a, const Element& b);
Element scale(const Element& a, const Rational& c);
Element multiply(const Element& a, const Element& b);
Element power(const Element& a, unsigned n);
/// Embeds an element to a higher level by linearity.
Element embed_element(const TowerSpec& tower, const Element& a, int target_level);

struct Decomposition {
    MatrixUnitSum units;
    struct Extremal {
        int summand;
        int max_row; // I
        int min_col; // J
    };
    std::vector<Extremal> extremal; // one per block the image meets
};

Decomposition decompose(const TowerSpec& tower, const MatrixUnit& e, int level);

} // namespace limitalg
