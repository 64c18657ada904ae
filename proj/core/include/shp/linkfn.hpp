#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace shp {

/// Exact value produced by a link function.
///
/// Scalars are reduced rationals so that the half-integer values of the
/// symmetric circulant and doubly symmetric Hankel links at odd n compare
/// exactly. Pairs are ordered (first <= second). Power values are the exponent
/// pair (i, j) of a^i * b^j, tagged with the coprime bases (a, b); they are
/// never evaluated as integers.
class LinkValue {
 public:
  enum class Kind : std::uint8_t { Scalar, Pair, Power };

  static LinkValue scalar(std::int64_t v);
  static LinkValue ratio(std::int64_t num, std::int64_t den);
  static LinkValue pair(std::int64_t a, std::int64_t b);
  static LinkValue power(std::int64_t base_a, std::int64_t base_b, std::int64_t exp_a,
                         std::int64_t exp_b);

  Kind kind() const { return kind_; }
  bool is_integral() const { return kind_ == Kind::Scalar && y_ == 1; }

  // Scalar accessors.
  std::int64_t numerator() const { return x_; }
  std::int64_t denominator() const { return y_; }
  // Pair members, or the exponents of a Power value.
  std::int64_t first() const { return x_; }
  std::int64_t second() const { return y_; }
  std::int64_t base_a() const { return base_a_; }
  std::int64_t base_b() const { return base_b_; }

  std::string to_string() const;

  friend bool operator==(const LinkValue&, const LinkValue&) = default;
  friend std::strong_ordering operator<=>(const LinkValue& lhs, const LinkValue& rhs);

 private:
  LinkValue(Kind kind, std::int64_t x, std::int64_t y, std::int64_t a = 0, std::int64_t b = 0)
      : kind_(kind), x_(x), y_(y), base_a_(a), base_b_(b) {}

  Kind kind_;
  std::int64_t x_;
  std::int64_t y_;
  std::int64_t base_a_;
  std::int64_t base_b_;
};

struct LinkValueHash {
  std::size_t operator()(const LinkValue& v) const noexcept;
};

/// Map rho applied on top of a base link.
class Transform {
 public:
  enum class Kind : std::uint8_t { Square, CoprimePower, UserTable };

  /// t -> t^2 on scalar values.
  static Transform square();
  /// Pair(i, j) -> a^i b^j, kept as the exponent pair. Throws ArgumentError
  /// unless a, b are coprime positive integers.
  static Transform coprime_power(std::int64_t a, std::int64_t b);
  /// Arbitrary finite map. The table may be defined only on part of the
  /// value space; unmapped values raise EvaluationError at apply time.
  static Transform user_table(std::map<LinkValue, LinkValue> table, std::string label = "table");

  Kind kind() const { return kind_; }
  std::string name() const;

  /// Claimed injectivity. Square and CoprimePower are injective on their
  /// domains; a UserTable is injective iff no two keys share an image. Use
  /// is_injective_on_range to verify against an actual base link.
  bool injective() const;

  LinkValue apply(const LinkValue& v) const;

 private:
  Transform(Kind kind, std::int64_t a, std::int64_t b,
            std::shared_ptr<const std::map<LinkValue, LinkValue>> table, std::string label)
      : kind_(kind), a_(a), b_(b), table_(std::move(table)), label_(std::move(label)) {}

  Kind kind_;
  std::int64_t a_ = 0;
  std::int64_t b_ = 0;
  std::shared_ptr<const std::map<LinkValue, LinkValue>> table_;
  std::string label_;
};

enum class LinkKind : std::uint8_t {
  Wigner,
  Toeplitz,
  Hankel,
  SymmetricCirculant,
  ReverseCirculant,
  DoublySymmetricHankel,
  Composed,
};

/// Symmetric link function (i, j, n) -> LinkValue with 1-based indices.
class LinkFunction {
 public:
  /// Built-in link of the given kind; `Composed` is rejected.
  explicit LinkFunction(LinkKind kind);

  static LinkFunction wigner() { return LinkFunction(LinkKind::Wigner); }
  static LinkFunction toeplitz() { return LinkFunction(LinkKind::Toeplitz); }
  static LinkFunction hankel() { return LinkFunction(LinkKind::Hankel); }
  static LinkFunction symmetric_circulant() { return LinkFunction(LinkKind::SymmetricCirculant); }
  static LinkFunction reverse_circulant() { return LinkFunction(LinkKind::ReverseCirculant); }
  static LinkFunction doubly_symmetric_hankel() {
    return LinkFunction(LinkKind::DoublySymmetricHankel);
  }

  LinkKind kind() const { return kind_; }
  /// Only set for Composed links.
  const Transform* transform() const { return transform_.get(); }
  const LinkFunction* base() const { return base_.get(); }

  /// Identifier used by configs and the CLI, e.g. "square(toeplitz)".
  std::string name() const;

  /// Throws ArgumentError unless 1 <= i, j <= n.
  LinkValue eval(int i, int j, int n) const;

  friend LinkFunction compose(Transform transform, LinkFunction base);

 private:
  LinkFunction(std::shared_ptr<const Transform> t, std::shared_ptr<const LinkFunction> b)
      : kind_(LinkKind::Composed), transform_(std::move(t)), base_(std::move(b)) {}

  LinkKind kind_;
  std::shared_ptr<const Transform> transform_;
  std::shared_ptr<const LinkFunction> base_;
};

inline LinkValue eval_link(const LinkFunction& link, int i, int j, int n) {
  return link.eval(i, j, n);
}

/// rho o base.
LinkFunction compose(Transform transform, LinkFunction base);

/// The six built-in links in table order.
std::vector<LinkFunction> builtin_links();

/// Parses `wigner`, `toeplitz`, `hankel`, `symcirc`, `revcirc`, `dsymhankel`,
/// `square(<link>)` and `coprimepower(a,b,<link>)`. Throws ArgumentError
/// naming the offending token.
LinkFunction parse_link(std::string_view text);

struct LinkProfile {
  int delta = 0;        // max occurrences of one value in a single row
  std::int64_t kn = 0;  // number of distinct values
  std::int64_t alphan = 0;  // max occurrences of one value over the whole grid
  int n = 0;
};

/// Exhaustive scan of all n^2 cells. Requires n >= 2.
LinkProfile profile(const LinkFunction& link, int n);

/// Profile of the value pairs (L_X(i,j), L_Y(i,j)). The delta field carries
/// min(delta_X, delta_Y), the bound used for the product, not a row scan of
/// the pairs.
LinkProfile profile_product(const LinkFunction& x, const LinkFunction& y, int n);

/// True iff `transform` is defined and collision free on the values that
/// `base` takes at dimension n.
bool is_injective_on_range(const Transform& transform, const LinkFunction& base, int n);

/// The map rho with target = rho o base at dimension n, as a UserTable.
/// Throws ArgumentError if target is not a function of base at this n.
Transform induced_transform(const LinkFunction& base, const LinkFunction& target, int n);

/// Per-n delta over a ladder of dimensions; `growing` is set when delta at
/// the last rung exceeds delta at the first, a sign that Property B may fail.
struct DeltaTrend {
  std::vector<int> ladder;
  std::vector<int> deltas;
  bool growing = false;
};
DeltaTrend delta_trend(const LinkFunction& link, std::span<const int> ladder);

/// Dense integer relabelling of a link at fixed n.
///
/// Value ids follow the sorted order of the LinkValues, so id order is the
/// canonical draw order used by the ensemble. The per-row index returns, for
/// a row and a value id, the (0-based) columns carrying that value; by
/// Property B its size is at most delta.
class LinkTable {
 public:
  LinkTable(const LinkFunction& link, int n);

  int n() const { return n_; }
  const std::string& link_name() const { return name_; }
  std::int32_t value_count() const { return static_cast<std::int32_t>(values_.size()); }

  /// 0-based indices.
  std::int32_t id(int i, int j) const { return ids_[static_cast<std::size_t>(i) * n_ + j]; }
  const LinkValue& value(std::int32_t id) const { return values_[id]; }
  std::span<const std::int32_t> ids() const { return ids_; }

  /// Columns c in row `row` (0-based) with id(row, c) == value_id.
  std::span<const std::int32_t> columns(int row, std::int32_t value_id) const;

  int max_row_multiplicity() const { return delta_; }
  std::int64_t max_multiplicity() const { return alphan_; }

 private:
  int n_;
  std::string name_;
  std::vector<LinkValue> values_;
  std::vector<std::int32_t> ids_;
  // Per row: value ids sorted, with matching columns, as flat CSR arrays.
  std::vector<std::int32_t> row_ids_;
  std::vector<std::int32_t> row_cols_;
  int delta_ = 0;
  std::int64_t alphan_ = 0;
};

}  // namespace shp
