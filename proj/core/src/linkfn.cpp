#include "shp/linkfn.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdlib>
#include <numeric>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "shp/errors.hpp"

namespace shp {

namespace {

__extension__ using i128 = __int128;

std::int64_t sign_of(std::int64_t v) { return (v > 0) - (v < 0); }

std::string kind_name(LinkKind kind) {
  switch (kind) {
    case LinkKind::Wigner: return "wigner";
    case LinkKind::Toeplitz: return "toeplitz";
    case LinkKind::Hankel: return "hankel";
    case LinkKind::SymmetricCirculant: return "symcirc";
    case LinkKind::ReverseCirculant: return "revcirc";
    case LinkKind::DoublySymmetricHankel: return "dsymhankel";
    case LinkKind::Composed: return "composed";
  }
  return "unknown";
}

// n/2 - |n/2 - t| evaluated as (n - |n - 2t|) / 2.
LinkValue folded_half(std::int64_t t, std::int64_t n) {
  return LinkValue::ratio(n - std::llabs(n - 2 * t), 2);
}

}  // namespace

LinkValue LinkValue::scalar(std::int64_t v) {
  if (v < 0) throw ArgumentError("scalar link value must be non-negative, got " + std::to_string(v));
  return LinkValue(Kind::Scalar, v, 1);
}

LinkValue LinkValue::ratio(std::int64_t num, std::int64_t den) {
  if (den == 0) throw ArgumentError("link value with zero denominator");
  if (sign_of(num) * sign_of(den) < 0) {
    throw ArgumentError("scalar link value must be non-negative");
  }
  num = std::llabs(num);
  den = std::llabs(den);
  const std::int64_t g = std::gcd(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  if (num == 0) den = 1;
  return LinkValue(Kind::Scalar, num, den);
}

LinkValue LinkValue::pair(std::int64_t a, std::int64_t b) {
  if (a < 1 || b < 1) throw ArgumentError("pair link values must be positive");
  if (a > b) std::swap(a, b);
  return LinkValue(Kind::Pair, a, b);
}

LinkValue LinkValue::power(std::int64_t base_a, std::int64_t base_b, std::int64_t exp_a,
                           std::int64_t exp_b) {
  return LinkValue(Kind::Power, exp_a, exp_b, base_a, base_b);
}

std::string LinkValue::to_string() const {
  switch (kind_) {
    case Kind::Scalar:
      if (y_ == 1) return std::to_string(x_);
      return std::to_string(x_) + "/" + std::to_string(y_);
    case Kind::Pair:
      return "(" + std::to_string(x_) + "," + std::to_string(y_) + ")";
    case Kind::Power:
      return std::to_string(base_a_) + "^" + std::to_string(x_) + "*" + std::to_string(base_b_) +
             "^" + std::to_string(y_);
  }
  return "?";
}

std::strong_ordering operator<=>(const LinkValue& lhs, const LinkValue& rhs) {
  if (lhs.kind_ != rhs.kind_) return lhs.kind_ <=> rhs.kind_;
  if (lhs.kind_ == LinkValue::Kind::Scalar) {
    return static_cast<i128>(lhs.x_) * rhs.y_ <=> static_cast<i128>(rhs.x_) * lhs.y_;
  }
  if (auto c = lhs.base_a_ <=> rhs.base_a_; c != 0) return c;
  if (auto c = lhs.base_b_ <=> rhs.base_b_; c != 0) return c;
  if (auto c = lhs.x_ <=> rhs.x_; c != 0) return c;
  return lhs.y_ <=> rhs.y_;
}

std::size_t LinkValueHash::operator()(const LinkValue& v) const noexcept {
  std::uint64_t h = static_cast<std::uint64_t>(v.kind()) * 0x9e3779b97f4a7c15ULL;
  auto mix = [&h](std::int64_t x) {
    h ^= static_cast<std::uint64_t>(x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  };
  mix(v.first());
  mix(v.second());
  mix(v.base_a());
  mix(v.base_b());
  return static_cast<std::size_t>(h);
}

// --- Transform ---------------------------------------------------------------

Transform Transform::square() { return Transform(Kind::Square, 0, 0, nullptr, "square"); }

Transform Transform::coprime_power(std::int64_t a, std::int64_t b) {
  if (a < 1 || b < 1 || std::gcd(a, b) != 1 || (a == 1 && b == 1)) {
    throw ArgumentError("coprimepower needs coprime positive bases, got (" + std::to_string(a) +
                        "," + std::to_string(b) + ")");
  }
  return Transform(Kind::CoprimePower, a, b, nullptr, "coprimepower");
}

Transform Transform::user_table(std::map<LinkValue, LinkValue> table, std::string label) {
  return Transform(Kind::UserTable, 0, 0,
                   std::make_shared<const std::map<LinkValue, LinkValue>>(std::move(table)),
                   std::move(label));
}

std::string Transform::name() const {
  if (kind_ == Kind::CoprimePower) {
    return "coprimepower(" + std::to_string(a_) + "," + std::to_string(b_) + ")";
  }
  return label_;
}

bool Transform::injective() const {
  if (kind_ != Kind::UserTable) return true;
  std::set<LinkValue> images;
  for (const auto& [key, image] : *table_) {
    if (!images.insert(image).second) return false;
  }
  return true;
}

LinkValue Transform::apply(const LinkValue& v) const {
  switch (kind_) {
    case Kind::Square:
      if (v.kind() != LinkValue::Kind::Scalar) {
        throw EvaluationError("square is undefined on link value " + v.to_string());
      }
      return LinkValue::ratio(v.numerator() * v.numerator(), v.denominator() * v.denominator());
    case Kind::CoprimePower:
      // 1 <= i <= j always holds for a Pair, so a^1 b^1 is the smallest image
      // and exponent pairs are positive.
      if (v.kind() != LinkValue::Kind::Pair) {
        throw EvaluationError(name() + " is undefined on link value " + v.to_string());
      }
      return LinkValue::power(a_, b_, v.first(), v.second());
    case Kind::UserTable: {
      auto it = table_->find(v);
      if (it == table_->end()) {
        throw EvaluationError(label_ + " has no entry for link value " + v.to_string());
      }
      return it->second;
    }
  }
  throw EvaluationError("unknown transform");
}

// --- LinkFunction --------------------------------------------------------------

LinkFunction::LinkFunction(LinkKind kind) : kind_(kind) {
  if (kind == LinkKind::Composed) {
    throw ArgumentError("composed links are built with compose()");
  }
}

LinkFunction compose(Transform transform, LinkFunction base) {
  return LinkFunction(std::make_shared<const Transform>(std::move(transform)),
                      std::make_shared<const LinkFunction>(std::move(base)));
}

std::string LinkFunction::name() const {
  if (kind_ != LinkKind::Composed) return kind_name(kind_);
  if (transform_->kind() == Transform::Kind::CoprimePower) {
    std::string t = transform_->name();
    t.pop_back();  // drop ')'
    return t + "," + base_->name() + ")";
  }
  return transform_->name() + "(" + base_->name() + ")";
}

LinkValue LinkFunction::eval(int i, int j, int n) const {
  if (n < 1 || i < 1 || j < 1 || i > n || j > n) {
    throw ArgumentError("link index (" + std::to_string(i) + "," + std::to_string(j) +
                        ") out of range for n=" + std::to_string(n));
  }
  const std::int64_t diff = std::llabs(static_cast<std::int64_t>(i) - j);
  const std::int64_t sum = static_cast<std::int64_t>(i) + j;
  switch (kind_) {
    case LinkKind::Wigner: return LinkValue::pair(i, j);
    case LinkKind::Toeplitz: return LinkValue::scalar(diff);
    case LinkKind::Hankel: return LinkValue::scalar(sum);
    case LinkKind::SymmetricCirculant: return folded_half(diff, n);
    case LinkKind::ReverseCirculant: return LinkValue::scalar(sum % n);
    case LinkKind::DoublySymmetricHankel: return folded_half(sum % n, n);
    case LinkKind::Composed: return transform_->apply(base_->eval(i, j, n));
  }
  throw ArgumentError("unknown link kind");
}

std::vector<LinkFunction> builtin_links() {
  return {LinkFunction::wigner(),          LinkFunction::toeplitz(),
          LinkFunction::hankel(),          LinkFunction::symmetric_circulant(),
          LinkFunction::reverse_circulant(), LinkFunction::doubly_symmetric_hankel()};
}

// --- parsing ------------------------------------------------------------------

namespace {

class LinkParser {
 public:
  explicit LinkParser(std::string_view text) : text_(text) {}

  LinkFunction parse() {
    LinkFunction link = parse_link_expr();
    skip_space();
    if (pos_ != text_.size()) fail("trailing input");
    return link;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw ArgumentError("cannot parse link '" + std::string(text_) + "': " + why + " at offset " +
                        std::to_string(pos_));
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  std::string identifier() {
    skip_space();
    std::string id;
    while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) {
      id += static_cast<char>(std::tolower(static_cast<unsigned char>(text_[pos_++])));
    }
    if (id.empty()) fail("expected a link name");
    return id;
  }

  std::int64_t integer() {
    skip_space();
    std::int64_t value = 0;
    auto [ptr, ec] = std::from_chars(text_.data() + pos_, text_.data() + text_.size(), value);
    if (ec != std::errc()) fail("expected an integer");
    pos_ = static_cast<std::size_t>(ptr - text_.data());
    return value;
  }

  void expect(char c) {
    skip_space();
    if (pos_ >= text_.size() || text_[pos_] != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  LinkFunction parse_link_expr() {
    const std::string id = identifier();
    static const std::map<std::string, LinkKind> kBuiltins = {
        {"wigner", LinkKind::Wigner},
        {"toeplitz", LinkKind::Toeplitz},
        {"hankel", LinkKind::Hankel},
        {"symcirc", LinkKind::SymmetricCirculant},
        {"revcirc", LinkKind::ReverseCirculant},
        {"dsymhankel", LinkKind::DoublySymmetricHankel},
    };
    if (auto it = kBuiltins.find(id); it != kBuiltins.end()) return LinkFunction(it->second);
    if (id == "square") {
      expect('(');
      LinkFunction base = parse_link_expr();
      expect(')');
      return compose(Transform::square(), std::move(base));
    }
    if (id == "coprimepower") {
      expect('(');
      const std::int64_t a = integer();
      expect(',');
      const std::int64_t b = integer();
      expect(',');
      LinkFunction base = parse_link_expr();
      expect(')');
      return compose(Transform::coprime_power(a, b), std::move(base));
    }
    throw ArgumentError("unknown link name '" + id + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

LinkFunction parse_link(std::string_view text) { return LinkParser(text).parse(); }

// --- profiles -----------------------------------------------------------------

LinkProfile profile(const LinkFunction& link, int n) {
  if (n < 2) throw ArgumentError("profile needs n >= 2");
  const LinkTable table(link, n);
  return LinkProfile{table.max_row_multiplicity(), table.value_count(), table.max_multiplicity(),
                     n};
}

LinkProfile profile_product(const LinkFunction& x, const LinkFunction& y, int n) {
  if (n < 2) throw ArgumentError("profile_product needs n >= 2");
  const LinkTable tx(x, n);
  const LinkTable ty(y, n);
  std::unordered_map<std::uint64_t, std::int64_t> counts;
  counts.reserve(static_cast<std::size_t>(n) * n);
  std::int64_t alphan = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const std::uint64_t key = (static_cast<std::uint64_t>(tx.id(i, j)) << 32) |
                                static_cast<std::uint32_t>(ty.id(i, j));
      alphan = std::max(alphan, ++counts[key]);
    }
  }
  return LinkProfile{std::min(tx.max_row_multiplicity(), ty.max_row_multiplicity()),
                     static_cast<std::int64_t>(counts.size()), alphan, n};
}

bool is_injective_on_range(const Transform& transform, const LinkFunction& base, int n) {
  if (n < 2) throw ArgumentError("is_injective_on_range needs n >= 2");
  const LinkTable table(base, n);
  std::unordered_set<LinkValue, LinkValueHash> images;
  for (std::int32_t id = 0; id < table.value_count(); ++id) {
    try {
      if (!images.insert(transform.apply(table.value(id))).second) return false;
    } catch (const EvaluationError&) {
      return false;
    }
  }
  return true;
}

Transform induced_transform(const LinkFunction& base, const LinkFunction& target, int n) {
  const LinkTable tb(base, n);
  const LinkTable tt(target, n);
  std::vector<std::int32_t> image(static_cast<std::size_t>(tb.value_count()), -1);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      auto& slot = image[tb.id(i, j)];
      if (slot < 0) {
        slot = tt.id(i, j);
      } else if (slot != tt.id(i, j)) {
        throw ArgumentError(target.name() + " is not a function of " + base.name() +
                            " at n=" + std::to_string(n) + ": value " +
                            tb.value(tb.id(i, j)).to_string() + " maps to both " +
                            tt.value(slot).to_string() + " and " +
                            tt.value(tt.id(i, j)).to_string());
      }
    }
  }
  std::map<LinkValue, LinkValue> table;
  for (std::int32_t id = 0; id < tb.value_count(); ++id) {
    table.emplace(tb.value(id), tt.value(image[id]));
  }
  return Transform::user_table(std::move(table), "rho[" + target.name() + "<-" + base.name() +
                                                     ",n=" + std::to_string(n) + "]");
}

DeltaTrend delta_trend(const LinkFunction& link, std::span<const int> ladder) {
  DeltaTrend trend;
  for (int n : ladder) {
    trend.ladder.push_back(n);
    trend.deltas.push_back(profile(link, n).delta);
  }
  trend.growing = trend.deltas.size() >= 2 && trend.deltas.back() > trend.deltas.front();
  return trend;
}

}  // namespace shp
