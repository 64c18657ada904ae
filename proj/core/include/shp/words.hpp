#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <ranges>
#include <string>
#include <string_view>
#include <vector>

#include "shp/errors.hpp"

namespace shp {

/// Canonical word: letters are 1, 2, ... in order of first occurrence.
///
/// Letters are stored as integers so lengths beyond 26 are representable;
/// to_string renders them as a-z when possible.
class Word {
 public:
  Word() = default;
  /// Throws ArgumentError unless `letters` is nonempty and canonical.
  explicit Word(std::vector<int> letters);
  /// Parses a canonical lowercase word such as "abba".
  static Word parse(std::string_view text);

  std::size_t size() const { return letters_.size(); }
  int num_letters() const { return num_letters_; }
  /// 0-based access.
  int operator[](std::size_t i) const { return letters_[i]; }
  const std::vector<int>& letters() const { return letters_; }

  bool is_pair_matched() const;
  std::string to_string() const;

  friend bool operator==(const Word&, const Word&) = default;
  friend auto operator<=>(const Word& a, const Word& b) { return a.letters_ <=> b.letters_; }

 private:
  std::vector<int> letters_;
  int num_letters_ = 0;
};

/// Order-isomorphic relabelling of any sequence of comparable symbols.
template <std::ranges::input_range R>
Word canonicalize(const R& raw) {
  using Symbol = std::ranges::range_value_t<R>;
  std::map<Symbol, int> label;
  std::vector<int> letters;
  for (const auto& s : raw) {
    auto [it, inserted] = label.try_emplace(s, static_cast<int>(label.size()) + 1);
    letters.push_back(it->second);
  }
  if (letters.empty()) throw ArgumentError("cannot canonicalize an empty word");
  return Word(std::move(letters));
}

inline Word canonicalize(std::string_view raw) { return canonicalize<std::string_view>(raw); }
inline Word canonicalize(const char* raw) { return canonicalize(std::string_view(raw)); }

/// All pair-matched words of length h in lexicographic order. h must be even
/// and at most 16.
std::vector<Word> enumerate_pair_matched(int h);

/// All canonical words (set partitions of {1..h}) of length h <= 12.
std::vector<Word> enumerate_words(int h);

/// Non-crossing test. Throws ArgumentError for words that are not
/// pair-matched.
bool is_catalan(const Word& w);

/// Position 0 plus every position i (1-based) whose letter appears there for
/// the first time. Sorted.
std::vector<int> generating_positions(const Word& w);

}  // namespace shp
