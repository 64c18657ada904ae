#include "shp/words.hpp"

#include <algorithm>
#include <functional>

namespace shp {

Word::Word(std::vector<int> letters) : letters_(std::move(letters)) {
  if (letters_.empty()) throw ArgumentError("a word must be nonempty");
  for (int letter : letters_) {
    if (letter < 1 || letter > num_letters_ + 1) {
      throw ArgumentError("word is not canonical: letter " + std::to_string(letter) +
                          " appears before letter " + std::to_string(num_letters_ + 1));
    }
    num_letters_ = std::max(num_letters_, letter);
  }
}

Word Word::parse(std::string_view text) {
  std::vector<int> letters;
  for (char c : text) {
    if (c < 'a' || c > 'z') throw ArgumentError("invalid word '" + std::string(text) + "'");
    letters.push_back(c - 'a' + 1);
  }
  if (letters.empty()) throw ArgumentError("empty word");
  return Word(std::move(letters));
}

bool Word::is_pair_matched() const {
  std::vector<int> count(static_cast<std::size_t>(num_letters_) + 1, 0);
  for (int l : letters_) ++count[l];
  return std::all_of(count.begin() + 1, count.end(), [](int c) { return c == 2; });
}

std::string Word::to_string() const {
  std::string out;
  if (num_letters_ <= 26) {
    for (int l : letters_) out += static_cast<char>('a' + l - 1);
    return out;
  }
  for (std::size_t i = 0; i < letters_.size(); ++i) {
    if (i) out += '.';
    out += std::to_string(letters_[i]);
  }
  return out;
}

std::vector<Word> enumerate_pair_matched(int h) {
  if (h < 2 || h % 2 != 0) {
    throw ArgumentError("pair-matched words need an even length >= 2, got " + std::to_string(h));
  }
  if (h > 16) throw ArgumentError("enumeration is capped at length 16");
  std::vector<Word> out;
  std::vector<int> letters(static_cast<std::size_t>(h), 0);
  // Open the first empty slot with a new letter and close it at any later
  // empty slot; this visits each pairing once, already canonical.
  std::function<void(int)> fill = [&](int next_letter) {
    const auto open = std::find(letters.begin(), letters.end(), 0);
    if (open == letters.end()) {
      out.emplace_back(letters);
      return;
    }
    *open = next_letter;
    for (auto close = open + 1; close != letters.end(); ++close) {
      if (*close != 0) continue;
      *close = next_letter;
      fill(next_letter + 1);
      *close = 0;
    }
    *open = 0;
  };
  fill(1);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Word> enumerate_words(int h) {
  if (h < 1 || h > 12) throw ArgumentError("word enumeration needs 1 <= h <= 12");
  std::vector<Word> out;
  std::vector<int> letters;
  std::function<void(int)> grow = [&](int max_letter) {
    if (static_cast<int>(letters.size()) == h) {
      out.emplace_back(letters);
      return;
    }
    for (int l = 1; l <= max_letter + 1; ++l) {
      letters.push_back(l);
      grow(std::max(max_letter, l));
      letters.pop_back();
    }
  };
  grow(0);
  return out;
}

bool is_catalan(const Word& w) {
  if (!w.is_pair_matched()) {
    throw ArgumentError("is_catalan needs a pair-matched word, got " + w.to_string());
  }
  std::vector<int> stack;
  std::vector<bool> seen(static_cast<std::size_t>(w.num_letters()) + 1, false);
  for (int l : w.letters()) {
    if (!seen[l]) {
      seen[l] = true;
      stack.push_back(l);
    } else {
      if (stack.empty() || stack.back() != l) return false;
      stack.pop_back();
    }
  }
  return true;
}

std::vector<int> generating_positions(const Word& w) {
  std::vector<int> out{0};
  int highest = 0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] > highest) {
      highest = w[i];
      out.push_back(static_cast<int>(i) + 1);
    }
  }
  return out;
}

}  // namespace shp
