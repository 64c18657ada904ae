#include "shp/circuits.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_map>

#include "parallel.hpp"
#include "shp/errors.hpp"

namespace shp {

double CircuitClassCount::normalized() const {
  return static_cast<double>(count) / std::pow(static_cast<double>(n), normalizer_exponent);
}

namespace {

// Letter and first-occurrence flag per circuit position 1..h.
struct WordLayout {
  std::vector<int> letter;  // 0-based letter index
  std::vector<bool> opens;
  int num_letters = 0;

  explicit WordLayout(const Word& w) : num_letters(w.num_letters()) {
    letter.assign(w.size() + 1, -1);
    opens.assign(w.size() + 1, false);
    int highest = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
      letter[i + 1] = w[i] - 1;
      if (w[i] > highest) {
        highest = w[i];
        opens[i + 1] = true;
      }
    }
  }
};

// One word read against one link table.
struct WordConstraint : WordLayout {
  WordConstraint(const LinkTable& t, const Word& w) : WordLayout(w), table(&t) {}
  const LinkTable* table;
};

class CircuitSearch {
 public:
  CircuitSearch(std::vector<WordConstraint> constraints, int n, int h)
      : cs_(std::move(constraints)), n_(n), h_(h) {}

  int free_positions() const {
    int free = 1;  // pi(0)
    for (int pos = 1; pos < h_; ++pos) {
      if (std::all_of(cs_.begin(), cs_.end(), [pos](const auto& c) { return c.opens[pos]; })) {
        ++free;
      }
    }
    return free;
  }

  std::uint64_t count_from(int start) const {
    State st;
    st.pi.assign(static_cast<std::size_t>(h_) + 1, 0);
    st.value.resize(cs_.size());
    for (std::size_t c = 0; c < cs_.size(); ++c) {
      st.value[c].assign(static_cast<std::size_t>(cs_[c].num_letters), -1);
    }
    st.pi[0] = start;
    return descend(1, st);
  }

 private:
  struct State {
    std::vector<int> pi;
    std::vector<std::vector<std::int32_t>> value;  // [constraint][letter] -> value id
  };

  // Accepts `cand` at `pos` for every constraint except `skip`, recording
  // values for letters that open here.
  bool admit(int pos, int prev, int cand, std::size_t skip, State& st) const {
    for (std::size_t c = 0; c < cs_.size(); ++c) {
      if (c == skip) continue;
      const auto& con = cs_[c];
      const std::int32_t id = con.table->id(prev, cand);
      auto& slot = st.value[c][con.letter[pos]];
      if (con.opens[pos]) {
        slot = id;
      } else if (slot != id) {
        return false;
      }
    }
    return true;
  }

  std::uint64_t descend(int pos, State& st) const {
    const int prev = st.pi[pos - 1];
    if (pos == h_) return admit(pos, prev, st.pi[0], cs_.size(), st) ? 1 : 0;

    // Pick the tightest already-fixed constraint as the candidate source.
    std::size_t source = cs_.size();
    std::span<const std::int32_t> cols;
    for (std::size_t c = 0; c < cs_.size(); ++c) {
      const auto& con = cs_[c];
      if (con.opens[pos]) continue;
      auto span = con.table->columns(prev, st.value[c][con.letter[pos]]);
      if (source == cs_.size() || span.size() < cols.size()) {
        source = c;
        cols = span;
      }
    }

    std::uint64_t total = 0;
    if (source == cs_.size()) {
      for (int cand = 0; cand < n_; ++cand) {
        admit(pos, prev, cand, cs_.size(), st);
        st.pi[pos] = cand;
        total += descend(pos + 1, st);
      }
      return total;
    }
    for (std::int32_t cand : cols) {
      if (!admit(pos, prev, cand, source, st)) continue;
      st.pi[pos] = cand;
      total += descend(pos + 1, st);
    }
    return total;
  }

  std::vector<WordConstraint> cs_;
  int n_;
  int h_;
};

void check_budget(int n, int free, const CountOptions& options) {
  const double nodes = std::pow(static_cast<double>(n), free);
  if (nodes > options.node_budget) {
    throw ResourceError("circuit search would visit about " + std::to_string(nodes) +
                        " nodes (n=" + std::to_string(n) + "^" + std::to_string(free) +
                        "), above the budget of " + std::to_string(options.node_budget));
  }
}

std::uint64_t run_search(const CircuitSearch& search, int n, const CountOptions& options) {
  check_budget(n, search.free_positions(), options);
  std::vector<std::uint64_t> per_start(static_cast<std::size_t>(n), 0);
  detail::parallel_for(per_start.size(), options.threads, [&](std::size_t v) {
    per_start[v] = search.count_from(static_cast<int>(v));
  });
  return std::accumulate(per_start.begin(), per_start.end(), std::uint64_t{0});
}

double exponent_for(const Word& w) { return 1.0 + static_cast<double>(w.size()) / 2.0; }

}  // namespace

CircuitClassCount count_pi_star(const LinkTable& table, const Word& w,
                                const CountOptions& options) {
  const int h = static_cast<int>(w.size());
  CircuitSearch search({WordConstraint(table, w)}, table.n(), h);
  return CircuitClassCount{{w}, {table.link_name()}, table.n(), run_search(search, table.n(), options),
                           exponent_for(w)};
}

CircuitClassCount count_pi_star(const LinkFunction& link, const Word& w, int n,
                                const CountOptions& options) {
  if (n < 1) throw ArgumentError("count_pi_star needs n >= 1");
  return count_pi_star(LinkTable(link, n), w, options);
}

CircuitClassCount count_pi_star_joint(const LinkTable& x, const LinkTable& y, const Word& w,
                                      const Word& w2, const CountOptions& options) {
  if (w.size() != w2.size()) {
    throw ArgumentError("joint count needs words of equal length, got " + w.to_string() + " and " +
                        w2.to_string());
  }
  if (x.n() != y.n()) throw ArgumentError("joint count needs tables of equal dimension");
  const int h = static_cast<int>(w.size());
  CircuitSearch search({WordConstraint(x, w), WordConstraint(y, w2)}, x.n(), h);
  return CircuitClassCount{{w, w2},
                           {x.link_name(), y.link_name()},
                           x.n(),
                           run_search(search, x.n(), options),
                           exponent_for(w)};
}

CircuitClassCount count_pi_star_joint(const LinkFunction& x, const LinkFunction& y, const Word& w,
                                      const Word& w2, int n, const CountOptions& options) {
  if (n < 1) throw ArgumentError("count_pi_star_joint needs n >= 1");
  if (w.size() != w2.size()) {
    throw ArgumentError("joint count needs words of equal length, got " + w.to_string() + " and " +
                        w2.to_string());
  }
  return count_pi_star_joint(LinkTable(x, n), LinkTable(y, n), w, w2, options);
}

// --- slope class -------------------------------------------------------------

namespace {

class SlopeSearch {
 public:
  SlopeSearch(const Word& w, int n, bool circulant)
      : n_(n), h_(static_cast<int>(w.size())), circulant_(circulant), constraint_(w) {}

  std::uint64_t count_from(int start) const {
    std::vector<int> pi(static_cast<std::size_t>(h_) + 1, 0);
    std::vector<int> slope(static_cast<std::size_t>(constraint_.num_letters), 0);
    pi[0] = start;
    return descend(1, pi, slope);
  }

 private:
  std::uint64_t descend(int pos, std::vector<int>& pi, std::vector<int>& slope) const {
    const int prev = pi[pos - 1];
    const int letter = constraint_.letter[pos];
    if (constraint_.opens[pos]) {
      if (pos == h_) return 1;
      std::uint64_t total = 0;
      for (int cand = 0; cand < n_; ++cand) {
        slope[letter] = cand - prev;
        pi[pos] = cand;
        total += descend(pos + 1, pi, slope);
      }
      return total;
    }
    // s(j) = -s(i) + shift, shift in {0} or {0, n, -n}.
    const int shifts[3] = {0, n_, -n_};
    const int num_shifts = circulant_ ? 3 : 1;
    std::uint64_t total = 0;
    for (int k = 0; k < num_shifts; ++k) {
      const int cand = prev - slope[letter] + shifts[k];
      if (cand < 0 || cand >= n_) continue;
      if (pos == h_) {
        total += (cand == pi[0]) ? 1 : 0;
        continue;
      }
      pi[pos] = cand;
      total += descend(pos + 1, pi, slope);
    }
    return total;
  }

  int n_;
  int h_;
  bool circulant_;
  WordLayout constraint_;
};

}  // namespace

CircuitClassCount count_pi_prime(const LinkFunction& link, const Word& w, int n,
                                 const CountOptions& options) {
  if (link.kind() != LinkKind::Toeplitz && link.kind() != LinkKind::SymmetricCirculant) {
    throw ArgumentError("count_pi_prime supports toeplitz and symcirc, got " + link.name());
  }
  if (!w.is_pair_matched()) {
    throw ArgumentError("count_pi_prime needs a pair-matched word, got " + w.to_string());
  }
  if (n < 1) throw ArgumentError("count_pi_prime needs n >= 1");
  check_budget(n, w.num_letters() + 1, options);
  const SlopeSearch search(w, n, link.kind() == LinkKind::SymmetricCirculant);
  std::vector<std::uint64_t> per_start(static_cast<std::size_t>(n), 0);
  detail::parallel_for(per_start.size(), options.threads, [&](std::size_t v) {
    per_start[v] = search.count_from(static_cast<int>(v));
  });
  return CircuitClassCount{{w},
                           {link.name()},
                           n,
                           std::accumulate(per_start.begin(), per_start.end(), std::uint64_t{0}),
                           exponent_for(w)};
}

// --- extrapolation -------------------------------------------------------------

PEstimate estimate_p(std::span<const CircuitClassCount> counts) {
  if (counts.size() < 3) throw ArgumentError("estimate_p needs at least 3 ladder points");
  PEstimate est;
  for (std::size_t k = 0; k < counts.size(); ++k) {
    if (k > 0 && counts[k].n <= counts[k - 1].n) {
      throw ArgumentError("estimate_p needs a strictly increasing ladder");
    }
    est.ladder.push_back(counts[k].n);
    est.values.push_back(counts[k].normalized());
  }
  // Least squares for y = p + c x with x = 1/n.
  const double m = static_cast<double>(counts.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t k = 0; k < counts.size(); ++k) {
    const double x = 1.0 / est.ladder[k];
    const double y = est.values[k];
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double det = m * sxx - sx * sx;
  est.slope = (m * sxy - sx * sy) / det;
  est.raw_limit = (sy - est.slope * sx) / m;
  est.limit = std::max(0.0, est.raw_limit);
  double ss = 0;
  for (std::size_t k = 0; k < counts.size(); ++k) {
    const double r = est.values[k] - (est.raw_limit + est.slope / est.ladder[k]);
    ss += r * r;
  }
  est.residual = std::sqrt(ss / m);
  return est;
}

std::vector<int> default_ladder(int h) {
  if (h <= 4) return {8, 16, 32, 64};
  return {8, 16, 32};
}

std::map<Word, PEstimate> p_table(const LinkFunction& link, int h, std::span<const int> ladder,
                                  const CountOptions& options) {
  std::vector<LinkTable> tables;
  for (int n : ladder) tables.emplace_back(link, n);
  std::map<Word, PEstimate> out;
  for (const Word& w : enumerate_pair_matched(h)) {
    std::vector<CircuitClassCount> counts;
    for (const auto& t : tables) counts.push_back(count_pi_star(t, w, options));
    out.emplace(w, estimate_p(counts));
  }
  return out;
}

// --- relations -----------------------------------------------------------------

bool check_implies_wigner(const LinkFunction& x, const LinkFunction& y, int n) {
  const LinkTable tx(x, n);
  const LinkTable ty(y, n);
  // First cell seen for each value pair; every other cell with the same pair
  // must be that cell or its mirror.
  std::unordered_map<std::uint64_t, std::pair<int, int>> first;
  first.reserve(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      const std::uint64_t key = (static_cast<std::uint64_t>(tx.id(i, j)) << 32) |
                                static_cast<std::uint32_t>(ty.id(i, j));
      auto [it, inserted] = first.try_emplace(key, i, j);
      if (!inserted && it->second != std::pair{i, j}) return false;
    }
  }
  return true;
}

namespace {

WordPairReport joint_report(const std::vector<LinkTable>& tx, const std::vector<LinkTable>& ty,
                            const Word& w, const Word& w2, double expected, double tol,
                            const CountOptions& options) {
  WordPairReport r;
  r.link_x = tx.front().link_name();
  r.link_y = ty.front().link_name();
  r.word = w;
  r.word2 = w2;
  r.expected = expected;
  std::vector<CircuitClassCount> counts;
  for (std::size_t k = 0; k < tx.size(); ++k) {
    counts.push_back(count_pi_star_joint(tx[k], ty[k], w, w2, options));
    r.ladder.push_back(tx[k].n());
    r.counts.push_back(counts.back().count);
  }
  r.estimate = estimate_p(counts);
  r.pass = std::abs(r.estimate.raw_limit - expected) <= tol;
  return r;
}

std::pair<std::vector<LinkTable>, std::vector<LinkTable>> ladder_tables(
    const LinkFunction& x, const LinkFunction& y, std::span<const int> ladder) {
  std::vector<LinkTable> tx, ty;
  for (int n : ladder) {
    tx.emplace_back(x, n);
    ty.emplace_back(y, n);
  }
  return {std::move(tx), std::move(ty)};
}

}  // namespace

std::vector<WordPairReport> check_compatible(const LinkFunction& x, const LinkFunction& y, int h,
                                             std::span<const int> ladder, double tol,
                                             const CountOptions& options) {
  const auto [tx, ty] = ladder_tables(x, y, ladder);
  const auto words = enumerate_pair_matched(h);
  std::vector<WordPairReport> out;
  for (const Word& w : words) {
    for (const Word& w2 : words) {
      if (w == w2) continue;
      out.push_back(joint_report(tx, ty, w, w2, 0.0, tol, options));
    }
  }
  return out;
}

std::vector<WordPairReport> check_leadsto_wigner(const LinkFunction& x, const LinkFunction& y,
                                                 int h, std::span<const int> ladder, double tol,
                                                 const CountOptions& options) {
  const auto [tx, ty] = ladder_tables(x, y, ladder);
  std::vector<WordPairReport> out;
  for (const Word& w : enumerate_pair_matched(h)) {
    out.push_back(joint_report(tx, ty, w, w, is_catalan(w) ? 1.0 : 0.0, tol, options));
  }
  return out;
}

std::vector<ContainmentReport> check_invariance_containment(const LinkFunction& x,
                                                            const Transform& transform, int h,
                                                            int n, const CountOptions& options) {
  const LinkFunction y = compose(transform, x);
  const LinkTable tx(x, n);
  const LinkTable ty(y, n);
  const bool injective = is_injective_on_range(transform, x, n);
  std::vector<ContainmentReport> out;
  for (const Word& w : enumerate_pair_matched(h)) {
    ContainmentReport r;
    r.word = w;
    r.n = n;
    r.injective = injective;
    r.count_base = count_pi_star(tx, w, options).count;
    r.count_transformed = count_pi_star(ty, w, options).count;
    r.count_joint = count_pi_star_joint(tx, ty, w, w, options).count;
    r.subset = r.count_joint == r.count_base;
    r.equal = r.count_base == r.count_transformed;
    r.pass = r.subset && (!injective || r.equal);
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<ContainmentReport> check_invariance_containment(const LinkFunction& x,
                                                            const LinkFunction& target, int h,
                                                            int n, const CountOptions& options) {
  return check_invariance_containment(x, induced_transform(x, target, n), h, n, options);
}

}  // namespace shp
