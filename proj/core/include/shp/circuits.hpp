#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "shp/linkfn.hpp"
#include "shp/words.hpp"

namespace shp {

struct CountOptions {
  int threads = 1;
  /// Upper bound on n^(free positions); larger searches raise ResourceError.
  double node_budget = 1e9;
};

/// Exact size of Pi*(w) (one word) or Pi*_X(w) ∩ Pi*_Y(w') (two words) at n.
struct CircuitClassCount {
  std::vector<Word> words;
  std::vector<std::string> links;
  int n = 0;
  std::uint64_t count = 0;
  /// 1 + h/2; count is normalised by n^exponent.
  double normalizer_exponent = 0.0;

  double normalized() const;
};

/// Depth-first count of circuits pi(0..h), pi(h) = pi(0), with
/// w[i] = w[j] => L(pi(i-1), pi(i)) = L(pi(j-1), pi(j)).
/// Generating positions range over all n vertices; every other position is
/// restricted to the columns of the previous vertex's row that carry the
/// required value.
CircuitClassCount count_pi_star(const LinkFunction& link, const Word& w, int n,
                                const CountOptions& options = {});
CircuitClassCount count_pi_star(const LinkTable& table, const Word& w,
                                const CountOptions& options = {});

/// Slope-relaxed class for Toeplitz (s(i) + s(j) = 0) and symmetric
/// circulant (s(i) + s(j) in {0, n, -n}) links, s(i) = pi(i) - pi(i-1).
/// Requires a pair-matched word.
CircuitClassCount count_pi_prime(const LinkFunction& link, const Word& w, int n,
                                 const CountOptions& options = {});

/// Pi*_X(w) ∩ Pi*_Y(w2). A position is free only when it opens a new letter
/// in both words; otherwise candidates come from whichever constraint is
/// already fixed and are filtered by the other.
CircuitClassCount count_pi_star_joint(const LinkFunction& x, const LinkFunction& y, const Word& w,
                                      const Word& w2, int n, const CountOptions& options = {});
CircuitClassCount count_pi_star_joint(const LinkTable& x, const LinkTable& y, const Word& w,
                                      const Word& w2, const CountOptions& options = {});

/// Limit of count / n^(1+k) fitted as p + c/n by least squares.
struct PEstimate {
  std::vector<int> ladder;
  std::vector<double> values;
  double limit = 0.0;      // clamped at 0
  double raw_limit = 0.0;  // unclamped intercept
  double slope = 0.0;      // c
  double residual = 0.0;   // RMS of the fit residuals
};

/// Needs at least three counts with strictly increasing n.
PEstimate estimate_p(std::span<const CircuitClassCount> counts);

/// Default ladders: {8,16,32,64} for h <= 4, {8,16,32} above.
std::vector<int> default_ladder(int h);

/// p(w) for every pair-matched word of length h under one link.
std::map<Word, PEstimate> p_table(const LinkFunction& link, int h, std::span<const int> ladder,
                                  const CountOptions& options = {});

/// True iff L_X(i,j) = L_X(k,l) and L_Y(i,j) = L_Y(k,l) force
/// {i,j} = {k,l} for all index quadruples at this n.
bool check_implies_wigner(const LinkFunction& x, const LinkFunction& y, int n);

struct WordPairReport {
  std::string link_x;
  std::string link_y;
  Word word;
  Word word2;
  std::vector<int> ladder;
  std::vector<std::uint64_t> counts;
  PEstimate estimate;
  double expected = 0.0;
  bool pass = false;
};

/// Every (w, w') in W_h x W_h with w != w': p_Z(w, w') should vanish.
std::vector<WordPairReport> check_compatible(const LinkFunction& x, const LinkFunction& y, int h,
                                             std::span<const int> ladder, double tol,
                                             const CountOptions& options = {});

/// Every w in W_h: p_Z(w, w) should be 1 for Catalan words, 0 otherwise.
std::vector<WordPairReport> check_leadsto_wigner(const LinkFunction& x, const LinkFunction& y,
                                                 int h, std::span<const int> ladder, double tol,
                                                 const CountOptions& options = {});

struct ContainmentReport {
  Word word;
  int n = 0;
  std::uint64_t count_base = 0;         // #Pi*_X(w)
  std::uint64_t count_transformed = 0;  // #Pi*_Y(w), L_Y = rho o L_X
  std::uint64_t count_joint = 0;        // #(Pi*_X(w) ∩ Pi*_Y(w))
  bool subset = false;                  // count_joint == count_base
  bool equal = false;                   // count_base == count_transformed
  bool injective = false;               // rho collision free on range(L_X)
  bool pass = false;                    // subset, and equal when injective
};

std::vector<ContainmentReport> check_invariance_containment(const LinkFunction& x,
                                                            const Transform& transform, int h,
                                                            int n,
                                                            const CountOptions& options = {});

/// n-dependent rho: `target` must be a function of `x` at this n; the map is
/// rebuilt from the two tables.
std::vector<ContainmentReport> check_invariance_containment(const LinkFunction& x,
                                                            const LinkFunction& target, int h,
                                                            int n,
                                                            const CountOptions& options = {});

}  // namespace shp
