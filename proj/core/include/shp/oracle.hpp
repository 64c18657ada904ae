#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "shp/words.hpp"

namespace shp {

enum class MomentSource { Semicircle, AssembledFromP, Empirical };
std::string to_string(MomentSource s);

struct MomentSequence {
  std::vector<double> values;      // values[h-1] = beta_h
  std::vector<std::string> exact;  // exact rational forms, empty when unknown
  MomentSource source = MomentSource::Empirical;

  double at(int h) const { return values.at(static_cast<std::size_t>(h - 1)); }
  int max_order() const { return static_cast<int>(values.size()); }
};

/// Odd moments 0, beta_2k = Catalan(k). h_max <= 30.
MomentSequence semicircle_moments(int h_max);

/// Catalan(k) = binom(2k, k) / (k + 1), exact for k <= 33.
unsigned long long catalan_number(int k);

/// sum_{w in W_h} p(w). Throws ArgumentError naming the first missing word.
double assemble_moments(const std::map<Word, double>& p_table, int h);

/// sum over (w, w') in W_h^2 of p_Z(w, w'). With diagonal_only the table only
/// needs the (w, w) entries, which is valid once the two links are known to
/// be compatible.
double assemble_moments(const std::map<std::pair<Word, Word>, double>& p_table, int h,
                        bool diagonal_only);

/// (2k)! / (2^k k!) * delta^k, evaluated in exact integer arithmetic.
double moment_bound(int h, int delta);
std::string moment_bound_exact(int h, int delta);

struct CarlemanReport {
  std::vector<double> terms;         // beta_2k^{-1/(2k)}, k = 1..k_max
  std::vector<double> partial_sums;  // running sums of terms
  double term_count_bound = 0.0;     // k_max * last term
  double decay_exponent = 0.0;       // a in terms ~ k^{-a}, from the tail
  std::string trend;                 // "diverging" (a < 1) or "suspect"
};

/// Diagnostic only: divergence of the series cannot be certified numerically.
/// Throws ArgumentError if an even moment up to 2 k_max is missing or not
/// positive.
CarlemanReport carleman_diagnostic(const MomentSequence& seq, int k_max);

/// Positive semidefiniteness of the Hankel matrix [beta_{i+j}] (beta_0 = 1).
bool hankel_psd(const MomentSequence& seq, double tol = 1e-9);

/// Standard semicircle on [-2, 2], density sqrt(4 - x^2) / (2 pi).
double semicircle_density(double x);
double semicircle_cdf(double x);

}  // namespace shp
