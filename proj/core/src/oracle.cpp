#include "shp/oracle.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>

#include "shp/errors.hpp"

namespace shp {

namespace {

__extension__ using u128 = unsigned __int128;

std::string to_decimal(u128 v) {
  if (v == 0) return "0";
  std::string s;
  while (v > 0) {
    s += static_cast<char>('0' + static_cast<int>(v % 10));
    v /= 10;
  }
  std::reverse(s.begin(), s.end());
  return s;
}

u128 bound_exact(int h, int delta) {
  if (h < 2 || h % 2 != 0 || h > 30) throw ArgumentError("moment_bound needs even 2 <= h <= 30");
  if (delta < 1) throw ArgumentError("moment_bound needs delta >= 1");
  const int k = h / 2;
  u128 v = 1;
  for (int odd = 1; odd < h; odd += 2) v *= static_cast<u128>(odd);  // (2k-1)!!
  for (int i = 0; i < k; ++i) v *= static_cast<u128>(delta);
  return v;
}

}  // namespace

std::string to_string(MomentSource s) {
  switch (s) {
    case MomentSource::Semicircle: return "semicircle";
    case MomentSource::AssembledFromP: return "assembled-from-p";
    case MomentSource::Empirical: return "empirical";
  }
  return "unknown";
}

unsigned long long catalan_number(int k) {
  if (k < 0 || k > 33) throw ArgumentError("catalan_number needs 0 <= k <= 33");
  // C_{i+1} = C_i * 2(2i+1) / (i+2), exact at every step.
  u128 c = 1;
  for (int i = 0; i < k; ++i) c = c * static_cast<u128>(2 * (2 * i + 1)) / static_cast<u128>(i + 2);
  return static_cast<unsigned long long>(c);
}

MomentSequence semicircle_moments(int h_max) {
  if (h_max < 1 || h_max > 30) throw ArgumentError("semicircle_moments needs 1 <= h_max <= 30");
  MomentSequence seq;
  seq.source = MomentSource::Semicircle;
  for (int h = 1; h <= h_max; ++h) {
    const unsigned long long v = (h % 2 == 0) ? catalan_number(h / 2) : 0ULL;
    seq.values.push_back(static_cast<double>(v));
    seq.exact.push_back(std::to_string(v));
  }
  return seq;
}

double assemble_moments(const std::map<Word, double>& p_table, int h) {
  double total = 0.0;
  for (const Word& w : enumerate_pair_matched(h)) {
    auto it = p_table.find(w);
    if (it == p_table.end()) throw ArgumentError("p-table is missing word " + w.to_string());
    total += it->second;
  }
  return total;
}

double assemble_moments(const std::map<std::pair<Word, Word>, double>& p_table, int h,
                        bool diagonal_only) {
  const auto words = enumerate_pair_matched(h);
  double total = 0.0;
  for (const Word& w : words) {
    for (const Word& w2 : words) {
      if (diagonal_only && w != w2) continue;
      auto it = p_table.find({w, w2});
      if (it == p_table.end()) {
        throw ArgumentError("p-table is missing word pair (" + w.to_string() + ", " +
                            w2.to_string() + ")");
      }
      total += it->second;
    }
  }
  return total;
}

double moment_bound(int h, int delta) { return static_cast<double>(bound_exact(h, delta)); }

std::string moment_bound_exact(int h, int delta) { return to_decimal(bound_exact(h, delta)); }

CarlemanReport carleman_diagnostic(const MomentSequence& seq, int k_max) {
  if (k_max < 1) throw ArgumentError("carleman_diagnostic needs k_max >= 1");
  if (seq.max_order() < 2 * k_max) {
    throw ArgumentError("moment sequence stops at order " + std::to_string(seq.max_order()) +
                        ", need " + std::to_string(2 * k_max));
  }
  CarlemanReport r;
  double sum = 0.0;
  for (int k = 1; k <= k_max; ++k) {
    const double beta = seq.at(2 * k);
    if (!(beta > 0.0)) {
      throw ArgumentError("even moment beta_" + std::to_string(2 * k) + " is not positive");
    }
    const double term = std::pow(beta, -1.0 / (2.0 * k));
    r.terms.push_back(term);
    sum += term;
    r.partial_sums.push_back(sum);
  }
  r.term_count_bound = k_max * r.terms.back();
  if (k_max >= 2) {
    const int half = k_max / 2;
    r.decay_exponent = -std::log(r.terms[k_max - 1] / r.terms[half - 1]) /
                       std::log(static_cast<double>(k_max) / half);
  }
  r.trend = r.decay_exponent < 1.0 ? "diverging" : "suspect";
  return r;
}

bool hankel_psd(const MomentSequence& seq, double tol) {
  const int m = seq.max_order() / 2;
  Eigen::MatrixXd h(m + 1, m + 1);
  for (int i = 0; i <= m; ++i) {
    for (int j = 0; j <= m; ++j) h(i, j) = (i + j == 0) ? 1.0 : seq.at(i + j);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h, Eigen::EigenvaluesOnly);
  const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
  return solver.eigenvalues().minCoeff() >= -tol * scale;
}

double semicircle_density(double x) {
  if (x <= -2.0 || x >= 2.0) return 0.0;
  return std::sqrt(4.0 - x * x) / (2.0 * std::numbers::pi);
}

double semicircle_cdf(double x) {
  if (x <= -2.0) return 0.0;
  if (x >= 2.0) return 1.0;
  return 0.5 + x * std::sqrt(4.0 - x * x) / (4.0 * std::numbers::pi) +
         std::asin(x / 2.0) / std::numbers::pi;
}

}  // namespace shp
