#pragma once

#include <Eigen/Dense>
#include <functional>
#include <span>
#include <vector>

#include "shp/ensemble.hpp"

namespace shp {

struct Spectrum {
  std::vector<double> eigenvalues;  // ascending
  int n = 0;
};

/// Eigenvalues of a scaled symmetric realization. Throws StateError for an
/// unscaled matrix and ArgumentError for non-finite entries.
Spectrum eigenvalues(const MatrixRealization& a);

struct EigenDecomposition {
  Spectrum spectrum;
  Eigen::MatrixXd vectors;  // columns match spectrum order
};
/// Eigenvalues and eigenvectors; used to check reconstruction residuals.
EigenDecomposition eigen_decomposition(const MatrixRealization& a);

/// Empirical spectral distribution: right-continuous step CDF over the points.
class Esd {
 public:
  explicit Esd(std::vector<double> points);
  explicit Esd(const Spectrum& s) : Esd(s.eigenvalues) {}

  std::span<const double> points() const { return points_; }
  std::size_t size() const { return points_.size(); }
  /// (1/N) #{x_i <= x}
  double cdf(double x) const;
  /// (1/N) #{x_i < x}
  double cdf_left(double x) const;

 private:
  std::vector<double> points_;
};

/// (1/n) sum lambda_i^h, h >= 1.
double moment_from_spectrum(const Spectrum& s, int h);
/// (1/n) tr(A^h) by repeated multiplication, 1 <= h <= 8, A scaled.
double moment_from_trace(const MatrixRealization& a, int h);

struct MomentEstimate {
  int h = 0;
  double mean = 0.0;
  double variance = 0.0;   // unbiased, across trials
  double std_error = 0.0;  // sqrt(variance / trials)
  int trials = 0;
  int n = 0;
};

struct SimulationOptions {
  int threads = 1;
  bool keep_spectra = false;
};

struct SimulationResult {
  std::vector<MomentEstimate> moments;         // h = 1..h_max
  std::vector<std::vector<double>> per_trial;  // [trial][h-1]
  std::vector<Spectrum> spectra;               // only with keep_spectra
};

/// Runs spec.trials independent trials of n^{-1/2} X (.) Y, computing
/// moments 1..h_max (h_max <= 8) from each spectrum. Trials run in parallel;
/// aggregation is left to right in trial order, so the output does not depend
/// on the thread count.
SimulationResult simulate(const ProductSpec& spec, int h_max, const SimulationOptions& options = {});

std::vector<MomentEstimate> mc_moments(const ProductSpec& spec, int h_max, int threads = 1);

/// Mean/variance/stderr of one column of per-trial values.
MomentEstimate summarize(int h, int n, std::span<const double> values);

/// sup_x |F_n(x) - F(x)| checked at every eigenvalue from both sides. Left
/// limits of the reference are taken at the next representable double below
/// each point so step references compare correctly.
double ks_distance(const Esd& esd, const std::function<double(double)>& ref_cdf);

struct HistogramBin {
  double center = 0.0;
  double density = 0.0;
};

/// Density histogram over [lo, hi]: count / (N * width). Points outside the
/// range are dropped; a point equal to hi falls in the last bin.
std::vector<HistogramBin> histogram(const Esd& esd, int bins, double lo, double hi);

}  // namespace shp
