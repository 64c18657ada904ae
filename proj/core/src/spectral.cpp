#include "shp/spectral.hpp"

#include <algorithm>
#include <cmath>

#include "parallel.hpp"
#include "shp/errors.hpp"

namespace shp {

namespace {

void require_eigen_input(const MatrixRealization& a) {
  if (!a.scaled()) throw StateError("eigenvalues expect a scaled realization");
  if (!a.entries().allFinite()) throw ArgumentError("matrix has non-finite entries");
}

}  // namespace

Spectrum eigenvalues(const MatrixRealization& a) {
  require_eigen_input(a);
  Spectrum s;
  s.n = a.n();
  if (s.n == 0) return s;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a.entries(), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw ArgumentError("eigensolver did not converge");
  s.eigenvalues.assign(solver.eigenvalues().data(), solver.eigenvalues().data() + s.n);
  std::sort(s.eigenvalues.begin(), s.eigenvalues.end());
  return s;
}

EigenDecomposition eigen_decomposition(const MatrixRealization& a) {
  require_eigen_input(a);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a.entries(), Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) throw ArgumentError("eigensolver did not converge");
  EigenDecomposition out;
  out.spectrum.n = a.n();
  // Eigen returns eigenvalues in increasing order.
  out.spectrum.eigenvalues.assign(solver.eigenvalues().data(),
                                  solver.eigenvalues().data() + a.n());
  out.vectors = solver.eigenvectors();
  return out;
}

Esd::Esd(std::vector<double> points) : points_(std::move(points)) {
  std::sort(points_.begin(), points_.end());
}

double Esd::cdf(double x) const {
  if (points_.empty()) return 0.0;
  const auto it = std::upper_bound(points_.begin(), points_.end(), x);
  return static_cast<double>(it - points_.begin()) / static_cast<double>(points_.size());
}

double Esd::cdf_left(double x) const {
  if (points_.empty()) return 0.0;
  const auto it = std::lower_bound(points_.begin(), points_.end(), x);
  return static_cast<double>(it - points_.begin()) / static_cast<double>(points_.size());
}

double moment_from_spectrum(const Spectrum& s, int h) {
  if (h < 1) throw ArgumentError("moment order must be >= 1");
  if (s.eigenvalues.empty()) throw ArgumentError("empty spectrum");
  double sum = 0.0;
  for (double lambda : s.eigenvalues) sum += std::pow(lambda, h);
  return sum / static_cast<double>(s.eigenvalues.size());
}

double moment_from_trace(const MatrixRealization& a, int h) {
  if (h < 1 || h > 8) throw ArgumentError("moment_from_trace supports 1 <= h <= 8");
  if (!a.scaled()) throw StateError("moment_from_trace expects a scaled realization");
  const Eigen::MatrixXd& m = a.entries();
  Eigen::MatrixXd power = m;
  for (int k = 1; k < h; ++k) power = power * m;
  return power.trace() / static_cast<double>(a.n());
}

MomentEstimate summarize(int h, int n, std::span<const double> values) {
  MomentEstimate e;
  e.h = h;
  e.n = n;
  e.trials = static_cast<int>(values.size());
  if (values.empty()) return e;
  double sum = 0.0;
  for (double v : values) sum += v;
  e.mean = sum / static_cast<double>(values.size());
  if (values.size() >= 2) {
    double ss = 0.0;
    for (double v : values) ss += (v - e.mean) * (v - e.mean);
    e.variance = ss / static_cast<double>(values.size() - 1);
    e.std_error = std::sqrt(e.variance / static_cast<double>(values.size()));
  }
  return e;
}

SimulationResult simulate(const ProductSpec& spec, int h_max, const SimulationOptions& options) {
  if (h_max < 1 || h_max > 8) throw ArgumentError("h_max must be in 1..8");
  if (spec.trials < 1) throw ArgumentError("trials must be >= 1");
  if (spec.n < 1) throw ArgumentError("n must be >= 1");
  const LinkTable table_x(spec.link_x, spec.n);
  const LinkTable table_y(spec.link_y, spec.n);
  const auto trials = static_cast<std::size_t>(spec.trials);

  SimulationResult out;
  out.per_trial.assign(trials, std::vector<double>(static_cast<std::size_t>(h_max), 0.0));
  if (options.keep_spectra) out.spectra.resize(trials);

  detail::parallel_for(trials, options.threads, [&](std::size_t t) {
    const MatrixRealization z = realize_product(spec, table_x, table_y, t);
    Spectrum s = eigenvalues(z);
    for (int h = 1; h <= h_max; ++h) out.per_trial[t][h - 1] = moment_from_spectrum(s, h);
    if (options.keep_spectra) out.spectra[t] = std::move(s);
  });

  std::vector<double> column(trials);
  for (int h = 1; h <= h_max; ++h) {
    for (std::size_t t = 0; t < trials; ++t) column[t] = out.per_trial[t][h - 1];
    out.moments.push_back(summarize(h, spec.n, column));
  }
  return out;
}

std::vector<MomentEstimate> mc_moments(const ProductSpec& spec, int h_max, int threads) {
  if (spec.trials < 2) throw ArgumentError("mc_moments needs at least 2 trials");
  return simulate(spec, h_max, SimulationOptions{threads, false}).moments;
}

double ks_distance(const Esd& esd, const std::function<double(double)>& ref_cdf) {
  const auto pts = esd.points();
  const double total = static_cast<double>(pts.size());
  double worst = 0.0;
  std::size_t i = 0;
  while (i < pts.size()) {
    std::size_t j = i;
    while (j < pts.size() && pts[j] == pts[i]) ++j;
    const double x = pts[i];
    const double below = static_cast<double>(i) / total;  // F_n(x-)
    const double at = static_cast<double>(j) / total;     // F_n(x)
    const double ref_left = ref_cdf(std::nextafter(x, -HUGE_VAL));
    worst = std::max({worst, std::abs(at - ref_cdf(x)), std::abs(below - ref_left)});
    i = j;
  }
  return std::clamp(worst, 0.0, 1.0);
}

std::vector<HistogramBin> histogram(const Esd& esd, int bins, double lo, double hi) {
  if (bins < 1) throw ArgumentError("histogram needs at least one bin");
  if (!(lo < hi)) throw ArgumentError("histogram needs lo < hi");
  const double width = (hi - lo) / bins;
  std::vector<std::size_t> counts(static_cast<std::size_t>(bins), 0);
  for (double x : esd.points()) {
    if (x < lo || x > hi) continue;
    auto b = static_cast<std::size_t>((x - lo) / width);
    if (b >= counts.size()) b = counts.size() - 1;
    ++counts[b];
  }
  std::vector<HistogramBin> out(counts.size());
  const double total = static_cast<double>(esd.size());
  for (std::size_t b = 0; b < counts.size(); ++b) {
    out[b].center = lo + (static_cast<double>(b) + 0.5) * width;
    out[b].density = total > 0 ? static_cast<double>(counts[b]) / (total * width) : 0.0;
  }
  return out;
}

}  // namespace shp
