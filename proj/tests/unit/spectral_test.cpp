#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "shp/errors.hpp"
#include "shp/oracle.hpp"
#include "shp/spectral.hpp"

namespace shp {
namespace {

MatrixRealization scaled_matrix(Eigen::MatrixXd m) { return MatrixRealization(std::move(m), true); }

TEST(Eigenvalues, SmallAnalyticCases) {
  EXPECT_EQ(eigenvalues(scaled_matrix(Eigen::MatrixXd::Identity(3, 3))).eigenvalues,
            (std::vector<double>{1, 1, 1}));
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(3, 3);
  d.diagonal() << 2, -1, 0;
  const auto s = eigenvalues(scaled_matrix(d));
  ASSERT_EQ(s.n, 3);
  EXPECT_NEAR(s.eigenvalues[0], -1, 1e-15);
  EXPECT_NEAR(s.eigenvalues[1], 0, 1e-15);
  EXPECT_NEAR(s.eigenvalues[2], 2, 1e-15);
  Eigen::MatrixXd swap(2, 2);
  swap << 0, 1, 1, 0;
  const auto t = eigenvalues(scaled_matrix(swap));
  EXPECT_NEAR(t.eigenvalues[0], -1, 1e-15);
  EXPECT_NEAR(t.eigenvalues[1], 1, 1e-15);
}

TEST(Eigenvalues, Errors) {
  EXPECT_THROW(eigenvalues(MatrixRealization(Eigen::MatrixXd::Identity(2, 2), false)), StateError);
  Eigen::MatrixXd bad = Eigen::MatrixXd::Identity(2, 2);
  bad(0, 1) = bad(1, 0) = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(eigenvalues(scaled_matrix(bad)), ArgumentError);
}

TEST(Eigenvalues, SortedTraceAndReconstruction) {
  for (int n : {2, 7, 30, 50}) {
    const auto a = scale(schur_product(realize(LinkFunction::toeplitz(), Distribution::Gaussian, n, n),
                                       realize(LinkFunction::hankel(), Distribution::Gaussian, n, 2 * n)));
    const auto dec = eigen_decomposition(a);
    const auto& ev = dec.spectrum.eigenvalues;
    ASSERT_EQ(ev.size(), static_cast<std::size_t>(n));
    EXPECT_TRUE(std::is_sorted(ev.begin(), ev.end()));
    double sum = 0;
    for (double x : ev) sum += x;
    EXPECT_NEAR(sum, a.entries().trace(), 1e-8 * n * std::max(1.0, std::abs(a.entries().trace())));
    const Eigen::VectorXd lambda = Eigen::Map<const Eigen::VectorXd>(ev.data(), n);
    const Eigen::MatrixXd rebuilt = dec.vectors * lambda.asDiagonal() * dec.vectors.transpose();
    EXPECT_LE((a.entries() - rebuilt).norm(), 1e-10 * n * a.entries().norm());
    EXPECT_EQ(eigenvalues(a).eigenvalues, ev);
  }
}

TEST(Moments, FromSpectrumExamples) {
  Spectrum ones{{1, 1, 1}, 3};
  EXPECT_EQ(moment_from_spectrum(ones, 5), 1.0);
  Spectrum pm{{-1, 1}, 2};
  EXPECT_EQ(moment_from_spectrum(pm, 1), 0.0);
  EXPECT_EQ(moment_from_spectrum(pm, 2), 1.0);
  EXPECT_THROW(moment_from_spectrum(pm, 0), ArgumentError);
}

TEST(Moments, FromTraceExamples) {
  const auto id = scaled_matrix(Eigen::MatrixXd::Identity(5, 5));
  for (int h = 1; h <= 8; ++h) EXPECT_DOUBLE_EQ(moment_from_trace(id, h), 1.0);
  const auto a = scale(realize(LinkFunction::wigner(), Distribution::Gaussian, 12, 3));
  EXPECT_NEAR(moment_from_trace(a, 2), a.entries().squaredNorm() / 12, 1e-13);
  EXPECT_NEAR(moment_from_trace(a, 1), a.entries().trace() / 12, 1e-15);
  EXPECT_THROW(moment_from_trace(a, 9), ArgumentError);
  EXPECT_THROW(moment_from_trace(realize(LinkFunction::wigner(), Distribution::Gaussian, 3, 1), 2),
               StateError);
}

TEST(Moments, SpectrumAgreesWithTrace) {
  for (const auto& x : builtin_links()) {
    for (int n : {5, 20, 50}) {
      const auto a = scale(schur_product(realize(x, Distribution::Gaussian, n, 11),
                                         realize(LinkFunction::hankel(), Distribution::Uniform, n, 12)));
      const auto s = eigenvalues(a);
      for (int h = 1; h <= 6; ++h) {
        const double t = moment_from_trace(a, h);
        const double e = moment_from_spectrum(s, h);
        const double scale_ref = h % 2 ? moment_from_trace(a, h + 1) + 1.0 : std::abs(t);
        EXPECT_LE(std::abs(t - e), 1e-8 * scale_ref) << x.name() << " n=" << n << " h=" << h;
      }
    }
  }
}

TEST(Simulate, DeterministicAcrossThreads) {
  ProductSpec spec;
  spec.link_x = LinkFunction::toeplitz();
  spec.link_y = LinkFunction::hankel();
  spec.n = 40;
  spec.trials = 6;
  spec.master_seed = 17;
  SimulationOptions one, four;
  four.threads = 4;
  const auto a = simulate(spec, 6, one);
  const auto b = simulate(spec, 6, four);
  ASSERT_EQ(a.moments.size(), 6u);
  for (int h = 0; h < 6; ++h) {
    EXPECT_EQ(a.moments[h].mean, b.moments[h].mean);
    EXPECT_EQ(a.moments[h].variance, b.moments[h].variance);
  }
  EXPECT_EQ(a.per_trial, b.per_trial);
  const auto est = mc_moments(spec, 4, 2);
  EXPECT_EQ(est[3].mean, a.moments[3].mean);
  EXPECT_EQ(est[1].trials, 6);
  EXPECT_DOUBLE_EQ(est[1].std_error, std::sqrt(est[1].variance / 6));
  spec.trials = 1;
  EXPECT_THROW(mc_moments(spec, 4), ArgumentError);
  EXPECT_THROW(simulate(spec, 9), ArgumentError);
}

TEST(Simulate, SharedInputsSmokeTest) {
  ProductSpec spec;
  spec.link_x = spec.link_y = LinkFunction::toeplitz();
  spec.dist_x = spec.dist_y = Distribution::Rademacher;
  spec.n = 30;
  spec.trials = 3;
  spec.shared_inputs = true;
  // Every entry of Z is 1/sqrt(n), so beta_2 = (1/n) * n^2 * (1/n) = 1.
  const auto r = simulate(spec, 2);
  EXPECT_NEAR(r.moments[1].mean, 1.0, 1e-12);
  EXPECT_NEAR(r.moments[1].variance, 0.0, 1e-20);
}

TEST(Simulate, KeepsSpectraOnRequest) {
  ProductSpec spec;
  spec.n = 2;
  spec.trials = 2;
  SimulationOptions opts;
  opts.keep_spectra = true;
  const auto r = simulate(spec, 2, opts);
  ASSERT_EQ(r.spectra.size(), 2u);
  EXPECT_EQ(r.spectra[0].eigenvalues.size(), 2u);
}

TEST(Summarize, UnbiasedVariance) {
  const double v[] = {1, 2, 3, 4};
  const auto e = summarize(4, 10, v);
  EXPECT_DOUBLE_EQ(e.mean, 2.5);
  EXPECT_DOUBLE_EQ(e.variance, 5.0 / 3.0);
  EXPECT_DOUBLE_EQ(e.std_error, std::sqrt(5.0 / 12.0));
  EXPECT_EQ(e.h, 4);
  EXPECT_EQ(e.n, 10);
}

TEST(Esd, StepFunction) {
  const Esd esd({1.0, -1.0, 1.0});
  EXPECT_EQ(esd.cdf(-2), 0.0);
  EXPECT_DOUBLE_EQ(esd.cdf(-1), 1.0 / 3);
  EXPECT_DOUBLE_EQ(esd.cdf_left(1), 1.0 / 3);
  EXPECT_EQ(esd.cdf(1), 1.0);
  EXPECT_EQ(esd.cdf(1e300), 1.0);
}

TEST(Ks, PointMassExamples) {
  const auto point_mass = [](double x) { return x >= 0 ? 1.0 : 0.0; };
  EXPECT_EQ(ks_distance(Esd({0.0}), point_mass), 0.0);
  EXPECT_DOUBLE_EQ(ks_distance(Esd({-1.0, 1.0}), point_mass), 0.5);
}

TEST(Ks, QuantileGridAgainstSemicircle) {
  // Points at the (i - 1/2)/N quantiles sit 1/(2N) from the CDF.
  const int n = 200;
  std::vector<double> q;
  for (int i = 1; i <= n; ++i) {
    const double target = (i - 0.5) / n;
    double lo = -2, hi = 2;
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      (semicircle_cdf(mid) < target ? lo : hi) = mid;
    }
    q.push_back(0.5 * (lo + hi));
  }
  EXPECT_NEAR(ks_distance(Esd(q), semicircle_cdf), 0.5 / n, 1e-9);
}

TEST(Histogram, Examples) {
  const auto one = histogram(Esd({0.0}), 1, -1, 1);
  ASSERT_EQ(one.size(), 1u);
  EXPECT_DOUBLE_EQ(one[0].center, 0.0);
  EXPECT_DOUBLE_EQ(one[0].density, 0.5);
  std::vector<double> grid;
  for (int i = 0; i < 100; ++i) grid.push_back(-1 + (i + 0.5) / 50.0);
  for (const auto& b : histogram(Esd(grid), 10, -1, 1)) EXPECT_DOUBLE_EQ(b.density, 0.5);
  const auto edge = histogram(Esd({1.0, 5.0}), 2, -1, 1);
  EXPECT_DOUBLE_EQ(edge[1].density, 0.5);
  EXPECT_DOUBLE_EQ(edge[0].density, 0.0);
  EXPECT_THROW(histogram(Esd({0.0}), 0, -1, 1), ArgumentError);
  EXPECT_THROW(histogram(Esd({0.0}), 3, 1, -1), ArgumentError);
}

}  // namespace
}  // namespace shp
