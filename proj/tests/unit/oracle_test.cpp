#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "brute_force.hpp"
#include "shp/errors.hpp"
#include "shp/oracle.hpp"

namespace shp {
namespace {

TEST(Semicircle, CatalanMoments) {
  const auto m = semicircle_moments(30);
  EXPECT_EQ(m.source, MomentSource::Semicircle);
  EXPECT_EQ(m.max_order(), 30);
  EXPECT_EQ(m.at(1), 0.0);
  EXPECT_EQ(m.at(3), 0.0);
  EXPECT_EQ(m.at(2), 1.0);
  EXPECT_EQ(m.at(4), 2.0);
  EXPECT_EQ(m.at(6), 5.0);
  EXPECT_EQ(m.at(8), 14.0);
  EXPECT_EQ(m.at(10), 42.0);
  EXPECT_EQ(m.exact[29], "9694845");
  EXPECT_THROW(semicircle_moments(31), ArgumentError);
}

TEST(Semicircle, CatalanNumberRecurrence) {
  unsigned long long prev = 1;
  EXPECT_EQ(catalan_number(0), 1u);
  for (int k = 1; k <= 30; ++k) {
    const auto c = catalan_number(k);
    EXPECT_EQ(c * static_cast<unsigned long long>(k + 1), prev * 2 * (2 * k - 1)) << k;
    prev = c;
  }
  for (int k = 1; k <= 10; ++k) EXPECT_EQ(catalan_number(k), testing::catalan_closed_form(k));
}

std::map<Word, double> wigner_table(int h) {
  std::map<Word, double> t;
  for (const auto& w : enumerate_pair_matched(h)) t[w] = is_catalan(w) ? 1.0 : 0.0;
  return t;
}

TEST(Assemble, WignerTableGivesCatalan) {
  for (int k = 1; k <= 6; ++k) {
    EXPECT_EQ(assemble_moments(wigner_table(2 * k), 2 * k), static_cast<double>(catalan_number(k)));
  }
}

TEST(Assemble, ToeplitzAndCirculantTables) {
  const std::map<Word, double> t4 = {
      {Word::parse("aabb"), 1.0}, {Word::parse("abab"), 2.0 / 3.0}, {Word::parse("abba"), 1.0}};
  EXPECT_NEAR(assemble_moments(t4, 4), 8.0 / 3.0, 1e-15);
  std::map<Word, double> sc;
  for (const auto& w : enumerate_pair_matched(6)) sc[w] = 1.0;
  EXPECT_EQ(assemble_moments(sc, 6), 15.0);
}

TEST(Assemble, MissingWordIsNamed) {
  std::map<Word, double> t = wigner_table(4);
  t.erase(Word::parse("abab"));
  try {
    assemble_moments(t, 4);
    FAIL();
  } catch (const ArgumentError& e) {
    EXPECT_NE(std::string(e.what()).find("abab"), std::string::npos);
  }
}

TEST(Assemble, JointTables) {
  std::map<std::pair<Word, Word>, double> diag;
  for (const auto& w : enumerate_pair_matched(4)) diag[{w, w}] = is_catalan(w) ? 1.0 : 0.0;
  EXPECT_EQ(assemble_moments(diag, 4, true), 2.0);
  EXPECT_THROW(assemble_moments(diag, 4, false), ArgumentError);
  auto full = diag;
  for (const auto& w : enumerate_pair_matched(4)) {
    for (const auto& v : enumerate_pair_matched(4)) full.try_emplace({w, v}, 0.25);
  }
  EXPECT_EQ(assemble_moments(full, 4, false), 2.0 + 6 * 0.25);
}

TEST(MomentBound, Examples) {
  EXPECT_EQ(moment_bound(4, 1), 3.0);
  EXPECT_EQ(moment_bound(6, 2), 120.0);
  EXPECT_EQ(moment_bound(2, 1), 1.0);
  EXPECT_EQ(moment_bound_exact(6, 2), "120");
  EXPECT_THROW(moment_bound(3, 1), ArgumentError);
  EXPECT_THROW(moment_bound(4, 0), ArgumentError);
  // 29!! * 2^15 fits comfortably in 128 bits.
  EXPECT_EQ(moment_bound_exact(30, 2), "202843204931727360000");
}

TEST(MomentBound, DominatesCatalan) {
  for (int k = 1; k <= 15; ++k) {
    EXPECT_GE(moment_bound(2 * k, 1), static_cast<double>(catalan_number(k)));
  }
}

TEST(Carleman, Semicircle) {
  const auto r = carleman_diagnostic(semicircle_moments(20), 10);
  ASSERT_EQ(r.terms.size(), 10u);
  EXPECT_DOUBLE_EQ(r.term_count_bound, 10 * std::pow(16796.0, -1.0 / 20));
  EXPECT_GE(r.partial_sums.back(), r.term_count_bound);
  EXPECT_EQ(r.trend, "diverging");
}

TEST(Carleman, ConstantSequence) {
  MomentSequence ones;
  ones.values.assign(20, 1.0);
  const auto r = carleman_diagnostic(ones, 10);
  EXPECT_DOUBLE_EQ(r.partial_sums.back(), 10.0);
  EXPECT_EQ(r.trend, "diverging");
}

TEST(Carleman, FactorialSequenceIsBorderline) {
  // (2k)!^{-1/(2k)} ~ e / (2k): a harmonic tail, so the series still diverges.
  MomentSequence f;
  double fact = 1;
  for (int h = 1; h <= 40; ++h) {
    fact *= h;
    f.values.push_back(h % 2 ? 0.0 : fact);
  }
  const auto r = carleman_diagnostic(f, 20);
  EXPECT_GT(r.decay_exponent, 0.85);
  EXPECT_LT(r.decay_exponent, 1.0);
  EXPECT_EQ(r.trend, "diverging");
}

TEST(Carleman, SquaredFactorialIsSuspect) {
  MomentSequence f;
  double fact = 1;
  for (int h = 1; h <= 40; ++h) {
    fact *= h;
    f.values.push_back(h % 2 ? 0.0 : fact * fact);
  }
  const auto r = carleman_diagnostic(f, 20);
  EXPECT_GT(r.decay_exponent, 1.5);
  EXPECT_EQ(r.trend, "suspect");
}

TEST(Carleman, Errors) {
  MomentSequence zero;
  zero.values = {0.0, 0.0, 0.0, 0.0};
  EXPECT_THROW(carleman_diagnostic(zero, 2), ArgumentError);
  EXPECT_THROW(carleman_diagnostic(semicircle_moments(4), 3), ArgumentError);
}

TEST(HankelPsd, SemicircleAndCounterexample) {
  EXPECT_TRUE(hankel_psd(semicircle_moments(8)));
  MomentSequence bad;
  bad.values = {0.0, 1.0, 0.0, 0.5};  // beta_4 < beta_2^2
  EXPECT_FALSE(hankel_psd(bad));
}

TEST(SemicircleCdf, Values) {
  EXPECT_EQ(semicircle_cdf(-2), 0.0);
  EXPECT_NEAR(semicircle_cdf(0), 0.5, 1e-15);
  EXPECT_EQ(semicircle_cdf(2), 1.0);
  EXPECT_EQ(semicircle_cdf(-3), 0.0);
  EXPECT_EQ(semicircle_cdf(3), 1.0);
  EXPECT_NEAR(semicircle_density(0), 1.0 / std::numbers::pi, 1e-15);
  EXPECT_EQ(semicircle_density(2.5), 0.0);
}

TEST(SemicircleCdf, QuadratureMomentsMatchCatalan) {
  // Stieltjes sums against the CDF on a fine grid: sum x^h dF.
  const int steps = 400000;
  const auto beta = semicircle_moments(8);
  for (int h = 1; h <= 8; ++h) {
    double acc = 0;
    double prev = 0;
    for (int i = 1; i <= steps; ++i) {
      const double a = -2.0 + 4.0 * (i - 1) / steps;
      const double b = -2.0 + 4.0 * i / steps;
      const double f = semicircle_cdf(b);
      acc += std::pow(0.5 * (a + b), h) * (f - prev);
      prev = f;
    }
    EXPECT_NEAR(acc, beta.at(h), 1e-6) << "h=" << h;
  }
}

TEST(SemicircleCdf, DensityIsDerivative) {
  for (double x : {-1.9, -1.0, 0.3, 1.7}) {
    const double d = (semicircle_cdf(x + 1e-6) - semicircle_cdf(x - 1e-6)) / 2e-6;
    EXPECT_NEAR(d, semicircle_density(x), 1e-6);
  }
}

}  // namespace
}  // namespace shp
