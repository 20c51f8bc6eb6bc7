/*
 *  Copyright (C) 2026 The qahybrid authors
 *  This file is part of qahybrid - hybrid quantum/classical accelerometer estimation
 *
 *  SPDX-License-Identifier: Apache-2.0
 *  See the file LICENSE.txt for more information.
 */

#include "qahybrid/analysis.hpp"
#include "qahybrid/rng.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace qahybrid;

namespace
{
Eigen::VectorXd White(Eigen::Index n, double sigma, std::uint64_t seed, std::uint64_t ch = 0)
{
  RandomStream rs(seed, ch);
  Eigen::VectorXd x(n);
  for (Eigen::Index i = 0; i < n; ++i)
    x[i] = rs.Normal(sigma);
  return x;
}
} // namespace

TEST(Allan, ConstantSeries)
{
  const auto c = AllanDeviation(Eigen::VectorXd::Constant(1000, 3.7), 0.1);
  ASSERT_FALSE(c.taus.empty());
  for (double s : c.sigma)
    EXPECT_EQ(s, 0.0);
}

TEST(Allan, OctaveTausIncreasing)
{
  const auto c = AllanDeviation(White(1024, 1, 1), 0.1, 4);
  ASSERT_EQ(c.taus.size(), 9u); // 1 .. 256
  for (std::size_t i = 1; i < c.taus.size(); ++i)
    EXPECT_DOUBLE_EQ(c.taus[i], 2 * c.taus[i - 1]);
  EXPECT_DOUBLE_EQ(c.taus.front(), 0.1);
  EXPECT_EQ(c.counts.front(), 1023);
}

TEST(Allan, WhiteNoise)
{
  const Eigen::Index n = 200000;
  const double sigma0 = 2.5e-5;
  const auto x = White(n, sigma0, 7);
  const auto c = AllanDeviation(x, 0.1, 100);
  for (std::size_t i = 0; i < c.taus.size(); ++i)
  {
    const double m = c.taus[i] / 0.1;
    EXPECT_NEAR(c.sigma[i], sigma0 / std::sqrt(m), 0.1 * sigma0 / std::sqrt(m)) << "m " << m;
  }
}

TEST(Allan, LinearDrift)
{
  const double d = 3e-7;
  Eigen::VectorXd x(4096);
  for (Eigen::Index i = 0; i < x.size(); ++i)
    x[i] = d * static_cast<double>(i);
  const auto c = AllanDeviation(x, 1.0);
  for (std::size_t i = 0; i < c.taus.size(); ++i)
    EXPECT_NEAR(c.sigma[i], d * c.taus[i] / std::sqrt(2.0), 1e-8 * d * c.taus[i]);
}

TEST(Allan, SingleFactorMatchesCurve)
{
  const auto x = White(5000, 1, 3);
  const auto c = AllanDeviation(x, 1.0);
  EXPECT_DOUBLE_EQ(AllanDeviationAt(x, 8), c.sigma[3]);
  EXPECT_THROW(AllanDeviationAt(x, 0), AnalysisError);
  EXPECT_THROW(AllanDeviationAt(x, 2501), AnalysisError);
}

TEST(Allan, TooShort)
{
  EXPECT_THROW(AllanDeviation(Eigen::VectorXd::Zero(31), 0.1), AnalysisError);
  EXPECT_NO_THROW(AllanDeviation(Eigen::VectorXd::Zero(32), 0.1));
}

TEST(Allan, SelfConcatenationStationary)
{
  const Eigen::Index n = 50000;
  const auto x = White(n, 1.0, 11);
  Eigen::VectorXd xx(2 * n);
  xx << x, x;
  const auto a = AllanDeviation(x, 0.1, 100);
  const auto b = AllanDeviation(xx, 0.1, 200);
  ASSERT_EQ(a.taus.size(), b.taus.size());
  for (std::size_t i = 0; i < a.taus.size(); ++i)
  {
    // relative estimator spread of an overlapping deviation with n / m independent averages
    const double rel = 3 / std::sqrt(static_cast<double>(n) / (a.taus[i] / 0.1));
    EXPECT_NEAR(b.sigma[i] / a.sigma[i], 1.0, rel) << "tau " << a.taus[i];
  }
}

TEST(FitWhite, OwnModel)
{
  AllanCurve c;
  c.Tc = 0.1;
  const double A = 3e-5;
  for (double tau = 0.1; tau < 1000; tau *= 2)
  {
    c.taus.push_back(tau);
    c.sigma.push_back(A / std::sqrt(tau));
  }
  EXPECT_NEAR(FitWhiteLevel(c, 1.0), A / std::sqrt(0.1), 1e-15);
  EXPECT_NEAR(FitWhiteLevel(c, 0.0, 1.0), A / std::sqrt(0.1), 1e-15);
  EXPECT_NEAR(LogLogSlope(c, 1.0), -0.5, 1e-12);
}

TEST(FitWhite, ScaleEquivariant)
{
  const auto x = White(100000, 1e-4, 5);
  const double base = WhiteLevelOfSeries(x, 0.1, 1.0);
  for (double scale : {1e-3, 7.0, 1e4})
    EXPECT_NEAR(WhiteLevelOfSeries(x * scale, 0.1, 1.0), scale * base, 1e-12 * scale * base);
}

TEST(FitWhite, WhiteSeriesLevel)
{
  const auto x = White(100000, 4.9e-5, 9);
  EXPECT_NEAR(WhiteLevelOfSeries(x, 0.1, 0.5), 4.9e-5, 0.05 * 4.9e-5);
}

TEST(FitWhite, InsufficientPoints)
{
  AllanCurve c;
  c.Tc = 1;
  c.taus = {1, 2, 4, 8};
  c.sigma = {1, 0.7, 0.5, 0.35};
  EXPECT_THROW(FitWhiteLevel(c, 3.0), AnalysisError);
  EXPECT_NO_THROW(FitWhiteLevel(c, 2.0));
}

TEST(FitWhite, SkipsNaN)
{
  auto x = White(10000, 1.0, 2);
  const double clean = WhiteLevelOfSeries(x, 1.0, 1.0);
  Eigen::VectorXd withNan(10001);
  withNan << x.head(5000), std::nan(""), x.tail(5000);
  EXPECT_DOUBLE_EQ(WhiteLevelOfSeries(withNan, 1.0, 1.0), clean);
}

TEST(ResidualStd, IdenticalSeries)
{
  const auto x = White(1000, 1.0, 1);
  EXPECT_EQ(ResidualStd(x, x), 0.0);
}

TEST(ResidualStd, VarianceAddition)
{
  const Eigen::Index n = 100000;
  const auto x = White(n, 3e-5, 1, 0);
  const auto y = White(n, 4e-5, 1, 1);
  EXPECT_NEAR(ResidualStd(x, y), 5e-5, 0.05 * 5e-5);
}

TEST(ResidualStd, NaNPairsExcludedAndLengthChecked)
{
  Eigen::VectorXd a(5), b(5);
  a << 1, 2, std::nan(""), 4, 5;
  b << 0, 0, 0, 0, std::nan("");
  // differences 1, 2, 4
  EXPECT_NEAR(ResidualStd(a, b), std::sqrt(7.0 / 3.0), 1e-15);
  EXPECT_THROW(ResidualStd(a, Eigen::VectorXd::Zero(4)), AnalysisError);
}

TEST(Quadrature, Budget)
{
  const double total = std::hypot(4.9e-5, 3.0e-5);
  EXPECT_NEAR(total, 5.75e-5, 5e-8);
  EXPECT_NEAR(QuadratureSubtract(total, 3.0e-5), 4.9e-5, 1e-18);
  EXPECT_EQ(QuadratureSubtract(5.75e-5, 0.0), 5.75e-5);
  EXPECT_EQ(QuadratureSubtract(5.75e-5, 5.75e-5), 0.0);
  EXPECT_THROW(QuadratureSubtract(3e-5, 4.9e-5), AnalysisError);
}

TEST(Quadrature, ModelFit)
{
  std::vector<double> x, y;
  for (double s : {0.0, 0.004, 0.008, 0.012, 0.016, 0.024, 0.032})
  {
    x.push_back(s);
    y.push_back(std::sqrt(1.3e-5 * s * s + 4.9e-5 * 4.9e-5));
  }
  const auto fit = FitQuadratureModel(x, y);
  EXPECT_NEAR(fit.k, 1.3e-5, 1e-15);
  EXPECT_NEAR(fit.c2, 4.9e-5 * 4.9e-5, 1e-20);
  EXPECT_NEAR(fit.r2, 1.0, 1e-12);
  EXPECT_THROW(FitQuadratureModel({1, 2}, {1, 2}), AnalysisError);
}

TEST(Convergence, Classification)
{
  const double fringe = 9.753e-4;
  EXPECT_EQ(ClassifyConvergence(Eigen::VectorXd::Constant(400, 2e-5), 2e-5, fringe), Convergence::Converged);
  Eigen::VectorXd drift(400);
  for (Eigen::Index i = 0; i < drift.size(); ++i)
    drift[i] = 2e-5 + 1.5 * fringe * static_cast<double>(i) / 399.0;
  EXPECT_EQ(ClassifyConvergence(drift, 2e-5, fringe), Convergence::Diverged);
  // a one-fringe slip
  Eigen::VectorXd slip = Eigen::VectorXd::Constant(400, 2e-5);
  slip.tail(200).array() += fringe;
  EXPECT_EQ(ClassifyConvergence(slip, 2e-5, fringe), Convergence::Diverged);
  // a NaN trace cannot be converged
  Eigen::VectorXd bad = Eigen::VectorXd::Constant(400, std::nan(""));
  EXPECT_EQ(ClassifyConvergence(bad, 2e-5, fringe), Convergence::Diverged);
  // just inside the quarter fringe
  EXPECT_EQ(ClassifyConvergence(Eigen::VectorXd::Constant(400, 2e-5 + 0.24 * fringe), 2e-5, fringe),
            Convergence::Converged);
}

TEST(Statistics, MedianAndMad)
{
  EXPECT_EQ(Median({3, 1, 2}), 2.0);
  EXPECT_EQ(Median({4, 1, 3, 2}), 2.5);
  EXPECT_TRUE(std::isnan(Median({})));
  EXPECT_EQ(MedianAbsDeviation({1, 2, 3, 4, 100}), 1.0);
}
