/*
 *  Copyright (C) 2026 The qahybrid authors
 *  This file is part of qahybrid - hybrid quantum/classical accelerometer estimation
 *
 *  SPDX-License-Identifier: Apache-2.0
 *  See the file LICENSE.txt for more information.
 */

#include "qahybrid/kernels.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <functional>

using namespace qahybrid;

namespace
{
SensorStream StreamOf(double rate, double duration, const std::function<double(double)>& f)
{
  const auto n = static_cast<Eigen::Index>(std::llround(duration * rate));
  SensorStream s;
  s.rate = rate;
  s.Resize(n);
  for (Eigen::Index i = 0; i < n; ++i)
  {
    const double t = static_cast<double>(i) / rate;
    s.t[i] = t;
    s.az[i] = f(t);
  }
  s.ax = s.az;
  s.ay.setZero();
  s.wx.setZero();
  s.wy = -s.az;
  s.wz.setZero();
  return s;
}

struct Grid
{
  double T;
  double rate;
};
const Grid kGrids[] = {{0.020, 1000}, {0.002, 1000}, {0.010, 1000}, {0.040, 1000}, {0.020, 10000}, {0.005, 4000}};
} // namespace

TEST(Kernels, Shape)
{
  const auto k = BuildKernels(0.020, 1000);
  EXPECT_EQ(k.half, 20);
  EXPECT_EQ(k.Taps(), 41);
  EXPECT_EQ(k.g[0], 0.0);
  EXPECT_EQ(k.g[40], 0.0);
  EXPECT_EQ(k.g.maxCoeff(), k.g[20]);
}

TEST(Kernels, NormalizationAndAnnihilation)
{
  for (const auto& grid : kGrids)
  {
    const auto k = BuildKernels(grid.T, grid.rate);
    EXPECT_NEAR(k.g.sum(), 1.0, 1e-12);
    // relative to the kernel magnitude
    EXPECT_NEAR(k.g1.sum() / k.g1.cwiseAbs().sum(), 0.0, 1e-12);
    EXPECT_NEAR(k.g2.sum() / k.g2.cwiseAbs().sum(), 0.0, 1e-12);
    const Eigen::Index m = k.Taps() - 1;
    for (Eigen::Index j = 0; j <= m; ++j)
    {
      EXPECT_NEAR(k.g[j], k.g[m - j], 1e-15);
      EXPECT_NEAR(k.g1[j], -k.g1[m - j], 1e-12 * k.g1.cwiseAbs().maxCoeff());
      EXPECT_NEAR(k.g2[j], k.g2[m - j], 1e-12 * k.g2.cwiseAbs().maxCoeff());
    }
  }
}

TEST(Kernels, SecondDerivativeKernelIsThreeSpikes)
{
  const double T = 0.020;
  const auto k = BuildKernels(T, 1000);
  // the discrete second difference of the triangle sits at start, apex and end
  const double h = 1e-3;
  const double scale = 1 / (T * T);
  // smeared over the neighbouring samples at the endpoints, so compare sums over small neighbourhoods
  EXPECT_NEAR(k.g2.segment(0, 2).sum(), scale, 1e-9 * scale);
  EXPECT_NEAR(k.g2.segment(19, 3).sum(), -2 * scale, 1e-9 * scale);
  EXPECT_NEAR(k.g2.segment(39, 2).sum(), scale, 1e-9 * scale);
  EXPECT_NEAR(k.g2.segment(3, 15).cwiseAbs().maxCoeff(), 0.0, 1e-9 * scale);
  (void)h;
}

TEST(Kernels, ConstantInput)
{
  const auto k = BuildKernels(0.020, 1000);
  const auto s = StreamOf(1000, 1.0, [](double) { return 0.37; });
  const auto c = CycleReduce(s, k, 100);
  EXPECT_NEAR(c.a_ca, 0.37, 1e-14);
  EXPECT_NEAR(c.a_prime, 0.0, 1e-10);
  EXPECT_NEAR(c.a_dprime, 0.0, 1e-8);
  EXPECT_NEAR(c.a_x, 0.37, 1e-14);
  EXPECT_NEAR(c.omega_y, -0.37, 1e-14);
}

TEST(Kernels, ZeroStream)
{
  const auto k = BuildKernels(0.020, 1000);
  const auto s = StreamOf(1000, 1.0, [](double) { return 0.0; });
  const auto c = CycleReduceAt(s, k, 0.3);
  EXPECT_EQ(c.a_ca, 0.0);
  EXPECT_EQ(c.a_prime, 0.0);
  EXPECT_EQ(c.a_dprime, 0.0);
  EXPECT_EQ(c.omega_x, 0.0);
}

TEST(Kernels, LinearRamp)
{
  const double T = 0.020, beta = 0.8, start = 0.25;
  const auto k = BuildKernels(T, 1000);
  const auto s = StreamOf(1000, 1.0, [&](double t) { return beta * (t - T - start); });
  const auto c = CycleReduceAt(s, k, start);
  EXPECT_NEAR(c.a_ca, 0.0, 1e-14);
  EXPECT_NEAR(c.a_prime, beta, 1e-12);
  EXPECT_NEAR(c.a_dprime, 0.0, 1e-9);
}

TEST(Kernels, Quadratic)
{
  const double T = 0.020, gamma = 3.1, start = 0.25;
  const auto k = BuildKernels(T, 1000);
  const auto s = StreamOf(1000, 1.0, [&](double t) { return 0.5 * gamma * (t - start) * (t - start); });
  const auto c = CycleReduceAt(s, k, start);
  EXPECT_NEAR(c.a_dprime, gamma, 1e-9);
  // first derivative at the window centre
  EXPECT_NEAR(c.a_prime, gamma * T, 1e-12);
}

TEST(Kernels, CubicSecondDerivative)
{
  const double T = 0.020, start = 0.25;
  for (double rate : {1000.0, 2000.0, 4000.0})
  {
    const auto k = BuildKernels(T, rate);
    const auto s = StreamOf(rate, 1.0, [&](double t) {
      const double u = t - start;
      return 0.3 + 2 * u - 5 * u * u + 40 * u * u * u;
    });
    const auto c = CycleReduceAt(s, k, start);
    // second derivative at the centre: -10 + 240 T
    const double exact = -10 + 240 * T;
    const double h = 1 / rate;
    EXPECT_NEAR(c.a_dprime, exact, 240 * h * h / T + 1e-7) << "rate " << rate;
  }
}

TEST(Kernels, Linearity)
{
  const auto k = BuildKernels(0.020, 1000);
  const auto x = StreamOf(1000, 1.0, [](double t) { return std::sin(17 * t) + t * t; });
  const auto y = StreamOf(1000, 1.0, [](double t) { return std::cos(41 * t) - 0.2 * t; });
  const double alpha = 1.7, beta = -0.4;
  const auto z = StreamOf(1000, 1.0, [&](double t) {
    return alpha * (std::sin(17 * t) + t * t) + beta * (std::cos(41 * t) - 0.2 * t);
  });
  for (Eigen::Index start : {0, 137, 500})
  {
    const auto cx = CycleReduce(x, k, start), cy = CycleReduce(y, k, start), cz = CycleReduce(z, k, start);
    EXPECT_NEAR(cz.a_ca, alpha * cx.a_ca + beta * cy.a_ca, 1e-13);
    EXPECT_NEAR(cz.a_prime, alpha * cx.a_prime + beta * cy.a_prime, 1e-11);
    EXPECT_NEAR(cz.a_dprime, alpha * cx.a_dprime + beta * cy.a_dprime, 1e-8);
    EXPECT_NEAR(cz.omega_y, alpha * cx.omega_y + beta * cy.omega_y, 1e-13);
  }
}

TEST(Kernels, SecondOrderConvergence)
{
  // continuous triangle average of sin(w t) over [t0, t0 + 2T]
  const double T = 0.020, w = 60.0, t0 = 0.2;
  const double centre = t0 + T;
  const double sinc = std::sin(w * T / 2) / (w * T / 2);
  const double exact = std::sin(w * centre) * sinc * sinc;
  double prevErr = 0;
  for (double rate : {1000.0, 2000.0, 4000.0})
  {
    const auto k = BuildKernels(T, rate);
    const auto s = StreamOf(rate, 0.5, [&](double t) { return std::sin(w * t); });
    const double err = std::abs(CycleReduceAt(s, k, t0).a_ca - exact);
    if (prevErr > 0)
      EXPECT_NEAR(prevErr / err, 4.0, 0.2) << "rate " << rate;
    prevErr = err;
  }
}

TEST(Kernels, Errors)
{
  EXPECT_THROW(BuildKernels(0.001, 1000), KernelError);
  EXPECT_THROW(BuildKernels(0.0205, 1000), KernelError);
  EXPECT_THROW(BuildKernels(-1, 1000), KernelError);
  EXPECT_NO_THROW(BuildKernels(0.002, 1000));
  const auto k = BuildKernels(0.020, 1000);
  const auto s = StreamOf(1000, 0.1, [](double) { return 0.0; });
  EXPECT_THROW(CycleReduce(s, k, 70), KernelError);
  EXPECT_THROW(CycleReduce(s, k, -1), KernelError);
  EXPECT_NO_THROW(CycleReduce(s, k, 59));
}
