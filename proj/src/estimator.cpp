/*
 *  Copyright (C) 2026 The qahybrid authors
 *  This file is part of qahybrid - hybrid quantum/classical accelerometer estimation
 *
 *  SPDX-License-Identifier: Apache-2.0
 *  See the file LICENSE.txt for more information.
 */

#include "qahybrid/estimator.hpp"

using namespace qahybrid;

std::optional<Coefficient> qahybrid::CoefficientFromName(std::string_view name)
{
  for (std::size_t i = 0; i < kNumCoefficients; ++i)
  {
    if (kCoefficientNames[i] == name)
      return static_cast<Coefficient>(i);
  }
  return std::nullopt;
}

bool CycleInputs::Finite() const
{
  // contrast may legitimately be NaN (not provided)
  return std::isfinite(P) && std::isfinite(phi_control) && std::isfinite(a_ca) && std::isfinite(a_prime) &&
         std::isfinite(a_dprime) && std::isfinite(a_x) && std::isfinite(a_y) && std::isfinite(omega_x) &&
         std::isfinite(omega_y);
}

double qahybrid::CorrectedClassical(const EstimatorState& state, const CycleInputs& in)
{
  double a = state.eta_hat * in.a_ca + state.b_hat;
  for (std::size_t i = 0; i < kNumCoefficients; ++i)
  {
    if (state.mode[i] != CoefficientMode::Off)
      a += state.theta[i] * Regressor(in, static_cast<Coefficient>(i));
  }
  return a;
}
