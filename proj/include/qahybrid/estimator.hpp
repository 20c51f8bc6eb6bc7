/*
 *  Copyright (C) 2026 The qahybrid authors
 *  This file is part of qahybrid - hybrid quantum/classical accelerometer estimation
 *
 *  SPDX-License-Identifier: Apache-2.0
 *  See the file LICENSE.txt for more information.
 */
#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string_view>

namespace qahybrid
{

/// Auxiliary sensitivity coefficients beyond bias and scale factor
enum class Coefficient : std::size_t
{
  EtaPrime = 0, ///< first-order filter term, s
  EtaDoublePrime, ///< second-order filter term, s^2
  EtaX, ///< cross-axis x
  EtaY, ///< cross-axis y
  VelocityX, ///< atomic launch velocity x, m/s
  VelocityY, ///< atomic launch velocity y, m/s
};

inline constexpr std::size_t kNumCoefficients = 6;

inline constexpr std::array<std::string_view, kNumCoefficients> kCoefficientNames = {
    "eta_prime", "eta_dprime", "eta_x", "eta_y", "v_x0", "v_y0"};

std::optional<Coefficient> CoefficientFromName(std::string_view name);

inline std::string_view Name(Coefficient c)
{
  return kCoefficientNames[static_cast<std::size_t>(c)];
}

/*!
 * \brief One interferometer cycle as seen by the estimators
 */
struct CycleInputs
{
  double P{0}; ///< measured transition probability
  double phi_control{0}; ///< rad
  double a_ca{0}; ///< kernel-weighted CA vertical reading, m/s^2
  double a_prime{0}; ///< m/s^3
  double a_dprime{0}; ///< m/s^4
  double a_x{0};
  double a_y{0};
  double omega_x{0}; ///< rad/s
  double omega_y{0};
  double contrast{std::nan("")}; ///< per-cycle contrast model, NaN when unavailable

  bool Finite() const;
};

/// Value multiplying a coefficient in the corrected classical acceleration
inline double Regressor(const CycleInputs& in, Coefficient c)
{
  switch (c)
  {
    case Coefficient::EtaPrime:
      return in.a_prime;
    case Coefficient::EtaDoublePrime:
      return in.a_dprime;
    case Coefficient::EtaX:
      return in.a_x;
    case Coefficient::EtaY:
      return in.a_y;
    case Coefficient::VelocityX:
      return 2 * in.omega_y;
    case Coefficient::VelocityY:
      return -2 * in.omega_x;
  }
  return 0;
}

enum class CoefficientMode
{
  Off, ///< contributes nothing
  Fixed, ///< applied at its initial value
  Estimated, ///< applied and updated
};

/*!
 * \brief Estimates shared by both hybridization algorithms
 */
struct EstimatorState
{
  double b_hat{0};
  double eta_hat{1};
  std::array<double, kNumCoefficients> theta{};
  std::array<CoefficientMode, kNumCoefficients> mode{};

  double var_bias{0}; ///< running mean of D^2 (Algo II only)
  double var_scale{0}; ///< running mean of a_CA^2 (Algo I) or D'^2 (Algo II)
  std::array<double, kNumCoefficients> var_theta{};
  long var_count{0}; ///< samples folded into the running means

  long dropped_count{0};
  long update_count{0};

  double& Theta(Coefficient c) { return theta[static_cast<std::size_t>(c)]; }
  double Theta(Coefficient c) const { return theta[static_cast<std::size_t>(c)]; }
  CoefficientMode Mode(Coefficient c) const { return mode[static_cast<std::size_t>(c)]; }
  bool Applied(Coefficient c) const { return Mode(c) != CoefficientMode::Off; }
  bool Estimated(Coefficient c) const { return Mode(c) == CoefficientMode::Estimated; }
};

/// eta_hat a_CA + b_hat + applied coefficient terms
double CorrectedClassical(const EstimatorState& state, const CycleInputs& in);

} // namespace qahybrid
