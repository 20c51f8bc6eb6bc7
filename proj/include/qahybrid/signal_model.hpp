/*
 *  Copyright (C) 2026 The qahybrid authors
 *  This file is part of qahybrid - hybrid quantum/classical accelerometer estimation
 *
 *  SPDX-License-Identifier: Apache-2.0
 *  See the file LICENSE.txt for more information.
 */
#pragma once

#include <cmath>
#include <numbers>

namespace qahybrid
{

/// Effective Raman wave-vector for a counter-propagating transition at 780.241 nm
inline constexpr double kDefaultKeff = 1.610574e7;

/*!
 * \brief Interferometer geometry and readout parameters
 */
template<typename Scalar>
struct InterferometerConfig
{
  Scalar k_eff{kDefaultKeff}; ///< rad/m
  Scalar T{0.020}; ///< pulse separation, s
  Scalar Tc{0.1}; ///< cycle time, s
  Scalar C0{0.23}; ///< base contrast
  Scalar P0{0.5}; ///< fringe offset
  Scalar sigma_v{0}; ///< atomic rms velocity spread, m/s
  Scalar sigma_P{0}; ///< detection noise std

  bool Valid() const
  {
    return k_eff > 0 && T > 0 && Tc >= 2 * T && C0 > 0 && C0 <= 1 && P0 - C0 / 2 >= 0 &&
           P0 + C0 / 2 <= 1 && sigma_v >= 0 && sigma_P >= 0;
  }

  /// Phase per unit acceleration
  Scalar ScaleFactor() const { return k_eff * T * T; }
};

template<typename Scalar>
struct RotationState
{
  Scalar omega_x{0};
  Scalar omega_y{0};
  Scalar omega_z{0}; ///< carried along, unused by the model
  Scalar v_x0{0};
  Scalar v_y0{0};
};

using InterferometerConfigd = InterferometerConfig<double>;
using RotationStated = RotationState<double>;

template<typename Scalar>
Scalar InterferometerPhase(const InterferometerConfig<Scalar>& cfg, Scalar a, Scalar phi_control)
{
  return cfg.k_eff * cfg.T * cfg.T * a + phi_control;
}

template<typename Scalar>
Scalar CoriolisAcceleration(const RotationState<Scalar>& rot)
{
  return 2 * rot.v_x0 * rot.omega_y - 2 * rot.v_y0 * rot.omega_x;
}

template<typename Scalar>
Scalar RotationContrast(const InterferometerConfig<Scalar>& cfg, Scalar omega_x, Scalar omega_y)
{
  using std::exp;
  const Scalar kv = cfg.sigma_v * cfg.k_eff;
  const Scalar T2 = cfg.T * cfg.T;
  return cfg.C0 * exp(-2 * kv * kv * (omega_x * omega_x + omega_y * omega_y) * T2 * T2);
}

template<typename Scalar>
Scalar RotationContrast(const InterferometerConfig<Scalar>& cfg, const RotationState<Scalar>& rot)
{
  return RotationContrast(cfg, rot.omega_x, rot.omega_y);
}

/// No clamping to [0, 1]; large noise draws may leave the interval
template<typename Scalar>
Scalar TransitionProbability(const InterferometerConfig<Scalar>& cfg,
                             Scalar contrast,
                             Scalar phase,
                             Scalar detection_noise)
{
  using std::cos;
  return cfg.P0 - contrast / 2 * cos(phase) + detection_noise;
}

/// Acceleration per 2 pi of interferometer phase
template<typename Scalar>
Scalar FringeSpacing(const InterferometerConfig<Scalar>& cfg)
{
  return Scalar(2 * std::numbers::pi) / (cfg.k_eff * cfg.T * cfg.T);
}

} // namespace qahybrid
