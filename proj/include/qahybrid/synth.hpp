/*
 *  Copyright (C) 2026 The qahybrid authors
 *  This file is part of qahybrid - hybrid quantum/classical accelerometer estimation
 *
 *  SPDX-License-Identifier: Apache-2.0
 *  See the file LICENSE.txt for more information.
 */
#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include <Eigen/Core>

namespace qahybrid
{

/*!
 * \brief Ground truth of the classical sensor and of the platform motion
 */
template<typename Scalar>
struct TruthParams
{
  Scalar sigma_a{0}; ///< vertical acceleration std, m/s^2
  Scalar sigma_ax{0}; ///< transverse acceleration stds, m/s^2
  Scalar sigma_ay{0};
  Scalar b{0}; ///< CA bias, m/s^2
  Scalar bias_drift{0}; ///< m/s^3
  Scalar eta{1}; ///< CA scale factor
  Scalar sigma_delta_a{0}; ///< uncorrelated CA noise std, m/s^2
  Scalar eta_x{0};
  Scalar eta_y{0};
  Scalar eta_prime{0}; ///< s
  Scalar eta_dprime{0}; ///< s^2
  Scalar sigma_omega_x{0}; ///< rad/s
  Scalar sigma_omega_y{0};
  Scalar sigma_omega_z{0};
  Scalar v_x0{0}; ///< m/s
  Scalar v_y0{0};

  // Step change of eta_x, emulating a manoeuvre-induced misalignment
  Scalar eta_x_step_time{-1}; ///< s, negative disables
  Scalar eta_x_step_factor{1};

  bool Valid() const;

  Scalar BiasAt(Scalar t) const { return b + bias_drift * t; }
  Scalar EtaXAt(Scalar t) const
  {
    return (eta_x_step_time >= 0 && t >= eta_x_step_time) ? eta_x * eta_x_step_factor : eta_x;
  }
};

template<>
bool TruthParams<double>::Valid() const;

using TruthParamsd = TruthParams<double>;

/*!
 * \brief Uniformly sampled 3-axis acceleration and angular rate record
 */
struct SensorStream
{
  double rate{1000};
  Eigen::VectorXd t;
  Eigen::VectorXd ax, ay, az;
  Eigen::VectorXd wx, wy, wz;

  Eigen::Index Size() const { return t.size(); }
  void Resize(Eigen::Index n);
};

/// Constant horizontal acceleration offset over a time window
struct Turn
{
  double start{0}; ///< s
  double duration{0}; ///< s
  double accel_x{0}; ///< m/s^2
};

/*!
 * \brief Spectral shaping of generated streams
 *
 * A band of zero keeps a channel white. Otherwise white draws go through a
 * Butterworth low-pass at that corner and are rescaled to the requested std.
 */
struct StreamShape
{
  double band_z{0}; ///< Hz
  double band_xy{0};
  double band_omega{0};
  std::vector<Turn> turns;
};

class SynthError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

SensorStream GenTruthStream(const TruthParamsd& params, double duration, double rate, std::uint64_t seed);

SensorStream GenTruthStream(const TruthParamsd& params,
                            double duration,
                            double rate,
                            std::uint64_t seed,
                            const StreamShape& shape);

/// Bilinear discretization of 1 / (1 + s/(q w0) + s^2/w0^2), started at rest
Eigen::VectorXd LowpassSeries(const Eigen::VectorXd& x, double omega0, double q, double rate);

/// Filters the a_z channel, others pass through
SensorStream SecondOrderLowpass(const SensorStream& stream, double omega0, double q);

/// Filter corner and quality matching 1 / (1 + eta' s + eta'' s^2)
void FilterFromCoefficients(double eta_prime, double eta_dprime, double& omega0, double& q);

struct CaModelOptions
{
  bool filter{true};
  std::uint64_t seed{0};
};

/*!
 * \brief Classical accelerometer reading of a truth stream
 *
 * a_z becomes (H[a_z] - b(t)) / eta + delta_a, transverse channels are copied.
 */
SensorStream ApplyCaModel(const SensorStream& truth, const TruthParamsd& params, const CaModelOptions& opts);

} // namespace qahybrid
