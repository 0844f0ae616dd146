// SPDX-License-Identifier: Apache-2.0
//
// Copyright 2026 The hcn-sim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Downlink link budget: power-law path loss with optional Rayleigh power
// fading, interference-limited SIR and Shannon rate. Thermal noise is not
// modelled.

#include "hcn/types.hpp"

#include <Eigen/Core>

#include <cmath>
#include <random>
#include <stdexcept>

namespace hcn {

/// SIR reported when the interference set is empty (about 90 dB).
inline constexpr double kSirCap = 1e9;

template <typename Scalar>
struct LinkGain {
    Scalar path_loss_exponent = Scalar(3.5);
    Scalar fading = Scalar(1);
    Scalar distance = Scalar(1);
};

template <typename Scalar>
Scalar path_gain(const LinkGain<Scalar>& g)
{
    if (!(g.distance > Scalar(0)))
        throw std::domain_error("path loss is singular at zero distance");
    return g.fading * std::pow(g.distance, -g.path_loss_exponent);
}

/// p_tx * h * r^-alpha
template <typename Scalar>
Scalar received_power(Scalar p_tx, const LinkGain<Scalar>& g)
{
    return p_tx * path_gain(g);
}

/// B log2(1 + sir), bits per second.
template <typename Scalar>
Scalar user_rate(Scalar bandwidth, Scalar sir)
{
    return bandwidth * std::log2(Scalar(1) + sir);
}

/// Users x stations matrix of Euclidean distances.
template <typename DerivedU, typename DerivedB>
Eigen::Matrix<typename DerivedU::Scalar, Eigen::Dynamic, Eigen::Dynamic>
distance_matrix(const Eigen::MatrixBase<DerivedU>& users, const Eigen::MatrixBase<DerivedB>& stations)
{
    using Scalar = typename DerivedU::Scalar;
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> d(users.cols(), stations.cols());
    for (Eigen::Index b = 0; b < stations.cols(); ++b)
        d.col(b) = (users.colwise() - stations.col(b)).colwise().norm().transpose();
    return d;
}

/// Elementwise h * r^-alpha. Throws std::domain_error if any distance is zero.
template <typename DerivedD, typename DerivedH>
Eigen::Matrix<typename DerivedD::Scalar, Eigen::Dynamic, Eigen::Dynamic>
link_gain_matrix(const Eigen::MatrixBase<DerivedD>& distance, const Eigen::MatrixBase<DerivedH>& fading,
                 typename DerivedD::Scalar path_loss_exponent)
{
    if (distance.size() > 0 && !(distance.minCoeff() > 0))
        throw std::domain_error("path loss is singular at zero distance");
    return (fading.array() * distance.array().pow(-path_loss_exponent)).matrix();
}

/// Unit-mean exponential power gains, one per link.
inline Eigen::MatrixXd rayleigh_fading(Eigen::Index users, Eigen::Index stations, std::mt19937_64& rng)
{
    std::exponential_distribution<double> exp1(1.0);
    Eigen::MatrixXd h(users, stations);
    for (Eigen::Index b = 0; b < stations; ++b)
        for (Eigen::Index u = 0; u < users; ++u)
            h(u, b) = exp1(rng);
    return h;
}

/// SIR of one user served by `server`, given that user's row of link gains
/// and the radiated power of every station (zero for stations not Active).
/// The interference sum skips the server explicitly rather than subtracting
/// it from the total, which keeps the result accurate when the server dominates.
template <typename DerivedG, typename DerivedP>
typename DerivedG::Scalar sir(const Eigen::MatrixBase<DerivedG>& gain_row,
                              const Eigen::MatrixBase<DerivedP>& radiated, Eigen::Index server)
{
    using Scalar = typename DerivedG::Scalar;
    const Scalar signal = radiated(server) * gain_row(server);
    Scalar interference(0);
    for (Eigen::Index z = 0; z < radiated.size(); ++z)
        if (z != server)
            interference += radiated(z) * gain_row(z);
    if (interference <= Scalar(0))
        return Scalar(kSirCap);
    return std::min(signal / interference, Scalar(kSirCap));
}

} // namespace hcn
