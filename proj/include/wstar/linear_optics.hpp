/**
 * Copyright 2026 The wstar authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <optional>
#include <string_view>

#include "wstar/fock_state.hpp"

namespace wstar {

/**
 * N x N single-photon transfer matrix of a passive interferometer.  Entry
 * (c, k) is the amplitude for a photon entering mode k to leave in mode c, so
 * a single photon |1_k> maps to sum_c U(c,k) |1_c>.  Unitarity is enforced at
 * construction to 1e-12 in max norm.
 */
class InterferometerMatrix {
  public:
    explicit InterferometerMatrix(Eigen::MatrixXcd matrix);

    int n_modes() const { return static_cast<int>(u_.rows()); }
    const Eigen::MatrixXcd& matrix() const { return u_; }
    std::complex<double> entry(int out_mode, int in_mode) const { return u_(out_mode, in_mode); }

  private:
    Eigen::MatrixXcd u_;
};

/**
 * Balanced beam-splitter cascade mixing n_modes = 2^n inputs uniformly: the
 * n-fold Kronecker power of u = (1/sqrt 2) [[1, 1], [-1, 1]].  Every entry has
 * magnitude 1/sqrt(n_modes), which erases which-input information for a
 * single photon.
 */
InterferometerMatrix hadamard_tree(int n_modes);

/// Matrix permanent via Ryser's formula with Gray-code updates; dimension <= 16.
/// An empty matrix yields 1.
std::complex<double> permanent(const Eigen::MatrixXcd& m);

/**
 * <output| U |input> for Fock states with equal total photon number:
 * perm(U_sub) / sqrt(prod_j input_j! * prod_c output_c!), where U_sub picks
 * the row of each output photon and the column of each input photon,
 * repeated per multiplicity.
 */
std::complex<double> transition_amplitude(const InterferometerMatrix& u,
                                          const OccupationVector& input,
                                          const OccupationVector& output);

/// Exact multi-photon action of the interferometer on one register.
PureFockState apply_interferometer(const InterferometerMatrix& u, const PureFockState& state,
                                   std::string_view register_name);

/// Pure-loss channel with power transmittance T; t = sqrt(T) on amplitudes.
class LossChannel {
  public:
    static LossChannel from_transmittance(double transmittance);
    /// T = 10^(-gamma d / 10) with gamma in dB/km.
    static LossChannel from_distance(double distance_km, double gamma_db_per_km = 0.2);

    double transmittance() const { return transmittance_; }
    double amplitude_transmittance() const;
    std::optional<double> distance_km() const { return distance_km_; }
    std::optional<double> gamma_db_per_km() const { return gamma_db_per_km_; }

  private:
    LossChannel() = default;
    double transmittance_ = 1.0;
    std::optional<double> distance_km_;
    std::optional<double> gamma_db_per_km_;
};

/**
 * Beam-splitter purification of loss on one mode: |n>|0>_env maps to
 * sum_k sqrt(C(n,k)) t^k (1-T)^((n-k)/2) |k>|n-k>_env.  The environment mode
 * must be vacuum in every stored term.
 */
PureFockState apply_loss(const LossChannel& channel, const PureFockState& state, std::size_t mode,
                         std::size_t environment_mode);

} // namespace wstar
