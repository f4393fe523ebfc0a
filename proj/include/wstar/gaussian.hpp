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
#include <string_view>
#include <vector>

#include "wstar/errors.hpp"
#include "wstar/fock_state.hpp"
#include "wstar/linear_optics.hpp"

namespace wstar {

/// Squeezing strength in the three interchangeable parametrizations:
/// r, decibels 10 log10 e^(2r), and lambda = tanh r.
struct SqueezingSpec {
    double r;

    static SqueezingSpec from_r(double r);
    static SqueezingSpec from_db(double db);

    double db() const;
    double lambda() const;
    /// Einstein-Podolsky-Rosen variance of a TMSV pair, e^(-2r); vacuum gives 1.
    double epr_variance() const;
};

/// Threshold (on/off) detector with dark counts and finite efficiency,
/// modeled as transmittance-eta loss in front of an ideal vacuum test.
struct DetectorModel {
    double dark_count_prob = 1e-7;
    double efficiency = 0.8;
    bool photon_number_resolving = false;

    void validate() const;
};

/**
 * Zero-mean Gaussian state over named mode registers.  The covariance is
 * kept over quadratures ordered (x_1..x_n, p_1..p_n) and normalized so the
 * vacuum covariance is the identity.  Construction checks symmetry and the
 * uncertainty bound (eigenvalues of sigma + i Omega >= -1e-10).
 */
class GaussianState {
  public:
    GaussianState(Eigen::MatrixXd covariance, RegisterLayout layout);
    static GaussianState vacuum(RegisterLayout layout);

    std::size_t n_modes() const { return layout_.total_modes(); }
    const Eigen::MatrixXd& covariance() const { return cov_; }
    const RegisterLayout& layout() const { return layout_; }

  private:
    Eigen::MatrixXd cov_;
    RegisterLayout layout_;
};

/// Two-mode squeezed vacuum on registers X, Xp: diagonal blocks cosh(2r) I,
/// off-diagonal sinh(2r) diag(1, -1).
GaussianState tmsv(const SqueezingSpec& spec);

/// (1/4) [Var(x_a - x_b) + Var(p_a + p_b)]; equals e^(-2r) for a TMSV pair.
double epr_variance(const GaussianState& state, int mode_a, int mode_b);

/// Pure loss on one mode: sigma -> X sigma X^T + (I - X X^T) with X = sqrt(T).
GaussianState gaussian_loss(const GaussianState& state, int mode, double transmittance);

/// Passive interferometer on one register via its symplectic representation.
GaussianState gaussian_unitary(const GaussianState& state, const InterferometerMatrix& u,
                               std::string_view register_name);

/// Mixer port count used by the Gaussian pipeline: 2 for two parties, 4 for
/// three or four (the fourth input carries vacuum for three parties).
int gaussian_mixer_ports(int n_parties);

/**
 * N two-mode squeezed sources with every shared arm sent through the loss
 * channel and mixed by the beam-splitter tree.  Registers: X (N kept modes),
 * Xp (mixer ports; the monitored detector is the first).  Loss needs no
 * explicit environment modes in the covariance picture.
 */
GaussianState build_gaussian_network(int n_parties, const SqueezingSpec& spec,
                                     const LossChannel& channel);

/// Index of the monitored detector mode in a network state.
int click_mode_index(const GaussianState& network);

/// Probability that the (inefficient) detector on `mode` does not click:
/// 2 / sqrt(det(sigma_marginal + I)) after the efficiency loss.
double no_click_probability(const GaussianState& state, int mode, const DetectorModel& detector);

/// Phenomenological click probability 1 - p0 + p_dc, as printed.
double click_probability(const GaussianState& state, int mode, const DetectorModel& detector);

/**
 * Fock matrix element <bra| rho |ket> of a zero-mean Gaussian state from its
 * quadrature covariance, via the hafnian of the repeated kernel matrix.
 */
std::complex<double> gaussian_fock_matrix_element(const Eigen::MatrixXd& covariance,
                                                  const OccupationVector& bra,
                                                  const OccupationVector& ket);

/**
 * Matrix elements of the heralded kept-mode state
 *   sigma_X = [(p_dc + 1) rho_X - Tr_Xp(rho |0><0|_click)] / (p_dc + 1 - p0)
 * over the given bra/ket occupation lists on register X.  Vectors with more
 * than max_photons total photons are rejected.
 */
Eigen::MatrixXcd conditional_state_fock_elements(const GaussianState& network, int click_mode,
                                                 const DetectorModel& detector,
                                                 const std::vector<OccupationVector>& bras,
                                                 const std::vector<OccupationVector>& kets,
                                                 int max_photons = 8);

/// Fidelity of the heralded state with the zero-phase W_N:
/// (1/N) sum_{k,k'} <f_k| sigma_X |f_k'>.
double w_fidelity(const GaussianState& network, int click_mode, const DetectorModel& detector,
                  int n_parties);

/// Total-photon cutoff policy: smallest c with (N lambda^2)^(c+1) < 1e-12,
/// capped at 8.
int default_fock_cutoff_total(int n_parties, double lambda);

struct SqueezingSolveResult {
    SqueezingSpec spec;
    double fidelity;
    double click_prob;
};

/**
 * Finds the squeezing whose heralded W_N fidelity equals target_fidelity at
 * the given distance.  Fidelity rises and then falls with r; of the two
 * crossings the larger-r one is returned since its click rate is larger.
 * Throws fidelity_ceiling_error when the target exceeds the achievable
 * maximum.  Converges to |F - target| <= 1e-6.
 */
SqueezingSolveResult solve_squeezing_for_fidelity(int n_parties, double target_fidelity,
                                                  const LossChannel& channel,
                                                  const DetectorModel& detector);

} // namespace wstar
