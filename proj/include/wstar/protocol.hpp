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

#include <vector>

#include "wstar/fock_state.hpp"
#include "wstar/linear_optics.hpp"

namespace wstar {

/**
 * Heralded distribution of W / Dicke states over a star network.  Each of N
 * parties holds a source emitting a |00> + b |11> on (kept mode, shared
 * mode); the shared modes travel through identical lossy arms to a central
 * station, are mixed by a balanced beam-splitter tree, and M detected photons
 * herald an M-photon Dicke state on the kept modes.
 */
struct ProtocolParams {
    int n_parties;
    int herald_photons;
    double source_b;
    LossChannel channel;

    ProtocolParams(int n, int m, double b, LossChannel ch);
    /// Validates a^2 + b^2 = 1 to 1e-12 and keeps b.
    static ProtocolParams from_amplitudes(int n, int m, double a, double b, LossChannel ch);

    double source_a() const;
    /// Mixer port count: N rounded up to a power of two; extra ports carry vacuum.
    int mixer_ports() const;
    /// The closed small-b forms assume b^2 <= 1/2; exact formulas hold regardless.
    bool perturbative() const { return source_b * source_b <= 0.5; }
};

struct HeraldOutcome {
    OccupationVector pattern;
    double probability;
    /// Normalized post-herald state on the kept modes and loss environments
    /// (registers X and E); empty when probability is zero.
    PureFockState conditional_state;
    double fidelity_to_dicke;
};

/// Single-photon transfer matrix of the central station for N parties.
InterferometerMatrix mixing_matrix(int n_parties);

/// Detector pattern with all M photons in one port, on the mixer of n_parties.
OccupationVector single_detector_pattern(int n_parties, int detector, int m_photons);

/**
 * Joint source state with loss purified into explicit environment modes.
 * Registers: X (N kept modes), Xp (mixer_ports shared modes, trailing ports
 * vacuum when N is not a power of two), E (N environment modes).
 */
PureFockState build_network_state(const ProtocolParams& params);

/**
 * Exact probability that the detector configuration `pattern` fires:
 * sum over emitted-photon number K >= M of (a^(N-K) b^K)^2 T^M (1-T)^(K-M)
 * times the summed squared transition amplitudes of every way K photons can
 * lose K-M to the environments and land as `pattern`.
 */
double herald_probability_exact(const ProtocolParams& params, const OccupationVector& pattern);

/// Small-T single-detector rate: T^M b^(2M) C(N,M) M! / N^M.
double herald_probability_leading(const ProtocolParams& params);

/**
 * Fidelity of the heralded kept-mode state with the generalized Dicke state,
 * phase-optimized (overlap magnitudes summed, then squared).  Converges to
 * a^(2(N-M)) for single-detector patterns as T -> 0.
 */
double conditional_fidelity(const ProtocolParams& params, const OccupationVector& pattern,
                            const DickeSpec& target);

/// Total M=1 click rate across all detectors with b tuned so the small-T
/// fidelity equals F: N (1 - F^(1/(N-1))) T.
double rate_at_fixed_fidelity(int n_parties, double fidelity, const LossChannel& channel);

/// Source amplitude b whose small-T heralded fidelity equals F: b^2 = 1 - F^(1/(N-M)).
double fixed_fidelity_source_b(int n_parties, int herald_photons, double fidelity);

/**
 * Per-party phase flips (0 or pi) conditioned on which detector fired,
 * mapping the heralded generalized W state onto the all-positive-phase W
 * state.  Party k flips when the mixer entry (detector row, party column) is
 * negative.  Only single-photon patterns are supported.
 */
std::vector<double> feedforward_correction(int n_parties, const OccupationVector& pattern);

/// Probability that M photons reach the central station at all:
/// sum_K [a^(N-K) b^K t^M (1-T)^((K-M)/2)]^2 C(N,K) C(K,M).
double arrival_probability(const ProtocolParams& params);

/// Full state-evolution pipeline for one pattern: probability, normalized
/// conditional state on X and E, and the Dicke fidelity.
HeraldOutcome herald_outcome(const ProtocolParams& params, const OccupationVector& pattern);

} // namespace wstar
