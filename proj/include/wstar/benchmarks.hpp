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

#include <span>

namespace wstar {

/// Star network of identical arms used by the non-repeater baselines.
struct StarChannel {
    double arm_transmittance;
    int n_arms;

    StarChannel(double eta, int arms);
};

/// Success probability of pushing an N-photon entangled state outward from
/// the centre, one photon per arm: eta^N.
double direct_rate(int n_parties, const StarChannel& channel);

/// Shannon binary entropy in bits, with 0 log 0 = 0.
double binary_entropy(double x);

/// Base-2 von Neumann entropy of a spectrum (eigenvalues >= 0, sum <= 1).
double von_neumann_entropy(std::span<const double> eigenvalues);

/**
 * Squashed-entanglement upper bound on the distillable rate of tripartite W
 * states sent directly through a star of arm transmittance eta, using the
 * fixed 50:50 environment beam-splitter squashing channel:
 *
 *   [3 H({(3-eta)/6, (3+eta)/6}) - 2 H({(1-eta)/2, (1+eta)/2})
 *      - H({(1-eta)/2, (1+eta)/2})] / (3 h2(1/3)).
 *
 * The SE and E spectra coincide.  Equals 0 at eta = 0 and 1 at eta = 1.
 */
double squashed_bound_w3(double eta);

/// General m-party W distillation bound: 2 E_sq / (m h2(1/m)).
double squashed_bound_general(int m, double e_sq);

} // namespace wstar
