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

#include "wstar/benchmarks.hpp"

#include <cmath>
#include <stdexcept>

namespace wstar {

StarChannel::StarChannel(double eta, int arms) : arm_transmittance(eta), n_arms(arms) {
    if (eta < 0.0 || eta > 1.0) {
        throw std::domain_error("arm transmittance must lie in [0, 1]");
    }
    if (arms < 1) {
        throw std::domain_error("star channel needs at least one arm");
    }
}

double direct_rate(int n_parties, const StarChannel& channel) {
    if (n_parties < 1) {
        throw std::domain_error("direct rate requires at least one party");
    }
    return std::pow(channel.arm_transmittance, n_parties);
}

double binary_entropy(double x) {
    if (x < 0.0 || x > 1.0) {
        throw std::domain_error("binary entropy argument must lie in [0, 1]");
    }
    double h = 0.0;
    if (x > 0.0) h -= x * std::log2(x);
    if (x < 1.0) h -= (1.0 - x) * std::log2(1.0 - x);
    return h;
}

double von_neumann_entropy(std::span<const double> eigenvalues) {
    double sum = 0.0;
    double h = 0.0;
    for (double p : eigenvalues) {
        if (p < 0.0) {
            throw std::domain_error("entropy eigenvalues must be non-negative");
        }
        sum += p;
        if (p > 0.0) h -= p * std::log2(p);
    }
    if (sum > 1.0 + 1e-12) {
        throw std::domain_error("entropy eigenvalues must sum to at most 1");
    }
    return h;
}

double squashed_bound_w3(double eta) {
    if (eta < 0.0 || eta > 1.0) {
        throw std::domain_error("arm transmittance must lie in [0, 1]");
    }
    const double spec_ae[2] = {(3.0 - eta) / 6.0, (3.0 + eta) / 6.0};
    const double spec_e[2] = {(1.0 - eta) / 2.0, (1.0 + eta) / 2.0};
    const double h_ae = von_neumann_entropy(spec_ae);
    const double h_e = von_neumann_entropy(spec_e);
    // rho_E and rho_SE share the same two-point spectrum.
    return (3.0 * h_ae - 2.0 * h_e - h_e) / (3.0 * binary_entropy(1.0 / 3.0));
}

double squashed_bound_general(int m, double e_sq) {
    if (m < 2) {
        throw std::domain_error("general bound requires at least two parties");
    }
    if (e_sq < 0.0) {
        throw std::domain_error("squashed entanglement must be non-negative");
    }
    return 2.0 * e_sq / (m * binary_entropy(1.0 / m));
}

} // namespace wstar
