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

#include "wstar/protocol.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace wstar {

namespace {

double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= static_cast<double>(i);
    return f;
}

/// Indicator occupation of an index subset, padded to `width` modes.
OccupationVector indicator(const std::vector<int>& subset, std::size_t width) {
    std::vector<int> v(width, 0);
    for (int i : subset) v[static_cast<std::size_t>(i)] = 1;
    return OccupationVector(std::move(v));
}

/// Visits all k-subsets of {0..n-1} in lexicographic order.
template <typename F>
void for_each_subset(int n, int k, F&& visit) {
    std::vector<int> idx(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
    while (true) {
        visit(idx);
        int i = k - 1;
        while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - k + i) --i;
        if (i < 0) break;
        ++idx[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < k; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
    }
}

void check_pattern(const ProtocolParams& params, const OccupationVector& pattern) {
    if (static_cast<int>(pattern.n_modes()) != params.mixer_ports()) {
        throw std::domain_error("detection pattern must cover all mixer ports");
    }
    if (pattern.total() != params.herald_photons) {
        throw std::domain_error("detection pattern photon count does not match herald_photons");
    }
}

} // namespace

ProtocolParams::ProtocolParams(int n, int m, double b, LossChannel ch)
    : n_parties(n), herald_photons(m), source_b(b), channel(std::move(ch)) {
    if (n < 1) throw std::domain_error("n_parties must be at least 1");
    if (m < 0 || m > n) throw std::domain_error("herald_photons must satisfy 0 <= M <= N");
    if (b < 0.0 || b > 1.0) throw std::domain_error("source amplitude b must lie in [0, 1]");
}

ProtocolParams ProtocolParams::from_amplitudes(int n, int m, double a, double b, LossChannel ch) {
    if (a < 0.0 || b < 0.0 || std::abs(a * a + b * b - 1.0) > 1e-12) {
        throw std::domain_error("source amplitudes must be non-negative with a^2 + b^2 = 1");
    }
    return ProtocolParams(n, m, b, std::move(ch));
}

double ProtocolParams::source_a() const { return std::sqrt(1.0 - source_b * source_b); }

int ProtocolParams::mixer_ports() const {
    return static_cast<int>(std::bit_ceil(static_cast<unsigned>(n_parties)));
}

InterferometerMatrix mixing_matrix(int n_parties) {
    if (n_parties < 1) throw std::domain_error("n_parties must be at least 1");
    return hadamard_tree(static_cast<int>(std::bit_ceil(static_cast<unsigned>(n_parties))));
}

OccupationVector single_detector_pattern(int n_parties, int detector, int m_photons) {
    const int ports = static_cast<int>(std::bit_ceil(static_cast<unsigned>(n_parties)));
    if (detector < 0 || detector >= ports) throw std::domain_error("detector index out of range");
    std::vector<int> v(static_cast<std::size_t>(ports), 0);
    v[static_cast<std::size_t>(detector)] = m_photons;
    return OccupationVector(std::move(v));
}

PureFockState build_network_state(const ProtocolParams& params) {
    const int n = params.n_parties;
    const int ports = params.mixer_ports();
    const double a = params.source_a();
    const double b = params.source_b;
    RegisterLayout layout{{"X", static_cast<std::size_t>(n)},
                          {"Xp", static_cast<std::size_t>(ports)},
                          {"E", static_cast<std::size_t>(n)}};
    PureFockState state(layout);
    // Joint source state before loss: sum over emitting subsets S of
    // a^(N-|S|) b^|S| |1_S>_X |1_S>_Xp |0>_E.
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        const int k = std::popcount(mask);
        const double amp = std::pow(a, n - k) * std::pow(b, k);
        if (amp == 0.0) continue;
        std::vector<int> v(layout.total_modes(), 0);
        for (int i = 0; i < n; ++i) {
            if (mask & (1u << i)) {
                v[static_cast<std::size_t>(i)] = 1;
                v[static_cast<std::size_t>(n + i)] = 1;
            }
        }
        state.add_term(OccupationVector(std::move(v)), amp);
    }
    const std::size_t xp_off = state.layout().span("Xp").offset;
    const std::size_t e_off = state.layout().span("E").offset;
    for (int i = 0; i < n; ++i) {
        state = apply_loss(params.channel, state, xp_off + static_cast<std::size_t>(i),
                           e_off + static_cast<std::size_t>(i));
    }
    return state;
}

double herald_probability_exact(const ProtocolParams& params, const OccupationVector& pattern) {
    check_pattern(params, pattern);
    const int n = params.n_parties;
    const int m = params.herald_photons;
    const int ports = params.mixer_ports();
    const double a = params.source_a();
    const double b = params.source_b;
    const double transmittance = params.channel.transmittance();
    const InterferometerMatrix u = mixing_matrix(n);

    double total = 0.0;
    for (int k_emit = m; k_emit <= n; ++k_emit) {
        const double weight = std::pow(a, 2 * (n - k_emit)) * std::pow(b, 2 * k_emit) *
                              std::pow(transmittance, m) *
                              std::pow(1.0 - transmittance, k_emit - m);
        if (weight == 0.0) continue;
        double amp2 = 0.0;
        for_each_subset(n, k_emit, [&](const std::vector<int>& emitters) {
            for_each_subset(k_emit, m, [&](const std::vector<int>& pick) {
                std::vector<int> survivors(pick.size());
                for (std::size_t i = 0; i < pick.size(); ++i) {
                    survivors[i] = emitters[static_cast<std::size_t>(pick[i])];
                }
                const OccupationVector g = indicator(survivors, static_cast<std::size_t>(ports));
                amp2 += std::norm(transition_amplitude(u, g, pattern));
            });
        });
        total += weight * amp2;
    }
    return total;
}

double herald_probability_leading(const ProtocolParams& params) {
    const int n = params.n_parties;
    const int m = params.herald_photons;
    const double b = params.source_b;
    const double transmittance = params.channel.transmittance();
    return std::pow(transmittance, m) * std::pow(b, 2 * m) *
           static_cast<double>(binomial(n, m)) * factorial(m) / std::pow(n, m);
}

double conditional_fidelity(const ProtocolParams& params, const OccupationVector& pattern,
                            const DickeSpec& target) {
    check_pattern(params, pattern);
    const int n = params.n_parties;
    const int m = params.herald_photons;
    if (target.n_modes != n || target.n_photons != m) {
        throw std::domain_error("Dicke target shape does not match protocol parameters");
    }
    if (m == 0) {
        throw std::domain_error("vacuum detection is an uninformative herald");
    }
    const double p = herald_probability_exact(params, pattern);
    if (p <= 0.0) {
        throw std::domain_error("conditional state undefined: herald pattern has zero probability");
    }
    const int ports = params.mixer_ports();
    const InterferometerMatrix u = mixing_matrix(n);
    const double a = params.source_a();
    const double b = params.source_b;
    const double transmittance = params.channel.transmittance();

    double overlap_sum = 0.0;
    for (const OccupationVector& f : enumerate_single_occupancy(n, m)) {
        std::vector<int> padded = f.counts();
        padded.resize(static_cast<std::size_t>(ports), 0);
        overlap_sum += std::abs(transition_amplitude(u, OccupationVector(std::move(padded)), pattern));
    }
    const double combos = static_cast<double>(binomial(n, m));
    return std::pow(a, 2 * (n - m)) * std::pow(b, 2 * m) * std::pow(transmittance, m) *
           overlap_sum * overlap_sum / (combos * p);
}

double rate_at_fixed_fidelity(int n_parties, double fidelity, const LossChannel& channel) {
    if (n_parties < 2) throw std::domain_error("fixed-fidelity rate requires at least 2 parties");
    if (fidelity <= 0.0 || fidelity >= 1.0) {
        throw std::domain_error("fidelity must lie strictly between 0 and 1");
    }
    return n_parties * (1.0 - std::pow(fidelity, 1.0 / (n_parties - 1))) * channel.transmittance();
}

double fixed_fidelity_source_b(int n_parties, int herald_photons, double fidelity) {
    if (herald_photons < 1 || herald_photons >= n_parties) {
        throw std::domain_error("fixed-fidelity b requires 1 <= M < N");
    }
    if (fidelity <= 0.0 || fidelity >= 1.0) {
        throw std::domain_error("fidelity must lie strictly between 0 and 1");
    }
    return std::sqrt(1.0 - std::pow(fidelity, 1.0 / (n_parties - herald_photons)));
}

std::vector<double> feedforward_correction(int n_parties, const OccupationVector& pattern) {
    const int ports = static_cast<int>(std::bit_ceil(static_cast<unsigned>(n_parties)));
    if (static_cast<int>(pattern.n_modes()) != ports) {
        throw std::domain_error("detection pattern must cover all mixer ports");
    }
    if (pattern.total() != 1) {
        throw std::domain_error("feed-forward correction supports single-photon heralds only");
    }
    int detector = 0;
    for (std::size_t c = 0; c < pattern.n_modes(); ++c) {
        if (pattern[c] == 1) detector = static_cast<int>(c);
    }
    const InterferometerMatrix u = mixing_matrix(n_parties);
    std::vector<double> phases(static_cast<std::size_t>(n_parties), 0.0);
    for (int k = 0; k < n_parties; ++k) {
        if (u.entry(detector, k).real() < 0.0) {
            phases[static_cast<std::size_t>(k)] = std::numbers::pi;
        }
    }
    return phases;
}

double arrival_probability(const ProtocolParams& params) {
    const int n = params.n_parties;
    const int m = params.herald_photons;
    const double a = params.source_a();
    const double b = params.source_b;
    const double transmittance = params.channel.transmittance();
    double total = 0.0;
    for (int k_emit = m; k_emit <= n; ++k_emit) {
        total += std::pow(a, 2 * (n - k_emit)) * std::pow(b, 2 * k_emit) *
                 std::pow(transmittance, m) * std::pow(1.0 - transmittance, k_emit - m) *
                 static_cast<double>(binomial(n, k_emit)) * static_cast<double>(binomial(k_emit, m));
    }
    return total;
}

HeraldOutcome herald_outcome(const ProtocolParams& params, const OccupationVector& pattern) {
    check_pattern(params, pattern);
    PureFockState network = build_network_state(params);
    // The mixer conserves the shared-register photon number, so only the
    // matching sector can reach this pattern; restricting first keeps the
    // expansion small without changing any amplitude.
    PureFockState sector = photon_number_sector(network, "Xp", params.herald_photons);
    PureFockState mixed = apply_interferometer(mixing_matrix(params.n_parties), sector, "Xp");
    PureFockState remainder = partial_projection(mixed, "Xp", pattern);
    const double p = remainder.squared_norm();
    HeraldOutcome out{pattern, p, PureFockState(remainder.layout()), 0.0};
    if (p > 0.0) {
        out.conditional_state = normalize(remainder);
        if (params.herald_photons > 0) {
            out.fidelity_to_dicke = conditional_fidelity(
                params, pattern, DickeSpec(params.n_parties, params.herald_photons));
        }
    }
    return out;
}

} // namespace wstar
