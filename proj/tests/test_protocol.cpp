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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "test_support.hpp"
#include "wstar/protocol.hpp"

using namespace wstar;

namespace {

LossChannel t_of(double t) { return LossChannel::from_transmittance(t); }

} // namespace

TEST_CASE("protocol params") {
    CHECK_THROWS_AS(ProtocolParams(0, 0, 0.1, t_of(1.0)), std::domain_error);
    CHECK_THROWS_AS(ProtocolParams(2, 3, 0.1, t_of(1.0)), std::domain_error);
    CHECK_THROWS_AS(ProtocolParams(2, 1, 1.5, t_of(1.0)), std::domain_error);
    CHECK_THROWS_AS(ProtocolParams::from_amplitudes(2, 1, 0.9, 0.1, t_of(1.0)), std::domain_error);
    auto p = ProtocolParams::from_amplitudes(2, 1, std::sqrt(1.0 - 0.01), 0.1, t_of(1.0));
    CHECK(std::abs(p.source_a() * p.source_a() + 0.01 - 1.0) < 1e-12);
    CHECK(ProtocolParams(3, 1, 0.1, t_of(1.0)).mixer_ports() == 4);
    CHECK(ProtocolParams(8, 1, 0.1, t_of(1.0)).mixer_ports() == 8);
    CHECK(ProtocolParams(2, 1, 0.8, t_of(1.0)).perturbative() == false);
}

TEST_CASE("network state structure") {
    // vacuum source
    auto vac = build_network_state(ProtocolParams(1, 0, 0.0, t_of(0.37)));
    REQUIRE(vac.term_count() == 1);
    CHECK(std::abs(vac.amplitude(OccupationVector({0, 0, 0})) - 1.0) < 1e-14);

    // deterministic two-photon sources, no loss
    auto full = build_network_state(ProtocolParams(2, 1, 1.0, t_of(1.0)));
    REQUIRE(full.term_count() == 1);
    CHECK(std::abs(full.amplitude(OccupationVector({1, 1, 1, 1, 0, 0})) - 1.0) < 1e-14);

    // one-photon shared sector norm equals the closed-form arrival probability
    ProtocolParams p(3, 1, 0.1, t_of(0.5));
    auto state = build_network_state(p);
    const double sector = photon_number_sector(state, "Xp", 1).squared_norm();
    const double a2 = p.source_a() * p.source_a();
    const double b2 = 0.01;
    const double expected = 3 * a2 * a2 * b2 * 0.5 + 6 * a2 * b2 * b2 * 0.5 * 0.5 +
                            3 * b2 * b2 * b2 * 0.5 * 0.25;
    CHECK(std::abs(sector - expected) < 1e-14);
    CHECK(std::abs(sector - arrival_probability(p)) < 1e-14);
    CHECK(std::abs(state.squared_norm() - 1.0) < 1e-12);
}

TEST_CASE("herald probability examples") {
    // chosen-detector click probability (a^(N-1) b)^2 at T = 1
    ProtocolParams p2(2, 1, 0.1, t_of(1.0));
    CHECK(std::abs(herald_probability_exact(p2, OccupationVector({1, 0})) - 0.99 * 0.01) < 1e-15);

    // nothing arrives at T = 0
    ProtocolParams p0(4, 1, 0.3, t_of(0.0));
    CHECK(herald_probability_exact(p0, OccupationVector({1, 0, 0, 0})) == 0.0);

    // four parties, two photons on the same detector
    const double b2 = 0.01, a2 = 0.99, tt = 0.1;
    ProtocolParams p4(4, 2, 0.1, t_of(tt));
    const double expected = 0.75 * a2 * a2 * b2 * b2 * tt * tt +
                            1.5 * a2 * b2 * b2 * b2 * tt * tt * (1 - tt) +
                            0.75 * b2 * b2 * b2 * b2 * tt * tt * (1 - tt) * (1 - tt);
    CHECK(std::abs(herald_probability_exact(p4, OccupationVector({2, 0, 0, 0})) - expected) < 1e-15);

    CHECK_THROWS_AS(herald_probability_exact(p4, OccupationVector({1, 0, 0, 0})),
                    std::domain_error);
    CHECK_THROWS_AS(herald_probability_exact(p4, OccupationVector({2, 0, 0})), std::domain_error);
}

TEST_CASE("closed form equals the state-evolution pipeline") {
    for (int n : {2, 3, 4}) {
        for (int m : {1, 2}) {
            ProtocolParams p(n, m, 0.25, t_of(0.6));
            auto probs = test::pipeline_probabilities(p);
            for (const auto& [pattern, prob] : probs) {
                CHECK(std::abs(prob - herald_probability_exact(p, pattern)) < 1e-12);
            }
        }
    }
}

TEST_CASE("pipeline without the sector filter agrees on a small case") {
    ProtocolParams p(3, 1, 0.3, t_of(0.4));
    auto network = build_network_state(p);
    auto mixed = apply_interferometer(mixing_matrix(3), network, "Xp");
    const OccupationVector pattern({0, 1, 0, 0});
    const double prob = partial_projection(mixed, "Xp", pattern).squared_norm();
    CHECK(std::abs(prob - herald_probability_exact(p, pattern)) < 1e-12);
}

TEST_CASE("leading-order rate") {
    ProtocolParams p2(2, 1, 0.1, t_of(0.37));
    CHECK(std::abs(herald_probability_leading(p2) - 0.37 * 0.01) < 1e-15);

    ProtocolParams pz(3, 0, 0.1, t_of(0.37));
    CHECK(std::abs(herald_probability_leading(pz) - 1.0) < 1e-15);

    ProtocolParams p4(4, 2, 0.2, t_of(0.5));
    CHECK(std::abs(herald_probability_leading(p4) - 0.75 * 0.25 * std::pow(0.2, 4)) < 1e-15);

    // relative gap to the exact rate shrinks linearly with T
    for (auto [n, m] : {std::pair{2, 1}, {4, 1}, {4, 2}, {8, 1}, {8, 2}}) {
        auto gap = [&](double t) {
            ProtocolParams p(n, m, 0.2, t_of(t));
            const double exact =
                herald_probability_exact(p, single_detector_pattern(n, 0, m));
            const double lead = herald_probability_leading(p);
            return std::abs(exact - lead) / lead;
        };
        const double ratio = gap(1e-3) / gap(1e-4);
        CHECK(ratio > 5.0);
        CHECK(ratio < 20.0);
    }
}

TEST_CASE("binomial collapse of the leading-order sum") {
    for (int n : {2, 4, 8}) {
        for (int m : {1, 2}) {
            for (double b : {0.05, 0.2, 0.6}) {
                const double a2 = 1.0 - b * b;
                double total = 0.0;
                for (int k = m; k <= n; ++k) {
                    total += std::pow(a2, n - k) * std::pow(b * b, k - m) *
                             static_cast<double>(binomial(n - m, k - m));
                }
                CHECK(std::abs(total - 1.0) < 1e-12);
            }
        }
    }
}

TEST_CASE("conditional fidelity") {
    // T -> 0 limit: F -> a^(2(N-M)) for single-detector heralds
    ProtocolParams p2(2, 1, 0.1, t_of(1e-6));
    CHECK(std::abs(conditional_fidelity(p2, OccupationVector({1, 0}), DickeSpec(2, 1)) - 0.99) <
          1e-4);

    // coincidence herald is capped at a^4 / 3
    ProtocolParams p4(4, 2, 0.1, t_of(1e-6));
    const double a4 = 0.99 * 0.99;
    CHECK(std::abs(conditional_fidelity(p4, OccupationVector({0, 1, 1, 0}), DickeSpec(4, 2)) -
                   a4 / 3.0) < 1e-4);
    CHECK(std::abs(conditional_fidelity(p4, OccupationVector({2, 0, 0, 0}), DickeSpec(4, 2)) - a4) <
          1e-4);

    // errors
    ProtocolParams pm0(2, 0, 0.1, t_of(0.5));
    CHECK_THROWS_AS(conditional_fidelity(pm0, OccupationVector({0, 0}), DickeSpec(2, 0)),
                    std::domain_error);
    ProtocolParams pz(2, 1, 0.0, t_of(0.5));
    CHECK_THROWS_AS(conditional_fidelity(pz, OccupationVector({1, 0}), DickeSpec(2, 1)),
                    std::domain_error);
    CHECK_THROWS_AS(conditional_fidelity(p2, OccupationVector({1, 0}), DickeSpec(3, 1)),
                    std::domain_error);
}

TEST_CASE("fidelity from the closed form equals the pipeline fidelity") {
    // Detector 0 heralds with all-positive phases, so the plain overlap with
    // the zero-phase W state already equals the phase-optimized fidelity.
    for (int n : {2, 4}) {
        ProtocolParams p(n, 1, 0.3, t_of(0.45));
        const auto pattern = single_detector_pattern(n, 0, 1);
        auto out = herald_outcome(p, pattern);
        auto target = dicke_state(DickeSpec(n, 1));
        double overlap = 0.0;
        for (int lost = 0; lost <= n; ++lost) {
            for (const auto& epat : enumerate_detection_patterns(n, lost)) {
                auto branch = partial_projection(out.conditional_state, "E", epat);
                std::complex<double> amp = 0.0;
                for (const auto& [occ, a] : target.terms()) {
                    amp += std::conj(a) * branch.amplitude(occ);
                }
                overlap += std::norm(amp);
            }
        }
        CHECK(std::abs(overlap - out.fidelity_to_dicke) < 1e-10);
        CHECK(std::abs(out.probability - herald_probability_exact(p, pattern)) < 1e-12);
    }
}

TEST_CASE("fixed-fidelity rate") {
    CHECK(std::abs(rate_at_fixed_fidelity(2, 0.95, t_of(0.01)) - 1.0e-3) < 1e-15);
    CHECK(rate_at_fixed_fidelity(4, 0.999999, t_of(0.5)) < 1e-5);
    CHECK_THROWS_AS(rate_at_fixed_fidelity(2, 1.0, t_of(0.5)), std::domain_error);
    CHECK_THROWS_AS(rate_at_fixed_fidelity(2, 0.0, t_of(0.5)), std::domain_error);

    // large-N limit approaches T ln(1/F)
    const double asym = 0.5 * std::log(1.0 / 0.95);
    CHECK(std::abs(rate_at_fixed_fidelity(4096, 0.95, t_of(0.5)) - asym) < 1e-4);

    CHECK(std::abs(fixed_fidelity_source_b(2, 1, 0.95) - std::sqrt(0.05)) < 1e-15);
}

TEST_CASE("feed-forward correction") {
    auto det1 = feedforward_correction(2, OccupationVector({1, 0}));
    CHECK(det1[0] == 0.0);
    CHECK(det1[1] == 0.0);

    auto det2 = feedforward_correction(2, OccupationVector({0, 1}));
    CHECK(det2[0] == std::numbers::pi);
    CHECK(det2[1] == 0.0);

    auto det1of4 = feedforward_correction(4, OccupationVector({1, 0, 0, 0}));
    for (double ph : det1of4) CHECK(ph == 0.0);

    CHECK_THROWS_AS(feedforward_correction(4, OccupationVector({2, 0, 0, 0})), std::domain_error);
}

TEST_CASE("feed-forward phases recover the zero-phase W state") {
    for (int n : {2, 4, 8}) {
        ProtocolParams p(n, 1, 0.2, t_of(0.35));
        for (int det = 0; det < p.mixer_ports(); ++det) {
            const auto pattern = single_detector_pattern(n, det, 1);
            auto out = herald_outcome(p, pattern);
            auto phases = feedforward_correction(n, pattern);
            // apply the per-party phase to every stored term
            PureFockState corrected(out.conditional_state.layout());
            for (const auto& [occ, amp] : out.conditional_state.terms()) {
                double phase = 0.0;
                for (int k = 0; k < n; ++k) {
                    if (occ[static_cast<std::size_t>(k)] == 1) phase += phases[static_cast<std::size_t>(k)];
                }
                corrected.add_term(occ, amp * std::polar(1.0, phase));
            }
            // fidelity with the zero-phase W state, traced over environments
            auto target = dicke_state(DickeSpec(n, 1));
            double fid = 0.0;
            for (int lost = 0; lost <= n; ++lost) {
                for (const auto& epat : enumerate_detection_patterns(n, lost)) {
                    auto branch = partial_projection(corrected, "E", epat);
                    std::complex<double> amp = 0.0;
                    for (const auto& [occ, a] : target.terms()) {
                        amp += std::conj(a) * branch.amplitude(occ);
                    }
                    fid += std::norm(amp);
                }
            }
            CHECK(std::abs(fid - out.fidelity_to_dicke) < 1e-10);
        }
    }
}

TEST_CASE("arrival probability") {
    ProtocolParams trivially_sure(3, 0, 0.0, t_of(0.8));
    CHECK(std::abs(arrival_probability(trivially_sure) - 1.0) < 1e-15);

    ProtocolParams p2(2, 1, 0.1, t_of(1.0));
    CHECK(std::abs(arrival_probability(p2) - 2 * 0.99 * 0.01) < 1e-15);

    // cross-checked against the shared-sector norm of the network state
    ProtocolParams p3(3, 1, 0.2, t_of(0.5));
    auto state = build_network_state(p3);
    CHECK(std::abs(photon_number_sector(state, "Xp", 1).squared_norm() -
                   arrival_probability(p3)) < 1e-13);
}

TEST_CASE("herald probabilities resolve unity over all patterns") {
    for (int n : {2, 3, 4}) {
        double total = 0.0;
        for (int m = 0; m <= n; ++m) {
            ProtocolParams p(n, m, 0.35, t_of(0.7));
            for (const auto& pattern : enumerate_detection_patterns(p.mixer_ports(), m)) {
                total += herald_probability_exact(p, pattern);
            }
        }
        CHECK(std::abs(total - 1.0) < 1e-12);
    }
}

TEST_CASE("every single-detector herald fires with the same probability") {
    for (int n : {2, 3, 4, 8}) {
        for (int m : {1, 2}) {
            ProtocolParams p(n, m, 0.3, t_of(0.55));
            const double first =
                herald_probability_exact(p, single_detector_pattern(n, 0, m));
            for (int det = 1; det < p.mixer_ports(); ++det) {
                const double other =
                    herald_probability_exact(p, single_detector_pattern(n, det, m));
                CHECK(std::abs(other - first) < 1e-15);
            }
        }
    }
}

TEST_CASE("M = 0 pattern gives the no-photon probability") {
    ProtocolParams p(3, 0, 0.25, t_of(0.6));
    const auto vac_pattern = OccupationVector({0, 0, 0, 0});
    const double a2 = 1.0 - 0.0625;
    const double expect = std::pow(a2 + 0.0625 * (1.0 - 0.6), 3);
    CHECK(std::abs(herald_probability_exact(p, vac_pattern) - expect) < 1e-14);
}
