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

#include <Eigen/Dense>
#include <cmath>

#include "wstar/benchmarks.hpp"
#include "wstar/fock_state.hpp"
#include "wstar/linear_optics.hpp"
#include "wstar/protocol.hpp"

using namespace wstar;

TEST_CASE("direct transmission rate") {
    CHECK(std::abs(direct_rate(3, StarChannel(0.1, 3)) - 1e-3) < 1e-16);
    CHECK(direct_rate(5, StarChannel(1.0, 5)) == 1.0);
    CHECK(std::abs(direct_rate(2, StarChannel(0.5, 2)) - 0.25) < 1e-16);
    CHECK_THROWS_AS(StarChannel(1.2, 3), std::domain_error);

    // log-log slope versus transmittance is exactly N
    const double slope = (std::log10(direct_rate(4, StarChannel(0.3, 4))) -
                          std::log10(direct_rate(4, StarChannel(0.1, 4)))) /
                         (std::log10(0.3) - std::log10(0.1));
    CHECK(std::abs(slope - 4.0) < 1e-12);
}

TEST_CASE("entropies") {
    CHECK(std::abs(binary_entropy(0.5) - 1.0) < 1e-15);
    CHECK(std::abs(binary_entropy(1.0 / 3.0) - 0.9182958340544896) < 1e-12);
    CHECK(binary_entropy(0.0) == 0.0);
    CHECK(binary_entropy(1.0) == 0.0);
    CHECK_THROWS_AS(binary_entropy(-0.1), std::domain_error);

    const double one[] = {1.0};
    CHECK(von_neumann_entropy(one) == 0.0);
    const double pair[] = {0.5, 0.5};
    CHECK(std::abs(von_neumann_entropy(pair) - 1.0) < 1e-15);
    const double bad[] = {0.8, 0.8};
    CHECK_THROWS_AS(von_neumann_entropy(bad), std::domain_error);
}

TEST_CASE("squashed W3 bound endpoints and shape") {
    CHECK(std::abs(squashed_bound_w3(0.0)) < 1e-12);
    CHECK(std::abs(squashed_bound_w3(1.0) - 1.0) < 1e-12);
    CHECK_THROWS_AS(squashed_bound_w3(-0.1), std::domain_error);

    double prev = -1e-13;
    for (int i = 0; i <= 100; ++i) {
        const double eta = i / 100.0;
        const double v = squashed_bound_w3(eta);
        CHECK(v >= -1e-12);
        CHECK(v <= 1.0 + 1e-12);
        CHECK(v >= prev - 1e-12); // increasing with transmittance
        prev = v;
    }
    const double mid = squashed_bound_w3(0.5);
    CHECK(mid > 0.0);
    CHECK(mid < 1.0);
}

TEST_CASE("general m-party bound") {
    CHECK(std::abs(squashed_bound_general(3, 1.5 * binary_entropy(1.0 / 3.0)) - 1.0) < 1e-13);
    CHECK(squashed_bound_general(4, 0.0) == 0.0);
    CHECK(std::abs(squashed_bound_general(2, 1.0) - 1.0) < 1e-13);
    CHECK_THROWS_AS(squashed_bound_general(1, 1.0), std::domain_error);
}

TEST_CASE("explicitly constructed joint state reproduces the two-point spectra") {
    // |Psi''> = sqrt(eta) |W>|0>|0> + sqrt((1-eta)/2) (|0>|W>|0> + |0>|0>|W>),
    // traced over the extra environment; its nonzero spectrum must be
    // {(1-eta)/2, (1+eta)/2}.
    for (double eta : {0.25, 0.5, 0.75}) {
        auto w = enumerate_single_occupancy(3, 1);
        const OccupationVector vac({0, 0, 0});
        PureFockState psi(RegisterLayout{{"S", 3}, {"E", 3}, {"Eprime", 3}});
        const double aw = std::sqrt(eta) / std::sqrt(3.0);
        const double ae = std::sqrt((1.0 - eta) / 2.0) / std::sqrt(3.0);
        for (const auto& f : w) {
            psi.add_term(concat(concat(f, vac), vac), aw);
            psi.add_term(concat(concat(vac, f), vac), ae);
            psi.add_term(concat(concat(vac, vac), f), ae);
        }
        CHECK(std::abs(psi.squared_norm() - 1.0) < 1e-13);

        // rho_SE[(se), (se')] = sum_e' psi(se, e') conj(psi(se', e'))
        std::vector<OccupationVector> se_basis;
        for (const auto& f : w) se_basis.push_back(concat(f, vac));
        for (const auto& f : w) se_basis.push_back(concat(vac, f));
        se_basis.push_back(concat(vac, vac));

        std::vector<OccupationVector> eprime_patterns = w;
        eprime_patterns.push_back(vac);
        Eigen::MatrixXd rho(se_basis.size(), se_basis.size());
        rho.setZero();
        for (const auto& ep : eprime_patterns) {
            auto branch = partial_projection(psi, "Eprime", ep);
            for (std::size_t i = 0; i < se_basis.size(); ++i) {
                for (std::size_t j = 0; j < se_basis.size(); ++j) {
                    rho(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) +=
                        (branch.amplitude(se_basis[i]) *
                         std::conj(branch.amplitude(se_basis[j])))
                            .real();
                }
            }
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(rho);
        std::vector<double> nonzero;
        for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
            if (es.eigenvalues()(i) > 1e-12) nonzero.push_back(es.eigenvalues()(i));
        }
        REQUIRE(nonzero.size() == 2);
        CHECK(std::abs(nonzero[0] - (1.0 - eta) / 2.0) < 1e-12);
        CHECK(std::abs(nonzero[1] - (1.0 + eta) / 2.0) < 1e-12);
    }
}

TEST_CASE("repeater rate overtakes the direct rate at long distance") {
    bool crossed = false;
    for (double d = 0.0; d <= 300.0; d += 1.0) {
        LossChannel ch = LossChannel::from_distance(d, 0.2);
        const double rep = rate_at_fixed_fidelity(3, 0.95, ch);
        const double direct = direct_rate(3, StarChannel(ch.transmittance(), 3));
        if (rep > direct) {
            crossed = true;
            break;
        }
    }
    CHECK(crossed);
}
