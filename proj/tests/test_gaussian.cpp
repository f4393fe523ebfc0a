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

#include "test_support.hpp"
#include "wstar/fock_reference.hpp"
#include "wstar/gaussian.hpp"

using namespace wstar;

namespace {

DetectorModel paper_detector() { return DetectorModel{}; } // 1e-7 dark, 0.8 efficiency

int cutoff_for(double lambda) {
    int c = 1;
    while (c < 15 && std::pow(lambda, 2.0 * (c + 1)) >= 1e-12) ++c;
    return std::max(c, 4);
}

} // namespace

TEST_CASE("squeezing parametrizations") {
    auto s = SqueezingSpec::from_r(0.1);
    CHECK(std::abs(s.db() - 20.0 * 0.1 / std::log(10.0)) < 1e-15);
    CHECK(std::abs(s.lambda() - std::tanh(0.1)) < 1e-15);
    CHECK(std::abs(s.epr_variance() - std::exp(-0.2)) < 1e-15);

    const double db_list[] = {0.87, 1.3, 1.74, 2.17, 2.61, 3.04, 3.47};
    const double r_list[] = {0.1001, 0.1497, 0.2003, 0.2498, 0.3005, 0.3500, 0.3995};
    for (int i = 0; i < 7; ++i) {
        auto spec = SqueezingSpec::from_db(db_list[i]);
        CHECK(std::abs(spec.r - r_list[i]) < 1e-4);
        // db <-> r <-> lambda round-trips
        CHECK(std::abs(SqueezingSpec::from_db(spec.db()).r - spec.r) < 1e-12);
        CHECK(std::abs(std::atanh(spec.lambda()) - spec.r) < 1e-12);
    }
    CHECK_THROWS_AS(SqueezingSpec::from_r(-0.1), std::domain_error);
}

TEST_CASE("tmsv covariance") {
    auto vac = tmsv(SqueezingSpec::from_r(0.0));
    CHECK((vac.covariance() - Eigen::MatrixXd::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-14);

    auto s = tmsv(SqueezingSpec::from_r(0.1));
    CHECK(std::abs(s.covariance()(0, 0) - std::cosh(0.2)) < 1e-14);
    CHECK(std::abs(s.covariance()(0, 1) - std::sinh(0.2)) < 1e-14);
    CHECK(std::abs(s.covariance()(2, 3) + std::sinh(0.2)) < 1e-14);
    CHECK(std::abs(epr_variance(s, 0, 1) - std::exp(-0.2)) < 1e-13);
    CHECK(std::abs(epr_variance(GaussianState::vacuum(RegisterLayout{{"A", 2}}), 0, 1) - 1.0) <
          1e-14);
}

TEST_CASE("tmsv arm through loss matches the Fock-space moments") {
    // Build the same lossy TMSV in sparse Fock space and compare every
    // covariance entry to 1e-10.
    const double r = 0.15;
    const double lambda = std::tanh(r);
    const double tt = 0.5;
    auto gauss = gaussian_loss(tmsv(SqueezingSpec::from_r(r)), 1, tt);

    PureFockState psi(RegisterLayout{{"X", 1}, {"Xp", 1}, {"E", 1}}, 0.0);
    const int cutoff = 40;
    for (int n = 0; n <= cutoff; ++n) {
        psi.add_term(OccupationVector({n, n, 0}),
                     std::sqrt(1.0 - lambda * lambda) * std::pow(lambda, n));
    }
    psi = apply_loss(LossChannel::from_transmittance(tt), psi, 1, 2);

    auto moment = [&](const PureFockState& a, const PureFockState& b) {
        return inner(a, b).real();
    };
    // xxpp covariance over the first two modes
    Eigen::MatrixXd cov(4, 4);
    std::vector<PureFockState> quads;
    quads.push_back(test::apply_x(psi, 0));
    quads.push_back(test::apply_x(psi, 1));
    quads.push_back(test::apply_p(psi, 0));
    quads.push_back(test::apply_p(psi, 1));
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            cov(i, j) = 0.5 * (moment(quads[static_cast<std::size_t>(i)], quads[static_cast<std::size_t>(j)]) +
                               moment(quads[static_cast<std::size_t>(j)], quads[static_cast<std::size_t>(i)]));
        }
    }
    CHECK((cov - gauss.covariance()).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("loss and unitary basics") {
    auto s = tmsv(SqueezingSpec::from_r(0.2));
    auto same = gaussian_loss(s, 0, 1.0);
    CHECK((same.covariance() - s.covariance()).cwiseAbs().maxCoeff() < 1e-14);

    auto vac = GaussianState::vacuum(RegisterLayout{{"R", 4}});
    auto still = gaussian_unitary(gaussian_loss(vac, 2, 0.3), hadamard_tree(4), "R");
    CHECK((still.covariance() - Eigen::MatrixXd::Identity(8, 8)).cwiseAbs().maxCoeff() < 1e-12);

    CHECK_THROWS_AS(gaussian_loss(s, 5, 0.5), std::domain_error);
    CHECK_THROWS_AS(gaussian_unitary(s, hadamard_tree(4), "X"), std::domain_error);
}

TEST_CASE("no-click probability closed forms") {
    DetectorModel ideal{0.0, 1.0, false};
    auto vac = GaussianState::vacuum(RegisterLayout{{"R", 1}});
    CHECK(std::abs(no_click_probability(vac, 0, ideal) - 1.0) < 1e-14);
    CHECK(std::abs(click_probability(vac, 0, paper_detector()) - 1e-7) < 1e-15);

    // idle TMSV partner mode: p0 = 1 - lambda^2
    const double r = 0.1;
    const double lambda2 = std::pow(std::tanh(r), 2);
    auto s = tmsv(SqueezingSpec::from_r(r));
    CHECK(std::abs(no_click_probability(s, 1, ideal) - (1.0 - lambda2)) < 1e-12);

    // lossy arm with detector inefficiency: thermal with nbar = eta T sinh^2 r
    DetectorModel det = paper_detector();
    auto lossy = gaussian_loss(s, 1, 0.37);
    const double nbar = det.efficiency * 0.37 * std::pow(std::sinh(r), 2);
    CHECK(std::abs(no_click_probability(lossy, 1, det) - 1.0 / (1.0 + nbar)) < 1e-12);
    CHECK(std::abs(click_probability(lossy, 1, det) -
                   (1.0 - 1.0 / (1.0 + nbar) + det.dark_count_prob)) < 1e-15);
}

TEST_CASE("gaussian Fock matrix elements on known states") {
    // vacuum
    Eigen::MatrixXd vac_cov = Eigen::MatrixXd::Identity(2, 2);
    CHECK(std::abs(gaussian_fock_matrix_element(vac_cov, OccupationVector({0}),
                                                OccupationVector({0})) -
                   1.0) < 1e-13);
    CHECK(std::abs(gaussian_fock_matrix_element(vac_cov, OccupationVector({1}),
                                                OccupationVector({1}))) < 1e-13);

    // thermal state: <n|rho|n> = nbar^n / (1+nbar)^(n+1)
    const double nbar = 0.4;
    Eigen::MatrixXd th_cov = (2.0 * nbar + 1.0) * Eigen::MatrixXd::Identity(2, 2);
    for (int n = 0; n <= 3; ++n) {
        const double expect = std::pow(nbar, n) / std::pow(1.0 + nbar, n + 1);
        CHECK(std::abs(gaussian_fock_matrix_element(th_cov, OccupationVector({n}),
                                                    OccupationVector({n})) -
                       expect) < 1e-12);
    }
    CHECK(std::abs(gaussian_fock_matrix_element(th_cov, OccupationVector({0}),
                                                OccupationVector({1}))) < 1e-13);

    // TMSV: <nn|rho|mm> = (1-lambda^2) lambda^(n+m)
    const double r = 0.3;
    const double lam = std::tanh(r);
    auto s = tmsv(SqueezingSpec::from_r(r));
    for (int n = 0; n <= 2; ++n) {
        for (int m = 0; m <= 2; ++m) {
            const double expect = (1.0 - lam * lam) * std::pow(lam, n + m);
            CHECK(std::abs(gaussian_fock_matrix_element(s.covariance(),
                                                        OccupationVector({n, n}),
                                                        OccupationVector({m, m})) -
                           expect) < 1e-12);
        }
    }
    CHECK(std::abs(gaussian_fock_matrix_element(s.covariance(), OccupationVector({1, 0}),
                                                OccupationVector({0, 1}))) < 1e-13);
}

TEST_CASE("conditional state at zero squeezing is the vacuum") {
    auto net = build_gaussian_network(2, SqueezingSpec::from_r(0.0),
                                      LossChannel::from_transmittance(0.8));
    const int mode = click_mode_index(net);
    std::vector<OccupationVector> basis = {OccupationVector({0, 0})};
    auto el = conditional_state_fock_elements(net, mode, paper_detector(), basis, basis);
    CHECK(std::abs(el(0, 0).real() - 1.0) < 1e-10);
    CHECK(std::abs(w_fidelity(net, mode, paper_detector(), 2)) < 1e-12);
}

TEST_CASE("conditional elements: diagonal real and non-negative") {
    auto net = build_gaussian_network(3, SqueezingSpec::from_db(2.17),
                                      LossChannel::from_distance(30.0, 0.2));
    const int mode = click_mode_index(net);
    std::vector<OccupationVector> basis;
    for (int tot = 0; tot <= 2; ++tot) {
        for (const auto& v : enumerate_detection_patterns(3, tot)) basis.push_back(v);
    }
    auto el = conditional_state_fock_elements(net, mode, paper_detector(), basis, basis);
    for (Eigen::Index i = 0; i < el.rows(); ++i) {
        CHECK(std::abs(el(i, i).imag()) < 1e-12);
        CHECK(el(i, i).real() >= -1e-12);
    }
    // hermiticity
    CHECK((el - el.adjoint()).cwiseAbs().maxCoeff() < 1e-10);

    CHECK_THROWS_AS(conditional_state_fock_elements(net, mode, paper_detector(),
                                                    {OccupationVector({9, 0, 0})}, basis, 8),
                    std::domain_error);
}

TEST_CASE("dual-engine agreement on the two-photon matrix") {
    const double r = 0.1;
    const double tt = 0.5;
    auto net = build_gaussian_network(2, SqueezingSpec::from_r(r),
                                      LossChannel::from_transmittance(tt));
    const int mode = click_mode_index(net);
    DetectorModel det = paper_detector();

    std::vector<OccupationVector> basis;
    for (int tot = 0; tot <= 2; ++tot) {
        for (const auto& v : enumerate_detection_patterns(2, tot)) basis.push_back(v);
    }
    auto el_cov = conditional_state_fock_elements(net, mode, det, basis, basis);

    FockReferenceConfig fc;
    fc.n_parties = 2;
    fc.lambda = std::tanh(r);
    fc.transmittance = tt;
    fc.det_efficiency = det.efficiency;
    fc.per_source_cutoff = cutoff_for(fc.lambda);
    FockReference ref(fc, basis);
    auto el_fock = ref.conditional_matrix(basis, det);

    CHECK((el_cov - el_fock).cwiseAbs().maxCoeff() < 1e-8);
    CHECK(std::abs(click_probability(net, mode, det) - ref.click_probability(det)) < 1e-8);
    CHECK(std::abs(w_fidelity(net, mode, det, 2) - ref.w_fidelity(det)) < 1e-6);
}

TEST_CASE("dual-engine w fidelity at a lossy three-party point") {
    auto spec = SqueezingSpec::from_db(1.74);
    LossChannel ch = LossChannel::from_distance(40.0, 0.2);
    auto net = build_gaussian_network(3, spec, ch);
    DetectorModel det = paper_detector();

    FockReferenceConfig fc;
    fc.n_parties = 3;
    fc.lambda = spec.lambda();
    fc.transmittance = ch.transmittance();
    fc.det_efficiency = det.efficiency;
    fc.per_source_cutoff = cutoff_for(fc.lambda);
    FockReference ref(fc, enumerate_single_occupancy(3, 1));

    CHECK(std::abs(w_fidelity(net, click_mode_index(net), det, 3) - ref.w_fidelity(det)) < 1e-6);
    CHECK(std::abs(click_probability(net, click_mode_index(net), det) -
                   ref.click_probability(det)) < 1e-6);
}

TEST_CASE("fidelity monotone non-increasing in the dark-count rate") {
    auto net = build_gaussian_network(2, SqueezingSpec::from_db(0.87),
                                      LossChannel::from_distance(120.0, 0.2));
    const int mode = click_mode_index(net);
    double prev = 2.0;
    for (double pdc : {0.0, 1e-8, 1e-7, 1e-6, 1e-5}) {
        DetectorModel det{pdc, 0.8, false};
        const double f = w_fidelity(net, mode, det, 2);
        CHECK(f <= prev + 1e-12);
        prev = f;
    }
}

TEST_CASE("click probability versus distance") {
    double prev = 1.0;
    for (double d : {0.0, 25.0, 50.0, 100.0, 200.0, 400.0}) {
        auto net = build_gaussian_network(2, SqueezingSpec::from_db(1.3),
                                          LossChannel::from_distance(d, 0.2));
        DetectorModel no_dark{0.0, 0.8, false};
        const double p = click_probability(net, click_mode_index(net), no_dark);
        CHECK(p <= prev + 1e-15);
        prev = p;
        DetectorModel with_dark = paper_detector();
        CHECK(click_probability(net, click_mode_index(net), with_dark) >=
              with_dark.dark_count_prob);
    }
}

TEST_CASE("squeezing solver") {
    LossChannel ch = LossChannel::from_distance(30.0, 0.2);
    DetectorModel det = paper_detector();

    // self-consistency round trip: solving for an achieved fidelity returns at
    // least the same click rate
    auto probe = build_gaussian_network(2, SqueezingSpec::from_r(0.12), ch);
    const double f_probe = w_fidelity(probe, click_mode_index(probe), det, 2);
    const double p_probe = click_probability(probe, click_mode_index(probe), det);
    auto sol = solve_squeezing_for_fidelity(2, f_probe, ch, det);
    CHECK(std::abs(sol.fidelity - f_probe) <= 1e-6);
    CHECK(sol.click_prob >= p_probe - 1e-9);
    CHECK(sol.spec.r >= 0.12 - 1e-6);

    // unreachable target reports the ceiling
    try {
        solve_squeezing_for_fidelity(2, 0.999999, ch, det);
        FAIL("expected fidelity_ceiling_error");
    } catch (const fidelity_ceiling_error& e) {
        CHECK(e.max_achievable > 0.0);
        CHECK(e.max_achievable < 0.999999);
    }
}

TEST_CASE("default cutoff policy") {
    CHECK(default_fock_cutoff_total(2, 0.05) >= 2);
    CHECK(default_fock_cutoff_total(4, std::tanh(0.4)) == 8);
}
