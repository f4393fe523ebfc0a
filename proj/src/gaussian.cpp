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

#include "wstar/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace wstar {

namespace {

using cd = std::complex<double>;

double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= static_cast<double>(i);
    return f;
}

/// Husimi covariance in the complex (a, a*) representation:
/// Sigma_Q = W sigma W^dag + I/2 with W = (1/2) [[I, iI], [I, -iI]].
Eigen::MatrixXcd husimi_covariance(const Eigen::MatrixXd& cov) {
    const Eigen::Index n = cov.rows() / 2;
    Eigen::MatrixXcd w(2 * n, 2 * n);
    w.setZero();
    const cd half(0.5, 0.0);
    const cd half_i(0.0, 0.5);
    for (Eigen::Index j = 0; j < n; ++j) {
        w(j, j) = half;
        w(j, n + j) = half_i;
        w(n + j, j) = half;
        w(n + j, n + j) = -half_i;
    }
    return w * cov.cast<cd>() * w.adjoint() +
           0.5 * Eigen::MatrixXcd::Identity(2 * n, 2 * n);
}

/// Hafnian by recursive pairing of the first index; even dimension <= ~20.
cd hafnian(const Eigen::MatrixXcd& m, std::vector<int>& idx) {
    if (idx.empty()) return 1.0;
    const int first = idx[0];
    cd total = 0.0;
    std::vector<int> rest(idx.size() - 2);
    for (std::size_t j = 1; j < idx.size(); ++j) {
        const cd factor = m(first, idx[j]);
        if (factor == cd(0.0)) continue;
        std::size_t pos = 0;
        for (std::size_t t = 1; t < idx.size(); ++t) {
            if (t != j) rest[pos++] = idx[t];
        }
        total += factor * hafnian(m, rest);
    }
    return total;
}

Eigen::MatrixXd loss_on_mode(const Eigen::MatrixXd& cov, int mode, double transmittance) {
    const Eigen::Index n = cov.rows() / 2;
    Eigen::VectorXd scale = Eigen::VectorXd::Ones(2 * n);
    const double t = std::sqrt(transmittance);
    scale(mode) = t;
    scale(n + mode) = t;
    Eigen::MatrixXd out = scale.asDiagonal() * cov * scale.asDiagonal();
    out(mode, mode) += 1.0 - transmittance;
    out(n + mode, n + mode) += 1.0 - transmittance;
    return out;
}

/// 2x2 quadrature marginal of one mode.
Eigen::Matrix2d mode_marginal(const Eigen::MatrixXd& cov, int mode) {
    const Eigen::Index n = cov.rows() / 2;
    Eigen::Matrix2d b;
    b << cov(mode, mode), cov(mode, n + mode), cov(n + mode, mode), cov(n + mode, n + mode);
    return b;
}

/// Rows/cols of the full covariance with one mode deleted, plus the cross
/// block against that mode, arranged for the vacuum-projection update.
struct Partition {
    Eigen::MatrixXd rest;  // (2n-2) x (2n-2)
    Eigen::MatrixXd cross; // (2n-2) x 2
    Eigen::Matrix2d block; // 2 x 2
    std::vector<int> rest_modes;
};

Partition partition_mode(const Eigen::MatrixXd& cov, int mode) {
    const int n = static_cast<int>(cov.rows()) / 2;
    Partition p;
    p.rest_modes.reserve(static_cast<std::size_t>(n - 1));
    for (int m = 0; m < n; ++m) {
        if (m != mode) p.rest_modes.push_back(m);
    }
    const int nr = n - 1;
    auto qidx = [&](int m, int q) { return q == 0 ? m : n + m; };
    p.rest.resize(2 * nr, 2 * nr);
    p.cross.resize(2 * nr, 2);
    for (int i = 0; i < nr; ++i) {
        for (int qi = 0; qi < 2; ++qi) {
            const int row = qidx(p.rest_modes[static_cast<std::size_t>(i)], qi);
            for (int j = 0; j < nr; ++j) {
                for (int qj = 0; qj < 2; ++qj) {
                    p.rest(qi * nr + i, qj * nr + j) =
                        cov(row, qidx(p.rest_modes[static_cast<std::size_t>(j)], qj));
                }
            }
            p.cross(qi * nr + i, 0) = cov(row, qidx(mode, 0));
            p.cross(qi * nr + i, 1) = cov(row, qidx(mode, 1));
        }
    }
    p.block = mode_marginal(cov, mode);
    return p;
}

/// Covariance restricted to a subset of modes (partial trace).
Eigen::MatrixXd marginal_covariance(const Eigen::MatrixXd& cov, const std::vector<int>& modes) {
    const int n = static_cast<int>(cov.rows()) / 2;
    const int k = static_cast<int>(modes.size());
    Eigen::MatrixXd out(2 * k, 2 * k);
    auto qidx = [&](int m, int q) { return q == 0 ? m : n + m; };
    for (int i = 0; i < k; ++i) {
        for (int qi = 0; qi < 2; ++qi) {
            for (int j = 0; j < k; ++j) {
                for (int qj = 0; qj < 2; ++qj) {
                    out(qi * k + i, qj * k + j) =
                        cov(qidx(modes[static_cast<std::size_t>(i)], qi),
                            qidx(modes[static_cast<std::size_t>(j)], qj));
                }
            }
        }
    }
    return out;
}

struct ConditionalKernel {
    double p0 = 1.0;               // no-click probability after efficiency loss
    Eigen::MatrixXd sigma_x;       // marginal on X
    Eigen::MatrixXd sigma_x_proj;  // X marginal of the vacuum-conditioned state
};

ConditionalKernel conditional_kernel(const GaussianState& network, int click_mode,
                                     const DetectorModel& detector) {
    detector.validate();
    if (click_mode < 0 || static_cast<std::size_t>(click_mode) >= network.n_modes()) {
        throw std::domain_error("click mode index out of range");
    }
    const RegisterSpan& x = network.layout().span("X");
    Eigen::MatrixXd cov = loss_on_mode(network.covariance(), click_mode, detector.efficiency);

    ConditionalKernel k;
    Eigen::Matrix2d b = mode_marginal(cov, click_mode);
    const double det = (b + Eigen::Matrix2d::Identity()).determinant();
    if (det <= 0.0) {
        throw std::domain_error("non-physical detector-mode marginal");
    }
    k.p0 = 2.0 / std::sqrt(det);

    std::vector<int> x_modes;
    for (std::size_t m = 0; m < x.width; ++m) x_modes.push_back(static_cast<int>(x.offset + m));
    k.sigma_x = marginal_covariance(cov, x_modes);

    // Vacuum projection of the click mode: Schur complement against B + I,
    // with success weight p0; then trace the remaining shared modes.
    Partition p = partition_mode(cov, click_mode);
    Eigen::MatrixXd conditioned =
        p.rest - p.cross * (p.block + Eigen::Matrix2d::Identity()).inverse() * p.cross.transpose();
    std::vector<int> x_in_rest;
    for (std::size_t i = 0; i < p.rest_modes.size(); ++i) {
        const int m = p.rest_modes[i];
        if (m >= static_cast<int>(x.offset) && m < static_cast<int>(x.offset + x.width)) {
            x_in_rest.push_back(static_cast<int>(i));
        }
    }
    k.sigma_x_proj = marginal_covariance(conditioned, x_in_rest);
    return k;
}

} // namespace

SqueezingSpec SqueezingSpec::from_r(double r) {
    if (r < 0.0) throw std::domain_error("squeezing parameter must be non-negative");
    return SqueezingSpec{r};
}

SqueezingSpec SqueezingSpec::from_db(double db) {
    if (db < 0.0) throw std::domain_error("squeezing in dB must be non-negative");
    return SqueezingSpec{db * std::log(10.0) / 20.0};
}

double SqueezingSpec::db() const { return 20.0 * r / std::log(10.0); }
double SqueezingSpec::lambda() const { return std::tanh(r); }
double SqueezingSpec::epr_variance() const { return std::exp(-2.0 * r); }

void DetectorModel::validate() const {
    if (dark_count_prob < 0.0 || dark_count_prob > 1.0) {
        throw std::domain_error("dark count probability must lie in [0, 1]");
    }
    if (efficiency < 0.0 || efficiency > 1.0) {
        throw std::domain_error("detector efficiency must lie in [0, 1]");
    }
}

GaussianState::GaussianState(Eigen::MatrixXd covariance, RegisterLayout layout)
    : cov_(std::move(covariance)), layout_(std::move(layout)) {
    const Eigen::Index dim = 2 * static_cast<Eigen::Index>(layout_.total_modes());
    if (cov_.rows() != dim || cov_.cols() != dim) {
        throw std::domain_error("covariance size does not match layout");
    }
    if ((cov_ - cov_.transpose()).cwiseAbs().maxCoeff() > 1e-10) {
        throw std::domain_error("covariance must be symmetric");
    }
    // Uncertainty principle: sigma + i Omega >= 0 for xxpp ordering.
    const Eigen::Index n = dim / 2;
    Eigen::MatrixXcd test = cov_.cast<cd>();
    for (Eigen::Index j = 0; j < n; ++j) {
        test(j, n + j) += cd(0.0, 1.0);
        test(n + j, j) += cd(0.0, -1.0);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(test, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -1e-10) {
        throw std::domain_error("covariance violates the uncertainty bound");
    }
}

GaussianState GaussianState::vacuum(RegisterLayout layout) {
    const Eigen::Index dim = 2 * static_cast<Eigen::Index>(layout.total_modes());
    return GaussianState(Eigen::MatrixXd::Identity(dim, dim), std::move(layout));
}

GaussianState tmsv(const SqueezingSpec& spec) {
    if (spec.r < 0.0) throw std::domain_error("squeezing parameter must be non-negative");
    const double ch = std::cosh(2.0 * spec.r);
    const double sh = std::sinh(2.0 * spec.r);
    Eigen::MatrixXd cov(4, 4);
    // Ordering (x1, x2, p1, p2).
    cov << ch, sh, 0, 0,
           sh, ch, 0, 0,
           0, 0, ch, -sh,
           0, 0, -sh, ch;
    return GaussianState(std::move(cov), RegisterLayout{{"X", 1}, {"Xp", 1}});
}

double epr_variance(const GaussianState& state, int mode_a, int mode_b) {
    const int n = static_cast<int>(state.n_modes());
    if (mode_a < 0 || mode_b < 0 || mode_a >= n || mode_b >= n || mode_a == mode_b) {
        throw std::domain_error("invalid mode pair");
    }
    const Eigen::MatrixXd& c = state.covariance();
    const double var_xm = c(mode_a, mode_a) + c(mode_b, mode_b) - 2.0 * c(mode_a, mode_b);
    const int pa = n + mode_a;
    const int pb = n + mode_b;
    const double var_pp = c(pa, pa) + c(pb, pb) + 2.0 * c(pa, pb);
    return 0.25 * (var_xm + var_pp);
}

GaussianState gaussian_loss(const GaussianState& state, int mode, double transmittance) {
    if (mode < 0 || static_cast<std::size_t>(mode) >= state.n_modes()) {
        throw std::domain_error("loss mode index out of range");
    }
    if (transmittance < 0.0 || transmittance > 1.0) {
        throw std::domain_error("transmittance must lie in [0, 1]");
    }
    return GaussianState(loss_on_mode(state.covariance(), mode, transmittance), state.layout());
}

GaussianState gaussian_unitary(const GaussianState& state, const InterferometerMatrix& u,
                               std::string_view register_name) {
    const RegisterSpan& reg = state.layout().span(register_name);
    if (static_cast<int>(reg.width) != u.n_modes()) {
        throw std::domain_error("register width does not match interferometer size");
    }
    const Eigen::Index n = static_cast<Eigen::Index>(state.n_modes());
    // Symplectic action of the passive optic:
    // x -> Re(U) x - Im(U) p,  p -> Im(U) x + Re(U) p on the register block.
    Eigen::MatrixXd s = Eigen::MatrixXd::Identity(2 * n, 2 * n);
    const Eigen::Index o = static_cast<Eigen::Index>(reg.offset);
    const Eigen::Index w = static_cast<Eigen::Index>(reg.width);
    s.block(o, o, w, w) = u.matrix().real();
    s.block(o, n + o, w, w) = -u.matrix().imag();
    s.block(n + o, o, w, w) = u.matrix().imag();
    s.block(n + o, n + o, w, w) = u.matrix().real();
    return GaussianState(s * state.covariance() * s.transpose(), state.layout());
}

int gaussian_mixer_ports(int n_parties) {
    if (n_parties < 2 || n_parties > 4) {
        throw std::domain_error("the Gaussian pipeline supports 2 to 4 parties");
    }
    return n_parties == 2 ? 2 : 4;
}

GaussianState build_gaussian_network(int n_parties, const SqueezingSpec& spec,
                                     const LossChannel& channel) {
    const int ports = gaussian_mixer_ports(n_parties);
    RegisterLayout layout{{"X", static_cast<std::size_t>(n_parties)},
                          {"Xp", static_cast<std::size_t>(ports)}};
    const int total = n_parties + ports;
    Eigen::MatrixXd cov = Eigen::MatrixXd::Identity(2 * total, 2 * total);
    const double ch = std::cosh(2.0 * spec.r);
    const double sh = std::sinh(2.0 * spec.r);
    for (int i = 0; i < n_parties; ++i) {
        const int xi = i;
        const int si = n_parties + i;
        cov(xi, xi) = ch;
        cov(si, si) = ch;
        cov(xi, si) = sh;
        cov(si, xi) = sh;
        cov(total + xi, total + xi) = ch;
        cov(total + si, total + si) = ch;
        cov(total + xi, total + si) = -sh;
        cov(total + si, total + xi) = -sh;
    }
    GaussianState state(std::move(cov), layout);
    for (int i = 0; i < n_parties; ++i) {
        state = gaussian_loss(state, n_parties + i, channel.transmittance());
    }
    return gaussian_unitary(state, hadamard_tree(ports), "Xp");
}

int click_mode_index(const GaussianState& network) {
    return static_cast<int>(network.layout().span("Xp").offset);
}

double no_click_probability(const GaussianState& state, int mode, const DetectorModel& detector) {
    detector.validate();
    if (mode < 0 || static_cast<std::size_t>(mode) >= state.n_modes()) {
        throw std::domain_error("detector mode index out of range");
    }
    Eigen::MatrixXd cov = loss_on_mode(state.covariance(), mode, detector.efficiency);
    const double det = (mode_marginal(cov, mode) + Eigen::Matrix2d::Identity()).determinant();
    if (det <= 0.0) {
        throw std::domain_error("non-physical detector-mode marginal");
    }
    return 2.0 / std::sqrt(det);
}

double click_probability(const GaussianState& state, int mode, const DetectorModel& detector) {
    return 1.0 - no_click_probability(state, mode, detector) + detector.dark_count_prob;
}

std::complex<double> gaussian_fock_matrix_element(const Eigen::MatrixXd& covariance,
                                                  const OccupationVector& bra,
                                                  const OccupationVector& ket) {
    const int n = static_cast<int>(covariance.rows()) / 2;
    if (static_cast<int>(bra.n_modes()) != n || static_cast<int>(ket.n_modes()) != n) {
        throw std::domain_error("occupation width does not match covariance");
    }
    if (bra.total() + ket.total() > 20) {
        throw std::domain_error("fock matrix element limited to 20 photons combined");
    }
    Eigen::MatrixXcd sigma_q = husimi_covariance(covariance);
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(sigma_q);
    const cd det = lu.determinant();
    Eigen::MatrixXcd inv = lu.inverse();
    // Kernel A = X (I - Sigma_Q^{-1}); its hafnian over repeated indices gives
    // the matrix elements.  Ket photons repeat the first-block index, bra
    // photons the second-block index.
    Eigen::MatrixXcd a(2 * n, 2 * n);
    Eigen::MatrixXcd imq = Eigen::MatrixXcd::Identity(2 * n, 2 * n) - inv;
    a.topRows(n) = imq.bottomRows(n);
    a.bottomRows(n) = imq.topRows(n);

    std::vector<int> idx;
    double fact = 1.0;
    for (int j = 0; j < n; ++j) {
        for (int r = 0; r < ket[static_cast<std::size_t>(j)]; ++r) idx.push_back(j);
        fact *= factorial(ket[static_cast<std::size_t>(j)]);
    }
    for (int j = 0; j < n; ++j) {
        for (int r = 0; r < bra[static_cast<std::size_t>(j)]; ++r) idx.push_back(n + j);
        fact *= factorial(bra[static_cast<std::size_t>(j)]);
    }
    if (idx.size() % 2 != 0) return 0.0; // zero-mean state has no odd moments
    Eigen::MatrixXcd sub(idx.size(), idx.size());
    for (std::size_t i = 0; i < idx.size(); ++i) {
        for (std::size_t j = 0; j < idx.size(); ++j) {
            sub(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                a(idx[i], idx[j]);
        }
    }
    std::vector<int> all(idx.size());
    for (std::size_t i = 0; i < idx.size(); ++i) all[i] = static_cast<int>(i);
    return hafnian(sub, all) / std::sqrt(det * fact);
}

Eigen::MatrixXcd conditional_state_fock_elements(const GaussianState& network, int click_mode,
                                                 const DetectorModel& detector,
                                                 const std::vector<OccupationVector>& bras,
                                                 const std::vector<OccupationVector>& kets,
                                                 int max_photons) {
    const RegisterSpan& x = network.layout().span("X");
    for (const auto* list : {&bras, &kets}) {
        for (const OccupationVector& v : *list) {
            if (v.n_modes() != x.width) {
                throw std::domain_error("bra/ket vectors must live on register X");
            }
            if (v.total() > max_photons) {
                throw std::domain_error("bra/ket photon number exceeds the cutoff");
            }
        }
    }
    ConditionalKernel kern = conditional_kernel(network, click_mode, detector);
    const double norm = detector.dark_count_prob + 1.0 - kern.p0;
    if (norm <= 0.0) {
        throw std::domain_error("click probability is zero; conditional state undefined");
    }
    Eigen::MatrixXcd out(bras.size(), kets.size());
    for (std::size_t i = 0; i < bras.size(); ++i) {
        for (std::size_t j = 0; j < kets.size(); ++j) {
            const cd plain = gaussian_fock_matrix_element(kern.sigma_x, bras[i], kets[j]);
            const cd projected =
                kern.p0 * gaussian_fock_matrix_element(kern.sigma_x_proj, bras[i], kets[j]);
            out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                ((detector.dark_count_prob + 1.0) * plain - projected) / norm;
        }
    }
    return out;
}

double w_fidelity(const GaussianState& network, int click_mode, const DetectorModel& detector,
                  int n_parties) {
    if (n_parties < 2 || n_parties > 4) {
        throw std::domain_error("the Gaussian pipeline supports 2 to 4 parties");
    }
    const auto basis = enumerate_single_occupancy(n_parties, 1);
    Eigen::MatrixXcd el =
        conditional_state_fock_elements(network, click_mode, detector, basis, basis);
    const cd total = el.sum();
    return total.real() / n_parties;
}

int default_fock_cutoff_total(int n_parties, double lambda) {
    const double q = n_parties * lambda * lambda;
    int c = 0;
    while (c < 8 && std::pow(q, c + 1) >= 1e-12) ++c;
    return std::max(c, 2);
}

SqueezingSolveResult solve_squeezing_for_fidelity(int n_parties, double target_fidelity,
                                                  const LossChannel& channel,
                                                  const DetectorModel& detector) {
    if (target_fidelity <= 0.0 || target_fidelity >= 1.0) {
        throw std::domain_error("target fidelity must lie strictly between 0 and 1");
    }
    auto eval = [&](double r) {
        GaussianState net = build_gaussian_network(n_parties, SqueezingSpec::from_r(r), channel);
        const int mode = click_mode_index(net);
        return std::pair<double, double>{w_fidelity(net, mode, detector, n_parties),
                                         click_probability(net, mode, detector)};
    };

    // Fidelity rises from ~0 (dark counts dominate) to a peak and then falls
    // under multiphoton contamination.  Scan a log grid for the peak.
    constexpr int kScan = 120;
    const double r_lo = 1e-4;
    const double r_hi = 2.0;
    std::vector<double> grid(kScan);
    std::vector<double> fid(kScan);
    double best_f = -1.0;
    int best_i = 0;
    for (int i = 0; i < kScan; ++i) {
        const double fr = static_cast<double>(i) / (kScan - 1);
        grid[static_cast<std::size_t>(i)] = r_lo * std::pow(r_hi / r_lo, fr);
        fid[static_cast<std::size_t>(i)] = eval(grid[static_cast<std::size_t>(i)]).first;
        if (fid[static_cast<std::size_t>(i)] > best_f) {
            best_f = fid[static_cast<std::size_t>(i)];
            best_i = i;
        }
    }
    if (best_f < target_fidelity) {
        throw fidelity_ceiling_error(
            "target fidelity " + std::to_string(target_fidelity) +
                " exceeds the achievable maximum " + std::to_string(best_f),
            best_f);
    }
    // Bracket the falling-branch crossing right of the peak.
    double lo = grid[static_cast<std::size_t>(best_i)];
    double hi = r_hi;
    for (int i = best_i + 1; i < kScan; ++i) {
        if (fid[static_cast<std::size_t>(i)] >= target_fidelity) {
            lo = grid[static_cast<std::size_t>(i)];
        } else {
            hi = grid[static_cast<std::size_t>(i)];
            break;
        }
    }
    double f_mid = best_f;
    double mid = lo;
    for (int it = 0; it < 200; ++it) {
        mid = 0.5 * (lo + hi);
        f_mid = eval(mid).first;
        if (std::abs(f_mid - target_fidelity) <= 1e-6) break;
        if (f_mid >= target_fidelity) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    auto [f, p] = eval(mid);
    return SqueezingSolveResult{SqueezingSpec::from_r(mid), f, p};
}

} // namespace wstar
