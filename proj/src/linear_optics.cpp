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

#include "wstar/linear_optics.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace wstar {

namespace {

double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= static_cast<double>(i);
    return f;
}

} // namespace

InterferometerMatrix::InterferometerMatrix(Eigen::MatrixXcd matrix) : u_(std::move(matrix)) {
    if (u_.rows() != u_.cols() || u_.rows() < 1) {
        throw std::domain_error("interferometer matrix must be square and non-empty");
    }
    Eigen::MatrixXcd defect = u_ * u_.adjoint() - Eigen::MatrixXcd::Identity(u_.rows(), u_.cols());
    if (defect.cwiseAbs().maxCoeff() > 1e-12) {
        throw std::domain_error("interferometer matrix is not unitary to 1e-12");
    }
}

InterferometerMatrix hadamard_tree(int n_modes) {
    if (n_modes < 1 || !std::has_single_bit(static_cast<unsigned>(n_modes))) {
        throw std::domain_error("hadamard_tree requires a power-of-two mode count");
    }
    Eigen::MatrixXcd u(2, 2);
    const double s = 1.0 / std::sqrt(2.0);
    u << s, s, -s, s;
    Eigen::MatrixXcd acc = Eigen::MatrixXcd::Identity(1, 1);
    for (int dim = 1; dim < n_modes; dim *= 2) {
        Eigen::MatrixXcd next(2 * dim, 2 * dim);
        for (int r = 0; r < 2; ++r) {
            for (int c = 0; c < 2; ++c) {
                next.block(r * dim, c * dim, dim, dim) = u(r, c) * acc;
            }
        }
        acc = std::move(next);
    }
    return InterferometerMatrix(std::move(acc));
}

std::complex<double> permanent(const Eigen::MatrixXcd& m) {
    if (m.rows() != m.cols()) {
        throw std::domain_error("permanent requires a square matrix");
    }
    const int n = static_cast<int>(m.rows());
    if (n == 0) return 1.0;
    if (n > 16) {
        throw std::domain_error("permanent limited to dimension 16");
    }
    // Ryser: perm = (-1)^n sum_{S != 0} (-1)^|S| prod_i sum_{j in S} m(i,j),
    // visiting column subsets in Gray-code order so each step updates the row
    // sums by a single column.
    std::array<std::complex<double>, 16> rowsum{};
    std::complex<double> total = 0.0;
    std::uint32_t gray_prev = 0;
    for (std::uint32_t k = 1; k < (1u << n); ++k) {
        const std::uint32_t gray = k ^ (k >> 1);
        const std::uint32_t diff = gray ^ gray_prev;
        const int j = std::countr_zero(diff);
        const double sign_col = (gray & diff) ? 1.0 : -1.0;
        for (int i = 0; i < n; ++i) {
            rowsum[static_cast<std::size_t>(i)] += sign_col * m(i, j);
        }
        std::complex<double> prod = 1.0;
        for (int i = 0; i < n; ++i) prod *= rowsum[static_cast<std::size_t>(i)];
        const int bits = std::popcount(gray);
        total += ((bits & 1) ? -1.0 : 1.0) * prod;
        gray_prev = gray;
    }
    return ((n & 1) ? -1.0 : 1.0) * total;
}

std::complex<double> transition_amplitude(const InterferometerMatrix& u,
                                          const OccupationVector& input,
                                          const OccupationVector& output) {
    const int n = u.n_modes();
    if (static_cast<int>(input.n_modes()) != n || static_cast<int>(output.n_modes()) != n) {
        throw std::domain_error("occupation width does not match interferometer size");
    }
    if (input.total() != output.total()) {
        throw std::domain_error("transition amplitude requires equal photon numbers");
    }
    std::vector<int> rows, cols;
    double fact_prod = 1.0;
    for (int c = 0; c < n; ++c) {
        for (int r = 0; r < output[static_cast<std::size_t>(c)]; ++r) rows.push_back(c);
        fact_prod *= factorial(output[static_cast<std::size_t>(c)]);
    }
    for (int k = 0; k < n; ++k) {
        for (int r = 0; r < input[static_cast<std::size_t>(k)]; ++r) cols.push_back(k);
        fact_prod *= factorial(input[static_cast<std::size_t>(k)]);
    }
    const int d = static_cast<int>(rows.size());
    Eigen::MatrixXcd sub(d, d);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            sub(i, j) = u.entry(rows[static_cast<std::size_t>(i)], cols[static_cast<std::size_t>(j)]);
        }
    }
    return permanent(sub) / std::sqrt(fact_prod);
}

PureFockState apply_interferometer(const InterferometerMatrix& u, const PureFockState& state,
                                   std::string_view register_name) {
    const RegisterSpan& reg = state.layout().span(register_name);
    if (static_cast<int>(reg.width) != u.n_modes()) {
        throw std::domain_error("register width does not match interferometer size");
    }
    PureFockState out(state.layout(), state.prune_threshold());
    using Partial = std::map<std::vector<int>, std::complex<double>>;
    for (const auto& [occ, amp] : state.terms()) {
        // Expand prod_k (sum_c U(c,k) a_c^dag)^{n_k} |0> one photon at a time;
        // the sqrt factors accumulate the bosonic normalization exactly.
        double in_fact = 1.0;
        for (std::size_t m = 0; m < reg.width; ++m) {
            in_fact *= factorial(occ[reg.offset + m]);
        }
        Partial cur;
        cur.emplace(std::vector<int>(reg.width, 0), amp / std::sqrt(in_fact));
        for (std::size_t k = 0; k < reg.width; ++k) {
            for (int rep = 0; rep < occ[reg.offset + k]; ++rep) {
                Partial next;
                for (const auto& [vec, alpha] : cur) {
                    for (std::size_t c = 0; c < reg.width; ++c) {
                        std::complex<double> beta =
                            alpha * u.entry(static_cast<int>(c), static_cast<int>(k)) *
                            std::sqrt(static_cast<double>(vec[c] + 1));
                        std::vector<int> v = vec;
                        ++v[c];
                        next[std::move(v)] += beta;
                    }
                }
                cur = std::move(next);
            }
        }
        std::vector<int> key = occ.counts();
        for (const auto& [vec, alpha] : cur) {
            for (std::size_t m = 0; m < reg.width; ++m) key[reg.offset + m] = vec[m];
            out.add_term(OccupationVector(key), alpha);
        }
    }
    return out;
}

LossChannel LossChannel::from_transmittance(double transmittance) {
    if (transmittance < 0.0 || transmittance > 1.0) {
        throw std::domain_error("transmittance must lie in [0, 1]");
    }
    LossChannel ch;
    ch.transmittance_ = transmittance;
    return ch;
}

LossChannel LossChannel::from_distance(double distance_km, double gamma_db_per_km) {
    if (distance_km < 0.0 || gamma_db_per_km < 0.0) {
        throw std::domain_error("distance and loss coefficient must be non-negative");
    }
    LossChannel ch;
    ch.transmittance_ = std::pow(10.0, -gamma_db_per_km * distance_km / 10.0);
    ch.distance_km_ = distance_km;
    ch.gamma_db_per_km_ = gamma_db_per_km;
    return ch;
}

double LossChannel::amplitude_transmittance() const { return std::sqrt(transmittance_); }

PureFockState apply_loss(const LossChannel& channel, const PureFockState& state, std::size_t mode,
                         std::size_t environment_mode) {
    if (mode >= state.n_modes() || environment_mode >= state.n_modes() || mode == environment_mode) {
        throw std::domain_error("invalid mode pair for loss channel");
    }
    const double t = channel.amplitude_transmittance();
    const double r = std::sqrt(1.0 - channel.transmittance());
    PureFockState out(state.layout(), state.prune_threshold());
    for (const auto& [occ, amp] : state.terms()) {
        if (occ[environment_mode] != 0) {
            throw std::domain_error("loss environment mode must be vacuum");
        }
        const int n = occ[mode];
        for (int k = 0; k <= n; ++k) {
            double w = std::sqrt(static_cast<double>(binomial(n, k))) * std::pow(t, k) *
                       std::pow(r, n - k);
            if (w == 0.0) continue;
            std::vector<int> v = occ.counts();
            v[mode] = k;
            v[environment_mode] = n - k;
            out.add_term(OccupationVector(std::move(v)), amp * w);
        }
    }
    return out;
}

} // namespace wstar
