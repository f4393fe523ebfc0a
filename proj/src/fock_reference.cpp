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

#include "wstar/fock_reference.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

#include "wstar/linear_optics.hpp"

namespace wstar {

namespace {

// Branch states live on (mixer ports + detector environment) modes, packed
// six bits per mode into one word; per-mode counts stay below 64.
constexpr int kBitsPerMode = 6;

std::uint64_t bump(std::uint64_t key, int mode) {
    return key + (std::uint64_t{1} << (kBitsPerMode * mode));
}

int mode_count(std::uint64_t key, int mode) {
    return static_cast<int>((key >> (kBitsPerMode * mode)) & 0x3f);
}

using Terms = std::vector<std::pair<std::uint64_t, double>>; // sorted by key

double dot(const Terms& a, const Terms& b) {
    double acc = 0.0;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i].first < b[j].first) {
            ++i;
        } else if (b[j].first < a[i].first) {
            ++j;
        } else {
            acc += a[i].second * b[j].second;
            ++i;
            ++j;
        }
    }
    return acc;
}

/// Same contraction restricted to terms with the monitored port in vacuum.
double dot_click_vacuum(const Terms& a, const Terms& b) {
    double acc = 0.0;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i].first < b[j].first) {
            ++i;
        } else if (b[j].first < a[i].first) {
            ++j;
        } else {
            if (mode_count(a[i].first, 0) == 0) acc += a[i].second * b[j].second;
            ++i;
            ++j;
        }
    }
    return acc;
}

std::uint64_t pack_survivors(const std::vector<int>& k) {
    std::uint64_t key = 0;
    for (std::size_t i = 0; i < k.size(); ++i) {
        key |= static_cast<std::uint64_t>(k[i]) << (4 * i);
    }
    return key;
}

} // namespace

struct FockReference::Impl {
    FockReferenceConfig cfg;
    int ports = 2;
    double t = 1.0;      // arm amplitude transmittance
    double rl = 0.0;     // arm amplitude reflectance
    Eigen::MatrixXd mixer;
    std::vector<OccupationVector> tracked;
    int keep_max_photons = 0;

    double p0 = 0.0;
    double norm = 0.0;

    struct Branch {
        double q0 = 1.0;
        bool has_terms = false;
        Terms terms;
    };
    std::unordered_map<std::uint64_t, Branch> branches;

    std::vector<double> lambda_pow, t_pow, rl_pow;
    std::vector<std::vector<double>> sqrt_binom;

    explicit Impl(const FockReferenceConfig& c, std::vector<OccupationVector> tracked_in)
        : cfg(c), tracked(std::move(tracked_in)) {
        if (cfg.n_parties < 2 || cfg.n_parties > 4) {
            throw std::domain_error("the Fock reference supports 2 to 4 parties");
        }
        if (cfg.lambda < 0.0 || cfg.lambda >= 1.0) {
            throw std::domain_error("lambda must lie in [0, 1)");
        }
        if (cfg.transmittance < 0.0 || cfg.transmittance > 1.0) {
            throw std::domain_error("transmittance must lie in [0, 1]");
        }
        if (cfg.det_efficiency < 0.0 || cfg.det_efficiency > 1.0) {
            throw std::domain_error("detector efficiency must lie in [0, 1]");
        }
        if (cfg.per_source_cutoff < 1 || cfg.per_source_cutoff > 15) {
            throw std::domain_error("per-source cutoff must lie in [1, 15]");
        }
        ports = gaussian_mixer_ports(cfg.n_parties);
        t = std::sqrt(cfg.transmittance);
        rl = std::sqrt(1.0 - cfg.transmittance);
        mixer = hadamard_tree(ports).matrix().real();

        const int max_total = cfg.n_parties * cfg.per_source_cutoff;
        lambda_pow.resize(static_cast<std::size_t>(max_total) + 1);
        t_pow.resize(lambda_pow.size());
        rl_pow.resize(lambda_pow.size());
        for (std::size_t s = 0; s < lambda_pow.size(); ++s) {
            lambda_pow[s] = std::pow(cfg.lambda, static_cast<double>(s));
            t_pow[s] = std::pow(t, static_cast<double>(s));
            rl_pow[s] = std::pow(rl, static_cast<double>(s));
        }
        sqrt_binom.assign(static_cast<std::size_t>(cfg.per_source_cutoff) + 1,
                          std::vector<double>(static_cast<std::size_t>(cfg.per_source_cutoff) + 1, 0.0));
        for (int n = 0; n <= cfg.per_source_cutoff; ++n) {
            for (int k = 0; k <= n; ++k) {
                sqrt_binom[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)] =
                    std::sqrt(static_cast<double>(binomial(n, k)));
            }
        }
        for (const OccupationVector& v : tracked) {
            if (static_cast<int>(v.n_modes()) != cfg.n_parties) {
                throw std::domain_error("tracked occupations must live on the kept register");
            }
            for (std::size_t i = 0; i < v.n_modes(); ++i) {
                if (v[i] > cfg.per_source_cutoff) {
                    throw std::domain_error("tracked occupation exceeds the per-source cutoff");
                }
            }
            keep_max_photons = std::max(keep_max_photons, v.total());
        }
        run();
    }

    double sector_amplitude(const std::vector<int>& n) const {
        int total = 0;
        for (int v : n) total += v;
        return std::pow(1.0 - cfg.lambda * cfg.lambda, cfg.n_parties / 2.0) *
               lambda_pow[static_cast<std::size_t>(total)];
    }

    double loss_weight(const std::vector<int>& n, const std::vector<int>& k) const {
        double w = 1.0;
        int sk = 0, sl = 0;
        for (std::size_t i = 0; i < n.size(); ++i) {
            w *= sqrt_binom[static_cast<std::size_t>(n[i])][static_cast<std::size_t>(k[i])];
            sk += k[i];
            sl += n[i] - k[i];
        }
        return w * t_pow[static_cast<std::size_t>(sk)] * rl_pow[static_cast<std::size_t>(sl)];
    }

    const Branch& branch(const std::vector<int>& k, bool need_terms) {
        const std::uint64_t packed = pack_survivors(k);
        auto it = branches.find(packed);
        int total = 0;
        for (int v : k) total += v;
        const bool keep = need_terms || total <= keep_max_photons;
        if (it != branches.end() && (!keep || it->second.has_terms)) {
            return it->second;
        }
        // Expand U |k, pads> one photon at a time, then split the monitored
        // port against the detector environment (mode index `ports`).
        std::unordered_map<std::uint64_t, double> cur;
        cur.emplace(0, 1.0);
        double in_fact = 1.0;
        for (std::size_t src = 0; src < k.size(); ++src) {
            for (int f = 2; f <= k[src]; ++f) in_fact *= static_cast<double>(f);
            for (int rep = 0; rep < k[src]; ++rep) {
                std::unordered_map<std::uint64_t, double> next;
                next.reserve(cur.size() * static_cast<std::size_t>(ports));
                for (const auto& [key, amp] : cur) {
                    for (int c = 0; c < ports; ++c) {
                        const double beta = amp * mixer(c, static_cast<Eigen::Index>(src)) *
                                            std::sqrt(static_cast<double>(mode_count(key, c) + 1));
                        next[bump(key, c)] += beta;
                    }
                }
                cur = std::move(next);
            }
        }
        const double scale = 1.0 / std::sqrt(in_fact);
        const double se = std::sqrt(cfg.det_efficiency);
        const double sl = std::sqrt(1.0 - cfg.det_efficiency);
        Branch b;
        b.has_terms = keep;
        double q0 = 0.0;
        Terms terms;
        terms.reserve(cur.size() * 2);
        for (const auto& [key, amp] : cur) {
            const int n0 = mode_count(key, 0);
            const std::uint64_t base = key - (static_cast<std::uint64_t>(n0));
            for (int j = 0; j <= n0; ++j) {
                const double w = std::sqrt(static_cast<double>(binomial(n0, j))) *
                                 std::pow(se, j) * std::pow(sl, n0 - j);
                if (w == 0.0) continue;
                std::uint64_t out_key = base + static_cast<std::uint64_t>(j) +
                                        (static_cast<std::uint64_t>(n0 - j)
                                         << (kBitsPerMode * ports));
                const double v = amp * scale * w;
                if (j == 0) q0 += v * v;
                if (keep) terms.emplace_back(out_key, v);
            }
        }
        b.q0 = q0;
        if (keep) {
            std::sort(terms.begin(), terms.end());
            // merge duplicates (cannot occur, keys encode the full outcome, but
            // keep the contraction assumptions explicit)
            b.terms = std::move(terms);
        }
        auto [pos, inserted] = branches.insert_or_assign(packed, std::move(b));
        return pos->second;
    }

    void run() {
        std::vector<int> n(static_cast<std::size_t>(cfg.n_parties), 0);
        iterate_sectors(n, 0);
    }

    void iterate_sectors(std::vector<int>& n, std::size_t depth) {
        if (depth == n.size()) {
            const double c = sector_amplitude(n);
            const double c2 = c * c;
            if (c2 < cfg.sector_weight_floor) return;
            norm += c2;
            std::vector<int> k(n.size(), 0);
            accumulate_p0(n, k, 0, c2);
            return;
        }
        for (int v = 0; v <= cfg.per_source_cutoff; ++v) {
            n[depth] = v;
            // amplitude only shrinks with more photons; prune whole subtrees
            std::vector<int> probe = n;
            for (std::size_t d = depth + 1; d < n.size(); ++d) probe[d] = 0;
            const double best = sector_amplitude(probe);
            if (best * best < cfg.sector_weight_floor) break;
            iterate_sectors(n, depth + 1);
        }
        n[depth] = 0;
    }

    void accumulate_p0(const std::vector<int>& n, std::vector<int>& k, std::size_t depth,
                       double c2) {
        if (depth == n.size()) {
            const double w = loss_weight(n, k);
            const double contribution = c2 * w * w;
            if (contribution < cfg.term_weight_floor) return;
            p0 += contribution * branch(k, false).q0;
            return;
        }
        for (int v = 0; v <= n[depth]; ++v) {
            k[depth] = v;
            accumulate_p0(n, k, depth + 1, c2);
        }
        k[depth] = 0;
    }

    double rho_pair(const OccupationVector& bra, const OccupationVector& ket, bool projected) {
        if (static_cast<int>(bra.n_modes()) != cfg.n_parties ||
            static_cast<int>(ket.n_modes()) != cfg.n_parties) {
            throw std::domain_error("bra/ket must live on the kept register");
        }
        const double cb = sector_amplitude(bra.counts());
        const double ck = sector_amplitude(ket.counts());
        if (cb == 0.0 || ck == 0.0) return 0.0;
        double acc = 0.0;
        // Environment labels must match: kk = ket - bra + kb, all entries in range.
        std::vector<int> kb(bra.n_modes(), 0);
        std::vector<int> kk(bra.n_modes(), 0);
        const auto& mb = bra.counts();
        const auto& mk = ket.counts();
        const std::size_t nm = mb.size();
        // iterate kb <= bra elementwise
        while (true) {
            bool valid = true;
            for (std::size_t i = 0; i < nm && valid; ++i) {
                kk[i] = mk[i] - mb[i] + kb[i];
                if (kk[i] < 0 || kk[i] > mk[i]) valid = false;
            }
            if (valid) {
                const double w = loss_weight(mb, kb) * loss_weight(mk, kk);
                if (w != 0.0) {
                    // ensure both branches exist before taking references; a
                    // second insertion could rehash the map
                    branch(kb, true);
                    branch(kk, true);
                    const Branch& ba = branches.at(pack_survivors(kb));
                    const Branch& bb = branches.at(pack_survivors(kk));
                    acc += w * (projected ? dot_click_vacuum(ba.terms, bb.terms)
                                          : dot(ba.terms, bb.terms));
                }
            }
            // next composition kb <= mb
            std::size_t d = 0;
            while (d < nm && kb[d] == mb[d]) {
                kb[d] = 0;
                ++d;
            }
            if (d == nm) break;
            ++kb[d];
        }
        return cb * ck * acc;
    }
};

FockReference::FockReference(const FockReferenceConfig& config,
                             std::vector<OccupationVector> tracked)
    : impl_(std::make_unique<Impl>(config, std::move(tracked))) {}

FockReference::~FockReference() = default;
FockReference::FockReference(FockReference&&) noexcept = default;
FockReference& FockReference::operator=(FockReference&&) noexcept = default;

double FockReference::no_click_probability() const { return impl_->p0; }
double FockReference::truncated_norm() const { return impl_->norm; }

std::complex<double> FockReference::rho_x_element(const OccupationVector& bra,
                                                  const OccupationVector& ket) const {
    return impl_->rho_pair(bra, ket, false);
}

std::complex<double> FockReference::rho_x_projected_element(const OccupationVector& bra,
                                                            const OccupationVector& ket) const {
    return impl_->rho_pair(bra, ket, true);
}

double FockReference::click_probability(const DetectorModel& detector) const {
    detector.validate();
    return 1.0 - impl_->p0 + detector.dark_count_prob;
}

std::complex<double> FockReference::conditional_element(const OccupationVector& bra,
                                                        const OccupationVector& ket,
                                                        const DetectorModel& detector) const {
    detector.validate();
    const double norm = detector.dark_count_prob + 1.0 - impl_->p0;
    if (norm <= 0.0) {
        throw std::domain_error("click probability is zero; conditional state undefined");
    }
    const std::complex<double> plain = rho_x_element(bra, ket);
    const std::complex<double> projected = rho_x_projected_element(bra, ket);
    return ((detector.dark_count_prob + 1.0) * plain - projected) / norm;
}

Eigen::MatrixXcd FockReference::conditional_matrix(const std::vector<OccupationVector>& basis,
                                                   const DetectorModel& detector) const {
    Eigen::MatrixXcd out(basis.size(), basis.size());
    for (std::size_t i = 0; i < basis.size(); ++i) {
        for (std::size_t j = 0; j < basis.size(); ++j) {
            out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                conditional_element(basis[i], basis[j], detector);
        }
    }
    return out;
}

double FockReference::w_fidelity(const DetectorModel& detector) const {
    const auto basis = enumerate_single_occupancy(impl_->cfg.n_parties, 1);
    std::complex<double> total = 0.0;
    for (const auto& b : basis) {
        for (const auto& k : basis) {
            total += conditional_element(b, k, detector);
        }
    }
    return total.real() / impl_->cfg.n_parties;
}

double FockReference::conditional_trace(const DetectorModel& detector) const {
    detector.validate();
    const double norm = detector.dark_count_prob + 1.0 - impl_->p0;
    if (norm <= 0.0) {
        throw std::domain_error("click probability is zero; conditional state undefined");
    }
    return ((detector.dark_count_prob + 1.0) * impl_->norm - impl_->p0) / norm;
}

} // namespace wstar
