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

#include "wstar/occupation.hpp"

#include <numeric>
#include <stdexcept>

namespace wstar {

OccupationVector::OccupationVector(std::vector<int> counts) : counts_(std::move(counts)) {
    for (int c : counts_) {
        if (c < 0) {
            throw std::domain_error("occupation vector entries must be non-negative");
        }
    }
}

OccupationVector OccupationVector::zeros(std::size_t n_modes) {
    return OccupationVector(std::vector<int>(n_modes, 0));
}

int OccupationVector::total() const {
    return std::accumulate(counts_.begin(), counts_.end(), 0);
}

int OccupationVector::at(std::size_t mode) const {
    if (mode >= counts_.size()) {
        throw std::domain_error("mode index out of range");
    }
    return counts_[mode];
}

OccupationVector OccupationVector::with(std::size_t mode, int value) const {
    std::vector<int> c = counts_;
    if (mode >= c.size()) {
        throw std::domain_error("mode index out of range");
    }
    if (value < 0) {
        throw std::domain_error("occupation vector entries must be non-negative");
    }
    c[mode] = value;
    return OccupationVector(std::move(c));
}

OccupationVector OccupationVector::slice(std::size_t offset, std::size_t width) const {
    if (offset + width > counts_.size()) {
        throw std::domain_error("slice exceeds mode count");
    }
    return OccupationVector(std::vector<int>(counts_.begin() + static_cast<std::ptrdiff_t>(offset),
                                             counts_.begin() + static_cast<std::ptrdiff_t>(offset + width)));
}

std::string OccupationVector::str() const {
    std::string s = "(";
    for (std::size_t i = 0; i < counts_.size(); ++i) {
        if (i > 0) s += ",";
        s += std::to_string(counts_[i]);
    }
    s += ")";
    return s;
}

OccupationVector concat(const OccupationVector& a, const OccupationVector& b) {
    std::vector<int> c = a.counts();
    c.insert(c.end(), b.counts().begin(), b.counts().end());
    return OccupationVector(std::move(c));
}

unsigned long long binomial(int n, int k) {
    if (k < 0 || n < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    unsigned long long r = 1;
    for (int i = 1; i <= k; ++i) {
        r = r * static_cast<unsigned long long>(n - k + i) / static_cast<unsigned long long>(i);
    }
    return r;
}

std::vector<OccupationVector> enumerate_single_occupancy(int n_modes, int n_photons) {
    if (n_modes < 0 || n_photons < 0 || n_photons > n_modes) {
        throw std::domain_error("enumerate_single_occupancy requires 0 <= n_photons <= n_modes");
    }
    std::vector<OccupationVector> out;
    out.reserve(binomial(n_modes, n_photons));
    // Walk k-combinations of mode indices in lexicographic order.
    std::vector<int> idx(static_cast<std::size_t>(n_photons));
    for (int i = 0; i < n_photons; ++i) idx[static_cast<std::size_t>(i)] = i;
    while (true) {
        std::vector<int> v(static_cast<std::size_t>(n_modes), 0);
        for (int i : idx) v[static_cast<std::size_t>(i)] = 1;
        out.emplace_back(std::move(v));
        int i = n_photons - 1;
        while (i >= 0 && idx[static_cast<std::size_t>(i)] == n_modes - n_photons + i) --i;
        if (i < 0) break;
        ++idx[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < n_photons; ++j) {
            idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
        }
    }
    return out;
}

namespace {

void compositions_rec(int n_modes, int remaining, std::vector<int>& prefix,
                      std::vector<OccupationVector>& out) {
    if (n_modes == 1) {
        prefix.push_back(remaining);
        out.emplace_back(prefix);
        prefix.pop_back();
        return;
    }
    for (int c = remaining; c >= 0; --c) {
        prefix.push_back(c);
        compositions_rec(n_modes - 1, remaining - c, prefix, out);
        prefix.pop_back();
    }
}

} // namespace

std::vector<OccupationVector> enumerate_detection_patterns(int n_modes, int n_photons) {
    if (n_modes < 0 || n_photons < 0) {
        throw std::domain_error("enumerate_detection_patterns requires non-negative arguments");
    }
    std::vector<OccupationVector> out;
    if (n_modes == 0) {
        if (n_photons == 0) out.emplace_back(std::vector<int>{});
        return out;
    }
    out.reserve(binomial(n_modes + n_photons - 1, n_photons));
    std::vector<int> prefix;
    compositions_rec(n_modes, n_photons, prefix, out);
    return out;
}

} // namespace wstar
