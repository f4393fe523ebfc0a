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

#include "wstar/fock_state.hpp"

#include <cmath>
#include <stdexcept>

namespace wstar {

RegisterLayout::RegisterLayout(std::initializer_list<std::pair<std::string, std::size_t>> regs) {
    for (const auto& [name, width] : regs) {
        append(name, width);
    }
}

void RegisterLayout::append(std::string name, std::size_t width) {
    if (has(name)) {
        throw std::domain_error("duplicate register name: " + name);
    }
    spans_.push_back(RegisterSpan{std::move(name), total_modes(), width});
}

bool RegisterLayout::has(std::string_view name) const {
    for (const auto& s : spans_) {
        if (s.name == name) return true;
    }
    return false;
}

const RegisterSpan& RegisterLayout::span(std::string_view name) const {
    for (const auto& s : spans_) {
        if (s.name == name) return s;
    }
    throw std::domain_error("no register named '" + std::string(name) + "'");
}

std::size_t RegisterLayout::total_modes() const {
    std::size_t n = 0;
    for (const auto& s : spans_) n += s.width;
    return n;
}

RegisterLayout RegisterLayout::without(std::string_view name) const {
    span(name); // throws if absent
    RegisterLayout out;
    for (const auto& s : spans_) {
        if (s.name != name) out.append(s.name, s.width);
    }
    return out;
}

PureFockState::PureFockState(RegisterLayout layout, double prune_threshold)
    : layout_(std::move(layout)), prune_threshold_(prune_threshold) {
    if (prune_threshold_ < 0) {
        throw std::domain_error("prune threshold must be non-negative");
    }
}

PureFockState PureFockState::basis_state(RegisterLayout layout, const OccupationVector& occ,
                                         double prune_threshold) {
    PureFockState s(std::move(layout), prune_threshold);
    if (occ.n_modes() != s.n_modes()) {
        throw std::domain_error("basis state occupation does not match layout width");
    }
    s.add_term(occ, 1.0);
    return s;
}

void PureFockState::add_term(const OccupationVector& occ, std::complex<double> amplitude) {
    if (occ.n_modes() != n_modes()) {
        throw std::domain_error("term occupation does not match layout width");
    }
    auto it = amps_.find(occ);
    if (it == amps_.end()) {
        if (std::abs(amplitude) > prune_threshold_) {
            amps_.emplace(occ, amplitude);
        }
        return;
    }
    it->second += amplitude;
    if (std::abs(it->second) <= prune_threshold_) {
        amps_.erase(it);
    }
}

std::complex<double> PureFockState::amplitude(const OccupationVector& occ) const {
    auto it = amps_.find(occ);
    return it == amps_.end() ? std::complex<double>(0.0) : it->second;
}

double PureFockState::squared_norm() const {
    double n = 0;
    for (const auto& [occ, amp] : amps_) n += std::norm(amp);
    return n;
}

double PureFockState::norm() const { return std::sqrt(squared_norm()); }

PureFockState tensor(const PureFockState& a, const PureFockState& b) {
    RegisterLayout layout = a.layout();
    for (const auto& s : b.layout().spans()) {
        layout.append(s.name, s.width);
    }
    PureFockState out(std::move(layout), std::min(a.prune_threshold(), b.prune_threshold()));
    for (const auto& [oa, va] : a.terms()) {
        for (const auto& [ob, vb] : b.terms()) {
            out.add_term(concat(oa, ob), va * vb);
        }
    }
    return out;
}

std::complex<double> inner(const PureFockState& a, const PureFockState& b) {
    if (!(a.layout() == b.layout())) {
        throw std::domain_error("inner product requires identical register layouts");
    }
    // iterate the smaller map, look up in the larger
    const PureFockState& small = a.term_count() <= b.term_count() ? a : b;
    const PureFockState& large = a.term_count() <= b.term_count() ? b : a;
    std::complex<double> acc = 0;
    const bool small_is_a = &small == &a;
    for (const auto& [occ, amp] : small.terms()) {
        std::complex<double> other = large.amplitude(occ);
        if (other == std::complex<double>(0.0)) continue;
        acc += small_is_a ? std::conj(amp) * other : std::conj(other) * amp;
    }
    return acc;
}

PureFockState normalize(const PureFockState& s) {
    double n = s.norm();
    if (n <= 0) {
        throw std::domain_error("cannot normalize a zero state");
    }
    PureFockState out(s.layout(), s.prune_threshold());
    for (const auto& [occ, amp] : s.terms()) {
        out.add_term(occ, amp / n);
    }
    return out;
}

PureFockState partial_projection(const PureFockState& s, std::string_view register_name,
                                 const OccupationVector& pattern) {
    const RegisterSpan& reg = s.layout().span(register_name);
    if (pattern.n_modes() != reg.width) {
        throw std::domain_error("projection pattern width does not match register '" +
                                std::string(register_name) + "'");
    }
    PureFockState out(s.layout().without(register_name), s.prune_threshold());
    for (const auto& [occ, amp] : s.terms()) {
        if (occ.slice(reg.offset, reg.width) != pattern) continue;
        std::vector<int> rest;
        rest.reserve(occ.n_modes() - reg.width);
        const auto& c = occ.counts();
        rest.insert(rest.end(), c.begin(), c.begin() + static_cast<std::ptrdiff_t>(reg.offset));
        rest.insert(rest.end(), c.begin() + static_cast<std::ptrdiff_t>(reg.offset + reg.width), c.end());
        out.add_term(OccupationVector(std::move(rest)), amp);
    }
    return out;
}

PureFockState photon_number_sector(const PureFockState& s, std::string_view register_name,
                                   int n_photons) {
    const RegisterSpan& reg = s.layout().span(register_name);
    PureFockState out(s.layout(), s.prune_threshold());
    for (const auto& [occ, amp] : s.terms()) {
        if (occ.slice(reg.offset, reg.width).total() == n_photons) {
            out.add_term(occ, amp);
        }
    }
    return out;
}

DickeSpec::DickeSpec(int n, int k, std::vector<double> ph)
    : n_modes(n), n_photons(k), phases(std::move(ph)) {
    if (n < 1 || k < 0 || k > n) {
        throw std::domain_error("Dicke spec requires 1 <= N and 0 <= K <= N");
    }
    if (!phases.empty() && phases.size() != binomial(n, k)) {
        throw std::domain_error("Dicke phases must have one entry per combination index");
    }
}

PureFockState dicke_state(const DickeSpec& spec, std::string register_name) {
    auto basis = enumerate_single_occupancy(spec.n_modes, spec.n_photons);
    const double amp = 1.0 / std::sqrt(static_cast<double>(basis.size()));
    PureFockState out(RegisterLayout{{std::move(register_name), static_cast<std::size_t>(spec.n_modes)}});
    for (std::size_t k = 0; k < basis.size(); ++k) {
        double phase = spec.phases.empty() ? 0.0 : spec.phases[k];
        out.add_term(basis[k], std::polar(amp, phase));
    }
    return out;
}

} // namespace wstar
