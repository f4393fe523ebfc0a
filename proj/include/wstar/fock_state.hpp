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

#pragma once

#include <complex>
#include <initializer_list>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "wstar/occupation.hpp"

namespace wstar {

struct RegisterSpan {
    std::string name;
    std::size_t offset = 0;
    std::size_t width = 0;
    bool operator==(const RegisterSpan&) const = default;
};

/// Named contiguous mode ranges of a multimode state, e.g. X, Xp, E.
class RegisterLayout {
  public:
    RegisterLayout() = default;
    RegisterLayout(std::initializer_list<std::pair<std::string, std::size_t>> regs);

    void append(std::string name, std::size_t width);
    bool has(std::string_view name) const;
    const RegisterSpan& span(std::string_view name) const;
    std::size_t total_modes() const;
    const std::vector<RegisterSpan>& spans() const { return spans_; }
    /// Layout with one register removed; offsets of later registers shift down.
    RegisterLayout without(std::string_view name) const;

    bool operator==(const RegisterLayout&) const = default;

  private:
    std::vector<RegisterSpan> spans_;
};

/**
 * Sparse pure state over multimode Fock space: occupation vector -> complex
 * amplitude.  Sub-normalized states are legal mid-pipeline; amplitudes whose
 * magnitude falls below the prune threshold are dropped on insertion.
 */
class PureFockState {
  public:
    using AmplitudeMap = std::map<OccupationVector, std::complex<double>>;

    explicit PureFockState(RegisterLayout layout, double prune_threshold = 1e-15);
    static PureFockState basis_state(RegisterLayout layout, const OccupationVector& occ,
                                     double prune_threshold = 1e-15);

    const RegisterLayout& layout() const { return layout_; }
    std::size_t n_modes() const { return layout_.total_modes(); }
    double prune_threshold() const { return prune_threshold_; }

    /// Accumulates into the existing amplitude, pruning tiny results.
    void add_term(const OccupationVector& occ, std::complex<double> amplitude);
    std::complex<double> amplitude(const OccupationVector& occ) const;
    const AmplitudeMap& terms() const { return amps_; }
    std::size_t term_count() const { return amps_.size(); }

    double squared_norm() const;
    double norm() const;

  private:
    RegisterLayout layout_;
    AmplitudeMap amps_;
    double prune_threshold_;
};

PureFockState tensor(const PureFockState& a, const PureFockState& b);
/// <a|b>; layouts must match.
std::complex<double> inner(const PureFockState& a, const PureFockState& b);
PureFockState normalize(const PureFockState& s);

/**
 * Projects the named register onto a fixed occupation pattern and returns the
 * unnormalized remainder on the other registers.  Its squared norm is the
 * outcome probability.
 */
PureFockState partial_projection(const PureFockState& s, std::string_view register_name,
                                 const OccupationVector& pattern);

/// Keeps only terms with exactly n_photons total photons in the named register.
PureFockState photon_number_sector(const PureFockState& s, std::string_view register_name,
                                   int n_photons);

/**
 * Permutation-symmetric N-mode, K-photon target state specification.  With
 * phases omitted all terms carry phase zero; otherwise one phase per
 * combination index k in canonical order.
 */
struct DickeSpec {
    int n_modes;
    int n_photons;
    std::vector<double> phases;

    DickeSpec(int n, int k, std::vector<double> phases = {});
};

/// Normalized (1/sqrt(C(N,K))) sum_k e^{i phi_k} |f_k> on one register.
PureFockState dicke_state(const DickeSpec& spec, std::string register_name = "X");

} // namespace wstar
