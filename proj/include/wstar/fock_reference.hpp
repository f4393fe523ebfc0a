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

#include <Eigen/Dense>
#include <cstdint>
#include <memory>
#include <vector>

#include "wstar/gaussian.hpp"
#include "wstar/occupation.hpp"

namespace wstar {

/**
 * Truncated-Fock cross-validation engine for the Gaussian pipeline.  Expands
 * each two-mode squeezed source to a per-source photon cutoff, purifies arm
 * loss and detector inefficiency into explicit environment modes, applies
 * the mixing tree exactly, and reads out click statistics and kept-mode
 * density-matrix elements without any covariance-matrix machinery.
 */
struct FockReferenceConfig {
    int n_parties = 2;
    double lambda = 0.1;
    double transmittance = 1.0;
    double det_efficiency = 0.8;
    /// Per-source photon cutoff; TMSV tail beyond it is lambda^(2(c+1)).
    int per_source_cutoff = 8;
    /// Source configurations with squared weight below this are skipped.
    double sector_weight_floor = 1e-18;
    /// Individual loss branches with squared weight below this are skipped.
    double term_weight_floor = 1e-22;
};

class FockReference {
  public:
    /// `tracked` lists the kept-mode occupations for which density-matrix
    /// elements will be requested; anything else only feeds scalar totals.
    FockReference(const FockReferenceConfig& config, std::vector<OccupationVector> tracked);
    ~FockReference();
    FockReference(FockReference&&) noexcept;
    FockReference& operator=(FockReference&&) noexcept;

    /// No-click probability of the monitored detector (after inefficiency).
    double no_click_probability() const;
    /// Total squared weight of the included source sectors (1 minus tail).
    double truncated_norm() const;

    std::complex<double> rho_x_element(const OccupationVector& bra,
                                       const OccupationVector& ket) const;
    std::complex<double> rho_x_projected_element(const OccupationVector& bra,
                                                 const OccupationVector& ket) const;

    double click_probability(const DetectorModel& detector) const;
    std::complex<double> conditional_element(const OccupationVector& bra,
                                             const OccupationVector& ket,
                                             const DetectorModel& detector) const;
    Eigen::MatrixXcd conditional_matrix(const std::vector<OccupationVector>& basis,
                                        const DetectorModel& detector) const;
    double w_fidelity(const DetectorModel& detector) const;
    /// Trace of the conditional state over every included source sector.
    double conditional_trace(const DetectorModel& detector) const;

  private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

} // namespace wstar
