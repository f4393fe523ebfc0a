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

#include <compare>
#include <cstddef>
#include <string>
#include <vector>

namespace wstar {

/**
 * Photon counts per optical mode.  Used both as a Fock basis label and as a
 * detector click pattern.  Entries are validated to be non-negative; ordering
 * is lexicographic over the count vector, which makes it usable as a map key.
 */
class OccupationVector {
  public:
    OccupationVector() = default;
    explicit OccupationVector(std::vector<int> counts);
    static OccupationVector zeros(std::size_t n_modes);

    std::size_t n_modes() const { return counts_.size(); }
    int total() const;
    int at(std::size_t mode) const;
    int operator[](std::size_t mode) const { return counts_[mode]; }
    const std::vector<int>& counts() const { return counts_; }

    /// Copy with one mode's count replaced.
    OccupationVector with(std::size_t mode, int value) const;
    OccupationVector slice(std::size_t offset, std::size_t width) const;

    std::string str() const;

    auto operator<=>(const OccupationVector&) const = default;

  private:
    std::vector<int> counts_;
};

OccupationVector concat(const OccupationVector& a, const OccupationVector& b);

/// Exact binomial coefficient; returns 0 outside 0 <= k <= n.
unsigned long long binomial(int n, int k);

/**
 * All occupation vectors with n_photons photons spread over n_modes modes,
 * at most one photon per mode.  Ordered by the occupied-mode index sets in
 * lexicographic order, i.e. (1,1,0,0), (1,0,1,0), ..., (0,0,1,1).  The list
 * position is the canonical combination index k used throughout.
 */
std::vector<OccupationVector> enumerate_single_occupancy(int n_modes, int n_photons);

/**
 * All detector click patterns with n_photons photons over n_modes detectors
 * (weak compositions).  Count equals C(n_modes + n_photons - 1, n_photons).
 * Ordered with earlier modes holding more photons first: (2,0), (1,1), (0,2).
 */
std::vector<OccupationVector> enumerate_detection_patterns(int n_modes, int n_photons);

} // namespace wstar
