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

#include <stdexcept>
#include <string>

namespace wstar {

/// Bad user-facing input (CLI flags, config keys, scenario combinations).
struct usage_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Filesystem failure while reading or writing data files.
struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Requested fidelity is above what any squeezing can reach at the given
/// distance.  Carries the computed ceiling so callers can report it.
struct fidelity_ceiling_error : std::domain_error {
    fidelity_ceiling_error(const std::string& what, double max_achievable_fidelity)
        : std::domain_error(what), max_achievable(max_achievable_fidelity) {}
    double max_achievable;
};

} // namespace wstar
