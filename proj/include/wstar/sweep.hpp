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

#include <optional>
#include <string>
#include <vector>

#include "wstar/gaussian.hpp"
#include "wstar/table.hpp"

namespace wstar {

enum class Scenario {
    ideal_w,
    ideal_dicke,
    gaussian_w,
    benchmark_direct,
    benchmark_squashed,
    fixed_fidelity_curve,
};

Scenario scenario_from_string(const std::string& name);
std::string scenario_to_string(Scenario s);

/**
 * One parameter sweep over a distance grid.  Exactly one of source_b,
 * fidelity_target or squeezing_db must be supplied for the scenarios that
 * need a source setting; benchmarks take none.
 */
struct SweepConfig {
    Scenario scenario = Scenario::ideal_w;
    int n_parties = 0;
    int herald_photons = 1;
    std::optional<double> source_b;
    std::optional<double> fidelity_target;
    std::vector<double> squeezing_db;
    double dmin_km = 0.0;
    double dmax_km = 300.0;
    double step_km = 2.0;
    double gamma_db_per_km = 0.2;
    DetectorModel detector{};
    int cutoff = 8;
    std::string format = "csv";
    std::string out_path = "-";

    /// Flat JSON object mirroring the CLI flag names.
    static SweepConfig from_json(const std::string& text);
};

/// Runs the sweep; rows appear in grid order and the output is a pure
/// function of the config.
Table run_sweep(const SweepConfig& config);

/// Bundled parameter sets behind `reproduce figN` for N in 3, 5..13.
Table reproduce_figure(const std::string& name);

std::vector<std::string> reproduce_figure_names();

} // namespace wstar
