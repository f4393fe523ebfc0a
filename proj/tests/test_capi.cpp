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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <string>

#include "wstar.h"
#include "wstar/benchmarks.hpp"
#include "wstar/gaussian.hpp"
#include "wstar/protocol.hpp"

TEST_CASE("version and error text") {
    REQUIRE(wstar_version() != nullptr);
    CHECK(std::strlen(wstar_version()) > 0);
    REQUIRE(wstar_last_error() != nullptr);
}

TEST_CASE("herald probability through the C surface") {
    const int pattern[2] = {1, 0};
    double out = 0.0;
    REQUIRE(wstar_herald_probability_exact(2, 0.1, 1.0, pattern, 2, &out) == WSTAR_OK);
    CHECK(std::abs(out - 0.99 * 0.01) < 1e-15);

    wstar::ProtocolParams params(2, 1, 0.1, wstar::LossChannel::from_transmittance(1.0));
    CHECK(out == wstar::herald_probability_exact(params, wstar::OccupationVector({1, 0})));

    double lead = 0.0;
    REQUIRE(wstar_herald_probability_leading(2, 1, 0.1, 0.5, &lead) == WSTAR_OK);
    CHECK(std::abs(lead - 0.5 * 0.01) < 1e-15);

    double fid = 0.0;
    REQUIRE(wstar_conditional_fidelity(2, 0.1, 1e-6, pattern, 2, &fid) == WSTAR_OK);
    CHECK(std::abs(fid - 0.99) < 1e-4);

    // error paths set a status and a message
    const int bad[2] = {1, -1};
    CHECK(wstar_herald_probability_exact(2, 0.1, 1.0, bad, 2, &out) == WSTAR_ERR_DOMAIN);
    CHECK(std::strlen(wstar_last_error()) > 0);
    CHECK(wstar_herald_probability_exact(2, 0.1, 1.0, nullptr, 2, &out) == WSTAR_ERR_DOMAIN);
    CHECK(wstar_herald_probability_exact(2, 0.1, 2.0, pattern, 2, &out) == WSTAR_ERR_DOMAIN);
}

TEST_CASE("rates, corrections and baselines") {
    double rate = 0.0;
    REQUIRE(wstar_rate_at_fixed_fidelity(2, 0.95, 0.01, &rate) == WSTAR_OK);
    CHECK(std::abs(rate - 1e-3) < 1e-15);

    double phases[2] = {-1.0, -1.0};
    const int det2[2] = {0, 1};
    REQUIRE(wstar_feedforward_correction(2, det2, 2, phases) == WSTAR_OK);
    CHECK(phases[0] > 3.0);
    CHECK(phases[1] == 0.0);

    double t = 0.0;
    REQUIRE(wstar_transmittance_for_distance(50.0, 0.2, &t) == WSTAR_OK);
    CHECK(std::abs(t - 0.1) < 1e-15);

    double direct = 0.0;
    REQUIRE(wstar_direct_rate(3, 0.1, &direct) == WSTAR_OK);
    CHECK(std::abs(direct - 1e-3) < 1e-16);

    double bound = 0.0;
    REQUIRE(wstar_squashed_bound_w3(1.0, &bound) == WSTAR_OK);
    CHECK(std::abs(bound - 1.0) < 1e-12);
    CHECK(wstar_squashed_bound_w3(1.5, &bound) == WSTAR_ERR_DOMAIN);
}

TEST_CASE("gaussian quantities through the C surface") {
    double p = 0.0, f = 0.0;
    REQUIRE(wstar_gaussian_click_probability(2, 0.87, 0.0, 0.2, 1e-7, 0.8, &p) == WSTAR_OK);
    REQUIRE(wstar_gaussian_w_fidelity(2, 0.87, 0.0, 0.2, 1e-7, 0.8, &f) == WSTAR_OK);
    auto net = wstar::build_gaussian_network(2, wstar::SqueezingSpec::from_db(0.87),
                                             wstar::LossChannel::from_distance(0.0, 0.2));
    wstar::DetectorModel det{};
    CHECK(p == wstar::click_probability(net, wstar::click_mode_index(net), det));
    CHECK(f == wstar::w_fidelity(net, wstar::click_mode_index(net), det, 2));

    double r = 0.0, db = 0.0, cp = 0.0;
    REQUIRE(wstar_solve_squeezing_for_fidelity(2, 0.95, 10.0, 0.2, 1e-7, 0.8, &r, &db, &cp) ==
            WSTAR_OK);
    CHECK(r > 0.0);
    CHECK(db > 0.0);
    CHECK(cp > 0.0);
    CHECK(wstar_solve_squeezing_for_fidelity(2, 0.9999999, 10.0, 0.2, 1e-7, 0.8, &r, &db, &cp) ==
          WSTAR_ERR_DOMAIN);
    const std::string msg = wstar_last_error();
    const bool mentions_ceiling =
        msg.find("ceiling") != std::string::npos || msg.find("maximum") != std::string::npos;
    CHECK(mentions_ceiling);
}

TEST_CASE("sweep tables through the C surface") {
    wstar_table* table = nullptr;
    const char* cfg =
        R"({"scenario":"benchmark_direct","n":4,"dmin_km":0,"dmax_km":20,"step_km":10})";
    REQUIRE(wstar_sweep_run_json(cfg, &table) == WSTAR_OK);
    REQUIRE(table != nullptr);
    CHECK(wstar_table_n_rows(table) == 3);
    CHECK(wstar_table_n_cols(table) == 4);
    CHECK(std::string(wstar_table_column_name(table, 2)) == "rate");
    CHECK(wstar_table_column_name(table, 99) == nullptr);

    CHECK(wstar_table_cell_is_numeric(table, 0, 0) == 1);
    double v = -1.0;
    REQUIRE(wstar_table_cell_numeric(table, 2, 1, &v) == WSTAR_OK);
    CHECK(std::abs(v - std::pow(10.0, -0.4)) < 1e-14);
    CHECK(wstar_table_cell_numeric(table, 5, 0, &v) == WSTAR_ERR_DOMAIN);
    CHECK(wstar_table_cell_text(table, 0, 0) == nullptr);
    wstar_table_free(table);

    table = nullptr;
    CHECK(wstar_sweep_run_json(R"({"scenario":"bogus"})", &table) == WSTAR_ERR_USAGE);
    CHECK(table == nullptr);
    CHECK(wstar_sweep_run_json("{", &table) == WSTAR_ERR_USAGE);

    REQUIRE(wstar_reproduce("fig3", &table) == WSTAR_OK);
    CHECK(wstar_table_n_rows(table) == 3 * 301);
    CHECK(wstar_table_cell_is_numeric(table, 0, 0) == 0);
    CHECK(std::string(wstar_table_cell_text(table, 0, 0)) == "repeater_w3_f0.95");
    wstar_table_free(table);
    CHECK(wstar_reproduce("fig99", &table) == WSTAR_ERR_USAGE);

    wstar_table_free(nullptr); // harmless
}
