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

#include "wstar.h"

#include <string>

#include "wstar/benchmarks.hpp"
#include "wstar/errors.hpp"
#include "wstar/gaussian.hpp"
#include "wstar/protocol.hpp"
#include "wstar/sweep.hpp"
#include "wstar/table.hpp"

struct wstar_table {
    wstar::Table data;
};

namespace {

thread_local std::string g_last_error = "no error";

template <typename F>
wstar_status guarded(F&& body) {
    try {
        body();
        return WSTAR_OK;
    } catch (const wstar::usage_error& e) {
        g_last_error = e.what();
        return WSTAR_ERR_USAGE;
    } catch (const wstar::io_error& e) {
        g_last_error = e.what();
        return WSTAR_ERR_IO;
    } catch (const std::domain_error& e) {
        g_last_error = e.what();
        return WSTAR_ERR_DOMAIN;
    } catch (const std::invalid_argument& e) {
        g_last_error = e.what();
        return WSTAR_ERR_DOMAIN;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return WSTAR_ERR_RUNTIME;
    } catch (...) {
        g_last_error = "unknown error";
        return WSTAR_ERR_RUNTIME;
    }
}

wstar::OccupationVector pattern_from(const int* pattern, size_t pattern_len) {
    if (pattern == nullptr) {
        throw std::domain_error("pattern must not be NULL");
    }
    return wstar::OccupationVector(std::vector<int>(pattern, pattern + pattern_len));
}

wstar::DetectorModel detector_from(double dark_count_prob, double det_efficiency) {
    wstar::DetectorModel det;
    det.dark_count_prob = dark_count_prob;
    det.efficiency = det_efficiency;
    det.validate();
    return det;
}

template <typename T>
void store(T* slot, T value) {
    if (slot == nullptr) {
        throw std::domain_error("output pointer must not be NULL");
    }
    *slot = value;
}

} // namespace

extern "C" {

const char* wstar_version(void) { return "0.1.0"; }

const char* wstar_last_error(void) { return g_last_error.c_str(); }

wstar_status wstar_herald_probability_exact(int n_parties, double source_b, double transmittance,
                                            const int* pattern, size_t pattern_len, double* out) {
    return guarded([&] {
        auto p = pattern_from(pattern, pattern_len);
        wstar::ProtocolParams params(n_parties, p.total(), source_b,
                                     wstar::LossChannel::from_transmittance(transmittance));
        store(out, wstar::herald_probability_exact(params, p));
    });
}

wstar_status wstar_herald_probability_leading(int n_parties, int herald_photons, double source_b,
                                              double transmittance, double* out) {
    return guarded([&] {
        wstar::ProtocolParams params(n_parties, herald_photons, source_b,
                                     wstar::LossChannel::from_transmittance(transmittance));
        store(out, wstar::herald_probability_leading(params));
    });
}

wstar_status wstar_conditional_fidelity(int n_parties, double source_b, double transmittance,
                                        const int* pattern, size_t pattern_len, double* out) {
    return guarded([&] {
        auto p = pattern_from(pattern, pattern_len);
        wstar::ProtocolParams params(n_parties, p.total(), source_b,
                                     wstar::LossChannel::from_transmittance(transmittance));
        store(out, wstar::conditional_fidelity(params, p,
                                               wstar::DickeSpec(n_parties, p.total())));
    });
}

wstar_status wstar_rate_at_fixed_fidelity(int n_parties, double fidelity, double transmittance,
                                          double* out) {
    return guarded([&] {
        store(out, wstar::rate_at_fixed_fidelity(
                       n_parties, fidelity, wstar::LossChannel::from_transmittance(transmittance)));
    });
}

wstar_status wstar_feedforward_correction(int n_parties, const int* pattern, size_t pattern_len,
                                          double* phases_out) {
    return guarded([&] {
        if (phases_out == nullptr) {
            throw std::domain_error("output pointer must not be NULL");
        }
        auto phases = wstar::feedforward_correction(n_parties, pattern_from(pattern, pattern_len));
        for (std::size_t i = 0; i < phases.size(); ++i) phases_out[i] = phases[i];
    });
}

wstar_status wstar_transmittance_for_distance(double distance_km, double gamma_db_per_km,
                                              double* out) {
    return guarded([&] {
        store(out, wstar::LossChannel::from_distance(distance_km, gamma_db_per_km).transmittance());
    });
}

wstar_status wstar_direct_rate(int n_parties, double arm_transmittance, double* out) {
    return guarded([&] {
        store(out, wstar::direct_rate(n_parties,
                                      wstar::StarChannel(arm_transmittance,
                                                         n_parties < 1 ? 1 : n_parties)));
    });
}

wstar_status wstar_squashed_bound_w3(double arm_transmittance, double* out) {
    return guarded([&] { store(out, wstar::squashed_bound_w3(arm_transmittance)); });
}

wstar_status wstar_gaussian_click_probability(int n_parties, double squeezing_db,
                                              double distance_km, double gamma_db_per_km,
                                              double dark_count_prob, double det_efficiency,
                                              double* out) {
    return guarded([&] {
        auto net = wstar::build_gaussian_network(
            n_parties, wstar::SqueezingSpec::from_db(squeezing_db),
            wstar::LossChannel::from_distance(distance_km, gamma_db_per_km));
        store(out, wstar::click_probability(net, wstar::click_mode_index(net),
                                            detector_from(dark_count_prob, det_efficiency)));
    });
}

wstar_status wstar_gaussian_w_fidelity(int n_parties, double squeezing_db, double distance_km,
                                       double gamma_db_per_km, double dark_count_prob,
                                       double det_efficiency, double* out) {
    return guarded([&] {
        auto net = wstar::build_gaussian_network(
            n_parties, wstar::SqueezingSpec::from_db(squeezing_db),
            wstar::LossChannel::from_distance(distance_km, gamma_db_per_km));
        store(out, wstar::w_fidelity(net, wstar::click_mode_index(net),
                                     detector_from(dark_count_prob, det_efficiency), n_parties));
    });
}

wstar_status wstar_solve_squeezing_for_fidelity(int n_parties, double target_fidelity,
                                                double distance_km, double gamma_db_per_km,
                                                double dark_count_prob, double det_efficiency,
                                                double* r_out, double* squeezing_db_out,
                                                double* click_probability_out) {
    return guarded([&] {
        auto sol = wstar::solve_squeezing_for_fidelity(
            n_parties, target_fidelity,
            wstar::LossChannel::from_distance(distance_km, gamma_db_per_km),
            detector_from(dark_count_prob, det_efficiency));
        if (r_out != nullptr) *r_out = sol.spec.r;
        if (squeezing_db_out != nullptr) *squeezing_db_out = sol.spec.db();
        if (click_probability_out != nullptr) *click_probability_out = sol.click_prob;
    });
}

wstar_status wstar_sweep_run_json(const char* config_json, wstar_table** out_table) {
    return guarded([&] {
        if (config_json == nullptr || out_table == nullptr) {
            throw std::domain_error("config and output pointer must not be NULL");
        }
        auto cfg = wstar::SweepConfig::from_json(config_json);
        *out_table = new wstar_table{wstar::run_sweep(cfg)};
    });
}

wstar_status wstar_reproduce(const char* figure_name, wstar_table** out_table) {
    return guarded([&] {
        if (figure_name == nullptr || out_table == nullptr) {
            throw std::domain_error("figure name and output pointer must not be NULL");
        }
        *out_table = new wstar_table{wstar::reproduce_figure(figure_name)};
    });
}

size_t wstar_table_n_rows(const wstar_table* table) {
    return table == nullptr ? 0 : table->data.rows.size();
}

size_t wstar_table_n_cols(const wstar_table* table) {
    return table == nullptr ? 0 : table->data.columns.size();
}

const char* wstar_table_column_name(const wstar_table* table, size_t col) {
    if (table == nullptr || col >= table->data.columns.size()) return nullptr;
    return table->data.columns[col].c_str();
}

int wstar_table_cell_is_numeric(const wstar_table* table, size_t row, size_t col) {
    if (table == nullptr || row >= table->data.rows.size() ||
        col >= table->data.columns.size()) {
        return 0;
    }
    return std::holds_alternative<double>(table->data.rows[row][col]) ? 1 : 0;
}

wstar_status wstar_table_cell_numeric(const wstar_table* table, size_t row, size_t col,
                                      double* out) {
    return guarded([&] {
        if (table == nullptr || row >= table->data.rows.size() ||
            col >= table->data.columns.size()) {
            throw std::domain_error("table cell index out of range");
        }
        const auto& cell = table->data.rows[row][col];
        if (!std::holds_alternative<double>(cell)) {
            throw std::domain_error("table cell is not numeric");
        }
        store(out, std::get<double>(cell));
    });
}

const char* wstar_table_cell_text(const wstar_table* table, size_t row, size_t col) {
    if (table == nullptr || row >= table->data.rows.size() ||
        col >= table->data.columns.size()) {
        return nullptr;
    }
    const auto& cell = table->data.rows[row][col];
    if (!std::holds_alternative<std::string>(cell)) return nullptr;
    return std::get<std::string>(cell).c_str();
}

wstar_status wstar_table_write(const wstar_table* table, const char* format, const char* path) {
    return guarded([&] {
        if (table == nullptr || format == nullptr || path == nullptr) {
            throw std::domain_error("table, format and path must not be NULL");
        }
        wstar::write_table(table->data, format, path);
    });
}

void wstar_table_free(wstar_table* table) { delete table; }

} // extern "C"
