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

#include "wstar/sweep.hpp"

#include <cmath>
#include <json.hpp>
#include <stdexcept>

#include "wstar/benchmarks.hpp"
#include "wstar/errors.hpp"
#include "wstar/protocol.hpp"

namespace wstar {

namespace {

using nlohmann::json;

std::vector<double> distance_grid(const SweepConfig& cfg) {
    if (cfg.step_km <= 0.0) throw usage_error("step_km must be positive");
    if (cfg.dmax_km < cfg.dmin_km) throw usage_error("dmax_km must not be below dmin_km");
    if (cfg.dmin_km < 0.0) throw usage_error("dmin_km must be non-negative");
    std::vector<double> grid;
    for (int i = 0;; ++i) {
        const double d = cfg.dmin_km + i * cfg.step_km;
        if (d > cfg.dmax_km + 1e-9) break;
        grid.push_back(d);
    }
    return grid;
}

void require_parties(const SweepConfig& cfg, int lo, int hi) {
    if (cfg.n_parties < lo || cfg.n_parties > hi) {
        throw usage_error("n must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) +
                          "] for scenario " + scenario_to_string(cfg.scenario));
    }
}

double resolve_source_b(const SweepConfig& cfg, int herald_photons) {
    const bool has_b = cfg.source_b.has_value();
    const bool has_f = cfg.fidelity_target.has_value();
    if (has_b == has_f) {
        throw usage_error("supply exactly one of b, fidelity for scenario " +
                          scenario_to_string(cfg.scenario));
    }
    if (!cfg.squeezing_db.empty()) {
        throw usage_error("squeezing_db does not apply to scenario " +
                          scenario_to_string(cfg.scenario));
    }
    if (has_b) return *cfg.source_b;
    return fixed_fidelity_source_b(cfg.n_parties, herald_photons, *cfg.fidelity_target);
}

/// Aggregate herald rate over every single-detector pattern (all ports fire
/// with equal probability by symmetry of the tree).
double aggregate_single_detector_rate(const ProtocolParams& params) {
    const OccupationVector pattern =
        single_detector_pattern(params.n_parties, 0, params.herald_photons);
    return params.mixer_ports() * herald_probability_exact(params, pattern);
}

Table ideal_table(const SweepConfig& cfg, int herald_photons) {
    require_parties(cfg, 2, 8);
    if (herald_photons < 1 || herald_photons >= cfg.n_parties) {
        throw usage_error("m must satisfy 1 <= m < n");
    }
    const double b = resolve_source_b(cfg, herald_photons);
    Table t;
    t.columns = {"distance_km", "arm_transmittance", "rate", "fidelity", "b", "rate_leading"};
    const DickeSpec target(cfg.n_parties, herald_photons);
    for (double d : distance_grid(cfg)) {
        LossChannel ch = LossChannel::from_distance(d, cfg.gamma_db_per_km);
        ProtocolParams params(cfg.n_parties, herald_photons, b, ch);
        const OccupationVector pattern =
            single_detector_pattern(cfg.n_parties, 0, herald_photons);
        const double rate = aggregate_single_detector_rate(params);
        const double fid = conditional_fidelity(params, pattern, target);
        const double leading = params.mixer_ports() * herald_probability_leading(params);
        t.add_row({d, ch.transmittance(), rate, fid, b, leading});
    }
    return t;
}

Table gaussian_table(const SweepConfig& cfg) {
    require_parties(cfg, 2, 4);
    const bool has_sq = !cfg.squeezing_db.empty();
    const bool has_f = cfg.fidelity_target.has_value();
    if (cfg.source_b.has_value()) {
        throw usage_error("b does not apply to scenario gaussian_w");
    }
    if (has_sq == has_f) {
        throw usage_error("supply exactly one of squeezing_db, fidelity for scenario gaussian_w");
    }
    if (cfg.cutoff < 1) {
        throw usage_error("cutoff must be at least 1 to read out single-photon terms");
    }
    const auto w_basis = enumerate_single_occupancy(cfg.n_parties, 1);
    auto fidelity_of = [&](const GaussianState& net, int mode) {
        // (1/N) sum of the single-photon conditional elements, read out under
        // the configured photon cutoff
        Eigen::MatrixXcd el = conditional_state_fock_elements(net, mode, cfg.detector, w_basis,
                                                              w_basis, cfg.cutoff);
        return el.sum().real() / cfg.n_parties;
    };
    Table t;
    t.columns = {"distance_km", "arm_transmittance", "rate", "fidelity", "squeezing_db", "r"};
    if (has_sq) {
        for (double db : cfg.squeezing_db) {
            const SqueezingSpec spec = SqueezingSpec::from_db(db);
            for (double d : distance_grid(cfg)) {
                LossChannel ch = LossChannel::from_distance(d, cfg.gamma_db_per_km);
                GaussianState net = build_gaussian_network(cfg.n_parties, spec, ch);
                const int mode = click_mode_index(net);
                const double rate = click_probability(net, mode, cfg.detector);
                const double fid = fidelity_of(net, mode);
                t.add_row({d, ch.transmittance(), rate, fid, db, spec.r});
            }
        }
        return t;
    }
    // Fixed-fidelity curve: pick the squeezing per distance; stop once the
    // target becomes unreachable (it only gets worse with more loss).
    for (double d : distance_grid(cfg)) {
        LossChannel ch = LossChannel::from_distance(d, cfg.gamma_db_per_km);
        try {
            SqueezingSolveResult sol =
                solve_squeezing_for_fidelity(cfg.n_parties, *cfg.fidelity_target, ch, cfg.detector);
            t.add_row({d, ch.transmittance(), sol.click_prob, sol.fidelity, sol.spec.db(),
                       sol.spec.r});
        } catch (const fidelity_ceiling_error&) {
            break;
        }
    }
    return t;
}

Table benchmark_table(const SweepConfig& cfg, bool squashed) {
    if (squashed) {
        if (cfg.n_parties != 0 && cfg.n_parties != 3) {
            throw usage_error("benchmark_squashed is defined for n = 3");
        }
    } else {
        require_parties(cfg, 1, 16);
    }
    if (cfg.source_b || cfg.fidelity_target || !cfg.squeezing_db.empty()) {
        throw usage_error("benchmark scenarios take no b, fidelity or squeezing_db");
    }
    Table t;
    t.columns = {"distance_km", "arm_transmittance", "rate", "fidelity"};
    for (double d : distance_grid(cfg)) {
        LossChannel ch = LossChannel::from_distance(d, cfg.gamma_db_per_km);
        const double eta = ch.transmittance();
        const double rate = squashed ? squashed_bound_w3(eta)
                                     : direct_rate(cfg.n_parties, StarChannel(eta, cfg.n_parties));
        t.add_row({d, eta, rate, 1.0});
    }
    return t;
}

Table fixed_fidelity_table(const SweepConfig& cfg) {
    require_parties(cfg, 2, 1024);
    if (!cfg.fidelity_target) {
        throw usage_error("fixed_fidelity_curve requires fidelity");
    }
    if (cfg.source_b || !cfg.squeezing_db.empty()) {
        throw usage_error("fixed_fidelity_curve takes only fidelity");
    }
    const double f = *cfg.fidelity_target;
    const double b = fixed_fidelity_source_b(cfg.n_parties, 1, f);
    Table t;
    t.columns = {"distance_km", "arm_transmittance", "rate", "fidelity", "b"};
    for (double d : distance_grid(cfg)) {
        LossChannel ch = LossChannel::from_distance(d, cfg.gamma_db_per_km);
        t.add_row({d, ch.transmittance(), rate_at_fixed_fidelity(cfg.n_parties, f, ch), f, b});
    }
    return t;
}

// --- reproduce presets -----------------------------------------------------

Table with_series(const std::string& series, const Table& in) {
    Table out;
    out.columns.push_back("series");
    out.columns.insert(out.columns.end(), in.columns.begin(), in.columns.end());
    for (const auto& row : in.rows) {
        std::vector<Table::Cell> r;
        r.emplace_back(series);
        r.insert(r.end(), row.begin(), row.end());
        out.rows.push_back(std::move(r));
    }
    return out;
}

void append_rows(Table& dst, const Table& src) {
    if (dst.columns.empty()) {
        dst.columns = src.columns;
    }
    if (dst.columns != src.columns) {
        throw std::domain_error("cannot append tables with different columns");
    }
    dst.rows.insert(dst.rows.end(), src.rows.begin(), src.rows.end());
}

Table keep_columns(const Table& in, const std::vector<std::string>& cols) {
    std::vector<std::size_t> idx;
    for (const auto& c : cols) {
        bool found = false;
        for (std::size_t i = 0; i < in.columns.size(); ++i) {
            if (in.columns[i] == c) {
                idx.push_back(i);
                found = true;
                break;
            }
        }
        if (!found) throw std::domain_error("missing column " + c);
    }
    Table out;
    out.columns = cols;
    for (const auto& row : in.rows) {
        std::vector<Table::Cell> r;
        for (std::size_t i : idx) r.push_back(row[i]);
        out.rows.push_back(std::move(r));
    }
    return out;
}

SweepConfig base_config(Scenario s, int n, double dmin, double dmax, double step) {
    SweepConfig cfg;
    cfg.scenario = s;
    cfg.n_parties = n;
    cfg.dmin_km = dmin;
    cfg.dmax_km = dmax;
    cfg.step_km = step;
    return cfg;
}

const std::vector<std::string> kGaussianRateColumns = {
    "distance_km", "arm_transmittance", "rate", "fidelity"};

Table fig3() {
    Table out;
    SweepConfig rep = base_config(Scenario::fixed_fidelity_curve, 3, 0, 300, 1);
    rep.fidelity_target = 0.95;
    append_rows(out, with_series("repeater_w3_f0.95",
                                 keep_columns(run_sweep(rep), kGaussianRateColumns)));
    SweepConfig direct = base_config(Scenario::benchmark_direct, 3, 0, 300, 1);
    append_rows(out, with_series("direct_w3", keep_columns(run_sweep(direct), kGaussianRateColumns)));
    SweepConfig sq = base_config(Scenario::benchmark_squashed, 3, 0, 300, 1);
    append_rows(out, with_series("squashed_bound_w3",
                                 keep_columns(run_sweep(sq), kGaussianRateColumns)));
    return out;
}

Table fig5() {
    // Rate versus party count at fixed fidelity and distance, with the
    // large-N asymptote T ln(1/F).
    const double fidelity = 0.95;
    const double d = 50.0;
    LossChannel ch = LossChannel::from_distance(d, 0.2);
    Table out;
    out.columns = {"series", "n_parties", "distance_km", "arm_transmittance", "rate", "fidelity"};
    for (int n = 2; n <= 64; ++n) {
        out.add_row({std::string("repeater_f0.95"), static_cast<double>(n), d, ch.transmittance(),
                     rate_at_fixed_fidelity(n, fidelity, ch), fidelity});
    }
    const double asym = ch.transmittance() * std::log(1.0 / fidelity);
    for (int n = 2; n <= 64; ++n) {
        out.add_row({std::string("asymptote"), static_cast<double>(n), d, ch.transmittance(),
                     asym, fidelity});
    }
    return out;
}

Table fig6() {
    Table out;
    for (int n : {2, 3, 4}) {
        SweepConfig rep = base_config(Scenario::fixed_fidelity_curve, n, 0, 300, 1);
        rep.fidelity_target = 0.95;
        append_rows(out, with_series("repeater_w" + std::to_string(n) + "_f0.95",
                                     keep_columns(run_sweep(rep), kGaussianRateColumns)));
        SweepConfig direct = base_config(Scenario::benchmark_direct, n, 0, 300, 1);
        append_rows(out, with_series("direct_w" + std::to_string(n),
                                     keep_columns(run_sweep(direct), kGaussianRateColumns)));
    }
    return out;
}

Table fig7() {
    Table out;
    SweepConfig w4 = base_config(Scenario::fixed_fidelity_curve, 4, 0, 300, 1);
    w4.fidelity_target = 0.95;
    append_rows(out, with_series("repeater_w4_f0.95",
                                 keep_columns(run_sweep(w4), kGaussianRateColumns)));
    SweepConfig d42 = base_config(Scenario::ideal_dicke, 4, 0, 300, 1);
    d42.herald_photons = 2;
    d42.fidelity_target = 0.95;
    append_rows(out, with_series("repeater_d42_f0.95",
                                 keep_columns(run_sweep(d42), kGaussianRateColumns)));
    SweepConfig direct = base_config(Scenario::benchmark_direct, 4, 0, 300, 1);
    append_rows(out, with_series("direct_4photon",
                                 keep_columns(run_sweep(direct), kGaussianRateColumns)));
    return out;
}

const std::vector<double> kSqueezingListDb = {0.87, 1.3, 1.74, 2.17, 2.61, 3.04, 3.47};

std::string db_label(double db) {
    std::string s = std::to_string(db);
    while (!s.empty() && s.back() == '0') s.pop_back();
    if (!s.empty() && s.back() == '.') s.pop_back();
    return s;
}

Table gaussian_squeezing_fig(int n_parties, bool with_reference) {
    Table out;
    for (double db : kSqueezingListDb) {
        SweepConfig cfg = base_config(Scenario::gaussian_w, n_parties, 0, 300, 2);
        cfg.squeezing_db = {db};
        append_rows(out, with_series("w" + std::to_string(n_parties) + "_sq" + db_label(db) + "dB",
                                     keep_columns(run_sweep(cfg), kGaussianRateColumns)));
    }
    if (with_reference) {
        // Small-T single-detector rate at fidelity 0.99:
        // T b^2 C(N,1) 1! / N = T b^2, with b^2 = 1 - 0.99^(1/(N-1)).
        Table ref;
        ref.columns = kGaussianRateColumns;
        const double b2 = 1.0 - std::pow(0.99, 1.0 / (n_parties - 1));
        for (double d = 0; d <= 300 + 1e-9; d += 2) {
            LossChannel ch = LossChannel::from_distance(d, 0.2);
            ref.add_row({d, ch.transmittance(), ch.transmittance() * b2, 0.99});
        }
        append_rows(out, with_series("leading_order_f0.99", ref));
    }
    return out;
}

Table gaussian_fixed_fidelity_fig(int n_parties, const std::vector<double>& fidelities) {
    Table out;
    for (double f : fidelities) {
        SweepConfig cfg = base_config(Scenario::gaussian_w, n_parties, 0, 250, 5);
        cfg.fidelity_target = f;
        append_rows(out, with_series("w" + std::to_string(n_parties) + "_f" + db_label(f),
                                     keep_columns(run_sweep(cfg), kGaussianRateColumns)));
    }
    SweepConfig direct = base_config(Scenario::benchmark_direct, n_parties, 0, 250, 5);
    append_rows(out, with_series("direct_w" + std::to_string(n_parties),
                                 keep_columns(run_sweep(direct), kGaussianRateColumns)));
    return out;
}

Table fig13() {
    Table out;
    for (int n : {2, 3, 4}) {
        SweepConfig cfg = base_config(Scenario::gaussian_w, n, 0, 250, 5);
        cfg.fidelity_target = 0.99;
        append_rows(out, with_series("w" + std::to_string(n) + "_f0.99",
                                     keep_columns(run_sweep(cfg), kGaussianRateColumns)));
    }
    return out;
}

} // namespace

Scenario scenario_from_string(const std::string& name) {
    if (name == "ideal_w") return Scenario::ideal_w;
    if (name == "ideal_dicke") return Scenario::ideal_dicke;
    if (name == "gaussian_w") return Scenario::gaussian_w;
    if (name == "benchmark_direct") return Scenario::benchmark_direct;
    if (name == "benchmark_squashed") return Scenario::benchmark_squashed;
    if (name == "fixed_fidelity_curve") return Scenario::fixed_fidelity_curve;
    throw usage_error("unknown scenario '" + name + "'");
}

std::string scenario_to_string(Scenario s) {
    switch (s) {
        case Scenario::ideal_w: return "ideal_w";
        case Scenario::ideal_dicke: return "ideal_dicke";
        case Scenario::gaussian_w: return "gaussian_w";
        case Scenario::benchmark_direct: return "benchmark_direct";
        case Scenario::benchmark_squashed: return "benchmark_squashed";
        case Scenario::fixed_fidelity_curve: return "fixed_fidelity_curve";
    }
    return "?";
}

SweepConfig SweepConfig::from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw usage_error(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) {
        throw usage_error("config must be a flat JSON object");
    }
    SweepConfig cfg;
    bool have_scenario = false;
    for (const auto& [key, value] : j.items()) {
        try {
            if (key == "scenario") {
                cfg.scenario = scenario_from_string(value.get<std::string>());
                have_scenario = true;
            } else if (key == "n") {
                cfg.n_parties = value.get<int>();
            } else if (key == "m") {
                cfg.herald_photons = value.get<int>();
            } else if (key == "b") {
                cfg.source_b = value.get<double>();
            } else if (key == "fidelity") {
                cfg.fidelity_target = value.get<double>();
            } else if (key == "squeezing_db") {
                if (value.is_array()) {
                    cfg.squeezing_db = value.get<std::vector<double>>();
                } else if (value.is_number()) {
                    cfg.squeezing_db = {value.get<double>()};
                } else {
                    std::string s = value.get<std::string>();
                    std::size_t pos = 0;
                    while (pos < s.size()) {
                        std::size_t comma = s.find(',', pos);
                        if (comma == std::string::npos) comma = s.size();
                        cfg.squeezing_db.push_back(std::stod(s.substr(pos, comma - pos)));
                        pos = comma + 1;
                    }
                }
            } else if (key == "dmin_km") {
                cfg.dmin_km = value.get<double>();
            } else if (key == "dmax_km") {
                cfg.dmax_km = value.get<double>();
            } else if (key == "step_km") {
                cfg.step_km = value.get<double>();
            } else if (key == "gamma_db_per_km") {
                cfg.gamma_db_per_km = value.get<double>();
            } else if (key == "dark_count") {
                cfg.detector.dark_count_prob = value.get<double>();
            } else if (key == "det_efficiency") {
                cfg.detector.efficiency = value.get<double>();
            } else if (key == "cutoff") {
                cfg.cutoff = value.get<int>();
            } else if (key == "format") {
                cfg.format = value.get<std::string>();
            } else if (key == "out") {
                cfg.out_path = value.get<std::string>();
            } else {
                throw usage_error("unknown config key '" + key + "'");
            }
        } catch (const json::exception&) {
            throw usage_error("bad value for config key '" + key + "'");
        } catch (const std::invalid_argument&) {
            throw usage_error("bad value for config key '" + key + "'");
        }
    }
    if (!have_scenario) {
        throw usage_error("config key 'scenario' is required");
    }
    try {
        cfg.detector.validate();
    } catch (const std::domain_error& e) {
        throw usage_error(std::string("bad value for config key 'dark_count' or "
                                      "'det_efficiency': ") +
                          e.what());
    }
    if (cfg.cutoff < 1 || cfg.cutoff > 15) {
        throw usage_error("bad value for config key 'cutoff': expected 1..15");
    }
    return cfg;
}

Table run_sweep(const SweepConfig& cfg) {
    switch (cfg.scenario) {
        case Scenario::ideal_w:
            if (cfg.herald_photons != 1) {
                throw usage_error("ideal_w fixes m = 1; use ideal_dicke for m > 1");
            }
            return ideal_table(cfg, 1);
        case Scenario::ideal_dicke:
            return ideal_table(cfg, cfg.herald_photons);
        case Scenario::gaussian_w:
            return gaussian_table(cfg);
        case Scenario::benchmark_direct:
            return benchmark_table(cfg, false);
        case Scenario::benchmark_squashed:
            return benchmark_table(cfg, true);
        case Scenario::fixed_fidelity_curve:
            return fixed_fidelity_table(cfg);
    }
    throw usage_error("unknown scenario");
}

Table reproduce_figure(const std::string& name) {
    if (name == "fig3") return fig3();
    if (name == "fig5") return fig5();
    if (name == "fig6") return fig6();
    if (name == "fig7") return fig7();
    if (name == "fig8") return gaussian_squeezing_fig(2, true);
    if (name == "fig9") return gaussian_squeezing_fig(2, false);
    if (name == "fig10") return gaussian_fixed_fidelity_fig(2, {0.90, 0.95, 0.96});
    if (name == "fig11") return gaussian_fixed_fidelity_fig(3, {0.95, 0.97, 0.98});
    if (name == "fig12") return gaussian_fixed_fidelity_fig(4, {0.95, 0.97, 0.98});
    if (name == "fig13") return fig13();
    throw usage_error("unknown figure '" + name + "' (expected fig3 or fig5..fig13)");
}

std::vector<std::string> reproduce_figure_names() {
    return {"fig3", "fig5", "fig6", "fig7", "fig8", "fig9", "fig10", "fig11", "fig12", "fig13"};
}

} // namespace wstar
