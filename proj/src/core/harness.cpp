#include "core/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "core/channel.hpp"
#include "core/matching.hpp"

namespace sagsim {

namespace {

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

double now_seconds() {
    return std::chrono::duration<double>(std::chrono::steady_clock::now().time_since_epoch()).count();
}

}  // namespace

std::string run_record_csv_header() {
    return "seed,variant,devices,uavs,subbands,preset,avg_data_bits,deadline_s,total_energy_j,"
           "device_energy_j,uav_energy_j,offload_fraction,sum_rate_bps,outer_iters,runtime_s,"
           "converged,feasible";
}

std::string run_record_csv_row(const RunRecord& r) {
    std::string row;
    row += std::to_string(r.seed) + "," + r.variant + "," + std::to_string(r.devices) + "," +
           std::to_string(r.uavs) + "," + std::to_string(r.subbands) + "," + r.preset + "," +
           fmt_double(r.avg_data_bits) + "," + fmt_double(r.deadline_s) + "," +
           fmt_double(r.total_energy_j) + "," + fmt_double(r.device_energy_j) + "," +
           fmt_double(r.uav_energy_j) + "," + fmt_double(r.offload_fraction) + "," +
           fmt_double(r.sum_rate_bps) + "," + std::to_string(r.outer_iters) + "," +
           fmt_double(r.runtime_s) + "," + (r.converged ? "1" : "0") + "," +
           (r.feasible ? "1" : "0");
    return row;
}

RunRecord make_run_record(const Scenario& s, Variant variant, const BcdResult& res,
                          double runtime_s) {
    RunRecord r;
    r.seed = s.seed;
    r.variant = variant_to_string(variant);
    r.devices = static_cast<int>(s.devices.size());
    r.uavs = static_cast<int>(s.uavs.size());
    r.subbands = s.phys.num_subbands;
    r.preset = s.config.preset;
    double bits = 0.0, frac = 0.0;
    for (size_t j = 0; j < s.devices.size(); ++j) {
        bits += s.devices[j].task.data_bits;
        frac += res.decisions.beta[j] / s.devices[j].task.data_bits;
    }
    r.avg_data_bits = bits / static_cast<double>(s.devices.size());
    r.offload_fraction = frac / static_cast<double>(s.devices.size());
    r.deadline_s = s.config.deadline_s;
    r.total_energy_j = res.report.objective_q_j;
    r.device_energy_j = res.report.device_energy_j;
    r.uav_energy_j = res.report.uav_energy_j;
    const LinkTable lt = build_link_table(s, res.decisions);
    double rate = 0.0;
    for (double v : lt.access_rate) rate += v;
    r.sum_rate_bps = rate;
    r.outer_iters = res.outer_iters;
    r.runtime_s = runtime_s;
    r.converged = res.converged;
    r.feasible = res.feasible;
    return r;
}

namespace {

nlohmann::json trace_to_json(const BcdResult& res, bool stable_runtime) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& t : res.trace) {
        auto phase = [&](const PhaseTrace& p) {
            return nlohmann::json{{"seconds", stable_runtime ? 0.0 : p.seconds},
                                  {"iterations", p.iterations},
                                  {"reverted", p.reverted}};
        };
        arr.push_back({{"q", t.q},
                       {"max_violation", t.max_violation},
                       {"split", phase(t.split)},
                       {"matching", phase(t.matching)},
                       {"power", phase(t.power)},
                       {"deploy", phase(t.deploy)},
                       {"routing", phase(t.routing)}});
    }
    nlohmann::json out;
    out["iterations"] = arr;
    out["converged"] = res.converged;
    out["feasible"] = res.feasible;
    out["diagnostic"] = res.diagnostic;
    return out;
}

}  // namespace

RunOutput run_once(const SimConfig& config, std::uint64_t seed, Variant variant,
                   bool stable_runtime) {
    const double t0 = now_seconds();
    const Scenario s = generate_scenario(config, seed);
    RunOutput out;
    out.result = run_bcd(s, variant);
    const double elapsed = now_seconds() - t0;
    out.record = make_run_record(s, variant, out.result, stable_runtime ? 0.0 : elapsed);
    out.trace_json = trace_to_json(out.result, stable_runtime).dump(2);
    return out;
}

RunArtifacts run_to_dir(const SimConfig& config, std::uint64_t seed, Variant variant,
                        const std::string& out_dir, bool stable_runtime) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    const Scenario s = generate_scenario(config, seed);
    RunOutput ro = run_once(config, seed, variant, stable_runtime);

    RunArtifacts art;
    art.record = ro.record;
    const std::string tag = variant_to_string(variant) + "_" + std::to_string(seed);
    art.csv_path = (fs::path(out_dir) / ("run_" + tag + ".csv")).string();
    art.scenario_path = (fs::path(out_dir) / ("scenario_" + std::to_string(seed) + ".json")).string();
    art.trace_path = (fs::path(out_dir) / ("trace_" + tag + ".json")).string();

    std::ofstream csv(art.csv_path);
    if (!csv) throw std::runtime_error("cannot write " + art.csv_path);
    csv << run_record_csv_header() << "\n" << run_record_csv_row(ro.record) << "\n";
    scenario_to_file(s, art.scenario_path);
    std::ofstream tf(art.trace_path);
    tf << ro.trace_json << "\n";
    return art;
}

namespace {

SimConfig apply_sweep_param(const SimConfig& base, const std::string& param, double value) {
    SimConfig cfg = base;
    if (param == "devices") {
        cfg.num_devices = static_cast<int>(value);
    } else if (param == "uavs") {
        cfg.num_uavs = static_cast<int>(value);
    } else if (param == "data_size") {
        // value is the average task size in bits; the configured spread is
        // kept symmetric around it
        const double half = (base.data_bits_max - base.data_bits_min) / 2.0;
        cfg.data_bits_min = std::max(value - half, 1.0);
        cfg.data_bits_max = value + half;
    } else if (param == "deadline") {
        cfg.deadline_s = value;
    } else {
        throw std::invalid_argument("unknown sweep param '" + param +
                                    "' (expected devices|uavs|data_size|deadline)");
    }
    return cfg;
}

}  // namespace

double ci95_halfwidth(const std::vector<double>& xs) {
    const size_t n = xs.size();
    if (n < 2) return 0.0;
    double mean = 0.0;
    for (double v : xs) mean += v;
    mean /= static_cast<double>(n);
    double ss = 0.0;
    for (double v : xs) ss += (v - mean) * (v - mean);
    const double sd = std::sqrt(ss / static_cast<double>(n - 1));
    return 1.96 * sd / std::sqrt(static_cast<double>(n));
}

SweepOutput sweep(const SweepRequest& req) {
    if (req.seeds.empty()) throw std::invalid_argument("sweep: needs at least one seed");
    if (req.values.empty()) throw std::invalid_argument("sweep: needs at least one value");
    if (req.variants.empty()) throw std::invalid_argument("sweep: needs at least one variant");

    struct Task {
        double value;
        std::uint64_t seed;
        Variant variant;
    };
    std::vector<Task> tasks;
    for (double v : req.values)
        for (std::uint64_t seed : req.seeds)
            for (Variant var : req.variants) tasks.push_back({v, seed, var});

    std::vector<RunRecord> rows(tasks.size());
    std::atomic<size_t> next{0};
    const int jobs = std::max(1, req.jobs);
    auto worker = [&]() {
        for (;;) {
            const size_t i = next.fetch_add(1);
            if (i >= tasks.size()) return;
            const SimConfig cfg = apply_sweep_param(req.base, req.param, tasks[i].value);
            rows[i] = run_once(cfg, tasks[i].seed, tasks[i].variant, req.stable_runtime).record;
        }
    };
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    SweepOutput out;
    out.rows = std::move(rows);
    out.csv_text = run_record_csv_header() + "\n";
    for (const auto& r : out.rows) {
        out.csv_text += run_record_csv_row(r) + "\n";
        if (!r.feasible) out.infeasible_present = true;
    }

    out.summary_csv_text =
        "param,value,variant,n,mean_total_energy_j,ci95_total_energy_j,mean_offload_fraction,"
        "ci95_offload_fraction,mean_sum_rate_bps,ci95_sum_rate_bps,mean_outer_iters\n";
    for (double v : req.values) {
        for (Variant var : req.variants) {
            std::vector<double> q, frac, rate, iters;
            for (size_t i = 0; i < tasks.size(); ++i) {
                if (tasks[i].value != v || tasks[i].variant != var) continue;
                q.push_back(out.rows[i].total_energy_j);
                frac.push_back(out.rows[i].offload_fraction);
                rate.push_back(out.rows[i].sum_rate_bps);
                iters.push_back(out.rows[i].outer_iters);
            }
            auto mean = [](const std::vector<double>& xs) {
                double m = 0.0;
                for (double x : xs) m += x;
                return xs.empty() ? 0.0 : m / static_cast<double>(xs.size());
            };
            out.summary_csv_text += req.param + "," + fmt_double(v) + "," + variant_to_string(var) +
                                    "," + std::to_string(q.size()) + "," + fmt_double(mean(q)) +
                                    "," + fmt_double(ci95_halfwidth(q)) + "," + fmt_double(mean(frac)) +
                                    "," + fmt_double(ci95_halfwidth(frac)) + "," +
                                    fmt_double(mean(rate)) + "," + fmt_double(ci95_halfwidth(rate)) +
                                    "," + fmt_double(mean(iters)) + "\n";
        }
    }
    return out;
}

SweepOutput sweep_to_dir(const SweepRequest& req, const std::string& out_dir) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    SweepOutput out = sweep(req);
    std::ofstream csv(fs::path(out_dir) / "sweep.csv");
    if (!csv) throw std::runtime_error("cannot write sweep.csv in " + out_dir);
    csv << out.csv_text;
    std::ofstream sum(fs::path(out_dir) / "summary.csv");
    sum << out.summary_csv_text;
    return out;
}

double exhaustive_band_oracle(const Scenario& s, const Decisions& dec) {
    Decisions best = dec;
    for (int k = 0; k < static_cast<int>(s.uavs.size()); ++k) {
        const auto members = s.cell_members(k);
        auto eval = [&](const std::vector<int>& assign) {
            Decisions probe = best;
            for (size_t li = 0; li < members.size(); ++li) {
                probe.band[members[li]] = assign[li];
                if (assign[li] < 0) probe.beta[members[li]] = 0.0;
            }
            return objective(s, probe).objective_q_j;
        };
        const ExhaustiveResult ex =
            exhaustive_assignment(static_cast<int>(members.size()), s.phys.num_subbands, eval);
        for (size_t li = 0; li < members.size(); ++li) {
            best.band[members[li]] = ex.assignment[li];
            if (ex.assignment[li] < 0) best.beta[members[li]] = 0.0;
        }
    }
    return objective(s, best).objective_q_j;
}

namespace {

void enumerate_routes(const Scenario& s, Decisions& dec, size_t j, bool allow_relays,
                      double& best_q) {
    if (j == s.devices.size()) {
        best_q = std::min(best_q, objective(s, dec).objective_q_j);
        return;
    }
    const int k = s.association[j];
    dec.route[j] = Route{RouteKind::AtServing, -1};
    enumerate_routes(s, dec, j + 1, allow_relays, best_q);
    if (allow_relays) {
        for (int k2 = 0; k2 < static_cast<int>(s.uavs.size()); ++k2) {
            if (k2 == k) continue;
            dec.route[j] = Route{RouteKind::Relay, k2};
            enumerate_routes(s, dec, j + 1, allow_relays, best_q);
        }
    }
    for (int si = 0; si < static_cast<int>(s.satellites.size()); ++si) {
        dec.route[j] = Route{RouteKind::Satellite, si};
        enumerate_routes(s, dec, j + 1, allow_relays, best_q);
    }
    dec.route[j] = Route{RouteKind::AtServing, -1};
}

}  // namespace

double exhaustive_routing_oracle(const Scenario& s, const Decisions& dec, bool allow_relays) {
    if (s.devices.size() > 8)
        throw std::invalid_argument("exhaustive_routing_oracle: guarded to 8 devices");
    Decisions probe = dec;
    double best = std::numeric_limits<double>::infinity();
    enumerate_routes(s, probe, 0, allow_relays, best);
    return best;
}

OracleReport oracle_suite(const SimConfig& base, int num_seeds) {
    SimConfig cfg = base;
    if (cfg.num_devices > 6 || cfg.num_uavs > 2 || cfg.phys.num_subbands > 6 ||
        cfg.num_satellites > 1)
        throw std::invalid_argument(
            "oracle_suite: guarded to J <= 6, K <= 2, B <= 6, S <= 1 (exhaustive search)");

    OracleReport rep;
    rep.csv_text = "seed,q_proposed,q_band_oracle,band_gap_rel,q_route_oracle,route_gap_rel\n";
    std::vector<double> band_gaps, route_gaps;
    for (int i = 0; i < num_seeds; ++i) {
        const std::uint64_t seed = static_cast<std::uint64_t>(i + 1);
        const Scenario s = generate_scenario(cfg, seed);
        const BcdResult res = run_bcd(s, Variant::Proposed);
        OracleRow row;
        row.seed = seed;
        row.q_proposed = res.report.objective_q_j;
        row.q_band_oracle = exhaustive_band_oracle(s, res.decisions);
        row.q_route_oracle = exhaustive_routing_oracle(s, res.decisions, true);
        const double denom = std::max(row.q_proposed, 1e-300);
        row.band_gap_rel = (row.q_proposed - row.q_band_oracle) / denom;
        row.route_gap_rel = (row.q_proposed - row.q_route_oracle) / denom;
        band_gaps.push_back(row.band_gap_rel);
        route_gaps.push_back(row.route_gap_rel);
        rep.rows.push_back(row);
        rep.csv_text += std::to_string(row.seed) + "," + fmt_double(row.q_proposed) + "," +
                        fmt_double(row.q_band_oracle) + "," + fmt_double(row.band_gap_rel) + "," +
                        fmt_double(row.q_route_oracle) + "," + fmt_double(row.route_gap_rel) + "\n";
    }
    auto median = [](std::vector<double> v) {
        if (v.empty()) return 0.0;
        std::sort(v.begin(), v.end());
        const size_t n = v.size();
        return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
    };
    rep.median_band_gap = median(band_gaps);
    rep.median_route_gap = median(route_gaps);
    return rep;
}

OracleReport oracle_suite_to_dir(const SimConfig& base, int num_seeds, const std::string& out_dir) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    OracleReport rep = oracle_suite(base, num_seeds);
    std::ofstream csv(fs::path(out_dir) / "oracle.csv");
    if (!csv) throw std::runtime_error("cannot write oracle.csv in " + out_dir);
    csv << rep.csv_text;
    std::ofstream txt(fs::path(out_dir) / "oracle_report.txt");
    txt << "instances: " << rep.rows.size() << "\n"
        << "median band-assignment gap (relative): " << rep.median_band_gap << "\n"
        << "median routing gap (relative): " << rep.median_route_gap << "\n";
    return rep;
}

}  // namespace sagsim
