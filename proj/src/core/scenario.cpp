#include "core/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "core/rng.hpp"

namespace sagsim {

using nlohmann::json;

namespace {

[[noreturn]] void config_error(const std::string& msg) {
    throw std::invalid_argument("config: " + msg);
}

void require(bool ok, const std::string& msg) {
    if (!ok) config_error(msg);
}

double sq(double v) { return v * v; }

double dist2(const Vec2& a, const Vec2& b) { return sq(a.x - b.x) + sq(a.y - b.y); }

}  // namespace

SimConfig SimConfig::from_preset(const std::string& preset_name) {
    const Preset& p = preset_by_name(preset_name);
    SimConfig cfg;
    cfg.preset = p.name;
    cfg.phys = p.phys;
    cfg.deadline_s = p.deadline_s;
    cfg.data_bits_min = p.data_bits_min;
    cfg.data_bits_max = p.data_bits_max;
    cfg.cycles_per_bit_min = p.cycles_per_bit_min;
    cfg.cycles_per_bit_max = p.cycles_per_bit_max;
    cfg.device_cpu_hz = p.device_cpu_hz;
    cfg.device_chip_coeff = p.device_chip_coeff;
    cfg.device_max_tx_power_w = p.device_max_tx_power_w;
    cfg.uav_altitude_m = p.uav_altitude_m;
    cfg.uav_cpu_hz = p.uav_cpu_hz;
    cfg.uav_chip_coeff = p.uav_chip_coeff;
    cfg.uav_tx_power_w = p.uav_tx_power_w;
    cfg.eps1 = p.eps1;
    cfg.eps2 = p.eps2;
    cfg.eps3 = p.eps3;
    cfg.eps4 = p.eps4;
    return cfg;
}

void SimConfig::resolve_and_validate() {
    const Preset& p = preset_by_name(preset);

    if (sat_altitudes_m.empty()) {
        for (int s = 0; s < num_satellites; ++s) {
            double t = num_satellites > 1 ? double(s) / (num_satellites - 1) : 0.0;
            sat_altitudes_m.push_back(p.sat_altitude_min_m +
                                      t * (p.sat_altitude_max_m - p.sat_altitude_min_m));
        }
    }

    require(area_m > 0.0, "area_m must be positive");
    require(num_devices >= 1, "num_devices must be >= 1");
    require(num_uavs >= 1, "num_uavs must be >= 1");
    require(num_uavs <= num_devices, "num_uavs must not exceed num_devices (K-means needs K <= J)");
    require(num_satellites >= 0, "num_satellites must be >= 0");
    require(phys.num_subbands >= 1, "subbands must be >= 1");
    require(deadline_s > 0.0, "deadline_s must be positive");
    require(data_bits_min > 0.0 && data_bits_min <= data_bits_max,
            "data_bits range invalid (min > max or nonpositive)");
    require(cycles_per_bit_min > 0.0 && cycles_per_bit_min <= cycles_per_bit_max,
            "cycles_per_bit range invalid (min > max or nonpositive)");
    require(device_cpu_hz > 0.0, "device cpu_hz must be positive");
    require(device_chip_coeff > 0.0, "device chip_coeff must be positive");
    require(device_max_tx_power_w > 0.0, "device max_tx_power_w must be positive");
    require(uav_altitude_m > 0.0, "uav altitude_m must be positive");
    require(uav_cpu_hz > 0.0, "uav cpu_hz must be positive");
    require(uav_tx_power_w > 0.0, "uav tx_power_w must be positive");
    require(static_cast<int>(sat_altitudes_m.size()) == num_satellites,
            "sat_altitudes_m must have num_satellites entries");
    for (double a : sat_altitudes_m)
        require(a >= 500e3, "satellite altitude below the 500 km LEO floor");
    require(phys.subband_hz > 0.0 && phys.ref_gain > 0.0 && phys.noise_w > 0.0,
            "phys entries must be strictly positive");
    require(phys.absorption > 0.0, "absorption must be strictly positive");
    if (!phys.absorption_per_band.empty()) {
        require(static_cast<int>(phys.absorption_per_band.size()) == phys.num_subbands,
                "absorption_per_band must have one entry per sub-band");
        for (double v : phys.absorption_per_band)
            require(v > 0.0, "absorption_per_band entries must be positive");
    }
    require(eps1 > 0 && eps2 > 0 && eps3 > 0 && eps4 > 0, "tolerances must be positive");
    require(bsum_mu > 0.0, "bsum_mu must be positive");
    require(trust_region_m > 0.0, "trust_region_m must be positive");
}

double kmeans_sse(const std::vector<Vec2>& points, const std::vector<int>& assignment,
                  const std::vector<Vec2>& centroids) {
    double sse = 0.0;
    for (size_t i = 0; i < points.size(); ++i) sse += dist2(points[i], centroids[assignment[i]]);
    return sse;
}

KmeansResult kmeans(const std::vector<Vec2>& points, int k, std::uint64_t seed) {
    const int n = static_cast<int>(points.size());
    if (k < 1) throw std::invalid_argument("kmeans: k must be >= 1");
    if (k > n) throw std::invalid_argument("kmeans: k exceeds number of points");

    Rng rng = Rng::stream(seed, "kmeans");

    // k-means++ seeding
    std::vector<Vec2> centroids;
    centroids.push_back(points[rng.next_below(n)]);
    std::vector<double> d2(n);
    while (static_cast<int>(centroids.size()) < k) {
        double total = 0.0;
        for (int i = 0; i < n; ++i) {
            double best = std::numeric_limits<double>::infinity();
            for (const auto& c : centroids) best = std::min(best, dist2(points[i], c));
            d2[i] = best;
            total += best;
        }
        if (total <= 0.0) {
            // all points coincide with existing centroids; fall back to indices
            centroids.push_back(points[centroids.size() % n]);
            continue;
        }
        double target = rng.next_double() * total;
        int pick = n - 1;
        double acc = 0.0;
        for (int i = 0; i < n; ++i) {
            acc += d2[i];
            if (acc >= target) {
                pick = i;
                break;
            }
        }
        centroids.push_back(points[pick]);
    }

    KmeansResult res;
    res.assignment.assign(n, 0);
    const double shift_tol = 1e-6;
    const int max_iter = 100;

    for (int it = 0; it < max_iter; ++it) {
        // assignment step; ties go to the lowest centroid id via strict <
        for (int i = 0; i < n; ++i) {
            int best = 0;
            double bd = dist2(points[i], centroids[0]);
            for (int c = 1; c < k; ++c) {
                double d = dist2(points[i], centroids[c]);
                if (d < bd) {
                    bd = d;
                    best = c;
                }
            }
            res.assignment[i] = best;
        }
        // update step
        std::vector<Vec2> next(k, Vec2{0, 0});
        std::vector<int> count(k, 0);
        for (int i = 0; i < n; ++i) {
            next[res.assignment[i]].x += points[i].x;
            next[res.assignment[i]].y += points[i].y;
            count[res.assignment[i]]++;
        }
        for (int c = 0; c < k; ++c) {
            if (count[c] > 0) {
                next[c].x /= count[c];
                next[c].y /= count[c];
            } else {
                // empty cluster: reseed at the point farthest from its centroid
                int far = 0;
                double fd = -1.0;
                for (int i = 0; i < n; ++i) {
                    double d = dist2(points[i], centroids[res.assignment[i]]);
                    if (d > fd) {
                        fd = d;
                        far = i;
                    }
                }
                next[c] = points[far];
            }
        }
        double shift = 0.0;
        for (int c = 0; c < k; ++c) shift = std::max(shift, std::sqrt(dist2(next[c], centroids[c])));
        centroids = next;
        res.iterations = it + 1;
        // re-assign against the updated centroids before measuring the objective
        for (int i = 0; i < n; ++i) {
            int best = 0;
            double bd = dist2(points[i], centroids[0]);
            for (int c = 1; c < k; ++c) {
                double d = dist2(points[i], centroids[c]);
                if (d < bd) {
                    bd = d;
                    best = c;
                }
            }
            res.assignment[i] = best;
        }
        res.sse_trace.push_back(kmeans_sse(points, res.assignment, centroids));
        if (shift < shift_tol) break;
    }
    res.centroids = centroids;
    return res;
}

Scenario generate_scenario(const SimConfig& config_in, std::uint64_t seed) {
    SimConfig config = config_in;
    config.seed = seed;
    config.resolve_and_validate();

    Scenario s;
    s.seed = seed;
    s.config = config;
    s.phys = config.phys;

    Rng pos_rng = Rng::stream(seed, "scenario.pos");
    Rng task_rng = Rng::stream(seed, "scenario.task");

    s.devices.resize(config.num_devices);
    std::vector<Vec2> pts(config.num_devices);
    for (int j = 0; j < config.num_devices; ++j) {
        Device& d = s.devices[j];
        d.id = j;
        d.pos.x = pos_rng.uniform(0.0, config.area_m);
        d.pos.y = pos_rng.uniform(0.0, config.area_m);
        d.cpu_hz = config.device_cpu_hz;
        d.chip_coeff = config.device_chip_coeff;
        d.max_tx_power_w = config.device_max_tx_power_w;
        d.task.deadline_s = config.deadline_s;
        d.task.data_bits = task_rng.uniform(config.data_bits_min, config.data_bits_max);
        d.task.cycles_per_bit = task_rng.uniform(config.cycles_per_bit_min, config.cycles_per_bit_max);
        pts[j] = d.pos;
    }

    KmeansResult km = kmeans(pts, config.num_uavs, seed);
    s.association = km.assignment;

    s.uavs.resize(config.num_uavs);
    for (int k = 0; k < config.num_uavs; ++k) {
        Uav& u = s.uavs[k];
        u.id = k;
        u.bounds = Box{0.0, config.area_m, 0.0, config.area_m};
        u.pos.x = std::clamp(km.centroids[k].x, u.bounds.x_min, u.bounds.x_max);
        u.pos.y = std::clamp(km.centroids[k].y, u.bounds.y_min, u.bounds.y_max);
        u.altitude_m = config.uav_altitude_m;
        u.cpu_hz = config.uav_cpu_hz;
        u.chip_coeff = config.uav_chip_coeff;
        u.tx_power_w = config.uav_tx_power_w;
    }

    s.satellites.resize(config.num_satellites);
    for (int i = 0; i < config.num_satellites; ++i) {
        Satellite& sat = s.satellites[i];
        sat.id = i;
        sat.x = config.area_m / 2.0;
        sat.y = config.area_m / 2.0;
        sat.altitude_m = config.sat_altitudes_m[i];
    }

    validate_scenario(s);
    return s;
}

Scenario generate_scenario(const SimConfig& config) { return generate_scenario(config, config.seed); }

void validate_scenario(const Scenario& s) {
    const int J = static_cast<int>(s.devices.size());
    const int K = static_cast<int>(s.uavs.size());
    require(static_cast<int>(s.association.size()) == J, "association must cover every device");
    for (int j = 0; j < J; ++j)
        require(s.association[j] >= 0 && s.association[j] < K, "association out of range");
    for (const auto& d : s.devices) {
        require(d.cpu_hz > 0 && d.chip_coeff > 0 && d.max_tx_power_w > 0, "device fields must be positive");
        require(d.task.deadline_s > 0 && d.task.cycles_per_bit > 0 && d.task.data_bits > 0,
                "task fields must be positive");
    }
    for (const auto& u : s.uavs) {
        require(u.altitude_m > 0 && u.cpu_hz > 0, "uav fields must be positive");
        require(u.pos.x >= u.bounds.x_min && u.pos.x <= u.bounds.x_max &&
                    u.pos.y >= u.bounds.y_min && u.pos.y <= u.bounds.y_max,
                "uav position outside its bounds");
    }
    for (const auto& sat : s.satellites)
        require(sat.altitude_m >= 500e3, "satellite below LEO floor");
}

namespace {

void parse_phys(const json& in, PhysConfig& phys) {
    for (auto it = in.begin(); it != in.end(); ++it) {
        const std::string& key = it.key();
        const json& v = it.value();
        if (key == "subband_hz") phys.subband_hz = v.get<double>();
        else if (key == "ref_gain") phys.ref_gain = v.get<double>();
        else if (key == "ref_gain_db") phys.ref_gain = to_linear(v.get<double>());
        else if (key == "absorption") phys.absorption = v.get<double>();
        else if (key == "absorption_per_band") phys.absorption_per_band = v.get<std::vector<double>>();
        else if (key == "noise_w") phys.noise_w = v.get<double>();
        else if (key == "noise_dbm") phys.noise_w = dbm_to_watts(v.get<double>());
        else if (key == "mm_carrier_hz") phys.mm_carrier_hz = v.get<double>();
        else if (key == "mm_bandwidth_uav_hz") phys.mm_bandwidth_uav_hz = v.get<double>();
        else if (key == "mm_bandwidth_sat_hz") phys.mm_bandwidth_sat_hz = v.get<double>();
        else if (key == "antenna_gain_tx_db") phys.antenna_gain_tx = to_linear(v.get<double>());
        else if (key == "antenna_gain_rx_db") phys.antenna_gain_rx = to_linear(v.get<double>());
        else if (key == "amp_factor_db") phys.amp_factor = to_linear(v.get<double>());
        else if (key == "noise_temp_k") phys.noise_temp_k = v.get<double>();
        else if (key == "light_speed") phys.light_speed = v.get<double>();
        else if (key == "match_weight") phys.match_weight = v.get<double>();
        else if (key == "interference_weight") phys.interference_weight = v.get<double>();
        else if (key == "literal_interference") phys.literal_interference = v.get<bool>();
        else config_error("unknown phys key '" + key + "'");
    }
}

json phys_to_json(const PhysConfig& p) {
    json out;
    out["subband_hz"] = p.subband_hz;
    out["ref_gain"] = p.ref_gain;
    out["absorption"] = p.absorption;
    if (!p.absorption_per_band.empty()) out["absorption_per_band"] = p.absorption_per_band;
    out["noise_w"] = p.noise_w;
    out["mm_carrier_hz"] = p.mm_carrier_hz;
    out["mm_bandwidth_uav_hz"] = p.mm_bandwidth_uav_hz;
    out["mm_bandwidth_sat_hz"] = p.mm_bandwidth_sat_hz;
    out["noise_temp_k"] = p.noise_temp_k;
    out["light_speed"] = p.light_speed;
    out["match_weight"] = p.match_weight;
    out["interference_weight"] = p.interference_weight;
    out["literal_interference"] = p.literal_interference;
    return out;
}

}  // namespace

SimConfig config_from_json_text(const std::string& text) {
    json in;
    try {
        in = json::parse(text);
    } catch (const json::parse_error& e) {
        config_error(std::string("invalid JSON: ") + e.what());
    }
    std::string preset_name = "physical";
    if (in.contains("preset")) preset_name = in["preset"].get<std::string>();
    SimConfig cfg = SimConfig::from_preset(preset_name);

    for (auto it = in.begin(); it != in.end(); ++it) {
        const std::string& key = it.key();
        const json& v = it.value();
        if (key == "preset") continue;
        else if (key == "area_m") cfg.area_m = v.get<double>();
        else if (key == "num_devices") cfg.num_devices = v.get<int>();
        else if (key == "num_uavs") cfg.num_uavs = v.get<int>();
        else if (key == "num_satellites") cfg.num_satellites = v.get<int>();
        else if (key == "subbands") cfg.phys.num_subbands = v.get<int>();
        else if (key == "seed") cfg.seed = v.get<std::uint64_t>();
        else if (key == "deadline_s") cfg.deadline_s = v.get<double>();
        else if (key == "data_bits_range") {
            auto r = v.get<std::vector<double>>();
            require(r.size() == 2, "data_bits_range must be [min, max]");
            cfg.data_bits_min = r[0];
            cfg.data_bits_max = r[1];
        } else if (key == "cycles_per_bit_range") {
            auto r = v.get<std::vector<double>>();
            require(r.size() == 2, "cycles_per_bit_range must be [min, max]");
            cfg.cycles_per_bit_min = r[0];
            cfg.cycles_per_bit_max = r[1];
        } else if (key == "device") {
            for (auto di = v.begin(); di != v.end(); ++di) {
                if (di.key() == "cpu_hz") cfg.device_cpu_hz = di.value().get<double>();
                else if (di.key() == "chip_coeff") cfg.device_chip_coeff = di.value().get<double>();
                else if (di.key() == "max_tx_power_w") cfg.device_max_tx_power_w = di.value().get<double>();
                else if (di.key() == "max_tx_power_dbm") cfg.device_max_tx_power_w = dbm_to_watts(di.value().get<double>());
                else config_error("unknown device key '" + di.key() + "'");
            }
        } else if (key == "uav") {
            for (auto ui = v.begin(); ui != v.end(); ++ui) {
                if (ui.key() == "altitude_m") cfg.uav_altitude_m = ui.value().get<double>();
                else if (ui.key() == "cpu_hz") cfg.uav_cpu_hz = ui.value().get<double>();
                else if (ui.key() == "chip_coeff") cfg.uav_chip_coeff = ui.value().get<double>();
                else if (ui.key() == "tx_power_w") cfg.uav_tx_power_w = ui.value().get<double>();
                else if (ui.key() == "tx_power_dbm") cfg.uav_tx_power_w = dbm_to_watts(ui.value().get<double>());
                else config_error("unknown uav key '" + ui.key() + "'");
            }
        } else if (key == "sat_altitudes_m") {
            cfg.sat_altitudes_m = v.get<std::vector<double>>();
        } else if (key == "phys") {
            parse_phys(v, cfg.phys);
        } else if (key == "solver") {
            for (auto si = v.begin(); si != v.end(); ++si) {
                const std::string& sk = si.key();
                if (sk == "eps1") cfg.eps1 = si.value().get<double>();
                else if (sk == "eps2") cfg.eps2 = si.value().get<double>();
                else if (sk == "eps3") cfg.eps3 = si.value().get<double>();
                else if (sk == "eps4") cfg.eps4 = si.value().get<double>();
                else if (sk == "bsum_mu") cfg.bsum_mu = si.value().get<double>();
                else if (sk == "bcd_max_outer") cfg.bcd_max_outer = si.value().get<int>();
                else if (sk == "ccp_max_iter") cfg.ccp_max_iter = si.value().get<int>();
                else if (sk == "sca_max_iter") cfg.sca_max_iter = si.value().get<int>();
                else if (sk == "bsum_max_iter") cfg.bsum_max_iter = si.value().get<int>();
                else if (sk == "trust_region_m") cfg.trust_region_m = si.value().get<double>();
                else if (sk == "split_ignore_uav_energy") cfg.split_ignore_uav_energy = si.value().get<bool>();
                else config_error("unknown solver key '" + sk + "'");
            }
        } else {
            config_error("unknown key '" + key + "'");
        }
    }
    cfg.resolve_and_validate();
    return cfg;
}

SimConfig config_from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) config_error("cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return config_from_json_text(ss.str());
}

std::string config_to_json_text(const SimConfig& c) {
    json out;
    out["preset"] = c.preset;
    out["area_m"] = c.area_m;
    out["num_devices"] = c.num_devices;
    out["num_uavs"] = c.num_uavs;
    out["num_satellites"] = c.num_satellites;
    out["subbands"] = c.phys.num_subbands;
    out["seed"] = c.seed;
    out["deadline_s"] = c.deadline_s;
    out["data_bits_range"] = {c.data_bits_min, c.data_bits_max};
    out["cycles_per_bit_range"] = {c.cycles_per_bit_min, c.cycles_per_bit_max};
    out["device"] = {{"cpu_hz", c.device_cpu_hz},
                     {"chip_coeff", c.device_chip_coeff},
                     {"max_tx_power_w", c.device_max_tx_power_w}};
    out["uav"] = {{"altitude_m", c.uav_altitude_m},
                  {"cpu_hz", c.uav_cpu_hz},
                  {"chip_coeff", c.uav_chip_coeff},
                  {"tx_power_w", c.uav_tx_power_w}};
    out["sat_altitudes_m"] = c.sat_altitudes_m;
    out["phys"] = phys_to_json(c.phys);
    out["solver"] = {{"eps1", c.eps1},
                     {"eps2", c.eps2},
                     {"eps3", c.eps3},
                     {"eps4", c.eps4},
                     {"bsum_mu", c.bsum_mu},
                     {"bcd_max_outer", c.bcd_max_outer},
                     {"ccp_max_iter", c.ccp_max_iter},
                     {"sca_max_iter", c.sca_max_iter},
                     {"bsum_max_iter", c.bsum_max_iter},
                     {"trust_region_m", c.trust_region_m},
                     {"split_ignore_uav_energy", c.split_ignore_uav_energy}};
    return out.dump(2);
}

std::string scenario_to_json_text(const Scenario& s) {
    json out;
    out["seed"] = s.seed;
    out["config"] = json::parse(config_to_json_text(s.config));
    json devs = json::array();
    for (const auto& d : s.devices) {
        devs.push_back({{"id", d.id},
                        {"pos", {d.pos.x, d.pos.y}},
                        {"cpu_hz", d.cpu_hz},
                        {"chip_coeff", d.chip_coeff},
                        {"max_tx_power_w", d.max_tx_power_w},
                        {"deadline_s", d.task.deadline_s},
                        {"cycles_per_bit", d.task.cycles_per_bit},
                        {"data_bits", d.task.data_bits}});
    }
    out["devices"] = devs;
    json uavs = json::array();
    for (const auto& u : s.uavs) {
        uavs.push_back({{"id", u.id},
                        {"pos", {u.pos.x, u.pos.y}},
                        {"altitude_m", u.altitude_m},
                        {"cpu_hz", u.cpu_hz},
                        {"chip_coeff", u.chip_coeff},
                        {"tx_power_w", u.tx_power_w},
                        {"bounds", {u.bounds.x_min, u.bounds.x_max, u.bounds.y_min, u.bounds.y_max}}});
    }
    out["uavs"] = uavs;
    json sats = json::array();
    for (const auto& sat : s.satellites)
        sats.push_back({{"id", sat.id}, {"x", sat.x}, {"y", sat.y}, {"altitude_m", sat.altitude_m}});
    out["satellites"] = sats;
    out["association"] = s.association;
    return out.dump(2);
}

Scenario scenario_from_json_text(const std::string& text) {
    json in = json::parse(text);
    Scenario s;
    s.seed = in.at("seed").get<std::uint64_t>();
    s.config = config_from_json_text(in.at("config").dump());
    s.phys = s.config.phys;
    for (const auto& jd : in.at("devices")) {
        Device d;
        d.id = jd.at("id").get<int>();
        d.pos.x = jd.at("pos")[0].get<double>();
        d.pos.y = jd.at("pos")[1].get<double>();
        d.cpu_hz = jd.at("cpu_hz").get<double>();
        d.chip_coeff = jd.at("chip_coeff").get<double>();
        d.max_tx_power_w = jd.at("max_tx_power_w").get<double>();
        d.task.deadline_s = jd.at("deadline_s").get<double>();
        d.task.cycles_per_bit = jd.at("cycles_per_bit").get<double>();
        d.task.data_bits = jd.at("data_bits").get<double>();
        s.devices.push_back(d);
    }
    for (const auto& ju : in.at("uavs")) {
        Uav u;
        u.id = ju.at("id").get<int>();
        u.pos.x = ju.at("pos")[0].get<double>();
        u.pos.y = ju.at("pos")[1].get<double>();
        u.altitude_m = ju.at("altitude_m").get<double>();
        u.cpu_hz = ju.at("cpu_hz").get<double>();
        u.chip_coeff = ju.at("chip_coeff").get<double>();
        u.tx_power_w = ju.at("tx_power_w").get<double>();
        auto b = ju.at("bounds").get<std::vector<double>>();
        u.bounds = Box{b[0], b[1], b[2], b[3]};
        s.uavs.push_back(u);
    }
    for (const auto& js : in.at("satellites")) {
        Satellite sat;
        sat.id = js.at("id").get<int>();
        sat.x = js.at("x").get<double>();
        sat.y = js.at("y").get<double>();
        sat.altitude_m = js.at("altitude_m").get<double>();
        s.satellites.push_back(sat);
    }
    s.association = in.at("association").get<std::vector<int>>();
    validate_scenario(s);
    return s;
}

void scenario_to_file(const Scenario& s, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << scenario_to_json_text(s) << "\n";
}

Scenario scenario_from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return scenario_from_json_text(ss.str());
}

}  // namespace sagsim
