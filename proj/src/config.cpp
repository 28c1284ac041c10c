#include "stns/config.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace stns {
namespace {

struct KvTable {
    std::map<std::string, std::vector<std::string>> entries;

    bool has(const std::string& key) const { return entries.count(key) > 0; }

    std::string get(const std::string& key) const { return entries.at(key).back(); }

    double num(const std::string& key) const {
        const std::string& s = get(key);
        try {
            std::size_t pos = 0;
            double v = std::stod(s, &pos);
            if (pos != s.size()) throw std::invalid_argument("trailing characters");
            return v;
        } catch (const std::exception&) {
            throw std::invalid_argument("config: key '" + key + "' has non-numeric value '" +
                                        s + "'");
        }
    }

    std::vector<double> num_list(const std::string& key) const {
        std::vector<double> out;
        for (const auto& s : entries.at(key)) out.push_back(std::stod(s));
        return out;
    }

    bool flag(const std::string& key) const {
        std::string s = get(key);
        if (s == "true" || s == "1" || s == "on") return true;
        if (s == "false" || s == "0" || s == "off") return false;
        throw std::invalid_argument("config: key '" + key + "' must be a boolean, got '" + s +
                                    "'");
    }
};

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

KvTable parse_table(const std::string& text) {
    KvTable t;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config: line " + std::to_string(lineno) +
                                        " is not of the form key = value");
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));
        if (key.empty() || val.empty())
            throw std::invalid_argument("config: line " + std::to_string(lineno) +
                                        " has an empty key or value");
        t.entries[key].push_back(val);
    }
    return t;
}

void check(bool ok, const std::string& message) {
    if (!ok) throw std::invalid_argument("config: " + message);
}

}  // namespace

RunConfig parse_config_text(const std::string& text) {
    KvTable t = parse_table(text);
    RunConfig c;

    static const char* known[] = {
        "grid.N_g", "grid.L", "physics.nu", "physics.N", "physics.p", "physics.R",
        "physics.k", "physics.dealias", "noise.d_W", "noise.wiener_amplitude",
        "noise.alpha", "noise.jump_weight", "noise.jump_amplitude", "stepper.dt",
        "stepper.T", "stepper.record_stride", "stopping.enabled", "stopping.M",
        "stopping.K", "mc.paths", "mc.base_seed", "init.amplitude", "init.mode_band",
        "heat.q_f", "heat.q_h", "heat.h_mean", "picard.window", "picard.m_max",
        "picard.ensemble", "cauchy.level", "output.directory", "output.snapshot_stride"};
    for (const auto& [key, vals] : t.entries) {
        bool ok = false;
        for (const char* k : known)
            if (key == k) ok = true;
        if (!ok) throw std::invalid_argument("config: unknown key '" + key + "'");
        (void)vals;
    }

    auto set_num = [&](const char* key, auto& field) {
        if (t.has(key)) field = static_cast<std::decay_t<decltype(field)>>(t.num(key));
    };

    set_num("grid.N_g", c.grid_n);
    set_num("grid.L", c.grid_box);
    set_num("physics.nu", c.nu);
    set_num("physics.N", c.taming_threshold);
    set_num("physics.p", c.p);
    set_num("physics.R", c.cutoff_radius);
    set_num("physics.k", c.truncation_level);
    if (t.has("physics.dealias")) c.dealias = t.flag("physics.dealias");

    set_num("noise.d_W", c.wiener_rank);
    set_num("noise.wiener_amplitude", c.wiener_amplitude);
    set_num("noise.alpha", c.jump_alpha);
    if (t.has("noise.jump_weight")) c.jump_weights = t.num_list("noise.jump_weight");
    if (t.has("noise.jump_amplitude")) c.jump_amplitudes = t.num_list("noise.jump_amplitude");

    set_num("stepper.dt", c.dt);
    set_num("stepper.T", c.horizon);
    set_num("stepper.record_stride", c.record_stride);

    if (t.has("stopping.enabled")) c.stopping_enabled = t.flag("stopping.enabled");
    set_num("stopping.M", c.stopping_level);
    set_num("stopping.K", c.stopping_scale);

    set_num("mc.paths", c.mc_paths);
    set_num("mc.base_seed", c.base_seed);

    set_num("init.amplitude", c.init_amplitude);
    set_num("init.mode_band", c.init_mode_band);

    set_num("heat.q_f", c.heat_qf);
    set_num("heat.q_h", c.heat_qh);
    set_num("heat.h_mean", c.heat_h_mean);

    set_num("picard.window", c.picard_window);
    set_num("picard.m_max", c.picard_m_max);
    set_num("picard.ensemble", c.picard_ensemble);

    if (t.has("cauchy.level")) c.cauchy_levels = t.num_list("cauchy.level");

    if (t.has("output.directory")) c.out_dir = t.get("output.directory");
    set_num("output.snapshot_stride", c.snapshot_stride);

    // validation, each failure naming the offending key
    check(c.grid_n >= 8 && c.grid_n % 2 == 0, "grid.N_g must be even and >= 8");
    check(c.grid_box > 0.0, "grid.L must be positive");
    check(c.nu > 0.0, "physics.nu must be positive");
    check(c.taming_threshold >= 0.0, "physics.N must be nonnegative");
    check(c.p > 3.0, "physics.p must exceed 3");
    check(c.cutoff_radius >= 1.0, "physics.R must be >= 1");
    double k_max = c.grid_n / (2.0 * c.grid_box);
    check(c.truncation_level > 0.0 && c.truncation_level <= k_max,
          "physics.k must lie in (0, N_g/(2L)] so the Gaussian multiplier is resolved");
    check(c.wiener_rank >= 0, "noise.d_W must be nonnegative");
    check(c.jump_alpha >= 0.0 && c.jump_alpha < 2.0 / 3.0,
          "noise.alpha must lie in [0, 2/3)");
    check(c.jump_weights.size() == c.jump_amplitudes.size(),
          "noise.jump_weight and noise.jump_amplitude must have equal lengths");
    for (double w : c.jump_weights) check(w > 0.0, "noise.jump_weight entries must be positive");
    check(c.dt > 0.0, "stepper.dt must be positive");
    check(c.horizon >= 0.0, "stepper.T must be nonnegative");
    check(c.dt <= c.horizon || c.horizon == 0.0, "stepper.dt must not exceed stepper.T");
    check(c.record_stride >= 1, "stepper.record_stride must be >= 1");
    check(c.mc_paths >= 1, "mc.paths must be >= 1");
    check(c.init_mode_band >= 1, "init.mode_band must be >= 1");
    check(c.picard_ensemble >= 1, "picard.ensemble must be >= 1");

    return c;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("config: cannot open file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

StepperConfig RunConfig::make_stepper() const {
    StepperConfig s;
    s.dt = dt;
    s.horizon = horizon;
    s.record_stride = record_stride;
    s.drift.nu = nu;
    s.drift.taming = TamingFunction{taming_threshold, nu};
    s.drift.cutoff = CutoffFunction{cutoff_radius};
    s.drift.truncation_level = truncation_level;
    s.drift.lp_exponent = p;
    s.drift.dealias = dealias;
    s.wiener = WienerModel::standard(wiener_rank, wiener_amplitude);
    s.jumps = JumpModel::standard(jump_alpha, 1.0);
    auto& marks = s.jumps.marks();
    marks.clear();
    for (std::size_t i = 0; i < jump_weights.size(); ++i)
        marks.push_back({jump_weights[i], jump_amplitudes[i]});
    s.stopping.enabled = stopping_enabled;
    s.stopping.level = stopping_level;
    s.stopping.data_scale = stopping_scale;
    return s;
}

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

std::string RunConfig::to_json() const {
    std::ostringstream o;
    o << "{\"type\":\"config\"";
    o << ",\"grid\":{\"N_g\":" << grid_n << ",\"L\":" << fmt(grid_box) << "}";
    o << ",\"physics\":{\"nu\":" << fmt(nu) << ",\"N\":" << fmt(taming_threshold)
      << ",\"p\":" << fmt(p) << ",\"R\":" << fmt(cutoff_radius) << ",\"k\":"
      << fmt(truncation_level) << ",\"dealias\":" << (dealias ? "true" : "false") << "}";
    o << ",\"noise\":{\"d_W\":" << wiener_rank << ",\"wiener_amplitude\":"
      << fmt(wiener_amplitude) << ",\"alpha\":" << fmt(jump_alpha) << ",\"jump_weights\":[";
    for (std::size_t i = 0; i < jump_weights.size(); ++i)
        o << (i ? "," : "") << fmt(jump_weights[i]);
    o << "],\"jump_amplitudes\":[";
    for (std::size_t i = 0; i < jump_amplitudes.size(); ++i)
        o << (i ? "," : "") << fmt(jump_amplitudes[i]);
    o << "]}";
    o << ",\"stepper\":{\"dt\":" << fmt(dt) << ",\"T\":" << fmt(horizon)
      << ",\"record_stride\":" << record_stride << "}";
    o << ",\"stopping\":{\"enabled\":" << (stopping_enabled ? "true" : "false")
      << ",\"M\":" << fmt(stopping_level) << ",\"K\":" << fmt(stopping_scale) << "}";
    o << ",\"mc\":{\"paths\":" << mc_paths << ",\"base_seed\":" << base_seed << "}";
    o << ",\"init\":{\"amplitude\":" << fmt(init_amplitude) << ",\"mode_band\":"
      << init_mode_band << "}";
    o << ",\"heat\":{\"q_f\":" << fmt(heat_qf) << ",\"q_h\":" << fmt(heat_qh) << "}";
    o << ",\"picard\":{\"window\":" << fmt(picard_window) << ",\"m_max\":" << picard_m_max
      << ",\"ensemble\":" << picard_ensemble << "}";
    o << ",\"cauchy\":{\"levels\":[";
    for (std::size_t i = 0; i < cauchy_levels.size(); ++i)
        o << (i ? "," : "") << fmt(cauchy_levels[i]);
    o << "]}";
    o << ",\"output\":{\"snapshot_stride\":" << snapshot_stride << "}";
    o << "}";
    return o.str();
}

}  // namespace stns
