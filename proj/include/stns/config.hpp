#ifndef STNS_CONFIG_HPP
#define STNS_CONFIG_HPP

#include "stns/noise.hpp"
#include "stns/solver.hpp"

#include <string>
#include <vector>

namespace stns {

/// Fully validated run configuration.  The text format is flat dotted keys
/// `section.key = value`, `#` comments, repeated keys for lists.
struct RunConfig {
    // grid
    int grid_n = 32;
    double grid_box = 8.0 * M_PI;

    // physics
    double nu = 0.1;
    double taming_threshold = 1.0;   // N
    double p = 4.0;
    double cutoff_radius = 50.0;     // R
    double truncation_level = 0.3;   // k
    bool dealias = true;

    // noise
    int wiener_rank = 4;
    double wiener_amplitude = 0.05;
    std::vector<double> jump_weights = {0.5, 0.3, 0.2};
    std::vector<double> jump_amplitudes = {0.05, -0.03, 0.02};
    double jump_alpha = 0.5;

    // stepper
    double dt = 0.01;
    double horizon = 1.0;
    int record_stride = 1;

    // stopping
    bool stopping_enabled = false;
    double stopping_level = 1e12;  // M
    double stopping_scale = 1.0;   // K

    // monte carlo
    int mc_paths = 1;
    uint64_t base_seed = 12345;

    // initial data
    double init_amplitude = 1.0;  // target ||u0||_p
    int init_mode_band = 3;

    // heat-run forcing exponents and constant direct-forcing amplitude
    double heat_qf = 3.0;
    double heat_qh = 2.0;
    double heat_h_mean = 0.0;

    // picard harness
    double picard_window = 0.5;
    int picard_m_max = 5;
    int picard_ensemble = 32;

    // cauchy study
    std::vector<double> cauchy_levels = {4.0, 8.0, 16.0, 32.0};

    // output
    std::string out_dir = ".";
    int snapshot_stride = 0;  // 0 = final snapshot only

    // Assemble the solver-facing configuration (noise models unprepared).
    StepperConfig make_stepper() const;
    GridSpec make_grid() const { return GridSpec(grid_n, grid_box); }

    std::string to_json() const;  // resolved-config echo object
};

// Parse + validate; errors name the offending key and the violated constraint.
RunConfig load_config(const std::string& path);
RunConfig parse_config_text(const std::string& text);

}  // namespace stns

#endif
