#include "stns/config.hpp"
#include "stns/fft.hpp"
#include "stns/io.hpp"
#include "stns/norms.hpp"
#include "stns/selftest.hpp"
#include "stns/solver.hpp"

#include <CLI11.hpp>

#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>

namespace fs = std::filesystem;
using namespace stns;

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

struct CliOverrides {
    std::string config_path;
    std::string out_dir;
    std::optional<uint64_t> seed;
    std::optional<int> paths;
};

RunConfig load_with_overrides(const CliOverrides& cli) {
    RunConfig cfg = load_config(cli.config_path);
    if (!cli.out_dir.empty()) cfg.out_dir = cli.out_dir;
    if (cli.seed) cfg.base_seed = *cli.seed;
    if (cli.paths) cfg.mc_paths = *cli.paths;
    fs::create_directories(cfg.out_dir);
    return cfg;
}

std::string snapshot_name(const std::string& dir, long step) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "snapshot_%06ld.stns", step);
    return (fs::path(dir) / buf).string();
}

// One simulation path: returns the result and writes its record file.
RunResult simulate_path(const RunConfig& cfg, const StepperConfig& stepper, int replicate,
                        const std::string& record_path, bool write_snapshots) {
    GridSpec grid = cfg.make_grid();
    RngStreams rng = RngStreams::make(cfg.base_seed, static_cast<uint32_t>(replicate));
    RealVectorField u0 =
        make_random_divfree(grid, rng.init, cfg.init_mode_band, cfg.init_amplitude, cfg.p);

    StateObserver snapshot_sink;
    if (write_snapshots && cfg.snapshot_stride > 0) {
        int stride = cfg.snapshot_stride;
        snapshot_sink = [&cfg, stride](const SolverState& s) {
            if (s.step_index % stride == 0 && s.phys_cache)
                write_snapshot(snapshot_name(cfg.out_dir, s.step_index), *s.phys_cache,
                               s.t);
        };
    }
    RunResult res = run(stepper, u0, std::move(rng), snapshot_sink);

    write_records(record_path, cfg.to_json(), res.records, summary_to_json(res.summary));
    if (write_snapshots && res.state.phys_cache)
        write_snapshot(snapshot_name(cfg.out_dir, res.state.step_index),
                       *res.state.phys_cache, res.state.t);
    return res;
}

int cmd_simulate(const CliOverrides& cli) {
    RunConfig cfg = load_with_overrides(cli);
    StepperConfig stepper = cfg.make_stepper();
    prepare_models(stepper, cfg.make_grid());
    std::string path = (fs::path(cfg.out_dir) / "records.ndjson").string();
    RunResult res = simulate_path(cfg, stepper, 0, path, true);
    if (res.fault_at) {
        std::cerr << "integration fault at t > " << *res.fault_at
                  << "; last valid records flushed\n";
        return 3;
    }
    std::cout << "simulate: " << res.records.size() << " records, final t = "
              << res.summary.final_t;
    if (res.summary.stopped_at) std::cout << ", stopped at " << *res.summary.stopped_at;
    std::cout << "\n";
    return 0;
}

int cmd_heat(const CliOverrides& cli) {
    RunConfig cfg = load_with_overrides(cli);
    StepperConfig stepper = cfg.make_stepper();
    GridSpec grid = cfg.make_grid();
    validate_heat_exponents(cfg.heat_qf, cfg.heat_qh, cfg.p);
    prepare_models(stepper, grid);

    HeatForcing forcing;
    forcing.q_f = cfg.heat_qf;
    forcing.q_h = cfg.heat_qh;
    if (cfg.heat_h_mean != 0.0) {
        forcing.h = SpectralVectorField(grid);
        forcing.h->at(0, 0, 0, 0) = Complex(cfg.heat_h_mean, 0.0);
    }

    RngStreams rng = RngStreams::make(cfg.base_seed, 0);
    RealVectorField u0 =
        make_random_divfree(grid, rng.init, cfg.init_mode_band, cfg.init_amplitude, cfg.p);
    RunResult res = heat_solve(stepper, forcing, u0, std::move(rng));

    std::string path = (fs::path(cfg.out_dir) / "records.ndjson").string();
    write_records(path, cfg.to_json(), res.records, summary_to_json(res.summary));
    write_snapshot(snapshot_name(cfg.out_dir, res.state.step_index), *res.state.phys_cache,
                   res.state.t);
    std::cout << "heat: " << res.records.size() << " records, final t = "
              << res.summary.final_t << "\n";
    return 0;
}

int cmd_picard(const CliOverrides& cli) {
    RunConfig cfg = load_with_overrides(cli);
    GridSpec grid = cfg.make_grid();
    PicardConfig pc;
    pc.base = cfg.make_stepper();
    prepare_models(pc.base, grid);
    pc.m_max = cfg.picard_m_max;
    pc.ensemble = cfg.picard_ensemble;
    pc.base_seed = cfg.base_seed;

    RngStreams rng = RngStreams::make(cfg.base_seed, 0);
    RealVectorField u0 =
        make_random_divfree(grid, rng.init, cfg.init_mode_band, cfg.init_amplitude, cfg.p);

    std::ofstream out(fs::path(cfg.out_dir) / "picard.ndjson", std::ios::trunc);
    out << cfg.to_json() << "\n";

    bool contracted = false;
    double window = cfg.picard_window;
    for (int sweep = 0; sweep < 4; ++sweep) {
        pc.window = window;
        PicardResult res = picard_harness(pc, u0);
        double worst = 0.0;
        for (double r : res.ratios) worst = std::max(worst, r);
        out << "{\"type\":\"picard\",\"window\":" << fmt(res.window) << ",\"delta\":[";
        for (std::size_t i = 0; i < res.delta.size(); ++i)
            out << (i ? "," : "") << fmt(res.delta[i]);
        out << "],\"ratios\":[";
        for (std::size_t i = 0; i < res.ratios.size(); ++i)
            out << (i ? "," : "") << fmt(res.ratios[i]);
        out << "],\"max_ratio\":" << fmt(worst) << "}\n";
        std::cout << "picard window " << res.window << ": max ratio " << worst << "\n";
        if (worst <= 0.5) {
            contracted = true;
            break;
        }
        window *= 0.5;
    }
    return contracted ? 0 : 4;
}

int cmd_cauchy(const CliOverrides& cli) {
    RunConfig cfg = load_with_overrides(cli);
    GridSpec grid = cfg.make_grid();
    StepperConfig stepper = cfg.make_stepper();
    prepare_models(stepper, grid);
    stepper.records_with_pressure = false;
    stepper.record_stride = std::max(1, static_cast<int>(std::lround(
                                            cfg.horizon / cfg.dt / 10.0)));

    RngStreams rng = RngStreams::make(cfg.base_seed, 0);
    RealVectorField u0 =
        make_random_divfree(grid, rng.init, cfg.init_mode_band, cfg.init_amplitude, cfg.p);
    CauchyResult res = cauchy_study(stepper, u0, cfg.cauchy_levels, cfg.base_seed);

    std::ofstream out(fs::path(cfg.out_dir) / "cauchy.ndjson", std::ios::trunc);
    out << cfg.to_json() << "\n";
    out << "{\"type\":\"cauchy\",\"levels\":[";
    for (std::size_t i = 0; i < res.levels.size(); ++i)
        out << (i ? "," : "") << fmt(res.levels[i]);
    out << "],\"table\":[";
    for (std::size_t a = 0; a < res.table.size(); ++a) {
        out << (a ? "," : "") << "[";
        for (std::size_t b = 0; b < res.table[a].size(); ++b)
            out << (b ? "," : "") << fmt(res.table[a][b]);
        out << "]";
    }
    out << "]}\n";

    // consecutive-pair trend report
    bool decreasing = true;
    for (std::size_t i = 0; i + 2 < res.levels.size(); ++i)
        if (!(res.table[i + 1][i + 2] < res.table[i][i + 1])) decreasing = false;
    std::cout << "cauchy: consecutive-pair differences "
              << (decreasing ? "decreasing" : "NOT decreasing") << "\n";
    return 0;
}

int cmd_mc(const CliOverrides& cli) {
    RunConfig cfg = load_with_overrides(cli);
    GridSpec grid = cfg.make_grid();
    StepperConfig stepper = cfg.make_stepper();
    prepare_models(stepper, grid);
    stepper.records_with_pressure = false;

    const int paths = cfg.mc_paths;
    std::vector<TrajectorySummary> summaries(paths);
    std::vector<int> status(paths, 0);

    // replicates run on a small worker pool; each path writes its own file
    std::atomic<int> next{0};
    auto worker = [&]() {
        while (true) {
            int i = next.fetch_add(1);
            if (i >= paths) return;
            char name[40];
            std::snprintf(name, sizeof(name), "records_path%04d.ndjson", i);
            std::string path = (fs::path(cfg.out_dir) / name).string();
            try {
                RunResult res = simulate_path(cfg, stepper, i, path, false);
                summaries[i] = res.summary;
                status[i] = res.fault_at ? 3 : 0;
            } catch (const std::exception& e) {
                std::cerr << "path " << i << ": " << e.what() << "\n";
                status[i] = 2;
            }
        }
    };
    unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    unsigned n_workers = std::min<unsigned>(hw, static_cast<unsigned>(paths));
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < n_workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();

    for (int s : status)
        if (s != 0) return s;

    EnsembleStats stats = mc_estimate(summaries);
    std::ofstream out(fs::path(cfg.out_dir) / "mc_summary.ndjson", std::ios::trunc);
    out << cfg.to_json() << "\n";
    out << "{\"type\":\"mc\",\"paths\":" << stats.paths
        << ",\"mean\":" << summary_to_json(stats.mean)
        << ",\"se\":" << summary_to_json(stats.se) << "}\n";
    std::cout << "mc: " << paths << " paths, mean sup ||u||_p^p = " << stats.mean.sup_lp_p
              << " (se " << stats.se.sup_lp_p << ")\n";
    return 0;
}

int cmd_ops_test(const CliOverrides& cli) {
    RunConfig cfg = load_with_overrides(cli);
    auto checks = selftest::run_all(cfg.base_seed);
    int failures = 0;
    for (const auto& c : checks) {
        std::cout << (c.pass ? "[PASS] " : "[FAIL] ") << c.name;
        if (!c.detail.empty()) std::cout << "  (" << c.detail << ")";
        std::cout << "\n";
        if (!c.pass) ++failures;
    }
    std::cout << (failures == 0 ? "ops-test: all checks passed\n"
                                : "ops-test: FAILURES present\n");
    return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"pseudo-spectral tamed Navier-Stokes simulator"};
    app.require_subcommand(1);

    CliOverrides cli;
    auto add_common = [&cli](CLI::App* sub) {
        sub->add_option("--config", cli.config_path, "configuration file")->required();
        sub->add_option("--out", cli.out_dir, "output directory");
        sub->add_option("--seed", cli.seed, "base seed override");
        sub->add_option("--paths", cli.paths, "replicate count override");
    };

    auto* simulate = app.add_subcommand("simulate", "integrate the truncated tamed system");
    auto* heat = app.add_subcommand("heat", "linear stochastic heat system");
    auto* picard = app.add_subcommand("picard", "inner-iteration contraction study");
    auto* cauchy = app.add_subcommand("cauchy", "truncation-level Cauchy study");
    auto* mc = app.add_subcommand("mc", "Monte Carlo ensemble");
    auto* ops = app.add_subcommand("ops-test", "operator/physics property suite");
    for (auto* sub : {simulate, heat, picard, cauchy, mc, ops}) add_common(sub);

    CLI11_PARSE(app, argc, argv);

    try {
        if (simulate->parsed()) return cmd_simulate(cli);
        if (heat->parsed()) return cmd_heat(cli);
        if (picard->parsed()) return cmd_picard(cli);
        if (cauchy->parsed()) return cmd_cauchy(cli);
        if (mc->parsed()) return cmd_mc(cli);
        if (ops->parsed()) return cmd_ops_test(cli);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
