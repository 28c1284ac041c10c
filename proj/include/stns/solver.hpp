#ifndef STNS_SOLVER_HPP
#define STNS_SOLVER_HPP

#include "stns/diagnostics.hpp"
#include "stns/grid.hpp"
#include "stns/noise.hpp"
#include "stns/physics.hpp"

#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

namespace stns {

struct StoppingConfig {
    bool enabled = false;
    double level = 0.0;       // M
    double data_scale = 1.0;  // K
};

struct StepperConfig {
    double dt = 0.01;
    double horizon = 1.0;  // T
    DriftConfig drift;
    WienerModel wiener;
    JumpModel jumps;
    StoppingConfig stopping;
    int record_stride = 1;
    bool records_with_pressure = true;
};

/// Raised when a step produces a non-finite state; carries the last valid time.
struct IntegrationFault : std::runtime_error {
    double t_last;
    explicit IntegrationFault(double t)
        : std::runtime_error("integration fault: non-finite state at t > " +
                             std::to_string(t)),
          t_last(t) {}
};

struct SolverState {
    double t = 0.0;
    long step_index = 0;
    SpectralVectorField u;
    std::optional<SpectralVectorField> u_pre_jump;  // left limit at the last jump step
    RngStreams rng;
    double running_max_lp = 0.0;   // running max of ||u(s)||_p^p v ||u(s-)||_p^p
    double running_int_3p = 0.0;   // left-endpoint quadrature of ||u||_{3p}^p
    std::optional<double> stopped_at;
    std::vector<JumpEvent> jump_log;

    // cached physical samples of u (kept in sync by the stepper)
    std::optional<RealVectorField> phys_cache;
};

// Initial data preparation: sharp truncation then Leray projection, Nyquist
// rows cleared; running functionals primed with the prepared state.
SolverState make_state(const StepperConfig& cfg, const RealVectorField& u0, RngStreams rng);

// One exponential Euler-Maruyama step; `jumps` are the arrivals in
// (t, t + dt], sampled by the caller (run()) or scripted by a test.
void step(SolverState& state, const StepperConfig& cfg, const std::vector<JumpEvent>& jumps);

// First discrete crossing of  running_max_lp + running_int_3p >= M K^p;
// records the time into state.stopped_at (immutable once set).
std::optional<double> check_stopping(SolverState& state, double level_M, double data_scale_K,
                                     double p);

struct RunResult {
    std::vector<EnergyRecord> records;
    TrajectorySummary summary;
    SolverState state;
    std::optional<double> fault_at;  // set when integration hit a non-finite state
};

// Integrate to the horizon or the discrete stopping time, emitting one
// EnergyRecord every record_stride steps (plus t = 0 and the final state).
// Noise models inside cfg must be prepared for the grid of u0.  `on_step`,
// when set, observes the state after initialization and after every step
// (snapshot sinks hook in here).
using StateObserver = std::function<void(const SolverState&)>;
RunResult run(const StepperConfig& cfg, const RealVectorField& u0, RngStreams rng,
              const StateObserver& on_step = {});

// Prepare both noise models for a grid (idempotent helper).
void prepare_models(StepperConfig& cfg, const GridSpec& grid);

// ---------------------------------------------------------------------------
// Linear stochastic heat system: d u = (nu Lap u + div f + h) dt
//                                       + additive Wiener + compensated jumps.
// Additive noise reuses the finite-rank models evaluated at u = 0 (only the
// offset fields survive).  Exponents are validated against
//   q_f in [3p/(p+1), p],  q_h in [3p/(2p+1), p]   (d = 3)
// before any integration happens.
// ---------------------------------------------------------------------------

struct HeatForcing {
    std::vector<SpectralScalarField> f;  // divergence-form tensor, 9 entries (j*3+i) or empty
    std::optional<SpectralVectorField> h;
    double q_f = 3.0;
    double q_h = 2.0;
};

void validate_heat_exponents(double q_f, double q_h, double p);

RunResult heat_solve(const StepperConfig& cfg, const HeatForcing& forcing,
                     const RealVectorField& u0, RngStreams rng);

// ---------------------------------------------------------------------------
// Inner-iteration contraction harness: freezes the outer state at the pure
// heat flow v, then repeatedly solves the linear system whose forcing and
// noise amplitudes carry the scalar prefactor phi(||U_prev||_p) phi(||v||_p),
// re-using the identical noise path for every sweep.  delta[m] is the
// ensemble mean of sup_t ||U^(m+1) - U^(m)||_p^p.
// ---------------------------------------------------------------------------

struct PicardConfig {
    StepperConfig base;
    double window = 0.5;  // t*
    int m_max = 5;
    int ensemble = 32;
    uint64_t base_seed = 1;
};

struct PicardResult {
    double window = 0.0;
    std::vector<double> delta;   // delta[m], m = 0..m_max
    std::vector<double> ratios;  // delta[m+1]/delta[m]
};

PicardResult picard_harness(const PicardConfig& cfg, const RealVectorField& u0);

// ---------------------------------------------------------------------------
// Truncation-level Cauchy study: integrates the same data and noise path at
// each smoothing level and reports pairwise stopped trajectory differences
//   sup_t ||u_a - u_b||_p^p + int ||u_a - u_b||_{3p}^p dt.
// ---------------------------------------------------------------------------

struct CauchyResult {
    std::vector<double> levels;
    std::vector<std::vector<double>> table;  // table[a][b]
};

CauchyResult cauchy_study(const StepperConfig& cfg, const RealVectorField& u0,
                          const std::vector<double>& levels, uint64_t seed);

// Random band-limited divergence-free field scaled to ||u||_p = lp_target.
RealVectorField make_random_divfree(const GridSpec& grid, RngStream& rng, int mode_band,
                                    double lp_target, double p);

}  // namespace stns

#endif
