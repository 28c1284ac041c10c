#include "stns/solver.hpp"

#include "stns/fft.hpp"
#include "stns/norms.hpp"
#include "stns/operators.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <thread>

namespace stns {
namespace {

// e^{-nu 4 pi^2 |xi|^2 dt} applied modewise to all three components.
void apply_heat_decay(SpectralVectorField& F, double nu, double dt) {
    const GridSpec& g = F.grid;
    const int N = g.n();
    const std::size_t stride = g.n3();
    const double c = -nu * 4.0 * M_PI * M_PI * dt;
    for (int iz = 0; iz < N; ++iz) {
        double xz = g.freq(iz);
        for (int iy = 0; iy < N; ++iy) {
            double xy = g.freq(iy);
            for (int ix = 0; ix < N; ++ix) {
                double xx = g.freq(ix);
                double m = std::exp(c * (xx * xx + xy * xy + xz * xz));
                std::size_t idx = (static_cast<std::size_t>(iz) * N + iy) * N + ix;
                F.c[idx] *= m;
                F.c[stride + idx] *= m;
                F.c[2 * stride + idx] *= m;
            }
        }
    }
}

// phi^2 [ P_{<=k} P sigma(P_{<=k}u) dW ] assembled in spectral space.
SpectralVectorField wiener_increment(const StepperConfig& cfg, const RealVectorField& wp,
                                     const std::vector<double>& dw, double phi2) {
    SpectralVectorField sig = cfg.wiener.apply(wp, dw);
    smooth_project_inplace(sig, cfg.drift.truncation_level);
    leray_project_inplace(sig);
    zero_nyquist(sig);
    scale(sig, phi2);
    return sig;
}

double lp_of(const RealVectorField& f, double p) { return lq_norm(f, p); }

}  // namespace

void prepare_models(StepperConfig& cfg, const GridSpec& grid) {
    if (!cfg.wiener.prepared(grid)) cfg.wiener.prepare(grid);
    if (!cfg.jumps.prepared(grid)) cfg.jumps.prepare(grid);
}

SolverState make_state(const StepperConfig& cfg, const RealVectorField& u0, RngStreams rng) {
    SolverState s;
    s.rng = std::move(rng);
    s.u = fft_forward(u0);
    double sharp_level = dealias_limit(u0.grid) / u0.grid.box_length;
    sharp_project_inplace(s.u, sharp_level);
    leray_project_inplace(s.u);
    zero_nyquist(s.u);
    s.phys_cache = fft_inverse(s.u);
    double lp = lp_of(*s.phys_cache, cfg.drift.lp_exponent);
    s.running_max_lp = std::pow(lp, cfg.drift.lp_exponent);
    return s;
}

std::optional<double> check_stopping(SolverState& state, double level_M, double data_scale_K,
                                     double p) {
    if (state.stopped_at) return state.stopped_at;
    double threshold = level_M * std::pow(data_scale_K, p);
    if (state.running_max_lp + state.running_int_3p >= threshold)
        state.stopped_at = state.t;
    return state.stopped_at;
}

void step(SolverState& state, const StepperConfig& cfg, const std::vector<JumpEvent>& jumps) {
    if (state.stopped_at) throw std::logic_error("step: trajectory already stopped");
    const double dt = cfg.dt;
    const double p = cfg.drift.lp_exponent;

    RealVectorField up = state.phys_cache ? std::move(*state.phys_cache) : fft_inverse(state.u);
    state.phys_cache.reset();

    const double lp = lp_of(up, p);
    const double l3p = lq_norm(up, 3.0 * p);
    if (!std::isfinite(lp)) throw IntegrationFault(state.t);
    state.running_int_3p += dt * std::pow(l3p, p);

    const double phi = cfg.drift.cutoff.value(lp);
    const double phi2 = phi * phi;

    // Wiener increments are always drawn so the sampled path does not depend
    // on the cutoff state.
    std::vector<double> dw(cfg.wiener.rank());
    const double sqdt = std::sqrt(dt);
    for (auto& x : dw) x = sqdt * state.rng.wiener.normal();

    // deterministic nonlinear drift (cutoff already applied)
    SpectralVectorField base = state.u;
    if (phi2 > 0.0) {
        SpectralVectorField conv = convective_term(state.u, state.u, cfg.drift);
        SpectralVectorField w = smooth_project(state.u, cfg.drift.truncation_level);
        RealVectorField wp = fft_inverse(w);
        SpectralVectorField tame = fft_forward(tamed_term(wp, cfg.drift.taming));
        leray_project_inplace(tame);
        smooth_project_inplace(tame, cfg.drift.truncation_level);
        zero_nyquist(tame);
        for (std::size_t i = 0; i < base.c.size(); ++i)
            base.c[i] -= dt * phi2 * (conv.c[i] + tame.c[i]);

        if (cfg.wiener.rank() > 0) {
            SpectralVectorField sig = wiener_increment(cfg, wp, dw, phi2);
            for (std::size_t i = 0; i < base.c.size(); ++i) base.c[i] += sig.c[i];
        }

        // compensated jump increment, coefficient frozen at the pre-step state
        if (!cfg.jumps.marks().empty() && cfg.jumps.total_rate() > 0.0) {
            SpectralVectorField coeff = cfg.jumps.coefficient_field(wp);
            smooth_project_inplace(coeff, cfg.drift.truncation_level);
            leray_project_inplace(coeff);
            zero_nyquist(coeff);

            double comp_factor = -dt * cfg.jumps.compensator_coeff();
            axpy(base, phi2 * comp_factor, coeff);

            double arrival_factor = 0.0;
            for (const auto& j : jumps) arrival_factor += cfg.jumps.marks()[j.mark].amplitude;

            if (!jumps.empty()) {
                // continuous part = left limit at the lumped jump time
                SpectralVectorField left = base;
                apply_heat_decay(left, cfg.drift.nu, dt);
                state.u_pre_jump = left;
                RealVectorField left_phys = fft_inverse(left);
                double lp_pre = lp_of(left_phys, p);
                if (!std::isfinite(lp_pre)) throw IntegrationFault(state.t);
                state.running_max_lp = std::max(state.running_max_lp, std::pow(lp_pre, p));
                for (const auto& j : jumps) state.jump_log.push_back(j);
                axpy(base, phi2 * arrival_factor, coeff);
            }
        }
    } else if (!jumps.empty()) {
        // cutoff closed: jumps arrive but the coefficient is zeroed
        for (const auto& j : jumps) state.jump_log.push_back(j);
    }

    apply_heat_decay(base, cfg.drift.nu, dt);
    zero_nyquist(base);
    state.u = std::move(base);
    state.step_index += 1;
    state.t = state.step_index * dt;

    RealVectorField up_new = fft_inverse(state.u);
    double lp_new = lp_of(up_new, p);
    if (!std::isfinite(lp_new)) throw IntegrationFault(state.t);
    state.running_max_lp = std::max(state.running_max_lp, std::pow(lp_new, p));
    state.phys_cache = std::move(up_new);

    if (cfg.stopping.enabled)
        check_stopping(state, cfg.stopping.level, cfg.stopping.data_scale, p);
}

RunResult run(const StepperConfig& cfg, const RealVectorField& u0, RngStreams rng,
              const StateObserver& on_step) {
    if (!cfg.wiener.prepared(u0.grid) || !cfg.jumps.prepared(u0.grid))
        throw std::logic_error("run: noise models not prepared for this grid");
    if (!(cfg.dt > 0.0) || cfg.horizon < 0.0)
        throw std::invalid_argument("run: need dt > 0 and horizon >= 0");

    RunResult out;
    out.state = make_state(cfg, u0, std::move(rng));
    SolverState& s = out.state;

    // nonlinear CFL is advisory only: the stiff term is integrated exactly
    {
        double vmax = 0.0;
        for (double x : s.phys_cache->v) vmax = std::max(vmax, std::abs(x));
        double dx = u0.grid.dx();
        if (vmax > 0.0 && cfg.dt > dx / vmax)
            std::fprintf(stderr,
                         "warning: dt = %g exceeds the advective scale dx/max|u| = %g\n",
                         cfg.dt, dx / vmax);
    }

    auto record = [&]() {
        EnergyRecord r = compute_energy(*s.phys_cache, s.u, cfg.drift, s.jump_log.size(),
                                        cfg.records_with_pressure);
        r.t = s.t;
        out.records.push_back(r);
    };

    record();
    if (on_step) on_step(s);
    if (cfg.stopping.enabled)
        check_stopping(s, cfg.stopping.level, cfg.stopping.data_scale, cfg.drift.lp_exponent);

    const long n_steps = std::lround(cfg.horizon / cfg.dt);
    while (s.step_index < n_steps && !s.stopped_at) {
        auto jumps = cfg.jumps.sample_jumps(s.t, s.t + cfg.dt, s.rng.jump_times,
                                            s.rng.jump_marks);
        try {
            step(s, cfg, jumps);
        } catch (const IntegrationFault& f) {
            // keep the records gathered so far; the caller flushes them
            out.fault_at = f.t_last;
            break;
        }
        if (s.step_index % cfg.record_stride == 0 || s.step_index == n_steps || s.stopped_at)
            record();
        if (on_step) on_step(s);
    }

    out.summary = aggregate(out.records);
    out.summary.stopped_at = s.stopped_at;
    return out;
}

void validate_heat_exponents(double q_f, double q_h, double p) {
    const double lo_f = 3.0 * p / (p + 1.0);
    const double lo_h = 3.0 * p / (2.0 * p + 1.0);
    if (!(q_f >= lo_f && q_f <= p))
        throw std::invalid_argument("heat: q_f=" + std::to_string(q_f) +
                                    " outside [" + std::to_string(lo_f) + ", " +
                                    std::to_string(p) + "]");
    if (!(q_h >= lo_h && q_h <= p))
        throw std::invalid_argument("heat: q_h=" + std::to_string(q_h) +
                                    " outside [" + std::to_string(lo_h) + ", " +
                                    std::to_string(p) + "]");
}

RunResult heat_solve(const StepperConfig& cfg, const HeatForcing& forcing,
                     const RealVectorField& u0, RngStreams rng) {
    validate_heat_exponents(forcing.q_f, forcing.q_h, cfg.drift.lp_exponent);
    if (!forcing.f.empty() && forcing.f.size() != 9)
        throw std::invalid_argument("heat: divergence-form tensor must have 9 entries");
    if (!cfg.wiener.prepared(u0.grid) || !cfg.jumps.prepared(u0.grid))
        throw std::logic_error("heat_solve: noise models not prepared for this grid");

    const GridSpec& g = u0.grid;

    // time-constant drift forcing div f + h, assembled once
    SpectralVectorField force(g);
    bool has_force = false;
    if (!forcing.f.empty()) {
        const int N = g.n();
        const double two_pi = 2.0 * M_PI;
        for (int j = 0; j < 3; ++j)
            for (int i = 0; i < 3; ++i) {
                const SpectralScalarField& T = forcing.f[j * 3 + i];
                Complex* dst = force.comp(i);
                for (int iz = 0; iz < N; ++iz)
                    for (int iy = 0; iy < N; ++iy)
                        for (int ix = 0; ix < N; ++ix) {
                            int idxs[3] = {ix, iy, iz};
                            if (g.is_nyquist(idxs[j])) continue;
                            double xi = g.freq(idxs[j]);
                            std::size_t idx =
                                (static_cast<std::size_t>(iz) * N + iy) * N + ix;
                            dst[idx] += Complex(0.0, two_pi * xi) * T.c[idx];
                        }
            }
        has_force = true;
    }
    if (forcing.h) {
        for (std::size_t i = 0; i < force.c.size(); ++i) force.c[i] += forcing.h->c[i];
        has_force = true;
    }

    RunResult out;
    out.state = SolverState{};
    out.state.rng = std::move(rng);
    out.state.u = fft_forward(u0);
    zero_nyquist(out.state.u);
    out.state.phys_cache = fft_inverse(out.state.u);
    SolverState& s = out.state;

    auto record = [&]() {
        EnergyRecord r = compute_energy(*s.phys_cache, s.u, cfg.drift, s.jump_log.size(),
                                        cfg.records_with_pressure);
        r.t = s.t;
        out.records.push_back(r);
    };
    record();

    const double dt = cfg.dt;
    const double sqdt = std::sqrt(dt);
    const long n_steps = std::lround(cfg.horizon / dt);
    RealVectorField zero_phys(g);
    while (s.step_index < n_steps) {
        SpectralVectorField base = s.u;
        if (has_force) axpy(base, dt, force);

        if (cfg.wiener.rank() > 0) {
            std::vector<double> dw(cfg.wiener.rank());
            for (auto& x : dw) x = sqdt * s.rng.wiener.normal();
            SpectralVectorField gfield = cfg.wiener.apply(zero_phys, dw);
            for (std::size_t i = 0; i < base.c.size(); ++i) base.c[i] += gfield.c[i];
        }
        if (!cfg.jumps.marks().empty() && cfg.jumps.total_rate() > 0.0) {
            auto jumps = cfg.jumps.sample_jumps(s.t, s.t + dt, s.rng.jump_times,
                                                s.rng.jump_marks);
            SpectralVectorField inc = cfg.jumps.increment(zero_phys, jumps, dt);
            for (std::size_t i = 0; i < base.c.size(); ++i) base.c[i] += inc.c[i];
            for (const auto& j : jumps) s.jump_log.push_back(j);
        }

        apply_heat_decay(base, cfg.drift.nu, dt);
        s.u = std::move(base);
        s.step_index += 1;
        s.t = s.step_index * dt;
        s.phys_cache = fft_inverse(s.u);
        if (!std::isfinite(lq_norm(*s.phys_cache, 2.0))) throw IntegrationFault(s.t);
        if (s.step_index % cfg.record_stride == 0 || s.step_index == n_steps) record();
    }

    out.summary = aggregate(out.records);
    return out;
}

namespace {

// Per-step ingredients of the frozen-coefficient linear system: the pure heat
// flow v(t_i), its cutoff value, and the combined forcing-plus-noise field
//   G_i = dt * F_det(v(t_i)) + Wiener increment + compensated jump increment,
// every piece of which receives the same scalar prefactor in the iteration.
struct FrozenPath {
    std::vector<double> phi_v;           // phi(||v(t_i)||_p)
    std::vector<SpectralVectorField> forcing;  // G_i
    SpectralVectorField u0_hat;
};

FrozenPath build_frozen_path(const StepperConfig& cfg, const RealVectorField& u0,
                             RngStreams rng, int n_steps) {
    FrozenPath path;
    SolverState init = make_state(cfg, u0, std::move(rng));
    path.u0_hat = init.u;

    const double dt = cfg.dt;
    const double sqdt = std::sqrt(dt);
    const double p = cfg.drift.lp_exponent;
    SpectralVectorField v = init.u;

    for (int i = 0; i < n_steps; ++i) {
        RealVectorField vp = fft_inverse(v);
        path.phi_v.push_back(cfg.drift.cutoff.value(lq_norm(vp, p)));

        // deterministic forcing at v: minus convective and taming terms
        SpectralVectorField G = convective_term(v, v, cfg.drift);
        {
            SpectralVectorField w = smooth_project(v, cfg.drift.truncation_level);
            RealVectorField wp = fft_inverse(w);
            SpectralVectorField tame = fft_forward(tamed_term(wp, cfg.drift.taming));
            leray_project_inplace(tame);
            smooth_project_inplace(tame, cfg.drift.truncation_level);
            zero_nyquist(tame);
            for (std::size_t q = 0; q < G.c.size(); ++q) G.c[q] = -dt * (G.c[q] + tame.c[q]);

            if (cfg.wiener.rank() > 0) {
                std::vector<double> dw(cfg.wiener.rank());
                for (auto& x : dw) x = sqdt * init.rng.wiener.normal();
                SpectralVectorField sig = cfg.wiener.apply(wp, dw);
                smooth_project_inplace(sig, cfg.drift.truncation_level);
                leray_project_inplace(sig);
                zero_nyquist(sig);
                for (std::size_t q = 0; q < G.c.size(); ++q) G.c[q] += sig.c[q];
            }
            if (!cfg.jumps.marks().empty() && cfg.jumps.total_rate() > 0.0) {
                auto jumps = cfg.jumps.sample_jumps(i * dt, (i + 1) * dt,
                                                    init.rng.jump_times,
                                                    init.rng.jump_marks);
                SpectralVectorField inc = cfg.jumps.increment(wp, jumps, dt);
                smooth_project_inplace(inc, cfg.drift.truncation_level);
                leray_project_inplace(inc);
                zero_nyquist(inc);
                for (std::size_t q = 0; q < G.c.size(); ++q) G.c[q] += inc.c[q];
            }
        }
        path.forcing.push_back(std::move(G));

        apply_heat_decay(v, cfg.drift.nu, dt);
    }
    return path;
}

}  // namespace

PicardResult picard_harness(const PicardConfig& pcfg, const RealVectorField& u0) {
    const StepperConfig& cfg = pcfg.base;
    if (!cfg.wiener.prepared(u0.grid) || !cfg.jumps.prepared(u0.grid))
        throw std::logic_error("picard_harness: noise models not prepared");
    if (pcfg.ensemble < 1) throw std::invalid_argument("picard_harness: ensemble >= 1");

    const int n_steps = std::max(1L, std::lround(pcfg.window / cfg.dt));
    const double p = cfg.drift.lp_exponent;
    const int m_count = pcfg.m_max + 1;

    // one path's sup-differences per sweep index m
    auto run_path = [&](int e) {
        FrozenPath path = build_frozen_path(cfg, u0, RngStreams::make(pcfg.base_seed, e),
                                            n_steps);

        // phi sequences of successive iterates; U^(0) is the pure heat flow,
        // whose cutoff sequence equals phi_v.
        std::vector<double> phi_prev2;                // phi(||U^(m-1)||)
        std::vector<double> phi_prev = path.phi_v;    // phi(||U^(m)||), m = 0

        std::vector<double> deltas(m_count, 0.0);
        for (int m = 1; m <= m_count; ++m) {
            SpectralVectorField A = path.u0_hat;  // U^(m)
            SpectralVectorField B = path.u0_hat;  // U^(m-1), re-evolved
            std::vector<double> phi_curr(n_steps, 0.0);
            double sup_diff = 0.0;
            for (int i = 0; i < n_steps; ++i) {
                RealVectorField ap = fft_inverse(A);
                phi_curr[i] = cfg.drift.cutoff.value(lq_norm(ap, p));

                double pref_a = phi_prev[i] * path.phi_v[i];
                double pref_b = (m == 1) ? 0.0 : phi_prev2[i] * path.phi_v[i];
                axpy(A, pref_a, path.forcing[i]);
                axpy(B, pref_b, path.forcing[i]);
                apply_heat_decay(A, cfg.drift.nu, cfg.dt);
                apply_heat_decay(B, cfg.drift.nu, cfg.dt);

                SpectralVectorField D = A;
                for (std::size_t q = 0; q < D.c.size(); ++q) D.c[q] -= B.c[q];
                double nd = lq_norm(fft_inverse(D), p);
                sup_diff = std::max(sup_diff, std::pow(nd, p));
            }
            deltas[m - 1] = sup_diff;
            phi_prev2 = std::move(phi_prev);
            phi_prev = std::move(phi_curr);
        }
        return deltas;
    };

    std::vector<std::vector<double>> per_path(pcfg.ensemble);
    {
        std::atomic<int> next{0};
        auto worker = [&]() {
            while (true) {
                int e = next.fetch_add(1);
                if (e >= pcfg.ensemble) return;
                per_path[e] = run_path(e);
            }
        };
        unsigned n_workers = std::min<unsigned>(
            std::max(1u, std::thread::hardware_concurrency()),
            static_cast<unsigned>(pcfg.ensemble));
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < n_workers; ++w) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    PicardResult res;
    res.window = pcfg.window;
    res.delta.assign(m_count, 0.0);
    for (const auto& d : per_path)
        for (int m = 0; m < m_count; ++m) res.delta[m] += d[m] / pcfg.ensemble;

    for (int m = 0; m + 1 < m_count; ++m)
        res.ratios.push_back(res.delta[m] > 0.0 ? res.delta[m + 1] / res.delta[m] : 0.0);
    return res;
}

CauchyResult cauchy_study(const StepperConfig& cfg, const RealVectorField& u0,
                          const std::vector<double>& levels, uint64_t seed) {
    for (std::size_t i = 0; i + 1 < levels.size(); ++i)
        if (!(levels[i] <= levels[i + 1]))
            throw std::invalid_argument("cauchy_study: levels must be nondecreasing");
    for (double k : levels)
        if (!(k > 0.0)) throw std::invalid_argument("cauchy_study: levels must be positive");

    const double p = cfg.drift.lp_exponent;
    const int L = static_cast<int>(levels.size());

    struct Traj {
        std::vector<double> times;
        std::vector<SpectralVectorField> snaps;
        std::optional<double> stopped_at;
    };
    std::vector<Traj> trajs(L);

    for (int a = 0; a < L; ++a) {
        StepperConfig c = cfg;
        c.drift.truncation_level = levels[a];
        SolverState s = make_state(c, u0, RngStreams::make(seed, 0));
        trajs[a].times.push_back(0.0);
        trajs[a].snaps.push_back(s.u);
        const long n_steps = std::lround(c.horizon / c.dt);
        while (s.step_index < n_steps && !s.stopped_at) {
            auto jumps = c.jumps.sample_jumps(s.t, s.t + c.dt, s.rng.jump_times,
                                              s.rng.jump_marks);
            step(s, c, jumps);
            if (s.step_index % c.record_stride == 0 || s.step_index == n_steps ||
                s.stopped_at) {
                trajs[a].times.push_back(s.t);
                trajs[a].snaps.push_back(s.u);
            }
        }
        trajs[a].stopped_at = s.stopped_at;
    }

    CauchyResult res;
    res.levels = levels;
    res.table.assign(L, std::vector<double>(L, 0.0));
    for (int a = 0; a < L; ++a) {
        for (int b = 0; b < L; ++b) {
            if (a == b) continue;
            double t_max = std::min(trajs[a].times.back(), trajs[b].times.back());
            double sup = 0.0, integral = 0.0, prev_int = 0.0, prev_t = 0.0;
            std::size_t count = std::min(trajs[a].snaps.size(), trajs[b].snaps.size());
            for (std::size_t j = 0; j < count; ++j) {
                if (trajs[a].times[j] > t_max + 1e-12) break;
                if (trajs[a].times[j] != trajs[b].times[j]) break;
                SpectralVectorField D = trajs[a].snaps[j];
                for (std::size_t q = 0; q < D.c.size(); ++q)
                    D.c[q] -= trajs[b].snaps[j].c[q];
                RealVectorField d = fft_inverse(D);
                double np = std::pow(lq_norm(d, p), p);
                double n3p = std::pow(lq_norm(d, 3.0 * p), p);
                sup = std::max(sup, np);
                if (j > 0)
                    integral += 0.5 * (trajs[a].times[j] - prev_t) * (n3p + prev_int);
                prev_int = n3p;
                prev_t = trajs[a].times[j];
            }
            res.table[a][b] = sup + integral;
        }
    }
    return res;
}

RealVectorField make_random_divfree(const GridSpec& grid, RngStream& rng, int mode_band,
                                    double lp_target, double p) {
    SpectralVectorField F(grid);
    const int N = grid.n();
    for (int iz = 0; iz < N; ++iz) {
        int kz = grid.freq_index(iz);
        for (int iy = 0; iy < N; ++iy) {
            int ky = grid.freq_index(iy);
            for (int ix = 0; ix < N; ++ix) {
                int kx = grid.freq_index(ix);
                int mag = std::max({std::abs(kx), std::abs(ky), std::abs(kz)});
                if (mag == 0 || mag > mode_band) continue;
                double k2 = kx * kx + ky * ky + kz * kz;
                double profile = std::exp(-k2 / (2.0 * mode_band * mode_band));
                std::size_t idx = (static_cast<std::size_t>(iz) * N + iy) * N + ix;
                for (int c = 0; c < 3; ++c)
                    F.c[c * grid.n3() + idx] =
                        profile * Complex(rng.normal(), rng.normal());
            }
        }
    }
    hermitian_symmetrize(F);
    leray_project_inplace(F);
    zero_nyquist(F);
    RealVectorField u = fft_inverse(F);
    double lp = lq_norm(u, p);
    if (lp > 0.0 && lp_target > 0.0) {
        double s = lp_target / lp;
        for (auto& x : u.v) x *= s;
    }
    return u;
}

}  // namespace stns
