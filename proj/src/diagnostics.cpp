#include "stns/diagnostics.hpp"

#include "stns/fft.hpp"
#include "stns/norms.hpp"
#include "stns/operators.hpp"

#include <cmath>
#include <stdexcept>

namespace stns {

EnergyRecord compute_energy(const RealVectorField& u, const SpectralVectorField& u_hat,
                            const DriftConfig& cfg, std::uint64_t jump_count_cum,
                            bool with_pressure) {
    const GridSpec& g = u.grid;
    const double p = cfg.lp_exponent;
    EnergyRecord r;
    r.jump_count_cum = jump_count_cum;

    double lp = lq_norm(u, p);
    r.lp_p = std::pow(lp, p);
    double l2 = lq_norm(u, 2.0);
    r.l2_sq = l2 * l2;
    double l3p = lq_norm(u, 3.0 * p);
    r.l3p_p = std::pow(l3p, p);
    double l6 = lq_norm(u, 6.0);
    r.l6_sq = l6 * l6;
    r.cutoff_value = cfg.cutoff.value(lp);
    r.div_residual = divergence_residual(u_hat);

    // ||grad u||_2^2 and ||Lap u||_2^2 via Plancherel multipliers.
    {
        const int N = g.n();
        const std::size_t stride = g.n3();
        double grad_acc = 0.0, lap_acc = 0.0;
        const double c4 = 4.0 * M_PI * M_PI;
        for (int iz = 0; iz < N; ++iz) {
            double xz = g.freq(iz);
            for (int iy = 0; iy < N; ++iy) {
                double xy = g.freq(iy);
                for (int ix = 0; ix < N; ++ix) {
                    double xx = g.freq(ix);
                    double xi2 = xx * xx + xy * xy + xz * xz;
                    std::size_t idx = (static_cast<std::size_t>(iz) * N + iy) * N + ix;
                    double mag2 = std::norm(u_hat.c[idx]) +
                                  std::norm(u_hat.c[stride + idx]) +
                                  std::norm(u_hat.c[2 * stride + idx]);
                    grad_acc += c4 * xi2 * mag2;
                    lap_acc += c4 * c4 * xi2 * xi2 * mag2;
                }
            }
        }
        r.grad_l2_sq = g.volume() * grad_acc;
        r.lap_l2_sq = g.volume() * lap_acc;
    }

    // ||grad(|u|^{p/2})||_2^2: pointwise power, then spectral gradient.
    {
        RealScalarField pw(g);
        const std::size_t m = g.n3();
        for (std::size_t i = 0; i < m; ++i) {
            double mag2 = u.comp(0)[i] * u.comp(0)[i] + u.comp(1)[i] * u.comp(1)[i] +
                          u.comp(2)[i] * u.comp(2)[i];
            pw.v[i] = std::pow(mag2, 0.25 * p);
        }
        SpectralVectorField gp = gradient(fft_forward(pw));
        r.grad_pow = spectral_l2_sq(gp);
    }

    // taming dissipation int g_N(|u|^2) |u|^p dx
    {
        const std::size_t m = g.n3();
        double acc = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            double mag2 = u.comp(0)[i] * u.comp(0)[i] + u.comp(1)[i] * u.comp(1)[i] +
                          u.comp(2)[i] * u.comp(2)[i];
            double gv = cfg.taming.value(mag2);
            if (gv != 0.0) acc += gv * std::pow(mag2, 0.5 * p);
        }
        r.taming_dissipation = acc * g.cell_volume();
    }

    if (with_pressure) {
        PressurePair pp = pressure_decompose(u, cfg.taming);
        RealScalarField pi(g);
        for (std::size_t i = 0; i < pi.v.size(); ++i) pi.v[i] = pp.conv.v[i] + pp.tame.v[i];
        r.pressure_l3 = lq_norm(pi, 3.0);
    }
    return r;
}

TrajectorySummary aggregate(const std::vector<EnergyRecord>& series) {
    if (series.empty()) throw std::invalid_argument("aggregate: empty record series");
    TrajectorySummary s;
    s.sup_lp_p = series.front().lp_p;
    s.sup_grad_l2 = series.front().grad_l2_sq;
    for (std::size_t i = 0; i < series.size(); ++i) {
        if (i > 0 && !(series[i].t > series[i - 1].t))
            throw std::invalid_argument("aggregate: record times must increase");
        s.sup_lp_p = std::max(s.sup_lp_p, series[i].lp_p);
        s.sup_grad_l2 = std::max(s.sup_grad_l2, series[i].grad_l2_sq);
        if (i > 0) {
            double h = series[i].t - series[i - 1].t;
            s.int_grad_pow += 0.5 * h * (series[i].grad_pow + series[i - 1].grad_pow);
            s.int_lap_l2 += 0.5 * h * (series[i].lap_l2_sq + series[i - 1].lap_l2_sq);
        }
    }
    s.final_t = series.back().t;
    s.energy_ratio = s.sup_lp_p / (1.0 + series.front().lp_p);
    return s;
}

namespace {

template <class Get>
void mean_se(const std::vector<TrajectorySummary>& xs, const Get& get, double& mean,
             double& se) {
    const std::size_t n = xs.size();
    double m = 0.0;
    for (const auto& x : xs) m += get(x);
    m /= static_cast<double>(n);
    double var = 0.0;
    for (const auto& x : xs) {
        double d = get(x) - m;
        var += d * d;
    }
    var /= static_cast<double>(n > 1 ? n - 1 : 1);
    mean = m;
    se = std::sqrt(var / static_cast<double>(n));
}

}  // namespace

EnsembleStats mc_estimate(const std::vector<TrajectorySummary>& ensemble) {
    if (ensemble.size() < 1)
        throw std::invalid_argument("mc_estimate: ensemble must be nonempty");
    EnsembleStats st;
    st.paths = static_cast<int>(ensemble.size());
    mean_se(ensemble, [](const TrajectorySummary& s) { return s.sup_lp_p; },
            st.mean.sup_lp_p, st.se.sup_lp_p);
    mean_se(ensemble, [](const TrajectorySummary& s) { return s.int_grad_pow; },
            st.mean.int_grad_pow, st.se.int_grad_pow);
    mean_se(ensemble, [](const TrajectorySummary& s) { return s.sup_grad_l2; },
            st.mean.sup_grad_l2, st.se.sup_grad_l2);
    mean_se(ensemble, [](const TrajectorySummary& s) { return s.int_lap_l2; },
            st.mean.int_lap_l2, st.se.int_lap_l2);
    mean_se(ensemble, [](const TrajectorySummary& s) { return s.final_t; },
            st.mean.final_t, st.se.final_t);
    mean_se(ensemble, [](const TrajectorySummary& s) { return s.energy_ratio; },
            st.mean.energy_ratio, st.se.energy_ratio);
    return st;
}

}  // namespace stns
