#include "stns/physics.hpp"

#include "stns/fft.hpp"
#include "stns/norms.hpp"
#include "stns/operators.hpp"

#include <cmath>
#include <stdexcept>

namespace stns {

double TamingFunction::value(double r) const {
    if (r < 0.0) throw std::invalid_argument("TamingFunction: r must be nonnegative");
    const double N = threshold;
    if (r <= N) return 0.0;
    if (r >= N + 1.0) return (r - N - 0.5) / viscosity;
    double t = r - N;
    return 0.5 * t * t / viscosity;
}

double TamingFunction::slope(double r) const {
    if (r < 0.0) throw std::invalid_argument("TamingFunction: r must be nonnegative");
    const double N = threshold;
    if (r <= N) return 0.0;
    if (r >= N + 1.0) return 1.0 / viscosity;
    return (r - N) / viscosity;
}

double CutoffFunction::profile(double r) {
    if (r <= 1.0) return 1.0;
    if (r >= 2.0) return 0.0;
    double t = r - 1.0;
    return 1.0 - t * t * (3.0 - 2.0 * t);
}

double CutoffFunction::profile_slope(double r) {
    if (r <= 1.0 || r >= 2.0) return 0.0;
    double t = r - 1.0;
    return -6.0 * t * (1.0 - t);
}

int dealias_limit(const GridSpec& grid) { return (grid.n() - 1) / 3; }

namespace {

template <class Field>
void mask_cube(Field& F, int ncomp, int limit) {
    const GridSpec& g = F.grid;
    const int N = g.n();
    const std::size_t stride = g.n3();
    for (int iz = 0; iz < N; ++iz) {
        int kz = std::abs(g.freq_index(iz));
        for (int iy = 0; iy < N; ++iy) {
            int ky = std::abs(g.freq_index(iy));
            for (int ix = 0; ix < N; ++ix) {
                int kx = std::abs(g.freq_index(ix));
                if (kx <= limit && ky <= limit && kz <= limit) continue;
                std::size_t idx = (static_cast<std::size_t>(iz) * N + iy) * N + ix;
                for (int c = 0; c < ncomp; ++c) F.c[c * stride + idx] = 0.0;
            }
        }
    }
}

}  // namespace

void apply_dealias(SpectralVectorField& F) { mask_cube(F, 3, dealias_limit(F.grid)); }
void apply_dealias(SpectralScalarField& F) { mask_cube(F, 1, dealias_limit(F.grid)); }

void zero_nyquist(SpectralVectorField& F) {
    const GridSpec& g = F.grid;
    const int N = g.n();
    const std::size_t stride = g.n3();
    for (int iz = 0; iz < N; ++iz)
        for (int iy = 0; iy < N; ++iy)
            for (int ix = 0; ix < N; ++ix) {
                if (!(g.is_nyquist(ix) || g.is_nyquist(iy) || g.is_nyquist(iz))) continue;
                std::size_t idx = (static_cast<std::size_t>(iz) * N + iy) * N + ix;
                for (int c = 0; c < 3; ++c) F.c[c * stride + idx] = 0.0;
            }
}

RealVectorField tamed_term(const RealVectorField& u, const TamingFunction& taming) {
    RealVectorField out(u.grid);
    const std::size_t m = u.grid.n3();
    const double* u0 = u.comp(0);
    const double* u1 = u.comp(1);
    const double* u2 = u.comp(2);
    for (std::size_t i = 0; i < m; ++i) {
        double r = u0[i] * u0[i] + u1[i] * u1[i] + u2[i] * u2[i];
        double gv = taming.value(r);
        out.comp(0)[i] = gv * u0[i];
        out.comp(1)[i] = gv * u1[i];
        out.comp(2)[i] = gv * u2[i];
    }
    return out;
}

SpectralVectorField convective_term(const SpectralVectorField& u,
                                    const SpectralVectorField& v,
                                    const DriftConfig& cfg) {
    const GridSpec& g = u.grid;
    SpectralVectorField w = smooth_project(v, cfg.truncation_level);
    RealVectorField up = fft_inverse(u);
    RealVectorField wp = fft_inverse(w);

    // (div T)_i = d_j (u_j w_i): accumulate the spectral divergence row by row.
    SpectralVectorField out(g);
    RealScalarField prod(g);
    const std::size_t m = g.n3();
    const int N = g.n();
    const double two_pi = 2.0 * M_PI;
    const int limit = cfg.dealias ? dealias_limit(g) : (N / 2 - 1);
    for (int j = 0; j < 3; ++j) {
        for (int i = 0; i < 3; ++i) {
            const double* uj = up.comp(j);
            const double* wi = wp.comp(i);
            for (std::size_t q = 0; q < m; ++q) prod.v[q] = uj[q] * wi[q];
            SpectralScalarField Tji = fft_forward(prod);
            mask_cube(Tji, 1, limit);
            Complex* dst = out.comp(i);
            for (int iz = 0; iz < N; ++iz) {
                for (int iy = 0; iy < N; ++iy) {
                    for (int ix = 0; ix < N; ++ix) {
                        int idxs[3] = {ix, iy, iz};
                        if (g.is_nyquist(idxs[j])) continue;
                        double xi = g.freq(idxs[j]);
                        std::size_t idx = (static_cast<std::size_t>(iz) * N + iy) * N + ix;
                        dst[idx] += Complex(0.0, two_pi * xi) * Tji.c[idx];
                    }
                }
            }
        }
    }
    leray_project_inplace(out);
    smooth_project_inplace(out, cfg.truncation_level);
    zero_nyquist(out);
    return out;
}

DriftParts assemble_drift(const SpectralVectorField& u, const DriftConfig& cfg) {
    const GridSpec& g = u.grid;
    DriftParts parts;
    RealVectorField up = fft_inverse(u);
    parts.lp_norm = lq_norm(up, cfg.lp_exponent);
    parts.cutoff_value = cfg.cutoff.value(parts.lp_norm);
    parts.nonstiff = SpectralVectorField(g);
    if (parts.cutoff_value == 0.0) return parts;  // nonlinearity exactly off

    const double phi2 = parts.cutoff_value * parts.cutoff_value;

    SpectralVectorField conv = convective_term(u, u, cfg);

    SpectralVectorField w = smooth_project(u, cfg.truncation_level);
    RealVectorField wp = fft_inverse(w);
    SpectralVectorField tame = fft_forward(tamed_term(wp, cfg.taming));
    leray_project_inplace(tame);
    smooth_project_inplace(tame, cfg.truncation_level);
    zero_nyquist(tame);

    for (std::size_t i = 0; i < conv.c.size(); ++i)
        parts.nonstiff.c[i] = -phi2 * (conv.c[i] + tame.c[i]);
    return parts;
}

PressurePair pressure_decompose(const RealVectorField& u, const TamingFunction& taming) {
    const GridSpec& g = u.grid;

    // F_conv = div(u (x) u) (equals (u.grad)u for divergence-free u)
    SpectralVectorField Fconv(g);
    {
        RealScalarField prod(g);
        const std::size_t m = g.n3();
        const int N = g.n();
        const double two_pi = 2.0 * M_PI;
        const int limit = dealias_limit(g);
        for (int j = 0; j < 3; ++j)
            for (int i = 0; i < 3; ++i) {
                const double* uj = u.comp(j);
                const double* ui = u.comp(i);
                for (std::size_t q = 0; q < m; ++q) prod.v[q] = uj[q] * ui[q];
                SpectralScalarField Tji = fft_forward(prod);
                mask_cube(Tji, 1, limit);
                Complex* dst = Fconv.comp(i);
                for (int iz = 0; iz < N; ++iz)
                    for (int iy = 0; iy < N; ++iy)
                        for (int ix = 0; ix < N; ++ix) {
                            int idxs[3] = {ix, iy, iz};
                            if (g.is_nyquist(idxs[j])) continue;
                            double xi = g.freq(idxs[j]);
                            std::size_t idx =
                                (static_cast<std::size_t>(iz) * N + iy) * N + ix;
                            dst[idx] += Complex(0.0, two_pi * xi) * Tji.c[idx];
                        }
            }
    }
    SpectralVectorField Ftame = fft_forward(tamed_term(u, taming));

    // grad(pi) = (I - P) F  =>  pi_hat = (xi.F_hat) / (2 pi i |xi|^2), mean 0.
    auto solve_pressure = [&g](const SpectralVectorField& F) {
        SpectralScalarField pi(g);
        const int N = g.n();
        const double two_pi = 2.0 * M_PI;
        const Complex* f0 = F.comp(0);
        const Complex* f1 = F.comp(1);
        const Complex* f2 = F.comp(2);
        for (int iz = 0; iz < N; ++iz) {
            double xz = g.freq(iz);
            for (int iy = 0; iy < N; ++iy) {
                double xy = g.freq(iy);
                for (int ix = 0; ix < N; ++ix) {
                    double xx = g.freq(ix);
                    double xi2 = xx * xx + xy * xy + xz * xz;
                    std::size_t idx = (static_cast<std::size_t>(iz) * N + iy) * N + ix;
                    if (xi2 == 0.0 || g.is_nyquist(ix) || g.is_nyquist(iy) ||
                        g.is_nyquist(iz)) {
                        pi.c[idx] = 0.0;
                        continue;
                    }
                    Complex dot = xx * f0[idx] + xy * f1[idx] + xz * f2[idx];
                    pi.c[idx] = dot / Complex(0.0, two_pi * xi2);
                }
            }
        }
        return pi;
    };

    PressurePair out;
    out.conv = fft_inverse(solve_pressure(Fconv));
    out.tame = fft_inverse(solve_pressure(Ftame));
    return out;
}

PressureMonitor pressure_l3_monitor(const RealScalarField& pi, const RealVectorField& u) {
    PressureMonitor m;
    m.l3 = lq_norm(pi, 3.0);
    double l6 = lq_norm(u, 6.0);
    m.bound = l6 * l6;
    return m;
}

}  // namespace stns
