#include "stns/norms.hpp"

#include "stns/fft.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace stns {
namespace {

double lq_from_magnitudes(const GridSpec& grid, const double* data, int ncomp, double q) {
    if (!(q >= 1.0))
        throw std::invalid_argument("lq_norm: exponent q must satisfy q >= 1");
    const std::size_t m = grid.n3();
    const bool is_inf = std::isinf(q);
    double acc = 0.0;
    double sup = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        double mag2 = 0.0;
        for (int c = 0; c < ncomp; ++c) {
            double x = data[c * m + i];
            mag2 += x * x;
        }
        if (is_inf) {
            sup = std::max(sup, mag2);
        } else if (q == 2.0) {
            acc += mag2;
        } else {
            acc += std::pow(mag2, 0.5 * q);
        }
    }
    if (is_inf) return std::sqrt(sup);
    if (q == 2.0) return std::sqrt(acc * grid.cell_volume());
    return std::pow(acc * grid.cell_volume(), 1.0 / q);
}

}  // namespace

double lq_norm(const RealVectorField& f, double q) {
    return lq_from_magnitudes(f.grid, f.v.data(), 3, q);
}

double lq_norm(const RealScalarField& f, double q) {
    return lq_from_magnitudes(f.grid, f.v.data(), 1, q);
}

double lq_norm_block(const GridSpec& grid, const double* data, int ncomp, double q) {
    return lq_from_magnitudes(grid, data, ncomp, q);
}

namespace {

template <class Field>
double sobolev_spectral(const Field& F, double s, int ncomp) {
    const GridSpec& g = F.grid;
    const int N = g.n();
    const std::size_t stride = g.n3();
    const double four_pi_sq = 4.0 * M_PI * M_PI;
    double acc = 0.0;
    for (int iz = 0; iz < N; ++iz) {
        double xz = g.freq(iz);
        for (int iy = 0; iy < N; ++iy) {
            double xy = g.freq(iy);
            for (int ix = 0; ix < N; ++ix) {
                double xx = g.freq(ix);
                double xi2 = xx * xx + xy * xy + xz * xz;
                double w = (s == 0.0) ? 1.0 : std::pow(1.0 + four_pi_sq * xi2, s);
                std::size_t idx = (static_cast<std::size_t>(iz) * N + iy) * N + ix;
                double mag2 = 0.0;
                for (int c = 0; c < ncomp; ++c) mag2 += std::norm(F.c[c * stride + idx]);
                acc += w * mag2;
            }
        }
    }
    return std::sqrt(g.volume() * acc);
}

}  // namespace

double sobolev_norm(const SpectralVectorField& F, double s) { return sobolev_spectral(F, s, 3); }
double sobolev_norm(const SpectralScalarField& F, double s) { return sobolev_spectral(F, s, 1); }

double sobolev_norm(const RealVectorField& f, double s) {
    return sobolev_norm(fft_forward(f), s);
}

double l2_inner(const RealVectorField& f, const RealVectorField& g) {
    double acc = 0.0;
    for (std::size_t i = 0; i < f.v.size(); ++i) acc += f.v[i] * g.v[i];
    return acc * f.grid.cell_volume();
}

double l2_inner(const RealScalarField& f, const RealScalarField& g) {
    double acc = 0.0;
    for (std::size_t i = 0; i < f.v.size(); ++i) acc += f.v[i] * g.v[i];
    return acc * f.grid.cell_volume();
}

double l2_inner(const SpectralVectorField& F, const SpectralVectorField& G) {
    double acc = 0.0;
    for (std::size_t i = 0; i < F.c.size(); ++i)
        acc += (F.c[i] * std::conj(G.c[i])).real();
    return acc * F.grid.volume();
}

double l2_inner(const SpectralScalarField& F, const SpectralScalarField& G) {
    double acc = 0.0;
    for (std::size_t i = 0; i < F.c.size(); ++i)
        acc += (F.c[i] * std::conj(G.c[i])).real();
    return acc * F.grid.volume();
}

double spectral_l2_sq(const SpectralVectorField& F) {
    double acc = 0.0;
    for (const auto& z : F.c) acc += std::norm(z);
    return acc * F.grid.volume();
}

double spectral_l2_sq(const SpectralScalarField& F) {
    double acc = 0.0;
    for (const auto& z : F.c) acc += std::norm(z);
    return acc * F.grid.volume();
}

}  // namespace stns
