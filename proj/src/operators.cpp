#include "stns/operators.hpp"

#include "stns/fft.hpp"
#include "stns/norms.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>

namespace stns {
namespace {

// Apply a scalar multiplier m(xi) to every component.
template <class Field>
void apply_scalar_multiplier(Field& F, int ncomp,
                             const std::function<double(double, double, double)>& mult) {
    const GridSpec& g = F.grid;
    const int N = g.n();
    const std::size_t stride = g.n3();
    for (int iz = 0; iz < N; ++iz) {
        double xz = g.freq(iz);
        for (int iy = 0; iy < N; ++iy) {
            double xy = g.freq(iy);
            for (int ix = 0; ix < N; ++ix) {
                double xx = g.freq(ix);
                double m = mult(xx, xy, xz);
                std::size_t idx = (static_cast<std::size_t>(iz) * N + iy) * N + ix;
                for (int c = 0; c < ncomp; ++c) F.c[c * stride + idx] *= m;
            }
        }
    }
}

void require_positive_level(double n, const char* who) {
    if (!(n > 0.0)) throw std::invalid_argument(std::string(who) + ": level n must be positive");
}

}  // namespace

void leray_project_inplace(SpectralVectorField& F) {
    const GridSpec& g = F.grid;
    const int N = g.n();
    const std::size_t stride = g.n3();
    Complex* u0 = F.comp(0);
    Complex* u1 = F.comp(1);
    Complex* u2 = F.comp(2);
    for (int iz = 0; iz < N; ++iz) {
        double xz = g.freq(iz);
        for (int iy = 0; iy < N; ++iy) {
            double xy = g.freq(iy);
            for (int ix = 0; ix < N; ++ix) {
                double xx = g.freq(ix);
                double xi2 = xx * xx + xy * xy + xz * xz;
                if (xi2 == 0.0) continue;  // mean mode: identity
                std::size_t idx = (static_cast<std::size_t>(iz) * N + iy) * N + ix;
                Complex dot = xx * u0[idx] + xy * u1[idx] + xz * u2[idx];
                Complex s = dot / xi2;
                u0[idx] -= xx * s;
                u1[idx] -= xy * s;
                u2[idx] -= xz * s;
            }
        }
    }
    (void)stride;
}

SpectralVectorField leray_project(const SpectralVectorField& F) {
    SpectralVectorField out = F;
    leray_project_inplace(out);
    return out;
}

void smooth_project_inplace(SpectralVectorField& F, double n) {
    require_positive_level(n, "smooth_project");
    const double inv_n2 = 1.0 / (n * n);
    apply_scalar_multiplier(F, 3, [inv_n2](double x, double y, double z) {
        return std::exp(-(x * x + y * y + z * z) * inv_n2);
    });
}

SpectralVectorField smooth_project(const SpectralVectorField& F, double n) {
    SpectralVectorField out = F;
    smooth_project_inplace(out, n);
    return out;
}

SpectralScalarField smooth_project(const SpectralScalarField& F, double n) {
    require_positive_level(n, "smooth_project");
    SpectralScalarField out = F;
    const double inv_n2 = 1.0 / (n * n);
    apply_scalar_multiplier(out, 1, [inv_n2](double x, double y, double z) {
        return std::exp(-(x * x + y * y + z * z) * inv_n2);
    });
    return out;
}

void sharp_project_inplace(SpectralVectorField& F, double n) {
    require_positive_level(n, "sharp_project");
    apply_scalar_multiplier(F, 3, [n](double x, double y, double z) {
        return (std::abs(x) <= n && std::abs(y) <= n && std::abs(z) <= n) ? 1.0 : 0.0;
    });
}

SpectralVectorField sharp_project(const SpectralVectorField& F, double n) {
    SpectralVectorField out = F;
    sharp_project_inplace(out, n);
    return out;
}

SpectralScalarField sharp_project(const SpectralScalarField& F, double n) {
    require_positive_level(n, "sharp_project");
    SpectralScalarField out = F;
    apply_scalar_multiplier(out, 1, [n](double x, double y, double z) {
        return (std::abs(x) <= n && std::abs(y) <= n && std::abs(z) <= n) ? 1.0 : 0.0;
    });
    return out;
}

SpectralVectorField bessel_apply(const SpectralVectorField& F, double s) {
    SpectralVectorField out = F;
    const double c = 4.0 * M_PI * M_PI;
    apply_scalar_multiplier(out, 3, [s, c](double x, double y, double z) {
        return std::pow(1.0 + c * (x * x + y * y + z * z), 0.5 * s);
    });
    return out;
}

SpectralScalarField bessel_apply(const SpectralScalarField& F, double s) {
    SpectralScalarField out = F;
    const double c = 4.0 * M_PI * M_PI;
    apply_scalar_multiplier(out, 1, [s, c](double x, double y, double z) {
        return std::pow(1.0 + c * (x * x + y * y + z * z), 0.5 * s);
    });
    return out;
}

namespace {

template <class Field>
void derivative_impl(Field& F, int ncomp, int axis) {
    if (axis < 0 || axis > 2) throw std::invalid_argument("derivative: axis must be 0, 1, or 2");
    const GridSpec& g = F.grid;
    const int N = g.n();
    const std::size_t stride = g.n3();
    const double two_pi = 2.0 * M_PI;
    for (int iz = 0; iz < N; ++iz) {
        for (int iy = 0; iy < N; ++iy) {
            for (int ix = 0; ix < N; ++ix) {
                int idxs[3] = {ix, iy, iz};
                std::size_t idx = (static_cast<std::size_t>(iz) * N + iy) * N + ix;
                if (g.is_nyquist(idxs[axis])) {
                    for (int c = 0; c < ncomp; ++c) F.c[c * stride + idx] = 0.0;
                    continue;
                }
                double xi = g.freq(idxs[axis]);
                Complex m(0.0, two_pi * xi);
                for (int c = 0; c < ncomp; ++c) F.c[c * stride + idx] *= m;
            }
        }
    }
}

}  // namespace

SpectralVectorField derivative(const SpectralVectorField& F, int axis) {
    SpectralVectorField out = F;
    derivative_impl(out, 3, axis);
    return out;
}

SpectralScalarField derivative(const SpectralScalarField& F, int axis) {
    SpectralScalarField out = F;
    derivative_impl(out, 1, axis);
    return out;
}

SpectralScalarField divergence(const SpectralVectorField& F) {
    const GridSpec& g = F.grid;
    SpectralScalarField out(g);
    const int N = g.n();
    const double two_pi = 2.0 * M_PI;
    const Complex* u0 = F.comp(0);
    const Complex* u1 = F.comp(1);
    const Complex* u2 = F.comp(2);
    for (int iz = 0; iz < N; ++iz) {
        double xz = g.is_nyquist(iz) ? 0.0 : g.freq(iz);
        for (int iy = 0; iy < N; ++iy) {
            double xy = g.is_nyquist(iy) ? 0.0 : g.freq(iy);
            for (int ix = 0; ix < N; ++ix) {
                double xx = g.is_nyquist(ix) ? 0.0 : g.freq(ix);
                std::size_t idx = (static_cast<std::size_t>(iz) * N + iy) * N + ix;
                out.c[idx] = Complex(0.0, two_pi) *
                             (xx * u0[idx] + xy * u1[idx] + xz * u2[idx]);
            }
        }
    }
    return out;
}

SpectralVectorField gradient(const SpectralScalarField& F) {
    const GridSpec& g = F.grid;
    SpectralVectorField out(g);
    const int N = g.n();
    const double two_pi = 2.0 * M_PI;
    for (int iz = 0; iz < N; ++iz) {
        double xz = g.is_nyquist(iz) ? 0.0 : g.freq(iz);
        for (int iy = 0; iy < N; ++iy) {
            double xy = g.is_nyquist(iy) ? 0.0 : g.freq(iy);
            for (int ix = 0; ix < N; ++ix) {
                double xx = g.is_nyquist(ix) ? 0.0 : g.freq(ix);
                std::size_t idx = (static_cast<std::size_t>(iz) * N + iy) * N + ix;
                Complex z = Complex(0.0, two_pi) * F.c[idx];
                out.comp(0)[idx] = xx * z;
                out.comp(1)[idx] = xy * z;
                out.comp(2)[idx] = xz * z;
            }
        }
    }
    return out;
}

namespace {

template <class Field>
Field laplacian_impl(const Field& F, int ncomp) {
    Field out = F;
    const double c = -4.0 * M_PI * M_PI;
    apply_scalar_multiplier(out, ncomp, [c](double x, double y, double z) {
        return c * (x * x + y * y + z * z);
    });
    return out;
}

}  // namespace

SpectralVectorField laplacian(const SpectralVectorField& F) { return laplacian_impl(F, 3); }
SpectralScalarField laplacian(const SpectralScalarField& F) { return laplacian_impl(F, 1); }

SpectralScalarField riesz(const SpectralScalarField& F, int axis) {
    if (axis < 0 || axis > 2) throw std::invalid_argument("riesz: axis must be 0, 1, or 2");
    const GridSpec& g = F.grid;
    SpectralScalarField out = F;
    const int N = g.n();
    for (int iz = 0; iz < N; ++iz) {
        double xs[3];
        xs[2] = g.freq(iz);
        for (int iy = 0; iy < N; ++iy) {
            xs[1] = g.freq(iy);
            for (int ix = 0; ix < N; ++ix) {
                xs[0] = g.freq(ix);
                double mag = std::sqrt(xs[0] * xs[0] + xs[1] * xs[1] + xs[2] * xs[2]);
                std::size_t idx = (static_cast<std::size_t>(iz) * N + iy) * N + ix;
                if (mag == 0.0) {
                    out.c[idx] = 0.0;
                } else {
                    out.c[idx] *= Complex(0.0, -xs[axis] / mag);
                }
            }
        }
    }
    return out;
}

double divergence_residual(const SpectralVectorField& F) {
    const GridSpec& g = F.grid;
    const int N = g.n();
    double worst = 0.0;
    double scale = 0.0;
    const Complex* u0 = F.comp(0);
    const Complex* u1 = F.comp(1);
    const Complex* u2 = F.comp(2);
    for (int iz = 0; iz < N; ++iz) {
        double xz = g.freq(iz);
        for (int iy = 0; iy < N; ++iy) {
            double xy = g.freq(iy);
            for (int ix = 0; ix < N; ++ix) {
                double xx = g.freq(ix);
                double mag = std::sqrt(xx * xx + xy * xy + xz * xz);
                std::size_t idx = (static_cast<std::size_t>(iz) * N + iy) * N + ix;
                double amp = std::sqrt(std::norm(u0[idx]) + std::norm(u1[idx]) +
                                       std::norm(u2[idx]));
                scale = std::max(scale, mag * amp);
                if (mag == 0.0) continue;
                Complex dot = xx * u0[idx] + xy * u1[idx] + xz * u2[idx];
                worst = std::max(worst, std::abs(dot));
            }
        }
    }
    if (scale == 0.0) return 0.0;
    return worst / scale;
}

CauchyRate cauchy_rate_check(const RealVectorField& F, double n, double m, double q) {
    require_positive_level(n, "cauchy_rate_check");
    require_positive_level(m, "cauchy_rate_check");
    SpectralVectorField Fh = fft_forward(F);
    SpectralVectorField diff = Fh;
    {
        SpectralVectorField pn = smooth_project(Fh, n);
        SpectralVectorField pm = smooth_project(Fh, m);
        for (std::size_t i = 0; i < diff.c.size(); ++i) diff.c[i] = pn.c[i] - pm.c[i];
    }
    CauchyRate r;
    r.lhs = lq_norm(fft_inverse(diff), q);

    // Frobenius gradient norm ||grad F||_q over the 3x3 tensor d_j F_i.
    const GridSpec& g = F.grid;
    std::vector<double> tensor(9 * g.n3());
    for (int j = 0; j < 3; ++j) {
        RealVectorField dj = fft_inverse(derivative(Fh, j));
        std::copy(dj.v.begin(), dj.v.end(), tensor.begin() + 3 * j * g.n3());
    }
    double grad_q = lq_norm_block(g, tensor.data(), 9, q);
    r.bound = KernelConstants::c_psi() * std::abs(1.0 / n - 1.0 / m) * grad_q;
    return r;
}

SpectralVectorField apply(const MultiplierOp& op, const SpectralVectorField& F) {
    switch (op.kind) {
        case MultiplierKind::leray: return leray_project(F);
        case MultiplierKind::smooth_project: return smooth_project(F, op.level);
        case MultiplierKind::sharp_project: return sharp_project(F, op.level);
        case MultiplierKind::bessel: return bessel_apply(F, op.level);
        case MultiplierKind::derivative: return derivative(F, op.axis);
        case MultiplierKind::laplacian: return laplacian(F);
        case MultiplierKind::riesz: {
            // componentwise Riesz transform of a vector field
            SpectralVectorField out = F;
            for (int c = 0; c < 3; ++c) {
                SpectralScalarField comp(F.grid);
                std::copy(F.comp(c), F.comp(c) + F.comp_stride(), comp.c.begin());
                SpectralScalarField r = riesz(comp, op.axis);
                std::copy(r.c.begin(), r.c.end(), out.comp(c));
            }
            return out;
        }
    }
    throw std::logic_error("apply: unknown multiplier kind");
}

}  // namespace stns
