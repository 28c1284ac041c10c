#include "stns/fft.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace stns {
namespace {

// One forward/backward plan pair per grid size.  Plans are created with
// FFTW_ESTIMATE | FFTW_UNALIGNED so they can be executed on arbitrary caller
// buffers via the new-array interface; creation is serialized (FFTW planning
// is not thread safe), execution is concurrent.
class PlanCache {
  public:
    static PlanCache& instance() {
        static PlanCache cache;
        return cache;
    }

    struct Plans {
        fftw_plan fwd = nullptr;
        fftw_plan bwd = nullptr;
    };

    Plans get(int n) {
        std::lock_guard<std::mutex> lock(mutex_);
        auto it = plans_.find(n);
        if (it != plans_.end()) return it->second;
        std::vector<Complex> buf(static_cast<std::size_t>(n) * n * n);
        auto* p = reinterpret_cast<fftw_complex*>(buf.data());
        Plans pl;
        unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
        pl.fwd = fftw_plan_dft_3d(n, n, n, p, p, FFTW_FORWARD, flags);
        pl.bwd = fftw_plan_dft_3d(n, n, n, p, p, FFTW_BACKWARD, flags);
        if (!pl.fwd || !pl.bwd) throw std::runtime_error("fft: plan creation failed");
        plans_[n] = pl;
        return pl;
    }

  private:
    std::mutex mutex_;
    std::map<int, Plans> plans_;
};

void forward_component(const GridSpec& g, const double* in, Complex* out) {
    const std::size_t m = g.n3();
    for (std::size_t i = 0; i < m; ++i) out[i] = Complex(in[i], 0.0);
    auto plans = PlanCache::instance().get(g.n());
    auto* p = reinterpret_cast<fftw_complex*>(out);
    fftw_execute_dft(plans.fwd, p, p);
    const double inv = 1.0 / static_cast<double>(m);
    for (std::size_t i = 0; i < m; ++i) out[i] *= inv;
}

void backward_component(const GridSpec& g, const Complex* in, double* out,
                        std::vector<Complex>& scratch) {
    const std::size_t m = g.n3();
    scratch.assign(in, in + m);
    auto plans = PlanCache::instance().get(g.n());
    auto* p = reinterpret_cast<fftw_complex*>(scratch.data());
    fftw_execute_dft(plans.bwd, p, p);
    for (std::size_t i = 0; i < m; ++i) out[i] = scratch[i].real();
}

template <class Field>
double hermitian_violation_impl(const Field& F, int ncomp) {
    const GridSpec& g = F.grid;
    const int N = g.n();
    double peak = 0.0;
    for (std::size_t i = 0; i < F.c.size(); ++i) peak = std::max(peak, std::abs(F.c[i]));
    if (peak == 0.0) return 0.0;
    const std::size_t stride = g.n3();
    double worst = 0.0;
    for (int c = 0; c < ncomp; ++c) {
        const Complex* a = F.c.data() + c * stride;
        for (int iz = 0; iz < N; ++iz) {
            int jz = (N - iz) % N;
            for (int iy = 0; iy < N; ++iy) {
                int jy = (N - iy) % N;
                for (int ix = 0; ix < N; ++ix) {
                    int jx = (N - ix) % N;
                    // Nyquist rows have no distinct partner under k -> -k;
                    // they must be real for a real field but we exclude them
                    // from the pairing check (the artifact zeroes them).
                    if (g.is_nyquist(ix) || g.is_nyquist(iy) || g.is_nyquist(iz)) continue;
                    Complex z = a[(static_cast<std::size_t>(iz) * N + iy) * N + ix];
                    Complex w = a[(static_cast<std::size_t>(jz) * N + jy) * N + jx];
                    worst = std::max(worst, std::abs(z - std::conj(w)));
                }
            }
        }
    }
    return worst / peak;
}

template <class Field>
void symmetrize_impl(Field& F, int ncomp) {
    const GridSpec& g = F.grid;
    const int N = g.n();
    const std::size_t stride = g.n3();
    for (int c = 0; c < ncomp; ++c) {
        Complex* a = F.c.data() + c * stride;
        for (int iz = 0; iz < N; ++iz) {
            int jz = (N - iz) % N;
            for (int iy = 0; iy < N; ++iy) {
                int jy = (N - iy) % N;
                for (int ix = 0; ix < N; ++ix) {
                    int jx = (N - ix) % N;
                    std::size_t idx = (static_cast<std::size_t>(iz) * N + iy) * N + ix;
                    std::size_t jdx = (static_cast<std::size_t>(jz) * N + jy) * N + jx;
                    if (g.is_nyquist(ix) || g.is_nyquist(iy) || g.is_nyquist(iz)) {
                        a[idx] = 0.0;
                        continue;
                    }
                    if (jdx < idx) continue;
                    Complex mean = 0.5 * (a[idx] + std::conj(a[jdx]));
                    a[idx] = mean;
                    a[jdx] = std::conj(mean);
                }
            }
        }
    }
}

}  // namespace

SpectralScalarField fft_forward(const RealScalarField& f) {
    SpectralScalarField out(f.grid);
    forward_component(f.grid, f.v.data(), out.c.data());
    return out;
}

SpectralVectorField fft_forward(const RealVectorField& f) {
    SpectralVectorField out(f.grid);
    for (int c = 0; c < 3; ++c)
        forward_component(f.grid, f.comp(c), out.comp(c));
    return out;
}

RealScalarField fft_inverse(const SpectralScalarField& F, double symmetry_tol) {
    if (symmetry_tol >= 0.0) {
        double viol = hermitian_violation(F);
        if (viol > symmetry_tol)
            throw std::runtime_error("fft_inverse: Hermitian symmetry violated (rel " +
                                     std::to_string(viol) + ")");
    }
    RealScalarField out(F.grid);
    std::vector<Complex> scratch;
    backward_component(F.grid, F.c.data(), out.v.data(), scratch);
    return out;
}

RealVectorField fft_inverse(const SpectralVectorField& F, double symmetry_tol) {
    if (symmetry_tol >= 0.0) {
        double viol = hermitian_violation(F);
        if (viol > symmetry_tol)
            throw std::runtime_error("fft_inverse: Hermitian symmetry violated (rel " +
                                     std::to_string(viol) + ")");
    }
    RealVectorField out(F.grid);
    std::vector<Complex> scratch;
    for (int c = 0; c < 3; ++c)
        backward_component(F.grid, F.comp(c), out.comp(c), scratch);
    return out;
}

double hermitian_violation(const SpectralScalarField& F) { return hermitian_violation_impl(F, 1); }
double hermitian_violation(const SpectralVectorField& F) { return hermitian_violation_impl(F, 3); }

void hermitian_symmetrize(SpectralScalarField& F) { symmetrize_impl(F, 1); }
void hermitian_symmetrize(SpectralVectorField& F) { symmetrize_impl(F, 3); }

}  // namespace stns
