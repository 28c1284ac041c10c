#ifndef STNS_GRID_HPP
#define STNS_GRID_HPP

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace stns {

using Complex = std::complex<double>;

/// Periodic box discretization: N_g collocation points per axis on a cube of
/// side L.  Frequencies follow the e^{-2 pi i xi.x} transform convention, so
/// the lattice is xi = k/L with integer k in [-N_g/2, N_g/2 - 1] per axis
/// (standard FFT ordering; the k = -N_g/2 row is the unpaired Nyquist row).
struct GridSpec {
    int modes_per_axis = 0;
    double box_length = 0.0;

    GridSpec() = default;
    GridSpec(int n, double box) : modes_per_axis(n), box_length(box) {
        if (n < 4 || n % 2 != 0)
            throw std::invalid_argument("GridSpec: modes_per_axis must be even and >= 4");
        if (!(box > 0.0))
            throw std::invalid_argument("GridSpec: box_length must be positive");
    }

    int n() const { return modes_per_axis; }
    std::size_t n3() const {
        auto m = static_cast<std::size_t>(modes_per_axis);
        return m * m * m;
    }
    double dx() const { return box_length / modes_per_axis; }
    double cell_volume() const { return dx() * dx() * dx(); }
    double volume() const { return box_length * box_length * box_length; }

    // storage index i in [0, N) -> signed lattice integer k
    int freq_index(int i) const { return i < modes_per_axis / 2 ? i : i - modes_per_axis; }
    // physical frequency xi = k / L
    double freq(int i) const { return freq_index(i) / box_length; }
    bool is_nyquist(int i) const { return i == modes_per_axis / 2; }

    bool operator==(const GridSpec& o) const {
        return modes_per_axis == o.modes_per_axis && box_length == o.box_length;
    }
};

// Fields are stored component-major with x fastest:
//   idx = ((c*N + iz)*N + iy)*N + ix.
// Spectral fields use the same layout with (iz, iy, ix) indexing lattice
// frequencies in FFT order.

struct RealScalarField {
    GridSpec grid;
    std::vector<double> v;

    RealScalarField() = default;
    explicit RealScalarField(const GridSpec& g) : grid(g), v(g.n3(), 0.0) {}

    double& at(int iz, int iy, int ix) {
        int N = grid.n();
        return v[(static_cast<std::size_t>(iz) * N + iy) * N + ix];
    }
    double at(int iz, int iy, int ix) const {
        int N = grid.n();
        return v[(static_cast<std::size_t>(iz) * N + iy) * N + ix];
    }
};

struct RealVectorField {
    GridSpec grid;
    std::vector<double> v;  // 3 components

    RealVectorField() = default;
    explicit RealVectorField(const GridSpec& g) : grid(g), v(3 * g.n3(), 0.0) {}

    std::size_t comp_stride() const { return grid.n3(); }
    double* comp(int c) { return v.data() + c * comp_stride(); }
    const double* comp(int c) const { return v.data() + c * comp_stride(); }

    double& at(int c, int iz, int iy, int ix) {
        int N = grid.n();
        return v[((static_cast<std::size_t>(c) * N + iz) * N + iy) * N + ix];
    }
    double at(int c, int iz, int iy, int ix) const {
        int N = grid.n();
        return v[((static_cast<std::size_t>(c) * N + iz) * N + iy) * N + ix];
    }
};

struct SpectralScalarField {
    GridSpec grid;
    std::vector<Complex> c;

    SpectralScalarField() = default;
    explicit SpectralScalarField(const GridSpec& g) : grid(g), c(g.n3(), Complex{}) {}

    Complex& at(int iz, int iy, int ix) {
        int N = grid.n();
        return c[(static_cast<std::size_t>(iz) * N + iy) * N + ix];
    }
    Complex at(int iz, int iy, int ix) const {
        int N = grid.n();
        return c[(static_cast<std::size_t>(iz) * N + iy) * N + ix];
    }
};

struct SpectralVectorField {
    GridSpec grid;
    std::vector<Complex> c;  // 3 components

    SpectralVectorField() = default;
    explicit SpectralVectorField(const GridSpec& g) : grid(g), c(3 * g.n3(), Complex{}) {}

    std::size_t comp_stride() const { return grid.n3(); }
    Complex* comp(int k) { return c.data() + k * comp_stride(); }
    const Complex* comp(int k) const { return c.data() + k * comp_stride(); }

    Complex& at(int k, int iz, int iy, int ix) {
        int N = grid.n();
        return c[((static_cast<std::size_t>(k) * N + iz) * N + iy) * N + ix];
    }
    Complex at(int k, int iz, int iy, int ix) const {
        int N = grid.n();
        return c[((static_cast<std::size_t>(k) * N + iz) * N + iy) * N + ix];
    }
};

// axpy-style helpers used throughout the stepper
inline void axpy(SpectralVectorField& y, double a, const SpectralVectorField& x) {
    for (std::size_t i = 0; i < y.c.size(); ++i) y.c[i] += a * x.c[i];
}
inline void scale(SpectralVectorField& y, double a) {
    for (auto& z : y.c) z *= a;
}

}  // namespace stns

#endif
