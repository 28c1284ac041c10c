#ifndef STNS_FFT_HPP
#define STNS_FFT_HPP

#include "stns/grid.hpp"

namespace stns {

// Transforms follow the e^{-2 pi i xi.x} forward kernel with the quadrature
// normalization that makes the xi = 0 coefficient equal the spatial mean:
//   u_hat(k) = N^-3 sum_j u(x_j) e^{-2 pi i k.j / N},
//   u(x_j)   =        sum_k u_hat(k) e^{+2 pi i k.j / N}.
// Under this convention spectral multiplier formulas match the continuum ones
// verbatim, and Plancherel reads ||u||_2^2 = L^3 sum_k |u_hat(k)|^2.

SpectralScalarField fft_forward(const RealScalarField& f);
SpectralVectorField fft_forward(const RealVectorField& f);

// Inverse transforms verify Hermitian symmetry of the input spectrum (a
// real-valued physical field) and throw std::runtime_error when the relative
// violation exceeds `symmetry_tol`; pass a negative tolerance to skip.
RealScalarField fft_inverse(const SpectralScalarField& F, double symmetry_tol = 1e-10);
RealVectorField fft_inverse(const SpectralVectorField& F, double symmetry_tol = 1e-10);

// Largest relative deviation from u_hat(-k) == conj(u_hat(k)) over paired
// modes, measured against the largest coefficient magnitude.
double hermitian_violation(const SpectralScalarField& F);
double hermitian_violation(const SpectralVectorField& F);

// Force exact Hermitian symmetry by averaging paired modes (used after
// direct spectral constructions in tests and initial data synthesis).
void hermitian_symmetrize(SpectralVectorField& F);
void hermitian_symmetrize(SpectralScalarField& F);

}  // namespace stns

#endif
