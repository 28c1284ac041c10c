#ifndef STNS_NORMS_HPP
#define STNS_NORMS_HPP

#include "stns/grid.hpp"

namespace stns {

// Discrete L^q norm ((L/N)^3 sum_x |f(x)|^q)^(1/q) with |.| the Euclidean
// norm over components; q = infinity gives the max norm.  q < 1 is rejected.
double lq_norm(const RealVectorField& f, double q);
double lq_norm(const RealScalarField& f, double q);

// L^q norm of a multi-component sample block laid out component-major; used
// for gradient tensors (ncomp = 9) without a dedicated tensor type.
double lq_norm_block(const GridSpec& grid, const double* data, int ncomp, double q);

// Bessel-potential Sobolev norm ||J^s f||_2 evaluated by Plancherel with the
// multiplier (1 + 4 pi^2 |xi|^2)^(s/2); s = 0 reduces to the L^2 norm.
double sobolev_norm(const RealVectorField& f, double s);
double sobolev_norm(const SpectralVectorField& F, double s);
double sobolev_norm(const SpectralScalarField& F, double s);

// Discrete L^2 inner products, (L/N)^3 sum f.g and its spectral twin.
double l2_inner(const RealVectorField& f, const RealVectorField& g);
double l2_inner(const RealScalarField& f, const RealScalarField& g);
double l2_inner(const SpectralVectorField& F, const SpectralVectorField& G);
double l2_inner(const SpectralScalarField& F, const SpectralScalarField& G);

// L^3 sum_k |F(k)|^2 (the spectral side of Plancherel).
double spectral_l2_sq(const SpectralVectorField& F);
double spectral_l2_sq(const SpectralScalarField& F);

}  // namespace stns

#endif
