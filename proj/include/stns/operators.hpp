#ifndef STNS_OPERATORS_HPP
#define STNS_OPERATORS_HPP

#include "stns/grid.hpp"

#include <cmath>

namespace stns {

// Constants of the Gaussian convolution kernel K(y) = pi^(3/2) e^(-pi^2|y|^2)
// behind the smoothing projector: ||K||_L1 = 1 exactly (positive kernel with
// mass psi(0) = 1) and C_psi = int |K(y)||y| dy = 2 pi^(-3/2).
struct KernelConstants {
    static constexpr double k_l1 = 1.0;
    static double c_psi() { return 2.0 * std::pow(M_PI, -1.5); }
};

// Helmholtz--Leray projection onto divergence-free fields: the multiplier
// u_hat -= xi (xi.u_hat)/|xi|^2 at xi != 0, identity on the mean mode.
SpectralVectorField leray_project(const SpectralVectorField& F);
void leray_project_inplace(SpectralVectorField& F);

// Smoothing projector P_{<=n}: multiplier e^{-|xi/n|^2}; n > 0 required.
SpectralVectorField smooth_project(const SpectralVectorField& F, double n);
SpectralScalarField smooth_project(const SpectralScalarField& F, double n);
void smooth_project_inplace(SpectralVectorField& F, double n);

// Sharp truncation Pi_n: indicator of the frequency cube {|xi_j| <= n}.
SpectralVectorField sharp_project(const SpectralVectorField& F, double n);
SpectralScalarField sharp_project(const SpectralScalarField& F, double n);
void sharp_project_inplace(SpectralVectorField& F, double n);

// Bessel potential J^s: multiplier (1 + 4 pi^2 |xi|^2)^(s/2).
SpectralVectorField bessel_apply(const SpectralVectorField& F, double s);
SpectralScalarField bessel_apply(const SpectralScalarField& F, double s);

// Spectral derivative along axis j in {0,1,2}: multiplier 2 pi i xi_j, with
// the unpaired Nyquist row zeroed.
SpectralVectorField derivative(const SpectralVectorField& F, int axis);
SpectralScalarField derivative(const SpectralScalarField& F, int axis);

SpectralScalarField divergence(const SpectralVectorField& F);
SpectralVectorField gradient(const SpectralScalarField& F);

SpectralVectorField laplacian(const SpectralVectorField& F);
SpectralScalarField laplacian(const SpectralScalarField& F);

// Riesz transform R_j = -d/dx_j (-Laplace)^(-1/2): multiplier -i xi_j/|xi|,
// zero at the mean mode.
SpectralScalarField riesz(const SpectralScalarField& F, int axis);

// Relative divergence residual max_k |xi.F(k)| / (|xi| |F(k)|)-scale, used as
// the health monitor for solver states.
double divergence_residual(const SpectralVectorField& F);

// Both sides of the Gaussian-kernel rate estimate
//   ||P_{<=n}F - P_{<=m}F||_q <= C_psi |1/n - 1/m| ||grad F||_q,
// with the gradient measured in the Frobenius norm over the 3x3 tensor.
struct CauchyRate {
    double lhs;
    double bound;
};
CauchyRate cauchy_rate_check(const RealVectorField& F, double n, double m, double q);

// Reified multiplier dispatch mirroring the operator family above.
enum class MultiplierKind { leray, smooth_project, sharp_project, bessel, riesz, derivative, laplacian };
struct MultiplierOp {
    MultiplierKind kind;
    double level = 0.0;  // n for projections, s for bessel
    int axis = 0;        // for riesz / derivative
};
SpectralVectorField apply(const MultiplierOp& op, const SpectralVectorField& F);

}  // namespace stns

#endif
