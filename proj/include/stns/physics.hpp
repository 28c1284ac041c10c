#ifndef STNS_PHYSICS_HPP
#define STNS_PHYSICS_HPP

#include "stns/grid.hpp"

namespace stns {

/// Taming profile g_N: zero on [0, N], quadratic blend (r-N)^2/(2 nu) on
/// [N, N+1], affine tail (r - N - 1/2)/nu beyond.  The blend joins value and
/// slope at both ends, so g_N is C^1 with 0 <= g_N' <= 2/nu and
/// r/nu - 2 g_N(r) <= (N + 1/4)/nu for all r >= 0.
struct TamingFunction {
    double threshold = 1.0;  // N >= 0
    double viscosity = 0.1;  // nu > 0

    double value(double r) const;
    double slope(double r) const;
};

/// Radial cutoff phi: 1 on [0,1], descending cubic 1 - (3t^2 - 2t^3) with
/// t = r-1 on [1,2], 0 beyond; applied as phi_R(v) = phi(||v||_p / R).
/// Global Lipschitz constant of the profile is 3/2.
struct CutoffFunction {
    double radius = 1.0;  // R >= 1

    static double profile(double r);
    static double profile_slope(double r);
    double value(double lp_norm_of_v) const { return profile(lp_norm_of_v / radius); }
};

struct DriftConfig {
    double nu = 0.1;
    TamingFunction taming;
    CutoffFunction cutoff;
    double truncation_level = 0.3;  // k in P_{<=k}
    double lp_exponent = 4.0;       // p > 3
    bool dealias = true;
};

// 2/3-rule band limit: modes with any |k_j| exceeding this integer are zeroed
// after quadratic products.  K = floor((N-1)/3) keeps retained modes of
// quadratic products alias-free and triple-product quadratures exact.
int dealias_limit(const GridSpec& grid);
void apply_dealias(SpectralVectorField& F);
void apply_dealias(SpectralScalarField& F);
void zero_nyquist(SpectralVectorField& F);

// Pointwise taming term g_N(|u|^2) u (projection applied by the caller).
RealVectorField tamed_term(const RealVectorField& u, const TamingFunction& taming);

// P_{<=k} P div(u (x) P_{<=k} v) assembled pseudo-spectrally: physical-space
// tensor product, spectral divergence, Leray row projection, Gaussian
// smoothing.  The 2/3 mask is applied to the product when cfg.dealias is set.
SpectralVectorField convective_term(const SpectralVectorField& u,
                                    const SpectralVectorField& v,
                                    const DriftConfig& cfg);

// Full deterministic drift split for the integrating-factor stepper: the
// stiff nu*Laplace part is handled exactly by the caller; `nonstiff` carries
// -phi(||u||_p)^2 [ P_{<=k} P div(u (x) P_{<=k}u) + P_{<=k} P (g_N(|P_{<=k}u|^2) P_{<=k}u) ].
struct DriftParts {
    SpectralVectorField nonstiff;
    double lp_norm = 0.0;       // ||u||_p used inside the cutoff
    double cutoff_value = 0.0;  // phi_R(||u||_p)
};
DriftParts assemble_drift(const SpectralVectorField& u, const DriftConfig& cfg);

// Homogeneous pressures of the decomposition P F = F - grad(pi):
//   pi_conv from F = (u.grad)u,  pi_tame from F = g_N(|u|^2)u,
// both with zero spatial mean.
struct PressurePair {
    RealScalarField conv;
    RealScalarField tame;
};
PressurePair pressure_decompose(const RealVectorField& u, const TamingFunction& taming);

struct PressureMonitor {
    double l3;     // ||pi||_3
    double bound;  // ||u||_6^2
};
PressureMonitor pressure_l3_monitor(const RealScalarField& pi, const RealVectorField& u);

}  // namespace stns

#endif
