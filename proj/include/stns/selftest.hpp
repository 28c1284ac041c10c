#ifndef STNS_SELFTEST_HPP
#define STNS_SELFTEST_HPP

#include "stns/grid.hpp"
#include "stns/physics.hpp"

#include <string>
#include <vector>

namespace stns::selftest {

struct Check {
    std::string name;
    bool pass = false;
    std::string detail;
};

// Projector algebra: Leray idempotence and divergence kill, sharp-projection
// idempotence, commutation with the smoothing and sharp projections.
std::vector<Check> operator_exactness(const GridSpec& grid, int fields, uint64_t seed);

// L^q non-expansiveness of the smoothing projector with constant 1.
std::vector<Check> projector_contraction(const GridSpec& grid, int fields, uint64_t seed);

// Convergence to the identity on the fixed wide spectral bump.
std::vector<Check> projector_convergence(const GridSpec& grid);

// Rate estimate with the Gaussian-kernel constant, incl. the quadrature
// confirmation of the constant itself.
std::vector<Check> projector_cauchy_rate(const GridSpec& grid, int fields, uint64_t seed);

// Convective-term structure: skew-symmetry on dealiased data and the
// brute-force convolution oracle on a 4^3 grid.
std::vector<Check> convective_structure(uint64_t seed);

// Taming profile: zero plateau, affine tail, slope window, cancellation bound.
std::vector<Check> taming_profile();

// Everything above with the default desk-scale grid.
std::vector<Check> run_all(uint64_t seed);

}  // namespace stns::selftest

#endif
