#ifndef STNS_DIAGNOSTICS_HPP
#define STNS_DIAGNOSTICS_HPP

#include "stns/grid.hpp"
#include "stns/physics.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace stns {

/// One time-stamped row of every monitored functional.
struct EnergyRecord {
    double t = 0.0;
    double lp_p = 0.0;            // ||u||_p^p
    double grad_pow = 0.0;        // ||grad(|u|^{p/2})||_2^2
    double l2_sq = 0.0;           // ||u||_2^2
    double grad_l2_sq = 0.0;      // ||grad u||_2^2
    double lap_l2_sq = 0.0;       // ||Lap u||_2^2
    double l3p_p = 0.0;           // ||u||_{3p}^p
    double l6_sq = 0.0;           // ||u||_6^2
    double div_residual = 0.0;
    double cutoff_value = 1.0;    // phi_R(||u||_p)
    double taming_dissipation = 0.0;  // int g_N(|u|^2) |u|^p dx
    double pressure_l3 = 0.0;     // ||pi||_3
    std::uint64_t jump_count_cum = 0;
};

struct TrajectorySummary {
    double sup_lp_p = 0.0;
    double int_grad_pow = 0.0;
    double sup_grad_l2 = 0.0;  // sup ||grad u||_2^2
    double int_lap_l2 = 0.0;
    std::optional<double> stopped_at;
    double final_t = 0.0;
    double energy_ratio = 0.0;  // sup_lp_p / (1 + lp_p at t=0)
};

// All functionals evaluated on one snapshot.  The spectral representation is
// passed alongside the physical samples to avoid a redundant transform;
// `with_pressure` controls whether the (more expensive) pressure solve runs.
EnergyRecord compute_energy(const RealVectorField& u, const SpectralVectorField& u_hat,
                            const DriftConfig& cfg, std::uint64_t jump_count_cum,
                            bool with_pressure = true);

// Trapezoid aggregation of a record series with strictly increasing t.
TrajectorySummary aggregate(const std::vector<EnergyRecord>& series);

struct EnsembleStats {
    TrajectorySummary mean;
    TrajectorySummary se;
    int paths = 0;
};
EnsembleStats mc_estimate(const std::vector<TrajectorySummary>& ensemble);

}  // namespace stns

#endif
