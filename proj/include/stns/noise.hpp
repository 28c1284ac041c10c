#ifndef STNS_NOISE_HPP
#define STNS_NOISE_HPP

#include "stns/grid.hpp"

#include <array>
#include <cstdint>
#include <random>
#include <vector>

namespace stns {

/// Bounded C^1 velocity cutoff Theta_alpha(v) = |v|^alpha v / (1 + |v|^(1+alpha)),
/// Theta_alpha(0) = 0; alpha in [0, 2/3).
struct ThetaMap {
    double alpha = 0.5;

    std::array<double, 3> operator()(const std::array<double, 3>& v) const;
};

// ---------------------------------------------------------------------------
// RNG streams.  One RngStreams instance per simulated path; substreams for
// {wiener, jump_times, jump_marks, init} are derived from (base_seed,
// replicate) by a splitmix64 chain so distinct replicates and roles never
// share state.  Sampling algorithms are fixed (inverse CDF, Box-Muller) so a
// given (base_seed, replicate) reproduces the identical path bit-exactly.
// ---------------------------------------------------------------------------

uint64_t splitmix64(uint64_t x);

class RngStream {
  public:
    RngStream() : gen_(0) {}
    explicit RngStream(uint64_t seed) : gen_(seed) {}

    double uniform();                 // U(0,1), canonical 53-bit
    double normal();                  // N(0,1), Box-Muller
    double exponential(double rate);  // inverse CDF
    uint64_t raw() { return gen_(); }

  private:
    std::mt19937_64 gen_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

struct RngStreams {
    uint64_t base_seed = 0;
    uint32_t replicate = 0;
    RngStream wiener;
    RngStream jump_times;
    RngStream jump_marks;
    RngStream init;

    static RngStreams make(uint64_t base_seed, uint32_t replicate);
};

// ---------------------------------------------------------------------------
// Finite-rank Wiener coefficient: component maps
//   S_i(u) = P[ kappa_i * (a_i Theta_{1/2}(u) + b_i) ],
// with kappa_i a mass-one Gaussian convolution kernel (spectral multiplier
// e^{-s^2 |xi|^2}), a_i a scalar Gaussian envelope, and b_i a constant
// direction carried by its own Gaussian envelope.  The full coefficient acts
// as sigma(u) dW = sum_i dW_i beta_i S_i(u).
// ---------------------------------------------------------------------------

struct WienerComponent {
    double amplitude = 0.05;     // beta_i
    double kernel_width = 1.0;   // s in e^{-s^2 |xi|^2}
    double env_amp = 1.0;        // a_i amplitude
    double env_width = 1.0;      // a_i Gaussian width (units of x)
    std::array<double, 3> env_center = {0.0, 0.0, 0.0};  // fractions of L
    double b_amp = 0.1;          // b_i amplitude
    double b_width = 1.0;
    std::array<double, 3> b_center = {0.0, 0.0, 0.0};
    std::array<double, 3> b_dir = {1.0, 0.0, 0.0};
};

class WienerModel {
  public:
    int rank() const { return static_cast<int>(comps_.size()); }
    std::vector<WienerComponent>& components() { return comps_; }
    const std::vector<WienerComponent>& components() const { return comps_; }

    // Default 4-component model with staggered envelope centers/directions.
    static WienerModel standard(int rank, double amplitude);

    void prepare(const GridSpec& grid);
    bool prepared(const GridSpec& grid) const;

    // S_i(u) for one component (divergence-free spectral field).
    SpectralVectorField component_field(int i, const RealVectorField& u) const;

    // sum_i dW_i beta_i S_i(u); throws if dW size mismatches the rank.
    SpectralVectorField apply(const RealVectorField& u, const std::vector<double>& dw) const;

    double theta_alpha() const { return theta_.alpha; }

  private:
    ThetaMap theta_{0.5};
    std::vector<WienerComponent> comps_;
    GridSpec grid_{};
    std::vector<RealScalarField> env_;          // a_i sampled on the grid
    std::vector<SpectralVectorField> b_base_;   // P[kappa_i * b_i], cached
    bool ready_ = false;
};

// ---------------------------------------------------------------------------
// Jump coefficient: finite mark space {z_j} with weights mu_j > 0 and
// amplitudes c_j; G(u, z_j) = c_j S_G(u) with S_G built like S_sigma but with
// Theta_alpha.  Jumps are simulated as a marked Poisson process with total
// rate Lambda = sum mu_j and mark law mu_j / Lambda.
// ---------------------------------------------------------------------------

struct JumpMark {
    double weight;     // mu_j > 0
    double amplitude;  // c_j
};

struct JumpEvent {
    double time;
    int mark;
};

class JumpModel {
  public:
    std::vector<JumpMark>& marks() { return marks_; }
    const std::vector<JumpMark>& marks() const { return marks_; }
    double& alpha() { return theta_.alpha; }
    double alpha() const { return theta_.alpha; }
    WienerComponent& kernel() { return kernel_; }

    static JumpModel standard(double alpha, double amplitude_scale);

    void prepare(const GridSpec& grid);
    bool prepared(const GridSpec& grid) const;

    double total_rate() const;         // Lambda
    double compensator_coeff() const;  // sum_j mu_j c_j

    SpectralVectorField coefficient_field(const RealVectorField& u) const;  // S_G(u)

    // Ordered jump times in (t0, t1] with marks.
    std::vector<JumpEvent> sample_jumps(double t0, double t1, RngStream& times,
                                        RngStream& marks) const;

    // Compensated increment over one step of width dt with the coefficient
    // frozen at the pre-step (left-limit) state:
    //   [ sum_{jumps} c_mark - dt sum_j mu_j c_j ] S_G(u_pre).
    SpectralVectorField increment(const RealVectorField& u_pre,
                                  const std::vector<JumpEvent>& jumps, double dt) const;

  private:
    ThetaMap theta_{0.5};
    std::vector<JumpMark> marks_;
    WienerComponent kernel_;  // reuses the S-map parameter bundle (amplitude unused)
    GridSpec grid_{};
    RealScalarField env_;
    SpectralVectorField b_base_;
    bool ready_ = false;
};

}  // namespace stns

#endif
