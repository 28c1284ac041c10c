#include "stns/noise.hpp"

#include "stns/fft.hpp"
#include "stns/operators.hpp"
#include "stns/physics.hpp"

#include <cmath>
#include <stdexcept>

namespace stns {

std::array<double, 3> ThetaMap::operator()(const std::array<double, 3>& v) const {
    double mag = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
    if (mag == 0.0) return {0.0, 0.0, 0.0};
    double f = std::pow(mag, alpha) / (1.0 + std::pow(mag, 1.0 + alpha));
    return {f * v[0], f * v[1], f * v[2]};
}

uint64_t splitmix64(uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

double RngStream::uniform() {
    // canonical 53-bit double in [0, 1)
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
}

double RngStream::normal() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    double u1 = uniform();
    double u2 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 2.0 * M_PI * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
}

double RngStream::exponential(double rate) {
    if (!(rate > 0.0)) throw std::invalid_argument("exponential: rate must be positive");
    double u = uniform();
    while (u <= 0.0) u = uniform();
    return -std::log(u) / rate;
}

RngStreams RngStreams::make(uint64_t base_seed, uint32_t replicate) {
    RngStreams s;
    s.base_seed = base_seed;
    s.replicate = replicate;
    uint64_t path = splitmix64(splitmix64(base_seed) ^ (static_cast<uint64_t>(replicate) + 1));
    s.wiener = RngStream(splitmix64(path ^ 0x01ULL));
    s.jump_times = RngStream(splitmix64(path ^ 0x02ULL));
    s.jump_marks = RngStream(splitmix64(path ^ 0x03ULL));
    s.init = RngStream(splitmix64(path ^ 0x04ULL));
    return s;
}

namespace {

// Gaussian envelope sampled with nearest-image periodic distance.
RealScalarField make_envelope(const GridSpec& g, double amp, double width,
                              const std::array<double, 3>& center_frac) {
    RealScalarField f(g);
    const int N = g.n();
    const double L = g.box_length;
    const double cx = center_frac[0] * L;
    const double cy = center_frac[1] * L;
    const double cz = center_frac[2] * L;
    auto image_dist = [L](double a, double b) {
        double d = std::fmod(std::abs(a - b), L);
        return std::min(d, L - d);
    };
    const double inv2w2 = 1.0 / (2.0 * width * width);
    for (int iz = 0; iz < N; ++iz) {
        double z = iz * g.dx();
        double dz = image_dist(z, cz);
        for (int iy = 0; iy < N; ++iy) {
            double y = iy * g.dx();
            double dy = image_dist(y, cy);
            for (int ix = 0; ix < N; ++ix) {
                double x = ix * g.dx();
                double dxp = image_dist(x, cx);
                f.at(iz, iy, ix) = amp * std::exp(-(dxp * dxp + dy * dy + dz * dz) * inv2w2);
            }
        }
    }
    return f;
}

void kernel_multiplier_inplace(SpectralVectorField& F, double width) {
    const GridSpec& g = F.grid;
    const int N = g.n();
    const std::size_t stride = g.n3();
    const double s2 = width * width;
    for (int iz = 0; iz < N; ++iz) {
        double xz = g.freq(iz);
        for (int iy = 0; iy < N; ++iy) {
            double xy = g.freq(iy);
            for (int ix = 0; ix < N; ++ix) {
                double xx = g.freq(ix);
                double m = std::exp(-s2 * (xx * xx + xy * xy + xz * xz));
                std::size_t idx = (static_cast<std::size_t>(iz) * N + iy) * N + ix;
                for (int c = 0; c < 3; ++c) F.c[c * stride + idx] *= m;
            }
        }
    }
}

// P[ kappa * field ]: forward transform, Gaussian kernel multiplier, Leray.
SpectralVectorField smooth_and_project(const RealVectorField& f, double kernel_width) {
    SpectralVectorField F = fft_forward(f);
    kernel_multiplier_inplace(F, kernel_width);
    leray_project_inplace(F);
    zero_nyquist(F);
    return F;
}

RealVectorField envelope_times_theta(const GridSpec& g, const RealScalarField& env,
                                     const ThetaMap& theta, const RealVectorField& u) {
    RealVectorField out(g);
    const std::size_t m = g.n3();
    for (std::size_t i = 0; i < m; ++i) {
        std::array<double, 3> v = {u.comp(0)[i], u.comp(1)[i], u.comp(2)[i]};
        auto t = theta(v);
        out.comp(0)[i] = env.v[i] * t[0];
        out.comp(1)[i] = env.v[i] * t[1];
        out.comp(2)[i] = env.v[i] * t[2];
    }
    return out;
}

RealVectorField directional_envelope(const GridSpec& g, const WienerComponent& c) {
    RealScalarField env = make_envelope(g, c.b_amp, c.b_width, c.b_center);
    RealVectorField out(g);
    const std::size_t m = g.n3();
    for (std::size_t i = 0; i < m; ++i)
        for (int k = 0; k < 3; ++k) out.comp(k)[i] = c.b_dir[k] * env.v[i];
    return out;
}

}  // namespace

WienerModel WienerModel::standard(int rank, double amplitude) {
    WienerModel m;
    m.theta_.alpha = 0.5;
    for (int i = 0; i < rank; ++i) {
        WienerComponent c;
        c.amplitude = amplitude;
        c.kernel_width = 1.0;
        c.env_amp = 1.0;
        c.env_width = 0.0;  // filled in prepare() relative to L
        double frac = 0.25 + 0.5 * (i % 2);
        c.env_center = {frac, 0.25 + 0.25 * ((i / 2) % 2), 0.5};
        c.b_amp = 0.5;
        c.b_center = {0.5, frac, 0.25};
        c.b_dir = {0.0, 0.0, 0.0};
        c.b_dir[i % 3] = 1.0;
        m.comps_.push_back(c);
    }
    return m;
}

void WienerModel::prepare(const GridSpec& grid) {
    grid_ = grid;
    env_.clear();
    b_base_.clear();
    const double L = grid.box_length;
    for (auto& c : comps_) {
        if (c.env_width <= 0.0) c.env_width = 0.25 * L;
        if (c.b_width <= 0.0) c.b_width = 0.25 * L;
        env_.push_back(make_envelope(grid, c.env_amp, c.env_width, c.env_center));
        b_base_.push_back(smooth_and_project(directional_envelope(grid, c), c.kernel_width));
    }
    ready_ = true;
}

bool WienerModel::prepared(const GridSpec& grid) const { return ready_ && grid_ == grid; }

SpectralVectorField WienerModel::component_field(int i, const RealVectorField& u) const {
    if (!ready_ || !(grid_ == u.grid))
        throw std::logic_error("WienerModel: prepare() not called for this grid");
    const auto& c = comps_[i];
    RealVectorField mod = envelope_times_theta(u.grid, env_[i], theta_, u);
    SpectralVectorField S = smooth_and_project(mod, c.kernel_width);
    for (std::size_t k = 0; k < S.c.size(); ++k) S.c[k] += b_base_[i].c[k];
    return S;
}

SpectralVectorField WienerModel::apply(const RealVectorField& u,
                                       const std::vector<double>& dw) const {
    if (static_cast<int>(dw.size()) != rank())
        throw std::invalid_argument("WienerModel::apply: dW dimension mismatch");
    SpectralVectorField out(u.grid);
    for (int i = 0; i < rank(); ++i) {
        if (dw[i] == 0.0 && rank() > 1) continue;
        SpectralVectorField S = component_field(i, u);
        double a = dw[i] * comps_[i].amplitude;
        for (std::size_t k = 0; k < out.c.size(); ++k) out.c[k] += a * S.c[k];
    }
    return out;
}

JumpModel JumpModel::standard(double alpha, double amplitude_scale) {
    JumpModel m;
    m.theta_.alpha = alpha;
    m.marks_ = {{0.5, 1.0 * amplitude_scale},
                {0.3, -0.6 * amplitude_scale},
                {0.2, 0.4 * amplitude_scale}};
    m.kernel_.kernel_width = 1.0;
    m.kernel_.env_amp = 1.0;
    m.kernel_.env_width = 0.0;
    m.kernel_.env_center = {0.5, 0.5, 0.5};
    m.kernel_.b_amp = 0.5;
    m.kernel_.b_width = 0.0;
    m.kernel_.b_center = {0.25, 0.5, 0.75};
    m.kernel_.b_dir = {0.0, 1.0, 0.0};
    return m;
}

void JumpModel::prepare(const GridSpec& grid) {
    for (const auto& mk : marks_)
        if (!(mk.weight > 0.0))
            throw std::invalid_argument("JumpModel: mark weights must be positive");
    grid_ = grid;
    const double L = grid.box_length;
    if (kernel_.env_width <= 0.0) kernel_.env_width = 0.25 * L;
    if (kernel_.b_width <= 0.0) kernel_.b_width = 0.25 * L;
    env_ = make_envelope(grid, kernel_.env_amp, kernel_.env_width, kernel_.env_center);
    b_base_ = smooth_and_project(directional_envelope(grid, kernel_), kernel_.kernel_width);
    ready_ = true;
}

bool JumpModel::prepared(const GridSpec& grid) const { return ready_ && grid_ == grid; }

double JumpModel::total_rate() const {
    double s = 0.0;
    for (const auto& m : marks_) s += m.weight;
    return s;
}

double JumpModel::compensator_coeff() const {
    double s = 0.0;
    for (const auto& m : marks_) s += m.weight * m.amplitude;
    return s;
}

SpectralVectorField JumpModel::coefficient_field(const RealVectorField& u) const {
    if (!ready_ || !(grid_ == u.grid))
        throw std::logic_error("JumpModel: prepare() not called for this grid");
    RealVectorField mod = envelope_times_theta(u.grid, env_, theta_, u);
    SpectralVectorField S = smooth_and_project(mod, kernel_.kernel_width);
    for (std::size_t k = 0; k < S.c.size(); ++k) S.c[k] += b_base_.c[k];
    return S;
}

std::vector<JumpEvent> JumpModel::sample_jumps(double t0, double t1, RngStream& times,
                                               RngStream& marks) const {
    if (!(t0 < t1)) throw std::invalid_argument("sample_jumps: need t0 < t1");
    std::vector<JumpEvent> out;
    double rate = total_rate();
    if (rate <= 0.0) return out;
    // cumulative mark weights for inverse-CDF mark sampling
    std::vector<double> cum(marks_.size());
    double acc = 0.0;
    for (std::size_t j = 0; j < marks_.size(); ++j) {
        acc += marks_[j].weight;
        cum[j] = acc;
    }
    double t = t0;
    while (true) {
        t += times.exponential(rate);
        if (t > t1) break;
        double u = marks.uniform() * rate;
        int mark = 0;
        while (mark + 1 < static_cast<int>(cum.size()) && u > cum[mark]) ++mark;
        out.push_back({t, mark});
    }
    return out;
}

SpectralVectorField JumpModel::increment(const RealVectorField& u_pre,
                                         const std::vector<JumpEvent>& jumps,
                                         double dt) const {
    double factor = -dt * compensator_coeff();
    for (const auto& j : jumps) factor += marks_[j.mark].amplitude;
    SpectralVectorField out(u_pre.grid);
    if (factor == 0.0) return out;
    out = coefficient_field(u_pre);
    for (auto& z : out.c) z *= factor;
    return out;
}

}  // namespace stns
