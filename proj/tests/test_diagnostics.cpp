#include "stns/diagnostics.hpp"
#include "stns/fft.hpp"
#include "stns/norms.hpp"
#include "stns/operators.hpp"

#include <doctest.h>

#include "test_support.hpp"

#include <cmath>

using namespace stns;

namespace {

DriftConfig default_drift() {
    DriftConfig cfg;
    cfg.nu = 0.1;
    cfg.taming = TamingFunction{1.0, 0.1};
    cfg.cutoff = CutoffFunction{50.0};
    cfg.lp_exponent = 4.0;
    return cfg;
}

}  // namespace

TEST_CASE("compute_energy: zero field gives the all-zero record") {
    GridSpec g(16, 8.0 * M_PI);
    RealVectorField z(g);
    EnergyRecord r = compute_energy(z, fft_forward(z), default_drift(), 0);
    CHECK(r.lp_p == 0.0);
    CHECK(r.grad_pow == 0.0);
    CHECK(r.l2_sq == 0.0);
    CHECK(r.grad_l2_sq == 0.0);
    CHECK(r.lap_l2_sq == 0.0);
    CHECK(r.l3p_p == 0.0);
    CHECK(r.l6_sq == 0.0);
    CHECK(r.taming_dissipation == 0.0);
    CHECK(r.pressure_l3 == 0.0);
    CHECK(r.cutoff_value == 1.0);
}

TEST_CASE("compute_energy: constant field closed forms") {
    GridSpec g(16, 5.0);
    DriftConfig cfg = default_drift();
    const double c = 1.8;  // |u| = 1.8, |u|^2 = 3.24 > N = 1
    RealVectorField f(g);
    for (std::size_t i = 0; i < g.n3(); ++i) f.comp(2)[i] = c;
    EnergyRecord r = compute_energy(f, fft_forward(f), cfg, 0);
    double L3 = g.volume();
    CHECK(r.lp_p == doctest::Approx(std::pow(c, 4.0) * L3).epsilon(1e-13));
    CHECK(r.grad_pow == doctest::Approx(0.0));
    CHECK(r.grad_l2_sq == doctest::Approx(0.0));
    double gval = cfg.taming.value(c * c);
    CHECK(r.taming_dissipation ==
          doctest::Approx(gval * std::pow(c, 4.0) * L3).epsilon(1e-13));
}

TEST_CASE("compute_energy: single-mode gradient multiplier identity") {
    GridSpec g(16, 8.0 * M_PI);
    SpectralVectorField U(g);
    U.at(1, 0, 0, 2) = Complex(0.7, 0.0);
    U.at(1, 0, 0, 14) = Complex(0.7, 0.0);
    RealVectorField u = fft_inverse(U);
    EnergyRecord r = compute_energy(u, U, default_drift(), 0);
    double xi2 = std::pow(g.freq(2), 2);
    CHECK(r.grad_l2_sq ==
          doctest::Approx(4.0 * M_PI * M_PI * xi2 * r.l2_sq).epsilon(1e-12));
}

TEST_CASE("compute_energy: taming dissipation vanishes below threshold") {
    GridSpec g(16, 8.0 * M_PI);
    DriftConfig cfg = default_drift();
    RealVectorField u = test::random_field(g, 3, 1.0);
    double peak = test::max_abs(u);
    for (auto& x : u.v) x *= 0.5 / peak;  // max |u|^2 well below N = 1
    EnergyRecord r = compute_energy(u, fft_forward(u), cfg, 0);
    CHECK(r.taming_dissipation == 0.0);
}

TEST_CASE("sobolev bridge: l3p_p controlled by grad_pow across random fields") {
    GridSpec g(16, 8.0 * M_PI);
    DriftConfig cfg = default_drift();
    double worst = 0.0;
    for (uint64_t seed = 0; seed < 100; ++seed) {
        RealVectorField u = test::random_bandlimited(g, 500 + seed, 4, 1.0);
        EnergyRecord r = compute_energy(u, fft_forward(u), cfg, 0, false);
        if (r.grad_pow > 0.0) worst = std::max(worst, r.l3p_p / r.grad_pow);
    }
    CHECK(std::isfinite(worst));
    CHECK(worst > 0.0);
    MESSAGE("discrete sobolev-bridge constant = ", worst);
}

TEST_CASE("L6 controlled by grad_l2 on mean-free fields") {
    GridSpec g(16, 8.0 * M_PI);
    DriftConfig cfg = default_drift();
    double worst = 0.0;
    for (uint64_t seed = 0; seed < 50; ++seed) {
        RealVectorField u = test::random_bandlimited(g, 700 + seed, 4, 1.0);
        SpectralVectorField U = fft_forward(u);
        for (int c = 0; c < 3; ++c) U.comp(c)[0] = 0.0;  // remove the mean
        u = fft_inverse(U);
        EnergyRecord r = compute_energy(u, U, cfg, 0, false);
        if (r.grad_l2_sq > 0.0) worst = std::max(worst, r.l6_sq / r.grad_l2_sq);
    }
    CHECK(std::isfinite(worst));
    MESSAGE("discrete H1->L6 constant = ", worst);
}

TEST_CASE("aggregate: degenerate, trapezoid, and validation cases") {
    EnergyRecord a;
    a.t = 0.0;
    a.lp_p = 2.0;
    a.grad_pow = 1.0;
    a.lap_l2_sq = 4.0;

    CHECK_THROWS(aggregate({}));

    TrajectorySummary single = aggregate({a});
    CHECK(single.sup_lp_p == 2.0);
    CHECK(single.int_grad_pow == 0.0);
    CHECK(single.final_t == 0.0);

    EnergyRecord b = a;
    b.t = 0.5;
    TrajectorySummary two = aggregate({a, b});
    CHECK(two.int_grad_pow == doctest::Approx(0.5 * 1.0));
    CHECK(two.int_lap_l2 == doctest::Approx(0.5 * 4.0));

    EnergyRecord bad = a;
    CHECK_THROWS(aggregate({a, bad}));  // non-increasing times
}

TEST_CASE("aggregate: random series matches independent re-aggregation") {
    std::vector<EnergyRecord> series;
    RngStream rng(31);
    double t = 0.0;
    for (int i = 0; i < 20; ++i) {
        EnergyRecord r;
        r.t = t;
        r.lp_p = std::abs(rng.normal());
        r.grad_pow = std::abs(rng.normal());
        r.grad_l2_sq = std::abs(rng.normal());
        r.lap_l2_sq = std::abs(rng.normal());
        series.push_back(r);
        t += 0.05 + 0.01 * rng.uniform();
    }
    TrajectorySummary s = aggregate(series);
    double sup = 0.0, integral = 0.0;
    for (std::size_t i = 0; i < series.size(); ++i) {
        sup = std::max(sup, series[i].lp_p);
        if (i > 0)
            integral += 0.5 * (series[i].t - series[i - 1].t) *
                        (series[i].grad_pow + series[i - 1].grad_pow);
    }
    CHECK(s.sup_lp_p == doctest::Approx(sup).epsilon(1e-12));
    CHECK(s.int_grad_pow == doctest::Approx(integral).epsilon(1e-12));
}

TEST_CASE("mc_estimate: identical, two-point, and size-1 ensembles") {
    TrajectorySummary a;
    a.sup_lp_p = 2.0;
    TrajectorySummary b;
    b.sup_lp_p = 4.0;

    EnsembleStats same = mc_estimate({a, a, a});
    CHECK(same.mean.sup_lp_p == 2.0);
    CHECK(same.se.sup_lp_p == 0.0);

    EnsembleStats two = mc_estimate({a, b});
    CHECK(two.mean.sup_lp_p == doctest::Approx(3.0));
    CHECK(two.se.sup_lp_p == doctest::Approx(1.0));  // |a-b|/2

    EnsembleStats one = mc_estimate({a});
    CHECK(one.mean.sup_lp_p == 2.0);
    CHECK(one.se.sup_lp_p == 0.0);

    CHECK_THROWS(mc_estimate({}));
}

TEST_CASE("records are recomputable from snapshots to 1e-12") {
    GridSpec g(16, 8.0 * M_PI);
    DriftConfig cfg = default_drift();
    RealVectorField u = test::random_bandlimited(g, 900, 4, 0.7);
    SpectralVectorField U = fft_forward(u);
    EnergyRecord r1 = compute_energy(u, U, cfg, 5);
    EnergyRecord r2 = compute_energy(u, U, cfg, 5);
    CHECK(r1.lp_p == r2.lp_p);
    CHECK(r1.grad_pow == r2.grad_pow);
    CHECK(r1.pressure_l3 == r2.pressure_l3);
    CHECK(r1.jump_count_cum == r2.jump_count_cum);
}
