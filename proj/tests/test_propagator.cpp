#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "bohm/builders.hpp"
#include "bohm/propagator.hpp"
#include "bohm/subsystem.hpp"

using namespace bohm;

namespace {

WaveField plane_wave_field(const GridSpec& g, double k) {
    return init_field(g, [k](const std::array<double, 3>& q) {
        return builders::plane_wave(q[0], k);
    });
}

double max_pointwise_diff(const WaveField& a, const WaveField& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.amplitudes.size(); ++i)
        m = std::max(m, std::abs(a.amplitudes[i] - b.amplitudes[i]));
    return m;
}

} // namespace

TEST_CASE("a step preserves the norm") {
    const GridSpec g = make_grid({{-16.0, 16.0, 256}});
    const WaveField f = init_field(g, [](const std::array<double, 3>& q) {
        return builders::gaussian(q[0], 0.0, 1.0, 1.5);
    });
    const PropagatorPlan plan(g, 0.005, zero_potential(g));
    CHECK(std::abs(norm(step(f, plan)) - 1.0) < 1e-13);
}

TEST_CASE("a lattice plane wave picks up the exact kinetic phase") {
    const GridSpec g = make_grid({{0.0, 16.0 * M_PI, 256}});
    const double k = 2.0;
    const WaveField f = plane_wave_field(g, k);
    const double dt = 0.01;
    const PropagatorPlan plan(g, dt, zero_potential(g));
    const WaveField g1 = step(f, plan);
    const Complex phase = std::polar(1.0, -k * k / 2.0 * dt);
    for (std::size_t i = 0; i < f.amplitudes.size(); ++i) {
        CHECK(std::abs(g1.amplitudes[i] - phase * f.amplitudes[i]) < 1e-13);
        CHECK(std::abs(std::norm(g1.amplitudes[i]) - std::norm(f.amplitudes[i])) <
              1e-13);
    }
    CHECK(g1.time_tag == doctest::Approx(dt));
}

TEST_CASE("the stationary 2D field only rotates by its global energy phase") {
    const GridSpec g = stationary_universe_grid(64);
    const WaveField f = stationary_universe_field(g);
    const double dt = 0.001;
    const PropagatorPlan plan(g, dt, zero_potential(g));
    const WaveField g1 = step(f, plan);
    const Complex phase = std::polar(1.0, -2.0 * dt);
    for (std::size_t i = 0; i < f.amplitudes.size(); ++i)
        CHECK(std::abs(g1.amplitudes[i] - phase * f.amplitudes[i]) < 1e-10);
}

TEST_CASE("evolving by zero returns the input field") {
    const GridSpec g = make_grid({{-16.0, 16.0, 64}});
    const WaveField f = init_field(g, [](const std::array<double, 3>& q) {
        return builders::gaussian(q[0], 0.0, 1.0);
    });
    const PropagatorPlan plan(g, 0.01, zero_potential(g));
    const auto snaps = evolve(f, plan, 0.0, {0.0});
    REQUIRE(snaps.size() == 1);
    CHECK(max_pointwise_diff(snaps[0], f) == 0.0);
}

TEST_CASE("the stationary field stays projectively fixed over t = 1") {
    const GridSpec g = stationary_universe_grid(64);
    const WaveField f = stationary_universe_field(g);
    const PropagatorPlan plan(g, 0.001, zero_potential(g));
    const auto snaps = evolve(f, plan, 1.0, {1.0});
    CHECK(projective_distance(snaps.back(), f) < 1e-9);
}

TEST_CASE("free evolution develops two-slit interference fringes") {
    const GridSpec g = make_grid({{-12.0, 28.0, 256}, {-24.0, 24.0, 256}});
    const WaveField f = init_field(g, [](const std::array<double, 3>& q) {
        return builders::gaussian(q[0], -2.0, 1.5, 4.0) *
               builders::double_gaussian(q[1], 2.0, 0.4);
    });
    const PropagatorPlan plan(g, 0.01, zero_potential(g));
    const auto snaps = evolve(f, plan, 4.0, {4.0});
    const DensityField d = density(snaps.back());
    const int i_screen = static_cast<int>(std::lround((14.0 + 12.0) / g.step(0)));
    const int ny = g.axis(1).n;
    // adjacent interference maxima separated by a deep valley
    std::vector<double> row(static_cast<std::size_t>(ny));
    for (int j = 0; j < ny; ++j)
        row[static_cast<std::size_t>(j)] =
            d.values[static_cast<std::size_t>(i_screen) * ny + j];
    const double peak = *std::max_element(row.begin(), row.end());
    double best = 0.0;
    std::vector<int> maxima;
    for (int j = 1; j + 1 < ny; ++j)
        if (row[j] > row[j - 1] && row[j] >= row[j + 1] && row[j] >= 0.2 * peak)
            maxima.push_back(j);
    REQUIRE(maxima.size() >= 2);
    for (std::size_t m = 0; m + 1 < maxima.size(); ++m) {
        const double p = std::min(row[maxima[m]], row[maxima[m + 1]]);
        double valley = p;
        for (int j = maxima[m]; j <= maxima[m + 1]; ++j)
            valley = std::min(valley, row[j]);
        if (valley > 0.0) best = std::max(best, p / valley);
    }
    CHECK(best > 5.0);
}

TEST_CASE("apply_hamiltonian on plane waves and its linearity") {
    const GridSpec g = make_grid({{0.0, 16.0 * M_PI, 256}});
    const double k = 2.0;
    const WaveField f = plane_wave_field(g, k);
    const WaveField hf = apply_hamiltonian(f, zero_potential(g));
    for (std::size_t i = 0; i < f.amplitudes.size(); ++i)
        CHECK(std::abs(hf.amplitudes[i] - k * k / 2.0 * f.amplitudes[i]) < 1e-10);

    const WaveField a = init_field(g, [](const std::array<double, 3>& q) {
        return builders::gaussian(q[0], 10.0, 1.5, 1.0);
    });
    const WaveField b = init_field(g, [](const std::array<double, 3>& q) {
        return builders::gaussian(q[0], 30.0, 2.0, -0.5);
    });
    std::vector<double> vvals(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double x = g.coord(0, static_cast<int>(i));
        vvals[i] = std::sin(x / 4.0);
    }
    const Potential v = make_potential(g, vvals);
    const Complex alpha(0.6, -0.2), beta(-1.1, 0.4);
    WaveField mix = a;
    for (std::size_t i = 0; i < mix.amplitudes.size(); ++i)
        mix.amplitudes[i] = alpha * a.amplitudes[i] + beta * b.amplitudes[i];
    const WaveField lhs = apply_hamiltonian(mix, v);
    const WaveField ha = apply_hamiltonian(a, v);
    const WaveField hb = apply_hamiltonian(b, v);
    for (std::size_t i = 0; i < lhs.amplitudes.size(); ++i)
        CHECK(std::abs(lhs.amplitudes[i] - alpha * ha.amplitudes[i] -
                       beta * hb.amplitudes[i]) < 1e-12);
}

TEST_CASE("eigen_residual identifies exact eigenstates") {
    const GridSpec g = stationary_universe_grid(64);
    const WaveField f = stationary_universe_field(g);
    const Potential v = zero_potential(g);
    CHECK(eigen_residual(f, v, 2.0) < 1e-8);
    CHECK(eigen_residual(f, v, 0.0) == doctest::Approx(2.0).epsilon(1e-8));

    const GridSpec g1 = make_grid({{0.0, 16.0 * M_PI, 256}});
    const double k = 2.0;
    CHECK(eigen_residual(plane_wave_field(g1, k), zero_potential(g1), k * k / 2.0) <
          1e-10);
}

TEST_CASE("norm drift stays below 1e-10 over 1000 steps") {
    const GridSpec g = make_grid({{-16.0, 16.0, 256}});
    WaveField f = init_field(g, [](const std::array<double, 3>& q) {
        return builders::gaussian(q[0], -3.0, 0.9, 2.0);
    });
    std::vector<double> vvals(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double x = g.coord(0, static_cast<int>(i));
        vvals[i] = 0.5 * x * x;
    }
    const PropagatorPlan plan(g, 5e-4, make_potential(g, vvals));
    double worst = 0.0;
    for (int s = 0; s < 1000; ++s) {
        plan.step_inplace(f);
        worst = std::max(worst, std::abs(norm(f) - 1.0));
    }
    CHECK(worst < 1e-10);
}

TEST_CASE("forward then backward evolution returns the initial field") {
    const GridSpec g = make_grid({{-16.0, 16.0, 256}});
    const WaveField f = init_field(g, [](const std::array<double, 3>& q) {
        return builders::gaussian(q[0], 2.0, 1.0);
    });
    std::vector<double> vvals(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double x = g.coord(0, static_cast<int>(i));
        vvals[i] = 0.5 * x * x;
    }
    const Potential v = make_potential(g, vvals);
    const PropagatorPlan fwd(g, 0.005, v);
    const PropagatorPlan bwd(g, -0.005, v);
    const WaveField f1 = evolve(f, fwd, 1.0, {1.0}).back();
    const WaveField f0 = evolve(f1, bwd, 0.0, {0.0}).back();
    CHECK(max_pointwise_diff(f0, f) < 1e-8);
}

TEST_CASE("Strang splitting converges at second order") {
    const GridSpec g = make_grid({{-16.0, 16.0, 256}});
    const WaveField f = init_field(g, [](const std::array<double, 3>& q) {
        return builders::gaussian(q[0], 2.0, 1.0);
    });
    std::vector<double> vvals(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double x = g.coord(0, static_cast<int>(i));
        vvals[i] = 0.5 * x * x;
    }
    const Potential v = make_potential(g, vvals);
    const double T = 0.2;
    auto final_field = [&](double dt) {
        const PropagatorPlan plan(g, dt, v);
        return evolve(f, plan, T, {T}).back();
    };
    const WaveField ref = final_field(0.000625);
    const double e1 = max_pointwise_diff(final_field(0.01), ref);
    const double e2 = max_pointwise_diff(final_field(0.005), ref);
    const double ratio = e1 / e2;
    CHECK(ratio > 3.2);
    CHECK(ratio < 4.8);
}

TEST_CASE("piecewise-constant schedules are applied exactly") {
    // constant-in-space frame commutes with H: schedule acts as a pure phase
    const GridSpec g = make_grid({{-16.0, 16.0, 128}});
    const WaveField f = init_field(g, [](const std::array<double, 3>& q) {
        return builders::gaussian(q[0], 0.0, 1.0);
    });
    const double c = 3.0, tau = 0.1, T = 0.2, dt = 0.01;
    const Potential sched = make_scheduled_potential(
        g, {tau, T},
        {std::vector<double>(g.size(), c), std::vector<double>(g.size(), 0.0)});
    const WaveField with = evolve(f, PropagatorPlan(g, dt, sched), T, {T}).back();
    const WaveField free_run =
        evolve(f, PropagatorPlan(g, dt, zero_potential(g)), T, {T}).back();
    const Complex phase = std::polar(1.0, -c * tau);
    for (std::size_t i = 0; i < with.amplitudes.size(); ++i)
        CHECK(std::abs(with.amplitudes[i] - phase * free_run.amplitudes[i]) < 1e-12);
}

TEST_CASE("plan construction enforces the spectral stability bound") {
    const GridSpec g = make_grid({{-16.0, 16.0, 256}});
    CHECK_THROWS_WITH_AS(PropagatorPlan(g, 1.0, zero_potential(g)),
                         doctest::Contains("spectral stability"), ConfigError);
    CHECK_THROWS_AS(PropagatorPlan(g, 0.0, zero_potential(g)), ConfigError);
    const GridSpec other = make_grid({{-16.0, 16.0, 128}});
    CHECK_THROWS_AS(PropagatorPlan(g, 0.01, zero_potential(other)), ConfigError);
}

TEST_CASE("snapshot bookkeeping hits requested times") {
    const GridSpec g = make_grid({{-16.0, 16.0, 64}});
    const WaveField f = init_field(g, [](const std::array<double, 3>& q) {
        return builders::gaussian(q[0], 0.0, 1.2);
    });
    const PropagatorPlan plan(g, 0.01, zero_potential(g));
    const auto snaps = evolve(f, plan, 0.5, {0.25, 0.5});
    REQUIRE(snaps.size() == 2);
    CHECK(snaps[0].time_tag == doctest::Approx(0.25).epsilon(1e-10));
    CHECK(snaps[1].time_tag == doctest::Approx(0.5).epsilon(1e-10));
    CHECK_THROWS_AS(evolve(f, plan, 0.5, {0.6}), ConfigError);
    CHECK_THROWS_AS(evolve(f, plan, -0.5, {0.0}), ConfigError);
}
