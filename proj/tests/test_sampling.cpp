#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "bohm/builders.hpp"
#include "bohm/rng.hpp"
#include "bohm/sampling.hpp"
#include "bohm/stats.hpp"

using namespace bohm;

TEST_CASE("counter rng streams are deterministic and order-free") {
    CounterRng a(42), b(42);
    for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
    CounterRng c = CounterRng::for_stream(7, 3);
    CounterRng d = CounterRng::for_stream(7, 4);
    CHECK(c.next_u64() != d.next_u64());
    double lo = 1.0, hi = 0.0;
    CounterRng e(9);
    for (int i = 0; i < 10000; ++i) {
        const double u = e.next_double();
        lo = std::min(lo, u);
        hi = std::max(hi, u);
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
    }
    CHECK(lo < 0.01);
    CHECK(hi > 0.99);
}

TEST_CASE("piecewise linear cdf round trip") {
    std::vector<double> nodes = {0.2, 1.4, 0.9, 0.1, 0.6, 2.0, 0.4, 0.05};
    PiecewiseLinearCdf cdf(nodes, -1.0, 0.5);
    CHECK(cdf.total_mass() > 0.0);
    for (double u : {0.0, 0.1, 0.33, 0.5, 0.77, 0.999}) {
        const double x = cdf.sample(u);
        CHECK(cdf(x) == doctest::Approx(u).epsilon(1e-12));
    }
    CHECK(cdf(-1.0) == 0.0);
    CHECK(cdf(3.0) == 1.0);
}

TEST_CASE("uniform density sampling passes the KS gate at n = 1e5") {
    const GridSpec g = make_grid({{0.0, 1.0, 64}});
    DensityField d{g, std::vector<double>(g.size(), 1.0)};
    const std::size_t n = 100000;
    const auto pts = sample_equilibrium(d, n, 2026);
    std::vector<double> xs(n);
    for (std::size_t i = 0; i < n; ++i) xs[i] = pts[i][0];
    PiecewiseLinearCdf uniform(std::vector<double>(g.size(), 1.0), 0.0, g.step(0));
    CHECK(ks_distance(std::move(xs), uniform) < ks_critical_1pct(n));
}

TEST_CASE("two-bump density splits its mass evenly across the axis") {
    const GridSpec g = make_grid({{-8.0, 8.0, 64}, {-8.0, 8.0, 64}});
    WaveField f = init_field(g, [](const std::array<double, 3>& q) {
        return builders::gaussian(q[0], 0.0, 1.5) *
               builders::double_gaussian(q[1], 2.0, 0.7);
    });
    const std::size_t n = 10000;
    const auto pts = sample_equilibrium(density(f), n, 99);
    std::size_t upper = 0;
    for (const auto& p : pts)
        if (p[1] > 0.0) ++upper;
    const double frac = static_cast<double>(upper) / static_cast<double>(n);
    CHECK(frac == doctest::Approx(0.5).epsilon(0.03));  // 3 sigma binomial
}

TEST_CASE("a one-hot density confines samples to the hot cell's tent") {
    const GridSpec g = make_grid({{0.0, 16.0, 16}});
    std::vector<double> vals(g.size(), 0.0);
    vals[5] = 1.0;
    DensityField d{g, vals};
    const double x5 = g.coord(0, 5);
    for (const auto& p : sample_equilibrium(d, 2000, 4)) {
        CHECK(p[0] >= x5 - g.step(0));
        CHECK(p[0] <= x5 + g.step(0));
    }
}

TEST_CASE("sampling is deterministic per seed and rejects degenerate input") {
    const GridSpec g = make_grid({{0.0, 1.0, 32}});
    DensityField d{g, std::vector<double>(g.size(), 0.5)};
    const auto a = sample_equilibrium(d, 64, 17);
    const auto b = sample_equilibrium(d, 64, 17);
    const auto c = sample_equilibrium(d, 64, 18);
    CHECK(a == b);
    CHECK(a != c);
    DensityField zero{g, std::vector<double>(g.size(), 0.0)};
    CHECK_THROWS_AS(sample_equilibrium(zero, 10, 0), ConfigError);
    CHECK_THROWS_AS(sample_equilibrium(d, 0, 0), ConfigError);
}

TEST_CASE("ks_distance separates matched and mismatched references") {
    const GridSpec g = make_grid({{0.0, 1.0, 64}});
    std::vector<double> tri(g.size());
    for (std::size_t i = 0; i < g.size(); ++i)
        tri[i] = g.coord(0, static_cast<int>(i));
    PiecewiseLinearCdf cdf(tri, 0.0, g.step(0));
    const std::size_t n = 5000;
    std::vector<double> xs(n);
    for (std::size_t i = 0; i < n; ++i)
        xs[i] = cdf.sample((static_cast<double>(i) + 0.5) / static_cast<double>(n));
    CHECK(ks_distance(xs, cdf) < 0.002);  // stratified draw: ~1/n
    PiecewiseLinearCdf uniform(std::vector<double>(g.size(), 1.0), 0.0, g.step(0));
    CHECK(ks_distance(xs, uniform) > 0.1);
}
