#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>

#include "rslab/body.hpp"
#include "rslab/density.hpp"
#include "rslab/rng.hpp"

using namespace rslab;

namespace {
const double inf = std::numeric_limits<double>::infinity();
}

TEST_CASE("p-mean case split") {
    CHECK(p_mean(4.0, 0.0, 0.5, 1.0) == 0.0);
    CHECK(p_mean(0.0, 7.0, 0.5, inf) == 0.0);
    CHECK(p_mean(1.0, 4.0, 0.5, 0.0) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(p_mean(2.0, 3.0, 0.7, -inf) == doctest::Approx(2.0));
    CHECK(p_mean(2.0, 3.0, 0.7, inf) == doctest::Approx(3.0));
    CHECK(p_mean(1.0, 3.0, 0.5, 1.0) == doctest::Approx(2.0));
    CHECK(p_mean(1.0, 2.0, 0.5, -1.0) == doctest::Approx(4.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("p-mean is monotone in p") {
    RandomStream rs(21, 0);
    const double ps[] = {-inf, -2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 2.0, inf};
    for (int trial = 0; trial < 200; ++trial) {
        double a = 0.1 + 5.0 * rs.next_unit();
        double b = 0.1 + 5.0 * rs.next_unit();
        double l = 0.05 + 0.9 * rs.next_unit();
        double prev = -1.0;
        for (double p : ps) {
            double m = p_mean(a, b, l, p);
            CHECK(m >= prev - 1e-12);
            prev = m;
        }
    }
}

TEST_CASE("builtin density values") {
    Density g1 = make_gaussian(1);
    CHECK(g1({0.0}) == doctest::Approx(1.0 / std::sqrt(2.0 * M_PI)).epsilon(1e-12));
    Density g2 = make_gaussian(2);
    CHECK(g2({0.0, 0.0}) == doctest::Approx(1.0 / (2.0 * M_PI)).epsilon(1e-12));
    CHECK(g2.sup_value == doctest::Approx(g2({0.0, 0.0})));

    Density ring = make_ring(0.01, 0.1);
    CHECK(ring({0.0, 0.0}) == 1.0);
    CHECK(ring({0.05, 0.0}) == 1.0);
    CHECK(ring({1.0, 0.0}) == 0.0);
    CHECK(ring({1.995, 0.0}) == 1.0);
    CHECK(ring({2.05, 0.0}) == 0.0);

    Density e = make_exp_norm(2);
    CHECK(e({3.0, 4.0}) == doctest::Approx(std::exp(-5.0)).epsilon(1e-12));

    Density w = make_wedge(0.5);
    CHECK(w({1.0, 0.0}) == 1.0);
    CHECK(w({1.0, std::tan(0.5) * 0.99}) == 1.0);
    CHECK(w({1.0, std::tan(0.5) * 1.01}) == 0.0);
    CHECK(w({-1.0, 0.0}) == 0.0);

    CHECK_THROWS_AS(make_ring(0.2, 0.1), PreconditionError);
    CHECK_THROWS_AS(make_wedge(2.0), PreconditionError);
}

TEST_CASE("cone power density") {
    Body seg = make_vpolytope({{-1.0}, {1.0}});
    Density c = make_cone_power(seg, 1.0);
    CHECK(c({0.0}) == doctest::Approx(1.0));
    CHECK(c({1.0}) == doctest::Approx(0.0));
    CHECK(c({-1.0}) == doctest::Approx(0.0));
    CHECK(c({0.25}) == doctest::Approx(0.75).epsilon(1e-9));
    CHECK(c({1.5}) == 0.0);

    Body sq = make_cube(2, 1.0);
    Density c2 = make_cone_power(sq, 2.0);
    CHECK(c2({0.5, 0.0}) == doctest::Approx(0.25).epsilon(1e-9));
    CHECK(c2({0.5, 0.5}) == doctest::Approx(0.25).epsilon(1e-9));
    CHECK(*c2.flags.p_concave == doctest::Approx(0.5));
    CHECK(c2.flags.even);

    Body off = make_vpolytope({{1.0}, {2.0}});
    CHECK_THROWS_AS(make_cone_power(off, 1.0), PreconditionError);
}

TEST_CASE("indicator density flags track the body") {
    Density cube = make_indicator(make_cube(2, 1.0));
    CHECK(cube.flags.radially_decreasing);
    CHECK(cube.flags.even);
    CHECK(cube.flags.continuous_at_origin);
    CHECK(!cube.unbounded_support);

    Density tri = make_indicator(make_vpolytope({{1, 0}, {2, 0}, {1, 1}}));
    CHECK(!tri.flags.radially_decreasing);
    CHECK(tri.flags.quasi_concave);
    CHECK(!tri.flags.even);

    // origin on the boundary: quasi-concave but not continuous there
    Density corner = make_indicator(make_simplex(2));
    CHECK(corner.flags.radially_decreasing);
    CHECK(!corner.flags.continuous_at_origin);
}

TEST_CASE("product densities") {
    Density g = make_product(make_gaussian(1), make_gaussian(1));
    Density g2 = make_gaussian(2);
    RandomStream rs(4, 0);
    for (int i = 0; i < 50; ++i) {
        Vec x = {4.0 * rs.next_unit() - 2.0, 4.0 * rs.next_unit() - 2.0};
        CHECK(g(x) == doctest::Approx(g2(x)).epsilon(1e-12));
    }
    CHECK(g.flags.log_concave);
    CHECK(g.flags.quasi_concave);
    CHECK(g.flags.radially_decreasing);
    CHECK(g.flags.even);
    CHECK(g.flags.sup_exact);
    CHECK(g.sup_value == doctest::Approx(1.0 / (2.0 * M_PI)));

    Density mixed = make_product(make_lebesgue(1), make_gaussian(2));
    CHECK(mixed.n == 3);
    CHECK(mixed({5.0, 0.0, 0.0}) == doctest::Approx(1.0 / (2.0 * M_PI)));
}

TEST_CASE("superlevel closed forms") {
    Density g = make_gaussian(2);
    Body top = superlevel(g, 1.0);
    CHECK(top.vertices.size() == 1);
    CHECK(norm2(top.vertices[0]) == doctest::Approx(0.0));

    Body half = superlevel(g, 0.5);
    CHECK(half.form == Body::Form::ball);
    CHECK(half.radius == doctest::Approx(std::sqrt(-2.0 * std::log(0.5))).epsilon(1e-12));

    Body sq = make_cube(2, 1.0);
    Density cone = make_cone_power(sq, 1.0);
    Body mid = superlevel(cone, 0.5);
    CHECK(exact_volume(mid) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(contains(mid, {0.49, 0.49}));
    CHECK(!contains(mid, {0.51, 0.0}));

    Body k = make_simplex(2);
    Density ind = make_indicator(k);
    Body lvl = superlevel(ind, 0.7);
    CHECK(exact_volume(lvl) == doctest::Approx(0.5).epsilon(1e-12));

    CHECK_THROWS_AS(superlevel(make_ring(0.01, 0.1), 0.5), PreconditionError);
    CHECK_THROWS_AS(superlevel(make_lebesgue(2), 0.5), UnsupportedError);
    CHECK_THROWS_AS(superlevel(make_wedge(0.3), 0.5), UnsupportedError);
    CHECK_THROWS_AS(superlevel(g, 1.5), PreconditionError);
}

TEST_CASE("superlevel membership matches the level inequality") {
    RandomStream rs(31, 0);
    Density densities[] = {make_gaussian(2), make_exp_norm(2),
                           make_cone_power(make_cube(2, 1.0), 2.0),
                           make_product(make_gaussian(1), make_exp_norm(1))};
    for (const Density& phi : densities) {
        for (int probe = 0; probe < 200; ++probe) {
            double t = 0.05 + 0.9 * rs.next_unit();
            Body level = superlevel(phi, t);
            Vec x = {3.0 * rs.next_unit() - 1.5, 3.0 * rs.next_unit() - 1.5};
            double margin = phi(x) - t * phi.sup_value;
            if (std::abs(margin) < 1e-7) continue;  // too close to the boundary
            CHECK(contains(level, x) == (margin > 0));
        }
    }
}

TEST_CASE("class audits confirm true flags") {
    Vec lo = {-2.0, -2.0}, hi = {2.0, 2.0};
    RandomStream rs(8, 0);

    auto g = audit_class(make_gaussian(2), DensityClass::radially_decreasing, 10000,
                         rs.substream(0), lo, hi);
    CHECK(g.consistent());
    CHECK(g.verdict() == "consistent");

    auto ge = audit_class(make_gaussian(2), DensityClass::even, 5000, rs.substream(1),
                          lo, hi);
    CHECK(ge.consistent());

    auto gq = audit_class(make_gaussian(2), DensityClass::quasi_concave, 5000,
                          rs.substream(2), lo, hi);
    CHECK(gq.consistent());

    auto w = audit_class(make_wedge(0.4), DensityClass::radially_decreasing, 10000,
                         rs.substream(3), lo, hi);
    CHECK(w.consistent());

    auto cp = audit_class(make_cone_power(make_cube(2, 1.0), 2.0),
                          DensityClass::p_concave, 10000, rs.substream(4), lo, hi);
    CHECK(cp.consistent());
}

TEST_CASE("class audits catch the ring violations") {
    Vec lo = {-2.0, -2.0}, hi = {2.0, 2.0};
    Density ring = make_ring(0.01, 0.1);
    RandomStream rs(9, 0);

    auto rad = audit_class(ring, DensityClass::radially_decreasing, 20000,
                           rs.substream(0), lo, hi);
    CHECK(!rad.consistent());
    CHECK(rad.verdict() == "violated");
    // witnesses start on the outer shell and scale into the gap
    for (const auto& wit : rad.witnesses) {
        CHECK(norm2(wit.x) >= 2.0 - 0.01 - 1e-12);
        CHECK(ring(wit.x) == 1.0);
        CHECK(ring(scaled(wit.x, wit.t)) == 0.0);
    }

    auto qc = audit_class(ring, DensityClass::quasi_concave, 20000, rs.substream(1),
                          lo, hi);
    CHECK(!qc.consistent());
}

TEST_CASE("restricted densities") {
    Density g = make_gaussian(2);
    SubspaceSpec fix_x(2, {0});
    Density slice = restrict_density(g, fix_x, {0.5});
    CHECK(slice.n == 1);
    CHECK(slice({1.0}) ==
          doctest::Approx(g({0.5, 1.0})).epsilon(1e-12));
    CHECK(slice.flags.quasi_concave);
    CHECK(!slice.flags.radially_decreasing);
    CHECK(!slice.flags.sup_exact);
    CHECK_THROWS_AS(superlevel(slice, 0.5), PreconditionError);

    Density through_zero = restrict_density(g, fix_x, {0.0});
    CHECK(through_zero.flags.radially_decreasing);
    CHECK(through_zero.flags.even);

    Density ind = make_indicator(make_cube(2, 1.0));
    Density strip = restrict_density(ind, fix_x, {0.25});
    CHECK(strip({0.9}) == 1.0);
    CHECK(strip({1.1}) == 0.0);
    REQUIRE(strip.support_bound != nullptr);
    Vec blo, bhi;
    bounding_box(*strip.support_bound, blo, bhi);
    CHECK(blo[0] == doctest::Approx(-1.0));
    CHECK(bhi[0] == doctest::Approx(1.0));
}

TEST_CASE("pointwise products") {
    Density g = make_gaussian(2);
    Density l = make_lebesgue(2);
    Density prod = pointwise_product(g, l);
    CHECK(prod({0.3, -0.4}) == doctest::Approx(g({0.3, -0.4})).epsilon(1e-12));
    CHECK(prod.flags.log_concave);

    Density ind = make_indicator(make_cube(2, 0.5));
    Density cut = pointwise_product(g, ind);
    CHECK(cut({0.2, 0.2}) == doctest::Approx(g({0.2, 0.2})));
    CHECK(cut({0.8, 0.0}) == 0.0);
    CHECK(!cut.unbounded_support);
}

TEST_CASE("density spec parsing") {
    Density g = make_density("gaussian", 3);
    CHECK(g.n == 3);
    Density r = make_density("ring:eps=0.01,delta=0.1", 2);
    CHECK(r({0.05, 0.0}) == 1.0);
    Density w = make_density("wedge:theta=0.5", 2);
    CHECK(w({1.0, 0.0}) == 1.0);
    Density p = make_density("lebesgue|gaussian:split=1", 2);
    CHECK(p.n == 2);
    CHECK(p({9.0, 0.0}) == doctest::Approx(1.0 / std::sqrt(2.0 * M_PI)));
    Density p2 = make_density("product:gaussian|gaussian:split=1", 2);
    CHECK(p2({0.0, 0.0}) == doctest::Approx(1.0 / (2.0 * M_PI)));

    BodyLoader loader = [](const std::string& name) {
        if (name == "sq") return make_cube(2, 1.0);
        throw ParseError("no such body: " + name);
    };
    Density ind = make_density("indicator:@sq", 2, loader);
    CHECK(ind({0.5, 0.5}) == 1.0);
    Density cone = make_density("cone:@sq,r=2", 2, loader);
    CHECK(cone({0.0, 0.0}) == doctest::Approx(1.0));

    CHECK_THROWS_AS(make_density("nonsense", 2), ParseError);
    CHECK_THROWS_AS(make_density("ring:eps=0.01", 2), ParseError);
    CHECK_THROWS_AS(make_density("ring:eps=0.01,delta=0.1", 3), DimensionError);
    CHECK_THROWS_AS(make_density("lebesgue|gaussian:split=5", 2), ParseError);
    CHECK_THROWS_AS(make_density("indicator:@sq", 2), ParseError);
}
