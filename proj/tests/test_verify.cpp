#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <optional>

#include "rslab/verify.hpp"

using namespace rslab;

namespace {

IntegrateConfig quick(std::uint64_t seed = 31) {
    IntegrateConfig cfg;
    cfg.seed = seed;
    cfg.n_samples = 40000;
    return cfg;
}

Body tri2() { return make_simplex(2); }

// independently computed reference values
const double kGammaHex = 0.36849253273889426;   // gaussian mass of T - T
const double kGamma2T = 0.17753615660951955;    // gaussian mass of 2T
const double kExpMass1 = 1.2642411176571153;    // exp(-|x|) over [-1, 1]
const double kGaussMass1 = 0.6826894921370859;  // standard normal over [-1, 1]
const double kGaussSqHalf = 0.14663149630841185;  // gaussian_2 over [-1/2, 1/2]^2

Density lying_increasing() {
    Density d;
    d.n = 1;
    d.kind = Density::Kind::custom;
    d.eval = [](const Vec& x) { return std::fabs(x[0]); };
    d.flags.radially_decreasing = true;  // deliberately wrong
    d.sup_value = 10.0;
    d.unbounded_support = true;
    d.spec = "liar";
    return d;
}

}  // namespace

TEST_CASE("alpha constants match the closed form") {
    for (int n = 1; n <= 6; ++n) {
        for (double p : {1.0 / 3.0, 0.5, 1.0, 2.0}) {
            for (double q : {0.0, 1.0}) {
                auto [closed, quad] = alpha_constant(n, p, q);
                CHECK(std::fabs(closed - quad) <= 1e-8);
            }
        }
    }
    CHECK(alpha_constant(2, 1.0, 0.0).first == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(alpha_constant(1, 2.0, 0.0).first == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    // inverse binomial identity
    for (int n = 2; n <= 6; ++n)
        for (int k = 1; k < n; ++k)
            CHECK(alpha_constant(n - k, 1.0 / k, 0.0).first * binomial(n, k) ==
                  doctest::Approx(1.0).epsilon(1e-10));
    // splitting identity in n and q
    auto a30 = alpha_constant(3, 0.5, 0.0);
    auto a31 = alpha_constant(3, 0.5, 1.0);
    auto a40 = alpha_constant(4, 0.5, 0.0);
    CHECK(a30.first == doctest::Approx(a31.first + a40.first).epsilon(1e-12));
    CHECK_THROWS_AS(alpha_constant(0, 1.0, 0.0), PreconditionError);
    CHECK_THROWS_AS(alpha_constant(1, -1.0, 0.0), PreconditionError);
}

TEST_CASE("kernel lemma: constants give equality, exponentials a gap") {
    Density flat = make_lebesgue(1);
    for (int n = 1; n <= 4; ++n) {
        for (int m = 1; m <= 4; ++m) {
            IneqReport rep = check_lemma_f(flat, n, m, 1.0);
            CHECK(rep.verdict == Verdict::equality);
            CHECK(std::fabs(rep.lhs.value - rep.rhs.value) <= 1e-12);
        }
    }
    IneqReport r32 = check_lemma_f(flat, 3, 2, 2.0);
    CHECK(r32.verdict == Verdict::equality);
    CHECK(r32.lhs.value == doctest::Approx(0.2).epsilon(1e-12));

    IneqReport rexp = check_lemma_f(make_exp_norm(1), 1, 1, 1.0);
    CHECK(rexp.verdict == Verdict::holds);
    CHECK(rexp.lhs.value == doctest::Approx(std::exp(-1.0)).epsilon(1e-10));
    CHECK(rexp.rhs.value ==
          doctest::Approx(0.5 * (1.0 - std::exp(-1.0))).epsilon(1e-10));
    CHECK(rexp.lhs.value - rexp.rhs.value > 1e-3);

    CHECK(check_lemma_f(lying_increasing(), 1, 1, 1.0).verdict ==
          Verdict::hypothesis_failed);
    CHECK_THROWS_AS(check_lemma_f(flat, 0, 1, 1.0), PreconditionError);
    CHECK_THROWS_AS(check_lemma_f(flat, 1, 1, -2.0), PreconditionError);
    CHECK_THROWS_AS(check_lemma_f(make_lebesgue(2), 1, 1, 1.0), DimensionError);
}

TEST_CASE("difference body: classical simplex constants") {
    IntegrateConfig cfg = quick();
    double factorial = 1.0;
    for (int n = 1; n <= 3; ++n) {
        factorial *= n;
        IneqReport rep =
            verify_difference_body("classical", make_lebesgue(n), make_simplex(n), {}, cfg);
        CHECK(rep.verdict == Verdict::equality);
        CHECK(rep.constant == doctest::Approx(binomial(2 * n, n)));
        CHECK(std::fabs(rep.lhs.value - binomial(2 * n, n) / factorial) <= 1e-9);
        CHECK(std::fabs(rep.lhs.value - rep.rhs.value) <= 1e-9);
    }
}

TEST_CASE("difference body: radial variant is exact under lebesgue") {
    IneqReport rep =
        verify_difference_body("radial", make_lebesgue(2), tri2(), {}, quick());
    CHECK(rep.verdict == Verdict::equality);
    CHECK(rep.lhs.value == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(rep.rhs.value == doctest::Approx(3.0).epsilon(1e-12));
    for (const auto& a : rep.audits) CHECK(a.passed);
}

TEST_CASE("difference body: radial variant with the gaussian in one dimension") {
    IntegrateConfig cfg = quick(5);
    cfg.n_samples = 60000;
    Body seg = make_cube(1, 1.0);
    IneqReport rep = verify_difference_body("radial", make_gaussian(1), seg, {}, cfg);
    CHECK(rep.verdict == Verdict::holds);
    CHECK(rep.lhs.value == doctest::Approx(std::erf(std::sqrt(2.0))).epsilon(0.02));
    double avg = 0.0;
    for (const auto& kv : rep.metadata)
        if (kv.first == "avg_K") avg = std::stod(kv.second);
    CHECK(avg == doctest::Approx(0.609548422215397).epsilon(0.05));
}

TEST_CASE("difference body: reverse splits symmetric bodies from triangles") {
    IntegrateConfig cfg = quick();
    cfg.prefer = IntegrateConfig::Prefer::grid;
    IneqReport sq =
        verify_difference_body("reverse", make_gaussian(2), make_cube(2, 1.0), {}, cfg);
    CHECK(sq.verdict == Verdict::equality);
    CHECK(sq.lhs.value == doctest::Approx(sq.rhs.value).epsilon(1e-12));

    IneqReport tr = verify_difference_body("reverse", make_gaussian(2), tri2(), {}, cfg);
    CHECK(tr.verdict == Verdict::holds);
    CHECK(tr.lhs.value == doctest::Approx(kGamma2T).epsilon(0.02));
    CHECK(tr.rhs.value == doctest::Approx(kGammaHex).epsilon(0.02));
}

TEST_CASE("difference body: sup translate bound for the gaussian square") {
    IntegrateConfig cfg = quick(9);
    Body sq = make_cube(2, 0.5);
    IneqReport rep = verify_difference_body("sup_translate", make_gaussian(2), sq, {}, cfg);
    CHECK(rep.verdict == Verdict::holds);
    CHECK(rep.sup_on_rhs);
    CHECK(rep.rhs.value == doctest::Approx(6.0 * kGaussSqHalf).epsilon(0.05));
}

TEST_CASE("difference body: pair variant reduces to the classical bound") {
    // L = K turns the pair inequality into the classical one times vol(K)
    Body k = tri2();
    IneqReport rep = verify_difference_body("pair_KL", make_lebesgue(2), k,
                                            transform(k, -1.0, Vec{0.0, 0.0}), quick());
    CHECK(rep.verdict == Verdict::equality);
    // the intersection volume is sampled, so allow Monte Carlo noise
    CHECK(rep.lhs.value == doctest::Approx(3.0 * 0.5).epsilon(0.02));
}

TEST_CASE("difference body: lying density flags fail the audit") {
    Density liar;
    liar.n = 2;
    liar.kind = Density::Kind::custom;
    liar.eval = [](const Vec& x) { return std::hypot(x[0], x[1]); };
    liar.flags.radially_decreasing = true;
    liar.sup_value = 10.0;
    liar.unbounded_support = true;
    liar.spec = "liar2";
    IneqReport rep = verify_difference_body("radial", liar, tri2(), {}, quick());
    CHECK(rep.verdict == Verdict::hypothesis_failed);

    // honest flags that simply do not declare the class also gate out
    Density honest = liar;
    honest.flags.radially_decreasing = false;
    IneqReport rep2 = verify_difference_body("radial", honest, tri2(), {}, quick());
    CHECK(rep2.verdict == Verdict::hypothesis_failed);
    CHECK(rep2.audits.front().note.find("not declared") != std::string::npos);
}

TEST_CASE("difference body: unknown variant and dimension guards") {
    CHECK_THROWS_AS(verify_difference_body("nope", make_lebesgue(2), tri2(), {}, quick()),
                    PreconditionError);
    CHECK_THROWS_AS(
        verify_difference_body("classical", make_lebesgue(3), tri2(), {}, quick()),
        DimensionError);
    CHECK_THROWS_AS(
        verify_difference_body("classical", make_gaussian(2), tri2(), {}, quick()),
        PreconditionError);
}

TEST_CASE("shifted: lebesgue simplex at omega zero is the classical equality") {
    IneqReport rep =
        verify_shifted("quasi", make_lebesgue(2), tri2(), Vec{0.0, 0.0}, quick());
    CHECK(rep.verdict == Verdict::equality);
    CHECK(rep.lhs.value == doctest::Approx(3.0).epsilon(1e-9));
    CHECK(rep.rhs.value == doctest::Approx(3.0).epsilon(1e-9));
}

TEST_CASE("shifted: gaussian triangle pushed to omega (3,0)") {
    IntegrateConfig cfg = quick(13);
    IneqReport rq = verify_shifted("quasi", make_gaussian(2), tri2(), Vec{3.0, 0.0}, cfg);
    CHECK(rq.verdict == Verdict::holds);
    double w = 0.0;
    for (const auto& kv : rq.metadata)
        if (kv.first == "phi_omega_over_sup") w = std::stod(kv.second);
    CHECK(w == doctest::Approx(std::exp(-4.5)).epsilon(1e-9));

    IneqReport rr =
        verify_shifted("rad_decreasing", make_gaussian(2), tri2(), Vec{3.0, 0.0}, cfg);
    CHECK(rr.verdict == Verdict::holds);
    CHECK(rr.lhs.value <= rr.rhs.value);
}

TEST_CASE("shifted: question probe never claims a verdict") {
    IntegrateConfig cfg = quick(17);
    cfg.n_samples = 30000;
    IneqReport rep =
        verify_shifted("question_probe", make_gaussian(2), tri2(), Vec{4.0, 4.0}, cfg);
    CHECK(rep.verdict == Verdict::inconclusive);
    CHECK(rep.ratio < 1.05);
    CHECK(rep.note.find("no verdict") != std::string::npos);
}

TEST_CASE("ck: scripted classical equalities") {
    IntegrateConfig cfg = quick();
    Body seg = make_vpolytope({Vec{0.0}, Vec{1.0}});
    IneqReport r1 = verify_ck("classical_ck", make_lebesgue(1), seg, {}, cfg);
    CHECK(r1.verdict == Verdict::equality);
    CHECK(r1.lhs.value == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r1.rhs.value == doctest::Approx(1.0).epsilon(1e-12));

    IneqReport r2 = verify_ck("classical_conv", make_lebesgue(2), tri2(), {}, cfg);
    CHECK(r2.verdict == Verdict::equality);
    CHECK(r2.lhs.value == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(r2.rhs.value == doctest::Approx(2.0).epsilon(1e-12));

    IneqReport r3 = verify_ck("measure_ck", make_lebesgue(2), tri2(), {}, cfg);
    CHECK(r3.verdict == Verdict::equality);
    CHECK(r3.lhs.value == doctest::Approx(2.0 / 3.0).epsilon(1e-9));
    CHECK(r3.rhs.value == doctest::Approx(2.0 / 3.0).epsilon(1e-9));
    CHECK(r3.sup_converged);
}

TEST_CASE("ck: gaussian square stays below the interpolated sup bound") {
    IntegrateConfig cfg = quick(23);
    IneqReport rep = verify_ck("measure_ck", make_gaussian(2), make_cube(2, 0.5), {}, cfg);
    CHECK((rep.verdict == Verdict::holds || rep.verdict == Verdict::equality));
    CHECK(rep.lhs.value == doctest::Approx(kGaussSqHalf).epsilon(0.05));
}

TEST_CASE("ck: pair chain with L = -K collapses to the single-body bound") {
    Body k = tri2();
    IneqReport rep = verify_ck("pair_KL", make_lebesgue(2), k,
                               transform(k, -1.0, Vec{0.0, 0.0}), quick());
    CHECK((rep.verdict == Verdict::holds || rep.verdict == Verdict::equality));
    CHECK(rep.lhs.value <= rep.rhs.value + 1e-9);
}

TEST_CASE("ck: the origin must sit inside K") {
    Body shifted = translate(make_cube(2, 0.5), Vec{5.0, 5.0});
    CHECK_THROWS_AS(verify_ck("classical_ck", make_lebesgue(2), shifted, {}, quick()),
                    PreconditionError);
}

TEST_CASE("sections: classical square and triangle") {
    IntegrateConfig cfg = quick();
    SubspaceSpec hx(2, {0});
    IneqReport sq = verify_section_projection("classical", make_lebesgue(2),
                                              make_cube(2, 1.0), hx, {}, {}, cfg);
    CHECK(sq.verdict == Verdict::holds);
    CHECK(sq.lhs.value == doctest::Approx(4.0).epsilon(1e-9));
    CHECK(sq.rhs.value == doctest::Approx(8.0).epsilon(1e-9));

    IneqReport tr =
        verify_section_projection("classical", make_lebesgue(2), tri2(), hx, {}, {}, cfg);
    CHECK(tr.verdict == Verdict::equality);
    CHECK(tr.lhs.value == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(tr.rhs.value == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("sections: product density variants on the square") {
    IntegrateConfig cfg = quick(41);
    cfg.n_samples = 60000;
    SubspaceSpec hx(2, {0});
    Body sq = make_cube(2, 1.0);

    Density mixed = make_product(make_exp_norm(1), make_gaussian(1));
    IneqReport rm =
        verify_section_projection("product_mixed", mixed, sq, hx, {}, {}, cfg);
    CHECK(rm.verdict == Verdict::holds);
    CHECK(rm.ratio == doctest::Approx(0.5).epsilon(0.03));

    Density gg = make_product(make_gaussian(1), make_gaussian(1));
    IneqReport rq = verify_section_projection("product_quasi", gg, sq, hx, {}, {}, cfg);
    CHECK(rq.verdict == Verdict::holds);
    CHECK(rq.lhs.value == doctest::Approx(kGaussMass1 * kGaussMass1).epsilon(0.03));

    // the section factor (1 - |y|)+ is 1-concave, exponent r = 1
    Density pc = make_product(make_exp_norm(1), make_cone_power(make_cube(1, 1.0), 1.0));
    IneqReport rp = verify_section_projection("p_concave", pc, sq, hx, {}, 1, cfg);
    CHECK(rp.verdict == Verdict::holds);
    CHECK(rp.constant == doctest::Approx(3.0));
    CHECK(rp.lhs.value == doctest::Approx(kExpMass1).epsilon(0.03));
    CHECK(rp.rhs.value == doctest::Approx(3.0 * kExpMass1).epsilon(0.03));

    // projection containment is a hard hypothesis for the product variants
    Body off = translate(sq, Vec{0.0, 5.0});
    CHECK_THROWS_AS(
        verify_section_projection("product_mixed", mixed, off, hx, {}, {}, cfg),
        PreconditionError);
}

TEST_CASE("sections: max sections of the gaussian square") {
    IntegrateConfig cfg = quick(43);
    SubspaceSpec hx(2, {0});
    IneqReport rep = verify_section_projection("max_sections", make_gaussian(2),
                                               make_cube(2, 1.0), hx, {}, {}, cfg);
    CHECK(rep.verdict == Verdict::holds);
    const double side = kGaussMass1 / std::sqrt(2.0 * std::acos(-1.0));
    CHECK(rep.lhs.value == doctest::Approx(side * side).epsilon(1e-9));
}

TEST_CASE("sections: two coordinate subspaces of the gaussian cube") {
    IntegrateConfig cfg = quick(47);
    cfg.n_samples = 30000;
    SubspaceSpec e(3, {0, 1});
    SubspaceSpec h(3, {1, 2});
    IneqReport rep = verify_section_projection("two_subspace", make_gaussian(3),
                                               make_cube(3, 1.0), h, e, {}, cfg);
    CHECK((rep.verdict == Verdict::holds || rep.verdict == Verdict::equality ||
           rep.verdict == Verdict::inconclusive));
    CHECK(rep.lhs.value <= rep.rhs.value * 1.05);
    CHECK(rep.constant == doctest::Approx(binomial(2, 1)));

    // E-perp outside H is rejected
    SubspaceSpec bad(3, {0, 1});
    CHECK_THROWS_AS(verify_section_projection("two_subspace", make_gaussian(3),
                                              make_cube(3, 1.0), bad, e, {}, cfg),
                    PreconditionError);
}

TEST_CASE("functional: delta difference of the simplex indicator") {
    IneqReport rep = verify_functional("delta_diff", qc_indicator(tri2()), {}, {}, {}, {},
                                       quick());
    CHECK(rep.verdict == Verdict::equality);
    CHECK(rep.lhs.value == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(rep.rhs.value == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("functional: projection-section bound matches the classical report") {
    IntegrateConfig cfg = quick();
    SubspaceSpec hx(2, {0});
    Body sq = make_cube(2, 1.0);
    IneqReport fn = verify_functional("proj_sect", qc_indicator(sq), {}, {}, hx, {}, cfg);
    IneqReport cl =
        verify_section_projection("classical", make_lebesgue(2), sq, hx, {}, {}, cfg);
    CHECK(fn.verdict == Verdict::holds);
    CHECK(fn.lhs.value == doctest::Approx(cl.lhs.value).epsilon(1e-9));
    CHECK(fn.rhs.value == doctest::Approx(cl.rhs.value).epsilon(1e-9));
}

TEST_CASE("functional: interpolation family at the simplex indicator") {
    IneqReport rep =
        verify_functional("ck_family", qc_indicator(tri2()), {}, {}, {}, {}, quick());
    CHECK(rep.verdict == Verdict::equality);
    for (const auto& kv : rep.metadata) {
        if (kv.first == "interp_leg") CHECK(kv.second == "equality");
        if (kv.first == "conv_leg") CHECK(kv.second == "equality");
    }
    CHECK(rep.sup_converged);
}

TEST_CASE("functional: prop31 cone profile keeps the scripted equality") {
    const int m = 64;
    QCFunction f = qc_approximation(make_cone_power(make_cube(1, 1.0), 1.0), m);
    IneqReport rep = verify_functional("prop31", f, {}, {}, {}, 1.0, quick());
    CHECK(rep.verdict == Verdict::equality);
    CHECK(rep.lhs.value == doctest::Approx((m - 1.0) / m).epsilon(1e-12));
    CHECK(rep.rhs.value == doctest::Approx((m - 1.0) / m).epsilon(1e-12));
    CHECK(rep.constant == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("functional: prop31 with a radially decreasing weight") {
    IntegrateConfig cfg = quick(53);
    cfg.n_samples = 60000;
    QCFunction f = qc_approximation(make_cone_power(make_cube(1, 1.0), 1.0), 32);
    IneqReport rep =
        verify_functional("prop31", f, make_gaussian(1), {}, {}, 1.0, cfg);
    CHECK((rep.verdict == Verdict::holds || rep.verdict == Verdict::equality));
    bool saw_specialization = false;
    for (const auto& kv : rep.metadata)
        if (kv.first == "specialization_rad_dec_g") {
            saw_specialization = true;
            CHECK(kv.second.find("violated") == std::string::npos);
        }
    CHECK(saw_specialization);
}

TEST_CASE("functional: cor32 drops the peak-at-origin hypothesis") {
    // step pyramid peaked at 1/2, nowhere near the origin requirement
    std::vector<double> levels{0.25, 0.5, 0.75, 1.0};
    std::vector<Body> layers;
    for (double t : levels) {
        double rad = 1.25 - t;
        layers.push_back(make_vpolytope({Vec{0.5 - rad}, Vec{0.5 + rad}}));
    }
    QCFunction f = make_qc_function(1, 1.0, levels, layers);
    IntegrateConfig cfg = quick(59);
    IneqReport rep = verify_functional("cor32", f, {}, make_gaussian(1), {}, 1.0, cfg);
    CHECK((rep.verdict == Verdict::holds || rep.verdict == Verdict::equality));
    for (const auto& a : rep.audits) CHECK(a.passed);
}

TEST_CASE("functional: weighted projection bound on the square indicator") {
    IntegrateConfig cfg = quick(61);
    SubspaceSpec hx(2, {0});
    IneqReport rep = verify_functional("proj_sect_weighted", qc_indicator(make_cube(2, 1.0)),
                                       make_gaussian(1), {}, hx, {}, cfg);
    CHECK(rep.verdict == Verdict::holds);
    CHECK(rep.ratio == doctest::Approx(0.5).epsilon(0.05));
}

TEST_CASE("functional: missing inputs are rejected") {
    QCFunction f = qc_indicator(tri2());
    CHECK_THROWS_AS(verify_functional("proj_sect", f, {}, {}, {}, {}, quick()),
                    PreconditionError);
    CHECK_THROWS_AS(verify_functional("prop31", f, {}, {}, {}, {}, quick()),
                    PreconditionError);
    CHECK_THROWS_AS(verify_functional("nope", f, {}, {}, {}, {}, quick()),
                    PreconditionError);
}

TEST_CASE("section measure: exact slices of polytopes") {
    IntegrateConfig cfg = quick();
    Body sq = make_cube(2, 1.0);
    SubspaceSpec hx(2, {0});
    Estimate s = section_measure(make_lebesgue(2), sq, hx, Vec{0.5}, cfg);
    CHECK(s.value == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(s.std_error == 0.0);
    CHECK(section_measure(make_lebesgue(2), sq, hx, Vec{5.0}, cfg).value == 0.0);

    Estimate g = section_measure(make_gaussian(2), sq, hx, Vec{0.5}, cfg);
    const double expect = std::exp(-0.125) * kGaussMass1 / std::sqrt(2.0 * std::acos(-1.0));
    CHECK(g.value == doctest::Approx(expect).epsilon(1e-9));
}

TEST_CASE("verdict rule arithmetic") {
    Estimate a = Estimate{};
    a.value = 1.0;
    Estimate b = a;
    CHECK(decide_verdict(a, b) == Verdict::equality);
    b.value = 1.0 + 5e-11;
    CHECK(decide_verdict(a, b) == Verdict::equality);  // inside the floor band
    b.value = 2.0;
    CHECK(decide_verdict(a, b) == Verdict::holds);
    CHECK(decide_verdict(b, a) == Verdict::violated);
    CHECK(decide_verdict(b, a, false) == Verdict::inconclusive);
    // wide errors swallow the difference
    a.std_error = 1.0;
    CHECK(decide_verdict(b, a) == Verdict::equality);
}

TEST_CASE("counterexample: ring breaks the unrestricted sup bound") {
    IntegrateConfig cfg = quick(67);
    CounterexampleParams params;
    params.eps = 1e-5;
    IneqReport rep = run_counterexample("ring", params, cfg);
    CHECK(rep.verdict == Verdict::violated);
    CHECK(rep.sup_converged);
    const double eps = 1e-5;
    const double delta = std::sqrt(eps) / 100.0;
    const double pi = std::acos(-1.0);
    const double closed = 4.0 * pi * eps + pi * (delta * delta - eps * eps);
    CHECK(rep.lhs.value == doctest::Approx(closed).epsilon(1e-10));
    CHECK(rep.lhs.value > rep.rhs.value);
    double dist = 0.0;
    for (const auto& kv : rep.metadata)
        if (kv.first == "sup_center_distance") dist = std::stod(kv.second);
    CHECK(dist == doctest::Approx(std::sqrt(3.0)).epsilon(0.05));

    params.eps = 1e-3;
    CHECK_THROWS_AS(run_counterexample("ring", params, cfg), PreconditionError);
}

TEST_CASE("counterexample: wedge flattens the difference mass") {
    IntegrateConfig cfg = quick(71);
    cfg.n_samples = 150000;
    IneqReport rep = run_counterexample("wedge", CounterexampleParams{}, cfg);
    CHECK(rep.verdict == Verdict::holds);
    const double tans[3] = {std::tan(0.5), std::tan(0.1), std::tan(0.02)};
    const char* keys[3] = {"mu_diff_theta_0.5", "mu_diff_theta_0.1", "mu_diff_theta_0.02"};
    for (int i = 0; i < 3; ++i) {
        bool seen = false;
        for (const auto& kv : rep.metadata)
            if (kv.first == keys[i]) {
                seen = true;
                CHECK(std::stod(kv.second) == doctest::Approx(tans[i]).epsilon(0.25));
            }
        CHECK(seen);
    }
    for (const auto& kv : rep.metadata)
        if (kv.first.rfind("sup_theta_", 0) == 0)
            CHECK(std::stod(kv.second) == doctest::Approx(1.0).epsilon(0.05));
    for (const auto& a : rep.audits) CHECK(a.passed);
}

TEST_CASE("counterexample: parallelogram ratio escapes the product bound") {
    IntegrateConfig cfg = quick(73);
    cfg.n_samples = 150000;
    IneqReport rep = run_counterexample("parallelogram", CounterexampleParams{}, cfg);
    CHECK(rep.verdict == Verdict::holds);
    const double expect[3] = {0.506000, 0.602747, 1.869230};
    const char* keys[3] = {"ratio_alpha_0.3", "ratio_alpha_0.9", "ratio_alpha_1.4"};
    for (int i = 0; i < 3; ++i) {
        bool seen = false;
        for (const auto& kv : rep.metadata)
            if (kv.first == keys[i]) {
                seen = true;
                CHECK(std::stod(kv.second) == doctest::Approx(expect[i]).epsilon(0.06));
            }
        CHECK(seen);
    }
    for (const auto& a : rep.audits) CHECK(a.passed);
    CHECK_THROWS_AS(run_counterexample("nope", CounterexampleParams{}, cfg),
                    PreconditionError);
}
