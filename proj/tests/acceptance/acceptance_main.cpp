// Acceptance gate: every numbered criterion prints exactly one PASS/FAIL line.
// Exit code 0 only when all criteria pass.
#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>
#include <vector>

#include "rslab/io.hpp"
#include "rslab/rng.hpp"
#include "rslab/verify.hpp"

using namespace rslab;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

IntegrateConfig cfg200k() {
    IntegrateConfig cfg;
    cfg.seed = 11;
    cfg.n_samples = 200000;
    return cfg;
}

double meta_value(const IneqReport& rep, const std::string& key, double fallback = -1.0) {
    for (const auto& kv : rep.metadata)
        if (kv.first == key) return std::stod(kv.second);
    return fallback;
}

Body recentered_random(int n, int n_vertices, std::uint64_t seed) {
    Body raw = make_random_polytope(n, n_vertices, seed);
    return translate(raw, scaled(interior_point(raw), -1.0));
}

// ------------------------------------------------------------- criteria ----

Outcome criterion1() {
    const double expect[3] = {2.0, 6.0, 20.0};
    double worst = 0.0;
    for (int n = 1; n <= 3; ++n) {
        IneqReport rep =
            verify_difference_body("classical", make_lebesgue(n), make_simplex(n), {},
                                   cfg200k());
        if (rep.verdict != Verdict::equality)
            return {false, "n=" + std::to_string(n) + " verdict " +
                               verdict_name(rep.verdict)};
        // lhs is vol(T-T), rhs is binom * vol(T); their quotient is the target
        double ratio = rep.lhs.value / (rep.rhs.value / rep.constant);
        worst = std::max(worst, std::fabs(ratio - expect[n - 1]));
    }
    return {worst <= 1e-9, "max error " + fmt(worst)};
}

Outcome criterion2() {
    IntegrateConfig cfg = cfg200k();
    int violated = 0, bad = 0, total = 0;
    for (int n : {2, 3}) {
        int n_vertices = n == 2 ? 8 : 10;
        for (int i = 0; i < 15; ++i) {
            Body k = recentered_random(n, n_vertices, cfg.seed * 1000003ull +
                                                          std::uint64_t(n) * 100 + i);
            for (const char* spec : {"lebesgue", "gaussian", "exp-norm"}) {
                Density phi = make_density(spec, n);
                for (const char* fam : {"radial", "measure_ck"}) {
                    IneqReport rep =
                        std::string(fam) == "radial"
                            ? verify_difference_body("radial", phi, k, {}, cfg)
                            : verify_ck("measure_ck", phi, k, {}, cfg);
                    ++total;
                    if (rep.verdict == Verdict::violated) ++violated;
                    if (rep.verdict != Verdict::holds && rep.verdict != Verdict::equality)
                        ++bad;
                }
            }
        }
    }
    return {violated == 0 && bad == 0,
            std::to_string(total) + " checks, " + std::to_string(violated) + " violated"};
}

Outcome criterion3() {
    IntegrateConfig mc = cfg200k();
    // squares and cubes: Monte Carlo equality within the 3 sigma band
    for (int n : {2, 3}) {
        IneqReport rep =
            verify_difference_body("reverse", make_gaussian(n), make_cube(n, 1.0), {}, mc);
        if (rep.verdict != Verdict::equality)
            return {false, "cube n=" + std::to_string(n) + " verdict " +
                               verdict_name(rep.verdict)};
    }
    // the same check on a deterministic grid is exact for boxes
    for (int n : {2, 3}) {
        IntegrateConfig grid = cfg200k();
        grid.prefer = IntegrateConfig::Prefer::grid;
        grid.grid_res = n == 2 ? 512 : 96;
        IneqReport rep = verify_difference_body("reverse", make_gaussian(n),
                                                make_cube(n, 1.0), {}, grid);
        if (rep.lhs.value != rep.rhs.value)
            return {false, "grid cube n=" + std::to_string(n) + " not exact"};
    }
    IneqReport tri =
        verify_difference_body("reverse", make_gaussian(2), make_simplex(2), {}, mc);
    double sigma = std::hypot(tri.lhs.std_error, tri.rhs.std_error);
    double gap = tri.rhs.value - tri.lhs.value;
    bool ok = tri.verdict == Verdict::holds && gap >= 5.0 * sigma &&
              std::fabs(gap - 0.19095637612937472) <= 0.02;
    return {ok, "triangle gap " + fmt(gap) + " vs 5 sigma " + fmt(5.0 * sigma)};
}

Outcome criterion4() {
    CounterexampleParams params;
    params.eps = 1e-5;
    IneqReport rep = run_counterexample("ring", params, cfg200k());
    const double eps = params.eps;
    const double delta = std::sqrt(eps) / 100.0;
    const double pi = std::acos(-1.0);
    const double closed = 4.0 * pi * eps + pi * (delta * delta - eps * eps);
    double rel = std::fabs(rep.lhs.value - closed) / closed;
    bool ok = rel <= 0.005 && rep.rhs.value < rep.lhs.value &&
              rep.verdict == Verdict::violated && rep.sup_converged;
    return {ok, "lhs err " + fmt(rel) + ", verdict " + verdict_name(rep.verdict) +
                    (rep.sup_converged ? ", sup converged" : ", sup NOT converged")};
}

Outcome criterion5() {
    IneqReport rep = run_counterexample("parallelogram", CounterexampleParams{}, cfg200k());
    double r1 = meta_value(rep, "ratio_alpha_0.3");
    double r2 = meta_value(rep, "ratio_alpha_0.9");
    double r3 = meta_value(rep, "ratio_alpha_1.4");
    bool ok = r1 > 0.0 && r1 < r2 && r2 < r3 && r3 > 2.0 * r1;
    return {ok, "ratios " + fmt(r1) + " -> " + fmt(r2) + " -> " + fmt(r3)};
}

Outcome criterion6() {
    IneqReport rep = run_counterexample("wedge", CounterexampleParams{}, cfg200k());
    double m1 = meta_value(rep, "mu_diff_theta_0.5");
    double m2 = meta_value(rep, "mu_diff_theta_0.1");
    double m3 = meta_value(rep, "mu_diff_theta_0.02");
    bool mono = m1 > m2 && m2 > m3 && m3 < 0.10 * m1;
    bool sup_ok = true;
    for (const auto& kv : rep.metadata)
        if (kv.first.rfind("sup_theta_", 0) == 0) {
            double s = std::stod(kv.second);
            if (std::fabs(s - 1.0) > 0.05) sup_ok = false;
        }
    return {mono && sup_ok, "mass " + fmt(m1) + " -> " + fmt(m2) + " -> " + fmt(m3) +
                                (sup_ok ? ", sups within 5%" : ", sup out of band")};
}

Outcome criterion7() {
    double worst = 0.0;
    for (int n = 1; n <= 6; ++n)
        for (double p : {1.0 / 3.0, 0.5, 1.0, 2.0})
            for (double q : {0.0, 1.0}) {
                auto [closed, quad] = alpha_constant(n, p, q);
                worst = std::max(worst, std::fabs(closed - quad));
            }
    double worst_id = 0.0;
    for (int n = 2; n <= 6; ++n)
        for (int k = 1; k < n; ++k) {
            double a = alpha_constant(n - k, 1.0 / k, 0.0).first;
            worst_id = std::max(worst_id, std::fabs(a * binomial(n, k) - 1.0));
        }
    return {worst <= 1e-8 && worst_id <= 1e-8,
            "grid err " + fmt(worst) + ", identity err " + fmt(worst_id)};
}

Outcome criterion8() {
    Density flat = make_lebesgue(1);
    double worst = 0.0;
    for (int n = 1; n <= 4; ++n)
        for (int m = 1; m <= 4; ++m) {
            IneqReport rep = check_lemma_f(flat, n, m, 1.0);
            worst = std::max(worst, std::fabs(rep.lhs.value - rep.rhs.value));
            if (rep.verdict != Verdict::equality)
                return {false, "constant case not equality"};
        }
    IneqReport rexp = check_lemma_f(make_exp_norm(1), 1, 1, 1.0);
    double gap = rexp.lhs.value - rexp.rhs.value;
    return {worst <= 1e-12 && gap > 1e-3,
            "equality err " + fmt(worst) + ", exp gap " + fmt(gap)};
}

Outcome criterion9() {
    IntegrateConfig cfg = cfg200k();
    std::vector<Body> bodies;
    bodies.push_back(make_simplex(2));
    bodies.push_back(transform(make_simplex(2), 1.3, Vec{-0.15, -0.1}));
    bodies.push_back(make_cube(2, 1.0));
    bodies.push_back(translate(make_cube(2, 0.6), Vec{0.3, 0.2}));
    double worst = 0.0;
    for (const Body& k : bodies) {
        double exact = exact_volume(ck_body(k));
        Estimate integ = ck_integral(make_lebesgue(2), k, cfg);
        double tol = std::max(3.0 * integ.std_error, 1e-9);
        double err = std::fabs(exact - integ.value);
        worst = std::max(worst, err);
        if (err > tol) return {false, "ck body volume off by " + fmt(err)};
    }
    Estimate tri = ck_integral(make_lebesgue(2), make_simplex(2), cfg);
    double eq_err = std::fabs(tri.value - (4.0 / 3.0) * 0.5);
    return {eq_err <= std::max(3.0 * tri.std_error, 1e-9),
            "cross err " + fmt(worst) + ", simplex value err " + fmt(eq_err)};
}

Outcome criterion10() {
    IntegrateConfig cfg = cfg200k();
    IneqReport dd =
        verify_functional("delta_diff", qc_indicator(make_simplex(2)), {}, {}, {}, {}, cfg);
    if (dd.verdict != Verdict::equality || std::fabs(dd.lhs.value - 3.0) > 1e-9)
        return {false, "delta_diff at the simplex: " + verdict_name(dd.verdict)};
    double worst = 0.0;
    for (int i = 0; i < 10; ++i) {
        int n = i < 5 ? 2 : 3;
        Body k = recentered_random(n, n == 2 ? 6 : 8, 500 + std::uint64_t(i));
        std::vector<int> idx;
        for (int j = 0; j < n - 1; ++j) idx.push_back(j);
        SubspaceSpec h(n, idx);
        IneqReport fn = verify_functional("proj_sect", qc_indicator(k), {}, {}, h, {}, cfg);
        IneqReport cl =
            verify_section_projection("classical", make_lebesgue(n), k, h, {}, {}, cfg);
        double tol_l = std::max(3.0 * std::hypot(fn.lhs.std_error, cl.lhs.std_error), 1e-9);
        double tol_r = std::max(3.0 * std::hypot(fn.rhs.std_error, cl.rhs.std_error), 1e-9);
        double dl = std::fabs(fn.lhs.value - cl.lhs.value);
        double dr = std::fabs(fn.rhs.value - cl.rhs.value);
        worst = std::max({worst, dl, dr});
        if (dl > tol_l || dr > tol_r)
            return {false, "reduction mismatch " + fmt(std::max(dl, dr)) + " on body " +
                               std::to_string(i)};
    }
    return {true, "equality at simplex, reductions agree (max dev " + fmt(worst) + ")"};
}

Outcome criterion11() {
    const std::vector<double> levels = {0.25, 0.5, 0.75, 1.0};
    int mismatches = 0, probes_done = 0;
    for (int idx = 0; idx < 10; ++idx) {
        Body k = recentered_random(2, 6, 900 + std::uint64_t(idx));
        std::vector<Body> layers;
        for (double t : levels)
            layers.push_back(transform(k, 1.25 - t, Vec{0.0, 0.0}));
        QCFunction f = make_qc_function(2, 1.0, levels, layers);

        const double theta = 0.3;
        const DiffMode modes[3] = {DiffMode::full, DiffMode::split, DiffMode::symmetrized};
        for (int mi = 0; mi < 3; ++mi) {
            QCFunction g = difference_function(f, modes[mi], theta);
            Vec lo, hi;
            bounding_box(g.support(), lo, hi);
            RandomStream rng(4242, std::uint64_t(idx) * 8 + std::uint64_t(mi));
            for (int p = 0; p < 500; ++p) {
                size_t j = size_t(rng.next_u64() % levels.size());
                Vec x(2);
                for (int d = 0; d < 2; ++d) {
                    double pad = 0.1 * (hi[d] - lo[d]);
                    x[d] = lo[d] - pad + (hi[d] - lo[d] + 2 * pad) * rng.next_unit();
                }
                bool via_fn = g(x) >= levels[j] * g.sup_value - 1e-12;
                const Body& lj = f.layers[j];
                Body direct;
                if (modes[mi] == DiffMode::full)
                    direct = minkowski_sum(lj, transform(lj, -1.0, Vec{0.0, 0.0}));
                else if (modes[mi] == DiffMode::split)
                    direct = minkowski_sum(transform(lj, 1.0 - theta, Vec{0.0, 0.0}),
                                           transform(lj, -theta, Vec{0.0, 0.0}));
                else
                    direct = conv_union(lj, transform(lj, -1.0, Vec{0.0, 0.0}));
                bool via_body = contains(direct, x);
                if (via_fn != via_body) ++mismatches;
                ++probes_done;
            }
        }
    }
    return {mismatches == 0, std::to_string(probes_done) + " probes, " +
                                 std::to_string(mismatches) + " mismatches"};
}

Outcome criterion12() {
    auto sweep = [](int threads, const char* out) {
        std::string cmd = "RSLAB_THREADS=" + std::to_string(threads) +
                          " ./rslab suite soundness-sweep --seed 11 --out " + out +
                          " >/dev/null 2>&1";
        int status = std::system(cmd.c_str());
        return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    };
    if (sweep(1, "acc_sweep_t1.csv") != 0) return {false, "single-thread run failed"};
    if (sweep(4, "acc_sweep_t4.csv") != 0) return {false, "four-thread run failed"};
    auto strip = [](const std::string& text) {
        std::string out;
        size_t pos = 0;
        while (pos < text.size()) {
            size_t end = text.find('\n', pos);
            if (end == std::string::npos) end = text.size();
            if (text[pos] != '#') out += text.substr(pos, end - pos + 1);
            pos = end + 1;
        }
        return out;
    };
    std::string a = strip(read_file("acc_sweep_t1.csv"));
    std::string b = strip(read_file("acc_sweep_t4.csv"));
    std::remove("acc_sweep_t1.csv");
    std::remove("acc_sweep_t4.csv");
    if (a != b) return {false, "outputs differ between thread counts"};
    if (a.find("violated") != std::string::npos) return {false, "sweep contains violated"};
    return {true, "byte-identical across RSLAB_THREADS 1 and 4"};
}

}  // namespace

int main() {
    struct Entry {
        const char* name;
        double budget_s;
        std::function<Outcome()> run;
    };
    const Entry entries[] = {
        {"simplex classical constants 2/6/20", 1, criterion1},
        {"soundness sweep, zero violated", 600, criterion2},
        {"reverse inequality: cubes tie, triangle gaps", 60, criterion3},
        {"ring scenario: closed form and violation", 120, criterion4},
        {"parallelogram ratios increase past 2x", 60, criterion5},
        {"wedge mass decays, sups stay near vol", 60, criterion6},
        {"alpha constant grid and binomial identity", 1, criterion7},
        {"kernel lemma equality and exponential gap", 1, criterion8},
        {"interpolation body volume cross-validation", 60, criterion9},
        {"functional reductions match the set forms", 120, criterion10},
        {"superlevel identities, 15000 probes", 60, criterion11},
        {"determinism across thread counts", 1200, criterion12},
    };

    int failures = 0;
    for (size_t i = 0; i < std::size(entries); ++i) {
        auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = entries[i].run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                                    start)
                          .count();
        if (secs > entries[i].budget_s) {
            o.pass = false;
            o.detail += " [over time budget]";
        }
        if (!o.pass) ++failures;
        std::printf("[%s] criterion %2zu: %s (%s; %.2f s)\n", o.pass ? "PASS" : "FAIL",
                    i + 1, entries[i].name, o.detail.c_str(), secs);
        std::fflush(stdout);
    }
    return failures == 0 ? 0 : 1;
}
