// Command-line front end: single verifications, suites, parameter sweeps and
// the counterexample scenarios, with JSON/CSV report output.
#include <CLI11.hpp>

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>

#include "rslab/io.hpp"
#include "rslab/verify.hpp"

using namespace rslab;

namespace {

constexpr const char* kShorthandHelp =
    "Body shorthand: simplex:N | cube:N[:H] | ball:N[:R] | random:N:V:SEED | @file.json\n"
    "Density specs:  lebesgue | gaussian | exp-norm | ring:eps=E,delta=D |\n"
    "                wedge:theta=T | indicator:@body.json | cone:@body.json,r=R |\n"
    "                product:SPEC|SPEC:split=K\n"
    "Functions:      --fn @file.json (levels schema) or --fn indicator:<body shorthand>\n";

Body load_body(const std::string& text) {
    if (text.empty()) throw ParseError("empty body spec");
    if (text[0] == '@') return body_from_json(read_file(text.substr(1)));
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(item);
    auto want = [&](size_t lo, size_t hi) {
        if (parts.size() < lo || parts.size() > hi)
            throw ParseError("body spec '" + text + "': wrong number of fields");
    };
    try {
        const std::string& kind = parts[0];
        if (kind == "simplex") {
            want(2, 2);
            return make_simplex(std::stoi(parts[1]));
        }
        if (kind == "cube") {
            want(2, 3);
            double h = parts.size() == 3 ? std::stod(parts[2]) : 1.0;
            return make_cube(std::stoi(parts[1]), h);
        }
        if (kind == "ball") {
            want(2, 3);
            double r = parts.size() == 3 ? std::stod(parts[2]) : 1.0;
            return make_ball(std::stoi(parts[1]), r);
        }
        if (kind == "random") {
            want(4, 4);
            return make_random_polytope(std::stoi(parts[1]), std::stoi(parts[2]),
                                        std::stoull(parts[3]));
        }
    } catch (const std::invalid_argument&) {
        throw ParseError("body spec '" + text + "': expected numeric fields");
    } catch (const std::out_of_range&) {
        throw ParseError("body spec '" + text + "': numeric field out of range");
    }
    throw ParseError("body spec '" + text + "': unknown kind '" + parts[0] + "'");
}

BodyLoader file_loader() {
    return [](const std::string& ref) { return load_body(ref); };
}

std::vector<int> parse_index_list(const std::string& text) {
    std::vector<int> idx;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            idx.push_back(std::stoi(item));
        } catch (const std::exception&) {
            throw ParseError("subspace '" + text + "': expected comma-separated indices");
        }
    }
    if (idx.empty()) throw ParseError("subspace spec is empty");
    return idx;
}

Vec parse_vec_list(const std::string& text) {
    Vec v;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            v.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw ParseError("omega '" + text + "': expected comma-separated numbers");
        }
    }
    return v;
}

int threads_from_env() {
    int hw = int(std::thread::hardware_concurrency());
    if (hw < 1) hw = 1;
    const char* env = std::getenv("RSLAB_THREADS");
    if (!env || !*env) return hw;
    int t = std::atoi(env);
    if (t < 1) throw ParseError("RSLAB_THREADS must be a positive integer");
    return std::min(t, 64);
}

// shared integrator knobs; seed handled per command
struct CfgFlags {
    std::optional<std::int64_t> samples;
    std::optional<int> grid;
    std::optional<int> theta_order;
    std::optional<double> theta_min;
    std::optional<std::uint64_t> seed;
};

void add_cfg_flags(CLI::App* cmd, CfgFlags& f) {
    cmd->add_option("--samples", f.samples, "Monte Carlo sample budget per integral");
    cmd->add_option("--grid", f.grid, "grid resolution per axis for grid quadrature");
    cmd->add_option("--theta-order", f.theta_order, "quadrature order for theta integrals");
    cmd->add_option("--theta-min", f.theta_min, "lower theta cutoff for sup searches");
    cmd->add_option("--seed", f.seed, "RNG seed (required for sampling paths)");
}

IntegrateConfig build_cfg(const CfgFlags& f, bool seed_required) {
    IntegrateConfig cfg;
    if (f.seed)
        cfg.seed = *f.seed;
    else if (seed_required)
        throw ParseError("--seed is required: sampling paths have no wall-clock default");
    if (f.samples) cfg.n_samples = *f.samples;
    if (f.grid) cfg.grid_res = *f.grid;
    if (f.theta_order) cfg.theta_order = *f.theta_order;
    if (f.theta_min) cfg.theta_min = *f.theta_min;
    cfg.threads = threads_from_env();
    cfg.validate();
    return cfg;
}

struct Row {
    std::string family;
    std::string variant;
    std::string params;
    IneqReport rep;
    std::string expected;  // extra verdict treated as success, "" for none
};

int exit_code_for(const std::vector<Row>& rows) {
    for (const auto& r : rows)
        if (r.rep.verdict == Verdict::hypothesis_failed) return 3;
    for (const auto& r : rows) {
        std::string v = verdict_name(r.rep.verdict);
        if (v != "holds" && v != "equality" && v != r.expected) return 1;
    }
    return 0;
}

std::string timestamp_line() {
    std::time_t now = std::time(nullptr);
    char buf[64];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    return std::string("# generated: ") + buf + "\n";
}

std::string rows_to_csv(const std::vector<Row>& rows) {
    std::string out = timestamp_line() + csv_header();
    for (const auto& r : rows) out += csv_row(r.family, r.variant, r.params, r.rep);
    return out;
}

std::string rows_to_json(const std::vector<Row>& rows, const InputEcho& shared) {
    std::string out = "[\n";
    for (size_t i = 0; i < rows.size(); ++i) {
        InputEcho echo = shared;
        echo.add("params", rows[i].params);
        std::string one = report_to_json(rows[i].rep, echo);
        while (!one.empty() && one.back() == '\n') one.pop_back();
        out += one;
        out += (i + 1 < rows.size()) ? ",\n" : "\n";
    }
    out += "]\n";
    return out;
}

// format resolution: explicit flag wins but must agree with the extension
std::string resolve_format(const std::string& flag, const std::string& out_path,
                           const std::string& fallback) {
    std::string ext;
    auto dot = out_path.rfind('.');
    if (dot != std::string::npos) ext = out_path.substr(dot + 1);
    std::string from_ext = (ext == "json" || ext == "csv") ? ext : "";
    if (!flag.empty()) {
        if (!from_ext.empty() && flag != from_ext)
            throw ParseError("--format " + flag + " disagrees with output extension ." + ext);
        return flag;
    }
    if (!from_ext.empty()) return from_ext;
    return fallback;
}

void deliver(const std::string& content, const std::string& out_path) {
    if (out_path.empty())
        std::cout << content;
    else
        write_file_atomic(out_path, content);
}

// run jobs across the configured worker count; results keep their index order
std::vector<Row> run_jobs(const std::vector<std::function<Row()>>& jobs, int threads) {
    std::vector<Row> rows(jobs.size());
    if (jobs.empty()) return rows;
    threads = std::min<int>(threads, int(jobs.size()));
    if (threads <= 1) {
        for (size_t i = 0; i < jobs.size(); ++i) rows[i] = jobs[i]();
        return rows;
    }
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t)
        pool.emplace_back([&] {
            for (;;) {
                size_t i = next.fetch_add(1);
                if (i >= jobs.size()) return;
                rows[i] = jobs[i]();
            }
        });
    for (auto& th : pool) th.join();
    return rows;
}

std::string fmt_g(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

// ---------------------------------------------------------------- verify ----

struct VerifyArgs {
    std::string family;
    std::string variant;
    std::string body, body2, density, density2, fn, subspace, subspace2, omega;
    std::optional<int> r;
    std::optional<double> p;
    CfgFlags cfg_flags;
    std::string out, format;
};

Row run_one_verify(const VerifyArgs& a, const IntegrateConfig& cfg, InputEcho& echo) {
    Row row;
    row.variant = a.variant;

    auto need = [&](const std::string& value, const char* flag) -> const std::string& {
        if (value.empty())
            throw ParseError(a.family + " needs " + std::string(flag));
        return value;
    };

    if (a.family == "difference-body" || a.family == "shifted" || a.family == "ck" ||
        a.family == "section-projection") {
        Body k = load_body(need(a.body, "--body"));
        Density phi = make_density(need(a.density, "--density"), k.dim, file_loader());
        echo.add_body("body", k);
        echo.add_density("density", phi);
        std::optional<Body> l;
        if (!a.body2.empty()) {
            l = load_body(a.body2);
            echo.add_body("body2", *l);
        }
        if (a.family == "difference-body") {
            row.family = "difference_body";
            row.rep = verify_difference_body(a.variant, phi, k, l, cfg);
        } else if (a.family == "shifted") {
            row.family = "shifted";
            Vec omega(static_cast<size_t>(k.dim), 0.0);
            if (!a.omega.empty()) omega = parse_vec_list(a.omega);
            echo.add("omega", vec_to_string(omega));
            row.rep = verify_shifted(a.variant, phi, k, omega, cfg);
            if (a.variant == "question_probe") row.expected = "inconclusive";
        } else if (a.family == "ck") {
            row.family = "ck";
            row.rep = verify_ck(a.variant, phi, k, l, cfg);
        } else {
            row.family = "section_projection";
            SubspaceSpec h(k.dim, parse_index_list(need(a.subspace, "--subspace")));
            echo.add("subspace", a.subspace);
            std::optional<SubspaceSpec> e;
            if (!a.subspace2.empty()) {
                e = SubspaceSpec(k.dim, parse_index_list(a.subspace2));
                echo.add("subspace2", a.subspace2);
            }
            row.rep = verify_section_projection(a.variant, phi, k, h, e, a.r, cfg);
        }
        return row;
    }

    if (a.family == "functional") {
        row.family = "functional";
        const std::string& fn_spec = need(a.fn, "--fn");
        QCFunction f = fn_spec.rfind("indicator:", 0) == 0
                           ? qc_indicator(load_body(fn_spec.substr(10)))
                           : qc_function_from_json(read_file(
                                 fn_spec[0] == '@' ? fn_spec.substr(1) : fn_spec));
        echo.add("fn", fn_spec);
        std::optional<SubspaceSpec> h;
        if (!a.subspace.empty()) {
            h = SubspaceSpec(f.dim, parse_index_list(a.subspace));
            echo.add("subspace", a.subspace);
        }
        std::optional<Density> phi;
        if (!a.density.empty()) {
            phi = make_density(a.density, f.dim, file_loader());
            echo.add_density("density", *phi);
        }
        std::optional<Density> g;
        if (!a.density2.empty()) {
            int gn = (a.variant == "proj_sect_weighted" && h) ? h->dim() : f.dim;
            g = make_density(a.density2, gn, file_loader());
            echo.add_density("density2", *g);
        }
        row.rep = verify_functional(a.variant, f, g, phi, h, a.p, cfg);
        return row;
    }

    throw ParseError("unknown family '" + a.family +
                     "' (expected difference-body, shifted, ck, section-projection, "
                     "functional)");
}

int cmd_verify(const VerifyArgs& a) {
    IntegrateConfig cfg = build_cfg(a.cfg_flags, true);
    InputEcho echo;
    Row row = run_one_verify(a, cfg, echo);
    echo.add_config(cfg);
    std::string format = resolve_format(a.format, a.out, "json");
    if (format == "json")
        deliver(report_to_json(row.rep, echo), a.out);
    else
        deliver(timestamp_line() + csv_header() +
                    csv_row(row.family, row.variant, row.params, row.rep),
                a.out);
    return exit_code_for({row});
}

// ----------------------------------------------------------------- suite ----

std::vector<std::function<Row()>> equality_battery_jobs(const IntegrateConfig& cfg) {
    std::vector<std::function<Row()>> jobs;
    for (int n = 1; n <= 3; ++n)
        jobs.push_back([n, cfg] {
            Row r{"difference_body", "classical", "body=simplex:" + std::to_string(n),
                  verify_difference_body("classical", make_lebesgue(n), make_simplex(n),
                                         {}, cfg),
                  ""};
            return r;
        });
    for (int n = 1; n <= 3; ++n)
        jobs.push_back([n, cfg] {
            Row r{"difference_body", "radial", "body=simplex:" + std::to_string(n),
                  verify_difference_body("radial", make_lebesgue(n), make_simplex(n), {},
                                         cfg),
                  ""};
            return r;
        });
    for (int n = 1; n <= 3; ++n)
        jobs.push_back([n, cfg] {
            Row r{"ck", "classical_ck", "body=simplex:" + std::to_string(n),
                  verify_ck("classical_ck", make_lebesgue(n), make_simplex(n), {}, cfg),
                  ""};
            return r;
        });
    for (int n = 1; n <= 3; ++n)
        jobs.push_back([n, cfg] {
            Row r{"ck", "classical_conv", "body=simplex:" + std::to_string(n),
                  verify_ck("classical_conv", make_lebesgue(n), make_simplex(n), {}, cfg),
                  ""};
            return r;
        });
    jobs.push_back([cfg] {
        Row r{"ck", "measure_ck", "body=simplex:2",
              verify_ck("measure_ck", make_lebesgue(2), make_simplex(2), {}, cfg), ""};
        return r;
    });
    jobs.push_back([cfg] {
        Row r{"functional", "delta_diff", "fn=indicator:simplex:2",
              verify_functional("delta_diff", qc_indicator(make_simplex(2)), {}, {}, {},
                                {}, cfg),
              ""};
        return r;
    });
    return jobs;
}

std::vector<std::function<Row()>> soundness_sweep_jobs(const IntegrateConfig& cfg) {
    std::vector<std::function<Row()>> jobs;
    const char* densities[3] = {"lebesgue", "gaussian", "exp-norm"};
    for (int n : {2, 3}) {
        int n_vertices = n == 2 ? 8 : 10;
        for (int i = 0; i < 15; ++i) {
            std::uint64_t body_seed = cfg.seed * 1000003ull + std::uint64_t(n) * 100 + i;
            std::string body_tag = "body=random:" + std::to_string(n) + ":" +
                                   std::to_string(n_vertices) + ":" +
                                   std::to_string(body_seed);
            for (const char* d : densities) {
                std::string params = body_tag + ";density=" + d;
                jobs.push_back([n, n_vertices, body_seed, d, params, cfg] {
                    Body raw = make_random_polytope(n, n_vertices, body_seed);
                    Body k = translate(raw, scaled(interior_point(raw), -1.0));
                    Density phi = make_density(d, n);
                    Row r{"difference_body", "radial", params,
                          verify_difference_body("radial", phi, k, {}, cfg), ""};
                    return r;
                });
                jobs.push_back([n, n_vertices, body_seed, d, params, cfg] {
                    Body raw = make_random_polytope(n, n_vertices, body_seed);
                    Body k = translate(raw, scaled(interior_point(raw), -1.0));
                    Density phi = make_density(d, n);
                    Row r{"ck", "measure_ck", params,
                          verify_ck("measure_ck", phi, k, {}, cfg), ""};
                    return r;
                });
            }
        }
    }
    return jobs;
}

std::vector<std::function<Row()>> counterexample_jobs(const IntegrateConfig& cfg) {
    std::vector<std::function<Row()>> jobs;
    for (const char* id : {"ring", "wedge", "parallelogram"})
        jobs.push_back([id, cfg] {
            Row r;
            r.family = "counterexample";
            r.variant = id;
            r.params = "defaults";
            r.rep = run_counterexample(id, CounterexampleParams{}, cfg);
            for (const auto& kv : r.rep.metadata)
                if (kv.first == "expected_verdict") r.expected = kv.second;
            return r;
        });
    return jobs;
}

std::vector<std::function<Row()>> constants_jobs() {
    std::vector<std::function<Row()>> jobs;
    for (int n = 1; n <= 6; ++n)
        for (double p : {1.0 / 3.0, 0.5, 1.0, 2.0})
            for (double q : {0.0, 1.0})
                jobs.push_back([n, p, q] {
                    auto [closed, quad] = alpha_constant(n, p, q);
                    Row r;
                    r.family = "alpha_constant";
                    r.variant = "closed_vs_quadrature";
                    r.params = "n=" + std::to_string(n) + ";p=" + fmt_g(p) +
                               ";q=" + fmt_g(q);
                    r.rep.family = r.family;
                    r.rep.variant = r.variant;
                    r.rep.lhs.value = closed;
                    r.rep.rhs.value = quad;
                    r.rep.ratio = quad != 0.0 ? closed / quad : 0.0;
                    r.rep.verdict = std::fabs(closed - quad) <= 1e-8 ? Verdict::equality
                                                                     : Verdict::violated;
                    return r;
                });
    for (int n = 2; n <= 6; ++n)
        for (int k = 1; k < n; ++k)
            jobs.push_back([n, k] {
                double closed = alpha_constant(n - k, 1.0 / k, 0.0).first;
                double target = 1.0 / binomial(n, k);
                Row r;
                r.family = "alpha_constant";
                r.variant = "binomial_identity";
                r.params = "n=" + std::to_string(n) + ";k=" + std::to_string(k);
                r.rep.family = r.family;
                r.rep.variant = r.variant;
                r.rep.lhs.value = closed;
                r.rep.rhs.value = target;
                r.rep.ratio = closed / target;
                r.rep.verdict = std::fabs(closed / target - 1.0) <= 1e-10
                                    ? Verdict::equality
                                    : Verdict::violated;
                return r;
            });
    return jobs;
}

int cmd_suite(const std::string& name, const CfgFlags& flags, const std::string& out,
              const std::string& format_flag) {
    std::vector<std::function<Row()>> jobs;
    IntegrateConfig cfg;
    if (name == "constants") {
        jobs = constants_jobs();
        cfg.threads = threads_from_env();
    } else {
        bool seed_required = name != "counterexamples";
        cfg = build_cfg(flags, seed_required);
        if (name == "equality-battery")
            jobs = equality_battery_jobs(cfg);
        else if (name == "soundness-sweep")
            jobs = soundness_sweep_jobs(cfg);
        else if (name == "counterexamples")
            jobs = counterexample_jobs(cfg);
        else
            throw ParseError("unknown suite '" + name +
                             "' (expected equality-battery, soundness-sweep, "
                             "counterexamples, constants)");
    }
    std::vector<Row> rows = run_jobs(jobs, cfg.threads);
    std::string format = resolve_format(format_flag, out, "csv");
    if (format == "csv") {
        deliver(rows_to_csv(rows), out);
    } else {
        InputEcho shared;
        shared.add("suite", name);
        shared.add_config(cfg);
        deliver(rows_to_json(rows, shared), out);
    }
    return exit_code_for(rows);
}

// ----------------------------------------------------------------- sweep ----

struct SweepSpec {
    std::string name;
    double lo = 0.0, hi = 0.0;
    int steps = 0;
};

SweepSpec parse_sweep_param(const std::string& text) {
    auto eq = text.find('=');
    if (eq == std::string::npos)
        throw ParseError("--param expects name=a:b:steps, got '" + text + "'");
    SweepSpec s;
    s.name = text.substr(0, eq);
    std::stringstream ss(text.substr(eq + 1));
    std::string a, b, n;
    if (!std::getline(ss, a, ':') || !std::getline(ss, b, ':') || !std::getline(ss, n))
        throw ParseError("--param expects name=a:b:steps, got '" + text + "'");
    try {
        s.lo = std::stod(a);
        s.hi = std::stod(b);
        s.steps = std::stoi(n);
    } catch (const std::exception&) {
        throw ParseError("--param expects numeric a:b:steps, got '" + text + "'");
    }
    if (s.steps < 1 || s.steps > 10000) throw ParseError("--param steps out of range");
    return s;
}

std::string plot_script(const std::string& csv_path, const std::string& param) {
    std::string s;
    s += "# gnuplot script generated alongside the sweep CSV\n";
    s += "set datafile separator ','\n";
    s += "set xlabel '" + param + "'\n";
    s += "set ylabel 'value'\n";
    s += "set key left top\n";
    s += "val(s) = real(s[strstrt(s, '=') + 1:])\n";
    s += "plot '" + csv_path + "' every ::1 using (val(strcol(3))):4 with linespoints "
         "title 'lhs', \\\n     '" + csv_path + "' every ::1 using (val(strcol(3))):6 "
         "with linespoints title 'rhs'\n";
    return s;
}

int cmd_sweep(const VerifyArgs& base, const std::string& param, bool plot) {
    SweepSpec spec = parse_sweep_param(param);
    bool is_counter = base.family == "ring" || base.family == "wedge" ||
                      base.family == "parallelogram";
    IntegrateConfig cfg = build_cfg(base.cfg_flags, true);

    std::vector<double> values;
    for (int i = 0; i < spec.steps; ++i)
        values.push_back(spec.steps == 1 ? spec.lo
                                         : spec.lo + (spec.hi - spec.lo) * double(i) /
                                               (spec.steps - 1));

    std::vector<std::function<Row()>> jobs;
    for (double v : values) {
        std::string point = spec.name + "=" + fmt_g(v);
        if (is_counter) {
            std::string id = base.family;
            jobs.push_back([id, spec, v, point, cfg] {
                CounterexampleParams params;
                if (spec.name == "eps")
                    params.eps = v;
                else if (spec.name == "delta")
                    params.delta = v;
                else if (spec.name == "theta")
                    params.thetas = {v};
                else if (spec.name == "alpha")
                    params.alphas = {v};
                else
                    throw ParseError("sweep over '" + spec.name +
                                     "' is not defined for counterexamples");
                Row r;
                r.family = "counterexample";
                r.variant = id;
                r.params = point;
                r.rep = run_counterexample(id, params, cfg);
                for (const auto& kv : r.rep.metadata)
                    if (kv.first == "expected_verdict") r.expected = kv.second;
                return r;
            });
        } else {
            jobs.push_back([base, spec, v, point, cfg] {
                VerifyArgs a = base;
                if (spec.name == "scale") {
                    // applied to the primary body below via shorthand rewrite
                } else if (spec.name.rfind("omega", 0) == 0 && spec.name.size() == 6) {
                    // omega0..omega5 handled after parsing
                } else if (spec.name == "p") {
                    a.p = v;
                } else if (spec.name == "r") {
                    a.r = int(std::lround(v));
                } else {
                    throw ParseError("sweep over '" + spec.name +
                                     "' is not defined for family " + a.family);
                }
                InputEcho echo;
                if (spec.name == "scale" || spec.name.rfind("omega", 0) == 0) {
                    Body k = load_body(a.body.empty()
                                           ? throw ParseError("sweep needs --body")
                                           : a.body);
                    if (spec.name == "scale") {
                        Body scaled_k =
                            transform(k, v, Vec(static_cast<size_t>(k.dim), 0.0));
                        Density phi =
                            make_density(a.density.empty() ? "lebesgue" : a.density,
                                         k.dim, file_loader());
                        echo.add_body("body", scaled_k);
                        echo.add_density("density", phi);
                        Row r;
                        r.family = a.family == "ck" ? "ck" : "difference_body";
                        r.variant = a.variant;
                        r.params = point;
                        r.rep = a.family == "ck"
                                    ? verify_ck(a.variant, phi, scaled_k, {}, cfg)
                                    : verify_difference_body(a.variant, phi, scaled_k,
                                                             {}, cfg);
                        return r;
                    }
                    int coord = spec.name[5] - '0';
                    if (coord < 0 || coord >= k.dim)
                        throw ParseError("sweep parameter '" + spec.name +
                                         "' exceeds the body dimension");
                    Vec omega(static_cast<size_t>(k.dim), 0.0);
                    if (!a.omega.empty()) omega = parse_vec_list(a.omega);
                    omega[size_t(coord)] = v;
                    Density phi = make_density(
                        a.density.empty() ? "lebesgue" : a.density, k.dim, file_loader());
                    Row r;
                    r.family = "shifted";
                    r.variant = a.variant;
                    r.params = point;
                    r.rep = verify_shifted(a.variant, phi, k, omega, cfg);
                    if (a.variant == "question_probe") r.expected = "inconclusive";
                    return r;
                }
                Row r = run_one_verify(a, cfg, echo);
                r.params = point;
                return r;
            });
        }
    }

    std::vector<Row> rows = run_jobs(jobs, cfg.threads);
    std::string format = resolve_format(base.format, base.out, "csv");
    if (format == "csv")
        deliver(rows_to_csv(rows), base.out);
    else {
        InputEcho shared;
        shared.add("sweep", base.family);
        shared.add_config(cfg);
        deliver(rows_to_json(rows, shared), base.out);
    }
    if (plot) {
        if (base.out.empty())
            throw ParseError("--plot needs --out so the script can reference the CSV");
        write_file_atomic(base.out + ".gnuplot", plot_script(base.out, spec.name));
    }
    return exit_code_for(rows);
}

// -------------------------------------------------------- counterexample ----

int cmd_counterexample(const std::string& id, double eps, double delta,
                       const CfgFlags& flags, const std::string& out,
                       const std::string& format_flag) {
    CfgFlags with_default = flags;
    if (!with_default.seed) with_default.seed = 0;  // scenarios are fixed setups
    IntegrateConfig cfg = build_cfg(with_default, true);
    CounterexampleParams params;
    params.eps = eps;
    params.delta = delta;
    Row row;
    row.family = "counterexample";
    row.variant = id;
    row.params = "eps=" + fmt_g(eps);
    row.rep = run_counterexample(id, params, cfg);
    for (const auto& kv : row.rep.metadata)
        if (kv.first == "expected_verdict") row.expected = kv.second;
    InputEcho echo;
    echo.add("scenario", id);
    echo.add("eps", fmt_g(eps));
    echo.add("delta", fmt_g(delta));
    echo.add_config(cfg);
    std::string format = resolve_format(format_flag, out, "json");
    if (format == "json")
        deliver(report_to_json(row.rep, echo), out);
    else
        deliver(timestamp_line() + csv_header() +
                    csv_row(row.family, row.variant, row.params, row.rep),
                out);
    return exit_code_for({row});
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"rslab: convex-body inequality verification runs"};
    app.require_subcommand(1);
    app.footer(kShorthandHelp);

    VerifyArgs va;
    CLI::App* verify = app.add_subcommand("verify", "run one inequality check");
    verify->add_option("family", va.family,
                       "difference-body | shifted | ck | section-projection | functional")
        ->required();
    verify->add_option("--variant", va.variant, "inequality variant")->required();
    verify->add_option("--body", va.body, "primary body (shorthand or @file.json)");
    verify->add_option("--body2", va.body2, "second body for the two-body variants");
    verify->add_option("--density", va.density, "density spec");
    verify->add_option("--density2", va.density2, "weight density for functional variants");
    verify->add_option("--fn", va.fn, "quasi-concave function (JSON or indicator:<body>)");
    verify->add_option("--subspace", va.subspace, "comma-separated coordinate indices");
    verify->add_option("--subspace2", va.subspace2, "second subspace (two-subspace checks)");
    verify->add_option("--r", va.r, "concavity exponent for the p-concave variant");
    verify->add_option("--p", va.p, "p parameter for functional variants");
    verify->add_option("--omega", va.omega, "shift vector, comma-separated");
    add_cfg_flags(verify, va.cfg_flags);
    verify->add_option("--out", va.out, "output path (default: stdout)");
    verify->add_option("--format", va.format, "json or csv");

    std::string suite_name, suite_out, suite_format;
    CfgFlags suite_flags;
    CLI::App* suite = app.add_subcommand("suite", "run a named battery of checks");
    suite->add_option("name", suite_name,
                      "equality-battery | soundness-sweep | counterexamples | constants")
        ->required();
    add_cfg_flags(suite, suite_flags);
    suite->add_option("--out", suite_out, "output path (default: stdout)");
    suite->add_option("--format", suite_format, "json or csv");

    VerifyArgs sw;
    std::string sweep_param;
    bool sweep_plot = false;
    CLI::App* sweep = app.add_subcommand("sweep", "repeat a check over a parameter range");
    sweep->add_option("family", sw.family,
                      "verify family, or ring | wedge | parallelogram")
        ->required();
    sweep->add_option("--param", sweep_param, "name=a:b:steps (linear spacing)")
        ->required();
    sweep->add_option("--variant", sw.variant, "inequality variant");
    sweep->add_option("--body", sw.body, "primary body");
    sweep->add_option("--body2", sw.body2, "second body");
    sweep->add_option("--density", sw.density, "density spec");
    sweep->add_option("--density2", sw.density2, "weight density");
    sweep->add_option("--fn", sw.fn, "quasi-concave function");
    sweep->add_option("--subspace", sw.subspace, "comma-separated indices");
    sweep->add_option("--subspace2", sw.subspace2, "second subspace");
    sweep->add_option("--omega", sw.omega, "base shift vector");
    add_cfg_flags(sweep, sw.cfg_flags);
    sweep->add_option("--out", sw.out, "output path (default: stdout)");
    sweep->add_option("--format", sw.format, "json or csv");
    sweep->add_flag("--plot", sweep_plot, "also write a gnuplot script next to the CSV");

    std::string ce_id, ce_out, ce_format;
    double ce_eps = 1e-5, ce_delta = 0.0;
    CfgFlags ce_flags;
    CLI::App* ce = app.add_subcommand("counterexample", "reproduce a documented scenario");
    ce->add_option("id", ce_id, "ring | wedge | parallelogram")->required();
    ce->add_option("--eps", ce_eps, "ring thickness parameter");
    ce->add_option("--delta", ce_delta, "ring inner bump radius (0: sqrt(eps)/100)");
    add_cfg_flags(ce, ce_flags);
    ce->add_option("--out", ce_out, "output path (default: stdout)");
    ce->add_option("--format", ce_format, "json or csv");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (verify->parsed()) return cmd_verify(va);
        if (suite->parsed()) return cmd_suite(suite_name, suite_flags, suite_out, suite_format);
        if (sweep->parsed()) return cmd_sweep(sw, sweep_param, sweep_plot);
        if (ce->parsed()) return cmd_counterexample(ce_id, ce_eps, ce_delta, ce_flags,
                                                    ce_out, ce_format);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
