#include "rslab/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "rslab/lp.hpp"
#include "rslab/quadrature.hpp"
#include "rslab/rng.hpp"

namespace rslab {

namespace {

const double kPi = std::acos(-1.0);

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return std::string(buf);
}

Vec zeros(int n) { return Vec(static_cast<size_t>(n), 0.0); }

Estimate exact_est(double v) {
    Estimate e;
    e.value = v;
    return e;
}

Method combine_method(Method a, Method b) {
    if (a == Method::mc_box || b == Method::mc_box) return Method::mc_box;
    if (a == Method::grid_quadrature || b == Method::grid_quadrature)
        return Method::grid_quadrature;
    return Method::exact;
}

Estimate scale_est(Estimate e, double c) {
    e.value *= c;
    e.std_error *= std::fabs(c);
    return e;
}

Estimate mul_est(const Estimate& a, const Estimate& b) {
    Estimate r;
    r.value = a.value * b.value;
    r.std_error = std::hypot(a.std_error * b.value, b.std_error * a.value);
    r.n_samples = a.n_samples + b.n_samples;
    r.method = combine_method(a.method, b.method);
    return r;
}

Estimate div_est(const Estimate& a, const Estimate& b) {
    if (b.value == 0.0) throw DegeneracyError("estimate ratio: zero denominator");
    Estimate r;
    r.value = a.value / b.value;
    r.std_error =
        std::hypot(a.std_error / b.value, a.value * b.std_error / (b.value * b.value));
    r.n_samples = a.n_samples + b.n_samples;
    r.method = combine_method(a.method, b.method);
    return r;
}

const Estimate& min_est(const Estimate& a, const Estimate& b) {
    return a.value <= b.value ? a : b;
}

int severity(Verdict v) {
    switch (v) {
        case Verdict::equality: return 0;
        case Verdict::holds: return 1;
        case Verdict::inconclusive: return 2;
        case Verdict::hypothesis_failed: return 3;
        case Verdict::violated: return 4;
    }
    return 4;
}

Verdict worse(Verdict a, Verdict b) { return severity(a) >= severity(b) ? a : b; }

// weighted sum of estimates with independent-error variance bookkeeping
struct Acc {
    double v = 0.0;
    double var = 0.0;
    std::int64_t ns = 0;
    bool mc = false;
    bool grid = false;

    void add(double w, const Estimate& e) {
        v += w * e.value;
        var += w * w * e.std_error * e.std_error;
        ns += e.n_samples;
        if (e.method == Method::mc_box) mc = true;
        if (e.method == Method::grid_quadrature) grid = true;
    }
    Estimate done() const {
        Estimate e;
        e.value = v;
        e.std_error = std::sqrt(var);
        e.n_samples = ns;
        e.method = mc ? Method::mc_box : (grid ? Method::grid_quadrature : Method::exact);
        return e;
    }
};

void put(IneqReport& r, const std::string& key, const std::string& val) {
    r.metadata.emplace_back(key, val);
}

void putd(IneqReport& r, const std::string& key, double val) { put(r, key, fmt(val)); }

std::string idx_string(const std::vector<int>& idx) {
    std::string s = "{";
    for (size_t i = 0; i < idx.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(idx[i]);
    }
    return s + "}";
}

std::string body_desc(const Body& k) {
    if (!k.label.empty()) return k.label;
    switch (k.form) {
        case Body::Form::vpolytope:
            return "vpolytope:" + std::to_string(k.dim) + ":" +
                   std::to_string(k.vertices.size());
        case Body::Form::ball: return "ball:" + std::to_string(k.dim) + ":" + fmt(k.radius);
        case Body::Form::oracle: return "oracle:" + std::to_string(k.dim);
    }
    return "body";
}

SearchBox box_of(const Body& k) {
    SearchBox b;
    bounding_box(k, b.first, b.second);
    return b;
}

SearchBox box_union(const SearchBox& a, const SearchBox& b) {
    SearchBox u = a;
    for (size_t i = 0; i < u.first.size(); ++i) {
        u.first[i] = std::min(u.first[i], b.first[i]);
        u.second[i] = std::max(u.second[i], b.second[i]);
    }
    return u;
}

Vec subvec(const Vec& x, const std::vector<int>& idx) {
    Vec out(idx.size());
    for (size_t i = 0; i < idx.size(); ++i) out[i] = x[static_cast<size_t>(idx[i])];
    return out;
}

Body neg_body(const Body& k) { return transform(k, -1.0, zeros(k.dim)); }

void finalize(IneqReport& r) {
    if (!r.audits_passed()) {
        r.verdict = Verdict::hypothesis_failed;
    } else {
        r.verdict = decide_verdict(r.lhs, r.rhs, !r.sup_on_rhs || r.sup_converged);
    }
    r.ratio = r.rhs.value != 0.0 ? r.lhs.value / r.rhs.value
                                 : std::numeric_limits<double>::quiet_NaN();
}

const char* class_label(DensityClass cls) {
    switch (cls) {
        case DensityClass::radially_decreasing: return "radially_decreasing";
        case DensityClass::quasi_concave: return "quasi_concave";
        case DensityClass::p_concave: return "p_concave";
        case DensityClass::even: return "even";
        case DensityClass::continuous_at_origin: return "continuous_at_origin";
    }
    return "class";
}

bool declares(const Density& phi, DensityClass cls, std::optional<double> p) {
    switch (cls) {
        case DensityClass::radially_decreasing: return phi.flags.radially_decreasing;
        case DensityClass::quasi_concave:
            return phi.flags.quasi_concave || phi.flags.log_concave;
        case DensityClass::even: return phi.flags.even;
        case DensityClass::continuous_at_origin: return phi.flags.continuous_at_origin;
        case DensityClass::p_concave:
            return phi.flags.p_concave.has_value() &&
                   (!p || *phi.flags.p_concave >= *p - 1e-12);
    }
    return false;
}

// declared-class check followed by a sampling audit over the probe box
AuditResult audit_density(const std::string& name, const Density& phi, DensityClass cls,
                          const SearchBox& box, std::uint64_t audit_stream,
                          std::optional<double> p = std::nullopt) {
    AuditResult a;
    a.name = name;
    if (!declares(phi, cls, p)) {
        a.passed = false;
        a.note = std::string(class_label(cls)) + " not declared by the density";
        return a;
    }
    ClassAuditReport rep = audit_class(phi, cls, 400, RandomStream(0x5eed, audit_stream),
                                       box.first, box.second, p);
    if (!rep.consistent()) {
        const ClassWitness& w = rep.witnesses.front();
        a.passed = false;
        a.note = "sampled witness near " + vec_to_string(w.x) + ": dominating value " +
                 fmt(w.lhs) + " fell below " + fmt(w.rhs);
        return a;
    }
    a.note = "declared and consistent over " + std::to_string(rep.probes) + " probes";
    return a;
}

AuditResult audit_peak_at_origin(const std::string& name, const Density& phi) {
    AuditResult a;
    a.name = name;
    double at0 = phi(zeros(phi.n));
    if (at0 >= phi.sup_value * (1.0 - 1e-9)) {
        a.note = "density attains its sup at the origin";
    } else {
        a.passed = false;
        a.note = "value at the origin " + fmt(at0) + " sits below the sup " +
                 fmt(phi.sup_value);
    }
    if (!phi.flags.sup_exact) a.note += " (declared sup is approximate)";
    return a;
}

AuditResult audit_fn_origin(const QCFunction& f) {
    AuditResult a;
    a.name = "f_peaks_at_origin";
    if (contains(f.layers.back(), zeros(f.dim))) {
        a.note = "origin lies in every level set";
    } else {
        a.passed = false;
        a.note = "origin missing from the top level set";
    }
    return a;
}

// sampled p-concavity for layered step functions. The discretization can
// lose up to one level gap, so that gap is granted as slack.
AuditResult audit_fn_p_concave(const QCFunction& f, double p, std::uint64_t stream) {
    AuditResult a;
    a.name = "f_p_concave";
    double step = 0.0, prev = 0.0;
    for (double t : f.levels) {
        step = std::max(step, t - prev);
        prev = t;
    }
    const double slack = f.sup_value * step + 1e-9;
    Vec lo, hi;
    bounding_box(f.support(), lo, hi);
    RandomStream rs(0x5eed, stream);
    int found = 0;
    for (int it = 0; it < 4000 && found < 300; ++it) {
        Vec x(lo.size()), y(lo.size());
        for (size_t i = 0; i < lo.size(); ++i) x[i] = lo[i] + (hi[i] - lo[i]) * rs.next_unit();
        for (size_t i = 0; i < lo.size(); ++i) y[i] = lo[i] + (hi[i] - lo[i]) * rs.next_unit();
        double fx = f(x), fy = f(y);
        if (fx <= 0.0 || fy <= 0.0) continue;
        ++found;
        for (double lam : {0.25, 0.5, 0.75}) {
            Vec z = add(scaled(x, 1.0 - lam), scaled(y, lam));
            double want = p_mean(fx, fy, lam, p);
            if (f(z) + slack < want) {
                a.passed = false;
                a.note = "witness at lambda " + fmt(lam) + ": f " + fmt(f(z)) +
                         " below the p-mean " + fmt(want);
                return a;
            }
        }
    }
    a.note = "consistent over " + std::to_string(found) + " sampled pairs (slack " +
             fmt(slack) + ")";
    return a;
}

// visit the g^d lattice over the box, endpoints included
void for_lattice(const SearchBox& box, int g, const std::function<void(const Vec&)>& fn) {
    size_t d = box.first.size();
    std::vector<int> ix(d, 0);
    while (true) {
        Vec x(d);
        for (size_t i = 0; i < d; ++i) {
            double t = g == 1 ? 0.5 : double(ix[i]) / double(g - 1);
            x[i] = box.first[i] + (box.second[i] - box.first[i]) * t;
        }
        fn(x);
        size_t j = 0;
        while (j < d && ++ix[j] == g) ix[j++] = 0;
        if (j == d) break;
    }
}

struct GridMax {
    Estimate best;
    Vec argmax;
    int rounds = 0;
    bool converged = false;
    bool any = false;
};

using ProbeFn = std::function<Estimate(const Vec&, const IntegrateConfig&, std::uint64_t)>;

// shrinking-lattice maximum search. Always a lower bound on the true sup;
// convergence means two consecutive rounds moved the best value by less
// than cfg.sup_tol relative. Probe budgets are trimmed during the search
// and the winning point is re-probed at full budget.
GridMax grid_max(const ProbeFn& probe, const SearchBox& span, const std::vector<Vec>& seeds,
                 const std::function<bool(const Vec&)>& filter, const IntegrateConfig& cfg,
                 std::uint64_t stream) {
    const Vec& lo0 = span.first;
    const Vec& hi0 = span.second;
    size_t d = lo0.size();
    const int g = d <= 2 ? cfg.sup_coarse : std::max(4, cfg.sup_coarse / 2);
    IntegrateConfig pc = cfg;
    pc.n_samples = std::max<std::int64_t>(2000, cfg.n_samples / 40);
    RandomStream root(0, stream);

    GridMax gm;
    gm.best.value = -std::numeric_limits<double>::infinity();
    Vec center(d), halfspan(d);
    for (size_t i = 0; i < d; ++i) {
        center[i] = 0.5 * (lo0[i] + hi0[i]);
        halfspan[i] = 0.5 * (hi0[i] - lo0[i]);
    }

    auto try_point = [&](const Vec& x, std::uint64_t sid) {
        if (filter && !filter(x)) return;
        Estimate e = probe(x, pc, root.substream(sid).stream());
        if (!gm.any || e.value > gm.best.value) {
            gm.best = e;
            gm.argmax = x;
        }
        gm.any = true;
    };

    std::uint64_t seed_sid = 1;
    for (const Vec& s : seeds) try_point(s, seed_sid++);

    double prev_best = gm.any ? gm.best.value : 0.0;
    int close = 0;
    for (int round = 0; round < cfg.sup_rounds; ++round) {
        SearchBox cell;
        cell.first.resize(d);
        cell.second.resize(d);
        for (size_t i = 0; i < d; ++i) {
            cell.first[i] = std::max(lo0[i], center[i] - halfspan[i]);
            cell.second[i] = std::min(hi0[i], center[i] + halfspan[i]);
        }
        std::uint64_t base = std::uint64_t(round + 1) << 32;
        std::uint64_t idx = 0;
        for_lattice(cell, g, [&](const Vec& x) { try_point(x, base | idx++); });
        gm.rounds = round + 1;
        if (round > 0 && gm.any) {
            double scale = std::max(1e-12, std::fabs(gm.best.value));
            if (gm.best.value - prev_best <= cfg.sup_tol * scale) ++close;
            else close = 0;
            if (close >= 2) gm.converged = true;
        }
        prev_best = gm.any ? gm.best.value : 0.0;
        if (gm.converged) break;
        if (gm.any) center = gm.argmax;
        for (size_t i = 0; i < d; ++i) halfspan[i] *= 0.5;
    }
    if (gm.any) {
        gm.best = probe(gm.argmax, cfg, root.substream(0xf3).stream());
    } else {
        gm.best = Estimate{};
        gm.argmax = center;
    }
    return gm;
}

// endpoints of the one-dimensional slice of a vertex polytope along the
// free axis; (0, -1) signals an empty slice, nullopt an LP breakdown
std::optional<std::pair<double, double>> slice_interval(const Body& k,
                                                        const SubspaceSpec& spec,
                                                        const Vec& x0) {
    const auto& verts = k.vertices;
    const int m = int(verts.size());
    if (m == 0) return std::make_pair(0.0, -1.0);
    const int free_axis = spec.complement().front();
    LpProblem lp;
    lp.n_vars = m;
    lp.c.resize(static_cast<size_t>(m));
    for (int i = 0; i < m; ++i)
        lp.c[static_cast<size_t>(i)] = verts[static_cast<size_t>(i)][static_cast<size_t>(free_axis)];
    lp.add_row(Vec(static_cast<size_t>(m), 1.0), '=', 1.0);
    for (size_t j = 0; j < spec.idx.size(); ++j) {
        Vec row(static_cast<size_t>(m));
        for (int i = 0; i < m; ++i)
            row[static_cast<size_t>(i)] =
                verts[static_cast<size_t>(i)][static_cast<size_t>(spec.idx[j])];
        lp.add_row(row, '=', x0[j]);
    }
    try {
        LpSolution hi = solve_lp(lp);
        if (hi.status == LpStatus::infeasible) return std::make_pair(0.0, -1.0);
        for (double& cv : lp.c) cv = -cv;
        LpSolution lo = solve_lp(lp);
        if (lo.status == LpStatus::infeasible) return std::make_pair(0.0, -1.0);
        if (hi.status != LpStatus::optimal || lo.status != LpStatus::optimal)
            return std::nullopt;
        return std::make_pair(-lo.value, hi.value);
    } catch (const DegeneracyError&) {
        return std::nullopt;
    }
}

// measure of the slice under a density already living on the free
// coordinates. One free axis of a vertex polytope goes through an exact
// interval plus quadrature; anything else falls back to slice + measure.
Estimate factor_section_measure(const Density& slice_density, const Body& k,
                                const SubspaceSpec& spec, const Vec& x0, bool smooth,
                                const IntegrateConfig& cfg, std::uint64_t stream) {
    std::vector<int> comp = spec.complement();
    if (slice_density.n != int(comp.size()))
        throw DimensionError("section measure: slice density dimension mismatch");
    if (comp.size() == 1 && k.form == Body::Form::vpolytope && smooth) {
        auto iv = slice_interval(k, spec, x0);
        if (iv) {
            const double a = iv->first, b = iv->second;
            Estimate e;
            e.method = Method::grid_quadrature;
            if (b - a <= 1e-14) return e;
            // composite panels so one kink of the restricted density cannot
            // poison the whole rule
            static const QuadratureRule unit = gauss_legendre(24, 0.0, 1.0);
            const int panels = 8;
            double s = 0.0;
            Vec arg(static_cast<size_t>(1));
            for (int j = 0; j < panels; ++j) {
                double pa = a + (b - a) * double(j) / panels;
                double pw = (b - a) / panels;
                for (size_t i = 0; i < unit.nodes.size(); ++i) {
                    arg[0] = pa + pw * unit.nodes[i];
                    s += pw * unit.weights[i] * slice_density(arg);
                }
            }
            e.value = s;
            e.n_samples = panels * int(unit.nodes.size());
            return e;
        }
    }
    Body sl = slice(k, spec, x0);
    if (sl.is_empty()) return exact_est(0.0);
    return measure(slice_density, sl, cfg, stream);
}

// layer-cake integral of f over the slice {x : x[spec.idx] = x0} w.r.t.
// Lebesgue measure on the free coordinates
Estimate fn_section_integral(const QCFunction& f, const SubspaceSpec& h, const Vec& x0,
                             const IntegrateConfig& cfg, std::uint64_t stream) {
    Density leb = make_lebesgue(int(h.complement().size()));
    RandomStream root(0, stream);
    IntegrateConfig pc = cfg;
    pc.n_samples = std::max<std::int64_t>(1000, cfg.n_samples / std::max(1, f.n_levels()));
    Acc acc;
    double prev = 0.0;
    for (size_t i = 0; i < f.layers.size(); ++i) {
        double w = f.sup_value * (f.levels[i] - prev);
        prev = f.levels[i];
        acc.add(w, factor_section_measure(leb, f.layers[i], h, x0, true, pc,
                                          root.substream(i).stream()));
    }
    return acc.done();
}

// cylinder extension of a density on H to the ambient space
Density lift_density(const Density& g, const SubspaceSpec& h) {
    Density out;
    out.n = h.n;
    out.kind = Density::Kind::custom;
    out.flags = g.flags;
    out.sup_value = g.sup_value;
    if (g.argmax) out.argmax = h.embed(*g.argmax, zeros(int(h.complement().size())));
    out.unbounded_support = true;
    out.spec = "lift(" + g.spec + ")";
    std::vector<int> idx = h.idx;
    auto geval = g.eval;
    out.eval = [idx, geval](const Vec& x) {
        Vec y(idx.size());
        for (size_t i = 0; i < idx.size(); ++i) y[i] = x[static_cast<size_t>(idx[i])];
        return geval(y);
    };
    return out;
}

// factor densities of a product split along the subspace: (on H, on H-perp)
std::pair<Density, Density> split_product(const Density& phi, const SubspaceSpec& h) {
    if (phi.kind != Density::Kind::product || !phi.factor_a || !phi.factor_b)
        throw PreconditionError("this variant needs a product density split along H");
    bool lead = true;
    for (int i = 0; i < h.dim(); ++i) lead = lead && h.idx[static_cast<size_t>(i)] == i;
    if (lead && h.dim() == phi.split) return {*phi.factor_a, *phi.factor_b};
    bool tail = true;
    for (int i = 0; i < h.dim(); ++i)
        tail = tail && h.idx[static_cast<size_t>(i)] == phi.split + i;
    if (tail && h.dim() == phi.n - phi.split) return {*phi.factor_b, *phi.factor_a};
    throw PreconditionError("product split does not match the subspace");
}

// nodes and weights for the unit theta integral. For rational p = a/b the
// substitution theta = u^b removes the fractional endpoint power, which
// keeps Gauss-Legendre at machine accuracy.
std::vector<std::pair<double, double>> theta_nodes(double p, int order) {
    int b = 0;
    for (int cand = 1; cand <= 12 && b == 0; ++cand) {
        double a = p * cand;
        if (std::fabs(a - std::round(a)) < 1e-9 && std::round(a) >= 1.0) b = cand;
    }
    QuadratureRule gl = gauss_legendre(order, 0.0, 1.0);
    std::vector<std::pair<double, double>> out;
    out.reserve(gl.nodes.size());
    for (size_t i = 0; i < gl.nodes.size(); ++i) {
        double u = gl.nodes[i], w = gl.weights[i];
        if (b > 0)
            out.emplace_back(std::pow(u, b), w * double(b) * std::pow(u, b - 1));
        else
            out.emplace_back(u, w);
    }
    return out;
}

// section volumes of superlevel sets against body slices, sampled on a
// coarse (offset, threshold) grid: the structural hypothesis that the
// origin offset dominates
AuditResult superlevel_sections_peak_audit(const Density& phi_sect, const Body& k,
                                           const SubspaceSpec& h, const Body& proj,
                                           const IntegrateConfig& cfg,
                                           std::uint64_t stream) {
    AuditResult a;
    a.name = "superlevel_sections_peak_at_zero";
    a.warn_only = true;
    IntegrateConfig pc = cfg;
    pc.n_samples = std::max<std::int64_t>(4000, cfg.n_samples / 50);
    RandomStream root(0, stream);
    std::uint64_t pid = 1;
    Vec z = zeros(h.dim());
    for (double t : {0.25, 0.5, 0.75}) {
        Body ct = superlevel(phi_sect, t);
        if (ct.is_empty()) continue;
        Estimate at0 = volume(intersect(ct, slice(k, h, z)), pc,
                              root.substream(pid++).stream());
        bool failed = false;
        for_lattice(box_of(proj), 5, [&](const Vec& x) {
            if (failed) return;
            Estimate v = volume(intersect(ct, slice(k, h, x)), pc,
                                root.substream(pid++).stream());
            double slack = 3.0 * std::hypot(v.std_error, at0.std_error) + 1e-9;
            if (v.value > at0.value + slack) {
                failed = true;
                a.note = "threshold " + fmt(t) + ": section at " + vec_to_string(x) +
                         " beats the origin (" + fmt(v.value) + " vs " + fmt(at0.value) + ")";
            }
        });
        if (failed) {
            a.passed = false;
            return a;
        }
    }
    a.note = "origin sections dominate on the sampled grid (3 thresholds, 5 offsets per axis)";
    return a;
}

// same hypothesis phrased for the level sets of a layered function
AuditResult layer_sections_peak_audit(const QCFunction& f, const SubspaceSpec& h,
                                      const IntegrateConfig& cfg, std::uint64_t stream) {
    AuditResult a;
    a.name = "layer_sections_peak_at_zero";
    a.warn_only = true;
    Density leb = make_lebesgue(int(h.complement().size()));
    IntegrateConfig pc = cfg;
    pc.n_samples = std::max<std::int64_t>(4000, cfg.n_samples / 50);
    RandomStream root(0, stream);
    std::uint64_t pid = 1;
    std::vector<size_t> picks{0};
    if (f.layers.size() > 2) picks.push_back(f.layers.size() / 2);
    if (f.layers.size() > 1) picks.push_back(f.layers.size() - 1);
    Vec z = zeros(h.dim());
    for (size_t li : picks) {
        Body proj = project(f.layers[li], h);
        if (proj.is_empty()) continue;
        Estimate at0 = factor_section_measure(leb, f.layers[li], h, z, true, pc,
                                              root.substream(pid++).stream());
        bool failed = false;
        for_lattice(box_of(proj), 5, [&](const Vec& x) {
            if (failed) return;
            Estimate v = factor_section_measure(leb, f.layers[li], h, x, true, pc,
                                                root.substream(pid++).stream());
            double slack = 3.0 * std::hypot(v.std_error, at0.std_error) + 1e-9;
            if (v.value > at0.value + slack) {
                failed = true;
                a.note = "layer " + std::to_string(li) + ": section at " + vec_to_string(x) +
                         " beats the origin (" + fmt(v.value) + " vs " + fmt(at0.value) + ")";
            }
        });
        if (failed) {
            a.passed = false;
            return a;
        }
    }
    a.note = "origin sections dominate on the sampled layers";
    return a;
}

bool smooth_kind(const Density& phi) {
    return phi.kind != Density::Kind::indicator && phi.kind != Density::Kind::ring &&
           phi.kind != Density::Kind::wedge;
}

}  // namespace

std::string verdict_name(Verdict v) {
    switch (v) {
        case Verdict::holds: return "holds";
        case Verdict::equality: return "equality";
        case Verdict::violated: return "violated";
        case Verdict::inconclusive: return "inconclusive";
        case Verdict::hypothesis_failed: return "hypothesis_failed";
    }
    return "inconclusive";
}

Verdict decide_verdict(const Estimate& lhs, const Estimate& rhs, bool rhs_sup_ok) {
    double sigma = std::hypot(lhs.std_error, rhs.std_error);
    double floor_ = 1e-10 * std::max({1.0, std::fabs(lhs.value), std::fabs(rhs.value)});
    sigma = std::max(sigma, floor_);
    const double diff = lhs.value - rhs.value;
    if (std::fabs(diff) <= 3.0 * sigma) return Verdict::equality;
    if (diff < 0.0) return Verdict::holds;
    return rhs_sup_ok ? Verdict::violated : Verdict::inconclusive;
}

Estimate section_measure(const Density& phi, const Body& k, const SubspaceSpec& spec,
                         const Vec& x0, const IntegrateConfig& cfg, std::uint64_t stream) {
    if (spec.n != k.dim) throw DimensionError("section measure: subspace/body mismatch");
    if (phi.n != k.dim) throw DimensionError("section measure: density/body mismatch");
    if (int(x0.size()) != spec.dim())
        throw DimensionError("section measure: offset must live on the fixed subspace");
    if (spec.dim() >= k.dim)
        throw PreconditionError("section measure: no free coordinate left");
    Density restricted = restrict_density(phi, spec, x0);
    return factor_section_measure(restricted, k, spec, x0, smooth_kind(phi), cfg, stream);
}

IneqReport verify_difference_body(const std::string& variant, const Density& phi,
                                  const Body& k, const std::optional<Body>& l,
                                  const IntegrateConfig& cfg) {
    cfg.validate();
    if (phi.n != k.dim) throw DimensionError("verify: density/body dimension mismatch");
    const int n = k.dim;
    const double C = binomial(2 * n, n);
    IneqReport r;
    r.family = "difference_body";
    r.variant = variant;
    put(r, "body", body_desc(k));
    put(r, "density", phi.spec);
    put(r, "seed", std::to_string(cfg.seed));
    std::uint64_t sid = 1;

    if (variant == "classical") {
        if (phi.kind != Density::Kind::lebesgue)
            throw PreconditionError("classical variant compares volumes; use the lebesgue density");
        r.constant = C;
        r.lhs = volume(difference_body(k), cfg, sid++);
        r.rhs = scale_est(volume(k, cfg, sid++), C);
        finalize(r);
        return r;
    }
    if (variant == "radial") {
        Body d = difference_body(k);
        r.audits.push_back(audit_density("radially_decreasing", phi,
                                         DensityClass::radially_decreasing, box_of(d), 11));
        r.constant = C;
        r.lhs = measure(phi, d, cfg, sid++);
        Estimate a1 = translated_average(phi, k, cfg, sid++);
        Estimate a2 = translated_average(phi, neg_body(k), cfg, sid++);
        putd(r, "avg_K", a1.value);
        putd(r, "avg_negK", a2.value);
        r.rhs = scale_est(min_est(a1, a2), C);
        finalize(r);
        return r;
    }
    if (variant == "sup_translate") {
        Body d = difference_body(k);
        r.audits.push_back(audit_density("radially_decreasing", phi,
                                         DensityClass::radially_decreasing, box_of(d), 11));
        r.constant = C;
        r.lhs = measure(phi, d, cfg, sid++);
        SupEstimate s1 = sup_translate(phi, k, cfg, sid++);
        SupEstimate s2 = sup_translate(phi, neg_body(k), cfg, sid++);
        const SupEstimate& pick = s1.best.value <= s2.best.value ? s1 : s2;
        putd(r, "sup_K", s1.best.value);
        putd(r, "sup_negK", s2.best.value);
        put(r, "sup_argmax", vec_to_string(pick.argmax));
        r.sup_on_rhs = true;
        r.sup_converged = pick.converged;
        r.rhs = scale_est(pick.best, C);
        finalize(r);
        return r;
    }
    if (variant == "pair_KL") {
        if (!l) throw PreconditionError("pair_KL needs a second body");
        if (l->dim != n) throw DimensionError("pair_KL: bodies must share a dimension");
        put(r, "body2", body_desc(*l));
        Body sum = minkowski_sum(k, *l);
        r.audits.push_back(audit_density("radially_decreasing", phi,
                                         DensityClass::radially_decreasing, box_of(sum), 11));
        r.constant = C;
        Estimate cap = volume(intersect(k, neg_body(*l)), cfg, sid++);
        putd(r, "vol_K_cap_negL", cap.value);
        r.lhs = mul_est(measure(phi, sum, cfg, sid++), cap);
        r.rhs = scale_est(translated_integral(phi, k, *l, cfg, sid++), C);
        finalize(r);
        return r;
    }
    if (variant == "reverse") {
        Body d = difference_body(k);
        SearchBox bb = box_of(d);
        r.audits.push_back(audit_density("even", phi, DensityClass::even, bb, 11));
        r.audits.push_back(
            audit_density("quasi_concave", phi, DensityClass::quasi_concave, bb, 12));
        r.constant = 1.0;
        r.note = "lower bound written as mu(2K) <= mu(K-K)";
        r.lhs = measure(phi, transform(k, 2.0, zeros(n)), cfg, sid++);
        r.rhs = measure(phi, d, cfg, sid++);
        finalize(r);
        return r;
    }
    throw PreconditionError("unknown difference_body variant: " + variant);
}

IneqReport verify_shifted(const std::string& variant, const Density& phi, const Body& k,
                          const Vec& omega, const IntegrateConfig& cfg) {
    cfg.validate();
    if (phi.n != k.dim) throw DimensionError("verify: density/body dimension mismatch");
    if (!omega.empty() && int(omega.size()) != k.dim)
        throw DimensionError("omega must live in the ambient space");
    const int n = k.dim;
    const double C = binomial(2 * n, n);
    const Vec w = omega.empty() ? zeros(n) : omega;
    IneqReport r;
    r.family = "shifted";
    r.variant = variant;
    put(r, "body", body_desc(k));
    put(r, "density", phi.spec);
    put(r, "omega", vec_to_string(w));
    put(r, "seed", std::to_string(cfg.seed));
    std::uint64_t sid = 1;
    Body negk = neg_body(k);

    if (variant == "rad_decreasing" || variant == "quasi") {
        Body d = translate(difference_body(k), w);
        r.audits.push_back(audit_density("quasi_concave", phi, DensityClass::quasi_concave,
                                         box_of(d), 11));
        r.constant = C;
        auto arm_neg = [&](const Vec& y, const IntegrateConfig& pc, std::uint64_t st) {
            return measure(phi, translate(negk, add(y, w)), pc, st);
        };
        std::vector<Vec> kseeds = k.vertices;
        kseeds.push_back(interior_point(k));
        auto in_k = membership_fn(k);

        if (variant == "rad_decreasing") {
            AuditResult cont;
            cont.name = "continuous_on_support";
            cont.warn_only = true;
            cont.passed = phi.flags.continuous_at_origin;
            cont.note = cont.passed ? "declared (origin flag used as a proxy)"
                                    : "continuity flag not declared; equality analysis needs it";
            r.audits.push_back(cont);
            auto point_probe = [&](const Vec& x, const IntegrateConfig&, std::uint64_t) {
                return exact_est(phi(x));
            };
            std::vector<Vec> dseeds = d.vertices;
            dseeds.push_back(interior_point(d));
            if (phi.argmax && contains(d, *phi.argmax)) dseeds.push_back(*phi.argmax);
            GridMax peak =
                grid_max(point_probe, box_of(d), dseeds, membership_fn(d), cfg, sid++);
            put(r, "omega_prime", vec_to_string(peak.argmax));
            putd(r, "phi_at_omega_prime", peak.best.value);
            Estimate cap =
                volume(intersect(k, translate(k, sub(peak.argmax, w))), cfg, sid++);
            Estimate volk = volume(k, cfg, sid++);
            Estimate c = div_est(cap, volk);
            putd(r, "c_omega", c.value);
            r.lhs = mul_est(c, measure(phi, d, cfg, sid++));
            GridMax gm = grid_max(arm_neg, box_of(k), kseeds, in_k, cfg, sid++);
            put(r, "sup_argmax_y", vec_to_string(gm.argmax));
            r.sup_on_rhs = true;
            r.sup_converged = gm.converged;
            r.rhs = scale_est(gm.best, C);
            finalize(r);
            return r;
        }

        double weight = phi(w) / phi.sup_value;
        putd(r, "phi_omega_over_sup", weight);
        if (!phi.flags.sup_exact)
            r.note = "declared sup is approximate; the weight uses it as given";
        r.lhs = scale_est(measure(phi, d, cfg, sid++), weight);
        auto arm_pos = [&](const Vec& y, const IntegrateConfig& pc, std::uint64_t st) {
            return measure(phi, translate(k, sub(w, y)), pc, st);
        };
        GridMax g1 = grid_max(arm_neg, box_of(k), kseeds, in_k, cfg, sid++);
        GridMax g2 = grid_max(arm_pos, box_of(k), kseeds, in_k, cfg, sid++);
        const GridMax& pick = g1.best.value <= g2.best.value ? g1 : g2;
        putd(r, "sup_minus_arm", g1.best.value);
        putd(r, "sup_plus_arm", g2.best.value);
        put(r, "sup_argmax_y", vec_to_string(pick.argmax));
        r.sup_on_rhs = true;
        r.sup_converged = pick.converged;
        r.rhs = scale_est(pick.best, C);
        finalize(r);
        return r;
    }
    if (variant == "question_probe") {
        Body d0 = difference_body(k);
        Vec half(static_cast<size_t>(n), 4.0);
        bool any = false;
        for (double wi : w) any = any || wi != 0.0;
        if (any)
            for (size_t i = 0; i < half.size(); ++i)
                half[i] = w[i] != 0.0 ? std::fabs(w[i]) : 4.0;
        SearchBox span{scaled(half, -1.0), half};
        auto probe = [&](const Vec& x, const IntegrateConfig& pc, std::uint64_t st) {
            return measure(phi, translate(d0, x), pc, st);
        };
        GridMax gm = grid_max(probe, span, {zeros(n)}, {}, cfg, sid++);
        r.constant = C;
        r.lhs = gm.best;
        put(r, "max_omega", vec_to_string(gm.argmax));
        SupEstimate s1 = sup_translate(phi, k, cfg, sid++);
        SupEstimate s2 = sup_translate(phi, negk, cfg, sid++);
        const SupEstimate& pick = s1.best.value <= s2.best.value ? s1 : s2;
        r.sup_on_rhs = true;
        r.sup_converged = pick.converged && gm.converged;
        r.rhs = scale_est(pick.best, C);
        finalize(r);
        r.verdict = Verdict::inconclusive;
        r.note = "open-question probe, no verdict claimed; max observed ratio " +
                 fmt(r.ratio) + " at omega " + vec_to_string(gm.argmax);
        return r;
    }
    throw PreconditionError("unknown shifted variant: " + variant);
}

IneqReport verify_ck(const std::string& variant, const Density& phi, const Body& k,
                     const std::optional<Body>& l, const IntegrateConfig& cfg) {
    cfg.validate();
    if (phi.n != k.dim) throw DimensionError("verify: density/body dimension mismatch");
    const int n = k.dim;
    if (!contains(k, zeros(n)))
        throw PreconditionError("interpolation bounds need the origin inside K");
    const double pow2n = std::ldexp(1.0, n);
    IneqReport r;
    r.family = "ck";
    r.variant = variant;
    put(r, "body", body_desc(k));
    put(r, "density", phi.spec);
    put(r, "seed", std::to_string(cfg.seed));
    std::uint64_t sid = 1;
    Body negk = neg_body(k);

    if (variant == "classical_ck" || variant == "classical_conv") {
        if (phi.kind != Density::Kind::lebesgue)
            throw PreconditionError("classical variants compare volumes; use the lebesgue density");
        if (variant == "classical_ck") {
            r.constant = pow2n / double(n + 1);
            r.lhs = ck_integral(phi, k, cfg, sid++);
        } else {
            r.constant = pow2n;
            r.lhs = volume(conv_union(k, negk), cfg, sid++);
        }
        r.rhs = scale_est(volume(k, cfg, sid++), r.constant);
        finalize(r);
        return r;
    }
    if (variant == "measure_ck" || variant == "measure_conv") {
        r.audits.push_back(audit_density("radially_decreasing", phi,
                                         DensityClass::radially_decreasing,
                                         box_of(difference_body(k)), 11));
        SupEstimate s = sup_interpolated_translate(phi, k, cfg, sid++);
        putd(r, "sup_value", s.best.value);
        putd(r, "sup_theta", s.theta);
        put(r, "sup_argmax_y", vec_to_string(s.argmax));
        r.sup_on_rhs = true;
        r.sup_converged = s.converged;
        if (variant == "measure_ck") {
            r.constant = pow2n / double(n + 1);
            r.lhs = ck_integral(phi, k, cfg, sid++);
        } else {
            r.constant = pow2n;
            r.lhs = measure(phi, conv_union(k, negk), cfg, sid++);
        }
        r.rhs = scale_est(s.best, r.constant);
        finalize(r);
        return r;
    }
    if (variant == "pair_KL") {
        if (!l) throw PreconditionError("pair_KL needs a second body");
        if (l->dim != n) throw DimensionError("pair_KL: bodies must share a dimension");
        if (!contains(*l, zeros(n)))
            throw PreconditionError("interpolation bounds need the origin inside L");
        put(r, "body2", body_desc(*l));
        r.audits.push_back(audit_density("radially_decreasing", phi,
                                         DensityClass::radially_decreasing,
                                         box_union(box_of(k), box_of(*l)), 11));
        Estimate cap = volume(intersect(k, neg_body(*l)), cfg, sid++);
        if (!(cap.value > 0.0))
            throw PreconditionError("K and -L must overlap in positive volume");
        putd(r, "vol_K_cap_negL", cap.value);
        Estimate a = scale_est(measure(phi, conv_union(k, *l), cfg, sid++),
                               1.0 / double(n + 1));
        Estimate b = ck_integral(phi, k, *l, cfg, sid++);
        SupEstimate s = sup_interpolated_translate(phi, k, *l, cfg, sid++);
        Estimate volk = volume(k, cfg, sid++);
        Estimate upper =
            scale_est(mul_est(div_est(volk, cap), s.best), pow2n / double(n + 1));
        putd(r, "chain_lower", a.value);
        putd(r, "chain_middle", b.value);
        putd(r, "chain_upper", upper.value);
        r.constant = pow2n / double(n + 1);
        r.lhs = a;
        r.rhs = upper;
        r.sup_on_rhs = true;
        r.sup_converged = s.converged;
        r.ratio = upper.value != 0.0 ? a.value / upper.value
                                     : std::numeric_limits<double>::quiet_NaN();
        if (!r.audits_passed()) {
            r.verdict = Verdict::hypothesis_failed;
            return r;
        }
        Verdict v1 = decide_verdict(a, b);
        Verdict v2 = decide_verdict(b, upper, s.converged);
        put(r, "leg_lower_vs_middle", verdict_name(v1));
        put(r, "leg_middle_vs_upper", verdict_name(v2));
        r.verdict = worse(v1, v2);
        r.note = "two-sided chain; lhs/rhs show the outer legs";
        return r;
    }
    throw PreconditionError("unknown ck variant: " + variant);
}

IneqReport verify_section_projection(const std::string& variant, const Density& phi,
                                     const Body& k, const SubspaceSpec& h,
                                     const std::optional<SubspaceSpec>& e,
                                     std::optional<int> r_param,
                                     const IntegrateConfig& cfg) {
    cfg.validate();
    const int n = k.dim;
    if (h.n != n) throw DimensionError("subspace ambient dimension mismatch");
    if (phi.n != n) throw DimensionError("verify: density/body dimension mismatch");
    if (h.dim() <= 0 || h.dim() >= n)
        throw PreconditionError("H must be a proper nontrivial coordinate subspace");
    if (k.form != Body::Form::vpolytope)
        throw PreconditionError("section inequalities run on vertex polytopes");
    const int dH = h.dim();
    const int sect_dim = n - dH;
    SubspaceSpec comp(n, h.complement());
    IneqReport r;
    r.family = "section_projection";
    r.variant = variant;
    put(r, "body", body_desc(k));
    put(r, "density", phi.spec);
    put(r, "subspace", idx_string(h.idx));
    put(r, "seed", std::to_string(cfg.seed));
    std::uint64_t sid = 1;

    auto projection_inside = [&](const Body& proj) {
        Vec zc = zeros(sect_dim);
        for (const Vec& v : proj.vertices)
            if (!contains(k, h.embed(v, zc))) return false;
        return true;
    };
    SearchBox kbox = box_of(k);
    SearchBox hbox{subvec(kbox.first, h.idx), subvec(kbox.second, h.idx)};
    SearchBox sbox{subvec(kbox.first, comp.idx), subvec(kbox.second, comp.idx)};

    if (variant == "classical") {
        if (phi.kind != Density::Kind::lebesgue)
            throw PreconditionError("classical variant compares volumes; use the lebesgue density");
        Body proj = project(k, h);
        Density leb_sect = make_lebesgue(sect_dim);
        auto probe = [&](const Vec& x, const IntegrateConfig& pc, std::uint64_t st) {
            return factor_section_measure(leb_sect, k, h, x, true, pc, st);
        };
        std::vector<Vec> seeds = proj.vertices;
        seeds.push_back(interior_point(proj));
        seeds.push_back(zeros(dH));
        GridMax gm = grid_max(probe, box_of(proj), seeds, {}, cfg, sid++);
        put(r, "max_section_at", vec_to_string(gm.argmax));
        r.constant = binomial(n, sect_dim);
        r.lhs = mul_est(volume(proj, cfg, sid++), gm.best);
        r.rhs = scale_est(volume(k, cfg, sid++), r.constant);
        finalize(r);
        return r;
    }
    if (variant == "product_mixed") {
        auto fac = split_product(phi, h);
        const Density phiH = fac.first;
        const Density phiS = fac.second;
        Body proj = project(k, h);
        if (!projection_inside(proj))
            throw PreconditionError("P_H K must be contained in K for this variant");
        r.audits.push_back(audit_density("section_factor_quasi_concave", phiS,
                                         DensityClass::quasi_concave, sbox, 11));
        r.audits.push_back(audit_peak_at_origin("section_factor_peak_at_zero", phiS));
        AuditResult cont;
        cont.name = "section_factor_continuous_at_zero";
        cont.warn_only = true;
        cont.passed = phiS.flags.continuous_at_origin;
        cont.note = cont.passed ? "declared" : "not declared; the theorem assumes it";
        r.audits.push_back(cont);
        r.audits.push_back(audit_density("projection_factor_radially_decreasing", phiH,
                                         DensityClass::radially_decreasing, hbox, 12));
        r.audits.push_back(superlevel_sections_peak_audit(phiS, k, h, proj, cfg, 13));
        r.constant = binomial(n, sect_dim);
        Estimate proj_mass = measure(phiH, proj, cfg, sid++);
        Estimate sect_mass = factor_section_measure(phiS, k, h, zeros(dH),
                                                    smooth_kind(phiS), cfg, sid++);
        r.lhs = mul_est(proj_mass, sect_mass);
        r.rhs = scale_est(measure(phi, k, cfg, sid++), r.constant);
        finalize(r);
        return r;
    }
    if (variant == "product_quasi") {
        auto fac = split_product(phi, h);
        const Density phiH = fac.first;
        const Density phiS = fac.second;
        Body proj = project(k, h);
        if (!projection_inside(proj))
            throw PreconditionError("P_H K must be contained in K for this variant");
        r.audits.push_back(audit_density("product_quasi_concave", phi,
                                         DensityClass::quasi_concave, kbox, 11));
        r.audits.push_back(audit_peak_at_origin("projection_factor_peak_at_zero", phiH));
        r.audits.push_back(audit_peak_at_origin("section_factor_peak_at_zero", phiS));
        const bool smoothS = smooth_kind(phiS);
        auto probe = [&](const Vec& x, const IntegrateConfig& pc, std::uint64_t st) {
            double wgt = phiH(x) / phiH.sup_value;
            return scale_est(factor_section_measure(phiS, k, h, x, smoothS, pc, st), wgt);
        };
        std::vector<Vec> seeds = proj.vertices;
        seeds.push_back(interior_point(proj));
        seeds.push_back(zeros(dH));
        GridMax gm = grid_max(probe, box_of(proj), seeds, {}, cfg, sid++);
        put(r, "max_weighted_section_at", vec_to_string(gm.argmax));
        r.constant = binomial(n, sect_dim);
        r.lhs = mul_est(measure(phiH, proj, cfg, sid++), gm.best);
        r.rhs = scale_est(measure(phi, k, cfg, sid++), r.constant);
        finalize(r);
        return r;
    }
    if (variant == "max_sections") {
        r.audits.push_back(
            audit_density("quasi_concave", phi, DensityClass::quasi_concave, kbox, 11));
        r.audits.push_back(audit_peak_at_origin("peak_at_zero", phi));
        auto probe_parallel = [&](const Vec& y, const IntegrateConfig& pc, std::uint64_t st) {
            return section_measure(phi, k, comp, y, pc, st);
        };
        std::vector<Vec> cseeds;
        for (const Vec& v : k.vertices) cseeds.push_back(subvec(v, comp.idx));
        cseeds.push_back(zeros(sect_dim));
        GridMax g1 = grid_max(probe_parallel, sbox, cseeds, {}, cfg, sid++);
        auto probe_perp = [&](const Vec& x, const IntegrateConfig& pc, std::uint64_t st) {
            return section_measure(phi, k, h, x, pc, st);
        };
        std::vector<Vec> hseeds;
        for (const Vec& v : k.vertices) hseeds.push_back(subvec(v, h.idx));
        hseeds.push_back(zeros(dH));
        GridMax g2 = grid_max(probe_perp, hbox, hseeds, {}, cfg, sid++);
        put(r, "max_parallel_at", vec_to_string(g1.argmax));
        put(r, "max_perp_at", vec_to_string(g2.argmax));
        putd(r, "density_sup", phi.sup_value);
        r.constant = binomial(n, sect_dim);
        r.lhs = mul_est(g1.best, g2.best);
        r.rhs = scale_est(measure(phi, k, cfg, sid++), r.constant * phi.sup_value);
        finalize(r);
        return r;
    }
    if (variant == "two_subspace") {
        if (!e) throw PreconditionError("two_subspace needs the second subspace E");
        if (e->n != n) throw DimensionError("subspace ambient dimension mismatch");
        const int i_dim = e->dim();
        const int j_dim = dH;
        if (i_dim < 2 || i_dim > n - 1 || j_dim < 2 || j_dim > n - 1)
            throw PreconditionError("subspace dimensions must lie in [2, n-1]");
        if (i_dim + j_dim < n + 1)
            throw PreconditionError("subspaces too small: need dim E + dim H >= n + 1");
        for (int c : e->complement())
            if (std::find(h.idx.begin(), h.idx.end(), c) == h.idx.end())
                throw PreconditionError("the orthogonal complement of E must lie in H");
        put(r, "subspace2", idx_string(e->idx));
        r.audits.push_back(audit_density("p_concave_minus_1_over_n", phi,
                                         DensityClass::p_concave, kbox, 11,
                                         -1.0 / double(n)));
        std::vector<int> fidx;
        for (int c : e->idx)
            if (std::find(h.idx.begin(), h.idx.end(), c) != h.idx.end()) fidx.push_back(c);
        SubspaceSpec fsub(n, fidx);
        const int kdim = i_dim + j_dim - n;
        SubspaceSpec ecomp(n, e->complement());
        SubspaceSpec hcomp(n, h.complement());
        SubspaceSpec fcomp(n, fsub.complement());
        auto sup_sections = [&](const SubspaceSpec& fixed, std::uint64_t stream) {
            auto probe = [&, fixed](const Vec& x, const IntegrateConfig& pc,
                                    std::uint64_t st) {
                return section_measure(phi, k, fixed, x, pc, st);
            };
            SearchBox span{subvec(kbox.first, fixed.idx), subvec(kbox.second, fixed.idx)};
            std::vector<Vec> seeds;
            for (const Vec& v : k.vertices) seeds.push_back(subvec(v, fixed.idx));
            seeds.push_back(zeros(fixed.dim()));
            return grid_max(probe, span, seeds, {}, cfg, stream);
        };
        GridMax ge = sup_sections(ecomp, sid++);
        GridMax gh = sup_sections(hcomp, sid++);
        GridMax gf = sup_sections(fcomp, sid++);
        putd(r, "sup_sections_E", ge.best.value);
        putd(r, "sup_sections_H", gh.best.value);
        putd(r, "sup_sections_F", gf.best.value);
        put(r, "F_indices", idx_string(fidx));
        putd(r, "dim_F", kdim);
        r.constant = binomial(n - kdim, n - i_dim);
        r.lhs = mul_est(ge.best, gh.best);
        r.rhs = scale_est(mul_est(gf.best, measure(phi, k, cfg, sid++)), r.constant);
        r.sup_on_rhs = true;
        r.sup_converged = gf.converged;
        finalize(r);
        return r;
    }
    if (variant == "p_concave") {
        if (!r_param) throw PreconditionError("p_concave needs the exponent r");
        const int rr = *r_param;
        if (rr < 1) throw PreconditionError("r must be a positive integer");
        auto fac = split_product(phi, h);
        const Density phiH = fac.first;
        const Density phiS = fac.second;
        Body proj = project(k, h);
        putd(r, "r", rr);
        r.audits.push_back(audit_density("section_factor_p_concave", phiS,
                                         DensityClass::p_concave, sbox, 11,
                                         1.0 / double(rr)));
        r.audits.push_back(audit_density("projection_factor_radially_decreasing", phiH,
                                         DensityClass::radially_decreasing, hbox, 12));
        r.audits.push_back(superlevel_sections_peak_audit(phiS, k, h, proj, cfg, 13));
        r.constant = binomial(n + rr, dH);
        Estimate proj_mass = measure(phiH, proj, cfg, sid++);
        Estimate sect_mass = factor_section_measure(phiS, k, h, zeros(dH),
                                                    smooth_kind(phiS), cfg, sid++);
        r.lhs = mul_est(proj_mass, sect_mass);
        r.rhs = scale_est(measure(phi, k, cfg, sid++), r.constant);
        finalize(r);
        return r;
    }
    throw PreconditionError("unknown section_projection variant: " + variant);
}

IneqReport verify_functional(const std::string& variant, const QCFunction& f,
                             const std::optional<Density>& g,
                             const std::optional<Density>& phi,
                             const std::optional<SubspaceSpec>& h, std::optional<double> p,
                             const IntegrateConfig& cfg) {
    cfg.validate();
    const int n = f.dim;
    IneqReport r;
    r.family = "functional";
    r.variant = variant;
    put(r, "f_support", body_desc(f.support()));
    putd(r, "f_sup", f.sup_value);
    putd(r, "f_levels", double(f.n_levels()));
    put(r, "seed", std::to_string(cfg.seed));
    std::uint64_t sid = 1;

    Density mu = phi ? *phi : make_lebesgue(n);
    if (mu.n != n) throw DimensionError("density dimension mismatch");

    auto check_subspace = [&]() {
        if (!h) throw PreconditionError("this variant needs the subspace H");
        if (h->n != n) throw DimensionError("subspace ambient dimension mismatch");
        if (h->dim() <= 0 || h->dim() >= n)
            throw PreconditionError("H must be a proper nontrivial coordinate subspace");
    };

    if (variant == "proj_sect_weighted") {
        check_subspace();
        if (!g) throw PreconditionError("this variant needs the weight density g on H");
        if (g->n != h->dim()) throw DimensionError("g must live on H");
        put(r, "g", g->spec);
        put(r, "subspace", idx_string(h->idx));
        Body proj_supp = project(f.support(), *h);
        r.audits.push_back(audit_density("g_radially_decreasing", *g,
                                         DensityClass::radially_decreasing,
                                         box_of(proj_supp), 11));
        r.audits.push_back(layer_sections_peak_audit(f, *h, cfg, 12));
        r.constant = binomial(n, n - h->dim());
        Estimate proj_leg = fn_integral(project_fn(f, *h), *g, cfg, sid++);
        Estimate sect_leg = fn_section_integral(f, *h, zeros(h->dim()), cfg, sid++);
        r.lhs = mul_est(proj_leg, sect_leg);
        Density lifted = lift_density(*g, *h);
        r.rhs = scale_est(fn_integral(f, lifted, cfg, sid++), r.constant * f.sup_value);
        finalize(r);
        return r;
    }
    if (variant == "proj_sect") {
        check_subspace();
        put(r, "subspace", idx_string(h->idx));
        Density leb_h = make_lebesgue(h->dim());
        Density leb_n = make_lebesgue(n);
        Body proj_supp = project(f.support(), *h);
        auto probe = [&](const Vec& x, const IntegrateConfig& pc, std::uint64_t st) {
            return fn_section_integral(f, *h, x, pc, st);
        };
        std::vector<Vec> seeds = proj_supp.vertices;
        seeds.push_back(interior_point(proj_supp));
        seeds.push_back(zeros(h->dim()));
        GridMax gm = grid_max(probe, box_of(proj_supp), seeds, {}, cfg, sid++);
        put(r, "max_section_at", vec_to_string(gm.argmax));
        r.constant = binomial(n, n - h->dim());
        r.lhs = mul_est(fn_integral(project_fn(f, *h), leb_h, cfg, sid++), gm.best);
        r.rhs = scale_est(fn_integral(f, leb_n, cfg, sid++), r.constant * f.sup_value);
        finalize(r);
        return r;
    }
    if (variant == "delta_diff") {
        put(r, "density", mu.spec);
        r.audits.push_back(audit_density("radially_decreasing", mu,
                                         DensityClass::radially_decreasing,
                                         box_of(difference_body(f.support())), 11));
        r.constant = binomial(2 * n, n);
        r.lhs = fn_integral(difference_function(f, DiffMode::full), mu, cfg, sid++);
        IntegrateConfig pc = cfg;
        pc.n_samples =
            std::max<std::int64_t>(2000, cfg.n_samples / std::max(1, 2 * f.n_levels()));
        RandomStream root(0, sid++);
        Acc acc;
        double prev = 0.0;
        std::uint64_t sub = 1;
        for (size_t i = 0; i < f.layers.size(); ++i) {
            double wgt = f.sup_value * (f.levels[i] - prev);
            prev = f.levels[i];
            Estimate a1 =
                translated_average(mu, f.layers[i], pc, root.substream(sub++).stream());
            Estimate a2 = translated_average(mu, neg_body(f.layers[i]), pc,
                                             root.substream(sub++).stream());
            acc.add(wgt, min_est(a1, a2));
        }
        r.rhs = scale_est(acc.done(), r.constant);
        finalize(r);
        return r;
    }
    if (variant == "ck_family") {
        put(r, "density", mu.spec);
        r.audits.push_back(audit_density("radially_decreasing", mu,
                                         DensityClass::radially_decreasing,
                                         box_of(difference_body(f.support())), 11));
        r.audits.push_back(audit_fn_origin(f));
        const double pow2n = std::ldexp(1.0, n);
        IntegrateConfig sup_cfg = cfg;
        sup_cfg.n_samples =
            std::max<std::int64_t>(30000, cfg.n_samples / std::max(1, f.n_levels()));
        RandomStream root(0, 0xcf);
        std::uint64_t sub = 1;
        Acc sup_acc;
        bool conv = true;
        double prev = 0.0;
        for (size_t i = 0; i < f.layers.size(); ++i) {
            double wgt = f.sup_value * (f.levels[i] - prev);
            prev = f.levels[i];
            SupEstimate s = sup_interpolated_translate(mu, f.layers[i], sup_cfg,
                                                       root.substream(sub++).stream());
            conv = conv && s.converged;
            sup_acc.add(wgt, s.best);
        }
        Estimate sup_col = sup_acc.done();
        putd(r, "sup_column", sup_col.value);
        r.sup_on_rhs = true;
        r.sup_converged = conv;
        const int q = std::min(cfg.theta_order, 9);
        QuadratureRule gl = gauss_legendre(q, 0.0, 1.0);
        IntegrateConfig node_cfg = cfg;
        node_cfg.n_samples = std::max<std::int64_t>(4000, cfg.n_samples / std::max(1, q));
        Acc leg1;
        for (size_t j = 0; j < gl.nodes.size(); ++j) {
            QCFunction fd = difference_function(f, DiffMode::split, gl.nodes[j]);
            leg1.add(gl.weights[j],
                     fn_integral(fd, mu, node_cfg, root.substream(0x100 + j).stream()));
        }
        Estimate lhs1 = leg1.done();
        Estimate rhs1 = scale_est(sup_col, pow2n / double(n + 1));
        Estimate lhs2 = fn_integral(difference_function(f, DiffMode::symmetrized), mu, cfg,
                                    root.substream(0x200).stream());
        Estimate rhs2 = scale_est(sup_col, pow2n);
        putd(r, "interp_lhs", lhs1.value);
        putd(r, "interp_rhs", rhs1.value);
        putd(r, "conv_lhs", lhs2.value);
        putd(r, "conv_rhs", rhs2.value);
        r.lhs = lhs1;
        r.rhs = rhs1;
        r.constant = pow2n / double(n + 1);
        r.ratio = rhs1.value != 0.0 ? lhs1.value / rhs1.value
                                    : std::numeric_limits<double>::quiet_NaN();
        if (!r.audits_passed()) {
            r.verdict = Verdict::hypothesis_failed;
            return r;
        }
        Verdict v1 = decide_verdict(lhs1, rhs1, conv);
        Verdict v2 = decide_verdict(lhs2, rhs2, conv);
        put(r, "interp_leg", verdict_name(v1));
        put(r, "conv_leg", verdict_name(v2));
        if (severity(v2) > severity(v1)) {
            r.lhs = lhs2;
            r.rhs = rhs2;
            r.constant = pow2n;
            r.ratio = rhs2.value != 0.0 ? lhs2.value / rhs2.value
                                        : std::numeric_limits<double>::quiet_NaN();
        }
        r.verdict = worse(v1, v2);
        r.note = "two legs share one sup column; lhs/rhs show the worse leg";
        return r;
    }
    if (variant == "prop31") {
        if (!p || !(*p > 0.0)) throw PreconditionError("prop31 needs p > 0");
        put(r, "density", mu.spec);
        putd(r, "p", *p);
        r.audits.push_back(audit_fn_p_concave(f, *p, 21));
        r.audits.push_back(audit_fn_origin(f));
        r.audits.push_back(audit_density("mu_quasi_concave", mu, DensityClass::quasi_concave,
                                         box_of(f.support()), 11));
        r.audits.push_back(audit_peak_at_origin("mu_peaks_at_origin", mu));
        auto alpha0 = alpha_constant(n, *p, 0.0);
        putd(r, "alpha_n_p0_closed", alpha0.first);
        putd(r, "alpha_n_p0_quadrature", alpha0.second);
        r.constant = alpha0.first;
        Estimate mu_supp = measure(mu, f.support(), cfg, sid++);
        if (!g) {
            r.lhs = scale_est(mu_supp, alpha0.first);
            r.rhs = scale_est(fn_integral(f, mu, cfg, sid++), 1.0 / f.sup_value);
            finalize(r);
            return r;
        }
        if (g->n != n) throw DimensionError("g must live in the ambient dimension");
        put(r, "g", g->spec);
        const auto nodes = theta_nodes(*p, cfg.theta_order);
        const double pp = *p;
        const int nd = n;
        auto geval = g->eval;
        auto mueval = mu.eval;
        Density mix;
        mix.n = n;
        mix.kind = Density::Kind::custom;
        mix.flags = ClassFlags{};
        mix.flags.sup_exact = false;
        mix.spec = "theta-mixed(" + g->spec + ")";
        mix.unbounded_support = false;
        mix.support_bound = std::make_shared<Body>(f.support());
        mix.eval = [nodes, geval, mueval, pp, nd](const Vec& x) {
            double s = 0.0;
            Vec sx(x.size());
            for (const auto& nw : nodes) {
                const double c = 1.0 - std::pow(nw.first, pp);
                const double cn = std::pow(c, nd);
                for (size_t i = 0; i < x.size(); ++i) sx[i] = c * x[i];
                s += nw.second * cn * geval(sx);
            }
            return s * mueval(x);
        };
        r.lhs = measure(mix, f.support(), cfg, sid++);
        r.rhs = scale_est(fn_integral(f, pointwise_product(*g, mu), cfg, sid++),
                          1.0 / f.sup_value);
        auto alpha1 = alpha_constant(n, *p, 1.0);
        auto alpha0n1 = alpha_constant(n + 1, *p, 0.0);
        Estimate g_mu = measure(pointwise_product(*g, mu), f.support(), cfg, sid++);
        if (g->flags.p_concave && *g->flags.p_concave >= 1.0 - 1e-12) {
            Acc left;
            left.add(alpha1.first * (*g)(zeros(n)), exact_est(1.0));
            Estimate lega = scale_est(mu_supp, alpha1.first * (*g)(zeros(n)));
            Estimate legb = scale_est(g_mu, alpha0n1.first);
            Acc both;
            both.add(1.0, lega);
            both.add(1.0, legb);
            Estimate lt = both.done();
            put(r, "specialization_concave_g",
                fmt(lt.value) + " <= " + fmt(r.rhs.value) + " (" +
                    verdict_name(decide_verdict(lt, r.rhs)) + ")");
        } else if (g->flags.radially_decreasing) {
            Estimate lt = scale_est(g_mu, alpha0.first);
            put(r, "specialization_rad_dec_g",
                fmt(lt.value) + " <= " + fmt(r.rhs.value) + " (" +
                    verdict_name(decide_verdict(lt, r.rhs)) + ")");
        }
        finalize(r);
        return r;
    }
    if (variant == "cor32") {
        if (!p || !(*p > 0.0)) throw PreconditionError("cor32 needs p > 0");
        put(r, "density", mu.spec);
        putd(r, "p", *p);
        r.audits.push_back(audit_fn_p_concave(f, *p, 21));
        r.audits.push_back(audit_density("mu_quasi_concave", mu, DensityClass::quasi_concave,
                                         box_of(f.support()), 11));
        auto alpha0 = alpha_constant(n, *p, 0.0);
        r.constant = alpha0.first;
        auto sup_pt = fn_sup(f);
        const Vec& x0 = sup_pt.second;
        put(r, "f_argmax", vec_to_string(x0));
        double wgt = mu(x0) / mu.sup_value;
        putd(r, "mu_x0_over_sup", wgt);
        r.lhs = scale_est(measure(mu, f.support(), cfg, sid++), alpha0.first * wgt);
        r.rhs = scale_est(fn_integral(f, mu, cfg, sid++), 1.0 / f.sup_value);
        finalize(r);
        return r;
    }
    throw PreconditionError("unknown functional variant: " + variant);
}

IneqReport check_lemma_f(const Density& phi1, int n, int m, double x) {
    if (phi1.n != 1) throw DimensionError("the kernel lemma is one dimensional");
    if (n < 1 || m < 1) throw PreconditionError("n and m must be positive integers");
    if (!(x > 0.0)) throw PreconditionError("x must be positive");
    IneqReport r;
    r.family = "lemma";
    r.variant = "kernel_lower_bound";
    put(r, "density", phi1.spec);
    putd(r, "n", n);
    putd(r, "m", m);
    putd(r, "x", x);
    AuditResult mono;
    mono.name = "decreasing_on_0_x";
    if (!phi1.flags.radially_decreasing) {
        mono.passed = false;
        mono.note = "decreasing class not declared by the density";
    } else {
        double prev = std::numeric_limits<double>::infinity();
        const double scale = std::fabs(phi1(Vec{0.0})) + 1.0;
        mono.note = "declared and monotone on the probe grid";
        for (int i = 0; i <= 64; ++i) {
            double t = x * double(i) / 64.0;
            double v = phi1(Vec{t});
            if (v > prev + 1e-9 * scale) {
                mono.passed = false;
                mono.note = "increase near t " + fmt(t);
                break;
            }
            prev = v;
        }
    }
    r.audits.push_back(mono);
    QuadratureRule gl = gauss_legendre(65, 0.0, x);
    double lv = 0.0, rv = 0.0;
    for (size_t i = 0; i < gl.nodes.size(); ++i) {
        const double t = gl.nodes[i];
        const double base = gl.weights[i] * std::pow(t, m - 1) * phi1(Vec{t});
        lv += std::pow(1.0 - t / x, n) * base;
        rv += base;
    }
    const double inv_binom = 1.0 / binomial(n + m, n);
    r.constant = inv_binom;
    Estimate lhs_e;
    lhs_e.value = lv;
    lhs_e.method = Method::grid_quadrature;
    lhs_e.n_samples = 65;
    Estimate rhs_e;
    rhs_e.value = rv * inv_binom;
    rhs_e.method = Method::grid_quadrature;
    rhs_e.n_samples = 65;
    r.lhs = lhs_e;
    r.rhs = rhs_e;
    r.note = "lower bound: the verdict tests rhs <= lhs";
    if (!r.audits_passed()) r.verdict = Verdict::hypothesis_failed;
    else r.verdict = decide_verdict(rhs_e, lhs_e);
    r.ratio = rhs_e.value != 0.0 ? lhs_e.value / rhs_e.value
                                 : std::numeric_limits<double>::quiet_NaN();
    return r;
}

std::pair<double, double> alpha_constant(int n, double p, double q) {
    if (n < 1) throw PreconditionError("alpha: n must be a positive integer");
    if (!(p > 0.0) || q < 0.0) throw PreconditionError("alpha: need p > 0 and q >= 0");
    const double closed = std::exp(std::lgamma(1.0 / p + q) + std::lgamma(double(n) + 1.0) -
                                   std::lgamma(1.0 + double(n) + 1.0 / p + q)) /
                          p;
    int b = 0;
    for (int cand = 1; cand <= 12 && b == 0; ++cand) {
        double a = p * cand;
        if (std::fabs(a - std::round(a)) < 1e-9 && std::round(a) >= 1.0) b = cand;
    }
    QuadratureRule gl = gauss_legendre(65, 0.0, 1.0);
    double quad = 0.0;
    if (b > 0) {
        // theta = u^b straightens the fractional endpoint power
        for (size_t i = 0; i < gl.nodes.size(); ++i) {
            const double u = gl.nodes[i];
            const double theta = std::pow(u, b);
            quad += gl.weights[i] * std::pow(1.0 - std::pow(theta, p), n) *
                    std::pow(theta, p * q) * double(b) * std::pow(u, b - 1);
        }
    } else {
        for (size_t i = 0; i < gl.nodes.size(); ++i) {
            const double theta = gl.nodes[i];
            quad += gl.weights[i] * std::pow(1.0 - std::pow(theta, p), n) *
                    std::pow(theta, p * q);
        }
    }
    return {closed, quad};
}

IneqReport run_counterexample(const std::string& id, const CounterexampleParams& params,
                              const IntegrateConfig& cfg) {
    cfg.validate();
    IneqReport r;
    r.family = "counterexample";
    r.variant = id;
    put(r, "seed", std::to_string(cfg.seed));

    if (id == "ring") {
        const double eps = params.eps;
        if (!(eps > 0.0) || eps >= 1e-4)
            throw PreconditionError("ring scenario needs 0 < eps < 1e-4");
        const double delta = params.delta > 0.0 ? params.delta : std::sqrt(eps) / 100.0;
        Density ring = make_ring(eps, delta);
        putd(r, "eps", eps);
        putd(r, "delta", delta);
        put(r, "expected_verdict", "violated");
        r.constant = 6.0;
        Body two_disk = make_ball(2, 2.0);
        IntegrateConfig grid_cfg = cfg;
        grid_cfg.prefer = IntegrateConfig::Prefer::grid;
        r.lhs = measure(ring, two_disk, grid_cfg, 1);
        const double closed =
            4.0 * kPi * eps + kPi * (delta * delta - eps * eps);
        putd(r, "closed_form_lhs", closed);
        putd(r, "lens_exact_lhs", measure(ring, two_disk, cfg, 1).value);
        SupEstimate s = sup_translate(ring, make_ball(2, 1.0), cfg, 2);
        putd(r, "sup_translate", s.best.value);
        putd(r, "sup_center_distance", norm2(s.argmax));
        r.sup_on_rhs = true;
        r.sup_converged = s.converged;
        r.rhs = scale_est(s.best, 6.0);
        finalize(r);
        r.note = "six unit-disk translates cannot absorb the outer shell mass";
        return r;
    }
    if (id == "wedge") {
        if (params.thetas.size() < 2)
            throw PreconditionError("wedge scenario needs at least two openings");
        std::vector<Estimate> masses;
        std::vector<double> sups;
        for (size_t i = 0; i < params.thetas.size(); ++i) {
            const double th = params.thetas[i];
            Density wdg = make_wedge(th);
            const double depth = 2.0 / th;
            Body kk = translate(make_cube(2, 0.5), Vec{depth + 0.5, 0.5});
            Estimate m_i = measure(wdg, difference_body(kk), cfg, 10 + 2 * i);
            SearchBox sb{Vec{-3.0, -3.0}, Vec{3.0, 3.0}};
            SupEstimate s = sup_translate(wdg, kk, cfg, 11 + 2 * i, sb);
            putd(r, "mu_diff_theta_" + fmt(th), m_i.value);
            putd(r, "sup_theta_" + fmt(th), s.best.value);
            masses.push_back(m_i);
            sups.push_back(s.best.value);
        }
        put(r, "expected_verdict", "holds");
        AuditResult trend;
        trend.name = "difference_mass_decreasing";
        trend.warn_only = true;
        trend.note = "strict decrease across the opening sequence";
        for (size_t i = 1; i < masses.size(); ++i)
            if (!(masses[i].value < masses[i - 1].value)) {
                trend.passed = false;
                trend.note = "no decrease between openings " + fmt(params.thetas[i - 1]) +
                             " and " + fmt(params.thetas[i]);
            }
        r.audits.push_back(trend);
        AuditResult supcheck;
        supcheck.name = "sup_tracks_volume";
        supcheck.warn_only = true;
        supcheck.note = "every translate sup within 5% of vol(K) = 1";
        for (double sv : sups)
            if (std::fabs(sv - 1.0) > 0.05) {
                supcheck.passed = false;
                supcheck.note = "translate sup " + fmt(sv) + " drifts from vol(K) = 1";
            }
        r.audits.push_back(supcheck);
        r.constant = 0.1;
        r.lhs = masses.back();
        r.rhs = scale_est(masses.front(), 0.1);
        finalize(r);
        if (!trend.passed || !supcheck.passed) {
            r.verdict = Verdict::inconclusive;
            r.note = "trend checks failed; see the audit notes";
        } else {
            r.note = "difference mass collapses while the translate suprema stay near vol(K)";
        }
        return r;
    }
    if (id == "parallelogram") {
        if (params.alphas.size() < 2)
            throw PreconditionError("parallelogram scenario needs at least two angles");
        Density g2;
        g2.n = 2;
        g2.kind = Density::Kind::custom;
        g2.eval = [](const Vec& x) { return std::exp(-(x[0] * x[0] + x[1] * x[1])); };
        g2.flags.radially_decreasing = true;
        g2.flags.quasi_concave = true;
        g2.flags.log_concave = true;
        g2.flags.even = true;
        g2.flags.continuous_at_origin = true;
        g2.flags.p_concave = 0.0;
        g2.sup_value = 1.0;
        g2.argmax = zeros(2);
        g2.spec = "exp(-|x|^2)";
        Density g1 = g2;
        g1.n = 1;
        g1.eval = [](const Vec& x) { return std::exp(-x[0] * x[0]); };
        g1.argmax = zeros(1);
        g1.spec = "exp(-x^2)";
        SubspaceSpec hx(2, {0});
        static const QuadratureRule unit = gauss_legendre(65, 0.0, 1.0);
        std::vector<Estimate> ratios;
        for (size_t i = 0; i < params.alphas.size(); ++i) {
            const double al = params.alphas[i];
            if (!(al > 0.0) || al >= kPi / 2.0)
                throw PreconditionError("shear angles must lie in (0, pi/2)");
            const double slope = std::tan(al);
            Body ka = make_vpolytope({Vec{1.0, slope - 1.0}, Vec{1.0, slope + 1.0},
                                      Vec{-1.0, -slope + 1.0}, Vec{-1.0, -slope - 1.0}},
                                     true, "parallelogram");
            Estimate mu2 = measure(g2, ka, cfg, 10 + i);
            Body proj = project(ka, hx);
            Vec plo, phi_box;
            bounding_box(proj, plo, phi_box);
            double projv = 0.0;
            const double width = phi_box[0] - plo[0];
            for (size_t j = 0; j < unit.nodes.size(); ++j) {
                const double t = plo[0] + width * unit.nodes[j];
                projv += width * unit.weights[j] * std::exp(-t * t);
            }
            Estimate proj_e;
            proj_e.value = projv;
            proj_e.method = Method::grid_quadrature;
            proj_e.n_samples = 65;
            Estimate sec0 =
                factor_section_measure(g1, ka, hx, Vec{0.0}, true, cfg, 30 + i);
            Estimate ratio = div_est(mul_est(proj_e, sec0), scale_est(mu2, 2.0));
            ratios.push_back(ratio);
            putd(r, "ratio_alpha_" + fmt(al), ratio.value);
            putd(r, "mu2_alpha_" + fmt(al), mu2.value);
        }
        put(r, "expected_verdict", "holds");
        AuditResult inc;
        inc.name = "ratio_strictly_increasing";
        inc.warn_only = true;
        inc.note = "strict growth across the shear sequence";
        for (size_t i = 1; i < ratios.size(); ++i) {
            const double gap = ratios[i].value - ratios[i - 1].value;
            const double band =
                3.0 * std::hypot(ratios[i].std_error, ratios[i - 1].std_error);
            if (!(gap > band)) {
                inc.passed = false;
                inc.note = "growth between angles " + fmt(params.alphas[i - 1]) + " and " +
                           fmt(params.alphas[i]) + " not resolved";
            }
        }
        r.audits.push_back(inc);
        r.constant = binomial(2, 1);
        r.lhs = scale_est(ratios.front(), 2.0);
        r.rhs = ratios.back();
        finalize(r);
        if (!inc.passed) {
            r.verdict = Verdict::inconclusive;
            r.note = "trend checks failed; see the audit notes";
        } else {
            r.note = "projection-times-section ratio grows once the containment hypothesis drops";
        }
        return r;
    }
    throw PreconditionError("unknown counterexample id: " + id);
}

}  // namespace rslab
