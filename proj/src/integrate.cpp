#include "rslab/integrate.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>
#include <vector>

#include "rslab/quadrature.hpp"
#include "rslab/rng.hpp"

namespace rslab {

std::string method_name(Method m) {
    switch (m) {
        case Method::exact: return "exact";
        case Method::mc_box: return "mc_box";
        case Method::grid_quadrature: return "grid_quadrature";
    }
    return "?";
}

void IntegrateConfig::validate() const {
    if (n_samples < 1000) throw PreconditionError("config: n_samples must be >= 1000");
    if (grid_res < 16) throw PreconditionError("config: grid resolution must be >= 16");
    if (theta_order < 2) throw PreconditionError("config: theta order must be >= 2");
    if (!(theta_min > 0.0) || theta_min > 1.0)
        throw PreconditionError("config: theta_min must be in (0, 1]");
    if (sup_coarse < 3) throw PreconditionError("config: sup grid needs >= 3 points");
    if (threads < 1 || threads > 64)
        throw PreconditionError("config: threads must be in [1, 64]");
}

namespace {

constexpr std::int64_t kChunk = 8192;

struct BoxSpec {
    Vec lo, hi;
    double vol = 0.0;
    bool empty = true;
};

BoxSpec finite_box(Vec lo, Vec hi) {
    BoxSpec b;
    b.lo = std::move(lo);
    b.hi = std::move(hi);
    b.vol = 1.0;
    b.empty = false;
    for (size_t i = 0; i < b.lo.size(); ++i) {
        if (!std::isfinite(b.lo[i]) || !std::isfinite(b.hi[i]))
            throw PreconditionError("integration domain is unbounded");
        double w = b.hi[i] - b.lo[i];
        if (w <= 0.0) {
            b.empty = true;
            b.vol = 0.0;
            return b;
        }
        b.vol *= w;
    }
    return b;
}

BoxSpec intersect_boxes(const BoxSpec& a, const Vec& lo, const Vec& hi) {
    Vec l = a.lo, h = a.hi;
    for (size_t i = 0; i < l.size(); ++i) {
        l[i] = std::max(l[i], lo[i]);
        h[i] = std::min(h[i], hi[i]);
        if (l[i] >= h[i]) {
            BoxSpec e;
            e.lo = l;
            e.hi = h;
            return e;  // empty
        }
    }
    return finite_box(l, h);
}

BoxSpec integration_box(const Density& phi, const Body& k) {
    Vec lo, hi;
    bounding_box(k, lo, hi);
    BoxSpec box = finite_box(lo, hi);
    if (box.empty) return box;
    if (phi.support_bound) {
        Vec slo, shi;
        bounding_box(*phi.support_bound, slo, shi);
        box = intersect_boxes(box, slo, shi);
    }
    return box;
}

Estimate exact_estimate(double v) { return {v, 0.0, 0, Method::exact}; }

// chunked rejection Monte-Carlo over a box. Each sample i consumes the
// counter range [i*dims, (i+1)*dims) of one stream, and chunk partials are
// reduced in chunk order, so the result is independent of the thread count.
template <class F>
Estimate mc_over_box(const BoxSpec& box, int dims, F&& value_at, std::int64_t n,
                     RandomStream rs, int threads) {
    if (box.empty || n <= 0) return exact_estimate(0.0);
    const std::int64_t chunks = (n + kChunk - 1) / kChunk;
    struct Partial {
        double sum = 0.0, sumsq = 0.0;
    };
    std::vector<Partial> partials(static_cast<size_t>(chunks));

    auto run_chunk = [&](std::int64_t c) {
        const std::int64_t begin = c * kChunk;
        const std::int64_t end = std::min(n, begin + kChunk);
        RandomStream local = rs.at(std::uint64_t(begin) * std::uint64_t(dims));
        Partial p;
        Vec x(static_cast<size_t>(dims));
        for (std::int64_t i = begin; i < end; ++i) {
            for (int d = 0; d < dims; ++d)
                x[size_t(d)] = box.lo[size_t(d)] +
                               (box.hi[size_t(d)] - box.lo[size_t(d)]) * local.next_unit();
            double v = value_at(x);
            p.sum += v;
            p.sumsq += v * v;
        }
        partials[size_t(c)] = p;
    };

    if (threads <= 1 || chunks == 1) {
        for (std::int64_t c = 0; c < chunks; ++c) run_chunk(c);
    } else {
        std::atomic<std::int64_t> next{0};
        auto worker = [&] {
            for (;;) {
                std::int64_t c = next.fetch_add(1);
                if (c >= chunks) return;
                run_chunk(c);
            }
        };
        std::vector<std::thread> pool;
        int nt = int(std::min<std::int64_t>(threads, chunks));
        pool.reserve(size_t(nt));
        for (int t = 0; t < nt; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    double sum = 0.0, sumsq = 0.0;
    for (const Partial& p : partials) {
        sum += p.sum;
        sumsq += p.sumsq;
    }
    double mean = sum / double(n);
    double var = 0.0;
    if (n > 1) var = std::max(0.0, (sumsq - sum * sum / double(n)) / double(n - 1));
    Estimate e;
    e.value = box.vol * mean;
    e.std_error = box.vol * std::sqrt(var / double(n));
    e.n_samples = n;
    e.method = Method::mc_box;
    return e;
}

// area of the intersection of discs |x| <= r1 and |x - c| <= r2, |c| = d
double circle_intersection_area(double r1, double r2, double d) {
    if (d >= r1 + r2) return 0.0;
    if (d <= std::abs(r1 - r2)) {
        double r = std::min(r1, r2);
        return M_PI * r * r;
    }
    double a1 = std::acos(std::clamp((d * d + r1 * r1 - r2 * r2) / (2 * d * r1), -1.0, 1.0));
    double a2 = std::acos(std::clamp((d * d + r2 * r2 - r1 * r1) / (2 * d * r2), -1.0, 1.0));
    double tri = 0.5 * std::sqrt(std::max(
                           0.0, (-d + r1 + r2) * (d + r1 - r2) * (d - r1 + r2) * (d + r1 + r2)));
    return r1 * r1 * a1 + r2 * r2 * a2 - tri;
}

// the two radial pieces of the ring density: central disc and outer shell
std::vector<std::pair<double, double>> ring_pieces(const Density& phi) {
    double eps = phi.params.at("eps");
    double delta = phi.params.at("delta");
    return {{0.0, delta}, {2.0 - eps, 2.0}};
}

Estimate ring_ball_exact(const Density& phi, const Body& k) {
    double d = norm2(k.center);
    double area = 0.0;
    for (auto [lo, hi] : ring_pieces(phi)) {
        double outer = circle_intersection_area(hi, k.radius, d);
        double inner = lo > 0.0 ? circle_intersection_area(lo, k.radius, d) : 0.0;
        area += outer - inner;
    }
    return exact_estimate(area);
}

// per-piece polar midpoint grid; exact when the body is a ball at the
// origin covering a piece, O(1/res) at indicator boundaries otherwise
Estimate polar_ring_grid(const Density& phi, const Body& k, int res) {
    auto member = membership_fn(k);
    double total = 0.0;
    std::int64_t cells = 0;
    Vec x(2);
    for (auto [lo, hi] : ring_pieces(phi)) {
        double hr = (hi - lo) / res;
        double ht = 2.0 * M_PI / res;
        for (int i = 0; i < res; ++i) {
            double r = lo + (i + 0.5) * hr;
            double row = 0.0;
            for (int j = 0; j < res; ++j) {
                double t = (j + 0.5) * ht;
                x[0] = r * std::cos(t);
                x[1] = r * std::sin(t);
                if (member(x)) row += 1.0;
            }
            total += row * r * hr * ht;
            cells += res;
        }
    }
    Estimate e = exact_estimate(total);
    e.method = Method::grid_quadrature;
    e.n_samples = cells;
    return e;
}

Estimate tensor_grid_measure(const Density& phi, const Body& k, const BoxSpec& box,
                             int res) {
    const int n = k.dim;
    if (n > 3) throw UnsupportedError("grid quadrature supports n <= 3 only");
    if (box.empty) return exact_estimate(0.0);
    auto member = membership_fn(k);
    Vec h(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) h[size_t(i)] = (box.hi[size_t(i)] - box.lo[size_t(i)]) / res;
    double cell = 1.0;
    for (int i = 0; i < n; ++i) cell *= h[size_t(i)];
    std::int64_t total_cells = 1;
    for (int i = 0; i < n; ++i) total_cells *= res;
    double sum = 0.0;
    Vec x(static_cast<size_t>(n));
    for (std::int64_t idx = 0; idx < total_cells; ++idx) {
        std::int64_t rem = idx;
        for (int i = 0; i < n; ++i) {
            x[size_t(i)] = box.lo[size_t(i)] + (double(rem % res) + 0.5) * h[size_t(i)];
            rem /= res;
        }
        if (member(x)) sum += phi(x);
    }
    Estimate e = exact_estimate(sum * cell);
    e.method = Method::grid_quadrature;
    e.n_samples = total_cells;
    return e;
}

// uniform rejection sample from a polytope; the stream is consumed
// sequentially, so callers give this its own substream
Vec rejection_sample(const Body& k, const BoxSpec& box,
                     const std::function<bool(const Vec&)>& member, RandomStream& rs) {
    Vec x(box.lo.size());
    for (int tries = 0; tries < 2000000; ++tries) {
        for (size_t d = 0; d < x.size(); ++d)
            x[d] = box.lo[d] + (box.hi[d] - box.lo[d]) * rs.next_unit();
        if (member(x)) return x;
    }
    throw DegeneracyError("rejection sampling: acceptance rate too low in " +
                          (k.label.empty() ? std::string("body") : k.label));
}

}  // namespace

Estimate volume(const Body& k, const IntegrateConfig& cfg, std::uint64_t stream) {
    cfg.validate();
    if (k.is_empty()) return exact_estimate(0.0);
    if (cfg.prefer == IntegrateConfig::Prefer::exact) return exact_estimate(exact_volume(k));
    if (cfg.prefer != IntegrateConfig::Prefer::mc &&
        cfg.prefer != IntegrateConfig::Prefer::grid) {
        if (auto v = try_exact_volume(k)) return exact_estimate(*v);
    }
    Vec lo, hi;
    bounding_box(k, lo, hi);
    BoxSpec box = finite_box(lo, hi);
    if (box.empty) return exact_estimate(0.0);
    if (cfg.prefer == IntegrateConfig::Prefer::grid) {
        Density one = make_lebesgue(k.dim);
        return tensor_grid_measure(one, k, box, cfg.grid_res);
    }
    auto member = membership_fn(k);
    RandomStream rs(cfg.seed, stream);
    return mc_over_box(
        box, k.dim, [&](const Vec& x) { return member(x) ? 1.0 : 0.0; }, cfg.n_samples,
        rs, cfg.threads);
}

Estimate measure(const Density& phi, const Body& k, const IntegrateConfig& cfg,
                 std::uint64_t stream) {
    cfg.validate();
    if (phi.n != k.dim) throw DimensionError("measure: density/body dimension mismatch");
    if (k.is_empty()) return exact_estimate(0.0);
    if (phi.kind == Density::Kind::lebesgue) return volume(k, cfg, stream);

    if (phi.kind == Density::Kind::ring) {
        if (k.form == Body::Form::ball && cfg.prefer != IntegrateConfig::Prefer::grid &&
            cfg.prefer != IntegrateConfig::Prefer::mc)
            return ring_ball_exact(phi, k);
        if (cfg.prefer != IntegrateConfig::Prefer::mc)
            return polar_ring_grid(phi, k, cfg.grid_res);
    }

    BoxSpec box = integration_box(phi, k);
    if (box.empty) return exact_estimate(0.0);

    if (cfg.prefer == IntegrateConfig::Prefer::grid)
        return tensor_grid_measure(phi, k, box, cfg.grid_res);
    if (cfg.prefer == IntegrateConfig::Prefer::exact)
        throw UnsupportedError("measure: no exact path for this density/body pair");

    auto member = membership_fn(k);
    auto f = phi.eval;
    RandomStream rs(cfg.seed, stream);
    return mc_over_box(
        box, k.dim, [&](const Vec& x) { return member(x) ? f(x) : 0.0; }, cfg.n_samples,
        rs, cfg.threads);
}

Estimate translated_average(const Density& phi, const Body& k,
                            const IntegrateConfig& cfg, std::uint64_t stream) {
    cfg.validate();
    if (k.form != Body::Form::vpolytope)
        throw FormError("translated average: vertex-form body required");
    if (k.is_empty()) return exact_estimate(0.0);
    if (phi.n != k.dim) throw DimensionError("translated average: dimension mismatch");
    if (phi.kind == Density::Kind::lebesgue)
        return volume(k, cfg, stream);  // every translate has the same volume

    Vec lo, hi;
    bounding_box(k, lo, hi);
    BoxSpec kbox = finite_box(lo, hi);
    auto member = membership_fn(k);
    auto f = phi.eval;

    const std::int64_t m = std::clamp<std::int64_t>(cfg.n_samples / 1000, 64, 400);
    const std::int64_t inner = std::max<std::int64_t>(500, cfg.n_samples / m);
    RandomStream base(cfg.seed, stream);
    RandomStream outer = base.substream(1);

    double sum = 0.0, sumsq = 0.0;
    for (std::int64_t j = 0; j < m; ++j) {
        Vec y = rejection_sample(k, kbox, member, outer);
        // mu(-y + K): integrand phi(x) * 1_K(x + y) over box(K) - y
        BoxSpec tbox = kbox;
        for (size_t d = 0; d < tbox.lo.size(); ++d) {
            tbox.lo[d] -= y[d];
            tbox.hi[d] -= y[d];
        }
        Vec shifted(y.size());
        Estimate inner_est = mc_over_box(
            tbox, k.dim,
            [&](const Vec& x) {
                for (size_t d = 0; d < x.size(); ++d) shifted[d] = x[d] + y[d];
                return member(shifted) ? f(x) : 0.0;
            },
            inner, base.substream(100 + std::uint64_t(j)), cfg.threads);
        sum += inner_est.value;
        sumsq += inner_est.value * inner_est.value;
    }
    double mean = sum / double(m);
    double var = std::max(0.0, (sumsq - sum * sum / double(m)) / double(m - 1));
    Estimate e;
    e.value = mean;
    e.std_error = std::sqrt(var / double(m));
    e.n_samples = m * inner;
    e.method = Method::mc_box;
    return e;
}

Estimate translated_integral(const Density& phi, const Body& k, const Body& l,
                             const IntegrateConfig& cfg, std::uint64_t stream) {
    cfg.validate();
    if (k.form != Body::Form::vpolytope)
        throw FormError("translated integral: vertex-form outer body required");
    if (k.is_empty() || l.is_empty()) return exact_estimate(0.0);
    if (phi.n != k.dim || k.dim != l.dim)
        throw DimensionError("translated integral: dimension mismatch");

    Vec klo, khi, llo, lhi;
    bounding_box(k, klo, khi);
    bounding_box(l, llo, lhi);
    BoxSpec kbox = finite_box(klo, khi);
    BoxSpec lbox = finite_box(llo, lhi);
    auto member_k = membership_fn(k);
    auto member_l = membership_fn(l);
    auto f = phi.eval;

    RandomStream base(cfg.seed, stream);
    Estimate vol_k = volume(k, cfg, base.substream(99).stream());

    const std::int64_t m = std::clamp<std::int64_t>(cfg.n_samples / 1000, 64, 400);
    const std::int64_t inner = std::max<std::int64_t>(500, cfg.n_samples / m);
    RandomStream outer = base.substream(1);

    double sum = 0.0, sumsq = 0.0;
    for (std::int64_t j = 0; j < m; ++j) {
        Vec y = rejection_sample(k, kbox, member_k, outer);
        BoxSpec tbox = lbox;
        for (size_t d = 0; d < tbox.lo.size(); ++d) {
            tbox.lo[d] += y[d];
            tbox.hi[d] += y[d];
        }
        Vec shifted(y.size());
        Estimate inner_est = mc_over_box(
            tbox, k.dim,
            [&](const Vec& x) {
                for (size_t d = 0; d < x.size(); ++d) shifted[d] = x[d] - y[d];
                return member_l(shifted) ? f(x) : 0.0;
            },
            inner, base.substream(100 + std::uint64_t(j)), cfg.threads);
        sum += inner_est.value;
        sumsq += inner_est.value * inner_est.value;
    }
    double mean = sum / double(m);
    double var = std::max(0.0, (sumsq - sum * sum / double(m)) / double(m - 1));
    Estimate e;
    e.value = vol_k.value * mean;
    double rel = vol_k.value * std::sqrt(var / double(m));
    double relv = mean * vol_k.std_error;
    e.std_error = std::sqrt(rel * rel + relv * relv);
    e.n_samples = m * inner + vol_k.n_samples;
    e.method = Method::mc_box;
    return e;
}

namespace {

SearchBox default_translate_span(const Density& phi, const Body& k) {
    Vec klo, khi;
    bounding_box(k, klo, khi);
    if (phi.support_bound) {
        Vec slo, shi;
        bounding_box(*phi.support_bound, slo, shi);
        Vec lo(slo.size()), hi(slo.size());
        for (size_t i = 0; i < slo.size(); ++i) {
            lo[i] = slo[i] - khi[i];
            hi[i] = shi[i] - klo[i];
        }
        return {lo, hi};
    }
    if (phi.argmax) {
        // effective-support heuristic for unbounded light-tailed densities
        Vec lo(klo.size()), hi(klo.size());
        for (size_t i = 0; i < klo.size(); ++i) {
            double half = 6.0 + 0.5 * (khi[i] - klo[i]);
            double c = (*phi.argmax)[i] - 0.5 * (klo[i] + khi[i]);
            lo[i] = c - half;
            hi[i] = c + half;
        }
        return {lo, hi};
    }
    throw PreconditionError("sup search: no finite default span for this density");
}

struct SupPoint {
    Vec x;
    double value = 0.0;
};

}  // namespace

SupEstimate sup_translate(const Density& phi, const Body& k, const IntegrateConfig& cfg,
                          std::uint64_t stream, const std::optional<SearchBox>& search) {
    cfg.validate();
    if (phi.n != k.dim) throw DimensionError("sup search: dimension mismatch");
    SearchBox span = search ? *search : default_translate_span(phi, k);
    const int n = k.dim;
    for (int i = 0; i < n; ++i)
        if (!(span.first[size_t(i)] <= span.second[size_t(i)]))
            throw PreconditionError("sup search: empty search region");

    const int g = n <= 2 ? cfg.sup_coarse : std::max(4, cfg.sup_coarse / 2);
    IntegrateConfig probe_cfg = cfg;
    probe_cfg.n_samples = std::max<std::int64_t>(2000, cfg.n_samples / 40);

    Vec center(static_cast<size_t>(n)), halfspan(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        center[size_t(i)] = 0.5 * (span.first[size_t(i)] + span.second[size_t(i)]);
        halfspan[size_t(i)] = 0.5 * (span.second[size_t(i)] - span.first[size_t(i)]);
    }

    SupPoint best;
    best.value = -1.0;
    int close_rounds = 0;
    int rounds_done = 0;
    double prev_best = -1.0;

    std::int64_t grid_points = 1;
    for (int i = 0; i < n; ++i) grid_points *= g;

    for (int round = 0; round <= cfg.sup_rounds; ++round) {
        Vec x(static_cast<size_t>(n));
        for (std::int64_t idx = 0; idx < grid_points; ++idx) {
            std::int64_t rem = idx;
            for (int i = 0; i < n; ++i) {
                int ci = int(rem % g);
                rem /= g;
                double frac = g == 1 ? 0.0 : (2.0 * ci / double(g - 1) - 1.0);
                x[size_t(i)] = center[size_t(i)] + frac * halfspan[size_t(i)];
                x[size_t(i)] = std::clamp(x[size_t(i)], span.first[size_t(i)],
                                          span.second[size_t(i)]);
            }
            std::uint64_t sid = (std::uint64_t(round) << 32) | std::uint64_t(idx);
            Estimate est = measure(phi, translate(k, x), probe_cfg,
                                   RandomStream(0, stream).substream(sid).stream());
            if (est.value > best.value) best = {x, est.value};
        }
        rounds_done = round + 1;
        if (round > 0) {
            double scale = std::max({std::abs(best.value), std::abs(prev_best), 1e-300});
            if (std::abs(best.value - prev_best) <= cfg.sup_tol * scale)
                ++close_rounds;
            else
                close_rounds = 0;
            if (close_rounds >= 2) break;
        }
        prev_best = best.value;
        center = best.x;
        for (double& h : halfspan) h *= 0.5;
    }

    Estimate final_est =
        measure(phi, translate(k, best.x), cfg, RandomStream(0, stream).substream(0xf1).stream());
    SupEstimate s;
    s.best = final_est;
    s.argmax = best.x;
    s.refinements = rounds_done - 1;
    s.converged = close_rounds >= 2;
    return s;
}

Estimate ck_integral(const Density& phi, const Body& k, const Body& l,
                     const IntegrateConfig& cfg, std::uint64_t stream) {
    cfg.validate();
    if (k.form != Body::Form::vpolytope || l.form != Body::Form::vpolytope)
        throw FormError("interpolation integral: vertex-form bodies required");
    if (!contains(k, Vec(k.dim, 0.0)))
        throw PreconditionError("interpolation integral: body must contain the origin");

    QuadratureRule rule = gauss_legendre(cfg.theta_order, 0.0, 1.0);
    IntegrateConfig node_cfg = cfg;
    node_cfg.n_samples = std::max<std::int64_t>(1000, cfg.n_samples / cfg.theta_order);

    double value = 0.0, var = 0.0;
    std::int64_t samples = 0;
    bool any_mc = false;
    RandomStream base(cfg.seed, stream);
    for (size_t i = 0; i < rule.nodes.size(); ++i) {
        double theta = rule.nodes[i];
        Body m = minkowski_sum(transform(k, 1.0 - theta, Vec(k.dim, 0.0)),
                               transform(l, theta, Vec(l.dim, 0.0)));
        Estimate est = measure(phi, m, node_cfg, base.substream(i).stream());
        value += rule.weights[i] * est.value;
        var += rule.weights[i] * rule.weights[i] * est.std_error * est.std_error;
        samples += est.n_samples;
        if (est.method == Method::mc_box) any_mc = true;
    }
    Estimate e;
    e.value = value;
    e.std_error = std::sqrt(var);
    e.n_samples = samples;
    e.method = any_mc ? Method::mc_box : Method::exact;
    return e;
}

Estimate ck_integral(const Density& phi, const Body& k, const IntegrateConfig& cfg,
                     std::uint64_t stream) {
    if (k.form != Body::Form::vpolytope)
        throw FormError("interpolation integral: vertex-form body required");
    return ck_integral(phi, k, transform(k, -1.0, Vec(k.dim, 0.0)), cfg, stream);
}

SupEstimate sup_interpolated_translate(const Density& phi, const Body& k, const Body& l,
                                       const IntegrateConfig& cfg,
                                       std::uint64_t stream) {
    cfg.validate();
    if (k.form != Body::Form::vpolytope || l.form != Body::Form::vpolytope)
        throw FormError("interpolated sup: vertex-form bodies required");
    if (!contains(k, Vec(k.dim, 0.0)))
        throw PreconditionError("interpolated sup: body must contain the origin");
    const int n = k.dim;

    // translate grid: vertices, centroid, vertex-centroid midpoints
    std::vector<Vec> ys;
    Vec c = interior_point(k);
    ys.push_back(c);
    for (const Vec& v : k.vertices) {
        ys.push_back(v);
        ys.push_back(scaled(add(v, c), 0.5));
    }

    const int t_count = 12;
    std::vector<double> thetas(t_count);
    for (int j = 0; j < t_count; ++j)
        thetas[j] = std::pow(cfg.theta_min, 1.0 - double(j) / (t_count - 1));

    IntegrateConfig probe_cfg = cfg;
    probe_cfg.n_samples = std::max<std::int64_t>(1500, cfg.n_samples / 60);
    RandomStream base(0, stream);

    auto ratio_at = [&](const Vec& y, double theta, const IntegrateConfig& c2,
                        std::uint64_t sid) {
        Body b = translate(transform(l, theta, Vec(size_t(n), 0.0)), scaled(y, 1.0 - theta));
        Estimate est = measure(phi, b, c2, base.substream(sid).stream());
        double scale = std::pow(theta, n);
        est.value /= scale;
        est.std_error /= scale;
        return est;
    };

    double best_val = -1.0;
    Vec best_y;
    double best_theta = 1.0;
    std::uint64_t sid = 1;
    for (size_t yi = 0; yi < ys.size(); ++yi)
        for (int j = 0; j < t_count; ++j) {
            Estimate est = ratio_at(ys[yi], thetas[j], probe_cfg, sid++);
            if (est.value > best_val) {
                best_val = est.value;
                best_y = ys[yi];
                best_theta = thetas[j];
            }
        }

    // refine theta around the best node on a shrinking log bracket
    int refinements = 0, close = 0;
    double prev = best_val;
    double lo = std::max(cfg.theta_min, best_theta * 0.25);
    double hi = std::min(1.0, best_theta * 4.0);
    for (int round = 0; round < cfg.sup_rounds; ++round) {
        const int steps = 7;
        for (int j = 0; j < steps; ++j) {
            double t = lo * std::pow(hi / lo, double(j) / (steps - 1));
            Estimate est = ratio_at(best_y, t, probe_cfg, sid++);
            if (est.value > best_val) {
                best_val = est.value;
                best_theta = t;
            }
        }
        ++refinements;
        double scale = std::max({std::abs(best_val), std::abs(prev), 1e-300});
        if (std::abs(best_val - prev) <= cfg.sup_tol * scale)
            ++close;
        else
            close = 0;
        prev = best_val;
        if (close >= 2) break;
        double w = std::sqrt(hi / lo);
        lo = std::max(cfg.theta_min, best_theta / std::sqrt(w));
        hi = std::min(1.0, best_theta * std::sqrt(w));
    }

    Estimate final_est = ratio_at(best_y, best_theta, cfg, 0xf2);
    SupEstimate s;
    s.best = final_est;
    s.argmax = best_y;
    s.theta = best_theta;
    s.refinements = refinements;
    s.converged = close >= 2;
    return s;
}

SupEstimate sup_interpolated_translate(const Density& phi, const Body& k,
                                       const IntegrateConfig& cfg,
                                       std::uint64_t stream) {
    if (k.form != Body::Form::vpolytope)
        throw FormError("interpolated sup: vertex-form body required");
    return sup_interpolated_translate(phi, k, transform(k, -1.0, Vec(k.dim, 0.0)), cfg,
                                      stream);
}

}  // namespace rslab
