#include "rslab/functional.hpp"

#include <algorithm>
#include <cmath>

namespace rslab {
namespace {

// representative points used to probe that one layer sits inside the next
std::vector<Vec> probe_points(const Body& b) {
    switch (b.form) {
        case Body::Form::vpolytope:
            return b.vertices;
        case Body::Form::ball: {
            std::vector<Vec> pts{b.center};
            for (int i = 0; i < b.dim; ++i) {
                Vec lo = b.center, hi = b.center;
                lo[size_t(i)] -= b.radius;
                hi[size_t(i)] += b.radius;
                pts.push_back(lo);
                pts.push_back(hi);
            }
            return pts;
        }
        case Body::Form::oracle: {
            // best effort: box corners that the oracle accepts, plus midpoint
            std::vector<Vec> pts;
            Vec mid = interior_point(b);
            if (contains(b, mid)) pts.push_back(mid);
            const int n = b.dim;
            for (int mask = 0; mask < (1 << n); ++mask) {
                Vec c(static_cast<size_t>(n));
                for (int i = 0; i < n; ++i)
                    c[size_t(i)] = (mask >> i) & 1 ? b.oracle->hi[size_t(i)]
                                                   : b.oracle->lo[size_t(i)];
                if (contains(b, c)) pts.push_back(c);
            }
            return pts;
        }
    }
    return {};
}

}  // namespace

double QCFunction::operator()(const Vec& x) const {
    // membership is monotone down the chain, so find the deepest layer
    // containing x by bisection
    if (!contains(layers.front(), x)) return 0.0;
    size_t lo = 0, hi = layers.size();  // invariant: x in layers[lo]
    while (lo + 1 < hi) {
        size_t mid = (lo + hi) / 2;
        if (contains(layers[mid], x))
            lo = mid;
        else
            hi = mid;
    }
    return sup_value * levels[lo];
}

QCFunction make_qc_function(int dim, double sup_value, std::vector<double> levels,
                            std::vector<Body> layers) {
    if (dim < 1 || dim > 6) throw DimensionError("level function: dimension must be in [1, 6]");
    if (!(sup_value > 0.0) || !std::isfinite(sup_value))
        throw PreconditionError("level function: peak value must be positive and finite");
    if (levels.empty() || levels.size() != layers.size())
        throw PreconditionError("level function: need matching nonempty level/layer lists");
    if (levels.size() > 128)
        throw PreconditionError("level function: at most 128 levels");
    for (size_t i = 0; i < levels.size(); ++i) {
        if (!(levels[i] > 0.0) || levels[i] > 1.0 + 1e-12)
            throw PreconditionError("level function: thresholds must lie in (0, 1]");
        if (i > 0 && !(levels[i] > levels[i - 1]))
            throw PreconditionError("level function: thresholds must increase strictly");
        if (layers[i].dim != dim)
            throw DimensionError("level function: layer dimension mismatch");
        if (layers[i].is_empty())
            throw PreconditionError("level function: empty layer");
    }
    for (size_t i = 0; i + 1 < layers.size(); ++i)
        for (const Vec& p : probe_points(layers[i + 1]))
            if (!contains(layers[i], p))
                throw PreconditionError("level function: layers are not nested");
    QCFunction f;
    f.dim = dim;
    f.sup_value = sup_value;
    f.levels = std::move(levels);
    f.layers = std::move(layers);
    return f;
}

QCFunction qc_indicator(const Body& k) {
    if (k.is_empty()) throw PreconditionError("level function: empty support");
    return make_qc_function(k.dim, 1.0, {1.0}, {k});
}

QCFunction qc_approximation(const Density& phi, int m) {
    if (m < 1 || m > 128) throw PreconditionError("level approximation: m must be in [1, 128]");
    if (!phi.flags.quasi_concave)
        throw PreconditionError("level approximation: density must be quasi-concave");
    std::vector<double> levels;
    std::vector<Body> layers;
    for (int i = 1; i <= m; ++i) {
        double t = double(i) / m;
        levels.push_back(t);
        layers.push_back(superlevel(phi, t));
    }
    return make_qc_function(phi.n, phi.sup_value, std::move(levels), std::move(layers));
}

QCFunction difference_function(const QCFunction& f, DiffMode mode, double theta) {
    if (mode == DiffMode::split && (theta < 0.0 || theta > 1.0))
        throw PreconditionError("difference function: theta must be in [0, 1]");
    QCFunction g = f;
    for (size_t i = 0; i < g.layers.size(); ++i) {
        const Body& s = f.layers[i];
        if (s.form == Body::Form::oracle)
            throw FormError("difference function: oracle layers are not supported");
        switch (mode) {
            case DiffMode::full:
                g.layers[i] = difference_body(s);
                break;
            case DiffMode::split:
                if (theta == 0.0)
                    g.layers[i] = s;
                else if (theta == 1.0)
                    g.layers[i] = transform(s, -1.0, Vec(size_t(s.dim), 0.0));
                else
                    g.layers[i] =
                        minkowski_sum(transform(s, 1.0 - theta, Vec(size_t(s.dim), 0.0)),
                                      transform(s, -theta, Vec(size_t(s.dim), 0.0)));
                break;
            case DiffMode::symmetrized:
                if (s.form == Body::Form::ball && norm2(s.center) <= 1e-12)
                    g.layers[i] = s;
                else
                    g.layers[i] =
                        conv_union(s, transform(s, -1.0, Vec(size_t(s.dim), 0.0)));
                break;
        }
    }
    return g;
}

std::function<double(const Vec&)> p_difference(const QCFunction& f, double p, int res) {
    if (p >= 0.0) throw PreconditionError("p-difference: p must be negative");
    if (f.dim > 2) throw UnsupportedError("p-difference: brute-force search needs dim <= 2");
    if (res < 8) throw PreconditionError("p-difference: grid too coarse");

    // snapshot the evaluator with cheap per-layer membership
    std::vector<std::function<bool(const Vec&)>> members;
    members.reserve(f.layers.size());
    for (const Body& b : f.layers) members.push_back(membership_fn(b));
    std::vector<double> levels = f.levels;
    double sup = f.sup_value;
    auto eval = [members, levels, sup](const Vec& x) {
        double t = 0.0;
        for (size_t i = 0; i < members.size(); ++i) {
            if (!members[i](x)) break;
            t = levels[i];
        }
        return sup * t;
    };

    Vec lo, hi;
    bounding_box(f.support(), lo, hi);
    const int n = f.dim;
    return [eval, lo, hi, res, n, p](const Vec& z) {
        double best = 0.0;
        Vec x(static_cast<size_t>(n)), y(static_cast<size_t>(n));
        std::int64_t cells = 1;
        for (int i = 0; i < n; ++i) cells *= res;
        for (std::int64_t idx = 0; idx < cells; ++idx) {
            std::int64_t rem = idx;
            for (int i = 0; i < n; ++i) {
                double fr = (double(rem % res) + 0.5) / res;
                rem /= res;
                x[size_t(i)] = lo[size_t(i)] + fr * (hi[size_t(i)] - lo[size_t(i)]);
                y[size_t(i)] = x[size_t(i)] - z[size_t(i)];
            }
            double a = eval(x);
            if (a <= best) continue;  // even min(a, .) cannot beat the incumbent
            double b = eval(y);
            if (a <= 0.0 || b <= 0.0) continue;
            double v = std::pow(std::pow(a, p) + std::pow(b, p), 1.0 / p);
            best = std::max(best, v);
        }
        return best;
    };
}

QCFunction project_fn(const QCFunction& f, const SubspaceSpec& h) {
    if (h.n != f.dim) throw DimensionError("shadow function: subspace dimension mismatch");
    QCFunction g;
    g.dim = h.dim();
    g.sup_value = f.sup_value;
    g.levels = f.levels;
    g.layers.reserve(f.layers.size());
    for (const Body& b : f.layers) g.layers.push_back(project(b, h));
    return g;
}

Estimate fn_integral(const QCFunction& f, const Density& phi,
                     const IntegrateConfig& cfg, std::uint64_t stream) {
    cfg.validate();
    if (phi.n != f.dim) throw DimensionError("layer-cake integral: dimension mismatch");
    IntegrateConfig node = cfg;
    node.n_samples =
        std::max<std::int64_t>(1000, cfg.n_samples / std::int64_t(f.layers.size()));
    RandomStream base(cfg.seed, stream);
    double value = 0.0, var = 0.0;
    std::int64_t samples = 0;
    bool any_mc = false;
    double prev_t = 0.0;
    for (size_t i = 0; i < f.layers.size(); ++i) {
        double w = f.sup_value * (f.levels[i] - prev_t);
        prev_t = f.levels[i];
        Estimate mi = measure(phi, f.layers[i], node, base.substream(i).stream());
        value += w * mi.value;
        var += w * w * mi.std_error * mi.std_error;
        samples += mi.n_samples;
        if (mi.method == Method::mc_box) any_mc = true;
    }
    Estimate e;
    e.value = value;
    e.std_error = std::sqrt(var);
    e.n_samples = samples;
    e.method = any_mc ? Method::mc_box : Method::exact;
    return e;
}

std::pair<double, Vec> fn_sup(const QCFunction& f) {
    return {f.sup_value * f.levels.back(), interior_point(f.layers.back())};
}

}  // namespace rslab
