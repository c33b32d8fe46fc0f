#include "rslab/body.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rslab/lp.hpp"

namespace rslab {
namespace {

constexpr double kMergeTol = 1e-12;  // duplicate vertices
constexpr double kHullTol = 1e-9;    // membership / pruning

double coord_scale(const std::vector<Vec>& verts) {
    double s = 1.0;
    for (const Vec& v : verts)
        for (double c : v) s = std::max(s, std::abs(c));
    return s;
}

std::vector<Vec> dedup(std::vector<Vec> verts) {
    std::vector<Vec> out;
    for (Vec& v : verts) {
        bool dup = false;
        for (const Vec& w : out) {
            double d = 0;
            for (size_t i = 0; i < v.size(); ++i)
                d = std::max(d, std::abs(v[i] - w[i]));
            if (d <= kMergeTol) { dup = true; break; }
        }
        if (!dup) out.push_back(std::move(v));
    }
    return out;
}

// rank of the affine span of a vertex set, by Gaussian elimination
int affine_rank(const std::vector<Vec>& verts, double tol = 1e-9) {
    if (verts.size() < 2) return 0;
    const int n = int(verts[0].size());
    std::vector<Vec> rows;
    for (size_t i = 1; i < verts.size(); ++i) rows.push_back(sub(verts[i], verts[0]));
    int rank = 0;
    for (int col = 0; col < n && rank < int(rows.size()); ++col) {
        int piv = -1;
        double best = tol;
        for (int r = rank; r < int(rows.size()); ++r)
            if (std::abs(rows[r][col]) > best) { best = std::abs(rows[r][col]); piv = r; }
        if (piv < 0) continue;
        std::swap(rows[rank], rows[piv]);
        for (int r = 0; r < int(rows.size()); ++r) {
            if (r == rank) continue;
            double f = rows[r][col] / rows[rank][col];
            if (f == 0) continue;
            for (int c = 0; c < n; ++c) rows[r][c] -= f * rows[rank][c];
        }
        ++rank;
    }
    return rank;
}

// 2-D convex hull, counter-clockwise (Andrew's monotone chain). Input is
// assumed deduplicated.
std::vector<int> hull2d(const std::vector<Vec>& pts) {
    const int n = int(pts.size());
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (pts[a][0] != pts[b][0]) return pts[a][0] < pts[b][0];
        return pts[a][1] < pts[b][1];
    });
    auto cross = [&](int o, int a, int b) {
        return (pts[a][0] - pts[o][0]) * (pts[b][1] - pts[o][1]) -
               (pts[a][1] - pts[o][1]) * (pts[b][0] - pts[o][0]);
    };
    std::vector<int> h(2 * n);
    int k = 0;
    for (int ii = 0; ii < n; ++ii) {
        int i = order[ii];
        while (k >= 2 && cross(h[k - 2], h[k - 1], i) <= 1e-15) --k;
        h[k++] = i;
    }
    int lower = k + 1;
    for (int ii = n - 2; ii >= 0; --ii) {
        int i = order[ii];
        while (k >= lower && cross(h[k - 2], h[k - 1], i) <= 1e-15) --k;
        h[k++] = i;
    }
    h.resize(k - 1);
    return h;
}

std::shared_ptr<const FacetCache> build_facets(const Body& k);

}  // namespace

SubspaceSpec::SubspaceSpec(int ambient, std::vector<int> indices)
    : n(ambient), idx(std::move(indices)) {
    std::sort(idx.begin(), idx.end());
    if (idx.empty() || int(idx.size()) >= n)
        throw DimensionError("subspace: need 1 <= |I| <= n-1");
    for (size_t i = 0; i < idx.size(); ++i) {
        if (idx[i] < 0 || idx[i] >= n)
            throw DimensionError("subspace: index out of range");
        if (i > 0 && idx[i] == idx[i - 1])
            throw DimensionError("subspace: repeated index");
    }
}

std::vector<int> SubspaceSpec::complement() const {
    std::vector<int> comp;
    size_t p = 0;
    for (int i = 0; i < n; ++i) {
        if (p < idx.size() && idx[p] == i) { ++p; continue; }
        comp.push_back(i);
    }
    return comp;
}

Vec SubspaceSpec::embed(const Vec& on_h, const Vec& on_comp) const {
    if (int(on_h.size()) != dim() || int(on_comp.size()) != n - dim())
        throw DimensionError("embed: coordinate block sizes do not match");
    Vec x(n, 0.0);
    for (size_t i = 0; i < idx.size(); ++i) x[idx[i]] = on_h[i];
    std::vector<int> comp = complement();
    for (size_t i = 0; i < comp.size(); ++i) x[comp[i]] = on_comp[i];
    return x;
}

std::vector<Vec> prune_vertices(std::vector<Vec> vertices) {
    std::vector<Vec> pts = dedup(std::move(vertices));
    if (pts.size() <= 2) return pts;
    // removing a redundant point never changes the hull, so one sweep with
    // in-place removal is enough
    std::vector<Vec> others;
    for (size_t i = 0; i < pts.size();) {
        others.clear();
        for (size_t j = 0; j < pts.size(); ++j)
            if (j != i) others.push_back(pts[j]);
        if (in_convex_hull(others, pts[i], kHullTol))
            pts.erase(pts.begin() + i);
        else
            ++i;
    }
    return pts;
}

Body make_vpolytope(std::vector<Vec> vertices, bool prune, std::string label) {
    if (vertices.empty())
        throw DegeneracyError("vpolytope: empty vertex list");
    const size_t n = vertices[0].size();
    if (n == 0 || n > 6)
        throw DimensionError("vpolytope: dimension must be in [1, 6]");
    for (const Vec& v : vertices) {
        if (v.size() != n)
            throw DimensionError("vpolytope: mixed vertex dimensions");
        for (double c : v)
            if (!std::isfinite(c))
                throw DegeneracyError("vpolytope: non-finite coordinate");
    }
    Body b;
    b.form = Body::Form::vpolytope;
    b.dim = int(n);
    b.vertices = prune ? prune_vertices(std::move(vertices)) : dedup(std::move(vertices));
    b.label = std::move(label);
    return b;
}

Body make_empty(int n) {
    Body b;
    b.form = Body::Form::vpolytope;
    b.dim = n;
    return b;
}

Body make_simplex(int n) {
    if (n < 1 || n > 6) throw DimensionError("simplex: dimension must be in [1, 6]");
    std::vector<Vec> verts(1, Vec(n, 0.0));
    for (int i = 0; i < n; ++i) {
        Vec e(n, 0.0);
        e[i] = 1.0;
        verts.push_back(e);
    }
    return make_vpolytope(std::move(verts), false, "simplex:" + std::to_string(n));
}

Body make_cube(int n, double half_width) {
    if (n < 1 || n > 6) throw DimensionError("cube: dimension must be in [1, 6]");
    if (!(half_width > 0)) throw DegeneracyError("cube: half-width must be positive");
    std::vector<Vec> verts;
    for (int mask = 0; mask < (1 << n); ++mask) {
        Vec v(n);
        for (int i = 0; i < n; ++i) v[i] = (mask >> i & 1) ? half_width : -half_width;
        verts.push_back(v);
    }
    return make_vpolytope(std::move(verts), false, "cube:" + std::to_string(n));
}

Body make_ball(int n, double r, Vec center) {
    if (n < 1 || n > 6) throw DimensionError("ball: dimension must be in [1, 6]");
    if (!(r > 0)) throw DegeneracyError("ball: radius must be positive");
    if (center.empty()) center.assign(n, 0.0);
    if (int(center.size()) != n) throw DimensionError("ball: center dimension mismatch");
    Body b;
    b.form = Body::Form::ball;
    b.dim = n;
    b.center = std::move(center);
    b.radius = r;
    b.label = "ball:" + std::to_string(n);
    return b;
}

Body make_random_polytope(int n, int n_vertices, std::uint64_t seed) {
    if (n < 1 || n > 6) throw DimensionError("random polytope: dimension must be in [1, 6]");
    if (n_vertices < n + 1)
        throw DegeneracyError("random polytope: need at least n+1 vertices");
    RandomStream base(seed, 0x72616e64626f6479ULL);
    for (int attempt = 0; attempt < 32; ++attempt) {
        RandomStream rs = base.substream(attempt);
        std::vector<Vec> verts;
        for (int v = 0; v < n_vertices; ++v) {
            // gaussian direction via Box-Muller, normalized onto the sphere
            Vec p(n);
            for (int i = 0; i < n; i += 2) {
                double u1 = std::max(rs.next_unit(), 1e-300);
                double u2 = rs.next_unit();
                double r = std::sqrt(-2.0 * std::log(u1));
                p[i] = r * std::cos(2.0 * M_PI * u2);
                if (i + 1 < n) p[i + 1] = r * std::sin(2.0 * M_PI * u2);
            }
            double len = norm2(p);
            if (len < 1e-12) { --v; continue; }
            for (double& c : p) c /= len;
            verts.push_back(p);
        }
        verts = prune_vertices(std::move(verts));
        if (int(verts.size()) >= n + 1 && affine_rank(verts) == n) {
            Body b = make_vpolytope(std::move(verts), false,
                                    "random:" + std::to_string(n) + ":" +
                                        std::to_string(n_vertices) + ":" +
                                        std::to_string(seed));
            return b;
        }
    }
    throw DegeneracyError("random polytope: could not reach full dimension");
}

Body transform(const Body& k, double scale, const Vec& translate) {
    Vec v = translate;
    if (v.empty()) v.assign(k.dim, 0.0);
    if (int(v.size()) != k.dim)
        throw DimensionError("transform: translation dimension mismatch");
    if (scale == 0.0) throw DegeneracyError("transform: zero scale");
    Body out;
    out.dim = k.dim;
    out.form = k.form;
    out.label = k.label;
    switch (k.form) {
        case Body::Form::vpolytope: {
            out.vertices.reserve(k.vertices.size());
            for (const Vec& p : k.vertices) out.vertices.push_back(add(scaled(p, scale), v));
            break;
        }
        case Body::Form::ball: {
            out.center = add(scaled(k.center, scale), v);
            out.radius = std::abs(scale) * k.radius;
            break;
        }
        case Body::Form::oracle: {
            auto src = k.oracle;
            auto o = std::make_shared<OracleBody>();
            o->inside = [src, scale, v](const Vec& x) {
                Vec y(x.size());
                for (size_t i = 0; i < x.size(); ++i) y[i] = (x[i] - v[i]) / scale;
                return src->inside(y);
            };
            o->lo.resize(k.dim);
            o->hi.resize(k.dim);
            for (int i = 0; i < k.dim; ++i) {
                double a = scale * src->lo[i] + v[i];
                double b = scale * src->hi[i] + v[i];
                o->lo[i] = std::min(a, b);
                o->hi[i] = std::max(a, b);
            }
            out.oracle = std::move(o);
            break;
        }
    }
    return out;
}

Body translate(const Body& k, const Vec& v) { return transform(k, 1.0, v); }

Body minkowski_sum(const Body& k, const Body& l) {
    if (k.dim != l.dim) throw DimensionError("minkowski_sum: dimension mismatch");
    if (k.form == Body::Form::ball && l.form == Body::Form::ball) {
        return make_ball(k.dim, k.radius + l.radius, add(k.center, l.center));
    }
    if (k.form != Body::Form::vpolytope || l.form != Body::Form::vpolytope)
        throw FormError("minkowski_sum: supported forms are polytope+polytope and ball+ball");
    if (k.is_empty() || l.is_empty()) return make_empty(k.dim);
    std::vector<Vec> sums;
    sums.reserve(k.vertices.size() * l.vertices.size());
    for (const Vec& a : k.vertices)
        for (const Vec& b : l.vertices) sums.push_back(add(a, b));
    return make_vpolytope(std::move(sums), true);
}

Body difference_body(const Body& k) {
    Body reflected = transform(k, -1.0, Vec(k.dim, 0.0));
    Body d = minkowski_sum(k, reflected);
    d.label = k.label.empty() ? "difference" : k.label + "-diff";
    return d;
}

Body conv_union(const Body& k, const Body& l) {
    if (k.dim != l.dim) throw DimensionError("conv_union: dimension mismatch");
    if (k.form != Body::Form::vpolytope || l.form != Body::Form::vpolytope)
        throw FormError("conv_union: polytope forms only");
    std::vector<Vec> verts = k.vertices;
    verts.insert(verts.end(), l.vertices.begin(), l.vertices.end());
    if (verts.empty()) return make_empty(k.dim);
    return make_vpolytope(std::move(verts), true);
}

Body ck_body(const Body& k) {
    if (k.form != Body::Form::vpolytope)
        throw FormError("ck_body: polytope form only");
    if (k.dim > 5)
        throw DimensionError("ck_body: lifted body would exceed dimension 6");
    if (!contains(k, Vec(k.dim, 0.0)))
        throw PreconditionError("ck_body: body must contain the origin");
    std::vector<Vec> verts;
    for (const Vec& v : k.vertices) {
        Vec a(v);
        a.push_back(0.0);
        verts.push_back(a);
        Vec b = scaled(v, -1.0);
        b.push_back(1.0);
        verts.push_back(b);
    }
    Body b = make_vpolytope(std::move(verts), true,
                            (k.label.empty() ? "body" : k.label) + "-ck");
    return b;
}

double support(const Body& k, const Vec& u) {
    if (int(u.size()) != k.dim) throw DimensionError("support: direction dimension mismatch");
    if (norm2(u) <= 0) throw Error("support: zero direction");
    switch (k.form) {
        case Body::Form::vpolytope: {
            if (k.is_empty()) throw DegeneracyError("support: empty body");
            double best = -std::numeric_limits<double>::infinity();
            for (const Vec& v : k.vertices) best = std::max(best, dot(v, u));
            return best;
        }
        case Body::Form::ball:
            return dot(k.center, u) + k.radius * norm2(u);
        case Body::Form::oracle: {
            // boundary hit along the u ray from an interior anchor. For a
            // body whose support point in direction u is off that ray this
            // is a lower bound; callers that need exactness use the other
            // forms.
            Vec anchor = interior_point(k);
            if (!k.oracle->inside(anchor)) anchor.assign(k.dim, 0.0);
            if (!k.oracle->inside(anchor))
                throw PreconditionError("support: no interior anchor for oracle body");
            Vec d = scaled(u, 1.0 / norm2(u));
            double lo = 0.0, hi = 1.0;
            while (k.oracle->inside(add(anchor, scaled(d, hi))) && hi < 1e9) hi *= 2.0;
            for (int it = 0; it < 60 && hi - lo > 1e-7; ++it) {
                double mid = 0.5 * (lo + hi);
                (k.oracle->inside(add(anchor, scaled(d, mid))) ? lo : hi) = mid;
            }
            return dot(add(anchor, scaled(d, lo)), u);
        }
    }
    throw Error("support: unreachable");
}

double radial(const Body& k, const Vec& u) {
    if (int(u.size()) != k.dim) throw DimensionError("radial: direction dimension mismatch");
    double ulen = norm2(u);
    if (ulen <= 0) throw Error("radial: zero direction");
    if (!contains(k, Vec(k.dim, 0.0)))
        throw PreconditionError("radial: origin must lie in the body");
    switch (k.form) {
        case Body::Form::vpolytope: {
            // maximize rho subject to rho*u in conv(vertices)
            const int nv = int(k.vertices.size());
            LpProblem lp;
            lp.n_vars = nv + 1;
            lp.c.assign(nv + 1, 0.0);
            lp.c[nv] = 1.0;
            for (int i = 0; i < k.dim; ++i) {
                Vec row(nv + 1, 0.0);
                for (int j = 0; j < nv; ++j) row[j] = k.vertices[j][i];
                row[nv] = -u[i];
                lp.add_row(row, '=', 0.0);
            }
            Vec ones(nv + 1, 1.0);
            ones[nv] = 0.0;
            lp.add_row(ones, '=', 1.0);
            LpSolution s = solve_lp(lp);
            if (s.status != LpStatus::optimal)
                throw DegeneracyError("radial: LP did not reach an optimum");
            return s.value;
        }
        case Body::Form::ball: {
            double uc = dot(u, k.center);
            double disc = uc * uc - ulen * ulen * (dot(k.center, k.center) - k.radius * k.radius);
            if (disc < 0) return 0.0;
            return (uc + std::sqrt(disc)) / (ulen * ulen);
        }
        case Body::Form::oracle: {
            Vec d = scaled(u, 1.0 / ulen);
            double lo = 0.0, hi = 1.0;
            while (k.oracle->inside(scaled(d, hi)) && hi < 1e9) hi *= 2.0;
            for (int it = 0; it < 60 && hi - lo > 1e-7; ++it) {
                double mid = 0.5 * (lo + hi);
                (k.oracle->inside(scaled(d, mid)) ? lo : hi) = mid;
            }
            return lo;
        }
    }
    throw Error("radial: unreachable");
}

bool contains(const Body& k, const Vec& x) {
    if (int(x.size()) != k.dim) throw DimensionError("contains: point dimension mismatch");
    switch (k.form) {
        case Body::Form::vpolytope:
            if (k.vertices.empty()) return false;
            return in_convex_hull(k.vertices, x, kHullTol);
        case Body::Form::ball: {
            double d = 0;
            for (int i = 0; i < k.dim; ++i) {
                double t = x[i] - k.center[i];
                d += t * t;
            }
            return std::sqrt(d) <= k.radius + kHullTol;
        }
        case Body::Form::oracle:
            return k.oracle->inside(x);
    }
    return false;
}

Body project(const Body& k, const SubspaceSpec& h) {
    if (h.n != k.dim) throw DimensionError("project: subspace ambient dimension mismatch");
    switch (k.form) {
        case Body::Form::vpolytope: {
            if (k.is_empty()) return make_empty(h.dim());
            std::vector<Vec> verts;
            verts.reserve(k.vertices.size());
            for (const Vec& v : k.vertices) {
                Vec p(h.dim());
                for (int i = 0; i < h.dim(); ++i) p[i] = v[h.idx[i]];
                verts.push_back(p);
            }
            return make_vpolytope(std::move(verts), true);
        }
        case Body::Form::ball: {
            Vec c(h.dim());
            for (int i = 0; i < h.dim(); ++i) c[i] = k.center[h.idx[i]];
            return make_ball(h.dim(), k.radius, c);
        }
        case Body::Form::oracle:
            throw FormError("project: oracle bodies cannot be projected");
    }
    throw Error("project: unreachable");
}

Body slice(const Body& k, const SubspaceSpec& h, const Vec& x0) {
    if (h.n != k.dim) throw DimensionError("slice: subspace ambient dimension mismatch");
    if (int(x0.size()) != h.dim()) throw DimensionError("slice: x0 must have |I| coordinates");
    std::vector<int> comp = h.complement();
    Vec lo, hi;
    bounding_box(k, lo, hi);

    Body out;
    out.form = Body::Form::oracle;
    out.dim = int(comp.size());
    auto o = std::make_shared<OracleBody>();
    o->lo.resize(comp.size());
    o->hi.resize(comp.size());
    for (size_t i = 0; i < comp.size(); ++i) {
        o->lo[i] = lo[comp[i]];
        o->hi[i] = hi[comp[i]];
    }
    Body parent = k;  // keep the sliced body alive inside the predicate
    SubspaceSpec spec = h;
    Vec fix = x0;
    o->inside = [parent, spec, fix](const Vec& y) {
        return contains(parent, spec.embed(fix, y));
    };
    out.oracle = std::move(o);
    out.label = (k.label.empty() ? "body" : k.label) + "-slice";
    return out;
}

Body intersect(const Body& k, const Body& l) {
    if (k.dim != l.dim) throw DimensionError("intersect: dimension mismatch");
    Vec klo, khi, llo, lhi;
    bounding_box(k, klo, khi);
    bounding_box(l, llo, lhi);
    Vec lo(k.dim), hi(k.dim);
    for (int i = 0; i < k.dim; ++i) {
        lo[i] = std::max(klo[i], llo[i]);
        hi[i] = std::min(khi[i], lhi[i]);
        if (lo[i] > hi[i]) return make_empty(k.dim);  // boxes disjoint
    }
    Body out;
    out.form = Body::Form::oracle;
    out.dim = k.dim;
    auto o = std::make_shared<OracleBody>();
    o->lo = lo;
    o->hi = hi;
    Body a = k, b = l;
    o->inside = [a, b](const Vec& x) { return contains(a, x) && contains(b, x); };
    out.oracle = std::move(o);
    out.label = "intersection";
    return out;
}

void bounding_box(const Body& k, Vec& lo, Vec& hi) {
    lo.assign(k.dim, 0.0);
    hi.assign(k.dim, 0.0);
    switch (k.form) {
        case Body::Form::vpolytope: {
            if (k.is_empty()) return;
            lo = hi = k.vertices[0];
            for (const Vec& v : k.vertices)
                for (int i = 0; i < k.dim; ++i) {
                    lo[i] = std::min(lo[i], v[i]);
                    hi[i] = std::max(hi[i], v[i]);
                }
            break;
        }
        case Body::Form::ball:
            for (int i = 0; i < k.dim; ++i) {
                lo[i] = k.center[i] - k.radius;
                hi[i] = k.center[i] + k.radius;
            }
            break;
        case Body::Form::oracle:
            lo = k.oracle->lo;
            hi = k.oracle->hi;
            break;
    }
}

Vec interior_point(const Body& k) {
    switch (k.form) {
        case Body::Form::vpolytope: {
            if (k.is_empty()) throw DegeneracyError("interior_point: empty body");
            Vec c(k.dim, 0.0);
            for (const Vec& v : k.vertices) c = add(c, v);
            for (double& x : c) x /= double(k.vertices.size());
            return c;
        }
        case Body::Form::ball:
            return k.center;
        case Body::Form::oracle: {
            Vec c(k.dim);
            for (int i = 0; i < k.dim; ++i) c[i] = 0.5 * (k.oracle->lo[i] + k.oracle->hi[i]);
            return c;
        }
    }
    throw Error("interior_point: unreachable");
}

double ball_volume(int n, double r) {
    return std::pow(M_PI, 0.5 * n) / std::tgamma(0.5 * n + 1.0) * std::pow(r, n);
}

namespace {

// Facet enumeration for 3-D vertex sets: every vertex triple whose plane
// supports the whole set is (part of) a facet. Cubic in the vertex count
// with an early-exit side test, which is fine at the sizes this library
// caps itself to.
std::shared_ptr<const FacetCache> facets3d(const std::vector<Vec>& verts) {
    auto cache = std::make_shared<FacetCache>();
    const int nv = int(verts.size());
    const double scale = coord_scale(verts);
    const double tol = 1e-9 * scale;
    if (affine_rank(verts) < 3) {
        cache->degenerate = true;
        return cache;
    }
    auto cross = [](const Vec& a, const Vec& b) {
        return Vec{a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
                   a[0] * b[1] - a[1] * b[0]};
    };
    std::vector<std::pair<Vec, double>> planes;
    auto have_plane = [&](const Vec& n, double off) {
        for (auto& p : planes) {
            if (std::abs(p.second - off) > 1e-7 * scale) continue;
            double d = 0;
            for (int i = 0; i < 3; ++i) d = std::max(d, std::abs(p.first[i] - n[i]));
            if (d <= 1e-7) return true;
        }
        return false;
    };
    for (int i = 0; i < nv; ++i)
        for (int j = i + 1; j < nv; ++j)
            for (int l = j + 1; l < nv; ++l) {
                Vec n = cross(sub(verts[j], verts[i]), sub(verts[l], verts[i]));
                double len = norm2(n);
                if (len <= 1e-12 * scale * scale) continue;  // collinear triple
                for (double& c : n) c /= len;
                double off = dot(n, verts[i]);
                double lo = 0, hi = 0;
                for (int m = 0; m < nv; ++m) {
                    double d = dot(n, verts[m]) - off;
                    lo = std::min(lo, d);
                    hi = std::max(hi, d);
                    if (lo < -tol && hi > tol) break;  // plane cuts the set
                }
                if (lo < -tol && hi > tol) continue;
                if (hi <= tol) {
                    if (!have_plane(n, off)) planes.emplace_back(n, off);
                } else {
                    Vec nn = scaled(n, -1.0);
                    if (!have_plane(nn, -off)) planes.emplace_back(nn, -off);
                }
            }
    for (auto& [n, off] : planes) {
        std::vector<int> members;
        for (int m = 0; m < nv; ++m)
            if (std::abs(dot(n, verts[m]) - off) <= tol) members.push_back(m);
        if (members.size() < 3) continue;
        // order the facet polygon by angle around its centroid
        Vec c(3, 0.0);
        for (int m : members) c = add(c, verts[m]);
        for (double& x : c) x /= double(members.size());
        // basis in the facet plane
        Vec a{1, 0, 0};
        if (std::abs(n[0]) > 0.9) a = Vec{0, 1, 0};
        Vec e1 = sub(a, scaled(n, dot(a, n)));
        double e1len = norm2(e1);
        for (double& x : e1) x /= e1len;
        Vec e2 = cross(n, e1);
        std::sort(members.begin(), members.end(), [&](int p, int q) {
            Vec dp = sub(verts[p], c), dq = sub(verts[q], c);
            return std::atan2(dot(dp, e2), dot(dp, e1)) <
                   std::atan2(dot(dq, e2), dot(dq, e1));
        });
        cache->normals.push_back(n);
        cache->offsets.push_back(off);
        cache->facet_vertices.push_back(members);
    }
    return cache;
}

std::shared_ptr<const FacetCache> build_facets(const Body& k) {
    auto cache = std::make_shared<FacetCache>();
    const std::vector<Vec>& verts = k.vertices;
    if (verts.empty()) {
        cache->degenerate = true;
        return cache;
    }
    if (k.dim == 1) {
        double lo = verts[0][0], hi = verts[0][0];
        for (const Vec& v : verts) {
            lo = std::min(lo, v[0]);
            hi = std::max(hi, v[0]);
        }
        cache->normals = {Vec{1.0}, Vec{-1.0}};
        cache->offsets = {hi, -lo};
        cache->degenerate = (hi - lo) <= 0;
        return cache;
    }
    if (k.dim == 2) {
        if (affine_rank(verts) < 2) {
            cache->degenerate = true;
            return cache;
        }
        std::vector<int> h = hull2d(verts);
        for (size_t i = 0; i < h.size(); ++i) {
            const Vec& a = verts[h[i]];
            const Vec& b = verts[h[(i + 1) % h.size()]];
            Vec n{b[1] - a[1], -(b[0] - a[0])};  // outward for CCW order
            double len = norm2(n);
            if (len <= 0) continue;
            n[0] /= len;
            n[1] /= len;
            cache->normals.push_back(n);
            cache->offsets.push_back(dot(n, a));
            cache->facet_vertices.push_back({h[i], h[(i + 1) % h.size()]});
        }
        return cache;
    }
    return facets3d(verts);
}

}  // namespace

const FacetCache* facet_cache(const Body& k) {
    if (k.form != Body::Form::vpolytope || k.dim > 3 || k.is_empty()) return nullptr;
    if (!k.facets_) k.facets_ = build_facets(k);
    return k.facets_.get();
}

std::function<bool(const Vec&)> membership_fn(const Body& k) {
    switch (k.form) {
        case Body::Form::ball: {
            Vec c = k.center;
            double r = k.radius + kHullTol;
            return [c, r](const Vec& x) {
                double d = 0;
                for (size_t i = 0; i < x.size(); ++i) {
                    double t = x[i] - c[i];
                    d += t * t;
                }
                return d <= r * r;
            };
        }
        case Body::Form::oracle: {
            auto o = k.oracle;
            return [o](const Vec& x) { return o->inside(x); };
        }
        case Body::Form::vpolytope: {
            if (k.is_empty()) return [](const Vec&) { return false; };
            const FacetCache* fc = (k.dim <= 3) ? facet_cache(k) : nullptr;
            if (fc && !fc->degenerate && !fc->normals.empty()) {
                double scale = coord_scale(k.vertices);
                auto keep = k.facets_;  // share ownership with the lambda
                double tol = kHullTol * scale;
                return [keep, tol](const Vec& x) {
                    const FacetCache& f = *keep;
                    for (size_t i = 0; i < f.normals.size(); ++i) {
                        double s = 0;
                        const Vec& n = f.normals[i];
                        for (size_t j = 0; j < x.size(); ++j) s += n[j] * x[j];
                        if (s > f.offsets[i] + tol) return false;
                    }
                    return true;
                };
            }
            std::vector<Vec> verts = k.vertices;
            return [verts](const Vec& x) { return in_convex_hull(verts, x, kHullTol); };
        }
    }
    return [](const Vec&) { return false; };
}

namespace {

// exact polytope volume for n <= 3 by fan triangulation over the facets
double vpoly_volume(const Body& k) {
    const std::vector<Vec>& verts = k.vertices;
    const int n = k.dim;
    if (int(verts.size()) <= n) {
        // cannot be full-dimensional
        return 0.0;
    }
    if (affine_rank(verts) < n) return 0.0;
    if (n == 1) {
        double lo = verts[0][0], hi = verts[0][0];
        for (const Vec& v : verts) {
            lo = std::min(lo, v[0]);
            hi = std::max(hi, v[0]);
        }
        return hi - lo;
    }
    if (n == 2) {
        std::vector<int> h = hull2d(verts);
        double area = 0;
        for (size_t i = 0; i < h.size(); ++i) {
            const Vec& a = verts[h[i]];
            const Vec& b = verts[h[(i + 1) % h.size()]];
            area += a[0] * b[1] - b[0] * a[1];
        }
        return 0.5 * std::abs(area);
    }
    const FacetCache* fc = facet_cache(k);
    if (!fc || fc->degenerate) return 0.0;
    Vec p = interior_point(k);
    double vol = 0;
    for (const std::vector<int>& facet : fc->facet_vertices) {
        for (size_t i = 1; i + 1 < facet.size(); ++i) {
            Vec a = sub(verts[facet[0]], p);
            Vec b = sub(verts[facet[i]], p);
            Vec c = sub(verts[facet[i + 1]], p);
            double det = a[0] * (b[1] * c[2] - b[2] * c[1]) -
                         a[1] * (b[0] * c[2] - b[2] * c[0]) +
                         a[2] * (b[0] * c[1] - b[1] * c[0]);
            vol += std::abs(det) / 6.0;
        }
    }
    return vol;
}

// axis-aligned box test: exactly 2 distinct values per coordinate and all
// 2^n corners present
bool is_axis_box(const Body& k, double& volume) {
    const int n = k.dim;
    if (int(k.vertices.size()) != (1 << n)) return false;
    std::vector<std::pair<double, double>> range(n);
    for (int i = 0; i < n; ++i) {
        double lo = k.vertices[0][i], hi = lo;
        for (const Vec& v : k.vertices) {
            lo = std::min(lo, v[i]);
            hi = std::max(hi, v[i]);
        }
        if (hi - lo <= kMergeTol) return false;
        range[i] = {lo, hi};
    }
    for (const Vec& v : k.vertices)
        for (int i = 0; i < n; ++i) {
            double d = std::min(std::abs(v[i] - range[i].first),
                                std::abs(v[i] - range[i].second));
            if (d > 1e-9) return false;
        }
    volume = 1.0;
    for (int i = 0; i < n; ++i) volume *= range[i].second - range[i].first;
    return true;
}

double simplex_volume(const Body& k) {
    const int n = k.dim;
    std::vector<Vec> rows;
    for (int i = 1; i <= n; ++i) rows.push_back(sub(k.vertices[i], k.vertices[0]));
    // determinant by elimination
    double det = 1.0;
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        double best = 0;
        for (int r = col; r < n; ++r)
            if (std::abs(rows[r][col]) > best) { best = std::abs(rows[r][col]); piv = r; }
        if (piv < 0 || best == 0) return 0.0;
        if (piv != col) {
            std::swap(rows[piv], rows[col]);
            det = -det;
        }
        det *= rows[col][col];
        for (int r = col + 1; r < n; ++r) {
            double f = rows[r][col] / rows[col][col];
            for (int c = col; c < n; ++c) rows[r][c] -= f * rows[col][c];
        }
    }
    double fact = 1.0;
    for (int i = 2; i <= n; ++i) fact *= i;
    return std::abs(det) / fact;
}

}  // namespace

std::optional<double> try_exact_volume(const Body& k) {
    switch (k.form) {
        case Body::Form::ball:
            return ball_volume(k.dim, k.radius);
        case Body::Form::oracle:
            return std::nullopt;
        case Body::Form::vpolytope: {
            if (k.is_empty()) return 0.0;
            if (k.dim <= 3) return vpoly_volume(k);
            if (int(k.vertices.size()) == k.dim + 1) return simplex_volume(k);
            double vol = 0;
            if (is_axis_box(k, vol)) return vol;
            return std::nullopt;
        }
    }
    return std::nullopt;
}

double exact_volume(const Body& k) {
    std::optional<double> v = try_exact_volume(k);
    if (!v)
        throw UnsupportedError(
            "exact_volume: only n <= 3 polytopes, simplices, boxes and balls");
    return *v;
}

}  // namespace rslab
