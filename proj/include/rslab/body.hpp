#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>

#include "rslab/common.hpp"
#include "rslab/rng.hpp"

namespace rslab {

// Coordinate subspace of R^n: the span of the axes listed in idx.
// Everything downstream (projection, slicing, marginal densities) works in
// these coordinates, so the complement index list is the orthogonal frame.
struct SubspaceSpec {
    int n = 0;
    std::vector<int> idx;  // strictly increasing, 0-based

    SubspaceSpec() = default;
    SubspaceSpec(int ambient, std::vector<int> indices);

    int dim() const { return int(idx.size()); }
    std::vector<int> complement() const;

    // assemble an ambient point from coordinates on H (this spec) and H-perp
    Vec embed(const Vec& on_h, const Vec& on_comp) const;
};

struct OracleBody {
    std::function<bool(const Vec&)> inside;
    Vec lo, hi;  // bounding box; must contain everything inside() accepts
};

// Facet form of a small polytope, derived on demand for n <= 3. Used by the
// integration engine for cheap membership and by exact_volume. Normals are
// unit length, so offsets are geometric distances.
struct FacetCache {
    std::vector<Vec> normals;
    Vec offsets;  // inside: n.x <= offset + tol
    std::vector<std::vector<int>> facet_vertices;
    bool degenerate = false;  // body not full-dimensional
};

struct Body {
    enum class Form { vpolytope, ball, oracle };

    Form form = Form::vpolytope;
    int dim = 0;
    std::vector<Vec> vertices;  // vpolytope; empty list = empty set
    Vec center;                 // ball
    double radius = 0.0;        // ball
    std::shared_ptr<OracleBody> oracle;
    std::string label;

    bool is_empty() const {
        return form == Form::vpolytope && vertices.empty();
    }

    // lazily built facet form; shared so copies reuse the work
    mutable std::shared_ptr<const FacetCache> facets_;
};

// constructors
Body make_simplex(int n);                               // conv{0, e_1..e_n}
Body make_cube(int n, double half_width);               // [-h, h]^n
Body make_ball(int n, double r, Vec center = {});
Body make_vpolytope(std::vector<Vec> vertices, bool prune = true,
                    std::string label = "");
Body make_random_polytope(int n, int n_vertices, std::uint64_t seed);
Body make_empty(int n);

// vertex hygiene: merge duplicates at 1e-12, drop vertices inside the hull
// of the others (LP feasibility at 1e-9)
std::vector<Vec> prune_vertices(std::vector<Vec> vertices);

// geometry ops
Body transform(const Body& k, double scale, const Vec& translate);
Body translate(const Body& k, const Vec& v);
Body minkowski_sum(const Body& k, const Body& l);
Body difference_body(const Body& k);
Body conv_union(const Body& k, const Body& l);
Body ck_body(const Body& k);
double support(const Body& k, const Vec& u);
double radial(const Body& k, const Vec& u);
bool contains(const Body& k, const Vec& x);
Body project(const Body& k, const SubspaceSpec& h);
Body slice(const Body& k, const SubspaceSpec& h, const Vec& x0);
Body intersect(const Body& k, const Body& l);
double exact_volume(const Body& k);                      // throws UnsupportedError
std::optional<double> try_exact_volume(const Body& k);   // nullopt instead
void bounding_box(const Body& k, Vec& lo, Vec& hi);
Vec interior_point(const Body& k);  // vertex average / center

// facet form for n <= 3 vpolytopes; nullptr when unavailable
const FacetCache* facet_cache(const Body& k);

// membership functor for the sampling hot loop: facet tests when cached,
// LP feasibility otherwise; identical 1e-9 semantics either way
std::function<bool(const Vec&)> membership_fn(const Body& k);

double ball_volume(int n, double r);

}  // namespace rslab
