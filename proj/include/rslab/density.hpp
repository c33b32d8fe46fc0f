#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "rslab/body.hpp"
#include "rslab/common.hpp"
#include "rslab/rng.hpp"

namespace rslab {

// Declared analytic classes of a density. Constructors set these from known
// mathematics; audit_class spot-checks them by sampling but never infers
// them.
struct ClassFlags {
    bool radially_decreasing = false;  // phi(t x) >= phi(x) for t in [0,1]
    bool quasi_concave = false;        // superlevel sets convex
    bool log_concave = false;          // implies quasi_concave
    bool even = false;                 // phi(-x) = phi(x)
    bool continuous_at_origin = false; // declared only, never sampled
    std::optional<double> p_concave;   // phi((1-l)x+ly) >= M_p(phi x, phi y, l)
    bool sup_exact = true;             // sup_value is the true supremum
};

struct Density {
    enum class Kind {
        lebesgue,
        gaussian,
        exp_norm,
        indicator,
        ring,
        wedge,
        cone_power,
        product,
        custom,
    };

    int n = 0;
    Kind kind = Kind::custom;
    std::function<double(const Vec&)> eval;
    ClassFlags flags;
    double sup_value = 1.0;             // ||phi||_inf (exact iff flags.sup_exact)
    std::optional<Vec> argmax;
    bool unbounded_support = true;
    // convex body containing supp(phi); tight for indicator and cone kinds
    std::shared_ptr<const Body> support_bound;
    std::map<std::string, double> params;
    // product factors; split = dimension handled by factor a
    std::shared_ptr<const Density> factor_a, factor_b;
    int split = 0;
    std::string spec;  // canonical description, echoed into reports

    double operator()(const Vec& x) const { return eval(x); }
};

// the paper's two-number p-mean; zero whenever either argument vanishes
double p_mean(double a, double b, double lambda, double p);

Density make_lebesgue(int n);
Density make_gaussian(int n);
Density make_exp_norm(int n);
Density make_indicator(const Body& k);
Density make_ring(double eps, double delta);
Density make_wedge(double theta);
Density make_cone_power(const Body& k, double r);
Density make_product(const Density& a, const Density& b);

// superlevel body C_t = {x in supp phi : phi(x) >= t * sup}; closed forms
// where available, otherwise an oracle over the support box
Body superlevel(const Density& phi, double t);

enum class DensityClass {
    radially_decreasing,
    quasi_concave,
    p_concave,
    even,
    continuous_at_origin,
};

struct ClassWitness {
    Vec x;
    Vec y;          // empty for single-point classes
    double t = 0;   // scale factor or lambda
    double lhs = 0; // value that should dominate
    double rhs = 0;
};

struct ClassAuditReport {
    std::string class_name;
    int probes = 0;
    std::vector<ClassWitness> witnesses;  // capped; empty means consistent
    bool consistent() const { return witnesses.empty(); }
    std::string verdict() const { return consistent() ? "consistent" : "violated"; }
};

// sampling audit of a declared class over the probe box; never throws on a
// violation, it collects witnesses
ClassAuditReport audit_class(const Density& phi, DensityClass cls, int probes,
                             RandomStream rs, const Vec& lo, const Vec& hi,
                             std::optional<double> p_override = std::nullopt);

// density on the free coordinates of the slice {x : x[spec.idx] = fixed}
Density restrict_density(const Density& phi, const SubspaceSpec& spec, const Vec& fixed);

// pointwise product of equal-dimension densities
Density pointwise_product(const Density& a, const Density& b);

// parse a CLI density spec ("gaussian", "ring:eps=..,delta=..",
// "product:a|b:split=k", ...). n is the ambient dimension from context;
// body_loader resolves "@file" references.
using BodyLoader = std::function<Body(const std::string&)>;
Density make_density(const std::string& spec, int n, const BodyLoader& body_loader = {});

}  // namespace rslab
