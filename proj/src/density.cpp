#include "rslab/density.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace rslab {

namespace {

constexpr double kLevelTol = 1e-9;
const double kInf = std::numeric_limits<double>::infinity();

Vec zero_vec(int n) { return Vec(n, 0.0); }

std::shared_ptr<const Body> shared_body(Body b) {
    return std::make_shared<const Body>(std::move(b));
}

Body point_body(int n) { return make_vpolytope({zero_vec(n)}, false, "origin"); }

bool near_zero(const Vec& v) {
    for (double c : v)
        if (std::abs(c) > 1e-12) return false;
    return true;
}

// 0 lies in the interior iff every signed axis ray spends positive time
// inside (any boundary point sits on a supporting hyperplane, whose normal
// has a nonzero component that one of these rays violates)
bool origin_interior(const Body& k) {
    if (!contains(k, Vec(k.dim, 0.0))) return false;
    for (int i = 0; i < k.dim; ++i)
        for (double s : {1.0, -1.0}) {
            Vec d(k.dim, 0.0);
            d[i] = s;
            if (radial(k, d) <= 1e-9) return false;
        }
    return true;
}

}  // namespace

double p_mean(double a, double b, double lambda, double p) {
    if (a <= 0.0 || b <= 0.0) return 0.0;
    if (p == kInf) return std::max(a, b);
    if (p == -kInf) return std::min(a, b);
    if (p == 0.0) return std::pow(a, 1.0 - lambda) * std::pow(b, lambda);
    return std::pow((1.0 - lambda) * std::pow(a, p) + lambda * std::pow(b, p), 1.0 / p);
}

Density make_lebesgue(int n) {
    if (n < 1 || n > 6) throw DimensionError("lebesgue: dimension must be in [1, 6]");
    Density d;
    d.n = n;
    d.kind = Density::Kind::lebesgue;
    d.eval = [](const Vec&) { return 1.0; };
    d.flags = {true, true, true, true, true, kInf, true};
    d.sup_value = 1.0;
    d.argmax = zero_vec(n);
    d.unbounded_support = true;
    d.spec = "lebesgue";
    return d;
}

Density make_gaussian(int n) {
    if (n < 1 || n > 6) throw DimensionError("gaussian: dimension must be in [1, 6]");
    Density d;
    d.n = n;
    d.kind = Density::Kind::gaussian;
    double norm = std::pow(2.0 * M_PI, -0.5 * n);
    d.eval = [norm](const Vec& x) { return norm * std::exp(-0.5 * dot(x, x)); };
    d.flags = {true, true, true, true, true, 0.0, true};
    d.sup_value = norm;
    d.argmax = zero_vec(n);
    d.unbounded_support = true;
    d.spec = "gaussian";
    return d;
}

Density make_exp_norm(int n) {
    if (n < 1 || n > 6) throw DimensionError("exp-norm: dimension must be in [1, 6]");
    Density d;
    d.n = n;
    d.kind = Density::Kind::exp_norm;
    d.eval = [](const Vec& x) { return std::exp(-norm2(x)); };
    d.flags = {true, true, true, true, true, 0.0, true};
    d.sup_value = 1.0;
    d.argmax = zero_vec(n);
    d.unbounded_support = true;
    d.spec = "exp-norm";
    return d;
}

Density make_indicator(const Body& k) {
    Density d;
    d.n = k.dim;
    d.kind = Density::Kind::indicator;
    auto member = membership_fn(k);
    d.eval = [member](const Vec& x) { return member(x) ? 1.0 : 0.0; };
    bool has_origin = contains(k, zero_vec(k.dim));
    bool sym = has_origin;
    if (sym && k.form == Body::Form::vpolytope)
        for (const Vec& v : k.vertices)
            if (!contains(k, scaled(v, -1.0))) { sym = false; break; }
    if (k.form == Body::Form::ball) sym = near_zero(k.center);
    d.flags.radially_decreasing = has_origin;
    d.flags.quasi_concave = true;
    d.flags.log_concave = true;
    d.flags.even = sym;
    d.flags.continuous_at_origin = has_origin && origin_interior(k);
    d.flags.p_concave = kInf;
    d.sup_value = 1.0;
    d.argmax = has_origin ? zero_vec(k.dim) : interior_point(k);
    d.unbounded_support = false;
    d.support_bound = shared_body(k);
    d.spec = "indicator:" + (k.label.empty() ? "body" : k.label);
    return d;
}

Density make_ring(double eps, double delta) {
    if (!(0 < eps && eps < delta && delta < 2))
        throw PreconditionError("ring: need 0 < eps < delta < 2");
    Density d;
    d.n = 2;
    d.kind = Density::Kind::ring;
    d.eval = [eps, delta](const Vec& x) {
        double r = norm2(x);
        return (r <= delta || (r >= 2.0 - eps && r <= 2.0)) ? 1.0 : 0.0;
    };
    // the gap between the central disc and the outer shell kills both
    // radial decay and quasi-concavity
    d.flags.radially_decreasing = false;
    d.flags.quasi_concave = false;
    d.flags.log_concave = false;
    d.flags.even = true;
    d.flags.continuous_at_origin = true;
    d.sup_value = 1.0;
    d.argmax = zero_vec(2);
    d.unbounded_support = false;
    d.support_bound = shared_body(make_ball(2, 2.0));
    d.params = {{"eps", eps}, {"delta", delta}};
    std::ostringstream os;
    os << "ring:eps=" << eps << ",delta=" << delta;
    d.spec = os.str();
    return d;
}

Density make_wedge(double theta) {
    if (!(0 < theta && theta < M_PI / 2))
        throw PreconditionError("wedge: need 0 < theta < pi/2");
    Density d;
    d.n = 2;
    d.kind = Density::Kind::wedge;
    double slope = std::tan(theta);
    d.eval = [slope](const Vec& x) {
        return (x[0] >= 0.0 && std::abs(x[1]) <= slope * x[0]) ? 1.0 : 0.0;
    };
    // a cone with apex at the origin: scaling toward 0 stays inside, so the
    // indicator is radially decreasing even though it is far from even
    d.flags.radially_decreasing = true;
    d.flags.quasi_concave = true;
    d.flags.log_concave = true;
    d.flags.even = false;
    d.flags.continuous_at_origin = false;  // 0 is on the boundary of the cone
    d.flags.p_concave = kInf;
    d.sup_value = 1.0;
    d.argmax = Vec{1.0, 0.0};
    d.unbounded_support = true;
    d.params = {{"theta", theta}};
    std::ostringstream os;
    os << "wedge:theta=" << theta;
    d.spec = os.str();
    return d;
}

Density make_cone_power(const Body& k, double r) {
    if (r < 1.0) throw PreconditionError("cone density: exponent must be >= 1");
    if (!contains(k, zero_vec(k.dim)))
        throw PreconditionError("cone density: body must contain the origin");
    Density d;
    d.n = k.dim;
    d.kind = Density::Kind::cone_power;
    auto body = shared_body(k);
    d.eval = [body, r](const Vec& y) {
        double len = norm2(y);
        if (len < 1e-14) return 1.0;
        double reach = radial(*body, y);  // max t with t*y inside
        if (reach <= 0.0) return 0.0;
        double gauge = 1.0 / reach;
        if (gauge >= 1.0) return 0.0;
        return std::pow(1.0 - gauge, r);
    };
    bool sym = true;
    if (k.form == Body::Form::vpolytope) {
        for (const Vec& v : k.vertices)
            if (!contains(k, scaled(v, -1.0))) { sym = false; break; }
    } else if (k.form == Body::Form::ball) {
        sym = near_zero(k.center);
    } else {
        sym = false;
    }
    d.flags.radially_decreasing = true;
    d.flags.quasi_concave = true;
    d.flags.log_concave = true;
    d.flags.even = sym;
    d.flags.continuous_at_origin = origin_interior(k);
    d.flags.p_concave = 1.0 / r;
    d.sup_value = 1.0;
    d.argmax = zero_vec(k.dim);
    d.unbounded_support = false;
    d.support_bound = body;
    d.params = {{"r", r}};
    std::ostringstream os;
    os << "cone:" << (k.label.empty() ? "body" : k.label) << ",r=" << r;
    d.spec = os.str();
    return d;
}

Density make_product(const Density& a, const Density& b) {
    Density d;
    d.n = a.n + b.n;
    if (d.n > 6) throw DimensionError("product: combined dimension exceeds 6");
    d.kind = Density::Kind::product;
    d.factor_a = std::make_shared<const Density>(a);
    d.factor_b = std::make_shared<const Density>(b);
    d.split = a.n;
    auto fa = d.factor_a, fb = d.factor_b;
    int na = a.n;
    d.eval = [fa, fb, na](const Vec& x) {
        Vec xa(x.begin(), x.begin() + na);
        Vec xb(x.begin() + na, x.end());
        return fa->eval(xa) * fb->eval(xb);
    };
    d.flags.log_concave = a.flags.log_concave && b.flags.log_concave;
    d.flags.quasi_concave = d.flags.log_concave;
    d.flags.radially_decreasing =
        a.flags.radially_decreasing && b.flags.radially_decreasing;
    d.flags.even = a.flags.even && b.flags.even;
    d.flags.continuous_at_origin =
        a.flags.continuous_at_origin && b.flags.continuous_at_origin;
    if (a.flags.p_concave && b.flags.p_concave) {
        double p = *a.flags.p_concave, q = *b.flags.p_concave;
        if (p >= 0.0 && q >= 0.0) {
            if (p == 0.0 || q == 0.0)
                d.flags.p_concave = 0.0;
            else if (p == kInf)
                d.flags.p_concave = q;
            else if (q == kInf)
                d.flags.p_concave = p;
            else
                d.flags.p_concave = 1.0 / (1.0 / p + 1.0 / q);
        }
    }
    bool argmax_known = a.argmax && b.argmax && a.flags.sup_exact && b.flags.sup_exact;
    d.flags.sup_exact = argmax_known;
    d.sup_value = a.sup_value * b.sup_value;
    if (argmax_known) {
        Vec m = *a.argmax;
        m.insert(m.end(), b.argmax->begin(), b.argmax->end());
        d.argmax = m;
    }
    d.unbounded_support = a.unbounded_support && b.unbounded_support;
    d.spec = "product:" + a.spec + "|" + b.spec + ":split=" + std::to_string(a.n);
    return d;
}

Body superlevel(const Density& phi, double t) {
    if (t < 0.0 || t > 1.0) throw PreconditionError("superlevel: t must be in [0, 1]");
    if (!phi.flags.quasi_concave)
        throw PreconditionError("superlevel: density is not quasi-concave");
    if (!phi.flags.sup_exact)
        throw PreconditionError("superlevel: density has no exact supremum");
    switch (phi.kind) {
        case Density::Kind::lebesgue:
            throw UnsupportedError("superlevel: constant density has unbounded levels");
        case Density::Kind::wedge:
            throw UnsupportedError("superlevel: wedge support is unbounded");
        case Density::Kind::gaussian: {
            if (t <= 0.0)
                throw UnsupportedError("superlevel: level 0 set is unbounded");
            if (t >= 1.0) return point_body(phi.n);
            return make_ball(phi.n, std::sqrt(-2.0 * std::log(t)));
        }
        case Density::Kind::exp_norm: {
            if (t <= 0.0)
                throw UnsupportedError("superlevel: level 0 set is unbounded");
            if (t >= 1.0) return point_body(phi.n);
            return make_ball(phi.n, -std::log(t));
        }
        case Density::Kind::indicator:
            return *phi.support_bound;
        case Density::Kind::cone_power: {
            double r = phi.params.at("r");
            if (t >= 1.0) return point_body(phi.n);
            if (t <= 0.0) return *phi.support_bound;
            return transform(*phi.support_bound, 1.0 - std::pow(t, 1.0 / r), zero_vec(phi.n));
        }
        case Density::Kind::product: {
            // C_t(phi_a * phi_b) sits inside C_t(phi_a) x C_t(phi_b) since
            // each factor alone must clear t times its own sup
            Body ba = superlevel(*phi.factor_a, t);
            Body bb = superlevel(*phi.factor_b, t);
            Vec la, ha, lb, hb;
            bounding_box(ba, la, ha);
            bounding_box(bb, lb, hb);
            Body out;
            out.form = Body::Form::oracle;
            out.dim = phi.n;
            auto o = std::make_shared<OracleBody>();
            o->lo = la;
            o->lo.insert(o->lo.end(), lb.begin(), lb.end());
            o->hi = ha;
            o->hi.insert(o->hi.end(), hb.begin(), hb.end());
            auto f = phi.eval;
            double level = t * phi.sup_value;
            o->inside = [f, level](const Vec& x) { return f(x) >= level - kLevelTol; };
            out.oracle = std::move(o);
            out.label = "superlevel";
            return out;
        }
        case Density::Kind::ring:
            throw PreconditionError("superlevel: density is not quasi-concave");
        case Density::Kind::custom: {
            if (!phi.support_bound)
                throw UnsupportedError("superlevel: no bounding body for the support");
            Vec lo, hi;
            bounding_box(*phi.support_bound, lo, hi);
            Body out;
            out.form = Body::Form::oracle;
            out.dim = phi.n;
            auto o = std::make_shared<OracleBody>();
            o->lo = lo;
            o->hi = hi;
            auto f = phi.eval;
            double level = t * phi.sup_value;
            o->inside = [f, level](const Vec& x) { return f(x) >= level - kLevelTol; };
            out.oracle = std::move(o);
            out.label = "superlevel";
            return out;
        }
    }
    throw Error("superlevel: unreachable");
}

ClassAuditReport audit_class(const Density& phi, DensityClass cls, int probes,
                             RandomStream rs, const Vec& lo, const Vec& hi,
                             std::optional<double> p_override) {
    if (probes < 1) throw PreconditionError("audit: need at least one probe");
    if (int(lo.size()) != phi.n || int(hi.size()) != phi.n)
        throw DimensionError("audit: probe box dimension mismatch");
    ClassAuditReport rep;
    rep.probes = probes;
    const double slack = 1e-9 * std::max(1.0, phi.sup_value);
    const size_t max_witnesses = 8;

    auto sample = [&](Vec& x) {
        x.resize(phi.n);
        for (int i = 0; i < phi.n; ++i)
            x[i] = lo[i] + (hi[i] - lo[i]) * rs.next_unit();
    };

    switch (cls) {
        case DensityClass::radially_decreasing: {
            rep.class_name = "radially_decreasing";
            Vec x;
            for (int p = 0; p < probes; ++p) {
                sample(x);
                double t = rs.next_unit();
                double fx = phi(x);
                double ftx = phi(scaled(x, t));
                if (ftx + slack < fx && rep.witnesses.size() < max_witnesses)
                    rep.witnesses.push_back({x, {}, t, ftx, fx});
            }
            break;
        }
        case DensityClass::quasi_concave: {
            rep.class_name = "quasi_concave";
            Vec x, y;
            for (int p = 0; p < probes; ++p) {
                sample(x);
                sample(y);
                double l = rs.next_unit();
                double mid = phi(add(scaled(x, 1.0 - l), scaled(y, l)));
                double m = std::min(phi(x), phi(y));
                if (mid + slack < m && rep.witnesses.size() < max_witnesses)
                    rep.witnesses.push_back({x, y, l, mid, m});
            }
            break;
        }
        case DensityClass::p_concave: {
            rep.class_name = "p_concave";
            double p_exp;
            if (p_override)
                p_exp = *p_override;
            else if (phi.flags.p_concave)
                p_exp = *phi.flags.p_concave;
            else {
                // nothing declared and nothing requested: vacuous audit
                rep.class_name = "p_concave(undeclared)";
                break;
            }
            Vec x, y;
            for (int p = 0; p < probes; ++p) {
                sample(x);
                sample(y);
                double l = 0.02 + 0.96 * rs.next_unit();
                double mid = phi(add(scaled(x, 1.0 - l), scaled(y, l)));
                double m = p_mean(phi(x), phi(y), l, p_exp);
                if (mid + slack < m && rep.witnesses.size() < max_witnesses)
                    rep.witnesses.push_back({x, y, l, mid, m});
            }
            break;
        }
        case DensityClass::even: {
            rep.class_name = "even";
            Vec x;
            for (int p = 0; p < probes; ++p) {
                sample(x);
                double fx = phi(x), fm = phi(scaled(x, -1.0));
                if (std::abs(fx - fm) > slack && rep.witnesses.size() < max_witnesses)
                    rep.witnesses.push_back({x, {}, -1.0, fm, fx});
            }
            break;
        }
        case DensityClass::continuous_at_origin: {
            // declared only; sampling cannot test continuity
            rep.class_name = "continuous_at_origin(declared)";
            rep.probes = 0;
            break;
        }
    }
    return rep;
}

Density restrict_density(const Density& phi, const SubspaceSpec& spec, const Vec& fixed) {
    if (spec.n != phi.n) throw DimensionError("restrict: subspace ambient mismatch");
    if (int(fixed.size()) != spec.dim())
        throw DimensionError("restrict: fixed coordinate count mismatch");
    Density d;
    d.n = phi.n - spec.dim();
    d.kind = Density::Kind::custom;
    auto f = phi.eval;
    SubspaceSpec s = spec;
    Vec fx = fixed;
    d.eval = [f, s, fx](const Vec& y) { return f(s.embed(fx, y)); };
    bool through_origin = near_zero(fixed);
    d.flags.quasi_concave = phi.flags.quasi_concave;
    d.flags.log_concave = phi.flags.log_concave;
    d.flags.p_concave = phi.flags.p_concave;
    d.flags.radially_decreasing = phi.flags.radially_decreasing && through_origin;
    d.flags.even = phi.flags.even && through_origin;
    d.flags.continuous_at_origin = phi.flags.continuous_at_origin && through_origin;
    d.flags.sup_exact = false;
    d.sup_value = phi.sup_value;  // upper bound only
    d.unbounded_support = phi.unbounded_support;
    if (phi.support_bound) {
        Vec slo, shi;
        bounding_box(*phi.support_bound, slo, shi);
        bool feasible = true;
        for (int i = 0; i < spec.dim(); ++i) {
            int c = spec.idx[size_t(i)];
            if (fixed[size_t(i)] < slo[c] - 1e-12 || fixed[size_t(i)] > shi[c] + 1e-12)
                feasible = false;
        }
        d.support_bound = shared_body(
            feasible ? slice(*phi.support_bound, spec, fixed) : make_empty(d.n));
        d.unbounded_support = false;
    }
    d.spec = phi.spec + "|restricted";
    return d;
}

Density pointwise_product(const Density& a, const Density& b) {
    if (a.n != b.n) throw DimensionError("pointwise product: dimension mismatch");
    Density d;
    d.n = a.n;
    d.kind = Density::Kind::custom;
    auto fa = a.eval, fb = b.eval;
    d.eval = [fa, fb](const Vec& x) { return fa(x) * fb(x); };
    d.flags.log_concave = a.flags.log_concave && b.flags.log_concave;
    d.flags.quasi_concave = d.flags.log_concave;
    d.flags.radially_decreasing =
        a.flags.radially_decreasing && b.flags.radially_decreasing;
    d.flags.even = a.flags.even && b.flags.even;
    d.flags.continuous_at_origin =
        a.flags.continuous_at_origin && b.flags.continuous_at_origin;
    d.flags.sup_exact = false;
    d.sup_value = a.sup_value * b.sup_value;
    d.unbounded_support = a.unbounded_support && b.unbounded_support;
    if (a.support_bound && b.support_bound)
        d.support_bound = shared_body(intersect(*a.support_bound, *b.support_bound));
    else if (a.support_bound)
        d.support_bound = a.support_bound;
    else if (b.support_bound)
        d.support_bound = b.support_bound;
    d.spec = a.spec + "*" + b.spec;
    return d;
}

namespace {

std::map<std::string, double> parse_kv(const std::string& s, const std::string& ctx) {
    std::map<std::string, double> kv;
    std::istringstream is(s);
    std::string tok;
    while (std::getline(is, tok, ',')) {
        if (tok.empty()) continue;
        auto eq = tok.find('=');
        if (eq == std::string::npos)
            throw ParseError(ctx + ": expected key=value, got '" + tok + "'");
        try {
            kv[tok.substr(0, eq)] = std::stod(tok.substr(eq + 1));
        } catch (const std::exception&) {
            throw ParseError(ctx + ": bad number in '" + tok + "'");
        }
    }
    return kv;
}

double require_kv(const std::map<std::string, double>& kv, const std::string& key,
                  const std::string& ctx) {
    auto it = kv.find(key);
    if (it == kv.end()) throw ParseError(ctx + ": missing parameter '" + key + "'");
    return it->second;
}

}  // namespace

Density make_density(const std::string& spec, int n, const BodyLoader& body_loader) {
    std::string s = spec;
    if (s.rfind("product:", 0) == 0) s = s.substr(8);

    if (s.find('|') != std::string::npos) {
        auto bar = s.find('|');
        if (s.find('|', bar + 1) != std::string::npos)
            throw ParseError("density: nested products are not supported");
        std::string left = s.substr(0, bar);
        std::string right = s.substr(bar + 1);
        auto split_pos = right.rfind(":split=");
        if (split_pos == std::string::npos)
            throw ParseError("density: product spec needs a :split=k suffix");
        int k;
        try {
            k = std::stoi(right.substr(split_pos + 7));
        } catch (const std::exception&) {
            throw ParseError("density: bad split value");
        }
        right = right.substr(0, split_pos);
        if (k < 1 || k >= n)
            throw ParseError("density: split must be in [1, n-1]");
        return make_product(make_density(left, k, body_loader),
                            make_density(right, n - k, body_loader));
    }

    std::string name = s, rest;
    auto colon = s.find(':');
    if (colon != std::string::npos) {
        name = s.substr(0, colon);
        rest = s.substr(colon + 1);
    }

    if (name == "lebesgue") return make_lebesgue(n);
    if (name == "gaussian") return make_gaussian(n);
    if (name == "exp-norm" || name == "exp_norm") return make_exp_norm(n);
    if (name == "ring") {
        if (n != 2) throw DimensionError("ring density lives in the plane");
        auto kv = parse_kv(rest, "ring");
        return make_ring(require_kv(kv, "eps", "ring"), require_kv(kv, "delta", "ring"));
    }
    if (name == "wedge") {
        if (n != 2) throw DimensionError("wedge density lives in the plane");
        auto kv = parse_kv(rest, "wedge");
        return make_wedge(require_kv(kv, "theta", "wedge"));
    }
    if (name == "indicator") {
        if (rest.empty() || rest[0] != '@')
            throw ParseError("indicator: expected @file reference");
        if (!body_loader) throw ParseError("indicator: no body loader available");
        Body k = body_loader(rest.substr(1));
        if (k.dim != n) throw DimensionError("indicator: body dimension mismatch");
        return make_indicator(k);
    }
    if (name == "cone") {
        auto comma = rest.find(',');
        if (comma == std::string::npos || rest.empty() || rest[0] != '@')
            throw ParseError("cone: expected @file,r=exponent");
        if (!body_loader) throw ParseError("cone: no body loader available");
        Body k = body_loader(rest.substr(1, comma - 1));
        if (k.dim != n) throw DimensionError("cone: body dimension mismatch");
        auto kv = parse_kv(rest.substr(comma + 1), "cone");
        return make_cone_power(k, require_kv(kv, "r", "cone"));
    }
    throw ParseError("density: unknown spec '" + spec + "'");
}

}  // namespace rslab
