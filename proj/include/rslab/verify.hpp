#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rslab/body.hpp"
#include "rslab/common.hpp"
#include "rslab/density.hpp"
#include "rslab/functional.hpp"
#include "rslab/integrate.hpp"

namespace rslab {

enum class Verdict { holds, equality, violated, inconclusive, hypothesis_failed };

std::string verdict_name(Verdict v);

// one machine-checked hypothesis; warn-only audits are recorded but never
// flip the verdict to hypothesis_failed
struct AuditResult {
    std::string name;
    bool passed = true;
    bool warn_only = false;
    std::string note;
};

struct IneqReport {
    std::string family;
    std::string variant;
    Estimate lhs;
    Estimate rhs;
    double constant = 0.0;  // the binomial / 2^n factor baked into rhs
    double ratio = 0.0;     // lhs.value / rhs.value
    Verdict verdict = Verdict::inconclusive;
    std::vector<AuditResult> audits;
    bool sup_converged = true;  // every sup search feeding the rhs converged
    bool sup_on_rhs = false;    // rhs contains a sup lower bound at all
    std::vector<std::pair<std::string, std::string>> metadata;
    std::string note;

    bool audits_passed() const {
        for (const auto& a : audits)
            if (!a.passed && !a.warn_only) return false;
        return true;
    }
};

// Fixed decision rule. sigma = combined standard error, floored at
// 1e-10 * max(1, |lhs|, |rhs|) so exact results still get a band:
//   equality    |lhs - rhs| <= 3 sigma
//   holds       lhs <= rhs + 3 sigma
//   violated    lhs  > rhs + 3 sigma and rhs_sup_ok
//   inconclusive otherwise (an under-refined sup cannot convict)
Verdict decide_verdict(const Estimate& lhs, const Estimate& rhs, bool rhs_sup_ok = true);

// difference-body inequalities. Variants: classical (volumes),
// radial (translated-average right-hand side), sup_translate (sup of
// translate measures), pair_KL (two bodies, needs l), reverse (lower
// bound mu(2K) <= mu(K-K), lhs/rhs arranged so the usual rule applies).
IneqReport verify_difference_body(const std::string& variant, const Density& phi,
                                  const Body& k, const std::optional<Body>& l,
                                  const IntegrateConfig& cfg);

// shifted difference bodies K - K + omega. Variants: rad_decreasing
// (weight c(omega) from the located argmax), quasi (weight
// phi(omega)/||phi||), question_probe (empirical ratio scan, always
// inconclusive; omega is read as the half-width of the scan box).
IneqReport verify_shifted(const std::string& variant, const Density& phi, const Body& k,
                          const Vec& omega, const IntegrateConfig& cfg);

// interpolation-body inequalities, K containing the origin. Variants:
// classical_ck, classical_conv (Lebesgue), measure_ck, measure_conv
// (interpolated-sup right-hand side), pair_KL (two-sided chain, needs l).
IneqReport verify_ck(const std::string& variant, const Density& phi, const Body& k,
                     const std::optional<Body>& l, const IntegrateConfig& cfg);

// projection / section inequalities over the coordinate subspace h.
// Variants: classical, product_mixed, product_quasi (phi must be a
// product split along h), max_sections, two_subspace (needs e),
// p_concave (product phi plus integer r).
IneqReport verify_section_projection(const std::string& variant, const Density& phi,
                                     const Body& k, const SubspaceSpec& h,
                                     const std::optional<SubspaceSpec>& e,
                                     std::optional<int> r, const IntegrateConfig& cfg);

// functional inequalities on layered quasi-concave functions. Variants:
// proj_sect_weighted (needs h and g), proj_sect (needs h), delta_diff,
// ck_family (phi defaults to Lebesgue), prop31 (needs p; g optional),
// cor32 (needs p).
IneqReport verify_functional(const std::string& variant, const QCFunction& f,
                             const std::optional<Density>& g,
                             const std::optional<Density>& phi,
                             const std::optional<SubspaceSpec>& h, std::optional<double> p,
                             const IntegrateConfig& cfg);

// kernel lemma behind the interpolation bounds: for decreasing phi1 on
// [0, x],  int_0^x (1-t/x)^n t^(m-1) phi1 dt >= C(n+m,n)^-1 int_0^x
// t^(m-1) phi1 dt. The report keeps lhs/rhs as written; the verdict is
// computed for the lower-bound direction.
IneqReport check_lemma_f(const Density& phi1, int n, int m, double x);

// alpha^n_{p,q} = int_0^1 (1-theta^p)^n theta^(pq) dtheta as
// (Gamma closed form, order-65 quadrature)
std::pair<double, double> alpha_constant(int n, double p, double q);

struct CounterexampleParams {
    double eps = 1e-5;   // ring
    double delta = 0.0;  // ring; 0 means sqrt(eps)/100
    std::vector<double> thetas = {0.5, 0.1, 0.02};  // wedge openings
    std::vector<double> alphas = {0.3, 0.9, 1.4};   // parallelogram shear angles
};

// the three scripted scenarios: "ring" (expects violated), "wedge" and
// "parallelogram" (expect holds for their tabulated trend claims)
IneqReport run_counterexample(const std::string& id, const CounterexampleParams& params,
                              const IntegrateConfig& cfg);

// measure of the slice {x : x[spec.idx] = x0} of k under the restriction
// of phi; exact interval + quadrature when the slice is one-dimensional
// and k is a vertex polytope, sampling otherwise
Estimate section_measure(const Density& phi, const Body& k, const SubspaceSpec& spec,
                         const Vec& x0, const IntegrateConfig& cfg,
                         std::uint64_t stream = 0);

}  // namespace rslab
