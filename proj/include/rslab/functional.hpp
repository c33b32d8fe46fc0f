#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "rslab/body.hpp"
#include "rslab/density.hpp"
#include "rslab/integrate.hpp"

namespace rslab {

// Quasi-concave step function, stored as its own level sets: a chain of
// nested bodies layers[0] >= layers[1] >= ... tagged with rising thresholds
// levels[i] in (0, 1]. The function value at x is
//     sup_value * max{ levels[i] : x in layers[i] }   (0 outside layers[0]).
// Everything downstream (difference functions, projections, layer-cake
// integrals) acts on the layers directly, which keeps those operations
// exact for the stored object rather than approximate.
struct QCFunction {
    int dim = 0;
    double sup_value = 1.0;
    std::vector<double> levels;
    std::vector<Body> layers;

    double operator()(const Vec& x) const;
    const Body& support() const { return layers.front(); }
    int n_levels() const { return int(levels.size()); }
};

// validated constructor: equal-length level/layer chains (1..128 entries),
// levels strictly increasing in (0,1], bodies probed for nesting
QCFunction make_qc_function(int dim, double sup_value, std::vector<double> levels,
                            std::vector<Body> layers);

// single-layer function: sup 1 at level 1 on k
QCFunction qc_indicator(const Body& k);

// step approximation of a quasi-concave density with an exactly known peak,
// sampling m uniform thresholds i/m; needs superlevel() support for phi
QCFunction qc_approximation(const Density& phi, int m = 64);

// difference constructions, applied level by level:
//   full        S -> S - S
//   split       S -> (1-theta)S - theta*S
//   symmetrized S -> conv(S u -S)
enum class DiffMode { full, split, symmetrized };
QCFunction difference_function(const QCFunction& f, DiffMode mode, double theta = 0.5);

// pointwise p-difference for p < 0: sup over decompositions z = x - y of
// (f(x)^p + f(y)^p)^{1/p}, zero when either factor vanishes. Brute-force
// grid search over the support, dim <= 2.
std::function<double(const Vec&)> p_difference(const QCFunction& f, double p,
                                               int res = 128);

// shadow function on a coordinate subspace: layers are projected, so the
// result is sup over the complementary coordinates
QCFunction project_fn(const QCFunction& f, const SubspaceSpec& h);

// integral of f against the density (layer-cake over the stored levels;
// exact in t, the layer measures carry the only error)
Estimate fn_integral(const QCFunction& f, const Density& phi,
                     const IntegrateConfig& cfg, std::uint64_t stream = 0);

// peak value and a point attaining it
std::pair<double, Vec> fn_sup(const QCFunction& f);

}  // namespace rslab
