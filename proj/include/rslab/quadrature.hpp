#pragma once

#include "rslab/common.hpp"

namespace rslab {

// Nodes and weights for integration over [a, b]; weights sum to b - a.
struct QuadratureRule {
    Vec nodes;
    Vec weights;
    double a = 0.0;
    double b = 1.0;

    template <typename F>
    double apply(F&& f) const {
        double s = 0;
        for (size_t i = 0; i < nodes.size(); ++i) s += weights[i] * f(nodes[i]);
        return s;
    }
};

// Gauss-Legendre rule with m nodes, exact for polynomials of degree 2m-1.
// Nodes come from Newton iteration on P_m; m up to a few hundred is fine.
QuadratureRule gauss_legendre(int m, double a, double b);

}  // namespace rslab
