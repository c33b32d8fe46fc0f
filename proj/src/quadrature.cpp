#include "rslab/quadrature.hpp"

#include <cmath>

namespace rslab {

QuadratureRule gauss_legendre(int m, double a, double b) {
    if (m < 1) throw Error("gauss_legendre: need at least one node");
    if (!(a < b)) throw Error("gauss_legendre: need a < b");

    QuadratureRule rule;
    rule.a = a;
    rule.b = b;
    rule.nodes.resize(m);
    rule.weights.resize(m);

    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (b + a);

    // roots are symmetric; solve the upper half and mirror
    for (int i = 0; i < (m + 1) / 2; ++i) {
        // Chebyshev-like initial guess, then Newton on the recurrence
        double x = std::cos(M_PI * (i + 0.75) / (m + 0.5));
        double dp = 0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= m; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = m * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[i] = mid - half * x;
        rule.nodes[m - 1 - i] = mid + half * x;
        rule.weights[i] = w * half;
        rule.weights[m - 1 - i] = w * half;
    }
    return rule;
}

}  // namespace rslab
