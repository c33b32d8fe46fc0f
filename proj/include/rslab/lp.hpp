#pragma once

#include "rslab/common.hpp"

namespace rslab {

enum class LpStatus { optimal, infeasible, unbounded };

// Dense LP in the natural form: maximize c.x subject to rows[i].x rel[i]
// rhs[i], with rel one of '<', '=', '>'  (inequalities are non-strict).
// Variables are nonnegative unless marked free.
struct LpProblem {
    int n_vars = 0;
    Vec c;
    std::vector<Vec> rows;
    std::vector<char> rel;
    Vec rhs;
    std::vector<bool> free_var;  // empty means all nonnegative

    void add_row(const Vec& a, char r, double b) {
        rows.push_back(a);
        rel.push_back(r);
        rhs.push_back(b);
    }
};

struct LpSolution {
    LpStatus status = LpStatus::optimal;
    double value = 0.0;
    Vec x;
    int iterations = 0;
};

// Two-phase dense simplex. Dantzig pricing with a permanent switch to
// Bland's rule once the objective stalls, so cycling cannot occur.
// Feasibility and optimality tolerances are 1e-9; a pivot search that finds
// nothing above 1e-12 raises DegeneracyError.
LpSolution solve_lp(const LpProblem& problem);

// Fast phase-1 feasibility test for "x in conv(vertices)". Same tolerance
// semantics as going through solve_lp, but with a flat reusable tableau;
// this sits in the Monte-Carlo hot loop for dimensions above 3.
bool in_convex_hull(const std::vector<Vec>& vertices, const Vec& x,
                    double tol = 1e-9);

// Feasibility of  sum_i a_i u_i - sum_j b_j w_j = z  with a, b convex
// weights: tests whether polytopes conv(U) shifted by z and conv(W) meet,
// i.e. z in conv(U) - conv(W) scaled by the given factors.
bool scaled_difference_contains(const std::vector<Vec>& u, double su,
                                const std::vector<Vec>& w, double sw,
                                const Vec& z, double tol = 1e-9);

}  // namespace rslab
