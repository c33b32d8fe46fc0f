#include "rslab/lp.hpp"

#include <algorithm>
#include <cstring>
#include <limits>

namespace rslab {
namespace {

constexpr double kOptTol = 1e-9;    // optimality / feasibility
constexpr double kPivotTol = 1e-12; // below this a pivot is numerical noise
constexpr double kZeroTol = 1e-14;  // below this an entry counts as zero

// Dense simplex tableau, minimizing. Row m is the objective; column n is
// the right-hand side. basis[i] is the variable basic in row i.
struct Tableau {
    int m = 0, n = 0;
    std::vector<double> a;
    std::vector<int> basis;
    std::vector<char> usable;  // pricing skips retired (artificial) columns

    void init(int rows, int cols) {
        m = rows;
        n = cols;
        a.assign(size_t(m + 1) * (n + 1), 0.0);
        basis.assign(m, -1);
        usable.assign(n, 1);
    }
    double* row(int i) { return a.data() + size_t(i) * (n + 1); }
    double& at(int i, int j) { return a[size_t(i) * (n + 1) + j]; }

    void pivot(int r, int c) {
        double* pr = row(r);
        const double inv = 1.0 / pr[c];
        for (int j = 0; j <= n; ++j) pr[j] *= inv;
        pr[c] = 1.0;
        for (int i = 0; i <= m; ++i) {
            if (i == r) continue;
            double* ri = row(i);
            const double f = ri[c];
            if (std::abs(f) < kZeroTol) continue;
            for (int j = 0; j <= n; ++j) ri[j] -= f * pr[j];
            ri[c] = 0.0;
        }
        basis[r] = c;
    }

    // Minimize the objective row in place. Dantzig pricing until the
    // objective stalls, then Bland's rule (smallest improving index) which
    // terminates on any LP. Returns false when unbounded below. The tableau
    // keeps -value in the objective rhs, so that entry only ever grows;
    // early_stop lets feasibility callers bail out once the value is small
    // enough. Returns true early in that case.
    bool minimize(int& iterations,
                  double early_stop = -std::numeric_limits<double>::infinity()) {
        bool bland = false;
        int stall = 0;
        double last = at(m, n);
        const int cap = 2000 + 200 * (m + n);
        for (;; ++iterations) {
            if (-at(m, n) <= early_stop) return true;
            if (iterations > cap)
                throw DegeneracyError("simplex: iteration cap exceeded");
            int enter = -1;
            if (bland) {
                for (int j = 0; j < n; ++j)
                    if (usable[j] && at(m, j) < -kOptTol) { enter = j; break; }
            } else {
                double best = -kOptTol;
                for (int j = 0; j < n; ++j)
                    if (usable[j] && at(m, j) < best) { best = at(m, j); enter = j; }
            }
            if (enter < 0) return true;

            int leave = -1;
            double best_ratio = std::numeric_limits<double>::infinity();
            bool saw_tiny = false;
            for (int i = 0; i < m; ++i) {
                const double aij = at(i, enter);
                if (aij > kPivotTol) {
                    const double ratio = at(i, n) / aij;
                    if (ratio < best_ratio - kZeroTol ||
                        (ratio < best_ratio + kZeroTol && leave >= 0 &&
                         basis[i] < basis[leave])) {
                        best_ratio = ratio;
                        leave = i;
                    }
                } else if (aij > kZeroTol) {
                    saw_tiny = true;
                }
            }
            if (leave < 0) {
                if (saw_tiny)
                    throw DegeneracyError(
                        "simplex: all pivot candidates below 1e-12");
                return false;
            }
            pivot(leave, enter);

            const double now = at(m, n);
            if (now - last < 1e-13) {
                if (++stall > 40) bland = true;
            } else {
                stall = 0;
            }
            last = now;
        }
    }
};

thread_local Tableau tl_tableau;
thread_local std::vector<double> tl_cols;

// Phase-1 feasibility of A x = b, x >= 0, given A column-major. The
// artificial carrying each row gets the sign of b[i], so the initial basis
// is feasible without rewriting the input.
bool phase1_feasible(int m, int ncols, const double* cols, const double* b,
                     double tol) {
    Tableau& t = tl_tableau;
    t.init(m, ncols + m);
    for (int j = 0; j < ncols; ++j)
        for (int i = 0; i < m; ++i) t.at(i, j) = cols[size_t(j) * m + i];
    for (int i = 0; i < m; ++i) {
        const double s = (b[i] < 0) ? -1.0 : 1.0;
        t.at(i, ncols + i) = s;
        t.at(i, t.n) = b[i];
        if (s < 0) {
            double* ri = t.row(i);
            for (int j = 0; j <= t.n; ++j) ri[j] = -ri[j];
            t.at(i, ncols + i) = 1.0;
        }
        t.basis[i] = ncols + i;
    }
    // reduced costs for min(sum of artificials) under the artificial basis
    double* obj = t.row(m);
    for (int i = 0; i < m; ++i) {
        const double* ri = t.row(i);
        for (int j = 0; j <= t.n; ++j) obj[j] -= ri[j];
    }
    for (int i = 0; i < m; ++i) obj[ncols + i] = 0.0;

    int iters = 0;
    if (!t.minimize(iters, tol * 0.5))
        throw DegeneracyError("phase-1 objective unbounded (bad tableau)");
    return -t.at(m, t.n) <= tol;
}

}  // namespace

bool in_convex_hull(const std::vector<Vec>& vertices, const Vec& x,
                    double tol) {
    if (vertices.empty()) return false;
    const int n = int(x.size());
    const int v = int(vertices.size());
    const int m = n + 1;
    std::vector<double>& cols = tl_cols;
    cols.assign(size_t(v) * m, 0.0);
    for (int j = 0; j < v; ++j) {
        if (int(vertices[j].size()) != n)
            throw DimensionError("in_convex_hull: vertex dimension mismatch");
        double* cj = cols.data() + size_t(j) * m;
        for (int i = 0; i < n; ++i) cj[i] = vertices[j][i];
        cj[n] = 1.0;
    }
    Vec b(x);
    b.push_back(1.0);
    return phase1_feasible(m, v, cols.data(), b.data(), tol);
}

bool scaled_difference_contains(const std::vector<Vec>& u, double su,
                                const std::vector<Vec>& w, double sw,
                                const Vec& z, double tol) {
    if (u.empty() || w.empty()) return false;
    const int n = int(z.size());
    const int m = n + 2;  // coordinates + one convexity row per hull
    const int nu = int(u.size()), nw = int(w.size());
    std::vector<double>& cols = tl_cols;
    cols.assign(size_t(nu + nw) * m, 0.0);
    for (int j = 0; j < nu; ++j) {
        double* cj = cols.data() + size_t(j) * m;
        for (int i = 0; i < n; ++i) cj[i] = su * u[j][i];
        cj[n] = 1.0;
    }
    for (int j = 0; j < nw; ++j) {
        double* cj = cols.data() + size_t(nu + j) * m;
        for (int i = 0; i < n; ++i) cj[i] = -sw * w[j][i];
        cj[n + 1] = 1.0;
    }
    Vec b(z);
    b.push_back(1.0);
    b.push_back(1.0);
    return phase1_feasible(m, nu + nw, cols.data(), b.data(), tol);
}

LpSolution solve_lp(const LpProblem& problem) {
    const int n = problem.n_vars;
    const int m = int(problem.rows.size());
    if (int(problem.c.size()) != n)
        throw DimensionError("solve_lp: objective size != n_vars");
    if (problem.rhs.size() != problem.rows.size() ||
        problem.rel.size() != problem.rows.size())
        throw DimensionError("solve_lp: ragged constraint data");
    for (const Vec& r : problem.rows)
        if (int(r.size()) != n)
            throw DimensionError("solve_lp: constraint row size != n_vars");
    if (!problem.free_var.empty() && int(problem.free_var.size()) != n)
        throw DimensionError("solve_lp: free_var size != n_vars");

    // column layout: split originals (x+ then x- for free vars), slacks,
    // artificials
    std::vector<int> pos(n), neg(n, -1);
    int ncols = 0;
    for (int j = 0; j < n; ++j) {
        pos[j] = ncols++;
        if (!problem.free_var.empty() && problem.free_var[j]) neg[j] = ncols++;
    }
    std::vector<int> slack(m, -1);
    for (int i = 0; i < m; ++i)
        if (problem.rel[i] != '=') slack[i] = ncols++;
    const int art_base = ncols;
    ncols += m;  // one artificial per row keeps the setup uniform

    Tableau t;
    t.init(m, ncols);
    for (int i = 0; i < m; ++i) {
        double sign = (problem.rhs[i] < 0) ? -1.0 : 1.0;
        for (int j = 0; j < n; ++j) {
            const double a = sign * problem.rows[i][j];
            t.at(i, pos[j]) = a;
            if (neg[j] >= 0) t.at(i, neg[j]) = -a;
        }
        if (slack[i] >= 0) {
            double s = (problem.rel[i] == '<') ? 1.0 : -1.0;
            t.at(i, slack[i]) = sign * s;
        }
        t.at(i, art_base + i) = 1.0;
        t.at(i, t.n) = sign * problem.rhs[i];
        t.basis[i] = art_base + i;
    }

    LpSolution sol;

    // phase 1: minimize the artificial total
    {
        double* obj = t.row(m);
        for (int i = 0; i < m; ++i) {
            const double* ri = t.row(i);
            for (int j = 0; j <= t.n; ++j) obj[j] -= ri[j];
        }
        for (int i = 0; i < m; ++i) obj[art_base + i] = 0.0;
        if (!t.minimize(sol.iterations))
            throw DegeneracyError("simplex: phase-1 unbounded");
        if (-t.at(m, t.n) > kOptTol) {
            sol.status = LpStatus::infeasible;
            return sol;
        }
        // retire artificials; push any still basic at zero out if possible
        for (int i = 0; i < m; ++i) t.usable[art_base + i] = 0;
        for (int i = 0; i < m; ++i) {
            if (t.basis[i] < art_base) continue;
            int c = -1;
            for (int j = 0; j < art_base; ++j)
                if (std::abs(t.at(i, j)) > kOptTol) { c = j; break; }
            if (c >= 0) t.pivot(i, c);
            // else: redundant row, artificial stays basic at zero
        }
    }

    // phase 2: minimize -c over the split variables
    {
        double* obj = t.row(m);
        std::fill(obj, obj + t.n + 1, 0.0);
        for (int j = 0; j < n; ++j) {
            obj[pos[j]] = -problem.c[j];
            if (neg[j] >= 0) obj[neg[j]] = problem.c[j];
        }
        for (int i = 0; i < m; ++i) {
            const double f = obj[t.basis[i]];
            if (std::abs(f) < kZeroTol) continue;
            const double* ri = t.row(i);
            for (int j = 0; j <= t.n; ++j) obj[j] -= f * ri[j];
            obj[t.basis[i]] = 0.0;
        }
        if (!t.minimize(sol.iterations)) {
            sol.status = LpStatus::unbounded;
            return sol;
        }
    }

    sol.status = LpStatus::optimal;
    sol.x.assign(n, 0.0);
    for (int i = 0; i < m; ++i) {
        const int bj = t.basis[i];
        for (int j = 0; j < n; ++j) {
            if (bj == pos[j]) sol.x[j] += t.at(i, t.n);
            if (bj == neg[j]) sol.x[j] -= t.at(i, t.n);
        }
    }
    sol.value = dot(sol.x, problem.c);
    return sol;
}

}  // namespace rslab
