#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace rslab {

using Vec = std::vector<double>;

// Error taxonomy. Everything user-facing derives from Error so the CLI can
// map failures onto exit codes without a big catch ladder.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};
// shapes or vectors with incompatible dimensions
struct DimensionError : Error {
    explicit DimensionError(const std::string& msg) : Error(msg) {}
};
// degenerate geometry or numerical breakdown (zero scale, LP pivot collapse)
struct DegeneracyError : Error {
    explicit DegeneracyError(const std::string& msg) : Error(msg) {}
};
// operation not defined for this body form (e.g. ball + polytope sum)
struct FormError : Error {
    explicit FormError(const std::string& msg) : Error(msg) {}
};
// hard hypothesis violations detected before any integration runs
struct PreconditionError : Error {
    explicit PreconditionError(const std::string& msg) : Error(msg) {}
};
// exact path requested where only approximate ones exist
struct UnsupportedError : Error {
    explicit UnsupportedError(const std::string& msg) : Error(msg) {}
};
// bad spec strings, bad files, bad CLI usage
struct ParseError : Error {
    explicit ParseError(const std::string& msg) : Error(msg) {}
};

inline double dot(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw DimensionError("dot: size mismatch");
    double s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double norm2(const Vec& a) {
    double s = 0;
    for (double v : a) s += v * v;
    return std::sqrt(s);
}

inline Vec scaled(const Vec& a, double t) {
    Vec r(a);
    for (double& v : r) v *= t;
    return r;
}

inline Vec add(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw DimensionError("add: size mismatch");
    Vec r(a);
    for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    return r;
}

inline Vec sub(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw DimensionError("sub: size mismatch");
    Vec r(a);
    for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    return r;
}

inline std::string vec_to_string(const Vec& v) {
    std::string s = "(";
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) s += ", ";
        s += std::to_string(v[i]);
    }
    return s + ")";
}

// n choose k as a double; exact for the sizes used here (n <= 12 or so)
inline double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * double(n - k + i) / double(i);
    return r;
}

}  // namespace rslab
