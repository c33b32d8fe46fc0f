#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>

#include "rslab/body.hpp"
#include "rslab/common.hpp"
#include "rslab/density.hpp"

namespace rslab {

enum class Method { exact, mc_box, grid_quadrature };

std::string method_name(Method m);

struct Estimate {
    double value = 0.0;
    double std_error = 0.0;          // 0 for exact and grid results
    std::int64_t n_samples = 0;
    Method method = Method::exact;
};

// result of a grid + refinement supremum search; always a lower bound on
// the true sup, with a convergence flag from successive refinement rounds
struct SupEstimate {
    Estimate best;
    Vec argmax;
    double theta = 1.0;   // only meaningful for the interpolated search
    int refinements = 0;
    bool converged = false;
};

struct IntegrateConfig {
    std::int64_t n_samples = 200000;
    std::uint64_t seed = 0;
    enum class Prefer { automatic, exact, mc, grid } prefer = Prefer::automatic;
    int grid_res = 512;     // cells per axis for grid quadrature
    int theta_order = 33;   // Gauss-Legendre order for the theta integral
    double theta_min = 1e-3;
    int sup_coarse = 9;     // coarse grid points per axis in sup searches
    int sup_rounds = 8;     // maximum refinement rounds
    double sup_tol = 0.005; // convergence band for successive rounds
    int threads = 1;

    void validate() const;
};

using SearchBox = std::pair<Vec, Vec>;

// vol_n(K); exact closed forms when available, otherwise rejection MC
Estimate volume(const Body& k, const IntegrateConfig& cfg, std::uint64_t stream = 0);

// mu(K) = integral of phi over K. Dispatch: exact volume for the constant
// density, closed-form circle intersections for the ring density over
// balls, per-piece polar grids for annular supports, tensor grids on
// request, rejection MC otherwise.
Estimate measure(const Density& phi, const Body& k, const IntegrateConfig& cfg,
                 std::uint64_t stream = 0);

// (1/vol K) * integral over y in K of mu(-y + K)
Estimate translated_average(const Density& phi, const Body& k,
                            const IntegrateConfig& cfg, std::uint64_t stream = 0);

// integral over x in K of mu(x + L)
Estimate translated_integral(const Density& phi, const Body& k, const Body& l,
                             const IntegrateConfig& cfg, std::uint64_t stream = 0);

// lower-bound search for sup over x of mu(x + K)
SupEstimate sup_translate(const Density& phi, const Body& k, const IntegrateConfig& cfg,
                          std::uint64_t stream = 0,
                          const std::optional<SearchBox>& search = std::nullopt);

// integral over theta in [0,1] of mu((1-theta)K + theta(-K))
Estimate ck_integral(const Density& phi, const Body& k, const IntegrateConfig& cfg,
                     std::uint64_t stream = 0);

// two-body form: integral over theta in [0,1] of mu((1-theta)K + theta L)
Estimate ck_integral(const Density& phi, const Body& k, const Body& l,
                     const IntegrateConfig& cfg, std::uint64_t stream = 0);

// lower-bound search for sup over y in K, theta in [theta_min, 1] of
// mu((1-theta)y - theta K) / theta^n
SupEstimate sup_interpolated_translate(const Density& phi, const Body& k,
                                       const IntegrateConfig& cfg,
                                       std::uint64_t stream = 0);

// two-body form of the same search: mu((1-theta)y + theta L) / theta^n
// with y ranging over K
SupEstimate sup_interpolated_translate(const Density& phi, const Body& k, const Body& l,
                                       const IntegrateConfig& cfg,
                                       std::uint64_t stream = 0);

}  // namespace rslab
