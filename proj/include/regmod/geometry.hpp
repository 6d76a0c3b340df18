#pragma once

#include <cmath>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace regmod {

// Points and directions are dense Euclidean vectors. All factor spaces use
// the Euclidean norm; products of factors are normed with the maximum of the
// factor norms and the dual product norm is the sum of the dual factor norms.
using Vec = std::vector<double>;

constexpr double kInf = std::numeric_limits<double>::infinity();

// Default absolute tolerance for membership tests.
constexpr double kMembershipTol = 1e-10;

// Tolerance for "the minimized max-distance is zero" feasibility decisions.
constexpr double kFeasibilityTol = 1e-6;

enum class FactorNorm { kEuclidean };

struct SpaceConfig {
    int dim = 2;
    FactorNorm factor_norm = FactorNorm::kEuclidean;
};

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

/// A set kind (or a combination of kinds) without an exact distance formula.
struct NoAnalyticOracle : std::runtime_error {
    explicit NoAnalyticOracle(const std::string& what) : std::runtime_error(what) {}
};

/// Intersection distance could only be bracketed, and the bracket is wider
/// than the requested tolerance.
struct UnresolvedIntersection : std::runtime_error {
    UnresolvedIntersection(double lo, double hi)
        : std::runtime_error("unresolved intersection distance in [" +
                             std::to_string(lo) + ", " + std::to_string(hi) + "]"),
          lower(lo),
          upper(hi) {}
    double lower;
    double upper;
};

struct PreconditionError : std::runtime_error {
    explicit PreconditionError(const std::string& what) : std::runtime_error(what) {}
};

// ---------------------------------------------------------------------------
// Vector helpers
// ---------------------------------------------------------------------------

double dot(const Vec& a, const Vec& b);
double norm(const Vec& a);
double distance(const Vec& a, const Vec& b);
Vec add(const Vec& a, const Vec& b);
Vec sub(const Vec& a, const Vec& b);
Vec scaled(const Vec& a, double s);
Vec zeros(int dim);
bool near(const Vec& a, const Vec& b, double tol);

/// max{ ||x||, rho * max_i ||xhat_i|| } — the rho-weighted product norm.
double weighted_product_norm(const Vec& x, std::span<const Vec> xhat, double rho);

/// Max of factor norms; the product-space norm of a tuple of factor points.
double max_block_norm(std::span<const Vec> blocks);

// ---------------------------------------------------------------------------
// Small polynomial solvers (real roots, ascending order)
// ---------------------------------------------------------------------------

std::vector<double> solve_quadratic(double a, double b, double c);

/// Real roots of a3 t^3 + a2 t^2 + a1 t + a0 = 0, Newton-polished.
/// Degenerate leading coefficients fall through to lower degrees.
std::vector<double> solve_cubic(double a3, double a2, double a1, double a0);

}  // namespace regmod
