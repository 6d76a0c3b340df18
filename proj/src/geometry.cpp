#include "regmod/geometry.hpp"

#include <algorithm>
#include <cstddef>

namespace regmod {

double dot(const Vec& a, const Vec& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double norm(const Vec& a) { return std::sqrt(dot(a, a)); }

double distance(const Vec& a, const Vec& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return std::sqrt(s);
}

Vec add(const Vec& a, const Vec& b) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

Vec sub(const Vec& a, const Vec& b) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

Vec scaled(const Vec& a, double s) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] * s;
    return r;
}

Vec zeros(int dim) { return Vec(static_cast<std::size_t>(dim), 0.0); }

bool near(const Vec& a, const Vec& b, double tol) {
    return a.size() == b.size() && distance(a, b) <= tol;
}

double weighted_product_norm(const Vec& x, std::span<const Vec> xhat, double rho) {
    if (rho <= 0.0) throw PreconditionError("weighted product norm requires rho > 0");
    return std::max(norm(x), rho * max_block_norm(xhat));
}

double max_block_norm(std::span<const Vec> blocks) {
    double m = 0.0;
    for (const Vec& b : blocks) m = std::max(m, norm(b));
    return m;
}

namespace {

// One Newton step on the original cubic; keeps roots honest after the closed
// form, which loses digits when coefficients differ by orders of magnitude.
double polish_cubic_root(double a3, double a2, double a1, double a0, double t) {
    for (int i = 0; i < 3; ++i) {
        const double f = ((a3 * t + a2) * t + a1) * t + a0;
        const double df = (3.0 * a3 * t + 2.0 * a2) * t + a1;
        if (std::abs(df) < 1e-300) break;
        const double step = f / df;
        t -= step;
        if (std::abs(step) < 1e-16 * (1.0 + std::abs(t))) break;
    }
    return t;
}

void push_unique(std::vector<double>& roots, double t, double scale) {
    for (double r : roots) {
        if (std::abs(r - t) <= 1e-9 * (1.0 + scale)) return;
    }
    roots.push_back(t);
}

}  // namespace

std::vector<double> solve_quadratic(double a, double b, double c) {
    std::vector<double> roots;
    const double scale = std::max({std::abs(a), std::abs(b), std::abs(c)});
    if (scale == 0.0) return roots;
    if (std::abs(a) <= 1e-14 * scale) {
        if (std::abs(b) <= 1e-14 * scale) return roots;
        roots.push_back(-c / b);
        return roots;
    }
    const double disc = b * b - 4.0 * a * c;
    const double disc_tol = 1e-12 * std::max(b * b, std::abs(4.0 * a * c));
    if (disc < -disc_tol) return roots;
    if (disc <= disc_tol) {
        roots.push_back(-b / (2.0 * a));
        return roots;
    }
    // Stable form: avoid cancellation between -b and the radical.
    const double s = std::sqrt(disc);
    const double q = -0.5 * (b + (b >= 0.0 ? s : -s));
    double r1 = q / a;
    double r2 = (q != 0.0) ? c / q : -b / a - r1;
    if (r1 > r2) std::swap(r1, r2);
    roots.push_back(r1);
    if (r2 != r1) roots.push_back(r2);
    return roots;
}

std::vector<double> solve_cubic(double a3, double a2, double a1, double a0) {
    const double scale = std::max({std::abs(a3), std::abs(a2), std::abs(a1), std::abs(a0)});
    if (scale == 0.0) return {};
    if (std::abs(a3) <= 1e-14 * scale) return solve_quadratic(a2, a1, a0);

    // Depressed form t = s - p/3: s^3 + P s + Q = 0.
    const double p = a2 / a3;
    const double q = a1 / a3;
    const double r = a0 / a3;
    const double P = q - p * p / 3.0;
    const double Q = 2.0 * p * p * p / 27.0 - p * q / 3.0 + r;

    std::vector<double> roots;
    const double disc = Q * Q / 4.0 + P * P * P / 27.0;
    const double disc_tol = 1e-14 * std::max(Q * Q, std::abs(P * P * P));
    const double shift = -p / 3.0;
    if (disc > disc_tol) {
        const double sq = std::sqrt(disc);
        const double u = std::cbrt(-Q / 2.0 + sq);
        const double v = std::cbrt(-Q / 2.0 - sq);
        roots.push_back(u + v + shift);
    } else if (disc >= -disc_tol) {
        if (std::abs(Q) <= 1e-300 && std::abs(P) <= 1e-300) {
            roots.push_back(shift);
        } else {
            const double u = std::cbrt(-Q / 2.0);
            roots.push_back(2.0 * u + shift);
            roots.push_back(-u + shift);
        }
    } else {
        const double m = 2.0 * std::sqrt(-P / 3.0);
        const double theta = std::acos(std::clamp(3.0 * Q / (P * m), -1.0, 1.0)) / 3.0;
        for (int k = 0; k < 3; ++k) {
            roots.push_back(m * std::cos(theta - 2.0 * M_PI * k / 3.0) + shift);
        }
    }

    std::vector<double> polished;
    double tscale = 0.0;
    for (double t : roots) tscale = std::max(tscale, std::abs(t));
    for (double t : roots) {
        push_unique(polished, polish_cubic_root(a3, a2, a1, a0, t), tscale);
    }
    std::sort(polished.begin(), polished.end());
    return polished;
}

}  // namespace regmod
