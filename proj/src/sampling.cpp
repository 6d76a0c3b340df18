#include "regmod/sampling.hpp"

#include <cmath>
#include <cstdlib>
#include <thread>
#include <vector>

namespace regmod {

std::uint64_t Rng::next() {
    // splitmix64
    state_ += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

double Rng::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

double Rng::uniform(double a, double b) { return a + (b - a) * uniform(); }

double Rng::normal() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    const double u1 = std::max(uniform(), 1e-300);
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    have_spare_ = true;
    spare_ = r * std::sin(2.0 * M_PI * u2);
    return r * std::cos(2.0 * M_PI * u2);
}

Vec Rng::unit_vector(int dim) {
    if (dim == 1) return {uniform() < 0.5 ? -1.0 : 1.0};
    if (dim == 2) {
        const double a = uniform(0.0, 2.0 * M_PI);
        return {std::cos(a), std::sin(a)};
    }
    Vec v(static_cast<std::size_t>(dim));
    double n = 0.0;
    do {
        for (double& c : v) c = normal();
        n = norm(v);
    } while (n < 1e-12);
    return scaled(v, 1.0 / n);
}

Vec Rng::ball_point(int dim, double radius) {
    const double r = radius * std::pow(uniform(), 1.0 / dim);
    return scaled(unit_vector(dim), r);
}

std::uint64_t mix_seed(std::uint64_t base, std::string_view tag) {
    std::uint64_t h = 1469598103934665603ull ^ base;
    for (char c : tag) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ull;
    }
    return h;
}

std::vector<Vec> structured_directions(int dim) {
    std::vector<Vec> dirs;
    for (int i = 0; i < dim; ++i) {
        Vec e = zeros(dim);
        e[i] = 1.0;
        dirs.push_back(e);
        e[i] = -1.0;
        dirs.push_back(e);
    }
    if (dim == 2) {
        const double r = 1.0 / std::sqrt(2.0);
        dirs.push_back({r, r});
        dirs.push_back({r, -r});
        dirs.push_back({-r, r});
        dirs.push_back({-r, -r});
    }
    return dirs;
}

std::vector<double> geometric_grid(double top, double ratio, int count) {
    std::vector<double> g;
    double v = top;
    for (int i = 0; i < count; ++i) {
        g.push_back(v);
        v *= ratio;
    }
    return g;
}

int worker_count() {
    if (const char* env = std::getenv("REGMOD_THREADS")) {
        const int n = std::atoi(env);
        if (n >= 1) return n;
    }
    return 1;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& f) {
    const int workers = worker_count();
    if (workers <= 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i) f(i);
        return;
    }
    std::vector<std::thread> pool;
    const std::size_t chunk = (n + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
        const std::size_t lo = w * chunk;
        const std::size_t hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([lo, hi, &f] {
            for (std::size_t i = lo; i < hi; ++i) f(i);
        });
    }
    for (std::thread& t : pool) t.join();
}

}  // namespace regmod
