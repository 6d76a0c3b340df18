#pragma once

#include <cstdint>
#include <functional>
#include <string_view>

#include "regmod/geometry.hpp"

namespace regmod {

/// Deterministic generator with a platform-independent stream (splitmix64).
/// Standard-library distributions are avoided so identical seeds give
/// identical samples everywhere.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next();
    double uniform();                      // [0, 1)
    double uniform(double a, double b);
    double normal();
    Vec unit_vector(int dim);
    Vec ball_point(int dim, double radius);

  private:
    std::uint64_t state_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

/// Stable derived seed for a named sampling purpose.
std::uint64_t mix_seed(std::uint64_t base, std::string_view tag);

/// +-axes, plus the diagonal compass in the plane; unit length.
std::vector<Vec> structured_directions(int dim);

/// {top, top*ratio, ..., top*ratio^(count-1)}
std::vector<double> geometric_grid(double top, double ratio, int count);

/// Worker cap from REGMOD_THREADS (>= 1; default 1).
int worker_count();

/// Runs f(i) for i in [0, n) across workers; each index writes only its own
/// output slot, so any subsequent reduction in index order is bit-identical
/// regardless of the thread count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& f);

}  // namespace regmod
