#pragma once

#include "regmod/collection.hpp"

namespace regmod {

/// Built-in benchmark collections in the plane, all based at the origin:
///   example-2.1  halfspace {v >= 0} with the parabola sublevel {v <= u^2}
///   example-2.2  the two parabola graphs v = u^2 and v = -u^2
///   example-2.3  {u <= 0 or v >= u^2} with {u <= 0 or v <= -u^2}
///   example-2.4  {u <= 0 or |v| >= u^2} with the whole plane
///   halfspaces   the orthogonal pair {v >= 0}, {u >= 0}
/// Short ids ("2.1", ...) are accepted as aliases.
SetCollection make_preset(const std::string& id);

const std::vector<std::string>& preset_names();
bool is_preset(const std::string& id);

}  // namespace regmod
