#pragma once

#include <string>
#include <vector>

#include "fembed/cover.hpp"

namespace fembed {

// Built-in cover documents used by the tests and exportable from the CLI.
//   trivial         two charts of a product family; every defect vanishes
//   linear          two charts, two ambient charts, one honest correction
//   threechart      three charts with nonlinear ambient glue
//   obstructed      consistent at t = 0 but not splittable at order 1
//   degenerate-seed a seed embedding whose Jacobian drops rank at the origin
std::vector<std::string> fixture_names();
CoverSpec fixture(const std::string& name);

}  // namespace fembed
