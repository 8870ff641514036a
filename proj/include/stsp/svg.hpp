#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "stsp/instance.hpp"
#include "stsp/solver.hpp"

namespace stsp {

/// Draws the instance and a solution walk: every graph arc in a light
/// stroke, the walk overdrawn with numbered steps, nodes as glyphs (square
/// depot, filled required nodes, hollow transit nodes).  Output is
/// deterministic (fixed 3-decimal coordinates), well-formed XML, and
/// throws std::invalid_argument if the walk references an unknown arc.
/// An empty walk renders just the instance.
std::string render_route_svg(const Instance& ins, const Solution& sol);

/// Line chart of objective value against instance size: one polyline per
/// series entry (key = label, points = (x, y) sorted by x).  Throws
/// std::invalid_argument when no series has at least two points.
std::string render_scaling_svg(
    const std::map<std::string, std::vector<std::pair<double, double>>>& series);

}  // namespace stsp
