#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <utility>

#include "gridmix/design.hpp"
#include "gridmix/generator.hpp"

namespace fixtures {

using gridmix::GridDesign;
using gridmix::Inlet;

/// A design with the listed channels: {row, col} pairs.
inline GridDesign make(int rows, int cols, std::initializer_list<std::pair<int, int>> h,
                       std::initializer_list<std::pair<int, int>> v, std::vector<Inlet> inlets,
                       std::vector<int> outlets) {
    GridDesign d = GridDesign::empty(rows, cols);
    for (auto [r, c] : h) d.set_horizontal(r, c);
    for (auto [r, c] : v) d.set_vertical(r, c);
    d.inlets = std::move(inlets);
    d.outlets = std::move(outlets);
    return d;
}

/// One straight vertical path from an inlet in column 0 to an outlet.
inline GridDesign single_path(int rows, double concentration) {
    GridDesign d = GridDesign::empty(rows, 1);
    for (int r = 0; r + 1 < rows; ++r) d.set_vertical(r, 0);
    d.inlets = {{0, concentration, 1.0}};
    d.outlets = {0};
    return d;
}

/// Two inlets (1 and 0) joined at node (0,1) and leaving through one
/// outlet below it.
inline GridDesign two_into_one(int rows) {
    GridDesign d = GridDesign::empty(rows, 3);
    d.set_horizontal(0, 0);
    d.set_horizontal(0, 1);
    for (int r = 0; r + 1 < rows; ++r) d.set_vertical(r, 1);
    d.inlets = {{0, 1.0, 1.0}, {2, 0.0, 1.0}};
    d.outlets = {1};
    return d;
}

inline gridmix::GeneratorParams paper_params(std::uint64_t seed) {
    gridmix::GeneratorParams p;
    p.seed = seed;
    return p;
}

inline double rel_diff(double a, double b) { return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)}); }

}  // namespace fixtures
