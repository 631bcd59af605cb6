#pragma once

#include <span>

#include "confmap/boundary.hpp"

// Closed polylines: the last vertex connects back to the first.
namespace confmap::polyline {

double distance(cplx point, std::span<const cplx> poly);

/// Signed crossing count of the closed polyline around `point`.
int winding(std::span<const cplx> poly, cplx point);

/// Symmetric Hausdorff distance between two closed polylines, vertices of one
/// against segments of the other.
double hausdorff(std::span<const cplx> a, std::span<const cplx> b);

/// True when no two non-adjacent segments intersect. Segments are swept in
/// order of their left x-extent; only pairs with overlapping boxes are tested.
bool is_simple(std::span<const cplx> poly);

}  // namespace confmap::polyline
