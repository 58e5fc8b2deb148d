#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "stylo/style.hpp"

namespace stylo {

/// Bar chart of w+ over an 800x400 viewport, one bar per measure in
/// registry order, y axis fixed to [-1, 1].
std::string render_fingerprint_svg(const StyleFingerprint& fp);

/// Scatter of first/second principal-component coordinates with one text
/// label per point. Needs at least two points.
std::string render_pca_svg(std::span<const std::array<double, 2>> projections,
                           std::span<const std::string> labels);

}  // namespace stylo
