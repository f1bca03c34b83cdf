#pragma once

#include <utility>
#include <vector>

#include "lus/curve.hpp"
#include "lus/image.hpp"

namespace lus {

struct StraightenParams {
    int crop_margin = 5;   // rows kept above the shallowest upper boundary
    int target_row = 20;   // row the straightened pleura is shifted to
    double fill_value = 0; // intensity for vacated pixels

    void validate() const;
};

// Degree-3 least-squares fit of the upper pleural boundary.
Curve fit_cubic(const std::vector<PointI>& upper_points);

// Shift every column by round(cubic(x) - target_row) so the cubic becomes a
// horizontal line at target_row. Shifts are whole pixels: values move or are
// discarded at the borders, never resampled. Returns the straightened frame
// and the shifted upper-boundary row per column.
std::pair<Frame, std::vector<int>> straighten(const Frame& frame, const PiecewiseCurve& cubic,
                                              const StraightenParams& params);
std::pair<Frame, std::vector<int>> straighten(const Frame& frame, const Curve& cubic,
                                              const StraightenParams& params);

// Fill rows above min(upper) - margin with fill_value. Dimensions are kept
// so clip tensors stay rectangular.
Frame crop_above(const Frame& frame, const std::vector<int>& upper, int margin,
                 double fill_value = 0.0);

} // namespace lus
