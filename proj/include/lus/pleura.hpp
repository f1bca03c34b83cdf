#pragma once

#include <utility>
#include <vector>

#include "lus/curve.hpp"
#include "lus/image.hpp"
#include "lus/imgops.hpp"

namespace lus {

struct SegmentationParams {
    int work_size = 150;            // side of the square working image
    double sobel_factor = 0.2;      // threshold_sobel = sobel_factor * mean(|sobel_y|)
    double intensity_k = 1.3;       // threshold_intensity = mean + intensity_k * std
    int dilate_iters = 2;           // gap filling before clustering
    int poly_degree = 4;            // lower-boundary fit
    double tangent_extension = 12;  // px past each endpoint, must exceed 10
    int max_band_thickness = 12;    // upper-boundary scan cap, work scale

    void validate() const;
};

// Fitted pleural band in native frame coordinates. The lower curve is the
// deepest extent of the bright line (greatest row), the upper curve the
// shallowest. Tangent segments past the fit domain cover every column.
struct PleuralSegmentation {
    int width = 0;
    int height = 0;
    PiecewiseCurve lower;
    PiecewiseCurve upper;
    BinaryMask band;
    std::vector<PointI> work_candidates; // consolidated candidates, work scale

    // Rounded per-column rows; upper is clamped to never exceed lower.
    // Rounding is half-away-from-zero throughout so masks are reproducible.
    std::vector<int> lower_rows() const;
    std::vector<int> upper_rows() const;
};

// Per-column boundary rows from tangent-extended curves over [0, width).
std::vector<int> curve_rows(const PiecewiseCurve& c, int width);

// Pixels between the per-column upper and lower rows, inclusive, clipped to
// the image.
BinaryMask band_between(int width, int height, const std::vector<int>& upper_rows,
                        const std::vector<int>& lower_rows);

// Thresholds from the blurred, work-size frame.
std::pair<double, double> compute_thresholds(const Frame& frame, const SegmentationParams& params);

// Candidate pixels: strong vertical gradient AND bright.
BinaryMask candidate_mask(const Frame& frame, const SegmentationParams& params);

// Deepest candidate per column; columns without candidates are absent.
std::vector<PointI> lowest_per_column(const BinaryMask& mask);

// Rasterize, dilate, cluster by 8-connectivity, then lift every smaller
// cluster to the level of the largest one: each point outside the largest
// cluster gets y += min_y(largest) - min_y(its cluster). Point count and x
// coordinates are preserved.
std::vector<PointI> consolidate_regions(const std::vector<PointI>& points,
                                        const SegmentationParams& params);

// Per-column shallowest row of the bright band: scan upward from the lower
// boundary while the pixel above stays over t_intensity, capped at
// max_band_thickness rows.
std::vector<int> upper_boundary(const Frame& frame, const std::vector<int>& lower,
                                double t_intensity, const SegmentationParams& params);

// Full pipeline: blur, resize to work scale, threshold on Sobel response and
// intensity, keep the deepest candidate per column, consolidate clusters,
// fit the lower polynomial, extend tangents, scan the upper boundary, fit
// its cubic, and rescale everything back to native resolution.
PleuralSegmentation segment_pleura(const Frame& frame, const SegmentationParams& params);

} // namespace lus
