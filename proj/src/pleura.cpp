#include "lus/pleura.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace lus {

namespace {

inline int round_away(double v) { return static_cast<int>(std::lround(v)); }

} // namespace

void SegmentationParams::validate() const {
    if (work_size < 16)
        raise(Errc::InvalidArgument, "work_size must be at least 16");
    if (!(sobel_factor > 0.0))
        raise(Errc::InvalidArgument, "sobel_factor must be positive");
    if (intensity_k < 0.0)
        raise(Errc::InvalidArgument, "intensity_k must be non-negative");
    if (dilate_iters < 0)
        raise(Errc::InvalidArgument, "dilate_iters must be non-negative");
    if (poly_degree < 1)
        raise(Errc::InvalidArgument, "poly_degree must be at least 1");
    if (!(tangent_extension > 10.0))
        raise(Errc::InvalidArgument, "tangent_extension must exceed 10 pixels");
    if (max_band_thickness < 1)
        raise(Errc::InvalidArgument, "max_band_thickness must be at least 1");
}

std::vector<int> curve_rows(const PiecewiseCurve& c, int width) {
    std::vector<int> rows(static_cast<std::size_t>(width));
    for (int x = 0; x < width; ++x)
        rows[static_cast<std::size_t>(x)] = round_away(c.eval(x));
    return rows;
}

BinaryMask band_between(int width, int height, const std::vector<int>& upper_rows,
                        const std::vector<int>& lower_rows) {
    BinaryMask band = BinaryMask::empty(width, height);
    for (int x = 0; x < width; ++x) {
        const int lo = lower_rows[static_cast<std::size_t>(x)];
        const int up = std::min(upper_rows[static_cast<std::size_t>(x)], lo);
        if (lo < 0 || up > height - 1)
            continue; // band lies entirely off-image in this column
        for (int y = std::max(0, up); y <= std::min(height - 1, lo); ++y)
            band.set(x, y, true);
    }
    return band;
}

std::vector<int> PleuralSegmentation::lower_rows() const { return curve_rows(lower, width); }

std::vector<int> PleuralSegmentation::upper_rows() const {
    std::vector<int> lo = curve_rows(lower, width);
    std::vector<int> up = curve_rows(upper, width);
    for (std::size_t i = 0; i < up.size(); ++i)
        up[i] = std::min(up[i], lo[i]);
    return up;
}

std::pair<double, double> compute_thresholds(const Frame& frame, const SegmentationParams& params) {
    const auto [sobel_mean, sobel_std] = mean_std(sobel_y(frame));
    (void)sobel_std;
    const auto [mean, std_dev] = mean_std(frame);
    return {params.sobel_factor * sobel_mean, mean + params.intensity_k * std_dev};
}

BinaryMask candidate_mask(const Frame& frame, const SegmentationParams& params) {
    const auto [t_sobel, t_intensity] = compute_thresholds(frame, params);
    const Frame response = sobel_y(frame);
    BinaryMask m = BinaryMask::empty(frame.width(), frame.height());
    for (std::size_t i = 0; i < frame.size(); ++i)
        m.bits[i] = (response.pixels()[i] > t_sobel && frame.pixels()[i] > t_intensity) ? 1 : 0;
    return m;
}

std::vector<PointI> lowest_per_column(const BinaryMask& mask) {
    std::vector<PointI> points;
    for (int x = 0; x < mask.width; ++x) {
        for (int y = mask.height - 1; y >= 0; --y) {
            if (mask.at(x, y)) {
                points.push_back({x, y});
                break;
            }
        }
    }
    return points;
}

std::vector<PointI> consolidate_regions(const std::vector<PointI>& points,
                                        const SegmentationParams& params) {
    if (points.empty())
        raise(Errc::NoCandidates, "no candidate points to consolidate");

    int w = 0, h = 0;
    for (const PointI& p : points) {
        w = std::max(w, p.x + 1);
        h = std::max(h, p.y + 1);
    }
    w = std::max(w, params.work_size);
    h = std::max(h, params.work_size);

    BinaryMask raster = BinaryMask::empty(w, h);
    for (const PointI& p : points)
        raster.set(p.x, p.y, true);
    const LabelMap labels = connected_components(dilate(raster, params.dilate_iters));

    // Area of each cluster in the dilated mask; min y over the raw points it
    // contains. Ties on area resolve to the lower label (raster order).
    std::vector<std::size_t> area(static_cast<std::size_t>(labels.region_count) + 1, 0);
    for (int label : labels.labels)
        if (label > 0)
            ++area[static_cast<std::size_t>(label)];
    std::vector<int> min_y(static_cast<std::size_t>(labels.region_count) + 1,
                           std::numeric_limits<int>::max());
    for (const PointI& p : points) {
        const int label = labels.at(p.x, p.y);
        min_y[static_cast<std::size_t>(label)] = std::min(min_y[static_cast<std::size_t>(label)], p.y);
    }

    int largest = 1;
    for (int label = 2; label <= labels.region_count; ++label)
        if (area[static_cast<std::size_t>(label)] > area[static_cast<std::size_t>(largest)])
            largest = label;

    std::vector<PointI> out;
    out.reserve(points.size());
    for (const PointI& p : points) {
        const int label = labels.at(p.x, p.y);
        const int offset =
            label == largest ? 0 : min_y[static_cast<std::size_t>(largest)] - min_y[static_cast<std::size_t>(label)];
        out.push_back({p.x, p.y + offset});
    }
    return out;
}

std::vector<int> upper_boundary(const Frame& frame, const std::vector<int>& lower,
                                double t_intensity, const SegmentationParams& params) {
    const int w = frame.width(), h = frame.height();
    std::vector<int> up(static_cast<std::size_t>(w));
    for (int x = 0; x < w; ++x) {
        const int lo = std::clamp(lower[static_cast<std::size_t>(x)], 0, h - 1);
        int u = lo;
        while (lo - u < params.max_band_thickness && u - 1 >= 0 && frame.at(x, u - 1) > t_intensity)
            --u;
        up[static_cast<std::size_t>(x)] = u;
    }
    return up;
}

PleuralSegmentation segment_pleura(const Frame& frame, const SegmentationParams& params) {
    params.validate();
    if (frame.width() < 16 || frame.height() < 16)
        raise(Errc::FrameTooSmall, "segment_pleura needs at least a 16x16 frame");

    const Frame blurred = gaussian_blur_5x5(frame);
    const Frame work = resize_bilinear(blurred, params.work_size, params.work_size);
    const auto [t_sobel, t_intensity] = compute_thresholds(work, params);
    (void)t_sobel;

    const BinaryMask candidates = candidate_mask(work, params);
    const std::vector<PointI> deepest = lowest_per_column(candidates);
    if (deepest.empty())
        raise(Errc::NoCandidates, "no pleural-line candidates found");

    const std::vector<PointI> consolidated = consolidate_regions(deepest, params);
    const Curve lower_fit = fit_polynomial(consolidated, params.poly_degree);
    const PiecewiseCurve lower_work = extend_tangent(lower_fit, params.tangent_extension);

    // Upper boundary is scanned over the fit's own domain at work scale and
    // summarized by a cubic (local bumps are kept, the overall bend is not).
    const int x_lo = std::clamp(static_cast<int>(std::ceil(lower_fit.x_min())), 0, params.work_size - 1);
    const int x_hi = std::clamp(static_cast<int>(std::floor(lower_fit.x_max())), 0, params.work_size - 1);
    std::vector<int> lower_rows_work(static_cast<std::size_t>(params.work_size));
    for (int x = 0; x < params.work_size; ++x)
        lower_rows_work[static_cast<std::size_t>(x)] = round_away(lower_work.eval(x));
    const std::vector<int> upper_rows_work = upper_boundary(work, lower_rows_work, t_intensity, params);
    std::vector<PointI> upper_points;
    for (int x = x_lo; x <= x_hi; ++x)
        upper_points.push_back({x, upper_rows_work[static_cast<std::size_t>(x)]});
    const Curve upper_fit = fit_polynomial(upper_points, 3);
    const PiecewiseCurve upper_work = extend_tangent(upper_fit, params.tangent_extension);

    const double sx = static_cast<double>(frame.width()) / params.work_size;
    const double sy = static_cast<double>(frame.height()) / params.work_size;

    PleuralSegmentation seg;
    seg.width = frame.width();
    seg.height = frame.height();
    seg.lower = lower_work.rescaled(sx, sy);
    seg.upper = upper_work.rescaled(sx, sy);
    seg.work_candidates = consolidated;

    seg.band = band_between(seg.width, seg.height, seg.upper_rows(), seg.lower_rows());
    return seg;
}

} // namespace lus
