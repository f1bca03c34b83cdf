#include "lus/straighten.hpp"

#include <algorithm>
#include <cmath>

namespace lus {

void StraightenParams::validate() const {
    if (crop_margin < 0)
        raise(Errc::InvalidArgument, "crop_margin must be non-negative");
    if (target_row < 0)
        raise(Errc::InvalidArgument, "target_row must be non-negative");
}

Curve fit_cubic(const std::vector<PointI>& upper_points) { return fit_polynomial(upper_points, 3); }

namespace {

template <typename EvalFn>
std::pair<Frame, std::vector<int>> straighten_impl(const Frame& frame, EvalFn&& boundary,
                                                   const StraightenParams& params) {
    params.validate();
    const int w = frame.width(), h = frame.height();
    Frame out = Frame::zeros(w, h);
    std::vector<int> shifted(static_cast<std::size_t>(w));
    for (int x = 0; x < w; ++x) {
        const double b = boundary(x);
        const int delta = static_cast<int>(std::lround(b - params.target_row));
        shifted[static_cast<std::size_t>(x)] = static_cast<int>(std::lround(b)) - delta;
        for (int y = 0; y < h; ++y) {
            const int src = y + delta;
            out.at(x, y) = (src >= 0 && src < h) ? frame.at(x, src) : params.fill_value;
        }
    }
    return {std::move(out), std::move(shifted)};
}

} // namespace

std::pair<Frame, std::vector<int>> straighten(const Frame& frame, const PiecewiseCurve& cubic,
                                              const StraightenParams& params) {
    return straighten_impl(frame, [&cubic](int x) { return cubic.eval(x); }, params);
}

std::pair<Frame, std::vector<int>> straighten(const Frame& frame, const Curve& cubic,
                                              const StraightenParams& params) {
    return straighten_impl(frame, [&cubic](int x) { return cubic.eval(x); }, params);
}

Frame crop_above(const Frame& frame, const std::vector<int>& upper, int margin, double fill_value) {
    if (margin < 0)
        raise(Errc::InvalidArgument, "crop margin must be non-negative");
    if (upper.empty())
        raise(Errc::EmptyInput, "crop_above needs per-column upper rows");
    const int cut = std::max(0, *std::min_element(upper.begin(), upper.end()) - margin);
    Frame out = frame;
    for (int y = 0; y < std::min(cut, frame.height()); ++y)
        for (int x = 0; x < frame.width(); ++x)
            out.at(x, y) = fill_value;
    return out;
}

} // namespace lus
