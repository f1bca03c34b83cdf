#include "lus/phantom.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace lus {

double PhantomSpec::depth_at(int x) const {
    const double xf = static_cast<double>(x);
    return pleura_curve[0] + xf * (pleura_curve[1] + xf * (pleura_curve[2] + xf * pleura_curve[3]));
}

void PhantomSpec::validate() const {
    if (width < 16 || height < 16)
        raise(Errc::InvalidArgument, "phantom must be at least 16x16");
    if (band_thickness < 1)
        raise(Errc::InvalidArgument, "band_thickness must be at least 1");
    if (n_blines < 0)
        raise(Errc::InvalidArgument, "n_blines must be non-negative");
    if (speckle_sigma < 0.0)
        raise(Errc::InvalidArgument, "speckle_sigma must be non-negative");
    if (subq_layers < 0)
        raise(Errc::InvalidArgument, "subq_layers must be non-negative");
    if (n_frames < 1)
        raise(Errc::InvalidArgument, "n_frames must be at least 1");
    if (b_line_width < 1)
        raise(Errc::InvalidArgument, "b_line_width must be at least 1");
    for (int x = 0; x < width; ++x) {
        const double d = depth_at(x);
        if (d < 0.15 * height || d > 0.85 * height)
            raise(Errc::InvalidArgument, "pleura depth must stay within [0.15, 0.85] x height");
    }
    const SeverityScore derived = severity_of(*this);
    if (declared_score && *declared_score != derived.value())
        raise(Errc::InconsistentSpec, "declared score " + std::to_string(*declared_score) +
                                          " does not match rendered artifacts (score " +
                                          std::to_string(derived.value()) + ")");
}

SeverityScore severity_of(const PhantomSpec& spec) {
    if (spec.consolidation)
        return SeverityScore(3);
    if (spec.n_blines > 5)
        return SeverityScore(2);
    if (spec.n_blines >= 1)
        return SeverityScore(1);
    if (spec.a_lines)
        return SeverityScore(0);
    raise(Errc::InconsistentSpec, "a phantom without B-lines, consolidation, or A-lines has no severity");
}

std::pair<Clip, PhantomTruth> generate_phantom(const PhantomSpec& spec, Rng& rng) {
    spec.validate();
    const int w = spec.width, h = spec.height;
    const auto& lv = spec.levels;

    std::vector<int> lower(static_cast<std::size_t>(w));
    std::vector<int> upper(static_cast<std::size_t>(w));
    for (int x = 0; x < w; ++x) {
        lower[static_cast<std::size_t>(x)] = static_cast<int>(std::lround(spec.depth_at(x)));
        upper[static_cast<std::size_t>(x)] = lower[static_cast<std::size_t>(x)] - spec.band_thickness + 1;
    }
    const int min_upper = *std::min_element(upper.begin(), upper.end());

    // Stochastic layout: B-line columns (no replacement), then the
    // consolidation center. Speckle is drawn afterwards per frame in raster
    // order, so the whole clip is a pure function of (spec, seed).
    std::vector<int> b_columns;
    if (spec.n_blines > 0) {
        std::vector<int> cols(static_cast<std::size_t>(w));
        std::iota(cols.begin(), cols.end(), 0);
        const int n = std::min(spec.n_blines, w);
        for (int k = 0; k < n; ++k) {
            const int j = k + rng.uniform_int(w - k);
            std::swap(cols[static_cast<std::size_t>(k)], cols[static_cast<std::size_t>(j)]);
            b_columns.push_back(cols[static_cast<std::size_t>(k)]);
        }
    }
    int blob_cx = 0, blob_cy = 0, blob_rx = 0, blob_ry = 0;
    if (spec.consolidation) {
        blob_rx = std::max(3, w / 6);
        blob_ry = std::max(3, h / 10);
        blob_cx = w / 4 + rng.uniform_int(std::max(1, w / 2));
        const int anchor = lower[static_cast<std::size_t>(std::clamp(blob_cx, 0, w - 1))];
        blob_cy = std::min(anchor + 4 + blob_ry, h - 2);
    }

    Frame base = Frame::zeros(w, h);
    auto deposit = [&base](int x, int y, double v) {
        if (y >= 0 && y < base.height())
            base.at(x, y) = std::max(base.at(x, y), v);
    };
    for (int x = 0; x < w; ++x)
        for (int y = 0; y < h; ++y)
            base.at(x, y) = lv.background;

    // SubQ texture: evenly spaced horizontal layers above the band.
    for (int layer = 0; layer < spec.subq_layers; ++layer) {
        const int center = (min_upper * (layer + 1)) / (spec.subq_layers + 1);
        for (int x = 0; x < w; ++x)
            for (int dy = -1; dy <= 1; ++dy)
                if (center + dy < upper[static_cast<std::size_t>(x)])
                    deposit(x, center + dy, lv.subq_layer);
    }

    // A-line reverberations: attenuated band replicas at depth multiples.
    if (spec.a_lines) {
        for (int x = 0; x < w; ++x) {
            const int lo = lower[static_cast<std::size_t>(x)];
            double value = lv.a_line;
            for (int k = 2; k * lo - spec.band_thickness + 1 < h; ++k) {
                for (int y = k * lo - spec.band_thickness + 1; y <= k * lo; ++y)
                    deposit(x, y, value);
                value *= 0.5;
            }
        }
    }

    // B-lines: vertical streaks from the band to the bottom edge.
    for (int col : b_columns) {
        for (int dx = -(spec.b_line_width / 2); dx <= spec.b_line_width / 2; ++dx) {
            const int x = col + dx;
            if (x < 0 || x >= w)
                continue;
            for (int y = lower[static_cast<std::size_t>(x)]; y < h; ++y)
                deposit(x, y, lv.b_line);
        }
    }

    if (spec.consolidation) {
        for (int x = 0; x < w; ++x) {
            for (int y = lower[static_cast<std::size_t>(x)] + 1; y < h; ++y) {
                const double nx = static_cast<double>(x - blob_cx) / blob_rx;
                const double ny = static_cast<double>(y - blob_cy) / blob_ry;
                if (nx * nx + ny * ny <= 1.0)
                    deposit(x, y, lv.consolidation);
            }
        }
    }

    // The band itself, last so it dominates crossing artifacts.
    for (int x = 0; x < w; ++x)
        for (int y = std::max(0, upper[static_cast<std::size_t>(x)]);
             y <= std::min(h - 1, lower[static_cast<std::size_t>(x)]); ++y)
            base.at(x, y) = lv.band;

    Clip clip;
    clip.frames.reserve(static_cast<std::size_t>(spec.n_frames));
    for (int f = 0; f < spec.n_frames; ++f) {
        Frame frame = base;
        if (spec.speckle_sigma > 0.0) {
            for (double& v : frame.pixels())
                v = std::clamp(v * (1.0 + spec.speckle_sigma * rng.normal()), 0.0, 255.0);
        }
        clip.frames.push_back(std::move(frame));
    }

    PhantomTruth truth{lower, upper, region_partition_rows(w, h, upper, lower),
                       severity_of(spec)};
    return {std::move(clip), std::move(truth)};
}

} // namespace lus
