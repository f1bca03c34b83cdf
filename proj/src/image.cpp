#include "lus/image.hpp"

#include <cmath>

namespace lus {

Frame::Frame(int width, int height, std::vector<double> pixels)
    : width_(width), height_(height), pixels_(std::move(pixels)) {
    if (width_ <= 0 || height_ <= 0)
        raise(Errc::DimensionMismatch, "frame dimensions must be positive");
    if (pixels_.size() != static_cast<std::size_t>(width_) * static_cast<std::size_t>(height_))
        raise(Errc::DimensionMismatch, "pixel count does not match width * height");
    for (double v : pixels_) {
        if (!std::isfinite(v))
            raise(Errc::NonFiniteValue, "frame contains a non-finite intensity");
    }
}

Frame Frame::zeros(int width, int height) {
    Frame f;
    f.width_ = width;
    f.height_ = height;
    f.pixels_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), 0.0);
    return f;
}

Clip clip_new(std::vector<Frame> frames) {
    if (frames.empty())
        raise(Errc::EmptyClip, "clip must contain at least one frame");
    for (const Frame& f : frames) {
        if (!f.same_dims(frames.front()))
            raise(Errc::DimensionMismatch, "clip frames must share dimensions");
    }
    Clip c;
    c.frames = std::move(frames);
    return c;
}

} // namespace lus
