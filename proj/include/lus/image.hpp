#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "lus/error.hpp"

namespace lus {

// Single-channel 2-D intensity image. Intensities are stored as doubles in
// a nominal [0, 255] range and quantized to 8 bits only at file I/O, so
// intermediate operations (blur, resize, scaling) keep full precision.
class Frame {
public:
    Frame() = default;

    // Validating constructor: size must match and every value must be finite.
    Frame(int width, int height, std::vector<double> pixels);

    // Zero-filled frame.
    static Frame zeros(int width, int height);

    int width() const { return width_; }
    int height() const { return height_; }
    std::size_t size() const { return pixels_.size(); }

    double at(int x, int y) const { return pixels_[static_cast<std::size_t>(y) * width_ + x]; }
    double& at(int x, int y) { return pixels_[static_cast<std::size_t>(y) * width_ + x]; }

    const std::vector<double>& pixels() const { return pixels_; }
    std::vector<double>& pixels() { return pixels_; }

    bool same_dims(const Frame& o) const { return width_ == o.width_ && height_ == o.height_; }

private:
    int width_ = 0;
    int height_ = 0;
    std::vector<double> pixels_;
};

inline Frame frame_new(int width, int height, std::vector<double> pixels) {
    return Frame(width, height, std::move(pixels));
}

// Ordered frame sequence; all frames share one width/height.
struct Clip {
    std::vector<Frame> frames;

    int width() const { return frames.empty() ? 0 : frames.front().width(); }
    int height() const { return frames.empty() ? 0 : frames.front().height(); }
    int length() const { return static_cast<int>(frames.size()); }
};

Clip clip_new(std::vector<Frame> frames);

// Lung severity grade on the 4-level scale.
class SeverityScore {
public:
    SeverityScore() = default;
    explicit SeverityScore(int value) : value_(value) {
        if (value < 0 || value > 3)
            raise(Errc::InvalidArgument, "severity score must be in {0,1,2,3}");
    }
    int value() const { return value_; }
    friend bool operator==(SeverityScore a, SeverityScore b) { return a.value_ == b.value_; }

private:
    int value_ = 0;
};

} // namespace lus
