#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "lus/image.hpp"

namespace lus {

struct BinaryMask {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> bits; // row-major, 0/1

    static BinaryMask empty(int width, int height) {
        return BinaryMask{width, height,
                          std::vector<std::uint8_t>(
                              static_cast<std::size_t>(width) * static_cast<std::size_t>(height), 0)};
    }
    bool at(int x, int y) const { return bits[static_cast<std::size_t>(y) * width + x] != 0; }
    void set(int x, int y, bool v) { bits[static_cast<std::size_t>(y) * width + x] = v ? 1 : 0; }
    std::size_t count() const;
};

struct LabelMap {
    int width = 0;
    int height = 0;
    std::vector<int> labels; // 0 = background, regions numbered 1..region_count
    int region_count = 0;

    int at(int x, int y) const { return labels[static_cast<std::size_t>(y) * width + x]; }
};

// 5x5 Gaussian (sigma = 1.0, kernel normalized to unit sum), replicate border.
Frame gaussian_blur_5x5(const Frame& frame);

// Bilinear resize with pixel-center alignment; resizing to the same
// dimensions reproduces the input exactly.
Frame resize_bilinear(const Frame& frame, int out_w, int out_h);

// Absolute response to the 3x3 vertical-gradient Sobel kernel
// [-1,-2,-1; 0,0,0; 1,2,1], replicate border. The magnitude is used rather
// than the signed response: a signed mean is ~0 on typical images, which
// would make a mean-based threshold degenerate.
Frame sobel_y(const Frame& frame);

// Arithmetic mean and population standard deviation (divide by N).
std::pair<double, double> mean_std(const Frame& frame);

// Strict comparison: mask true where pixel > t.
BinaryMask threshold(const Frame& frame, double t);

// Morphological dilation with a 3x3 square structuring element.
BinaryMask dilate(const BinaryMask& mask, int iterations);

// 8-connectivity labeling; labels are contiguous from 1 in raster order of
// each region's first-encountered pixel.
LabelMap connected_components(const BinaryMask& mask);

} // namespace lus
