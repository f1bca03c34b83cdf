#include "lus/imgops.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

namespace lus {

std::size_t BinaryMask::count() const {
    std::size_t n = 0;
    for (std::uint8_t b : bits)
        n += b;
    return n;
}

namespace {

inline int clampi(int v, int lo, int hi) { return v < lo ? lo : (v > hi ? hi : v); }

std::array<double, 5> gaussian_kernel_1d() {
    std::array<double, 5> k{};
    double sum = 0.0;
    for (int i = -2; i <= 2; ++i) {
        k[static_cast<std::size_t>(i + 2)] = std::exp(-0.5 * i * i); // sigma = 1
        sum += k[static_cast<std::size_t>(i + 2)];
    }
    for (double& v : k)
        v /= sum;
    return k;
}

} // namespace

Frame gaussian_blur_5x5(const Frame& frame) {
    if (frame.width() < 5 || frame.height() < 5)
        raise(Errc::FrameTooSmall, "gaussian_blur_5x5 needs at least a 5x5 frame");
    static const std::array<double, 5> k = gaussian_kernel_1d();
    const int w = frame.width(), h = frame.height();

    // Separable pass: rows, then columns, replicate at the borders.
    std::vector<double> tmp(static_cast<std::size_t>(w) * h);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            double acc = 0.0;
            for (int i = -2; i <= 2; ++i)
                acc += k[static_cast<std::size_t>(i + 2)] * frame.at(clampi(x + i, 0, w - 1), y);
            tmp[static_cast<std::size_t>(y) * w + x] = acc;
        }
    }
    std::vector<double> out(static_cast<std::size_t>(w) * h);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            double acc = 0.0;
            for (int i = -2; i <= 2; ++i)
                acc += k[static_cast<std::size_t>(i + 2)] * tmp[static_cast<std::size_t>(clampi(y + i, 0, h - 1)) * w + x];
            out[static_cast<std::size_t>(y) * w + x] = acc;
        }
    }
    return Frame(w, h, std::move(out));
}

Frame resize_bilinear(const Frame& frame, int out_w, int out_h) {
    if (out_w < 1 || out_h < 1)
        raise(Errc::InvalidArgument, "resize target must be at least 1x1");
    const int in_w = frame.width(), in_h = frame.height();
    if (out_w == in_w && out_h == in_h)
        return frame;

    const double sx = static_cast<double>(in_w) / out_w;
    const double sy = static_cast<double>(in_h) / out_h;
    std::vector<double> out(static_cast<std::size_t>(out_w) * out_h);
    for (int y = 0; y < out_h; ++y) {
        double src_y = (y + 0.5) * sy - 0.5;
        src_y = std::clamp(src_y, 0.0, static_cast<double>(in_h - 1));
        const int y0 = static_cast<int>(src_y);
        const int y1 = std::min(y0 + 1, in_h - 1);
        const double fy = src_y - y0;
        for (int x = 0; x < out_w; ++x) {
            double src_x = (x + 0.5) * sx - 0.5;
            src_x = std::clamp(src_x, 0.0, static_cast<double>(in_w - 1));
            const int x0 = static_cast<int>(src_x);
            const int x1 = std::min(x0 + 1, in_w - 1);
            const double fx = src_x - x0;
            const double top = (1.0 - fx) * frame.at(x0, y0) + fx * frame.at(x1, y0);
            const double bot = (1.0 - fx) * frame.at(x0, y1) + fx * frame.at(x1, y1);
            out[static_cast<std::size_t>(y) * out_w + x] = (1.0 - fy) * top + fy * bot;
        }
    }
    return Frame(out_w, out_h, std::move(out));
}

Frame sobel_y(const Frame& frame) {
    if (frame.width() < 3 || frame.height() < 3)
        raise(Errc::FrameTooSmall, "sobel_y needs at least a 3x3 frame");
    const int w = frame.width(), h = frame.height();
    std::vector<double> out(static_cast<std::size_t>(w) * h);
    for (int y = 0; y < h; ++y) {
        const int ya = clampi(y - 1, 0, h - 1);
        const int yb = clampi(y + 1, 0, h - 1);
        for (int x = 0; x < w; ++x) {
            const int xl = clampi(x - 1, 0, w - 1);
            const int xr = clampi(x + 1, 0, w - 1);
            const double above = frame.at(xl, ya) + 2.0 * frame.at(x, ya) + frame.at(xr, ya);
            const double below = frame.at(xl, yb) + 2.0 * frame.at(x, yb) + frame.at(xr, yb);
            out[static_cast<std::size_t>(y) * w + x] = std::abs(below - above);
        }
    }
    return Frame(w, h, std::move(out));
}

std::pair<double, double> mean_std(const Frame& frame) {
    const std::size_t n = frame.size();
    if (n == 0)
        raise(Errc::EmptyInput, "mean_std of an empty frame");
    double sum = 0.0;
    for (double v : frame.pixels())
        sum += v;
    const double mean = sum / static_cast<double>(n);
    double ss = 0.0;
    for (double v : frame.pixels())
        ss += (v - mean) * (v - mean);
    return {mean, std::sqrt(ss / static_cast<double>(n))};
}

BinaryMask threshold(const Frame& frame, double t) {
    BinaryMask m = BinaryMask::empty(frame.width(), frame.height());
    for (std::size_t i = 0; i < frame.size(); ++i)
        m.bits[i] = frame.pixels()[i] > t ? 1 : 0;
    return m;
}

BinaryMask dilate(const BinaryMask& mask, int iterations) {
    if (iterations < 0)
        raise(Errc::InvalidArgument, "dilate iterations must be non-negative");
    BinaryMask cur = mask;
    const int w = mask.width, h = mask.height;
    for (int it = 0; it < iterations; ++it) {
        BinaryMask next = BinaryMask::empty(w, h);
        for (int y = 0; y < h; ++y) {
            for (int x = 0; x < w; ++x) {
                if (!cur.at(x, y))
                    continue;
                for (int dy = -1; dy <= 1; ++dy) {
                    const int yy = y + dy;
                    if (yy < 0 || yy >= h)
                        continue;
                    for (int dx = -1; dx <= 1; ++dx) {
                        const int xx = x + dx;
                        if (xx < 0 || xx >= w)
                            continue;
                        next.set(xx, yy, true);
                    }
                }
            }
        }
        cur = std::move(next);
    }
    return cur;
}

LabelMap connected_components(const BinaryMask& mask) {
    const int w = mask.width, h = mask.height;
    LabelMap lm{w, h, std::vector<int>(static_cast<std::size_t>(w) * h, 0), 0};

    // Two-pass union-find over provisional labels.
    std::vector<int> parent(1, 0);
    auto find = [&parent](int a) {
        while (parent[static_cast<std::size_t>(a)] != a)
            a = parent[static_cast<std::size_t>(a)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(a)])];
        return a;
    };
    auto unite = [&parent, &find](int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b)
            parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
    };

    std::vector<int> prov(static_cast<std::size_t>(w) * h, 0);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            if (!mask.at(x, y))
                continue;
            int label = 0;
            const int nx[4] = {x - 1, x - 1, x, x + 1};
            const int ny[4] = {y, y - 1, y - 1, y - 1};
            for (int i = 0; i < 4; ++i) {
                if (nx[i] < 0 || nx[i] >= w || ny[i] < 0)
                    continue;
                const int nl = prov[static_cast<std::size_t>(ny[i]) * w + nx[i]];
                if (nl == 0)
                    continue;
                if (label == 0)
                    label = nl;
                else
                    unite(label, nl);
            }
            if (label == 0) {
                label = static_cast<int>(parent.size());
                parent.push_back(label);
            }
            prov[static_cast<std::size_t>(y) * w + x] = label;
        }
    }

    // Renumber roots by raster order of first occurrence.
    std::vector<int> remap(parent.size(), 0);
    int next_label = 0;
    for (std::size_t i = 0; i < prov.size(); ++i) {
        if (prov[i] == 0)
            continue;
        const int root = find(prov[i]);
        if (remap[static_cast<std::size_t>(root)] == 0)
            remap[static_cast<std::size_t>(root)] = ++next_label;
        lm.labels[i] = remap[static_cast<std::size_t>(root)];
    }
    lm.region_count = next_label;
    return lm;
}

} // namespace lus
