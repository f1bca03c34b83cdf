#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "lus/image.hpp"
#include "lus/masking.hpp"
#include "lus/rng.hpp"

namespace lus {

// Synthetic B-mode clip description. The pleural line follows the cubic
// depth(x) = c0 + c1 x + c2 x^2 + c3 x^3 in native pixel coordinates and
// must stay within [0.15, 0.85] x height over every column.
struct PhantomSpec {
    int width = 150;
    int height = 150;
    std::array<double, 4> pleura_curve{75.0, 0.0, 0.0, 0.0};
    int band_thickness = 5;
    int n_blines = 0;
    bool a_lines = true;
    bool consolidation = false;
    double speckle_sigma = 0.0;
    int subq_layers = 2;
    int n_frames = 8;
    std::uint64_t seed = 0;
    std::optional<int> declared_score; // optional label to cross-check

    // Rendering intensities; the pleural band must dominate every other
    // structure so noiseless phantoms are separable by construction.
    struct Levels {
        double background = 20.0;
        double subq_layer = 90.0;
        double band = 220.0;
        double a_line = 110.0;      // first replica; halves per further replica
        double b_line = 180.0;
        double consolidation = 140.0;
    } levels;
    int b_line_width = 3;

    void validate() const;
    double depth_at(int x) const;
};

// Exact ground truth for a rendered phantom.
struct PhantomTruth {
    std::vector<int> lower_rows; // deepest band row per column
    std::vector<int> upper_rows; // shallowest band row per column
    RegionMask regions;
    SeverityScore score;
};

// Severity implied by the rendered artifacts: consolidation is score 3,
// more than five B-lines score 2, one to five score 1, and an artifact-free
// lung with A-lines score 0. Anything else is inconsistent.
SeverityScore severity_of(const PhantomSpec& spec);

std::pair<Clip, PhantomTruth> generate_phantom(const PhantomSpec& spec, Rng& rng);

} // namespace lus
