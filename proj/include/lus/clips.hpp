#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "lus/image.hpp"
#include "lus/rng.hpp"

namespace lus {

struct SampleSpec {
    int n_segments = 18;
    int target_size = 224;
    double flip_prob = 0.5;
    double scale_lo = 0.8;
    double scale_hi = 1.1;
    std::uint64_t seed = 0;

    void validate() const;
};

struct DatasetEntry {
    std::string clip_id; // path or identifier of the clip
    SeverityScore score;
    std::string patient_id;
    std::string split; // "train" or "test"
};

struct DatasetIndex {
    std::vector<DatasetEntry> entries;

    std::map<int, std::size_t> class_counts() const;
};

// Deterministic core of the temporal sampling: the clip is divided into
// n_segments equal segments and index_i = floor(i * clip_len / n_segments)
// + offset picks one frame per segment. Clips shorter than n_segments wrap
// around (sorted, so indices stay non-decreasing).
std::vector<int> frame_indices_with_offset(int clip_len, int n_segments, int offset);

// Randomized sampling: one shared offset drawn uniformly from
// [0, floor(clip_len / n_segments)).
std::vector<int> sample_frame_indices(int clip_len, const SampleSpec& spec, Rng& rng);

// One flip decision and one intensity scale per clip, applied identically to
// every frame; intensities clamp to [0, 255]. Draw order: flip, then scale.
Clip augment_clip(const Clip& clip, const SampleSpec& spec, Rng& rng);

// Replicate each minority class cyclically up to the majority count; the
// remainder is drawn without replacement. The result is shuffled. Every
// original entry appears at least once. Returns indices into index.entries.
std::vector<std::size_t> upsample_dataset(const DatasetIndex& index, Rng& rng);

// Resize to the training input resolution.
Frame preprocess_frame(const Frame& frame, const SampleSpec& spec);

} // namespace lus
