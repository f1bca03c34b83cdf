#include "lus/clips.hpp"

#include <algorithm>

#include "lus/imgops.hpp"

namespace lus {

void SampleSpec::validate() const {
    if (n_segments < 1)
        raise(Errc::InvalidArgument, "n_segments must be at least 1");
    if (target_size < 1)
        raise(Errc::InvalidArgument, "target_size must be at least 1");
    if (flip_prob < 0.0 || flip_prob > 1.0)
        raise(Errc::InvalidArgument, "flip_prob must lie in [0, 1]");
    if (scale_lo > scale_hi)
        raise(Errc::InvalidArgument, "scale range must satisfy lo <= hi");
}

std::map<int, std::size_t> DatasetIndex::class_counts() const {
    std::map<int, std::size_t> counts;
    for (const DatasetEntry& e : entries)
        ++counts[e.score.value()];
    return counts;
}

std::vector<int> frame_indices_with_offset(int clip_len, int n_segments, int offset) {
    if (clip_len < 1)
        raise(Errc::EmptyClip, "cannot sample frames from an empty clip");
    std::vector<int> indices;
    indices.reserve(static_cast<std::size_t>(n_segments));
    if (clip_len >= n_segments) {
        for (int i = 0; i < n_segments; ++i)
            indices.push_back(static_cast<int>(static_cast<std::int64_t>(i) * clip_len / n_segments) + offset);
    } else {
        for (int i = 0; i < n_segments; ++i)
            indices.push_back(i % clip_len);
        std::sort(indices.begin(), indices.end());
    }
    return indices;
}

std::vector<int> sample_frame_indices(int clip_len, const SampleSpec& spec, Rng& rng) {
    spec.validate();
    if (clip_len < 1)
        raise(Errc::EmptyClip, "cannot sample frames from an empty clip");
    int offset = 0;
    if (clip_len >= spec.n_segments) {
        const int choices = clip_len / spec.n_segments;
        offset = choices > 1 ? rng.uniform_int(choices) : 0;
    }
    return frame_indices_with_offset(clip_len, spec.n_segments, offset);
}

Clip augment_clip(const Clip& clip, const SampleSpec& spec, Rng& rng) {
    spec.validate();
    const bool flip = rng.bernoulli(spec.flip_prob);
    const double scale = rng.uniform(spec.scale_lo, spec.scale_hi);

    Clip out;
    out.frames.reserve(clip.frames.size());
    for (const Frame& f : clip.frames) {
        Frame g = Frame::zeros(f.width(), f.height());
        for (int y = 0; y < f.height(); ++y) {
            for (int x = 0; x < f.width(); ++x) {
                const int sx = flip ? f.width() - 1 - x : x;
                g.at(x, y) = std::clamp(f.at(sx, y) * scale, 0.0, 255.0);
            }
        }
        out.frames.push_back(std::move(g));
    }
    return out;
}

std::vector<std::size_t> upsample_dataset(const DatasetIndex& index, Rng& rng) {
    std::array<std::vector<std::size_t>, 4> by_class;
    for (std::size_t i = 0; i < index.entries.size(); ++i)
        by_class[static_cast<std::size_t>(index.entries[i].score.value())].push_back(i);
    std::size_t majority = 0;
    for (const auto& members : by_class) {
        if (members.empty())
            raise(Errc::MissingClass, "every severity class needs at least one entry");
        majority = std::max(majority, members.size());
    }

    std::vector<std::size_t> out;
    for (const auto& members : by_class) {
        const std::size_t cycles = majority / members.size();
        const std::size_t remainder = majority % members.size();
        for (std::size_t c = 0; c < cycles; ++c)
            out.insert(out.end(), members.begin(), members.end());
        if (remainder > 0) {
            std::vector<std::size_t> pool = members;
            for (std::size_t k = 0; k < remainder; ++k) {
                const std::size_t j = k + static_cast<std::size_t>(rng.uniform_int(static_cast<int>(pool.size() - k)));
                std::swap(pool[k], pool[j]);
                out.push_back(pool[k]);
            }
        }
    }
    // Fisher-Yates over the combined list.
    for (std::size_t i = out.size(); i > 1; --i) {
        const std::size_t j = static_cast<std::size_t>(rng.uniform_int(static_cast<int>(i)));
        std::swap(out[i - 1], out[j]);
    }
    return out;
}

Frame preprocess_frame(const Frame& frame, const SampleSpec& spec) {
    spec.validate();
    return resize_bilinear(frame, spec.target_size, spec.target_size);
}

} // namespace lus
