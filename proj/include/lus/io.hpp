#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "lus/clips.hpp"
#include "lus/image.hpp"
#include "lus/imgops.hpp"
#include "lus/metrics.hpp"
#include "lus/phantom.hpp"
#include "lus/pleura.hpp"
#include "lus/straighten.hpp"

namespace lus {

// 8-bit binary PGM (P5). Intensities clamp to [0, 255] and round on write;
// this is the only place values are quantized.
Frame read_pgm(const std::filesystem::path& path);
void write_pgm(const std::filesystem::path& path, const Frame& frame);
void write_pgm(const std::filesystem::path& path, const BinaryMask& mask);

// Clip on disk = directory of PGM frames, ordered by filename.
Clip read_clip_dir(const std::filesystem::path& dir);
void write_clip_dir(const std::filesystem::path& dir, const Clip& clip);

// Write-then-rename so partially written outputs never appear under their
// final name.
void atomic_write_text(const std::filesystem::path& path, const std::string& content);
void atomic_write_bytes(const std::filesystem::path& path, const std::string& content);

// Structured text records with fixed field order; doubles carry full
// precision so the files round-trip bit-exactly.
std::string format_segmentation(const PleuralSegmentation& seg, const SegmentationParams& params);
PleuralSegmentation parse_segmentation(const std::string& text);
PleuralSegmentation read_segmentation(const std::filesystem::path& path);

std::string format_truth(const PhantomTruth& truth);
PhantomTruth read_truth(const std::filesystem::path& path);

// Dataset index: one clip per line, `path score patient split`, `#` comments.
DatasetIndex read_index(const std::filesystem::path& path);
std::string format_index(const DatasetIndex& index);

// Phantom spec: `key value` lines.
PhantomSpec read_phantom_spec(const std::filesystem::path& path);
std::string format_phantom_spec(const PhantomSpec& spec);

// Scores CSV with header clip_id,true,score0,score1,score2,score3.
struct ScoresFile {
    std::vector<std::string> clip_ids;
    ScoredPredictions predictions;
};
ScoresFile read_scores_csv(const std::filesystem::path& path);

// Pipeline configuration: `key value` lines overlaying the defaults.
struct PipelineConfig {
    SegmentationParams seg;
    StraightenParams str;
    SampleSpec sample;
    MaskParams mask;

    static PipelineConfig from_file(const std::filesystem::path& path);
    void apply_line(const std::string& key, const std::string& value);
};

std::string format_double(double v); // shortest round-trip representation

} // namespace lus
