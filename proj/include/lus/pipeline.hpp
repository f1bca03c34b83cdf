#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "lus/io.hpp"

namespace lus {

// Command implementations behind the `lus` CLI. They throw lus::Error;
// exit_code_for maps error kinds onto the documented process exit codes.
int exit_code_for(Errc code);

struct SegmentOptions {
    std::vector<std::filesystem::path> inputs;
    std::filesystem::path out_dir;
    std::optional<std::filesystem::path> config;
    bool overlay = false;
};
void run_segment(const SegmentOptions& opts);

struct MaskOptions {
    std::vector<std::filesystem::path> inputs;
    std::filesystem::path curves_dir;
    std::filesystem::path out_dir;
    std::string variant = "all"; // variant name or "all"
    std::optional<std::filesystem::path> config;
};
void run_mask(const MaskOptions& opts);

struct StraightenOptions {
    std::vector<std::filesystem::path> inputs;
    std::filesystem::path curves_dir;
    std::filesystem::path out_dir;
    std::optional<std::filesystem::path> config;
};
void run_straighten(const StraightenOptions& opts);

struct PipelineOptions {
    std::filesystem::path index_file;
    std::filesystem::path out_dir;
    std::uint64_t seed = 0;
    std::string variant = "all";
    std::optional<std::filesystem::path> config;
};
void run_pipeline(const PipelineOptions& opts);

struct MetricsOptions {
    std::filesystem::path scores_file;
    std::optional<std::filesystem::path> out_dir;
};
void run_metrics(const MetricsOptions& opts, std::ostream& out, std::ostream& diag);

struct PhantomOptions {
    std::filesystem::path spec_file;
    int count = 1;
    std::uint64_t seed = 0;
    std::filesystem::path out_dir;
};
void run_phantom(const PhantomOptions& opts);

} // namespace lus
