#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "lus/image.hpp"
#include "lus/pleura.hpp"
#include "lus/straighten.hpp"

namespace lus {

enum class Region : std::uint8_t { Subq = 0, Pleura = 1, Merlin = 2 };

// Total per-pixel partition. Within every column the SubQ rows come first,
// then the pleura band, then Merlin's space.
struct RegionMask {
    int width = 0;
    int height = 0;
    std::vector<Region> labels;

    Region at(int x, int y) const { return labels[static_cast<std::size_t>(y) * width + x]; }
};

enum class Variant {
    Original,
    Subq,
    Pleural,
    Merlin,
    SubqPleural,
    PleuralMerlin,
    StraightenedPleuralMerlin,
};

inline constexpr Variant kAllVariants[] = {
    Variant::Original,      Variant::Subq,          Variant::Pleural,
    Variant::Merlin,        Variant::SubqPleural,   Variant::PleuralMerlin,
    Variant::StraightenedPleuralMerlin,
};

std::string variant_name(Variant v);
Variant variant_from_name(const std::string& name);

// Optional vertical context strip retained around included regions; 0 masks
// excluded regions outright.
struct MaskParams {
    int context_margin = 0;
};

RegionMask region_partition(int width, int height, const PleuralSegmentation& seg);
RegionMask region_partition_rows(int width, int height, const std::vector<int>& upper_rows,
                                 const std::vector<int>& lower_rows);

// Zero out every pixel whose region is excluded by the variant. The
// straightened variant keeps the same {pleura, merlin} set; the caller
// supplies the straightened frame with its re-derived mask.
Frame apply_variant(const Frame& frame, const RegionMask& mask, Variant v,
                    const MaskParams& mp = {});

// All seven ablation inputs for one frame. The straightened entry is
// crop -> straighten -> re-partition (boundaries become horizontal lines at
// target_row and target_row + per-column band thickness) -> pleural+merlin.
std::map<Variant, Frame> make_all_variants(const Frame& frame, const PleuralSegmentation& seg,
                                           const StraightenParams& sp, const MaskParams& mp = {});

// The straightened pleural+merlin input on its own.
Frame straightened_pleural_merlin(const Frame& frame, const PleuralSegmentation& seg,
                                  const StraightenParams& sp, const MaskParams& mp = {});

} // namespace lus
