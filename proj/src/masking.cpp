#include "lus/masking.hpp"

#include <algorithm>
#include <array>

namespace lus {

std::string variant_name(Variant v) {
    switch (v) {
    case Variant::Original: return "original";
    case Variant::Subq: return "subq";
    case Variant::Pleural: return "pleural";
    case Variant::Merlin: return "merlin";
    case Variant::SubqPleural: return "subq+pleural";
    case Variant::PleuralMerlin: return "pleural+merlin";
    case Variant::StraightenedPleuralMerlin: return "straightened-pleural+merlin";
    }
    raise(Errc::InvalidArgument, "unknown variant");
}

Variant variant_from_name(const std::string& name) {
    for (Variant v : kAllVariants)
        if (variant_name(v) == name)
            return v;
    raise(Errc::InvalidArgument, "unknown variant name: " + name);
}

namespace {

std::array<bool, 3> included_regions(Variant v) {
    // indexed by Region: {subq, pleura, merlin}
    switch (v) {
    case Variant::Original: return {true, true, true};
    case Variant::Subq: return {true, false, false};
    case Variant::Pleural: return {false, true, false};
    case Variant::Merlin: return {false, false, true};
    case Variant::SubqPleural: return {true, true, false};
    case Variant::PleuralMerlin: return {false, true, true};
    case Variant::StraightenedPleuralMerlin: return {false, true, true};
    }
    raise(Errc::InvalidArgument, "unknown variant");
}

} // namespace

RegionMask region_partition_rows(int width, int height, const std::vector<int>& upper_rows,
                                 const std::vector<int>& lower_rows) {
    if (static_cast<int>(upper_rows.size()) != width || static_cast<int>(lower_rows.size()) != width)
        raise(Errc::DimensionMismatch, "boundary rows must cover every column");
    RegionMask rm{width, height,
                  std::vector<Region>(static_cast<std::size_t>(width) * height, Region::Merlin)};
    for (int x = 0; x < width; ++x) {
        const int lo = lower_rows[static_cast<std::size_t>(x)];
        const int up = std::min(upper_rows[static_cast<std::size_t>(x)], lo);
        for (int y = 0; y < height; ++y) {
            Region r = Region::Pleura;
            if (y < up)
                r = Region::Subq;
            else if (y > lo)
                r = Region::Merlin;
            rm.labels[static_cast<std::size_t>(y) * width + x] = r;
        }
    }
    return rm;
}

RegionMask region_partition(int width, int height, const PleuralSegmentation& seg) {
    if (width != seg.width || height != seg.height)
        raise(Errc::DimensionMismatch, "segmentation does not match frame dimensions");
    return region_partition_rows(width, height, seg.upper_rows(), seg.lower_rows());
}

Frame apply_variant(const Frame& frame, const RegionMask& mask, Variant v, const MaskParams& mp) {
    if (frame.width() != mask.width || frame.height() != mask.height)
        raise(Errc::DimensionMismatch, "frame and region mask dimensions differ");
    const std::array<bool, 3> keep = included_regions(v);
    Frame out = Frame::zeros(frame.width(), frame.height());
    for (int x = 0; x < frame.width(); ++x) {
        for (int y = 0; y < frame.height(); ++y) {
            bool included = keep[static_cast<std::size_t>(mask.at(x, y))];
            for (int d = 1; !included && d <= mp.context_margin; ++d) {
                if (y - d >= 0 && keep[static_cast<std::size_t>(mask.at(x, y - d))])
                    included = true;
                if (y + d < frame.height() && keep[static_cast<std::size_t>(mask.at(x, y + d))])
                    included = true;
            }
            if (included)
                out.at(x, y) = frame.at(x, y);
        }
    }
    return out;
}

Frame straightened_pleural_merlin(const Frame& frame, const PleuralSegmentation& seg,
                                  const StraightenParams& sp, const MaskParams& mp) {
    const std::vector<int> upper = seg.upper_rows();
    const std::vector<int> lower = seg.lower_rows();
    const Frame cropped = crop_above(frame, upper, sp.crop_margin, sp.fill_value);
    auto [shifted_frame, shifted_upper] = straighten(cropped, seg.upper, sp);
    (void)shifted_upper;

    // After the shift the boundaries are horizontal: the upper edge sits at
    // target_row, the lower edge at target_row plus the column's thickness.
    std::vector<int> new_upper(static_cast<std::size_t>(frame.width()), sp.target_row);
    std::vector<int> new_lower(static_cast<std::size_t>(frame.width()));
    for (int x = 0; x < frame.width(); ++x) {
        const int thickness = lower[static_cast<std::size_t>(x)] - upper[static_cast<std::size_t>(x)];
        new_lower[static_cast<std::size_t>(x)] = sp.target_row + std::max(0, thickness);
    }
    const RegionMask mask =
        region_partition_rows(frame.width(), frame.height(), new_upper, new_lower);
    return apply_variant(shifted_frame, mask, Variant::StraightenedPleuralMerlin, mp);
}

std::map<Variant, Frame> make_all_variants(const Frame& frame, const PleuralSegmentation& seg,
                                           const StraightenParams& sp, const MaskParams& mp) {
    const RegionMask mask = region_partition(frame.width(), frame.height(), seg);
    std::map<Variant, Frame> out;
    for (Variant v : {Variant::Original, Variant::Subq, Variant::Pleural, Variant::Merlin,
                      Variant::SubqPleural, Variant::PleuralMerlin})
        out.emplace(v, apply_variant(frame, mask, v, mp));
    out.emplace(Variant::StraightenedPleuralMerlin, straightened_pleural_merlin(frame, seg, sp, mp));
    return out;
}

} // namespace lus
