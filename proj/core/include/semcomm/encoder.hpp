#pragma once

#include <array>
#include <cstddef>

#include "semcomm/cspace.hpp"
#include "semcomm/scenegen.hpp"

namespace semcomm::encoder {

inline constexpr double kSaturationThreshold = 0.2;
inline constexpr int kMinForeground = 20;
inline constexpr int kSectors = 64;
inline constexpr int kMinSectors = 8;
// Raster bias corrections (px), calibrated on generator scenes: the outer
// radius is the farthest boundary pixel center less kOuterInset, the inner
// radius the nearest background pixel center less kInnerInset.
inline constexpr double kOuterInset = 0.15;
inline constexpr double kInnerInset = 0.35;

struct SegmentationMask {
    std::array<bool, scenegen::kPixels> fg{};

    bool at(int row, int col) const { return fg[row * scenegen::kFrame + col]; }
    bool& at(int row, int col) { return fg[row * scenegen::kFrame + col]; }
    int count() const;

    friend bool operator==(const SegmentationMask&, const SegmentationMask&) = default;
};

// Foreground = saturation above kSaturationThreshold. Throws DegenerateScene
// when fewer than kMinForeground pixels qualify.
SegmentationMask segment(const scenegen::Image& img);

// Largest 4-connected foreground component; ties go to the component found
// first in raster order.
SegmentationMask largest_component(const SegmentationMask& mask);

struct ColorEstimate {
    double h = 0.0;
    double s = 0.0;
    double b = 0.0;
};

// Circular mean hue, arithmetic mean saturation and value over the mask.
ColorEstimate estimate_color(const scenegen::Image& img, const SegmentationMask& mask);

// Ratio of the outer to the inner radius, both measured from the centroid of
// the largest 4-connected component; clamped to >= 1. Throws DegenerateShape when
// the boundary covers fewer than kMinSectors of kSectors angular sectors.
double estimate_shape_ratio(const SegmentationMask& mask);

cspace::SemanticPoint encode(const scenegen::Image& img);

}  // namespace semcomm::encoder
