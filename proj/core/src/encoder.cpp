#include "semcomm/encoder.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "semcomm/error.hpp"

namespace semcomm::encoder {

using scenegen::kFrame;
using scenegen::kPixels;

int SegmentationMask::count() const {
    return static_cast<int>(std::ranges::count(fg, true));
}

SegmentationMask segment(const scenegen::Image& img) {
    SegmentationMask mask;
    for (int i = 0; i < kPixels; ++i) {
        mask.fg[i] = scenegen::rgb_to_hsv(img.pixels[i]).s > kSaturationThreshold;
    }
    if (mask.count() < kMinForeground) {
        throw DegenerateScene("segment: only " + std::to_string(mask.count()) +
                              " foreground pixels");
    }
    return mask;
}

SegmentationMask largest_component(const SegmentationMask& mask) {
    std::array<int, kPixels> label{};
    label.fill(-1);
    std::vector<int> stack;
    int best_label = -1;
    int best_size = 0;
    int next = 0;
    for (int seed = 0; seed < kPixels; ++seed) {
        if (!mask.fg[seed] || label[seed] >= 0) continue;
        int size = 0;
        label[seed] = next;
        stack.push_back(seed);
        while (!stack.empty()) {
            const int idx = stack.back();
            stack.pop_back();
            ++size;
            const int row = idx / kFrame;
            const int col = idx % kFrame;
            const int neighbors[4][2] = {{row - 1, col}, {row + 1, col}, {row, col - 1}, {row, col + 1}};
            for (const auto& [nr, nc] : neighbors) {
                if (nr < 0 || nr >= kFrame || nc < 0 || nc >= kFrame) continue;
                const int n = nr * kFrame + nc;
                if (mask.fg[n] && label[n] < 0) {
                    label[n] = next;
                    stack.push_back(n);
                }
            }
        }
        if (size > best_size) {
            best_size = size;
            best_label = next;
        }
        ++next;
    }
    SegmentationMask out;
    for (int i = 0; i < kPixels; ++i) out.fg[i] = best_label >= 0 && label[i] == best_label;
    return out;
}

ColorEstimate estimate_color(const scenegen::Image& img, const SegmentationMask& mask) {
    double sum_sin = 0.0, sum_cos = 0.0, sum_s = 0.0, sum_v = 0.0;
    int n = 0;
    for (int i = 0; i < kPixels; ++i) {
        if (!mask.fg[i]) continue;
        const auto hsv = scenegen::rgb_to_hsv(img.pixels[i]);
        const double angle = 2.0 * std::numbers::pi * hsv.h;
        sum_sin += std::sin(angle);
        sum_cos += std::cos(angle);
        sum_s += hsv.s;
        sum_v += hsv.v;
        ++n;
    }
    if (n == 0) throw DegenerateScene("estimate_color: empty mask");
    if (std::hypot(sum_sin, sum_cos) <= 1e-9 * n) {
        throw DegenerateHue("estimate_color: hues cancel, circular mean undefined");
    }
    ColorEstimate est;
    est.h = cspace::wrap_unit(std::atan2(sum_sin, sum_cos) / (2.0 * std::numbers::pi));
    est.s = sum_s / n;
    est.b = sum_v / n;
    return est;
}

double estimate_shape_ratio(const SegmentationMask& raw) {
    const SegmentationMask mask = largest_component(raw);

    double cx = 0.0, cy = 0.0;
    int n = 0;
    for (int row = 0; row < kFrame; ++row) {
        for (int col = 0; col < kFrame; ++col) {
            if (!mask.at(row, col)) continue;
            cx += col;
            cy += row;
            ++n;
        }
    }
    if (n == 0) throw DegenerateShape("estimate_shape_ratio: empty mask");
    cx /= n;
    cy /= n;

    auto is_boundary = [&](int row, int col) {
        if (row == 0 || col == 0 || row == kFrame - 1 || col == kFrame - 1) return true;
        return !mask.at(row - 1, col) || !mask.at(row + 1, col) || !mask.at(row, col - 1) ||
               !mask.at(row, col + 1);
    };
    auto sector_of = [](double dx, double dy) {
        const double turn = (std::atan2(dy, dx) + std::numbers::pi) / (2.0 * std::numbers::pi);
        return std::min(static_cast<int>(turn * kSectors), kSectors - 1);
    };

    std::array<bool, kSectors> hit{};
    double outer = 0.0;
    double inner = std::numeric_limits<double>::infinity();
    // rows/cols -1 and kFrame stand for the background outside the frame
    for (int row = -1; row <= kFrame; ++row) {
        for (int col = -1; col <= kFrame; ++col) {
            const bool inside_frame = row >= 0 && col >= 0 && row < kFrame && col < kFrame;
            const double dx = col - cx;
            const double dy = row - cy;
            const double dist = std::hypot(dx, dy);
            if (inside_frame && mask.at(row, col)) {
                if (!is_boundary(row, col)) continue;
                hit[sector_of(dx, dy)] = true;
                outer = std::max(outer, dist);
            } else {
                inner = std::min(inner, dist);
            }
        }
    }

    const auto nonempty = std::ranges::count(hit, true);
    if (nonempty < kMinSectors) {
        throw DegenerateShape("estimate_shape_ratio: only " + std::to_string(nonempty) +
                              " nonempty sectors");
    }
    const double lo = inner - kInnerInset;
    if (!(lo > 0.0)) return 1.0;
    return std::max(1.0, (outer - kOuterInset) / lo);
}

cspace::SemanticPoint encode(const scenegen::Image& img) {
    const SegmentationMask mask = segment(img);
    const ColorEstimate color = estimate_color(img, mask);
    return {estimate_shape_ratio(mask), color.h, color.s, color.b};
}

}  // namespace semcomm::encoder
