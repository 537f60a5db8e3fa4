#pragma once

#include <cstddef>

#include "semcomm/cspace.hpp"
#include "semcomm/phy.hpp"
#include "semcomm/scenegen.hpp"

namespace semcomm::baseline {

inline constexpr std::size_t kValuesPerImage = scenegen::kPixels * 3;  // 1875

// Raw pixel raster, row-major, channels R, G, B, each n_b bits MSB first.
struct PixelPacket {
    std::vector<std::uint8_t> bits;

    std::size_t size() const { return bits.size(); }
    friend bool operator==(const PixelPacket&, const PixelPacket&) = default;
};

PixelPacket pixel_quantize(const scenegen::Image& img, int n_b);
scenegen::Image pixel_dequantize(const PixelPacket& packet, int n_b);

struct Classification {
    const cspace::Concept* decoded = nullptr;
    cspace::SemanticPoint point;  // encoder output; meaningless on failure
    bool classifier_failure = false;
};

// encode -> decode_concept. Encoder errors are reported through
// classifier_failure with the lexicographically first concept.
Classification classify_received(const scenegen::Image& img);

std::size_t semantic_rate_bits(int n_b);
std::size_t traditional_rate_bits(int n_b);

// 1 - semantic / traditional rate; independent of n_b.
double rate_reduction();

}  // namespace semcomm::baseline
