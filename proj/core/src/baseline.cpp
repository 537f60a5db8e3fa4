#include "semcomm/baseline.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "semcomm/encoder.hpp"
#include "semcomm/error.hpp"

namespace semcomm::baseline {

namespace {

std::uint32_t quantize_channel(double v, int n_b) {
    const std::uint32_t levels = 1u << n_b;
    const double cell = std::floor(std::clamp(v, 0.0, 1.0) * levels);
    return static_cast<std::uint32_t>(std::min(cell, static_cast<double>(levels - 1)));
}

double dequantize_channel(std::uint32_t idx, int n_b) {
    return (idx + 0.5) / static_cast<double>(1u << n_b);
}

}  // namespace

PixelPacket pixel_quantize(const scenegen::Image& img, int n_b) {
    phy::QuantizerSpec{n_b}.validate();
    PixelPacket packet;
    packet.bits.reserve(kValuesPerImage * n_b);
    for (const auto& px : img.pixels) {
        phy::append_bits(packet.bits, quantize_channel(px.r, n_b), n_b);
        phy::append_bits(packet.bits, quantize_channel(px.g, n_b), n_b);
        phy::append_bits(packet.bits, quantize_channel(px.b, n_b), n_b);
    }
    return packet;
}

scenegen::Image pixel_dequantize(const PixelPacket& packet, int n_b) {
    phy::QuantizerSpec{n_b}.validate();
    if (packet.size() != traditional_rate_bits(n_b)) {
        throw MalformedPacket("pixel packet has " + std::to_string(packet.size()) +
                              " bits, expected " + std::to_string(traditional_rate_bits(n_b)));
    }
    scenegen::Image img;
    std::size_t offset = 0;
    auto next = [&] {
        const double v = dequantize_channel(phy::read_bits(packet.bits, offset, n_b), n_b);
        offset += n_b;
        return v;
    };
    for (auto& px : img.pixels) {
        px.r = next();
        px.g = next();
        px.b = next();
    }
    return img;
}

Classification classify_received(const scenegen::Image& img) {
    const auto& concepts = cspace::standard_concepts();
    Classification out;
    try {
        out.point = encoder::encode(img);
        out.decoded = &cspace::decode_concept(out.point, concepts);
    } catch (const DegenerateScene&) {
        out.classifier_failure = true;
    } catch (const DegenerateHue&) {
        out.classifier_failure = true;
    } catch (const DegenerateShape&) {
        out.classifier_failure = true;
    }
    if (out.classifier_failure) out.decoded = &concepts.front();
    return out;
}

std::size_t semantic_rate_bits(int n_b) {
    phy::QuantizerSpec{n_b}.validate();
    return cspace::SemanticPoint::kDims * static_cast<std::size_t>(n_b);
}

std::size_t traditional_rate_bits(int n_b) {
    phy::QuantizerSpec{n_b}.validate();
    return kValuesPerImage * static_cast<std::size_t>(n_b);
}

double rate_reduction() {
    return 1.0 - static_cast<double>(cspace::SemanticPoint::kDims) / kValuesPerImage;
}

}  // namespace semcomm::baseline
