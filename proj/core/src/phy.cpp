#include "semcomm/phy.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "semcomm/error.hpp"

namespace semcomm::phy {

void QuantizerSpec::validate() const {
    if (n_b < kMinBits || n_b > kMaxBits) {
        throw InvalidParameter("n_b must be in [1, 16], got " + std::to_string(n_b));
    }
}

namespace {

struct Range {
    double lo;
    double hi;
};

Range range_of(std::size_t dim) {
    return dim == 0 ? Range{QuantizerSpec::kRatioLo, QuantizerSpec::kRatioHi} : Range{0.0, 1.0};
}

constexpr std::size_t kHue = 1;

}  // namespace

double QuantizerSpec::width(std::size_t dim) const {
    const auto [lo, hi] = range_of(dim);
    return (hi - lo) / levels();
}

Indices quantize(const cspace::SemanticPoint& p, const QuantizerSpec& spec) {
    spec.validate();
    const auto top = static_cast<double>(spec.levels() - 1);
    Indices idx{};
    for (std::size_t d = 0; d < idx.size(); ++d) {
        const auto [lo, hi] = range_of(d);
        double v = p[d];
        if (d == kHue) v = cspace::wrap_unit(v);
        const double cell = std::floor((v - lo) / spec.width(d));
        idx[d] = static_cast<std::uint32_t>(std::clamp(cell, 0.0, top));
    }
    return idx;
}

cspace::SemanticPoint dequantize(const Indices& idx, const QuantizerSpec& spec) {
    spec.validate();
    cspace::SemanticPoint p;
    for (std::size_t d = 0; d < idx.size(); ++d) {
        if (idx[d] >= spec.levels()) {
            throw MalformedPacket("quantizer index " + std::to_string(idx[d]) + " out of range");
        }
        p[d] = range_of(d).lo + (idx[d] + 0.5) * spec.width(d);
    }
    return p;
}

void append_bits(std::vector<std::uint8_t>& out, std::uint32_t value, int n_bits) {
    for (int k = n_bits - 1; k >= 0; --k) out.push_back((value >> k) & 1u);
}

std::uint32_t read_bits(std::span<const std::uint8_t> bits, std::size_t offset, int n_bits) {
    std::uint32_t v = 0;
    for (int k = 0; k < n_bits; ++k) v = (v << 1) | (bits[offset + k] & 1u);
    return v;
}

BitPacket pack(const Indices& idx, int n_b) {
    QuantizerSpec{n_b}.validate();
    BitPacket packet;
    packet.bits.reserve(idx.size() * n_b);
    for (auto v : idx) {
        if (v >= (1u << n_b)) throw MalformedPacket("index does not fit in n_b bits");
        append_bits(packet.bits, v, n_b);
    }
    return packet;
}

Indices unpack(const BitPacket& packet, int n_b) {
    QuantizerSpec{n_b}.validate();
    Indices idx{};
    if (packet.size() != idx.size() * static_cast<std::size_t>(n_b)) {
        throw MalformedPacket("packet has " + std::to_string(packet.size()) + " bits, expected " +
                              std::to_string(idx.size() * n_b));
    }
    for (std::size_t d = 0; d < idx.size(); ++d) idx[d] = read_bits(packet.bits, d * n_b, n_b);
    return idx;
}

std::vector<double> bpsk_modulate(std::span<const std::uint8_t> bits) {
    std::vector<double> symbols(bits.size());
    std::ranges::transform(bits, symbols.begin(), [](std::uint8_t b) { return b ? -1.0 : 1.0; });
    return symbols;
}

std::vector<std::uint8_t> bpsk_demodulate(std::span<const double> received,
                                          std::span<const double> gains) {
    if (received.size() != gains.size()) {
        throw InvalidParameter("bpsk_demodulate: received/gain length mismatch");
    }
    std::vector<std::uint8_t> bits(received.size());
    for (std::size_t i = 0; i < received.size(); ++i) {
        bits[i] = gains[i] * received[i] < 0.0 ? 1 : 0;
    }
    return bits;
}

double ChannelParams::noise_sigma() const {
    if (is_noiseless()) return 0.0;
    if (!std::isfinite(snr_db)) throw InvalidParameter("snr_db must be finite or +inf");
    const double es_n0 = std::pow(10.0, snr_db / 10.0);
    return std::sqrt(0.5 / es_n0);
}

ChannelOutput rayleigh_awgn(std::span<const double> symbols, const ChannelParams& params,
                            RandomStream& rng) {
    const double sigma = params.noise_sigma();
    std::exponential_distribution<double> power(1.0);
    std::normal_distribution<double> noise(0.0, 1.0);

    ChannelOutput out;
    out.received.resize(symbols.size());
    out.gains.resize(symbols.size());
    for (std::size_t i = 0; i < symbols.size(); ++i) {
        const double a = std::sqrt(power(rng));
        double y = a * symbols[i];
        if (sigma > 0.0) y += sigma * noise(rng);
        out.gains[i] = a;
        out.received[i] = y;
    }
    return out;
}

double analytic_ber(double snr_db) {
    const double g = std::pow(10.0, snr_db / 10.0);
    return 0.5 * (1.0 - std::sqrt(g / (1.0 + g)));
}

double analytic_packet_error(double snr_db, std::size_t n_bits) {
    return 1.0 - std::pow(1.0 - analytic_ber(snr_db), static_cast<double>(n_bits));
}

std::vector<std::uint8_t> transmit_bits(std::span<const std::uint8_t> bits,
                                        const ChannelParams& params, RandomStream& rng) {
    const auto symbols = bpsk_modulate(bits);
    const auto channel = rayleigh_awgn(symbols, params, rng);
    return bpsk_demodulate(channel.received, channel.gains);
}

BitPacket transmit_packet(const BitPacket& packet, const ChannelParams& params, RandomStream& rng) {
    return {transmit_bits(packet.bits, params, rng)};
}

std::size_t bit_errors(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b) {
    if (a.size() != b.size()) throw InvalidParameter("bit_errors: length mismatch");
    std::size_t n = 0;
    for (std::size_t i = 0; i < a.size(); ++i) n += (a[i] != b[i]);
    return n;
}

}  // namespace semcomm::phy
