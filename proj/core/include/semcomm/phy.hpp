#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "semcomm/cspace.hpp"
#include "semcomm/random.hpp"

namespace semcomm::phy {

inline constexpr int kMinBits = 1;
inline constexpr int kMaxBits = 16;

// Uniform mid-rise quantizer over the fixed ranges r in [1, 2.5],
// h in [0, 1) (wrapped), s and b in [0, 1].
struct QuantizerSpec {
    int n_b = 8;

    static constexpr double kRatioLo = 1.0;
    static constexpr double kRatioHi = 2.5;

    // Throws InvalidParameter unless kMinBits <= n_b <= kMaxBits.
    void validate() const;
    std::uint32_t levels() const { return 1u << n_b; }
    double width(std::size_t dim) const;
};

using Indices = std::array<std::uint32_t, cspace::SemanticPoint::kDims>;

struct BitPacket {
    std::vector<std::uint8_t> bits;  // one bit (0 or 1) per element

    std::size_t size() const { return bits.size(); }
    friend bool operator==(const BitPacket&, const BitPacket&) = default;
};

Indices quantize(const cspace::SemanticPoint& p, const QuantizerSpec& spec);

// Cell-center reconstruction; throws MalformedPacket for out-of-range indices.
cspace::SemanticPoint dequantize(const Indices& idx, const QuantizerSpec& spec);

// Dimension order (r, h, s, b), each index MSB first.
BitPacket pack(const Indices& idx, int n_b);
Indices unpack(const BitPacket& packet, int n_b);

// Appends `value` as `n_bits` bits, MSB first.
void append_bits(std::vector<std::uint8_t>& out, std::uint32_t value, int n_bits);
std::uint32_t read_bits(std::span<const std::uint8_t> bits, std::size_t offset, int n_bits);

// 0 -> +1, 1 -> -1.
std::vector<double> bpsk_modulate(std::span<const std::uint8_t> bits);

// Coherent detection with perfect CSI: sign of gain * received.
std::vector<std::uint8_t> bpsk_demodulate(std::span<const double> received,
                                          std::span<const double> gains);

// Average received SNR per symbol Es/N0 in dB; +infinity disables the noise.
struct ChannelParams {
    double snr_db = std::numeric_limits<double>::infinity();

    static ChannelParams noiseless() { return {}; }
    bool is_noiseless() const { return snr_db == std::numeric_limits<double>::infinity(); }
    // Per-dimension noise standard deviation of the real baseband model.
    double noise_sigma() const;
};

struct ChannelOutput {
    std::vector<double> received;
    std::vector<double> gains;
};

// y = a * x + n with a ~ Rayleigh(E[a^2] = 1) i.i.d. per symbol and
// n ~ N(0, 1 / (2 Es/N0)).
ChannelOutput rayleigh_awgn(std::span<const double> symbols, const ChannelParams& params,
                            RandomStream& rng);

// Closed-form BER of coherent BPSK over Rayleigh fading.
double analytic_ber(double snr_db);

// Probability that a packet of `n_bits` independent bits has any error.
double analytic_packet_error(double snr_db, std::size_t n_bits);

// modulate -> channel -> demodulate.
std::vector<std::uint8_t> transmit_bits(std::span<const std::uint8_t> bits,
                                        const ChannelParams& params, RandomStream& rng);
BitPacket transmit_packet(const BitPacket& packet, const ChannelParams& params, RandomStream& rng);

std::size_t bit_errors(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b);

}  // namespace semcomm::phy
