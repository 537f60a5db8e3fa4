#pragma once

#include <array>
#include <filesystem>
#include <iosfwd>
#include <string>

#include "semcomm/cspace.hpp"
#include "semcomm/random.hpp"

namespace semcomm::scenegen {

inline constexpr int kFrame = 25;
inline constexpr int kPixels = kFrame * kFrame;
inline constexpr double kFrameCenter = 12.0;  // pixel (i, j) has center (x = j, y = i)

struct Rgb {
    double r = 0.0;
    double g = 0.0;
    double b = 0.0;
    friend bool operator==(const Rgb&, const Rgb&) = default;
};

struct Hsv {
    double h = 0.0;
    double s = 0.0;
    double v = 0.0;
};

Rgb hsv_to_rgb(const Hsv& hsv);
Hsv rgb_to_hsv(const Rgb& rgb);

// 25x25 RGB raster, row-major, channels in [0, 1].
struct Image {
    std::array<Rgb, kPixels> pixels{};

    const Rgb& at(int row, int col) const { return pixels[row * kFrame + col]; }
    Rgb& at(int row, int col) { return pixels[row * kFrame + col]; }

    friend bool operator==(const Image&, const Image&) = default;
};

struct SceneSpec {
    std::string concept_label;
    Hsv fill;
    int n_sides = cspace::kCircle;
    double circumradius = 8.0;
    double rotation = 0.0;
    double cx = kFrameCenter;
    double cy = kFrameCenter;
    double pixel_noise_sigma = 0.02;
    double background_value = 0.5;
};

inline constexpr double kHueJitter = 0.03;
inline constexpr double kMinRadius = 6.0;
inline constexpr double kMaxRadius = 11.0;
inline constexpr double kMaxCenterOffset = 2.0;

// Shape and canonical fill hue implied by a standard concept label.
struct Appearance {
    int n_sides;
    double hue;
};
Appearance appearance_of(const std::string& label);

SceneSpec sample_spec(const cspace::Concept& target, RandomStream& rng);

// Pixel centers on the boundary count as inside.
bool point_in_shape(double x, double y, const SceneSpec& spec);

// Noise draws come from `rng`; with pixel_noise_sigma == 0 the stream is untouched.
Image render(const SceneSpec& spec, RandomStream& rng);

// Binary PPM (P6, maxval 255).
void write_ppm(std::ostream& os, const Image& img);
void write_ppm(const std::filesystem::path& path, const Image& img);
Image read_ppm(std::istream& is);
Image read_ppm(const std::filesystem::path& path);

}  // namespace semcomm::scenegen
