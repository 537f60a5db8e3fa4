#include "semcomm/scenegen.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <istream>
#include <numbers>
#include <ostream>
#include <utility>
#include <vector>

#include "semcomm/error.hpp"

namespace semcomm::scenegen {

namespace {

double clamp01(double x) { return std::clamp(x, 0.0, 1.0); }

}  // namespace

Rgb hsv_to_rgb(const Hsv& in) {
    const double h = cspace::wrap_unit(in.h) * 6.0;
    const double s = clamp01(in.s);
    const double v = clamp01(in.v);
    const int sector = std::min(static_cast<int>(h), 5);
    const double f = h - sector;
    const double p = v * (1.0 - s);
    const double q = v * (1.0 - s * f);
    const double t = v * (1.0 - s * (1.0 - f));
    switch (sector) {
        case 0: return {v, t, p};
        case 1: return {q, v, p};
        case 2: return {p, v, t};
        case 3: return {p, q, v};
        case 4: return {t, p, v};
        default: return {v, p, q};
    }
}

Hsv rgb_to_hsv(const Rgb& in) {
    const double r = clamp01(in.r);
    const double g = clamp01(in.g);
    const double b = clamp01(in.b);
    const double mx = std::max({r, g, b});
    const double mn = std::min({r, g, b});
    const double chroma = mx - mn;
    Hsv out{0.0, 0.0, mx};
    if (mx > 0.0) out.s = chroma / mx;
    if (chroma > 0.0) {
        double h;
        if (mx == r) {
            h = (g - b) / chroma;
        } else if (mx == g) {
            h = (b - r) / chroma + 2.0;
        } else {
            h = (r - g) / chroma + 4.0;
        }
        out.h = cspace::wrap_unit(h / 6.0);
    }
    return out;
}

Appearance appearance_of(const std::string& label) {
    const auto& c = cspace::find_concept(label);
    int sides = cspace::kCircle;
    if (label.ends_with("-triangle")) {
        sides = 3;
    } else if (label.ends_with("-square")) {
        sides = 4;
    } else if (label.ends_with("-octagon")) {
        sides = 8;
    }
    return {sides, c.prototype.h};
}

SceneSpec sample_spec(const cspace::Concept& target, RandomStream& rng) {
    const auto look = appearance_of(target.label);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    auto uniform = [&](double lo, double hi) { return lo + (hi - lo) * unit(rng); };

    SceneSpec spec;
    spec.concept_label = target.label;
    spec.n_sides = look.n_sides;
    spec.fill.h = cspace::wrap_unit(look.hue + uniform(-kHueJitter, kHueJitter));
    spec.fill.s = uniform(0.9, 1.0);
    spec.fill.v = uniform(0.93, 1.0);
    spec.rotation = uniform(0.0, 2.0 * std::numbers::pi);
    spec.circumradius = uniform(kMinRadius, kMaxRadius);
    // the outermost pixel center is 12 px from the frame center
    const double max_offset = std::min(kMaxCenterOffset, kFrameCenter - spec.circumradius);
    spec.cx = kFrameCenter + uniform(-max_offset, max_offset);
    spec.cy = kFrameCenter + uniform(-max_offset, max_offset);
    spec.pixel_noise_sigma = 0.02;
    spec.background_value = 0.5;
    return spec;
}

namespace {

// Half-plane normals computed once per shape instead of once per pixel.
class ShapeTest {
public:
    explicit ShapeTest(const SceneSpec& spec) : spec_(spec) {
        if (spec.n_sides == cspace::kCircle) return;
        const int n = spec.n_sides;
        apothem_ = spec.circumradius * std::cos(std::numbers::pi / n);
        for (int k = 0; k < n; ++k) {
            const double normal = spec.rotation + std::numbers::pi * (2 * k + 1) / n;
            normals_.push_back({std::cos(normal), std::sin(normal)});
        }
    }

    bool contains(double x, double y) const {
        constexpr double kEps = 1e-9;
        const double dx = x - spec_.cx;
        const double dy = y - spec_.cy;
        if (spec_.n_sides == cspace::kCircle) return std::hypot(dx, dy) <= spec_.circumradius + kEps;
        for (const auto& [c, s] : normals_) {
            if (dx * c + dy * s > apothem_ + kEps) return false;
        }
        return true;
    }

private:
    const SceneSpec& spec_;
    double apothem_ = 0.0;
    std::vector<std::pair<double, double>> normals_;
};

}  // namespace

bool point_in_shape(double x, double y, const SceneSpec& spec) {
    if (spec.n_sides != cspace::kCircle && spec.n_sides < 3)
        throw InvalidParameter("point_in_shape: need at least 3 sides");
    return ShapeTest(spec).contains(x, y);
}

Image render(const SceneSpec& spec, RandomStream& rng) {
    const Rgb fill = hsv_to_rgb(spec.fill);
    const Rgb gray{spec.background_value, spec.background_value, spec.background_value};
    std::normal_distribution<double> noise(0.0, spec.pixel_noise_sigma);
    const bool noisy = spec.pixel_noise_sigma > 0.0;

    const ShapeTest shape(spec);
    Image img;
    for (int row = 0; row < kFrame; ++row) {
        for (int col = 0; col < kFrame; ++col) {
            Rgb px = shape.contains(col, row) ? fill : gray;
            if (noisy) {
                px.r = clamp01(px.r + noise(rng));
                px.g = clamp01(px.g + noise(rng));
                px.b = clamp01(px.b + noise(rng));
            }
            img.at(row, col) = px;
        }
    }
    return img;
}

void write_ppm(std::ostream& os, const Image& img) {
    os << "P6\n" << kFrame << ' ' << kFrame << "\n255\n";
    auto byte = [](double v) { return static_cast<char>(std::lround(clamp01(v) * 255.0)); };
    for (const auto& px : img.pixels) {
        const char rgb[3] = {byte(px.r), byte(px.g), byte(px.b)};
        os.write(rgb, 3);
    }
}

void write_ppm(const std::filesystem::path& path, const Image& img) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path.string());
    write_ppm(out, img);
    if (!out) throw IoError("write failed: " + path.string());
}

namespace {

void skip_ws_and_comments(std::istream& is) {
    while (is) {
        const int c = is.peek();
        if (c == '#') {
            std::string line;
            std::getline(is, line);
        } else if (std::isspace(c)) {
            is.get();
        } else {
            break;
        }
    }
}

}  // namespace

Image read_ppm(std::istream& is) {
    std::string magic;
    is >> magic;
    if (magic != "P6") throw IoError("not a binary PPM (P6)");
    int w = 0, h = 0, maxval = 0;
    skip_ws_and_comments(is);
    is >> w;
    skip_ws_and_comments(is);
    is >> h;
    skip_ws_and_comments(is);
    is >> maxval;
    if (!is || w != kFrame || h != kFrame) throw IoError("PPM must be 25x25");
    if (maxval <= 0 || maxval > 255) throw IoError("unsupported PPM maxval");
    is.get();  // single whitespace before raster

    Image img;
    for (auto& px : img.pixels) {
        unsigned char rgb[3];
        if (!is.read(reinterpret_cast<char*>(rgb), 3)) throw IoError("truncated PPM raster");
        px = {rgb[0] / double(maxval), rgb[1] / double(maxval), rgb[2] / double(maxval)};
    }
    return img;
}

Image read_ppm(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open for reading: " + path.string());
    return read_ppm(in);
}

}  // namespace semcomm::scenegen
