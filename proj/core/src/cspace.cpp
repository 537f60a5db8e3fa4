#include "semcomm/cspace.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>

#include "semcomm/error.hpp"

namespace semcomm::cspace {

const std::vector<QualityDimension>& standard_dimensions() {
    using K = QualityDimension::Kind;
    static const std::vector<QualityDimension> dims{
        {"ratio", K::Linear, 1.0, 2.5, 0.25},
        {"hue", K::Circular, 0.0, 1.0, 0.25},
        {"saturation", K::Linear, 0.0, 1.0, 0.25},
        {"brightness", K::Linear, 0.0, 1.0, 0.25},
    };
    return dims;
}

double SemanticPoint::operator[](std::size_t i) const {
    switch (i) {
        case 0: return r;
        case 1: return h;
        case 2: return s;
        case 3: return b;
    }
    throw InvalidParameter("SemanticPoint index out of range: " + std::to_string(i));
}

double& SemanticPoint::operator[](std::size_t i) {
    switch (i) {
        case 0: return r;
        case 1: return h;
        case 2: return s;
        case 3: return b;
    }
    throw InvalidParameter("SemanticPoint index out of range: " + std::to_string(i));
}

bool SemanticPoint::valid() const {
    return std::isfinite(r) && std::isfinite(h) && std::isfinite(s) && std::isfinite(b) &&
           r >= 1.0 && h >= 0.0 && h < 1.0 && s >= 0.0 && s <= 1.0 && b >= 0.0 && b <= 1.0;
}

std::ostream& operator<<(std::ostream& os, const SemanticPoint& p) {
    return os << '[' << p.r << ' ' << p.h << ' ' << p.s << ' ' << p.b << ']';
}

namespace {

constexpr double kBrightness = 0.9714;

ConceptSet make_standard_concepts() {
    ConceptSet set{
        {"blue-circle", {polygon_ratio(kCircle), 2.0 / 3.0, 1.0, kBrightness}},
        {"red-circle", {polygon_ratio(kCircle), 0.0, 1.0, kBrightness}},
        {"red-octagon", {polygon_ratio(8), 0.0, 1.0, kBrightness}},
        {"red-triangle", {polygon_ratio(3), 0.0, 1.0, kBrightness}},
        {"yellow-square", {polygon_ratio(4), 1.0 / 6.0, 1.0, kBrightness}},
    };
    std::ranges::sort(set, {}, &Concept::label);
    return set;
}

}  // namespace

const ConceptSet& standard_concepts() {
    static const ConceptSet set = make_standard_concepts();
    return set;
}

const Concept& find_concept(std::string_view label) {
    for (const auto& c : standard_concepts()) {
        if (c.label == label) return c;
    }
    throw InvalidParameter("unknown concept: " + std::string(label));
}

double wrap_unit(double x) {
    double w = x - std::floor(x);
    // x slightly below an integer can round up to exactly 1.0
    return w >= 1.0 ? 0.0 : w;
}

double circular_distance(double h1, double h2) {
    // |.| first so the result is bitwise symmetric in its arguments
    const double d = wrap_unit(std::abs(wrap_unit(h1) - wrap_unit(h2)));
    return std::min(d, 1.0 - d);
}

double gamma(double h1, double h2, double rho) {
    if (!(rho > 0.0)) throw InvalidParameter("gamma: rho must be positive");
    const double d1 = wrap_unit(std::abs(wrap_unit(h1) - wrap_unit(h2)));
    const double d2 = 1.0 - d1;
    // log-sum-exp around the smaller exponent keeps large rho finite
    const double lo = std::min(d1, d2);
    const double hi = std::max(d1, d2);
    return lo - std::log(0.5 + 0.5 * std::exp(-rho * (hi - lo))) / rho;
}

double semantic_loss(const SemanticPoint& p, const SemanticPoint& q, double rho, bool smooth) {
    const double dh = smooth ? gamma(p.h, q.h, rho) : circular_distance(p.h, q.h);
    const double dr = p.r - q.r;
    const double ds = p.s - q.s;
    const double db = p.b - q.b;
    return 0.25 * (dr * dr + dh * dh + ds * ds + db * db);
}

double semantic_metric(const SemanticPoint& p, const SemanticPoint& q) {
    return std::sqrt(semantic_loss(p, q, kDefaultRho, false));
}

const Concept& decode_concept(const SemanticPoint& p_hat, std::span<const Concept> concepts) {
    if (concepts.empty()) throw InvalidParameter("decode_concept: empty concept set");
    const Concept* best = &concepts.front();
    double best_d = semantic_metric(best->prototype, p_hat);
    for (const auto& c : concepts.subspan(1)) {
        const double d = semantic_metric(c.prototype, p_hat);
        if (d < best_d || (d == best_d && c.label < best->label)) {
            best = &c;
            best_d = d;
        }
    }
    return *best;
}

double polygon_ratio(int n_sides) {
    if (n_sides == kCircle) return 1.0;
    if (n_sides < 3) throw InvalidParameter("polygon_ratio: need at least 3 sides");
    return 1.0 / std::cos(std::numbers::pi / n_sides);
}

bool distortion_bound_holds(const SemanticPoint& p_star, const SemanticPoint& p,
                            const SemanticPoint& p_hat) {
    const double lhs = semantic_metric(p_star, p_hat);
    const double rhs = semantic_metric(p_star, p) + semantic_metric(p, p_hat);
    return lhs <= rhs + 1e-12;
}

void write_prototypes_csv(std::ostream& os, std::span<const Concept> concepts) {
    os << "label,r,h,s,b\n";
    char buf[128];
    for (const auto& c : concepts) {
        const auto& p = c.prototype;
        std::snprintf(buf, sizeof buf, "%.6f,%.6f,%.6f,%.6f", p.r, p.h, p.s, p.b);
        os << c.label << ',' << buf << '\n';
    }
}

}  // namespace semcomm::cspace
