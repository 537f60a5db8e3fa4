#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace semcomm::cspace {

inline constexpr double kDefaultRho = 50.0;

struct QualityDimension {
    enum class Kind { Linear, Circular };

    std::string name;
    Kind kind = Kind::Linear;
    double lo = 0.0;  // circular dimensions always span [0, 1)
    double hi = 1.0;
    double weight = 0.25;
};

// The (shape, color) space: ratio r, then hue, saturation, brightness.
const std::vector<QualityDimension>& standard_dimensions();

struct SemanticPoint {
    double r = 1.0;  // max/min center-to-boundary distance, >= 1
    double h = 0.0;  // hue, circular on [0, 1)
    double s = 0.0;
    double b = 0.0;

    static constexpr std::size_t kDims = 4;

    double operator[](std::size_t i) const;
    double& operator[](std::size_t i);

    bool valid() const;

    friend bool operator==(const SemanticPoint&, const SemanticPoint&) = default;
};

std::ostream& operator<<(std::ostream& os, const SemanticPoint& p);

struct Concept {
    std::string label;
    SemanticPoint prototype;
};

using ConceptSet = std::vector<Concept>;

// The five traffic-sign concepts, sorted by label.
const ConceptSet& standard_concepts();

// Throws InvalidParameter for labels outside the standard set.
const Concept& find_concept(std::string_view label);

// Wraps into [0, 1).
double wrap_unit(double x);

double circular_distance(double h1, double h2);

// Smooth log-sum-exp approximation of circular_distance; exceeds it by at
// most ln(2)/rho.
double gamma(double h1, double h2, double rho);

// Mean of squared per-dimension differences. With smooth = false the hue term
// uses circular_distance, otherwise gamma(., ., rho).
double semantic_loss(const SemanticPoint& p, const SemanticPoint& q,
                     double rho = kDefaultRho, bool smooth = true);

// sqrt of the exact (non-smooth) loss; a true metric.
double semantic_metric(const SemanticPoint& p, const SemanticPoint& q);

// Minimum-distance decoder. Ties go to the lexicographically smaller label.
const Concept& decode_concept(const SemanticPoint& p_hat, std::span<const Concept> concepts);

// 1/cos(pi/n); n_sides == 0 denotes a circle (ratio 1).
inline constexpr int kCircle = 0;
double polygon_ratio(int n_sides);

bool distortion_bound_holds(const SemanticPoint& p_star, const SemanticPoint& p,
                            const SemanticPoint& p_hat);

// CSV with header label,r,h,s,b and six decimals.
void write_prototypes_csv(std::ostream& os, std::span<const Concept> concepts);

}  // namespace semcomm::cspace
