#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "semcomm/phy.hpp"

namespace semcomm::funcomp {

// A function over a finite, labeled domain with a source distribution.
struct FiniteFunction {
    std::vector<std::string> domain;
    std::vector<std::string> output;      // output[i] = f(domain[i])
    std::vector<double> probability;      // empty means uniform

    // Throws InvalidParameter on size mismatch, duplicate elements, negative
    // probabilities or probabilities not summing to 1.
    void validate() const;
    double prob(std::size_t i) const;

    static FiniteFunction uniform(std::vector<std::string> domain, std::vector<std::string> output);
};

// Reads "element,output,probability" rows (header required). Leaving the
// probability column empty on every row selects the uniform distribution.
FiniteFunction read_function_csv(std::istream& is);

// Element sets, each in domain order; classes ordered by their first element.
using Partition = std::vector<std::vector<std::string>>;

Partition equivalence_classes(const FiniteFunction& f);

// ceil(log2(#classes)); a single class needs 0 bits.
int min_bits(const Partition& p);

// Expected length of an optimal prefix code (Huffman) over the class
// probabilities. A single class costs 0 bits.
double expected_code_length(const FiniteFunction& f);
double optimal_code_length(std::vector<double> probabilities);

struct RatePoint {
    int n_b = 0;
    double mean_distortion = 0.0;
    double standard_error = 0.0;
    bool feasible = false;
};

struct RateSearchResult {
    std::vector<RatePoint> points;   // n_b = 1..16
    std::optional<int> n_b_star;     // smallest feasible n_b
};

inline constexpr std::size_t kMinSearchTrials = 1000;

struct RateSearchConfig {
    double tau = 0.0;
    phy::ChannelParams channel = phy::ChannelParams::noiseless();
    std::size_t trials = 1000;
    std::uint64_t seed = 1;
    unsigned workers = 1;
};

// Sweeps n_b = 1..16 through the semantic pipeline and estimates
// E[semantic_loss(prototype, received point)] at each rate.
RateSearchResult semantic_rate_search(const RateSearchConfig& cfg);

void write_rate_search_csv(std::ostream& os, const RateSearchResult& result);

}  // namespace semcomm::funcomp
