#include "semcomm/funcomp.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <istream>
#include <map>
#include <ostream>
#include <queue>
#include <set>
#include <sstream>

#include "semcomm/error.hpp"
#include "semcomm/harness.hpp"

namespace semcomm::funcomp {

void FiniteFunction::validate() const {
    if (domain.empty()) throw InvalidParameter("function domain is empty");
    if (output.size() != domain.size()) throw InvalidParameter("function mapping is not total");
    if (!probability.empty() && probability.size() != domain.size()) {
        throw InvalidParameter("one probability per element is required");
    }
    std::set<std::string> seen;
    for (const auto& e : domain) {
        if (!seen.insert(e).second) throw InvalidParameter("duplicate domain element: " + e);
    }
    if (probability.empty()) return;
    double sum = 0.0;
    for (double p : probability) {
        if (!(p >= 0.0)) throw InvalidParameter("probabilities must be nonnegative");
        sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-9) throw InvalidParameter("probabilities must sum to 1");
}

double FiniteFunction::prob(std::size_t i) const {
    return probability.empty() ? 1.0 / domain.size() : probability[i];
}

FiniteFunction FiniteFunction::uniform(std::vector<std::string> domain,
                                       std::vector<std::string> output) {
    return {std::move(domain), std::move(output), {}};
}

namespace {

std::string trim(std::string s) {
    const auto ws = " \t\r\n";
    s.erase(0, s.find_first_not_of(ws));
    s.erase(s.find_last_not_of(ws) + 1);
    return s;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(trim(cell));
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
}

}  // namespace

FiniteFunction read_function_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw InvalidParameter("function CSV is empty");
    const auto header = split_csv(line);
    if (header.size() < 2 || header[0] != "element" || header[1] != "output" ||
        (header.size() > 2 && header[2] != "probability")) {
        throw InvalidParameter("function CSV header must be element,output,probability");
    }
    FiniteFunction f;
    std::vector<std::string> probs;
    while (std::getline(is, line)) {
        if (trim(line).empty()) continue;
        auto cells = split_csv(line);
        if (cells.size() < 2 || cells.size() > 3) {
            throw InvalidParameter("malformed function CSV row: " + line);
        }
        f.domain.push_back(cells[0]);
        f.output.push_back(cells[1]);
        probs.push_back(cells.size() == 3 ? cells[2] : "");
    }
    const auto blank = std::ranges::count(probs, std::string{});
    if (blank != 0 && blank != static_cast<std::ptrdiff_t>(probs.size())) {
        throw InvalidParameter("probability column must be filled on every row or on none");
    }
    if (blank == 0) {
        for (const auto& p : probs) {
            try {
                std::size_t used = 0;
                f.probability.push_back(std::stod(p, &used));
                if (used != p.size()) throw std::invalid_argument(p);
            } catch (const std::logic_error&) {
                throw InvalidParameter("bad probability: " + p);
            }
        }
    }
    f.validate();
    return f;
}

Partition equivalence_classes(const FiniteFunction& f) {
    f.validate();
    Partition classes;
    std::map<std::string, std::size_t> slot;
    for (std::size_t i = 0; i < f.domain.size(); ++i) {
        auto [it, fresh] = slot.try_emplace(f.output[i], classes.size());
        if (fresh) classes.emplace_back();
        classes[it->second].push_back(f.domain[i]);
    }
    return classes;
}

int min_bits(const Partition& p) {
    int bits = 0;
    while ((std::size_t{1} << bits) < p.size()) ++bits;
    return bits;
}

double optimal_code_length(std::vector<double> probabilities) {
    std::erase_if(probabilities, [](double p) { return p <= 0.0; });
    if (probabilities.size() <= 1) return 0.0;
    // Every merge adds one bit to all symbols beneath it, so the expected
    // length is the sum of the merged weights.
    std::priority_queue<double, std::vector<double>, std::greater<>> heap(
        probabilities.begin(), probabilities.end());
    double total = 0.0;
    while (heap.size() > 1) {
        const double a = heap.top();
        heap.pop();
        const double b = heap.top();
        heap.pop();
        total += a + b;
        heap.push(a + b);
    }
    return total;
}

double expected_code_length(const FiniteFunction& f) {
    f.validate();
    std::map<std::string, double> mass;
    std::vector<std::string> order;
    for (std::size_t i = 0; i < f.domain.size(); ++i) {
        if (!mass.contains(f.output[i])) order.push_back(f.output[i]);
        mass[f.output[i]] += f.prob(i);
    }
    std::vector<double> probs;
    for (const auto& o : order) probs.push_back(mass[o]);
    return optimal_code_length(std::move(probs));
}

RateSearchResult semantic_rate_search(const RateSearchConfig& cfg) {
    if (!(cfg.tau > 0.0)) throw InvalidParameter("tau must be positive");
    if (cfg.trials < kMinSearchTrials) {
        throw InvalidParameter("rate search needs at least 1000 trials per point");
    }
    RateSearchResult result;
    for (int n_b = phy::kMinBits; n_b <= phy::kMaxBits; ++n_b) {
        const auto records = harness::run_trials(cfg.trials, cfg.workers, [&](std::size_t i) {
            return harness::run_indexed_trial(harness::System::Semantic, n_b, cfg.channel, cfg.seed, i);
        });
        const auto pt = harness::aggregate(cfg.channel.snr_db, records);
        RatePoint rp{n_b, pt.distortion.value, pt.distortion.se, pt.distortion.value <= cfg.tau};
        if (rp.feasible && !result.n_b_star) result.n_b_star = n_b;
        result.points.push_back(rp);
    }
    return result;
}

void write_rate_search_csv(std::ostream& os, const RateSearchResult& result) {
    os << "nb,mean_distortion,stderr,feasible\n";
    char buf[96];
    for (const auto& p : result.points) {
        std::snprintf(buf, sizeof buf, "%d,%.8f,%.8f,%d\n", p.n_b, p.mean_distortion, p.standard_error,
                      p.feasible ? 1 : 0);
        os << buf;
    }
}

}  // namespace semcomm::funcomp
