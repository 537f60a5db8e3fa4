#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "semcomm/cspace.hpp"
#include "semcomm/phy.hpp"
#include "semcomm/random.hpp"

namespace semcomm::harness {

enum class System { Semantic, Traditional };

std::string to_string(System s);
System parse_system(const std::string& name);

struct TrialRecord {
    const cspace::Concept* truth = nullptr;
    const cspace::Concept* decoded = nullptr;
    cspace::SemanticPoint point;      // encoder output at the transmitter
    cspace::SemanticPoint received;   // point the receiver decoded from
    phy::BitPacket sent;              // semantic system only
    phy::BitPacket delivered;         // semantic system only
    std::size_t packet_bits = 0;
    std::size_t bit_errors = 0;
    bool syntactic_error = false;
    bool semantic_error = false;
    bool classifier_failure = false;  // encoder rejected the (received) image
    double distortion = 0.0;          // exact semantic_loss(prototype, received)
};

// One end-to-end transmission of a freshly sampled scene of `truth`. The
// stream feeds the scene sampler, the pixel noise and the channel, in that
// order.
TrialRecord run_trial(System system, const cspace::Concept& truth, int n_b,
                      const phy::ChannelParams& channel, RandomStream& rng);

// Trial `index` of a sweep: draws its concept uniformly from its own stream
// make_stream(base_seed, index), then calls run_trial.
TrialRecord run_indexed_trial(System system, int n_b, const phy::ChannelParams& channel,
                              std::uint64_t base_seed, std::uint64_t index);

// Runs fn(0..count-1) on `workers` threads; results are in index order.
std::vector<TrialRecord> run_trials(std::size_t count, unsigned workers,
                                    const std::function<TrialRecord(std::size_t)>& fn);

struct ExperimentConfig {
    System system = System::Semantic;
    int n_b = 8;
    std::vector<double> snr_db{15.0};  // +inf = noiseless
    std::size_t trials = 10000;
    std::uint64_t seed = 1;
    unsigned workers = 1;
    std::filesystem::path out;

    void validate() const;
};

// Estimate with its standard error.
struct Estimate {
    double value = 0.0;
    double se = 0.0;
};

Estimate proportion(std::size_t hits, std::size_t n);
Estimate mean_of(const std::vector<double>& xs);

struct SnrPoint {
    double snr_db = 0.0;
    std::size_t trials = 0;
    Estimate p_syntactic;
    Estimate p_semantic;
    Estimate distortion;
    std::size_t syntactic_only = 0;  // syntactic error without semantic error
    std::size_t classifier_failures = 0;
};

SnrPoint aggregate(double snr_db, const std::vector<TrialRecord>& records);

std::vector<TrialRecord> simulate(const ExperimentConfig& cfg, double snr_db);
std::vector<SnrPoint> sweep_snr(const ExperimentConfig& cfg);

struct RateRow {
    System system = System::Semantic;
    int n_b = 0;
    std::size_t rate_bits = 0;
    Estimate p_semantic;
};

struct RateSweepConfig {
    std::vector<int> n_b{2, 5, 8};
    std::vector<System> systems{System::Semantic, System::Traditional};
    double snr_db = 15.0;
    std::size_t trials = 10000;
    std::uint64_t seed = 1;
    unsigned workers = 1;
};

std::vector<RateRow> sweep_rate(const RateSweepConfig& cfg);

// "99.79%" style, two decimals.
std::string format_percent(double fraction);

// CSV writers. Each throws InvalidParameter on empty input (before touching
// the file system) and IoError naming the path when it cannot be written.
void emit_trials_csv(const std::vector<TrialRecord>& records, const std::filesystem::path& path);
void emit_csv(const std::vector<SnrPoint>& points, const std::filesystem::path& path);
void emit_csv(const std::vector<RateRow>& rows, const std::filesystem::path& path);
void emit_plot_data(const std::vector<SnrPoint>& points, const std::filesystem::path& path);
void emit_plot_data(const std::vector<RateRow>& rows, const std::filesystem::path& path);

void write_snr_csv(std::ostream& os, const std::vector<SnrPoint>& points, char sep = ',');
void write_rate_csv(std::ostream& os, const std::vector<RateRow>& rows, char sep = ',');

// <output>.manifest.json next to an output file.
std::filesystem::path manifest_path(const std::filesystem::path& output);
void write_manifest(const std::filesystem::path& output, const std::string& command,
                    const std::string& config_json);

std::string format_snr(double snr_db);

}  // namespace semcomm::harness
