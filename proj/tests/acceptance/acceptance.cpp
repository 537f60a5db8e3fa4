// End-to-end acceptance checks. One PASS/FAIL line per criterion; exit
// status is nonzero if any criterion fails.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <thread>

#include "oracles.hpp"
#include "semcomm/baseline.hpp"
#include "semcomm/cspace.hpp"
#include "semcomm/encoder.hpp"
#include "semcomm/error.hpp"
#include "semcomm/funcomp.hpp"
#include "semcomm/harness.hpp"
#include "semcomm/phy.hpp"

using namespace semcomm;
namespace fs = std::filesystem;

namespace {

constexpr std::uint64_t kSeed = 1;
constexpr std::size_t kTrials = 10000;
constexpr double kInf = std::numeric_limits<double>::infinity();

unsigned workers() { return std::max(1u, std::thread::hardware_concurrency()); }

int failures = 0;

void report(int id, const std::string& name, bool ok, const std::string& detail) {
    std::printf("%s %d %s: %s\n", ok ? "PASS" : "FAIL", id, name.c_str(), detail.c_str());
    std::fflush(stdout);
    failures += ok ? 0 : 1;
}

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

harness::ExperimentConfig semantic_at(std::vector<double> snrs, int n_b) {
    harness::ExperimentConfig cfg;
    cfg.system = harness::System::Semantic;
    cfg.n_b = n_b;
    cfg.snr_db = std::move(snrs);
    cfg.trials = kTrials;
    cfg.seed = kSeed;
    cfg.workers = workers();
    return cfg;
}

void rate_reduction() {
    bool ok = true;
    for (int n_b = phy::kMinBits; n_b <= phy::kMaxBits; ++n_b) {
        const double r = 1.0 - static_cast<double>(baseline::semantic_rate_bits(n_b)) /
                                   static_cast<double>(baseline::traditional_rate_bits(n_b));
        ok = ok && harness::format_percent(r) == "99.79%";
    }
    ok = ok && harness::format_percent(baseline::rate_reduction()) == "99.79%";
    report(1, "rate reduction", ok, harness::format_percent(baseline::rate_reduction()) + " for n_b = 1..16");
}

void rates_table() {
    const std::map<int, std::pair<std::size_t, std::size_t>> expected{
        {2, {8, 3750}}, {5, {20, 9375}}, {8, {32, 15000}}};
    bool ok = true;
    std::string detail;
    for (const auto& [n_b, rates] : expected) {
        const auto s = baseline::semantic_rate_bits(n_b);
        const auto t = baseline::traditional_rate_bits(n_b);
        ok = ok && s == rates.first && t == rates.second;
        detail += fmt("n_b=%d %zu/%zu ", n_b, s, t);
    }
    report(2, "rates table", ok, detail);
}

void channel_ber() {
    const std::size_t n = 10000000;
    const std::vector<std::uint8_t> zeros(n, 0);
    bool ok = true;
    std::string detail;
    for (double snr : {0.0, 5.0, 10.0, 15.0, 20.0}) {
        auto rng = make_stream(kSeed, static_cast<std::uint64_t>(snr));
        phy::ChannelParams ch;
        ch.snr_db = snr;
        const auto got = phy::transmit_bits(zeros, ch, rng);
        const double ber = static_cast<double>(phy::bit_errors(zeros, got)) / n;
        const double p = oracle::rayleigh_bpsk_ber(snr);
        const double z = (ber - p) / std::sqrt(p * (1 - p) / n);
        ok = ok && std::abs(z) <= 3.0;
        detail += fmt("%gdB z=%+.2f ", snr, z);
    }
    report(3, "channel BER", ok, detail);
}

void semantic_syntactic_gap() {
    const auto points = harness::sweep_snr(semantic_at({10.0, 12.5, 15.0, 17.5, 20.0}, 8));
    bool ok = false;
    std::string detail;
    for (const auto& p : points) {
        const double syn = p.p_syntactic.value, sem = p.p_semantic.value;
        ok = ok || (syn >= 2 * sem && syn >= 0.1);
        detail += fmt("%gdB %.4f/%.4f ", p.snr_db, syn, sem);
    }
    report(4, "semantic vs syntactic gap", ok, detail + "(P_syn/P_sem)");
}

void distortion_floor() {
    const auto points = harness::sweep_snr(semantic_at({30.0, kInf}, 8));
    const auto& noisy = points[0].distortion;
    const auto& clean = points[1].distortion;
    // two estimates compared with their combined standard error
    const double se = std::hypot(noisy.se, clean.se);
    const double z = (noisy.value - clean.value) / se;
    const bool ok = clean.value > 0.0 && noisy.value > 0.0 && std::abs(z) <= 3.0;
    report(5, "distortion floor", ok,
           fmt("30dB %.7f+-%.7f noiseless %.7f+-%.7f z=%.2f", noisy.value, noisy.se, clean.value, clean.se, z));
}

void low_rate_ordering() {
    harness::RateSweepConfig cfg;
    cfg.n_b = {2};
    cfg.snr_db = 15.0;
    cfg.trials = kTrials;
    cfg.seed = kSeed;
    cfg.workers = workers();
    const auto rows = harness::sweep_rate(cfg);
    double sem = 1.0, trad = 0.0;
    for (const auto& r : rows) (r.system == harness::System::Semantic ? sem : trad) = r.p_semantic.value;
    report(6, "low-rate ordering", sem < trad, fmt("n_b=2 15dB semantic %.4f traditional %.4f", sem, trad));
}

void functional_compression() {
    const auto f = funcomp::FiniteFunction::uniform({"0", "1", "2", "3"}, {"0", "1", "0", "1"});
    const auto classes = funcomp::equivalence_classes(f);
    const bool ok = classes == funcomp::Partition{{"0", "2"}, {"1", "3"}} && funcomp::min_bits(classes) == 1;
    report(7, "functional compression", ok, fmt("%zu classes, %d bit", classes.size(), funcomp::min_bits(classes)));
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void property_suites() {
    std::mt19937_64 rng(kSeed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::size_t gamma_bad = 0, triangle_bad = 0, quant_bad = 0, identity_bad = 0;

    for (double rho : {1.0, 10.0, 50.0, 1000.0}) {
        for (int k = 0; k < 100000; ++k) {
            const double a = u(rng), b = u(rng);
            const double d = oracle::circular_distance(a, b);
            const double g = cspace::gamma(a, b, rho);
            gamma_bad += !(g >= d - 1e-12 && g <= d + std::log(2.0) / rho + 1e-12);
        }
    }
    for (int k = 0; k < 100000; ++k) {
        const auto a = oracle::random_point(rng), b = oracle::random_point(rng), c = oracle::random_point(rng);
        triangle_bad += !(cspace::semantic_metric(a, c) <=
                          cspace::semantic_metric(a, b) + cspace::semantic_metric(b, c) + 1e-12);
    }
    const phy::QuantizerSpec q{8};
    auto chan = make_stream(kSeed, 0);
    for (int k = 0; k < 100000; ++k) {
        const auto p = oracle::random_point(rng);
        const auto idx = phy::quantize(p, q);
        const auto back = phy::dequantize(idx, q);
        quant_bad += !(std::abs(back.r - p.r) <= q.width(0) / 2 + 1e-12 &&
                       oracle::circular_distance(back.h, p.h) <= q.width(1) / 2 + 1e-12 &&
                       std::abs(back.s - p.s) <= q.width(2) / 2 + 1e-12 &&
                       std::abs(back.b - p.b) <= q.width(3) / 2 + 1e-12);
        const auto delivered = phy::transmit_packet(phy::pack(idx, q.n_b), phy::ChannelParams::noiseless(), chan);
        identity_bad += !(phy::dequantize(phy::unpack(delivered, q.n_b), q) == back);
    }

    const fs::path dir = fs::temp_directory_path() / "semcomm_acceptance";
    fs::create_directories(dir);
    auto cfg = semantic_at({10.0, 20.0}, 8);
    cfg.trials = 2000;
    std::vector<std::string> outputs;
    for (unsigned w : {1u, 1u, 4u, 4u}) {
        cfg.workers = w;
        const auto snr = dir / "snr.csv";
        const auto trials = dir / "trials.csv";
        harness::emit_csv(harness::sweep_snr(cfg), snr);
        harness::emit_trials_csv(harness::simulate(cfg, 10.0), trials);
        outputs.push_back(slurp(snr) + slurp(trials));
    }
    fs::remove_all(dir);
    const bool csv_ok = std::all_of(outputs.begin(), outputs.end(), [&](const auto& s) { return s == outputs[0]; });

    const bool ok = gamma_bad == 0 && triangle_bad == 0 && quant_bad == 0 && identity_bad == 0 && csv_ok;
    report(8, "property suites", ok,
           fmt("gamma %zu, triangle %zu, quantizer %zu, identity %zu violations; csv %s", gamma_bad, triangle_bad,
               quant_bad, identity_bad, csv_ok ? "identical" : "differs"));
}

void encoder_floor() {
    const auto& set = cspace::standard_concepts();
    const std::size_t per = 1000;
    bool ok = true;
    std::string detail;
    for (std::size_t c = 0; c < set.size(); ++c) {
        std::size_t correct = 0;
        for (std::size_t i = 0; i < per; ++i) {
            auto rng = make_stream(kSeed + 100 + c, i);
            try {
                const auto img = scenegen::render(scenegen::sample_spec(set[c], rng), rng);
                correct += cspace::decode_concept(encoder::encode(img), set).label == set[c].label;
            } catch (const Error&) {
            }
        }
        ok = ok && correct >= 990;
        detail += fmt("%s %.1f%% ", set[c].label.c_str(), 100.0 * correct / per);
    }

    // clean renders at R = 10 over 16 rotations
    struct Band {
        const char* name;
        int sides;
        double lo, hi;
    };
    const Band bands[] = {{"circle", cspace::kCircle, 1.0, 1.06},
                          {"octagon", 8, 1.0824 - 0.04, 1.0824 + 0.04},
                          {"square", 4, 1.35, 1.48},
                          {"triangle", 3, 1.85, 2.15}};
    for (const auto& b : bands) {
        double lo = kInf, hi = 0.0;
        for (int k = 0; k < 16; ++k) {
            scenegen::SceneSpec spec;
            spec.n_sides = b.sides;
            spec.circumradius = 10.0;
            spec.rotation = 2.0 * std::numbers::pi * k / 16;
            spec.fill = {0.0, 1.0, 0.97};
            spec.pixel_noise_sigma = 0.0;
            RandomStream rng(0);
            const double r = encoder::estimate_shape_ratio(encoder::segment(scenegen::render(spec, rng)));
            lo = std::min(lo, r);
            hi = std::max(hi, r);
        }
        ok = ok && lo >= b.lo && hi <= b.hi;
        detail += fmt("%s [%.3f, %.3f] ", b.name, lo, hi);
    }
    report(9, "encoder floor", ok, detail);
}

}  // namespace

int main() {
    const std::vector<std::function<void()>> checks{rate_reduction,  rates_table,       channel_ber,
                                                    semantic_syntactic_gap, distortion_floor, low_rate_ordering,
                                                    functional_compression, property_suites, encoder_floor};
    for (const auto& check : checks) {
        try {
            check();
        } catch (const std::exception& e) {
            std::printf("FAIL (exception: %s)\n", e.what());
            ++failures;
        }
    }
    std::printf("%d of %zu criteria failed\n", failures, checks.size());
    return failures == 0 ? 0 : 1;
}
