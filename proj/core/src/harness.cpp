#include "semcomm/harness.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <thread>

#include <json.hpp>

#include "semcomm/baseline.hpp"
#include "semcomm/encoder.hpp"
#include "semcomm/error.hpp"
#include "semcomm/scenegen.hpp"
#include "semcomm/version.hpp"

namespace semcomm::harness {

std::string to_string(System s) { return s == System::Semantic ? "semantic" : "traditional"; }

System parse_system(const std::string& name) {
    if (name == "semantic") return System::Semantic;
    if (name == "traditional") return System::Traditional;
    throw InvalidParameter("unknown system: " + name + " (expected semantic|traditional)");
}

namespace {

const cspace::Concept& fallback_concept() { return cspace::standard_concepts().front(); }

TrialRecord semantic_trial(const cspace::Concept& truth, const scenegen::Image& img, int n_b,
                           const phy::ChannelParams& channel, RandomStream& rng) {
    TrialRecord rec;
    rec.truth = &truth;
    const phy::QuantizerSpec spec{n_b};
    rec.packet_bits = baseline::semantic_rate_bits(n_b);
    try {
        rec.point = encoder::encode(img);
    } catch (const Error&) {
        // nothing to send; the receiver falls back to the default concept
        rec.classifier_failure = true;
        rec.decoded = &fallback_concept();
        rec.received = rec.decoded->prototype;
        rec.semantic_error = rec.decoded != &truth;
        rec.distortion = cspace::semantic_loss(truth.prototype, rec.received, cspace::kDefaultRho, false);
        return rec;
    }
    rec.sent = phy::pack(phy::quantize(rec.point, spec), n_b);
    rec.delivered = phy::transmit_packet(rec.sent, channel, rng);
    rec.bit_errors = phy::bit_errors(rec.sent.bits, rec.delivered.bits);
    rec.syntactic_error = rec.bit_errors > 0;
    rec.received = phy::dequantize(phy::unpack(rec.delivered, n_b), spec);
    rec.decoded = &cspace::decode_concept(rec.received, cspace::standard_concepts());
    rec.semantic_error = rec.decoded != &truth;
    rec.distortion = cspace::semantic_loss(truth.prototype, rec.received, cspace::kDefaultRho, false);
    return rec;
}

TrialRecord traditional_trial(const cspace::Concept& truth, const scenegen::Image& img, int n_b,
                              const phy::ChannelParams& channel, RandomStream& rng) {
    TrialRecord rec;
    rec.truth = &truth;
    try {
        rec.point = encoder::encode(img);
    } catch (const Error&) {
        rec.point = truth.prototype;
    }
    const auto packet = baseline::pixel_quantize(img, n_b);
    baseline::PixelPacket delivered{phy::transmit_bits(packet.bits, channel, rng)};
    rec.packet_bits = packet.size();
    rec.bit_errors = phy::bit_errors(packet.bits, delivered.bits);
    rec.syntactic_error = rec.bit_errors > 0;

    const auto result = baseline::classify_received(baseline::pixel_dequantize(delivered, n_b));
    rec.classifier_failure = result.classifier_failure;
    rec.decoded = result.decoded;
    rec.received = result.classifier_failure ? result.decoded->prototype : result.point;
    rec.semantic_error = rec.decoded != &truth;
    rec.distortion = cspace::semantic_loss(truth.prototype, rec.received, cspace::kDefaultRho, false);
    return rec;
}

}  // namespace

TrialRecord run_trial(System system, const cspace::Concept& truth, int n_b,
                      const phy::ChannelParams& channel, RandomStream& rng) {
    phy::QuantizerSpec{n_b}.validate();
    const auto& canonical = cspace::find_concept(truth.label);
    const auto spec = scenegen::sample_spec(canonical, rng);
    const auto img = scenegen::render(spec, rng);
    return system == System::Semantic ? semantic_trial(canonical, img, n_b, channel, rng)
                                      : traditional_trial(canonical, img, n_b, channel, rng);
}

TrialRecord run_indexed_trial(System system, int n_b, const phy::ChannelParams& channel,
                              std::uint64_t base_seed, std::uint64_t index) {
    auto rng = make_stream(base_seed, index);
    const auto& concepts = cspace::standard_concepts();
    std::uniform_int_distribution<std::size_t> pick(0, concepts.size() - 1);
    const auto& truth = concepts[pick(rng)];
    return run_trial(system, truth, n_b, channel, rng);
}

std::vector<TrialRecord> run_trials(std::size_t count, unsigned workers,
                                    const std::function<TrialRecord(std::size_t)>& fn) {
    std::vector<TrialRecord> out(count);
    const unsigned n_threads = std::max(1u, std::min<unsigned>(workers, count ? count : 1));
    if (n_threads == 1) {
        for (std::size_t i = 0; i < count; ++i) out[i] = fn(i);
        return out;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::atomic<bool> failed{false};
    {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < n_threads; ++t) {
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < count && !failed; i = next++) {
                    try {
                        out[i] = fn(i);
                    } catch (...) {
                        if (!failed.exchange(true)) failure = std::current_exception();
                    }
                }
            });
        }
    }
    if (failure) std::rethrow_exception(failure);
    return out;
}

void ExperimentConfig::validate() const {
    phy::QuantizerSpec{n_b}.validate();
    if (trials < 1) throw InvalidParameter("trials must be >= 1");
    if (snr_db.empty()) throw InvalidParameter("at least one SNR point is required");
    for (double s : snr_db) {
        if (std::isnan(s) || s == -std::numeric_limits<double>::infinity()) {
            throw InvalidParameter("invalid SNR value");
        }
    }
}

Estimate proportion(std::size_t hits, std::size_t n) {
    if (n == 0) return {};
    const double p = static_cast<double>(hits) / n;
    return {p, std::sqrt(p * (1.0 - p) / n)};
}

Estimate mean_of(const std::vector<double>& xs) {
    if (xs.empty()) return {};
    double sum = 0.0;
    for (double x : xs) sum += x;
    const double mean = sum / xs.size();
    if (xs.size() < 2) return {mean, 0.0};
    double ss = 0.0;
    for (double x : xs) ss += (x - mean) * (x - mean);
    return {mean, std::sqrt(ss / (xs.size() - 1) / xs.size())};
}

SnrPoint aggregate(double snr_db, const std::vector<TrialRecord>& records) {
    SnrPoint pt;
    pt.snr_db = snr_db;
    pt.trials = records.size();
    std::size_t syn = 0, sem = 0;
    std::vector<double> dist;
    dist.reserve(records.size());
    for (const auto& r : records) {
        syn += r.syntactic_error;
        sem += r.semantic_error;
        pt.syntactic_only += r.syntactic_error && !r.semantic_error;
        pt.classifier_failures += r.classifier_failure;
        dist.push_back(r.distortion);
    }
    pt.p_syntactic = proportion(syn, records.size());
    pt.p_semantic = proportion(sem, records.size());
    pt.distortion = mean_of(dist);
    return pt;
}

std::vector<TrialRecord> simulate(const ExperimentConfig& cfg, double snr_db) {
    cfg.validate();
    const phy::ChannelParams channel{snr_db};
    return run_trials(cfg.trials, cfg.workers, [&](std::size_t i) {
        return run_indexed_trial(cfg.system, cfg.n_b, channel, cfg.seed, i);
    });
}

std::vector<SnrPoint> sweep_snr(const ExperimentConfig& cfg) {
    cfg.validate();
    std::vector<SnrPoint> out;
    for (double snr : cfg.snr_db) out.push_back(aggregate(snr, simulate(cfg, snr)));
    return out;
}

std::vector<RateRow> sweep_rate(const RateSweepConfig& cfg) {
    if (cfg.trials < 1) throw InvalidParameter("trials must be >= 1");
    std::vector<RateRow> rows;
    for (System sys : cfg.systems) {
        for (int n_b : cfg.n_b) {
            ExperimentConfig exp;
            exp.system = sys;
            exp.n_b = n_b;
            exp.snr_db = {cfg.snr_db};
            exp.trials = cfg.trials;
            exp.seed = cfg.seed;
            exp.workers = cfg.workers;
            const auto pt = aggregate(cfg.snr_db, simulate(exp, cfg.snr_db));
            RateRow row;
            row.system = sys;
            row.n_b = n_b;
            row.rate_bits = sys == System::Semantic ? baseline::semantic_rate_bits(n_b)
                                                    : baseline::traditional_rate_bits(n_b);
            row.p_semantic = pt.p_semantic;
            rows.push_back(row);
        }
    }
    return rows;
}

std::string format_percent(double fraction) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f%%", 100.0 * fraction);
    return buf;
}

std::string format_snr(double snr_db) {
    if (std::isinf(snr_db)) return snr_db > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", snr_db);
    return buf;
}

namespace {

std::string fixed(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.8f", v);
    return buf;
}

template <typename Writer>
void write_file(const std::filesystem::path& path, Writer&& writer) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path.string());
    writer(out);
    out.flush();
    if (!out) throw IoError("write failed: " + path.string());
}

std::string bits_string(const phy::BitPacket& p) {
    std::string s;
    s.reserve(p.size());
    for (auto b : p.bits) s.push_back(b ? '1' : '0');
    return s;
}

}  // namespace

void write_snr_csv(std::ostream& os, const std::vector<SnrPoint>& points, char sep) {
    const char* cols[] = {"snr_db", "p_syntactic", "p_syntactic_se", "p_semantic",
                          "p_semantic_se", "mean_distortion", "distortion_se"};
    if (sep != ',') os << "# ";
    for (std::size_t i = 0; i < std::size(cols); ++i) os << (i ? std::string(1, sep) : "") << cols[i];
    os << '\n';
    for (const auto& p : points) {
        os << format_snr(p.snr_db) << sep << fixed(p.p_syntactic.value) << sep
           << fixed(p.p_syntactic.se) << sep << fixed(p.p_semantic.value) << sep
           << fixed(p.p_semantic.se) << sep << fixed(p.distortion.value) << sep
           << fixed(p.distortion.se) << '\n';
    }
}

void write_rate_csv(std::ostream& os, const std::vector<RateRow>& rows, char sep) {
    const char* cols[] = {"system", "nb", "rate_bits", "p_semantic", "p_semantic_se"};
    if (sep != ',') os << "# ";
    for (std::size_t i = 0; i < std::size(cols); ++i) os << (i ? std::string(1, sep) : "") << cols[i];
    os << '\n';
    for (const auto& r : rows) {
        os << to_string(r.system) << sep << r.n_b << sep << r.rate_bits << sep
           << fixed(r.p_semantic.value) << sep << fixed(r.p_semantic.se) << '\n';
    }
}

void emit_trials_csv(const std::vector<TrialRecord>& records, const std::filesystem::path& path) {
    if (records.empty()) throw InvalidParameter("emit_trials_csv: no records");
    write_file(path, [&](std::ostream& os) {
        os << "trial,concept,decoded,syntactic_error,semantic_error,classifier_failure,"
              "bit_errors,packet_bits,distortion,r,h,s,b,r_hat,h_hat,s_hat,b_hat,bits,bits_hat\n";
        for (std::size_t i = 0; i < records.size(); ++i) {
            const auto& r = records[i];
            os << i << ',' << r.truth->label << ',' << r.decoded->label << ','
               << int(r.syntactic_error) << ',' << int(r.semantic_error) << ','
               << int(r.classifier_failure) << ',' << r.bit_errors << ',' << r.packet_bits << ','
               << fixed(r.distortion);
            for (std::size_t d = 0; d < cspace::SemanticPoint::kDims; ++d) os << ',' << fixed(r.point[d]);
            for (std::size_t d = 0; d < cspace::SemanticPoint::kDims; ++d) os << ',' << fixed(r.received[d]);
            os << ',' << bits_string(r.sent) << ',' << bits_string(r.delivered) << '\n';
        }
    });
}

void emit_csv(const std::vector<SnrPoint>& points, const std::filesystem::path& path) {
    if (points.empty()) throw InvalidParameter("emit_csv: no SNR points");
    write_file(path, [&](std::ostream& os) { write_snr_csv(os, points); });
}

void emit_csv(const std::vector<RateRow>& rows, const std::filesystem::path& path) {
    if (rows.empty()) throw InvalidParameter("emit_csv: no rate rows");
    write_file(path, [&](std::ostream& os) { write_rate_csv(os, rows); });
}

void emit_plot_data(const std::vector<SnrPoint>& points, const std::filesystem::path& path) {
    if (points.empty()) throw InvalidParameter("emit_plot_data: no SNR points");
    write_file(path, [&](std::ostream& os) { write_snr_csv(os, points, ' '); });
}

void emit_plot_data(const std::vector<RateRow>& rows, const std::filesystem::path& path) {
    if (rows.empty()) throw InvalidParameter("emit_plot_data: no rate rows");
    write_file(path, [&](std::ostream& os) { write_rate_csv(os, rows, ' '); });
}

std::filesystem::path manifest_path(const std::filesystem::path& output) {
    auto p = output;
    p += ".manifest.json";
    return p;
}

void write_manifest(const std::filesystem::path& output, const std::string& command,
                    const std::string& config_json) {
    nlohmann::ordered_json doc;
    doc["tool"] = "semcomm";
    doc["version"] = kVersion;
    doc["command"] = command;
    doc["output"] = output.filename().string();
    doc["config"] = nlohmann::ordered_json::parse(config_json);
    const auto path = manifest_path(output);
    write_file(path, [&](std::ostream& os) { os << doc.dump(2) << '\n'; });
}

}  // namespace semcomm::harness
