// semcomm: command-line front end for the semantic communication simulator.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "semcomm/baseline.hpp"
#include "semcomm/cspace.hpp"
#include "semcomm/encoder.hpp"
#include "semcomm/error.hpp"
#include "semcomm/funcomp.hpp"
#include "semcomm/harness.hpp"
#include "semcomm/scenegen.hpp"
#include "semcomm/version.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace semcomm;

namespace {

double parse_snr(const std::string& text) {
    if (text == "inf" || text == "+inf" || text == "noiseless") {
        return std::numeric_limits<double>::infinity();
    }
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used != text.size() || !std::isfinite(v)) throw std::invalid_argument(text);
        return v;
    } catch (const std::logic_error&) {
        throw InvalidParameter("invalid SNR value: " + text);
    }
}

json snr_json(double snr) {
    return std::isinf(snr) ? json("inf") : json(snr);
}

struct CommonOptions {
    std::size_t trials = 10000;
    std::uint64_t seed = 1;
    unsigned workers = std::max(1u, std::thread::hardware_concurrency());
    std::string out;
};

void add_common(CLI::App* cmd, CommonOptions& opt) {
    cmd->add_option("--trials", opt.trials, "Trials per point")->check(CLI::PositiveNumber);
    cmd->add_option("--seed", opt.seed, "Base random seed");
    cmd->add_option("--workers", opt.workers, "Worker threads (results do not depend on this)")
        ->check(CLI::PositiveNumber);
}

void print_snr_table(const std::vector<harness::SnrPoint>& points) {
    harness::write_snr_csv(std::cout, points);
}

fs::path plot_path(const fs::path& csv) {
    auto p = csv;
    p.replace_extension(".dat");
    return p;
}

void ensure_parent(const fs::path& path) {
    if (path.has_parent_path() && !path.parent_path().empty()) {
        std::error_code ec;
        fs::create_directories(path.parent_path(), ec);
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Semantic communication over conceptual spaces: link-level simulator"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);

    // simulate
    CommonOptions sim_opt;
    std::string sim_system = "semantic";
    int sim_nb = 8;
    std::string sim_snr = "15";
    auto* simulate = app.add_subcommand("simulate", "Run one configuration and dump per-trial records");
    add_common(simulate, sim_opt);
    simulate->add_option("--system", sim_system, "semantic|traditional");
    simulate->add_option("--nb", sim_nb, "Quantizer bits per value");
    simulate->add_option("--snr-db", sim_snr, "Channel SNR in dB, or inf");
    simulate->add_option("--out", sim_opt.out, "Per-trial CSV output");

    // sweep-snr
    CommonOptions snr_opt;
    std::string snr_system = "semantic";
    int snr_nb = 8;
    std::vector<std::string> snr_list{"0", "5", "10", "15", "20", "25", "30"};
    std::string snr_plot;
    auto* sweep_snr = app.add_subcommand("sweep-snr", "Error probabilities and distortion versus SNR");
    add_common(sweep_snr, snr_opt);
    sweep_snr->add_option("--system", snr_system, "semantic|traditional");
    sweep_snr->add_option("--nb", snr_nb, "Quantizer bits per value");
    sweep_snr->add_option("--snr-db", snr_list, "Comma-separated SNR list in dB (inf = noiseless)")
        ->delimiter(',');
    sweep_snr->add_option("--out", snr_opt.out, "CSV output");
    sweep_snr->add_option("--plot", snr_plot, "Whitespace-delimited plot data (default: <out>.dat)");

    // sweep-rate
    CommonOptions rate_opt;
    std::vector<int> rate_nb{2, 5, 8};
    std::string rate_snr = "15";
    std::vector<std::string> rate_systems{"semantic", "traditional"};
    std::string rate_plot;
    auto* sweep_rate = app.add_subcommand("sweep-rate", "Rate and semantic error of both systems");
    add_common(sweep_rate, rate_opt);
    sweep_rate->add_option("--nb", rate_nb, "Comma-separated n_b list")->delimiter(',');
    sweep_rate->add_option("--snr-db", rate_snr, "Channel SNR in dB");
    sweep_rate->add_option("--system", rate_systems, "Systems to run")->delimiter(',');
    sweep_rate->add_option("--out", rate_opt.out, "CSV output");
    sweep_rate->add_option("--plot", rate_plot, "Whitespace-delimited plot data (default: <out>.dat)");

    // render-dataset
    std::string ds_out;
    std::size_t ds_count = 10;
    std::uint64_t ds_seed = 1;
    double ds_sigma = -1.0;
    auto* render = app.add_subcommand("render-dataset", "Write PPM scenes plus labels.csv");
    render->add_option("--out", ds_out, "Output directory")->required();
    render->add_option("--count", ds_count, "Scenes per concept");
    render->add_option("--seed", ds_seed, "Base random seed");
    render->add_option("--noise", ds_sigma, "Override pixel noise sigma");

    // prototypes
    std::string proto_out;
    auto* prototypes = app.add_subcommand("prototypes", "Dump the concept prototype table as CSV");
    prototypes->add_option("--out", proto_out, "CSV output (default: stdout)");

    // encode (debug)
    std::string enc_file;
    auto* encode = app.add_subcommand("encode", "Print the semantic point (r,h,s,b) of a PPM image");
    encode->add_option("image", enc_file, "25x25 binary PPM")->required();

    // funcomp
    auto* fc = app.add_subcommand("funcomp", "Functional compression tools");
    fc->require_subcommand(1);
    std::string fc_spec;
    auto* fc_classes = fc->add_subcommand("classes", "Equivalence classes and code lengths of a function");
    fc_classes->add_option("--spec", fc_spec, "CSV: element,output,probability")->required();

    CommonOptions rs_opt;
    rs_opt.trials = 1000;
    double rs_tau = 0.0;
    std::string rs_snr;
    bool rs_noiseless = false;
    auto* fc_rate = fc->add_subcommand("rate-search", "Smallest n_b meeting a distortion threshold");
    add_common(fc_rate, rs_opt);
    fc_rate->add_option("--tau", rs_tau, "Distortion threshold")->required();
    auto* snr_flag = fc_rate->add_option("--snr", rs_snr, "Channel SNR in dB");
    fc_rate->add_flag("--noiseless", rs_noiseless, "Error-free channel")->excludes(snr_flag);
    fc_rate->add_option("--out", rs_opt.out, "CSV output (default: stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*simulate) {
            harness::ExperimentConfig cfg;
            cfg.system = harness::parse_system(sim_system);
            cfg.n_b = sim_nb;
            cfg.snr_db = {parse_snr(sim_snr)};
            cfg.trials = sim_opt.trials;
            cfg.seed = sim_opt.seed;
            cfg.workers = sim_opt.workers;
            const auto records = harness::simulate(cfg, cfg.snr_db.front());
            const auto pt = harness::aggregate(cfg.snr_db.front(), records);
            print_snr_table({pt});
            if (!sim_opt.out.empty()) {
                const fs::path out = sim_opt.out;
                ensure_parent(out);
                harness::emit_trials_csv(records, out);
                json c{{"system", sim_system}, {"nb", sim_nb}, {"snr_db", snr_json(cfg.snr_db.front())},
                       {"trials", cfg.trials}, {"seed", cfg.seed}};
                harness::write_manifest(out, "simulate", c.dump());
            }
        } else if (*sweep_snr) {
            harness::ExperimentConfig cfg;
            cfg.system = harness::parse_system(snr_system);
            cfg.n_b = snr_nb;
            cfg.snr_db.clear();
            for (const auto& s : snr_list) cfg.snr_db.push_back(parse_snr(s));
            cfg.trials = snr_opt.trials;
            cfg.seed = snr_opt.seed;
            cfg.workers = snr_opt.workers;
            const auto points = harness::sweep_snr(cfg);
            print_snr_table(points);
            if (!snr_opt.out.empty()) {
                const fs::path out = snr_opt.out;
                ensure_parent(out);
                harness::emit_csv(points, out);
                harness::emit_plot_data(points, snr_plot.empty() ? plot_path(out) : fs::path(snr_plot));
                json snrs = json::array();
                for (double s : cfg.snr_db) snrs.push_back(snr_json(s));
                json c{{"system", snr_system}, {"nb", snr_nb}, {"snr_db", snrs},
                       {"trials", cfg.trials}, {"seed", cfg.seed}};
                harness::write_manifest(out, "sweep-snr", c.dump());
            }
        } else if (*sweep_rate) {
            harness::RateSweepConfig cfg;
            cfg.n_b = rate_nb;
            cfg.systems.clear();
            for (const auto& s : rate_systems) cfg.systems.push_back(harness::parse_system(s));
            cfg.snr_db = parse_snr(rate_snr);
            cfg.trials = rate_opt.trials;
            cfg.seed = rate_opt.seed;
            cfg.workers = rate_opt.workers;
            const auto rows = harness::sweep_rate(cfg);
            harness::write_rate_csv(std::cout, rows);
            std::cout << "rate reduction: " << harness::format_percent(baseline::rate_reduction()) << '\n';
            if (!rate_opt.out.empty()) {
                const fs::path out = rate_opt.out;
                ensure_parent(out);
                harness::emit_csv(rows, out);
                harness::emit_plot_data(rows, rate_plot.empty() ? plot_path(out) : fs::path(rate_plot));
                json c{{"nb", rate_nb}, {"systems", rate_systems}, {"snr_db", snr_json(cfg.snr_db)},
                       {"trials", cfg.trials}, {"seed", cfg.seed}};
                harness::write_manifest(out, "sweep-rate", c.dump());
            }
        } else if (*render) {
            const fs::path dir = ds_out;
            fs::create_directories(dir);
            const fs::path labels = dir / "labels.csv";
            std::ofstream csv(labels);
            if (!csv) throw IoError("cannot open for writing: " + labels.string());
            csv << "filename,label\n";
            const auto& concepts = cspace::standard_concepts();
            std::size_t index = 0;
            for (const auto& c : concepts) {
                for (std::size_t k = 0; k < ds_count; ++k, ++index) {
                    auto rng = make_stream(ds_seed, index);
                    auto spec = scenegen::sample_spec(c, rng);
                    if (ds_sigma >= 0.0) spec.pixel_noise_sigma = ds_sigma;
                    char name[64];
                    std::snprintf(name, sizeof name, "%s_%04zu.ppm", c.label.c_str(), k);
                    scenegen::write_ppm(dir / name, scenegen::render(spec, rng));
                    csv << name << ',' << c.label << '\n';
                }
            }
            csv.close();
            if (!csv) throw IoError("write failed: " + labels.string());
            json cfg{{"count_per_concept", ds_count}, {"seed", ds_seed}};
            if (ds_sigma >= 0.0) cfg["noise"] = ds_sigma;
            harness::write_manifest(labels, "render-dataset", cfg.dump());
            std::cout << "wrote " << index << " scenes to " << dir.string() << '\n';
        } else if (*prototypes) {
            if (proto_out.empty()) {
                cspace::write_prototypes_csv(std::cout, cspace::standard_concepts());
            } else {
                const fs::path out = proto_out;
                ensure_parent(out);
                std::ofstream os(out);
                if (!os) throw IoError("cannot open for writing: " + out.string());
                cspace::write_prototypes_csv(os, cspace::standard_concepts());
                os.close();
                if (!os) throw IoError("write failed: " + out.string());
                harness::write_manifest(out, "prototypes", "{}");
            }
        } else if (*encode) {
            const auto p = encoder::encode(scenegen::read_ppm(fs::path(enc_file)));
            const auto& c = cspace::decode_concept(p, cspace::standard_concepts());
            std::printf("r=%.6f h=%.6f s=%.6f b=%.6f concept=%s\n", p.r, p.h, p.s, p.b, c.label.c_str());
        } else if (*fc_classes) {
            std::ifstream in(fc_spec);
            if (!in) throw IoError("cannot open for reading: " + fc_spec);
            const auto f = funcomp::read_function_csv(in);
            const auto classes = funcomp::equivalence_classes(f);
            std::cout << "classes: ";
            for (std::size_t i = 0; i < classes.size(); ++i) {
                std::cout << (i ? "," : "") << '{';
                for (std::size_t j = 0; j < classes[i].size(); ++j) {
                    std::cout << (j ? "," : "") << classes[i][j];
                }
                std::cout << '}';
            }
            int raw_bits = 0;
            while ((std::size_t{1} << raw_bits) < f.domain.size()) ++raw_bits;
            std::cout << "\nsource_bits: " << raw_bits << "\nmin_bits: " << funcomp::min_bits(classes)
                      << "\nexpected_code_length: " << funcomp::expected_code_length(f) << '\n';
        } else if (*fc_rate) {
            if (!rs_noiseless && rs_snr.empty()) {
                throw InvalidParameter("rate-search needs --snr <dB> or --noiseless");
            }
            funcomp::RateSearchConfig cfg;
            cfg.tau = rs_tau;
            cfg.channel = rs_noiseless ? phy::ChannelParams::noiseless()
                                       : phy::ChannelParams{parse_snr(rs_snr)};
            cfg.trials = rs_opt.trials;
            cfg.seed = rs_opt.seed;
            cfg.workers = rs_opt.workers;
            const auto result = funcomp::semantic_rate_search(cfg);
            if (rs_opt.out.empty()) {
                funcomp::write_rate_search_csv(std::cout, result);
            } else {
                const fs::path out = rs_opt.out;
                ensure_parent(out);
                std::ofstream os(out);
                if (!os) throw IoError("cannot open for writing: " + out.string());
                funcomp::write_rate_search_csv(os, result);
                os.close();
                if (!os) throw IoError("write failed: " + out.string());
                json c{{"tau", rs_tau}, {"snr_db", snr_json(cfg.channel.snr_db)},
                       {"trials", cfg.trials}, {"seed", cfg.seed}};
                harness::write_manifest(out, "funcomp rate-search", c.dump());
            }
            if (result.n_b_star) {
                std::cerr << "n_b* = " << *result.n_b_star << '\n';
            } else {
                std::cerr << "infeasible: no n_b in [1, 16] meets tau\n";
            }
        }
    } catch (const std::exception& e) {
        std::cerr << "semcomm: error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
