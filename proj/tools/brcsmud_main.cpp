#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "brcsmud/error.hpp"
#include "brcsmud/harness.hpp"

namespace {

struct RunOptions {
    std::string config_path;
    std::optional<std::string> out;
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> trials;
    std::optional<std::string> snr;
    std::optional<std::string> omega;
    std::optional<std::string> gain;
    std::optional<std::string> detectors;
};

int do_run(const RunOptions& opt) {
    brcsmud::ExperimentConfig cfg = brcsmud::load_config(opt.config_path);
    if (opt.out) {
        cfg.output_path = *opt.out;
    }
    if (opt.seed) {
        cfg.base_seed = *opt.seed;
    }
    if (opt.trials) {
        cfg.trials_per_point = *opt.trials;
    }
    if (opt.snr) {
        cfg.snr_db_list = brcsmud::parse_real_list(*opt.snr);
    }
    if (opt.omega) {
        cfg.omega_list = brcsmud::parse_real_list(*opt.omega);
    }
    if (opt.gain) {
        cfg.spreading_gain_list = brcsmud::parse_gain_list(*opt.gain);
    }
    if (opt.detectors) {
        cfg.detectors = brcsmud::parse_detector_list(*opt.detectors);
    }
    cfg.validate();
    brcsmud::run_sweep(cfg);
    std::cerr << "wrote " << cfg.output_path << "\n";
    return 0;
}

int do_roc(const std::string& in, const std::string& out) {
    const brcsmud::RocSummary summary = brcsmud::emit_roc(in, out);
    if (summary.rows_dropped > 0) {
        std::cerr << "warning: dropped " << summary.rows_dropped
                  << " row(s) with missing rates\n";
    }
    std::cerr << "wrote " << out << " (" << summary.rows_written << " rows)\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bayes-risk sphere detector for sporadic multi-user uplinks"};
    app.require_subcommand(1);

    RunOptions run_opt;
    CLI::App* run = app.add_subcommand("run", "run a Monte Carlo sweep and write the CSV");
    run->add_option("--config", run_opt.config_path, "key=value experiment file")->required();
    auto opt_str = [&](CLI::App* cmd, const char* flag, std::optional<std::string>& slot,
                       const char* help) {
        cmd->add_option_function<std::string>(
            flag, [&slot](const std::string& v) { slot = v; }, help);
    };
    opt_str(run, "--out", run_opt.out, "override output_path");
    run->add_option_function<std::uint64_t>(
        "--seed", [&](std::uint64_t v) { run_opt.seed = v; }, "override base_seed");
    run->add_option_function<std::uint64_t>(
        "--trials", [&](std::uint64_t v) { run_opt.trials = v; },
        "override trials_per_point");
    opt_str(run, "--snr", run_opt.snr, "override snr_db_list (comma list, inf allowed)");
    opt_str(run, "--omega", run_opt.omega, "override omega_list (comma list)");
    opt_str(run, "--gain", run_opt.gain, "override spreading_gain_list (comma list)");
    opt_str(run, "--detectors", run_opt.detectors,
            "override detectors (comma list of brcsmud,bpdn)");

    std::string roc_in;
    std::string roc_out;
    CLI::App* roc = app.add_subcommand("roc", "regroup a sweep CSV into ROC traces");
    roc->add_option("--in", roc_in, "sweep CSV produced by run")->required();
    roc->add_option("--out", roc_out, "ROC CSV to write")->required();

    CLI::App* self = app.add_subcommand("selftest", "run the built-in oracle checks");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (run->parsed()) {
            return do_run(run_opt);
        }
        if (roc->parsed()) {
            return do_roc(roc_in, roc_out);
        }
        if (self->parsed()) {
            return brcsmud::selftest(std::cout) ? 0 : 3;
        }
        std::cerr << "no subcommand\n";
        return 1;
    } catch (const brcsmud::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const brcsmud::IoError& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
}
