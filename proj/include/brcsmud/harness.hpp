#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "brcsmud/cdma.hpp"
#include "brcsmud/metrics.hpp"

namespace brcsmud {

enum class DetectorKind { BrCsMud, Bpdn };

/// "brcsmud" or "bpdn"; also the sort key for sweep output rows.
std::string detector_name(DetectorKind kind);
DetectorKind parse_detector(const std::string& name);

/// Whether a sweep point runs its trials on one thread or across the OpenMP
/// pool. Results are identical either way; Parallel degrades to Serial when
/// the build has no OpenMP support.
enum class ExecutionMode { Serial, Parallel };

/// Solver settings for the comparison baseline. An absent reg_weight means
/// the per-cell automatic choice sigma_n * sqrt(2 ln K), floored at 1e-12
/// so the noise-free sentinel stays solvable.
struct BpdnSettings {
    std::optional<double> reg_weight;
    int max_iters = 500;
    double rel_tol = 1e-6;
    double quant_threshold = 0.5;
};

/// Full description of one Monte Carlo sweep: the scenario dimensions, the
/// grid axes (SNR x omega x spreading gain), the trial budget, seeding, the
/// detectors to score, and where the CSV goes.
struct ExperimentConfig {
    std::size_t num_nodes = 20;
    std::size_t channel_taps = 4;
    double activity_prob = 0.2;
    std::vector<double> alphabet_symbols = {-1.0, +1.0};

    std::vector<double> omega_list = {1.0};
    std::vector<double> snr_db_list = {0.0, 8.0, 16.0, 24.0, 32.0, 40.0};
    std::vector<std::size_t> spreading_gain_list = {4};
    std::uint64_t trials_per_point = 10000;
    std::uint64_t base_seed = 1;
    std::vector<DetectorKind> detectors = {DetectorKind::BrCsMud};
    BpdnSettings bpdn;
    std::string output_path = "sweep.csv";

    /// Throws ConfigError on any out-of-range field, empty list, or
    /// duplicate value within a grid axis.
    void validate() const;
};

/// Parse a flat key=value file ('#' starts a comment, blank lines ignored).
/// Unknown or repeated keys are ConfigError; an unreadable file is IoError.
/// Keys: num_nodes, channel_taps, activity_prob, alphabet, omega_list,
/// snr_db_list, spreading_gain_list, trials_per_point, base_seed, detectors,
/// reg_weight (a number or "auto"), max_iters, rel_tol, quant_threshold,
/// output_path.
ExperimentConfig load_config(const std::string& path);

/// Comma-list parsers shared by the config reader and the CLI overrides.
/// "inf" is accepted as a real (the noise-free SNR sentinel).
std::vector<double> parse_real_list(const std::string& text);
std::vector<std::size_t> parse_gain_list(const std::string& text);
std::vector<DetectorKind> parse_detector_list(const std::string& text);

/// Stable 64-bit per-trial seed from the grid indices. Deliberately not a
/// function of the detector, so both detectors at one sweep cell replay the
/// exact same frames (paired comparison).
std::uint64_t trial_seed(std::uint64_t base_seed, std::size_t snr_index,
                         std::size_t omega_index, std::size_t gain_index,
                         std::uint64_t trial_index);

/// The frame a given seed produces at one sweep cell.
cdma::Frame trial_frame(const ExperimentConfig& config, std::size_t gain,
                        double snr_db, std::uint64_t seed);

/// Score trials_per_point seeded frames with one detector at one grid cell.
/// snr_db, omega and gain must be members of the config's grid axes (their
/// indices feed the seed hash). A detector failure aborts the whole point
/// with a diagnostic naming the offending trial seed.
RatePoint run_point(const ExperimentConfig& config, double snr_db, double omega,
                    std::size_t gain, DetectorKind detector,
                    ExecutionMode mode = ExecutionMode::Parallel);

/// Run the full grid and write one CSV row per (detector, gain, omega, SNR),
/// sorted by that tuple, flushing after every row. Header:
/// detector,n,omega,snr_db,trials,gse,tar,far,true_active,false_active,
/// false_inactive,true_inactive,mean_nodes_visited. Rates with an empty
/// denominator serialize as empty fields; floats use 10 significant digits.
void run_sweep(const ExperimentConfig& config,
               ExecutionMode mode = ExecutionMode::Parallel);

struct RocSummary {
    std::size_t rows_written = 0;
    std::size_t rows_dropped = 0;  // sweep rows with a missing tar or far
};

/// Regroup a sweep CSV into ROC traces: columns omega,snr_db,far,tar, one
/// block per omega ascending, SNR ascending within a block. When the sweep
/// holds both detectors only the brcsmud rows are used; mixing spreading
/// gains in one ROC is refused.
RocSummary emit_roc(const std::string& csv_in, const std::string& csv_out);

/// %.10g, the float format used in every CSV this tool writes.
std::string format_double(double v);

/// Built-in oracle run: random small instances where the tree search must
/// match brute-force enumeration exactly, factorization identities, and a
/// few fixed known-answer cases. Logs one line per section; returns overall
/// pass/fail.
bool selftest(std::ostream& log);

}  // namespace brcsmud
