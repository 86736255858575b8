#include "brcsmud/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <random>
#include <set>
#include <string_view>

#include "brcsmud/bpdn.hpp"
#include "brcsmud/detector.hpp"
#include "brcsmud/error.hpp"

namespace brcsmud {

namespace {

constexpr std::string_view kSweepHeader =
    "detector,n,omega,snr_db,trials,gse,tar,far,true_active,false_active,"
    "false_inactive,true_inactive,mean_nodes_visited";

std::string trim(std::string_view s) {
    const std::string_view ws = " \t\r\n";
    const auto begin = s.find_first_not_of(ws);
    if (begin == std::string_view::npos) {
        return {};
    }
    const auto end = s.find_last_not_of(ws);
    return std::string(s.substr(begin, end - begin + 1));
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = text.find(sep, start);
        if (pos == std::string::npos) {
            parts.push_back(text.substr(start));
            return parts;
        }
        parts.push_back(text.substr(start, pos - start));
        start = pos + 1;
    }
}

double parse_real(const std::string& text, const std::string& what) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(text, &pos);
        if (pos != text.size() || std::isnan(v)) {
            throw std::invalid_argument("bad real");
        }
        return v;
    } catch (const std::exception&) {
        throw ConfigError(what + ": cannot parse '" + text + "' as a real number");
    }
}

std::uint64_t parse_u64(const std::string& text, const std::string& what) {
    if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos) {
        throw ConfigError(what + ": cannot parse '" + text + "' as an unsigned integer");
    }
    try {
        return std::stoull(text);
    } catch (const std::exception&) {
        throw ConfigError(what + ": '" + text + "' is out of range");
    }
}

std::size_t parse_positive_size(const std::string& text, const std::string& what) {
    const std::uint64_t v = parse_u64(text, what);
    if (v == 0 || v > std::numeric_limits<std::size_t>::max()) {
        throw ConfigError(what + ": must be a positive integer, got '" + text + "'");
    }
    return static_cast<std::size_t>(v);
}

template <typename T>
std::size_t index_of(const std::vector<T>& list, T value, const char* axis) {
    for (std::size_t i = 0; i < list.size(); ++i) {
        if (list[i] == value) {
            return i;
        }
    }
    throw ConfigError(std::string("run_point: requested ") + axis +
                      " value is not on the configured grid");
}

std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

void require(bool cond, const std::string& message) {
    if (!cond) {
        throw ConfigError(message);
    }
}

template <typename T>
bool all_distinct(const std::vector<T>& values) {
    for (std::size_t i = 0; i < values.size(); ++i) {
        for (std::size_t j = i + 1; j < values.size(); ++j) {
            if (values[i] == values[j]) {
                return false;
            }
        }
    }
    return true;
}

}  // namespace

std::string detector_name(DetectorKind kind) {
    switch (kind) {
        case DetectorKind::BrCsMud: return "brcsmud";
        case DetectorKind::Bpdn: return "bpdn";
    }
    throw InternalError("detector_name: unhandled detector kind");
}

DetectorKind parse_detector(const std::string& name) {
    if (name == "brcsmud") {
        return DetectorKind::BrCsMud;
    }
    if (name == "bpdn") {
        return DetectorKind::Bpdn;
    }
    throw ConfigError("unknown detector '" + name + "' (expected brcsmud or bpdn)");
}

std::vector<double> parse_real_list(const std::string& text) {
    std::vector<double> values;
    for (const std::string& part : split(text, ',')) {
        values.push_back(parse_real(trim(part), "list element"));
    }
    return values;
}

std::vector<std::size_t> parse_gain_list(const std::string& text) {
    std::vector<std::size_t> values;
    for (const std::string& part : split(text, ',')) {
        values.push_back(parse_positive_size(trim(part), "list element"));
    }
    return values;
}

std::vector<DetectorKind> parse_detector_list(const std::string& text) {
    std::vector<DetectorKind> kinds;
    for (const std::string& part : split(text, ',')) {
        kinds.push_back(parse_detector(trim(part)));
    }
    return kinds;
}

void ExperimentConfig::validate() const {
    require(num_nodes >= 1, "num_nodes must be >= 1");
    require(channel_taps >= 1, "channel_taps must be >= 1");
    require(activity_prob > 0.0 && activity_prob < 1.0,
            "activity_prob must lie strictly in (0,1)");
    try {
        AugmentedAlphabet check(alphabet_symbols);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("alphabet: ") + e.what());
    }

    require(!omega_list.empty(), "omega_list must be nonempty");
    for (double w : omega_list) {
        require(w > 0.0, "omega values must be positive");
    }
    require(!snr_db_list.empty(), "snr_db_list must be nonempty");
    for (double s : snr_db_list) {
        require(!std::isnan(s) && s != -std::numeric_limits<double>::infinity(),
                "snr_db values must be finite or +inf");
    }
    require(!spreading_gain_list.empty(), "spreading_gain_list must be nonempty");
    for (std::size_t n : spreading_gain_list) {
        require(n >= 1, "spreading gains must be >= 1");
    }
    require(all_distinct(omega_list), "omega_list holds a duplicate value");
    require(all_distinct(snr_db_list), "snr_db_list holds a duplicate value");
    require(all_distinct(spreading_gain_list), "spreading_gain_list holds a duplicate value");

    require(trials_per_point >= 1, "trials_per_point must be >= 1");
    require(!detectors.empty(), "detectors must be nonempty");
    require(all_distinct(detectors), "detectors holds a duplicate entry");

    if (bpdn.reg_weight) {
        require(*bpdn.reg_weight > 0.0, "reg_weight must be positive (or auto)");
    }
    require(bpdn.max_iters >= 1, "max_iters must be >= 1");
    require(bpdn.rel_tol > 0.0, "rel_tol must be positive");
    require(bpdn.quant_threshold > 0.0 && bpdn.quant_threshold < 1.0,
            "quant_threshold must lie strictly in (0,1)");
    require(!output_path.empty(), "output_path must be nonempty");
}

namespace {

void apply_config_key(ExperimentConfig& cfg, const std::string& key,
                      const std::string& value, int lineno) {
    const std::string where = "config line " + std::to_string(lineno) + " (" + key + ")";
    if (key == "num_nodes") {
        cfg.num_nodes = parse_positive_size(value, where);
    } else if (key == "channel_taps") {
        cfg.channel_taps = parse_positive_size(value, where);
    } else if (key == "activity_prob") {
        cfg.activity_prob = parse_real(value, where);
    } else if (key == "alphabet") {
        cfg.alphabet_symbols = parse_real_list(value);
    } else if (key == "omega_list") {
        cfg.omega_list = parse_real_list(value);
    } else if (key == "snr_db_list") {
        cfg.snr_db_list = parse_real_list(value);
    } else if (key == "spreading_gain_list") {
        cfg.spreading_gain_list = parse_gain_list(value);
    } else if (key == "trials_per_point") {
        cfg.trials_per_point = parse_u64(value, where);
    } else if (key == "base_seed") {
        cfg.base_seed = parse_u64(value, where);
    } else if (key == "detectors") {
        cfg.detectors = parse_detector_list(value);
    } else if (key == "reg_weight") {
        if (value == "auto") {
            cfg.bpdn.reg_weight.reset();
        } else {
            cfg.bpdn.reg_weight = parse_real(value, where);
        }
    } else if (key == "max_iters") {
        const std::size_t v = parse_positive_size(value, where);
        if (v > static_cast<std::size_t>(std::numeric_limits<int>::max())) {
            throw ConfigError(where + ": value too large");
        }
        cfg.bpdn.max_iters = static_cast<int>(v);
    } else if (key == "rel_tol") {
        cfg.bpdn.rel_tol = parse_real(value, where);
    } else if (key == "quant_threshold") {
        cfg.bpdn.quant_threshold = parse_real(value, where);
    } else if (key == "output_path") {
        cfg.output_path = value;
    } else {
        throw ConfigError("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
}

}  // namespace

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open config file '" + path + "'");
    }
    ExperimentConfig cfg;
    std::set<std::string> seen;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) {
            line.resize(hash);
        }
        const std::string stripped = trim(line);
        if (stripped.empty()) {
            continue;
        }
        const std::size_t eq = stripped.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("config line " + std::to_string(lineno) + ": expected key=value");
        }
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        if (key.empty()) {
            throw ConfigError("config line " + std::to_string(lineno) + ": empty key");
        }
        if (!seen.insert(key).second) {
            throw ConfigError("config line " + std::to_string(lineno) + ": key '" + key +
                              "' appears twice");
        }
        apply_config_key(cfg, key, value, lineno);
    }
    return cfg;
}

std::uint64_t trial_seed(std::uint64_t base_seed, std::size_t snr_index,
                         std::size_t omega_index, std::size_t gain_index,
                         std::uint64_t trial_index) {
    // Salted index chain; distinct salts keep permuted index tuples from
    // colliding.
    std::uint64_t h = mix64(base_seed);
    h = mix64(h ^ (0x510e527fade682d1ULL + snr_index));
    h = mix64(h ^ (0x9b05688c2b3e6c1fULL + omega_index));
    h = mix64(h ^ (0x1f83d9abfb41bd6bULL + gain_index));
    h = mix64(h ^ (0x5be0cd19137e2179ULL + trial_index));
    return h;
}

cdma::Frame trial_frame(const ExperimentConfig& config, std::size_t gain,
                        double snr_db, std::uint64_t seed) {
    const cdma::CdmaConfig cell{config.num_nodes, gain, config.channel_taps,
                                config.activity_prob, snr_db,
                                AugmentedAlphabet(config.alphabet_symbols)};
    std::mt19937_64 rng(seed);
    return cdma::draw_frame(rng, cell);
}

RatePoint run_point(const ExperimentConfig& config, double snr_db, double omega,
                    std::size_t gain, DetectorKind detector, ExecutionMode mode) {
    config.validate();
    const std::size_t snr_index = index_of(config.snr_db_list, snr_db, "snr_db");
    const std::size_t omega_index = index_of(config.omega_list, omega, "omega");
    const std::size_t gain_index = index_of(config.spreading_gain_list, gain, "spreading gain");

    const AugmentedAlphabet alphabet(config.alphabet_symbols);
    const cdma::CdmaConfig cell{config.num_nodes, gain, config.channel_taps,
                                config.activity_prob, snr_db, alphabet};
    const double noise_var = snr_db == std::numeric_limits<double>::infinity()
                                 ? 0.0
                                 : std::pow(10.0, -snr_db / 10.0);
    const double auto_gamma =
        std::sqrt(noise_var) * std::sqrt(2.0 * std::log(static_cast<double>(config.num_nodes)));
    const double gamma =
        config.bpdn.reg_weight ? *config.bpdn.reg_weight : std::max(1e-12, auto_gamma);
    const BpdnConfig bpdn_config{gamma, config.bpdn.max_iters, config.bpdn.rel_tol,
                                 config.bpdn.quant_threshold};

    auto run_trial = [&](std::uint64_t t) -> TrialScore {
        std::mt19937_64 rng(
            trial_seed(config.base_seed, snr_index, omega_index, gain_index, t));
        const cdma::Frame frame = cdma::draw_frame(rng, cell);

        SymbolVector x_hat;
        std::uint64_t nodes = 0;
        if (detector == DetectorKind::BrCsMud) {
            const DetectionParams params(config.activity_prob, frame.noise_var, omega, alphabet);
            DetectionResult result = detect(frame.system, params);
            x_hat = std::move(result.x_hat);
            nodes = result.nodes_visited;
        } else {
            const Vector relaxed = bpdn_solve(frame.system, bpdn_config);
            x_hat = quantize(relaxed, alphabet, config.bpdn.quant_threshold);
        }

        TrialScore score;
        score.confusion = score_confusion(frame.x_true, x_hat);
        score.symbols = frame.x_true.size();
        for (std::size_t i = 0; i < frame.x_true.size(); ++i) {
            if (frame.x_true[i] != x_hat[i]) {
                ++score.symbol_errors;
            }
        }
        score.nodes_visited = nodes;
        return score;
    };

    std::vector<TrialScore> scores(config.trials_per_point);
    std::atomic<bool> failed{false};
    std::string failure;

    auto guarded = [&](std::uint64_t t) {
        if (failed.load(std::memory_order_relaxed)) {
            return;
        }
        try {
            scores[static_cast<std::size_t>(t)] = run_trial(t);
        } catch (const std::exception& e) {
            bool expected = false;
            if (failed.compare_exchange_strong(expected, true)) {
                failure = "detector '" + detector_name(detector) + "' failed at trial seed " +
                          std::to_string(trial_seed(config.base_seed, snr_index, omega_index,
                                                    gain_index, t)) +
                          ": " + e.what();
            }
        }
    };

#ifdef _OPENMP
    if (mode == ExecutionMode::Parallel) {
        const long long n = static_cast<long long>(config.trials_per_point);
#pragma omp parallel for schedule(dynamic)
        for (long long t = 0; t < n; ++t) {
            guarded(static_cast<std::uint64_t>(t));
        }
    } else
#else
    (void)mode;
#endif
    {
        for (std::uint64_t t = 0; t < config.trials_per_point; ++t) {
            guarded(t);
        }
    }

    if (failed.load()) {
        throw InternalError(failure);
    }
    return aggregate(scores, snr_db, omega);
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

void run_sweep(const ExperimentConfig& config, ExecutionMode mode) {
    config.validate();
    std::ofstream out(config.output_path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("run_sweep: cannot open '" + config.output_path + "' for writing");
    }
    out << kSweepHeader << '\n' << std::flush;

    std::vector<DetectorKind> detectors = config.detectors;
    std::sort(detectors.begin(), detectors.end(), [](DetectorKind a, DetectorKind b) {
        return detector_name(a) < detector_name(b);
    });
    std::vector<std::size_t> gains = config.spreading_gain_list;
    std::sort(gains.begin(), gains.end());
    std::vector<double> omegas = config.omega_list;
    std::sort(omegas.begin(), omegas.end());
    std::vector<double> snrs = config.snr_db_list;
    std::sort(snrs.begin(), snrs.end());

    for (DetectorKind det : detectors) {
        for (std::size_t n : gains) {
            for (double omega : omegas) {
                for (double snr : snrs) {
                    const RatePoint p = run_point(config, snr, omega, n, det, mode);
                    out << detector_name(det) << ',' << n << ',' << format_double(p.omega)
                        << ',' << format_double(p.snr_db) << ',' << p.trials << ','
                        << format_double(p.gse) << ','
                        << (p.tar ? format_double(*p.tar) : std::string()) << ','
                        << (p.far ? format_double(*p.far) : std::string()) << ','
                        << p.confusion.true_active << ',' << p.confusion.false_active << ','
                        << p.confusion.false_inactive << ',' << p.confusion.true_inactive
                        << ',' << format_double(p.mean_nodes_visited) << '\n'
                        << std::flush;
                    if (!out) {
                        throw IoError("run_sweep: write failed on '" + config.output_path + "'");
                    }
                }
            }
        }
    }
}

RocSummary emit_roc(const std::string& csv_in, const std::string& csv_out) {
    std::ifstream in(csv_in, std::ios::binary);
    if (!in) {
        throw IoError("emit_roc: cannot open '" + csv_in + "'");
    }

    auto parse_field = [&](const std::string& text, int lineno) {
        try {
            std::size_t pos = 0;
            const double v = std::stod(text, &pos);
            if (pos != text.size() || std::isnan(v)) {
                throw std::invalid_argument("bad real");
            }
            return v;
        } catch (const std::exception&) {
            throw IoError("emit_roc: " + csv_in + " line " + std::to_string(lineno) +
                          ": bad numeric field '" + text + "'");
        }
    };

    std::string line;
    if (!std::getline(in, line)) {
        throw IoError("emit_roc: '" + csv_in + "' is empty");
    }
    if (trim(line) != kSweepHeader) {
        throw IoError("emit_roc: '" + csv_in + "' does not start with the sweep header");
    }

    struct Row {
        std::string detector;
        std::string gain_text;
        std::string omega_text;
        std::string snr_text;
        std::string tar_text;
        std::string far_text;
        double omega;
        double snr;
        bool missing;
    };
    std::vector<Row> rows;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (trim(line).empty()) {
            continue;
        }
        const std::vector<std::string> f = split(trim(line), ',');
        if (f.size() != 13) {
            throw IoError("emit_roc: " + csv_in + " line " + std::to_string(lineno) +
                          ": expected 13 fields, got " + std::to_string(f.size()));
        }
        Row r;
        r.detector = f[0];
        r.gain_text = f[1];
        r.omega_text = f[2];
        r.snr_text = f[3];
        r.tar_text = f[6];
        r.far_text = f[7];
        r.omega = parse_field(f[2], lineno);
        r.snr = parse_field(f[3], lineno);
        r.missing = r.tar_text.empty() || r.far_text.empty();
        rows.push_back(std::move(r));
    }

    std::set<std::string> detectors;
    for (const Row& r : rows) {
        detectors.insert(r.detector);
    }
    if (detectors.size() > 1) {
        if (detectors.count("brcsmud") == 0) {
            throw ConfigError("emit_roc: several detectors present but none named brcsmud");
        }
        std::erase_if(rows, [](const Row& r) { return r.detector != "brcsmud"; });
    }

    std::set<std::string> gains;
    for (const Row& r : rows) {
        gains.insert(r.gain_text);
    }
    if (gains.size() > 1) {
        throw ConfigError(
            "emit_roc: input mixes spreading gains; build one ROC per gain");
    }

    RocSummary summary;
    std::vector<Row> kept;
    for (Row& r : rows) {
        if (r.missing) {
            ++summary.rows_dropped;
        } else {
            kept.push_back(std::move(r));
        }
    }
    std::stable_sort(kept.begin(), kept.end(), [](const Row& a, const Row& b) {
        if (a.omega != b.omega) {
            return a.omega < b.omega;
        }
        return a.snr < b.snr;
    });

    std::ofstream out(csv_out, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("emit_roc: cannot open '" + csv_out + "' for writing");
    }
    out << "omega,snr_db,far,tar\n";
    for (const Row& r : kept) {
        out << r.omega_text << ',' << r.snr_text << ',' << r.far_text << ',' << r.tar_text
            << '\n';
    }
    out.flush();
    if (!out) {
        throw IoError("emit_roc: write failed on '" + csv_out + "'");
    }
    summary.rows_written = kept.size();
    return summary;
}

bool selftest(std::ostream& log) {
    bool all_ok = true;

    {
        std::mt19937_64 rng(0x5e1f7e5701ULL);
        const AugmentedAlphabet alphabet = AugmentedAlphabet::bpsk();
        const double omegas[] = {0.01, 0.1, 1.0, 10.0, 100.0};
        const double noise_vars[] = {1.0, 0.25, 0.04};
        const int total = 300;
        int matched = 0;
        std::normal_distribution<double> gauss(0.0, 1.0);
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        for (int i = 0; i < total; ++i) {
            const std::size_t k = 2 + static_cast<std::size_t>(rng() % 4);
            const std::size_t lo = k > 2 ? k - 2 : 1;
            const std::size_t hi = k + 2;
            const std::size_t m = lo + static_cast<std::size_t>(rng() % (hi - lo + 1));
            Matrix t(m, k);
            for (std::size_t r = 0; r < m; ++r) {
                for (std::size_t c = 0; c < k; ++c) {
                    t(r, c) = gauss(rng);
                }
            }
            Vector x(k, 0.0);
            for (std::size_t j = 0; j < k; ++j) {
                if (unit(rng) < 0.3) {
                    x[j] = unit(rng) < 0.5 ? -1.0 : 1.0;
                }
            }
            const double noise_var = noise_vars[i % 3];
            Vector y = matvec(t, x);
            std::normal_distribution<double> noise(0.0, std::sqrt(noise_var));
            for (double& v : y) {
                v += noise(rng);
            }
            const LinearSystem system(std::move(t), std::move(y));
            const DetectionParams params(0.2, noise_var, omegas[i % 5], alphabet);
            const DetectionResult fast = detect(system, params);
            const DetectionResult slow = exhaustive_detect(system, params);
            if (std::abs(fast.objective_value - slow.objective_value) <= 1e-9 &&
                fast.x_hat == slow.x_hat) {
                ++matched;
            }
        }
        log << "selftest: tree search vs enumeration: " << matched << "/" << total
            << " matched\n";
        if (matched != total) {
            all_ok = false;
        }
    }

    {
        std::mt19937_64 rng(0xfac702ULL);
        const AugmentedAlphabet alphabet = AugmentedAlphabet::bpsk();
        std::normal_distribution<double> gauss(0.0, 1.0);
        std::uniform_int_distribution<std::size_t> pick_rank(0, 2);
        const int total = 50;
        int passed = 0;
        for (int i = 0; i < total; ++i) {
            const std::size_t k = 2 + static_cast<std::size_t>(rng() % 5);
            const std::size_t m = 1 + static_cast<std::size_t>(rng() % (k + 2));
            Matrix t(m, k);
            for (std::size_t r = 0; r < m; ++r) {
                for (std::size_t c = 0; c < k; ++c) {
                    t(r, c) = gauss(rng);
                }
            }
            Vector y(m);
            for (double& v : y) {
                v = gauss(rng);
            }
            const LinearSystem system(std::move(t), std::move(y));
            const DetectionParams params(0.2, 0.5, 1.0, alphabet);
            const AugmentedSystem aug = augment(system, params);
            const QrFactors qr = skinny_qr(aug.matrix());

            double max_ortho = 0.0;
            for (std::size_t a = 0; a < k; ++a) {
                for (std::size_t b = 0; b < k; ++b) {
                    double s = 0.0;
                    for (std::size_t r = 0; r < aug.matrix().rows(); ++r) {
                        s += qr.q(r, a) * qr.q(r, b);
                    }
                    max_ortho = std::max(max_ortho, std::abs(s - (a == b ? 1.0 : 0.0)));
                }
            }
            double max_recon = 0.0;
            for (std::size_t r = 0; r < aug.matrix().rows(); ++r) {
                for (std::size_t c = 0; c < k; ++c) {
                    double s = 0.0;
                    for (std::size_t j = 0; j < k; ++j) {
                        s += qr.q(r, j) * qr.r(j, c);
                    }
                    max_recon = std::max(max_recon, std::abs(s - aug.matrix()(r, c)));
                }
            }

            const TriangularizedSystem tri = factorize(aug);
            Vector cand(k);
            for (double& v : cand) {
                v = alphabet.enumeration()[pick_rank(rng)];
            }
            double direct = 0.0;
            for (std::size_t r = 0; r < aug.matrix().rows(); ++r) {
                const double resid = aug.observation()[r] - dot(aug.matrix().row(r), cand);
                direct += resid * resid;
            }
            double reduced = tri.residual_const;
            for (std::size_t r = 0; r < k; ++r) {
                double s = tri.y_tilde[r];
                for (std::size_t c = r; c < k; ++c) {
                    s -= tri.r(r, c) * cand[c];
                }
                reduced += s * s;
            }
            const double split_err = std::abs(direct - reduced) / std::max(1.0, direct);
            if (max_ortho < 1e-10 && max_recon < 1e-10 && split_err < 1e-9) {
                ++passed;
            }
        }
        log << "selftest: factorization identities: " << passed << "/" << total << " held\n";
        if (passed != total) {
            all_ok = false;
        }
    }

    {
        const AugmentedAlphabet alphabet = AugmentedAlphabet::bpsk();
        bool section = true;

        const DetectionParams reference(0.2, 0.5, 1.0, alphabet);
        section &= std::abs(penalty_lambda(reference) - std::log(8.0)) <= 1e-12;

        Matrix eye(2, 2);
        eye(0, 0) = eye(1, 1) = 1.0;
        const LinearSystem diag_system(eye, Vector{0.9, 0.1});

        const DetectionParams conservative(0.2, 0.25, 1.0, alphabet);
        const DetectionResult hold = detect(diag_system, conservative);
        section &= hold.x_hat == SymbolVector(alphabet, {0.0, 0.0});

        const DetectionParams liberal(0.2, 0.25, 0.01, alphabet);
        const DetectionResult fire = detect(diag_system, liberal);
        section &= fire.x_hat == SymbolVector(alphabet, {1.0, 1.0});

        log << "selftest: fixed known answers: " << (section ? "pass" : "FAIL") << "\n";
        all_ok = all_ok && section;
    }

    log << "selftest: " << (all_ok ? "PASS" : "FAIL") << "\n";
    return all_ok;
}

}  // namespace brcsmud
