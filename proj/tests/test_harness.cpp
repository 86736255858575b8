#include <stdexcept>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>

#include <doctest.h>

#include "brcsmud/error.hpp"
#include "brcsmud/harness.hpp"

using namespace brcsmud;

namespace {

namespace fs = std::filesystem;

struct TempFile {
    fs::path path;
    explicit TempFile(const std::string& name) : path(fs::temp_directory_path() / name) {}
    ~TempFile() {
        std::error_code ec;
        fs::remove(path, ec);
    }
    std::string str() const { return path.string(); }
};

void write_file(const fs::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    out << text;
}

std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

ExperimentConfig tiny_config() {
    ExperimentConfig cfg;
    cfg.num_nodes = 5;
    cfg.channel_taps = 2;
    cfg.activity_prob = 0.2;
    cfg.spreading_gain_list = {3};
    cfg.snr_db_list = {10.0};
    cfg.omega_list = {1.0};
    cfg.trials_per_point = 20;
    cfg.base_seed = 99;
    return cfg;
}

}  // namespace

TEST_CASE("detector names round-trip") {
    CHECK(detector_name(DetectorKind::BrCsMud) == "brcsmud");
    CHECK(detector_name(DetectorKind::Bpdn) == "bpdn");
    CHECK(parse_detector("brcsmud") == DetectorKind::BrCsMud);
    CHECK(parse_detector("bpdn") == DetectorKind::Bpdn);
    CHECK_THROWS_AS(parse_detector("ml"), ConfigError);
}

TEST_CASE("comma list parsing") {
    auto reals = parse_real_list("0, 8,16");
    REQUIRE(reals.size() == 3);
    CHECK(reals[0] == 0.0);
    CHECK(reals[1] == 8.0);
    CHECK(reals[2] == 16.0);

    auto with_inf = parse_real_list("5,inf");
    CHECK(with_inf[1] == std::numeric_limits<double>::infinity());

    CHECK_THROWS_AS(parse_real_list("1,two"), ConfigError);
    CHECK_THROWS_AS(parse_real_list("1,,3"), ConfigError);

    auto gains = parse_gain_list("2,4,8");
    REQUIRE(gains.size() == 3);
    CHECK(gains[2] == 8);
    CHECK_THROWS_AS(parse_gain_list("0"), ConfigError);
    CHECK_THROWS_AS(parse_gain_list("-2"), ConfigError);
    CHECK_THROWS_AS(parse_gain_list("2.5"), ConfigError);

    auto kinds = parse_detector_list("bpdn, brcsmud");
    REQUIRE(kinds.size() == 2);
    CHECK(kinds[0] == DetectorKind::Bpdn);
    CHECK(kinds[1] == DetectorKind::BrCsMud);
}

TEST_CASE("config files parse with comments and overrides of every key") {
    TempFile tmp("brcsmud_test_config.txt");
    write_file(tmp.path,
               "# experiment description\n"
               "num_nodes = 8\n"
               "channel_taps = 3\n"
               "activity_prob = 0.25\n"
               "alphabet = -1,1\n"
               "omega_list = 0.1, 1, 10   # grid\n"
               "snr_db_list = 0, 20, inf\n"
               "spreading_gain_list = 2,4\n"
               "trials_per_point = 500\n"
               "base_seed = 1234\n"
               "detectors = brcsmud,bpdn\n"
               "reg_weight = auto\n"
               "max_iters = 250\n"
               "rel_tol = 1e-7\n"
               "quant_threshold = 0.4\n"
               "output_path = out.csv\n"
               "\n");
    ExperimentConfig cfg = load_config(tmp.str());
    CHECK(cfg.num_nodes == 8);
    CHECK(cfg.channel_taps == 3);
    CHECK(cfg.activity_prob == 0.25);
    REQUIRE(cfg.omega_list.size() == 3);
    CHECK(cfg.omega_list[2] == 10.0);
    REQUIRE(cfg.snr_db_list.size() == 3);
    CHECK(cfg.snr_db_list[2] == std::numeric_limits<double>::infinity());
    REQUIRE(cfg.spreading_gain_list.size() == 2);
    CHECK(cfg.trials_per_point == 500);
    CHECK(cfg.base_seed == 1234);
    REQUIRE(cfg.detectors.size() == 2);
    CHECK_FALSE(cfg.bpdn.reg_weight.has_value());
    CHECK(cfg.bpdn.max_iters == 250);
    CHECK(cfg.bpdn.rel_tol == 1e-7);
    CHECK(cfg.bpdn.quant_threshold == 0.4);
    CHECK(cfg.output_path == "out.csv");
    CHECK_NOTHROW(cfg.validate());
}

TEST_CASE("config parsing rejects malformed input") {
    TempFile tmp("brcsmud_bad_config.txt");

    write_file(tmp.path, "nodes = 8\n");
    CHECK_THROWS_AS(load_config(tmp.str()), ConfigError);

    write_file(tmp.path, "num_nodes 8\n");
    CHECK_THROWS_AS(load_config(tmp.str()), ConfigError);

    write_file(tmp.path, "num_nodes = 8\nnum_nodes = 9\n");
    CHECK_THROWS_AS(load_config(tmp.str()), ConfigError);

    write_file(tmp.path, "num_nodes = -3\n");
    CHECK_THROWS_AS(load_config(tmp.str()), ConfigError);

    write_file(tmp.path, "reg_weight = sometimes\n");
    CHECK_THROWS_AS(load_config(tmp.str()), ConfigError);

    CHECK_THROWS_AS(load_config("/nonexistent/brcsmud.cfg"), IoError);
}

TEST_CASE("explicit numeric reg_weight parses") {
    TempFile tmp("brcsmud_regweight_config.txt");
    write_file(tmp.path, "reg_weight = 0.125\n");
    ExperimentConfig cfg = load_config(tmp.str());
    REQUIRE(cfg.bpdn.reg_weight.has_value());
    CHECK(*cfg.bpdn.reg_weight == 0.125);
}

TEST_CASE("config validation catches bad field combinations") {
    ExperimentConfig cfg = tiny_config();
    CHECK_NOTHROW(cfg.validate());

    ExperimentConfig c1 = cfg;
    c1.omega_list = {};
    CHECK_THROWS_AS(c1.validate(), ConfigError);

    ExperimentConfig c2 = cfg;
    c2.omega_list = {1.0, 1.0};
    CHECK_THROWS_AS(c2.validate(), ConfigError);

    ExperimentConfig c3 = cfg;
    c3.omega_list = {-1.0};
    CHECK_THROWS_AS(c3.validate(), ConfigError);

    ExperimentConfig c4 = cfg;
    c4.activity_prob = 0.0;
    CHECK_THROWS_AS(c4.validate(), ConfigError);

    ExperimentConfig c5 = cfg;
    c5.detectors = {};
    CHECK_THROWS_AS(c5.validate(), ConfigError);

    ExperimentConfig c6 = cfg;
    c6.detectors = {DetectorKind::Bpdn, DetectorKind::Bpdn};
    CHECK_THROWS_AS(c6.validate(), ConfigError);

    ExperimentConfig c7 = cfg;
    c7.bpdn.quant_threshold = 1.0;
    CHECK_THROWS_AS(c7.validate(), ConfigError);

    ExperimentConfig c8 = cfg;
    c8.snr_db_list = {0.0, -std::numeric_limits<double>::infinity()};
    CHECK_THROWS_AS(c8.validate(), ConfigError);

    ExperimentConfig c9 = cfg;
    c9.alphabet_symbols = {0.5};
    CHECK_THROWS_AS(c9.validate(), ConfigError);
}

TEST_CASE("trial seeds separate every grid index") {
    const std::uint64_t s = trial_seed(1, 0, 0, 0, 0);
    CHECK(trial_seed(1, 0, 0, 0, 0) == s);
    CHECK(trial_seed(2, 0, 0, 0, 0) != s);
    CHECK(trial_seed(1, 1, 0, 0, 0) != s);
    CHECK(trial_seed(1, 0, 1, 0, 0) != s);
    CHECK(trial_seed(1, 0, 0, 1, 0) != s);
    CHECK(trial_seed(1, 0, 0, 0, 1) != s);
    // swapped indices must not collide
    CHECK(trial_seed(1, 2, 3, 0, 0) != trial_seed(1, 3, 2, 0, 0));
}

TEST_CASE("one seed reproduces one frame") {
    ExperimentConfig cfg = tiny_config();
    const std::uint64_t seed = trial_seed(cfg.base_seed, 0, 0, 0, 7);
    cdma::Frame a = trial_frame(cfg, 3, 10.0, seed);
    cdma::Frame b = trial_frame(cfg, 3, 10.0, seed);
    CHECK(a.system.matrix() == b.system.matrix());
    CHECK(a.system.observation() == b.system.observation());
    CHECK(a.x_true == b.x_true);
}

TEST_CASE("run_point is deterministic") {
    ExperimentConfig cfg = tiny_config();
    cfg.trials_per_point = 5;
    RatePoint a = run_point(cfg, 10.0, 1.0, 3, DetectorKind::BrCsMud, ExecutionMode::Serial);
    RatePoint b = run_point(cfg, 10.0, 1.0, 3, DetectorKind::BrCsMud, ExecutionMode::Serial);
    CHECK(a.gse == b.gse);
    CHECK(a.tar == b.tar);
    CHECK(a.far == b.far);
    CHECK(a.confusion.true_active == b.confusion.true_active);
    CHECK(a.mean_nodes_visited == b.mean_nodes_visited);
    CHECK(a.trials == 5);
}

TEST_CASE("run_point parallel equals serial") {
    ExperimentConfig cfg = tiny_config();
    cfg.trials_per_point = 200;
    RatePoint s = run_point(cfg, 10.0, 1.0, 3, DetectorKind::BrCsMud, ExecutionMode::Serial);
    RatePoint p = run_point(cfg, 10.0, 1.0, 3, DetectorKind::BrCsMud, ExecutionMode::Parallel);
    CHECK(s.gse == p.gse);
    CHECK(s.tar == p.tar);
    CHECK(s.far == p.far);
    CHECK(s.confusion.true_active == p.confusion.true_active);
    CHECK(s.confusion.false_active == p.confusion.false_active);
    CHECK(s.confusion.false_inactive == p.confusion.false_inactive);
    CHECK(s.confusion.true_inactive == p.confusion.true_inactive);
    CHECK(s.mean_nodes_visited == p.mean_nodes_visited);
}

TEST_CASE("noise-free over-determined recovery is exact") {
    ExperimentConfig cfg;
    cfg.num_nodes = 4;
    cfg.channel_taps = 4;
    cfg.activity_prob = 0.2;
    cfg.spreading_gain_list = {4};  // M = 7 >= K = 4
    cfg.snr_db_list = {std::numeric_limits<double>::infinity()};
    cfg.omega_list = {1.0};
    cfg.trials_per_point = 50;
    cfg.base_seed = 3;
    RatePoint p = run_point(cfg, std::numeric_limits<double>::infinity(), 1.0, 4,
                            DetectorKind::BrCsMud, ExecutionMode::Serial);
    CHECK(p.gse == 0.0);
    if (p.tar) {
        CHECK(*p.tar == 1.0);
    }
    if (p.far) {
        CHECK(*p.far == 0.0);
    }
}

TEST_CASE("both detectors at a cell score the same frames") {
    ExperimentConfig cfg = tiny_config();
    cfg.trials_per_point = 1;
    cfg.detectors = {DetectorKind::BrCsMud, DetectorKind::Bpdn};
    RatePoint mud = run_point(cfg, 10.0, 1.0, 3, DetectorKind::BrCsMud, ExecutionMode::Serial);
    RatePoint bp = run_point(cfg, 10.0, 1.0, 3, DetectorKind::Bpdn, ExecutionMode::Serial);

    // with a single trial the truly-active count pins the frame identity
    const cdma::Frame frame =
        trial_frame(cfg, 3, 10.0, trial_seed(cfg.base_seed, 0, 0, 0, 0));
    std::uint64_t active = 0;
    for (std::size_t i = 0; i < frame.x_true.size(); ++i) {
        active += frame.x_true[i] != 0.0;
    }
    CHECK(mud.confusion.true_active + mud.confusion.false_inactive == active);
    CHECK(bp.confusion.true_active + bp.confusion.false_inactive == active);
}

TEST_CASE("run_point rejects values off the configured grid") {
    ExperimentConfig cfg = tiny_config();
    CHECK_THROWS_AS(run_point(cfg, 11.0, 1.0, 3, DetectorKind::BrCsMud, ExecutionMode::Serial),
                    ConfigError);
    CHECK_THROWS_AS(run_point(cfg, 10.0, 2.0, 3, DetectorKind::BrCsMud, ExecutionMode::Serial),
                    ConfigError);
    CHECK_THROWS_AS(run_point(cfg, 10.0, 1.0, 5, DetectorKind::BrCsMud, ExecutionMode::Serial),
                    ConfigError);
}

TEST_CASE("float formatting is pinned to ten significant digits") {
    CHECK(format_double(0.0) == "0");
    CHECK(format_double(0.1234567890123) == "0.123456789");
    CHECK(format_double(12345678901.0) == "1.23456789e+10");
    CHECK(format_double(std::numeric_limits<double>::infinity()) == "inf");
    CHECK(format_double(0.5) == "0.5");
}

TEST_CASE("run_sweep writes an ordered deterministic CSV") {
    TempFile out("brcsmud_sweep_test.csv");
    ExperimentConfig cfg = tiny_config();
    cfg.trials_per_point = 10;
    cfg.snr_db_list = {20.0, 0.0};  // deliberately unsorted
    cfg.detectors = {DetectorKind::BrCsMud, DetectorKind::Bpdn};
    cfg.output_path = out.str();

    run_sweep(cfg, ExecutionMode::Serial);
    const std::string first = read_file(out.path);
    run_sweep(cfg, ExecutionMode::Serial);
    const std::string second = read_file(out.path);
    CHECK(first == second);

    std::istringstream lines(first);
    std::string line;
    REQUIRE(std::getline(lines, line));
    CHECK(line ==
          "detector,n,omega,snr_db,trials,gse,tar,far,true_active,false_active,"
          "false_inactive,true_inactive,mean_nodes_visited");

    std::vector<std::string> rows;
    while (std::getline(lines, line)) {
        if (!line.empty()) {
            rows.push_back(line);
        }
    }
    REQUIRE(rows.size() == 4);  // 2 detectors x 1 gain x 1 omega x 2 snrs
    CHECK(rows[0].rfind("bpdn,3,1,0,", 0) == 0);
    CHECK(rows[1].rfind("bpdn,3,1,20,", 0) == 0);
    CHECK(rows[2].rfind("brcsmud,3,1,0,", 0) == 0);
    CHECK(rows[3].rfind("brcsmud,3,1,20,", 0) == 0);

    for (const std::string& row : rows) {
        std::size_t commas = 0;
        for (char ch : row) {
            commas += ch == ',';
        }
        CHECK(commas == 12);
    }
}

TEST_CASE("run_sweep refuses an unwritable path") {
    ExperimentConfig cfg = tiny_config();
    cfg.trials_per_point = 1;
    cfg.output_path = "/nonexistent-dir/sweep.csv";
    CHECK_THROWS_AS(run_sweep(cfg, ExecutionMode::Serial), IoError);
}

TEST_CASE("roc regroups sweep rows by omega then snr") {
    TempFile sweep("brcsmud_roc_in.csv");
    TempFile roc("brcsmud_roc_out.csv");
    ExperimentConfig cfg = tiny_config();
    cfg.trials_per_point = 10;
    cfg.omega_list = {10.0, 0.1};
    cfg.snr_db_list = {15.0, 0.0};
    cfg.detectors = {DetectorKind::BrCsMud, DetectorKind::Bpdn};
    cfg.output_path = sweep.str();
    run_sweep(cfg, ExecutionMode::Serial);

    RocSummary summary = emit_roc(sweep.str(), roc.str());
    CHECK(summary.rows_written == 4);  // brcsmud rows only

    std::istringstream lines(read_file(roc.path));
    std::string line;
    REQUIRE(std::getline(lines, line));
    CHECK(line == "omega,snr_db,far,tar");
    std::vector<std::string> rows;
    while (std::getline(lines, line)) {
        if (!line.empty()) {
            rows.push_back(line);
        }
    }
    REQUIRE(rows.size() == 4);
    CHECK(rows[0].rfind("0.1,0,", 0) == 0);
    CHECK(rows[1].rfind("0.1,15,", 0) == 0);
    CHECK(rows[2].rfind("10,0,", 0) == 0);
    CHECK(rows[3].rfind("10,15,", 0) == 0);
}

TEST_CASE("roc drops rows with missing rates and reports the count") {
    TempFile sweep("brcsmud_roc_missing.csv");
    TempFile roc("brcsmud_roc_missing_out.csv");
    write_file(sweep.path,
               "detector,n,omega,snr_db,trials,gse,tar,far,true_active,false_active,"
               "false_inactive,true_inactive,mean_nodes_visited\n"
               "brcsmud,4,1,0,10,0.5,,0.25,0,0,0,30,100\n"
               "brcsmud,4,1,10,10,0.1,0.9,0.05,9,1,1,29,90\n");
    RocSummary summary = emit_roc(sweep.str(), roc.str());
    CHECK(summary.rows_written == 1);
    CHECK(summary.rows_dropped == 1);
    const std::string text = read_file(roc.path);
    CHECK(text == "omega,snr_db,far,tar\n1,10,0.05,0.9\n");
}

TEST_CASE("roc refuses mixed spreading gains and foreign headers") {
    TempFile sweep("brcsmud_roc_bad.csv");
    TempFile roc("brcsmud_roc_bad_out.csv");
    write_file(sweep.path,
               "detector,n,omega,snr_db,trials,gse,tar,far,true_active,false_active,"
               "false_inactive,true_inactive,mean_nodes_visited\n"
               "brcsmud,2,1,0,10,0.5,0.5,0.25,5,5,5,5,100\n"
               "brcsmud,4,1,0,10,0.5,0.5,0.25,5,5,5,5,100\n");
    CHECK_THROWS_AS(emit_roc(sweep.str(), roc.str()), ConfigError);

    write_file(sweep.path, "omega,snr_db,far,tar\n");
    CHECK_THROWS_AS(emit_roc(sweep.str(), roc.str()), IoError);

    CHECK_THROWS_AS(emit_roc("/nonexistent/sweep.csv", roc.str()), IoError);
}
