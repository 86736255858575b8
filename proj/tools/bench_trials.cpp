// Times one sweep point with the trial loop on a single thread and on the
// OpenMP pool, checks the two aggregates agree exactly, and prints the
// speedup.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "brcsmud/harness.hpp"

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

bool same_point(const brcsmud::RatePoint& a, const brcsmud::RatePoint& b) {
    return a.gse == b.gse && a.tar == b.tar && a.far == b.far &&
           a.confusion.true_active == b.confusion.true_active &&
           a.confusion.false_active == b.confusion.false_active &&
           a.confusion.false_inactive == b.confusion.false_inactive &&
           a.confusion.true_inactive == b.confusion.true_inactive &&
           a.mean_nodes_visited == b.mean_nodes_visited;
}

}  // namespace

int main(int argc, char** argv) {
    std::uint64_t trials = 2000;
    if (argc > 1) {
        trials = std::strtoull(argv[1], nullptr, 10);
    }

    brcsmud::ExperimentConfig cfg;
    cfg.num_nodes = 12;
    cfg.channel_taps = 4;
    cfg.activity_prob = 0.2;
    cfg.spreading_gain_list = {4};
    cfg.snr_db_list = {16.0};
    cfg.omega_list = {1.0};
    cfg.trials_per_point = trials;
    cfg.base_seed = 7;

#ifdef _OPENMP
    std::printf("threads available: %d\n", omp_get_max_threads());
#else
    std::printf("built without OpenMP; both runs are serial\n");
#endif
    std::printf("point: K=%zu N=4 L_h=4 snr=16dB omega=1, %llu trials\n", cfg.num_nodes,
                static_cast<unsigned long long>(trials));

    auto t0 = std::chrono::steady_clock::now();
    const brcsmud::RatePoint serial =
        brcsmud::run_point(cfg, 16.0, 1.0, 4, brcsmud::DetectorKind::BrCsMud,
                           brcsmud::ExecutionMode::Serial);
    const double serial_s = seconds_since(t0);

    t0 = std::chrono::steady_clock::now();
    const brcsmud::RatePoint parallel =
        brcsmud::run_point(cfg, 16.0, 1.0, 4, brcsmud::DetectorKind::BrCsMud,
                           brcsmud::ExecutionMode::Parallel);
    const double parallel_s = seconds_since(t0);

    std::printf("serial:   %8.3f s\n", serial_s);
    std::printf("parallel: %8.3f s\n", parallel_s);
    std::printf("speedup:  %8.2fx\n", parallel_s > 0.0 ? serial_s / parallel_s : 0.0);

    if (!same_point(serial, parallel)) {
        std::printf("MISMATCH: serial and parallel aggregates differ\n");
        return 1;
    }
    std::printf("aggregates identical\n");
    return 0;
}
