// Serial reference vs OpenMP ensemble simulation.
//   bench_simulate [paths] [days] [repeats]

#include "tempsde/cli.hpp"
#include "tempsde/simulator.hpp"

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <cstring>

using namespace tempsde;

namespace {

template <typename Fn>
double best_seconds(int repeats, Fn&& fn) {
    double best = 1e300;
    for (int r = 0; r < repeats; ++r) {
        const auto t0 = std::chrono::steady_clock::now();
        fn();
        const auto t1 = std::chrono::steady_clock::now();
        best = std::min(best, std::chrono::duration<double>(t1 - t0).count());
    }
    return best;
}

} // namespace

int main(int argc, char** argv) {
    const std::size_t paths = argc > 1 ? std::strtoul(argv[1], nullptr, 10) : 1000;
    const std::size_t days = argc > 2 ? std::strtoul(argv[2], nullptr, 10) : 8760;
    const int repeats = argc > 3 ? std::atoi(argv[3]) : 3;

    const auto params = cli::default_synthetic_parameters();
    SimulationConfig cfg;
    cfg.n_paths = paths;
    cfg.n_days = days;
    cfg.master_seed = 42;

    SimulatedEnsemble serial, parallel;
    const double t_serial = best_seconds(repeats, [&] {
        serial = simulate_paths_serial(params.seasonal, params.kappa_t, params.vol, cfg);
    });
    const double t_parallel = best_seconds(repeats, [&] {
        parallel = simulate_paths(params.seasonal, params.kappa_t, params.vol, cfg);
    });
    const bool identical = serial.paths == parallel.paths && serial.mean_path == parallel.mean_path;

    const double steps = static_cast<double>(paths) * static_cast<double>(days);
    std::printf("paths=%zu days=%zu threads=%d\n", paths, days, omp_get_max_threads());
    std::printf("serial    %8.3f s  %7.1f Msteps/s\n", t_serial, steps / t_serial * 1e-6);
    std::printf("openmp    %8.3f s  %7.1f Msteps/s  speedup %.2fx\n", t_parallel,
                steps / t_parallel * 1e-6, t_serial / t_parallel);
    std::printf("bit-identical: %s\n", identical ? "yes" : "NO");
    return identical ? 0 : 1;
}
