// Times the serial reference kernels against the OpenMP variants on the
// doubling-map layers, which are the largest systems the suite touches.
//
//   ./orbitq_bench [max_layer]

#include <chrono>
#include <cstdio>
#include <cstdlib>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "orbitq/quotient.hpp"
#include "orbitq/torus.hpp"

using namespace orbitq;
using clock_type = std::chrono::steady_clock;

namespace {

template <typename F>
double time_of(F&& f) {
    auto t0 = clock_type::now();
    f();
    auto t1 = clock_type::now();
    return std::chrono::duration<double>(t1 - t0).count();
}

void bench_layer(int n) {
    FiniteDynSystem sys = torus::layer_system(n);
    std::printf("layer %d (%d points)\n", n, sys.npoints);

    struct Row {
        const char* name;
        double serial;
        double parallel;
    };
    Row rows[3];

    rows[0] = {"orbits", time_of([&] { orbits(sys, ExecMode::serial); }),
               time_of([&] { orbits(sys, ExecMode::parallel); })};
    rows[1] = {"validate", time_of([&] { validate_system(sys, ExecMode::serial); }),
               time_of([&] { validate_system(sys, ExecMode::parallel); })};
    rows[2] = {"quotient", time_of([&] { build_quotient(sys, ExecMode::serial); }),
               time_of([&] { build_quotient(sys, ExecMode::parallel); })};

    for (const Row& r : rows)
        std::printf("  %-10s serial %8.3fs   parallel %8.3fs   speedup %5.2fx\n",
                    r.name, r.serial, r.parallel,
                    r.parallel > 0 ? r.serial / r.parallel : 0.0);

    // the kernels must agree regardless of timing
    auto s = orbits(sys, ExecMode::serial);
    auto p = orbits(sys, ExecMode::parallel);
    if (s.size() != p.size()) {
        std::fprintf(stderr, "serial/parallel orbit disagreement on layer %d\n", n);
        std::exit(1);
    }
}

}  // namespace

int main(int argc, char** argv) {
    int max_layer = argc > 1 ? std::atoi(argv[1]) : 10;
    if (max_layer < 6) max_layer = 6;
    if (max_layer > 10) max_layer = 10;
#ifdef _OPENMP
    std::printf("openmp threads: %d\n", omp_get_max_threads());
#else
    std::printf("built without openmp; parallel falls back to serial\n");
#endif
    for (int n = 6; n <= max_layer; n += 2) bench_layer(n);
    return 0;
}
