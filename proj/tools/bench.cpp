// Compares the serial and OpenMP torsor-count kernels and the two
// omega_inf estimators at matched accuracy.
#include <chrono>
#include <cstdio>
#include <cstdlib>

#include <omp.h>

#include "a5a1/density.hpp"
#include "a5a1/torsor.hpp"

using namespace a5a1;
using clk = std::chrono::steady_clock;

namespace {

double seconds(clk::time_point t0) {
    return std::chrono::duration<double>(clk::now() - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
    i64 maxB = argc > 1 ? std::atoll(argv[1]) : 100000;
    std::printf("threads available: %d\n", omp_get_max_threads());
    std::printf("%12s %14s %10s %10s %8s\n", "B", "count", "serial_s",
                "parallel_s", "speedup");
    for (i64 B = 1000; B <= maxB; B *= 10) {
        auto t0 = clk::now();
        u64 ns = count_torsor_serial(B);
        double ts = seconds(t0);
        t0 = clk::now();
        u64 np = count_torsor(B);
        double tp = seconds(t0);
        if (ns != np) {
            std::fprintf(stderr, "MISMATCH at B=%lld: %llu vs %llu\n",
                         (long long)B, (unsigned long long)ns,
                         (unsigned long long)np);
            return 1;
        }
        std::printf("%12lld %14llu %10.3f %10.3f %8.2f\n", (long long)B,
                    (unsigned long long)ns, ts, tp, ts / tp);
    }

    auto t0 = clk::now();
    McEstimate mc = omega_inf(10000000, 1);
    double tmc = seconds(t0);
    t0 = clk::now();
    double grid = omega_inf_grid();
    double tgrid = seconds(t0);
    std::printf("omega_inf: mc %.6f +- %.6f in %.3fs, grid %.6f in %.3fs\n",
                mc.value, mc.stderr_, tmc, grid, tgrid);
    return 0;
}
