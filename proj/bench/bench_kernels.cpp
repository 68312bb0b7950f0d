// Serial vs OpenMP comparison for the data-parallel inner loops: the Fourier
// n-sum, the coprime lattice sum, the enumeration grid, and a scan row.

#include "eislab/eisenstein.hpp"
#include "eislab/harness.hpp"
#include "eislab/threads.hpp"

#include <chrono>
#include <cstdio>

using namespace eislab;

template <class F>
static double time_ms(F&& f, int reps = 3) {
    double best = 1e300;
    for (int i = 0; i < reps; ++i) {
        auto t0 = std::chrono::steady_clock::now();
        f();
        auto t1 = std::chrono::steady_clock::now();
        best = std::min(best, std::chrono::duration<double, std::milli>(t1 - t0).count());
    }
    return best;
}

int main() {
    apply_thread_env();
    int threads = thread_count();
    std::printf("threads available: %d\n\n", threads);
    std::printf("%-34s %12s %12s %8s\n", "kernel", "serial(ms)", "parallel(ms)", "speedup");

    volatile double sink = 0;

    {
        auto f = [](i64 i) { return std::cos(1e-3 * i) / (1.0 + i); };
        double s = time_ms([&] { sink += det_block_sum(3000000, 1024, f, false); });
        double p = time_ms([&] { sink += det_block_sum(3000000, 1024, f, true); });
        std::printf("%-34s %12.2f %12.2f %8.2f\n", "det_block_sum 3e6", s, p, s / p);
    }
    {
        modgroup::UpperHalfPoint z{0.3, 0.004};
        eisenstein::SpectralPoint s{0.5, 64.0};
        set_threads(1);
        double ser = time_ms([&] { sink += std::abs(eisenstein::eisenstein_fourier(z, s).total); }, 2);
        set_threads(threads);
        double par = time_ms([&] { sink += std::abs(eisenstein::eisenstein_fourier(z, s).total); }, 2);
        std::printf("%-34s %12.2f %12.2f %8.2f\n", "fourier n-sum, y=0.004 T=64", ser, par,
                    ser / par);
    }
    {
        modgroup::UpperHalfPoint z{0.1, 0.95};
        eisenstein::SpectralPoint s{2.0, 0.0};
        set_threads(1);
        double ser = time_ms([&] { sink += std::abs(eisenstein::eisenstein_lattice(z, s, 2000.0)); }, 2);
        set_threads(threads);
        double par = time_ms([&] { sink += std::abs(eisenstein::eisenstein_lattice(z, s, 2000.0)); }, 2);
        std::printf("%-34s %12.2f %12.2f %8.2f\n", "lattice sum R=2000", ser, par, ser / par);
    }
    {
        harness::GridSpec grid;
        grid.ny = 8;
        grid.nx = 9;
        set_threads(1);
        double ser = time_ms([&] { sink += harness::supnorm_scan_level1({32.0}, grid).max_ratio; }, 2);
        set_threads(threads);
        double par = time_ms([&] { sink += harness::supnorm_scan_level1({32.0}, grid).max_ratio; }, 2);
        std::printf("%-34s %12.2f %12.2f %8.2f\n", "level-1 scan row block", ser, par,
                    ser / par);
    }
    std::printf("\n(sink %g)\n", (double)sink);
    return 0;
}
