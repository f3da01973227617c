// Serial-vs-parallel timing for the scan and sweep kernels. The parallel path
// is the OpenMP one used everywhere; threads = 1 is the serial reference that
// the determinism tests compare against.

#include <omp.h>

#include <chrono>
#include <cstdio>

#include "nearsq/algebraics.hpp"
#include "nearsq/cf.hpp"
#include "nearsq/scanner.hpp"

using namespace nearsq;

namespace {

template <typename F>
double time_s(F&& f) {
    auto t0 = std::chrono::steady_clock::now();
    f();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void row(const char* name, double serial, double parallel, int threads) {
    std::printf("%-28s %9.3fs %9.3fs  x%.2f (%d threads)\n", name, serial, parallel,
                parallel > 0 ? serial / parallel : 0.0, threads);
}

}  // namespace

int main() {
    const int threads = omp_get_max_threads();
    std::printf("%-28s %10s %10s  %s\n", "kernel", "serial", "parallel", "speedup");

    {
        ScanConfig ser;
        ser.threads = 1;
        ScanConfig par;
        par.threads = threads;
        double ts = time_s([&] { scan_conjecture(20, 20, 48, ser); });
        double tp = time_s([&] { scan_conjecture(20, 20, 48, par); });
        row("scan-conjecture 20/20/48", ts, tp, threads);
    }
    {
        SweepOptions ser;
        ser.threads = 1;
        SweepOptions par;
        par.threads = threads;
        double ts = time_s([&] { sweep_case(CaseKind::IIIc, 2, 600, ser); });
        double tp = time_s([&] { sweep_case(CaseKind::IIIc, 2, 600, par); });
        row("reduce iiic 2..600", ts, tp, threads);
    }
    {
        EstimateOptions ser;
        ser.a_max = 2000;
        ser.c_max = 300;
        ser.random_samples = 100;
        ser.threads = 1;
        EstimateOptions par = ser;
        par.threads = threads;
        double ts = time_s([&] { verify_estimates(ser); });
        double tp = time_s([&] { verify_estimates(par); });
        row("estimates a<=2000 c<=300", ts, tp, threads);
    }
    return 0;
}
