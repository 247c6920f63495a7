// Timing comparison of the serial reference kernels against the OpenMP
// paths: Monte Carlo moments and batch monomial classification.  The value
// columns must agree bit-for-bit; only the wall time may differ.

#include <chrono>
#include <cstdio>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "bergman/oracles.hpp"
#include "bergman/space.hpp"

namespace {

double now_seconds() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::printf("OpenMP enabled, max threads = %d\n", omp_get_max_threads());
#else
    std::printf("OpenMP not available; both columns run serially\n");
#endif

    const bergman::DomainSpec spec(3, bergman::Rational{5, 4});
    const long long samples = 4'000'000;
    const double bound = 10.0;

    {
        const auto p = bergman::MultiIndex::zero(spec.n);
        double t0 = now_seconds();
        const auto serial = bergman::mc_moment_serial(spec, p, bound, samples, 42);
        double t1 = now_seconds();
        const auto parallel = bergman::mc_moment(spec, p, bound, samples, 42);
        double t2 = now_seconds();
        std::printf("mc_moment %lld samples: serial %.3fs, parallel %.3fs, speedup %.2fx\n",
                    samples, t1 - t0, t2 - t1, (t1 - t0) / (t2 - t1));
        std::printf("  values identical: %s (%.17g)\n",
                    serial.value == parallel.value && serial.std_error == parallel.std_error
                        ? "yes"
                        : "NO",
                    parallel.value);
    }

    {
        bergman::QuadratureConfig cfg;
        double t0 = now_seconds();
        const auto serial = bergman::classify_monomials(spec, 4, cfg, false);
        double t1 = now_seconds();
        const auto parallel = bergman::classify_monomials(spec, 4, cfg, true);
        double t2 = now_seconds();
        bool identical = serial.size() == parallel.size();
        for (std::size_t i = 0; identical && i < serial.size(); ++i) {
            identical = serial[i].outcome.value == parallel[i].outcome.value &&
                        serial[i].outcome.verdict == parallel[i].outcome.verdict;
        }
        std::printf("classify_monomials deg<=4 (%zu indices): serial %.3fs, parallel %.3fs, "
                    "speedup %.2fx\n",
                    serial.size(), t1 - t0, t2 - t1, (t1 - t0) / (t2 - t1));
        std::printf("  results identical: %s\n", identical ? "yes" : "NO");
    }
    return 0;
}
