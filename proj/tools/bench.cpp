// Compares the OpenMP theta kernel against the serial reference on a few
// representative workloads and checks that they agree.
#include <chrono>
#include <cstdio>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "singtheta/binary.hpp"
#include "singtheta/theta.hpp"

using namespace singtheta;

namespace {

double seconds(std::chrono::steady_clock::time_point a,
               std::chrono::steady_clock::time_point b) {
    return std::chrono::duration<double>(b - a).count();
}

struct Case {
    const char* name;
    HalfIntegralForm s;
    int degree;
    i64 bound;
};

} // namespace

int main() {
#ifdef _OPENMP
    std::printf("threads: %d\n", omp_get_max_threads());
#else
    std::printf("threads: 1 (built without OpenMP)\n");
#endif
    const Case cases[] = {
        {"hex degree 2", BinaryForm{1, 1, 1}.form(), 2, 40},
        {"disc -7 degree 3", BinaryForm{1, 1, 2}.form(), 3, 16},
        {"disc -23 degree 4", BinaryForm{2, 1, 3}.form(), 4, 10},
    };
    std::printf("%-20s %12s %12s %8s %8s\n", "case", "serial[s]", "parallel[s]", "speedup",
                "coeffs");
    for (const auto& c : cases) {
        auto t0 = std::chrono::steady_clock::now();
        FourierExpansion ref = theta_expansion_serial(c.s, c.degree, c.bound);
        auto t1 = std::chrono::steady_clock::now();
        FourierExpansion par = theta_expansion(c.s, c.degree, c.bound);
        auto t2 = std::chrono::steady_clock::now();
        if (!equal_within(ref, par, c.bound)) {
            std::printf("MISMATCH in case %s\n", c.name);
            return 1;
        }
        const double ts = seconds(t0, t1), tp = seconds(t1, t2);
        std::printf("%-20s %12.3f %12.3f %8.2f %8zu\n", c.name, ts, tp, ts / tp,
                    ref.coeffs().size());
    }
    return 0;
}
