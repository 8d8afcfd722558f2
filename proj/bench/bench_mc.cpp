#include "levysup/mc.hpp"
#include "levysup/path_sim.hpp"

#include <chrono>
#include <cstdio>
#include <cstring>

using namespace levysup;

namespace {

double now_seconds() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

} // namespace

int main(int argc, char** argv) {
    long paths = 200000;
    if (argc > 1) paths = std::atol(argv[1]);

    LevyModel merton;
    merton.gamma = 0.1;
    merton.sigma = 0.2;
    merton.jumps = CompoundPoisson{3.0, NormalJump{-0.05, 0.1}};

    const auto kernel = [&](long, PathStream& stream) {
        const SupremumSample s = simulate_jd_supremum(merton, 1.0, 256, stream);
        return *s.continuous_max - s.discrete_max;
    };

    const double t0 = now_seconds();
    const McStats serial = mc_mean(paths, 42, kernel, /*parallel=*/false);
    const double t1 = now_seconds();
    const McStats parallel = mc_mean(paths, 42, kernel, /*parallel=*/true);
    const double t2 = now_seconds();

    const bool identical =
        std::memcmp(&serial.mean, &parallel.mean, sizeof(double)) == 0 &&
        std::memcmp(&serial.se, &parallel.se, sizeof(double)) == 0;

    std::printf("paths            %ld\n", paths);
    std::printf("serial    %8.3f s  mean %.17g  se %.3g\n", t1 - t0, serial.mean,
                serial.se);
    std::printf("parallel  %8.3f s  mean %.17g  se %.3g\n", t2 - t1,
                parallel.mean, parallel.se);
    std::printf("speedup   %8.2fx\n", (t1 - t0) / (t2 - t1));
    std::printf("bit-identical results: %s\n", identical ? "yes" : "NO");
    return identical ? 0 : 1;
}
