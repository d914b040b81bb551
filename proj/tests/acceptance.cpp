#include <chrono>
#include <cstdio>

#include "acceptance_suite.hpp"

int main() {
    int failed = 0;
    const unsigned seed = acceptance::seed_from_env();
    std::printf("seed %u\n", seed);
    for (const auto& r : acceptance::run_all(seed)) {
        std::printf("[%s] %2d %s: %s\n", r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(), r.detail.c_str());
        std::fflush(stdout);
        failed += !r.pass;
    }
    std::printf("%d/12 criteria passed\n", 12 - failed);
    return failed ? 1 : 0;
}
