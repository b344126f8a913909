// Runs every acceptance criterion once and prints one line per criterion.
// Exit status is 0 only when all of them pass.

#include <cstdio>

#include "soclelab/reproduce.hpp"

int main() {
    using namespace soclelab::reproduce;
    int failures = 0;
    for (int id = 1; id <= kCriterionCount; ++id) {
        const CriterionResult r = run_criterion(id);
        const char* status = r.passed() ? "PASS" : "FAIL";
        std::printf("criterion %2d %s: %s (%s, %.2f s)\n", id, status, r.title.c_str(), r.verdict.c_str(), r.seconds);
        if (!r.passed()) {
            ++failures;
            std::printf("    details: %s\n", r.details.dump().c_str());
        }
        std::fflush(stdout);
    }
    std::printf("%d of %d criteria passed\n", kCriterionCount - failures, kCriterionCount);
    return failures == 0 ? 0 : 1;
}
