// Acceptance suite driver: runs the release criteria end to end and prints
// one pass/fail line per criterion. Exit code 0 only if everything passed.
//
//   zenosim_acceptance            run all criteria
//   zenosim_acceptance --only N   run a single criterion
//   zenosim_acceptance --list     list criteria ids

#include <cstdio>
#include <cstring>
#include <string>
#include <thread>

#include "zenosim/verify.hpp"

int main(int argc, char** argv) {
    int only = 0;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc) {
            only = std::atoi(argv[i + 1]);
            ++i;
        } else if (std::strcmp(argv[i], "--list") == 0) {
            for (int id : zenosim::verify::all_criterion_ids()) {
                std::printf("%d\n", id);
            }
            return 0;
        } else {
            std::fprintf(stderr, "usage: %s [--only N] [--list]\n", argv[0]);
            return 64;
        }
    }

    const unsigned hw = std::thread::hardware_concurrency();
    const int threads = hw == 0 ? 1 : static_cast<int>(hw);

    std::vector<zenosim::verify::CriterionResult> results;
    try {
        if (only > 0) {
            results.push_back(zenosim::verify::run_criterion(only, threads));
        } else {
            results = zenosim::verify::run_all(threads);
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "acceptance suite aborted: %s\n", e.what());
        return 70;
    }

    bool all = true;
    for (const auto& r : results) {
        std::printf("[%s] criterion %2d (%.1fs): %s - %s\n",
                    r.passed ? "PASS" : "FAIL", r.id, r.seconds,
                    r.name.c_str(), r.detail.c_str());
        all = all && r.passed;
    }
    return all ? 0 : 1;
}
