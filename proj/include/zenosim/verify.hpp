#pragma once

#include <string>
#include <vector>

#include "zenosim/config.hpp"

namespace zenosim::verify {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string detail; // measured numbers, threshold, and context
    double seconds = 0.0;
};

std::vector<int> all_criterion_ids(); // 1..12

CriterionResult run_criterion(int id, int threads);
std::vector<CriterionResult> run_all(int threads);

// Structure, convergence and bath-fidelity checks applied to one user config
// (the `verify --config` mode).
std::vector<CriterionResult> run_config_checks(const config::ExperimentConfig& c,
                                               int threads);

std::string report_json(const std::vector<CriterionResult>& results);

} // namespace zenosim::verify
