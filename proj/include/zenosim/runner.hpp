#pragma once

#include <string>
#include <vector>

#include "zenosim/config.hpp"

namespace zenosim::runner {

struct RunArtifacts {
    std::vector<std::string> files;
    std::string summary; // one-paragraph outcome for the console
};

// Lab-frame observable trajectory (population difference, coherence
// magnitudes, trace) plus the rotating-frame distance to the orthogonal
// reference, on the [0, tau_max] grid of the scan block.
RunArtifacts run_dynamics(const config::ExperimentConfig& c,
                          const std::string& out_dir, int threads);

// Zeno scan per the scan block; honors the sweep block (one CSV per value
// plus a summary table).
RunArtifacts run_zeno_scan(const config::ExperimentConfig& c,
                           const std::string& out_dir, int threads);

// Zeno-time extraction: scans the short-time window and reports the fit.
RunArtifacts run_zeno_time(const config::ExperimentConfig& c,
                           const std::string& out_dir, int threads);

// Rotating-frame trace-distance flow decomposition.
RunArtifacts run_infoflow(const config::ExperimentConfig& c,
                          const std::string& out_dir, int threads);

} // namespace zenosim::runner
