#pragma once

#include <optional>
#include <string>
#include <vector>

#include "zenosim/models.hpp"
#include "zenosim/zeno.hpp"

namespace zenosim::config {

struct ModelBlock {
    std::string kind;                    // qubit | qutrit
    double epsilon = 0.0;
    double delta = 0.0;
    std::string initial_state = "excited"; // excited | plus | coherent(a,b) |
                                           // amplitudes:(re,im);(re,im);...
};

struct BathBlock {
    std::string kind; // lorentzian | ohmic_drude
    double gamma0 = 0.0;
    double lambda = 0.0;
    double omega0 = 0.0;
    double chi = 0.0;
    double omega_c = 0.0;
    std::string beta = "zero"; // "zero" (Lorentzian) or a positive number
};

struct SolverBlock {
    double dt = 0.01;
    int l_start = 1;
    int l_max = 30;
    double conv_tol = 1e-4;
    std::string matsubara_epsilon = "auto"; // "auto" or a nonneg integer
};

struct ScanBlock {
    double tau_min = -1.0; // negative selects 0.02 / max frequency scale
    double tau_max = 0.0;
    int points = 50;
    std::string spacing = "linear"; // linear | log
};

struct SweepBlock {
    std::string parameter; // e.g. bath.lambda
    std::vector<double> values;
};

struct OutputBlock {
    std::string directory = "out";
    bool emit_plots = false;
};

struct ExperimentConfig {
    ModelBlock model;
    BathBlock bath;
    SolverBlock solver;
    ScanBlock scan;
    std::optional<SweepBlock> sweep;
    OutputBlock output;
};

// Line-oriented sections/key-values. Throws ConfigError carrying every
// violation found, not just the first.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config_file(const std::string& path);

// Canonical text form; parse(serialize(c)) == c.
std::string serialize(const ExperimentConfig& c);

// Domain objects -------------------------------------------------------------

models::ModelSpec build_model(const ExperimentConfig& c);
StateVector build_initial_state(const ExperimentConfig& c);
zeno::BathSetup build_bath(const ExperimentConfig& c);
zeno::SolverSettings build_solver(const ExperimentConfig& c);
std::vector<double> build_tau_grid(const ExperimentConfig& c);

// In-place sweep application (parameter already validated by parse).
ExperimentConfig with_sweep_value(const ExperimentConfig& c,
                                  const std::string& parameter, double value);

} // namespace zenosim::config
