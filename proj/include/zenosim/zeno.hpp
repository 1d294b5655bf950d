#pragma once

#include <optional>
#include <string>
#include <vector>

#include "zenosim/bath.hpp"
#include "zenosim/heom.hpp"
#include "zenosim/models.hpp"

namespace zenosim::zeno {

struct BathSetup {
    bath::SpectralDensity spectrum;
    double beta = bath::ZERO_TEMPERATURE; // infinity for zero-T Lorentzian

    bool zero_temperature() const { return !std::isfinite(beta); }
};

struct SolverSettings {
    double dt = 0.01;
    int l_start = 1;
    int l_max = 30;
    double conv_tol = 1e-4;          // depth convergence, applied to Gamma
    int matsubara_epsilon = -1;      // -1 selects the automatic rule
    std::size_t max_ados = heom::DEFAULT_ADO_BUDGET;
};

// Matsubara cutoff actually used for this bath/solver combination (the
// automatic rule when settings request it; -1 for zero-temperature baths).
int resolve_matsubara_epsilon(const BathSetup& bath_setup,
                              const SolverSettings& settings);

// Generator for one truncation depth (shared machinery for scans, dynamics
// and verification).
heom::HeomGenerator make_generator(const models::ModelSpec& model,
                                   const BathSetup& bath_setup,
                                   const SolverSettings& settings, int depth);

// Integration step honoring the stability guard, the Hamiltonian rotation
// scale and the interval length.
double integration_step(const heom::HeomGenerator& gen, double horizon,
                        double dt_request);

// Survival of |psi0> after one measurement interval in the rotating frame:
//   P(tau) = <psi0| e^{iH tau} rho_s(tau) e^{-iH tau} |psi0>,
// hierarchy truncated at the given depth. Depth 0 with a zero-temperature
// bath is the decoupled limit (P = 1 identically).
double survival_at_depth(const models::ModelSpec& model, const BathSetup& bath_setup,
                         const StateVector& psi0, double tau,
                         const SolverSettings& settings, int depth);

// Depth-converged survival probability (converges Gamma, then maps back).
double survival_probability(const models::ModelSpec& model,
                            const BathSetup& bath_setup, const StateVector& psi0,
                            double tau, const SolverSettings& settings);

// Gamma = -ln(P)/tau for P in (0, 1].
double effective_decay_rate(double survival, double tau);

struct ZenoTimeFit {
    double tau_z = 0.0;
    double slope = 0.0;     // a in Gamma ~ a tau; tau_z = a^{-1/2}
    double residual = 0.0;  // relative rms of the through-origin fit
    bool regime_warning = false;
    int fit_window = 0;
};

struct ZenoScan {
    std::vector<double> tau;
    std::vector<double> survival;
    std::vector<double> gamma;
    std::vector<int> converged_depth;
    std::vector<int> maxima; // interior indices of local maxima of Gamma
    std::vector<int> minima;
    std::optional<ZenoTimeFit> zeno_fit;
    std::string provenance; // model, bath and solver snapshot
};

// One point per tau, each with per-point depth convergence; points are
// independent and evaluated by a worker pool (result order is fixed by the
// grid, so the output is identical for any thread count).
ZenoScan scan(const models::ModelSpec& model, const BathSetup& bath_setup,
              const StateVector& psi0, const std::vector<double>& tau_grid,
              const SolverSettings& settings, int n_threads = 1);

// Through-origin least squares Gamma ~ a tau on the first fit_window points.
ZenoTimeFit zeno_time(const ZenoScan& scan_result, int fit_window = 6);

// Interior extrema of Gamma: maxima satisfy gamma[i] > gamma[i-1] and
// gamma[i] >= gamma[i+1] (minima dually); points below the policy floor are
// excluded. Returns (maxima, minima).
std::pair<std::vector<int>, std::vector<int>> detect_crossovers(
    const std::vector<double>& gamma,
    const NumericPolicy& policy = default_policy());

} // namespace zenosim::zeno
