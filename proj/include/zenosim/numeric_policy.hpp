#pragma once

namespace zenosim {

// Every tolerance used by structural checks, collected in one place so test
// strictness has a single knob.
struct NumericPolicy {
    double matrix_herm_tol = 1e-12;      // Hermitian-flagged matrices
    double state_norm_tol = 1e-12;       // pure-state normalization
    double density_trace_tol = 1e-10;    // trace(rho) == 1
    double density_herm_tol = 1e-10;     // rho == rho^dagger
    double density_eig_floor = -1e-6;    // numerical positivity slack
    double unitary_tol = 1e-10;          // U U^dagger == 1
    double expectation_imag_tol = 1e-10; // Tr(rho A) for Hermitian A
    double trace_drift_tol = 1e-8;       // hierarchy trace conservation
    double ado_herm_tol = 1e-10;         // hermiticity of rho_0 during runs
    double extremum_floor = 1e-12;       // Gamma below this counts as zero
    double flow_rate_floor = 1e-12;      // |dD/dt| below this is neither gain nor loss
};

inline const NumericPolicy& default_policy() {
    static const NumericPolicy policy{};
    return policy;
}

} // namespace zenosim
