#pragma once

#include <string>

#include "zenosim/quantum.hpp"

namespace zenosim::models {

struct ModelSpec {
    int dim = 0;
    Matrix h_s;      // Hermitian subsystem Hamiltonian
    Matrix coupling; // Hermitian operator coupled to the bath
    std::string label;
    bool pure_dephasing = false; // [H_s, coupling] == 0 within 1e-12

    void validate(const NumericPolicy& policy = default_policy()) const;
};

// H_s = (epsilon/2) sigma_z - (delta/2) sigma_x, coupling sigma_z.
ModelSpec biased_qubit(double epsilon, double delta);

// H_s = epsilon J_z + delta J_x, coupling 2 J_z, in the |m = 1, 0, -1> basis.
ModelSpec biased_qutrit(double epsilon, double delta);

// Spin coherent state, amplitudes on the m = +J .. -J (descending) basis:
// (1+|s|^2)^{-J} sqrt(C(2J, J+m)) s^{J+m}, s = e^{i phi0} tan(theta/2).
// theta in [0, pi); theta = pi is rejected (use the |J,+J> basis state).
StateVector su2_coherent_state(double spin_j, double theta, double phi0);

// Binomial occupation law p_m = (1+|s|^2)^{-2J} C(2J, J+m) |s|^{2(J+m)}.
double su2_occupation(double spin_j, double varsigma_abs, double m);

} // namespace zenosim::models
