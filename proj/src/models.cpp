#include "zenosim/models.hpp"

#include <cmath>
#include <iostream>
#include <numbers>
#include <sstream>

#include "zenosim/errors.hpp"

namespace zenosim::models {

namespace {

void check_half_integer_spin(double spin_j) {
    const double two_j = 2.0 * spin_j;
    if (spin_j < 0.5 || std::abs(two_j - std::round(two_j)) > 1e-12) {
        throw DomainError("spin J must be a positive half-integer");
    }
}

double log_binomial(int n, int k) {
    return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

bool commutes(const Matrix& a, const Matrix& b, double tol) {
    return commutator(a, b).cwiseAbs().maxCoeff() <= tol;
}

} // namespace

void ModelSpec::validate(const NumericPolicy& policy) const {
    if (dim < 2 || h_s.rows() != dim || coupling.rows() != dim) {
        throw ContractError("ModelSpec: inconsistent dimensions");
    }
    if (!is_hermitian(h_s, policy.matrix_herm_tol) ||
        !is_hermitian(coupling, policy.matrix_herm_tol)) {
        throw ContractError("ModelSpec: H_s and coupling must be Hermitian");
    }
}

ModelSpec biased_qubit(double epsilon, double delta) {
    ModelSpec m;
    m.dim = 2;
    m.h_s = 0.5 * epsilon * pauli_z() - 0.5 * delta * pauli_x();
    m.coupling = pauli_z();
    std::ostringstream label;
    label << "qubit(epsilon=" << epsilon << ",delta=" << delta << ")";
    m.label = label.str();
    m.pure_dephasing = commutes(m.h_s, m.coupling, 1e-12);
    m.validate();
    return m;
}

ModelSpec biased_qutrit(double epsilon, double delta) {
    ModelSpec m;
    m.dim = 3;
    m.h_s = epsilon * spin1_jz() + delta * spin1_jx();
    m.coupling = 2.0 * spin1_jz();
    std::ostringstream label;
    label << "qutrit(epsilon=" << epsilon << ",delta=" << delta << ")";
    m.label = label.str();
    m.pure_dephasing = commutes(m.h_s, m.coupling, 1e-12);
    m.validate();
    return m;
}

StateVector su2_coherent_state(double spin_j, double theta, double phi0) {
    check_half_integer_spin(spin_j);
    if (theta < 0.0 || theta >= std::numbers::pi) {
        throw DomainError(
            "su2_coherent_state: theta must lie in [0, pi); for theta = pi "
            "the state is the |J,+J> basis vector");
    }
    const int two_j = static_cast<int>(std::round(2.0 * spin_j));
    const int dim = two_j + 1;
    const double varsigma_abs = std::tan(0.5 * theta);
    const double log_norm =
        -spin_j * std::log1p(varsigma_abs * varsigma_abs); // (1+|s|^2)^{-J}

    Vector amps(dim);
    for (int row = 0; row < dim; ++row) {
        // Row 0 is m = +J (descending), so J + m = two_j - row.
        const int j_plus_m = two_j - row;
        if (varsigma_abs == 0.0) {
            amps(row) = (j_plus_m == 0) ? 1.0 : 0.0;
            continue;
        }
        // Magnitude assembled in the log domain so large J cannot overflow.
        const double log_mag = log_norm + 0.5 * log_binomial(two_j, j_plus_m) +
                               j_plus_m * std::log(varsigma_abs);
        amps(row) = std::polar(std::exp(log_mag), j_plus_m * phi0);
    }
    const double norm = amps.norm();
    if (std::abs(norm - 1.0) > 1e-10) {
        std::cerr << "su2_coherent_state: renormalizing, correction "
                  << std::abs(norm - 1.0) << "\n";
    }
    return StateVector{amps / norm};
}

double su2_occupation(double spin_j, double varsigma_abs, double m) {
    check_half_integer_spin(spin_j);
    const int two_j = static_cast<int>(std::round(2.0 * spin_j));
    const int j_plus_m = static_cast<int>(std::round(spin_j + m));
    if (j_plus_m < 0 || j_plus_m > two_j) {
        throw DomainError("su2_occupation: m outside -J..J");
    }
    if (varsigma_abs == 0.0) {
        return j_plus_m == 0 ? 1.0 : 0.0;
    }
    const double log_p = log_binomial(two_j, j_plus_m) +
                         2.0 * j_plus_m * std::log(varsigma_abs) -
                         2.0 * spin_j * std::log1p(varsigma_abs * varsigma_abs);
    return std::exp(log_p);
}

} // namespace zenosim::models
