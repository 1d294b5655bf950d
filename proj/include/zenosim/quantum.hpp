#pragma once

#include <complex>
#include <Eigen/Dense>

#include "zenosim/errors.hpp"
#include "zenosim/numeric_policy.hpp"

namespace zenosim {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr Complex I_UNIT{0.0, 1.0};

// ---- elementary operators -------------------------------------------------

Matrix pauli_x();
Matrix pauli_y();
Matrix pauli_z();
Matrix identity(int dim);

// Spin-1 operators in the |m = +1, 0, -1> basis.
Matrix spin1_jz();
Matrix spin1_jx();

// ---- structural predicates ------------------------------------------------

bool is_hermitian(const Matrix& m, double tol);
double hermiticity_residual(const Matrix& m); // max |M - M^dagger| entrywise

// ---- core operations ------------------------------------------------------

// A X - X A
Matrix commutator(const Matrix& a, const Matrix& x);
// A X + X A
Matrix anticommutator(const Matrix& a, const Matrix& x);

// Tr(rho A); the imaginary part is the caller's diagnostic.
Complex expectation(const Matrix& rho, const Matrix& a);
// Tr(rho A) for Hermitian A: asserts the imaginary part is below policy.
double real_expectation(const Matrix& rho, const Matrix& a,
                        const NumericPolicy& policy = default_policy());

// U = exp(i H t) for Hermitian H, via eigendecomposition (exact at these dims).
Matrix expm_i_hermitian(const Matrix& h, double t,
                        const NumericPolicy& policy = default_policy());

// Eigenvalues of a Hermitian matrix, ascending.
Eigen::VectorXd hermitian_eigenvalues(const Matrix& m);

// ---- states ---------------------------------------------------------------

struct StateVector {
    Vector amplitudes;

    int dim() const { return static_cast<int>(amplitudes.size()); }
    // Throws ContractError unless the norm is 1 within policy.
    void validate(const NumericPolicy& policy = default_policy()) const;
    // |psi><psi|
    Matrix projector() const { return amplitudes * amplitudes.adjoint(); }
};

StateVector normalized_state(Vector amplitudes);

struct DensityMatrix {
    Matrix rho;

    int dim() const { return static_cast<int>(rho.rows()); }
    // Trace 1, Hermitian, eigenvalues above the positivity floor.
    void validate(const NumericPolicy& policy = default_policy()) const;
};

DensityMatrix pure_state_density(const StateVector& psi);

} // namespace zenosim
