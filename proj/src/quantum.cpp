#include "zenosim/quantum.hpp"

#include <cmath>
#include <sstream>

namespace zenosim {

Matrix pauli_x() {
    Matrix m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}

Matrix pauli_y() {
    Matrix m(2, 2);
    m << 0, Complex(0, -1), Complex(0, 1), 0;
    return m;
}

Matrix pauli_z() {
    Matrix m(2, 2);
    m << 1, 0, 0, -1;
    return m;
}

Matrix identity(int dim) { return Matrix::Identity(dim, dim); }

Matrix spin1_jz() {
    Matrix m = Matrix::Zero(3, 3);
    m(0, 0) = 1.0;
    m(2, 2) = -1.0;
    return m;
}

Matrix spin1_jx() {
    const double s = 1.0 / std::sqrt(2.0);
    Matrix m = Matrix::Zero(3, 3);
    m(0, 1) = s;
    m(1, 0) = s;
    m(1, 2) = s;
    m(2, 1) = s;
    return m;
}

double hermiticity_residual(const Matrix& m) {
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

bool is_hermitian(const Matrix& m, double tol) {
    return m.rows() == m.cols() && hermiticity_residual(m) <= tol;
}

namespace {

void require_same_dim(const Matrix& a, const Matrix& x, const char* op) {
    if (a.rows() != a.cols() || x.rows() != x.cols() || a.rows() != x.rows()) {
        std::ostringstream msg;
        msg << op << ": dimension mismatch (" << a.rows() << "x" << a.cols()
            << " vs " << x.rows() << "x" << x.cols() << ")";
        throw ContractError(msg.str());
    }
}

} // namespace

Matrix commutator(const Matrix& a, const Matrix& x) {
    require_same_dim(a, x, "commutator");
    return a * x - x * a;
}

Matrix anticommutator(const Matrix& a, const Matrix& x) {
    require_same_dim(a, x, "anticommutator");
    return a * x + x * a;
}

Complex expectation(const Matrix& rho, const Matrix& a) {
    require_same_dim(rho, a, "expectation");
    return (rho * a).trace();
}

double real_expectation(const Matrix& rho, const Matrix& a,
                        const NumericPolicy& policy) {
    const Complex v = expectation(rho, a);
    if (std::abs(v.imag()) > policy.expectation_imag_tol) {
        std::ostringstream msg;
        msg << "real_expectation: imaginary part " << v.imag()
            << " exceeds tolerance " << policy.expectation_imag_tol;
        throw IntegrityError(msg.str());
    }
    return v.real();
}

Matrix expm_i_hermitian(const Matrix& h, double t, const NumericPolicy& policy) {
    if (!is_hermitian(h, policy.matrix_herm_tol)) {
        throw ContractError("expm_i_hermitian: input is not Hermitian");
    }
    Eigen::SelfAdjointEigenSolver<Matrix> solver(h);
    const Eigen::VectorXd evals = solver.eigenvalues();
    const Matrix& vecs = solver.eigenvectors();
    Vector phases(evals.size());
    for (Eigen::Index k = 0; k < evals.size(); ++k) {
        phases(k) = std::exp(I_UNIT * evals(k) * t);
    }
    return vecs * phases.asDiagonal() * vecs.adjoint();
}

Eigen::VectorXd hermitian_eigenvalues(const Matrix& m) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(m, Eigen::EigenvaluesOnly);
    return solver.eigenvalues();
}

void StateVector::validate(const NumericPolicy& policy) const {
    if (amplitudes.size() == 0) {
        throw ContractError("StateVector: empty amplitude vector");
    }
    const double norm = amplitudes.norm();
    if (std::abs(norm - 1.0) > policy.state_norm_tol) {
        std::ostringstream msg;
        msg << "StateVector: norm " << norm << " deviates from 1 beyond "
            << policy.state_norm_tol;
        throw ContractError(msg.str());
    }
}

StateVector normalized_state(Vector amplitudes) {
    const double norm = amplitudes.norm();
    if (norm == 0.0) {
        throw DomainError("normalized_state: zero vector");
    }
    return StateVector{amplitudes / norm};
}

void DensityMatrix::validate(const NumericPolicy& policy) const {
    if (rho.rows() != rho.cols() || rho.rows() == 0) {
        throw ContractError("DensityMatrix: not square");
    }
    const double trace_dev = std::abs(rho.trace() - Complex(1.0, 0.0));
    if (trace_dev > policy.density_trace_tol) {
        std::ostringstream msg;
        msg << "DensityMatrix: trace deviates from 1 by " << trace_dev;
        throw IntegrityError(msg.str());
    }
    if (hermiticity_residual(rho) > policy.density_herm_tol) {
        throw IntegrityError("DensityMatrix: hermiticity violated");
    }
    const Matrix herm = 0.5 * (rho + rho.adjoint());
    const Eigen::VectorXd evals = hermitian_eigenvalues(herm);
    if (evals.minCoeff() < policy.density_eig_floor) {
        std::ostringstream msg;
        msg << "DensityMatrix: eigenvalue " << evals.minCoeff()
            << " below positivity floor";
        throw IntegrityError(msg.str());
    }
}

DensityMatrix pure_state_density(const StateVector& psi) {
    psi.validate();
    return DensityMatrix{psi.projector()};
}

} // namespace zenosim
