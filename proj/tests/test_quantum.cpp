#include "doctest.h"

#include <random>

#include "zenosim/quantum.hpp"

using namespace zenosim;

namespace {

Matrix random_hermitian(int dim, std::mt19937& rng) {
    std::normal_distribution<double> dist(0.0, 1.0);
    Matrix m(dim, dim);
    for (int r = 0; r < dim; ++r) {
        for (int c = 0; c < dim; ++c) {
            m(r, c) = Complex(dist(rng), dist(rng));
        }
    }
    return 0.5 * (m + m.adjoint().eval());
}

} // namespace

TEST_CASE("commutator on Pauli algebra") {
    // sigma_z sigma_x - sigma_x sigma_z = 2i sigma_y
    const Matrix expected = 2.0 * I_UNIT * pauli_y();
    CHECK((commutator(pauli_z(), pauli_x()) - expected).cwiseAbs().maxCoeff() ==
          doctest::Approx(0.0).epsilon(1e-15));

    // identity commutes with everything
    std::mt19937 rng(7);
    const Matrix x = random_hermitian(3, rng);
    CHECK(commutator(identity(3), x).cwiseAbs().maxCoeff() < 1e-15);

    // sigma_z with |e><g| doubles it
    Matrix eg = Matrix::Zero(2, 2);
    eg(0, 1) = 1.0;
    CHECK((commutator(pauli_z(), eg) - 2.0 * eg).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("anticommutator identities") {
    CHECK((anticommutator(identity(2), pauli_x()) - 2.0 * pauli_x())
              .cwiseAbs()
              .maxCoeff() < 1e-15);
    CHECK((anticommutator(pauli_z(), pauli_z()) - 2.0 * identity(2))
              .cwiseAbs()
              .maxCoeff() < 1e-15);
    CHECK(anticommutator(pauli_z(), pauli_x()).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("dimension mismatch is a contract violation") {
    CHECK_THROWS_AS(commutator(pauli_z(), identity(3)), ContractError);
    CHECK_THROWS_AS(anticommutator(pauli_z(), identity(3)), ContractError);
    CHECK_THROWS_AS(expectation(identity(3), pauli_z()), ContractError);
}

TEST_CASE("expectation values on reference states") {
    Matrix excited = Matrix::Zero(2, 2);
    excited(0, 0) = 1.0;
    CHECK(real_expectation(excited, pauli_z()) == doctest::Approx(1.0));

    CHECK(real_expectation(0.5 * identity(2), pauli_z()) ==
          doctest::Approx(0.0));

    Matrix plus(2, 2);
    plus << 0.5, 0.5, 0.5, 0.5;
    CHECK(real_expectation(plus, pauli_x()) == doctest::Approx(1.0));
}

TEST_CASE("expectation is linear in both arguments") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        const Matrix a = random_hermitian(3, rng);
        const Matrix b = random_hermitian(3, rng);
        const Matrix r = random_hermitian(3, rng);
        const Complex lhs = expectation(r, a + 2.0 * b);
        const Complex rhs = expectation(r, a) + 2.0 * expectation(r, b);
        CHECK(std::abs(lhs - rhs) < 1e-12);
    }
}

TEST_CASE("matrix exponential of a Hermitian generator") {
    std::mt19937 rng(3);
    const Matrix h = random_hermitian(3, rng);

    SUBCASE("t = 0 gives the identity") {
        CHECK((expm_i_hermitian(h, 0.0) - identity(3)).cwiseAbs().maxCoeff() <
              1e-14);
    }
    SUBCASE("half period of a detuned qubit gives -1") {
        const double eps = 0.7;
        const Matrix u = expm_i_hermitian(0.5 * eps * pauli_z(), 2.0 * M_PI / eps);
        CHECK((u + identity(2)).cwiseAbs().maxCoeff() < 1e-12);
    }
    SUBCASE("unitarity") {
        const Matrix u = expm_i_hermitian(h, 1.0);
        CHECK((u * u.adjoint() - identity(3)).cwiseAbs().maxCoeff() < 1e-12);
    }
    SUBCASE("group property") {
        const Matrix u1 = expm_i_hermitian(h, 0.3);
        const Matrix u2 = expm_i_hermitian(h, 1.1);
        const Matrix u12 = expm_i_hermitian(h, 1.4);
        CHECK((u1 * u2 - u12).cwiseAbs().maxCoeff() < 1e-9);
    }
    SUBCASE("non-Hermitian input rejected") {
        Matrix bad = h;
        bad(0, 1) += Complex(0.0, 1e-3);
        CHECK_THROWS_AS(expm_i_hermitian(bad, 1.0), ContractError);
    }
}

TEST_CASE("commutator of Hermitian matrices is anti-Hermitian") {
    std::mt19937 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        const Matrix a = random_hermitian(3, rng);
        const Matrix x = random_hermitian(3, rng);
        const Matrix c = commutator(a, x);
        CHECK((c.adjoint() + c).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("state and density validation") {
    StateVector plus{Vector(2)};
    plus.amplitudes << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
    CHECK_NOTHROW(plus.validate());

    StateVector bad{Vector(2)};
    bad.amplitudes << 1.0, 1.0;
    CHECK_THROWS_AS(bad.validate(), ContractError);

    const DensityMatrix rho = pure_state_density(plus);
    CHECK_NOTHROW(rho.validate());

    DensityMatrix off{0.6 * identity(2)};
    CHECK_THROWS_AS(off.validate(), IntegrityError);

    Matrix neg(2, 2);
    neg << 1.5, 0.0, 0.0, -0.5;
    CHECK_THROWS_AS(DensityMatrix{neg}.validate(), IntegrityError);
}
