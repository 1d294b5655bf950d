#include "doctest.h"

#include <cmath>
#include <numbers>

#include "zenosim/bath.hpp"
#include "zenosim/errors.hpp"

using namespace zenosim;
using namespace zenosim::bath;

namespace {
constexpr double PI = std::numbers::pi;
}

TEST_CASE("spectral density reference values") {
    const Lorentzian lor{0.5, 0.3, 1.1};
    // peak value gamma0 / (2 pi)
    CHECK(spectral_density_value(lor, 1.1) ==
          doctest::Approx(0.5 / (2.0 * PI)).epsilon(1e-14));
    // half width at half maximum
    CHECK(spectral_density_value(lor, 1.1 + 0.3) ==
          doctest::Approx(0.25 / (2.0 * PI)).epsilon(1e-14));
    CHECK(spectral_density_value(lor, 1.1 - 0.3) ==
          doctest::Approx(0.25 / (2.0 * PI)).epsilon(1e-14));

    const OhmicDrude ohm{0.05, 10.0};
    CHECK(spectral_density_value(ohm, 10.0) ==
          doctest::Approx(0.05 / PI).epsilon(1e-14));
}

TEST_CASE("Lorentzian zero-T decomposition is the single printed exponential") {
    const Lorentzian j{0.5, 0.05, 0.0};
    const auto d = lorentz_zero_t_decomposition(j);
    REQUIRE(d.terms.size() == 1);
    CHECK(d.terms[0].zeta.real() == doctest::Approx(0.0125).epsilon(1e-15));
    CHECK(d.terms[0].zeta.imag() == 0.0);
    CHECK(d.terms[0].upsilon.real() == doctest::Approx(0.05));
    CHECK(d.terms[0].upsilon.imag() == 0.0);
    CHECK(std::isinf(d.beta));

    const auto detuned = lorentz_zero_t_decomposition(Lorentzian{1.0, 1.0, 2.0});
    CHECK(detuned.terms[0].zeta.real() == doctest::Approx(0.5));
    CHECK(detuned.terms[0].upsilon == Complex(1.0, 2.0));
    // |C(t)| = 0.5 e^{-t}
    CHECK(std::abs(correlation_eval(detuned, 1.5)) ==
          doctest::Approx(0.5 * std::exp(-1.5)).epsilon(1e-12));
}

TEST_CASE("correlation_eval basics") {
    const auto d = lorentz_zero_t_decomposition(Lorentzian{0.5, 0.05, 0.0});
    CHECK(correlation_eval(d, 0.0).real() == doctest::Approx(0.0125));
    CHECK(correlation_eval(d, 1.0 / 0.05).real() ==
          doctest::Approx(0.0125 * std::exp(-1.0)).epsilon(1e-12));

    BathDecomposition empty;
    CHECK(std::abs(correlation_eval(empty, 2.0)) == 0.0);

    // magnitude is non-increasing for the single-term decomposition
    double prev = std::abs(correlation_eval(d, 0.0));
    for (double t : {0.5, 1.0, 5.0, 20.0, 100.0}) {
        const double cur = std::abs(correlation_eval(d, t));
        CHECK(cur <= prev + 1e-15);
        prev = cur;
    }
}

TEST_CASE("Matsubara decomposition coefficients") {
    const OhmicDrude j{0.05, 10.0};

    SUBCASE("first Matsubara frequency is exactly 2 pi / beta") {
        for (double beta : {0.01, 0.1, 0.5}) {
            const auto d = matsubara_decomposition(j, beta, 3);
            CHECK(d.terms[1].upsilon.real() == 2.0 * PI / beta);
            CHECK(d.terms[0].upsilon.real() == j.omega_c);
        }
    }

    SUBCASE("hottest Fig. 5a case: zeta_0 approaches 2chi/beta - i chi omega_c") {
        const auto d = matsubara_decomposition(j, 0.01, 0);
        REQUIRE(d.terms.size() == 1); // epsilon = 0 keeps one term
        const Complex approx(2.0 * j.chi / 0.01, -j.chi * j.omega_c);
        CHECK(std::abs(d.terms[0].zeta - approx) / std::abs(approx) < 2e-3);
    }

    SUBCASE("j >= 1 coefficients are real with sign set by upsilon vs omega_c") {
        const double beta = 2.0; // upsilon_1 = pi < omega_c, upsilon_4 > omega_c
        const auto d = matsubara_decomposition(j, beta, 6);
        for (std::size_t q = 1; q < d.terms.size(); ++q) {
            CHECK(d.terms[q].zeta.imag() == 0.0);
            const double u = d.terms[q].upsilon.real();
            if (u < j.omega_c) {
                CHECK(d.terms[q].zeta.real() < 0.0);
            } else {
                CHECK(d.terms[q].zeta.real() > 0.0);
            }
        }
    }

    SUBCASE("singular parameter guards") {
        // beta*omega_c/2 = pi  ->  cot pole
        CHECK_THROWS_AS(matsubara_decomposition(j, 2.0 * PI / j.omega_c, 2),
                        SingularParameterError);
        // collision 2 pi j / beta == omega_c
        CHECK_THROWS_AS(matsubara_decomposition(j, 2.0 * PI / j.omega_c * 2.0, 2),
                        SingularParameterError);
    }
}

TEST_CASE("zero-T Lorentzian quadrature reproduces the exact exponential") {
    for (const auto& j :
         {Lorentzian{0.5, 0.05, 0.0}, Lorentzian{0.5, 5.0, 0.0},
          Lorentzian{0.2, 0.02, 0.0}, Lorentzian{1.0, 1.0, 2.0}}) {
        const auto d = lorentz_zero_t_decomposition(j);
        for (double scaled : {0.0, 0.1, 1.0, 5.0}) {
            const double t = scaled / j.lambda;
            const auto q = correlation_quadrature(j, ZERO_TEMPERATURE, t);
            const Complex exact = correlation_eval(d, t);
            CAPTURE(j.lambda);
            CAPTURE(t);
            CHECK(std::abs(q.value - exact) < 1e-7);
        }
    }
}

TEST_CASE("finite-T Drude quadrature matches the Matsubara series") {
    const OhmicDrude j{0.05, 10.0};
    SUBCASE("high temperature, epsilon >= 10") {
        const auto d = matsubara_decomposition(j, 0.01, 10);
        for (double t : {0.01, 0.05, 0.1, 0.2, 0.5}) {
            const auto q = correlation_quadrature(j, 0.01, t);
            CHECK(std::abs(q.value - correlation_eval(d, t)) < 1e-4);
        }
    }
    SUBCASE("moderate temperature at the automatic epsilon") {
        const auto choice = auto_matsubara_epsilon(j, 0.5);
        CHECK(choice.converged);
        const auto d = matsubara_decomposition(j, 0.5, choice.epsilon);
        for (double t : {0.02, 0.1, 0.5}) {
            const auto q = correlation_quadrature(j, 0.5, t);
            CHECK(std::abs(q.value - correlation_eval(d, t)) < 1e-4);
        }
    }
    SUBCASE("imaginary part is exactly the zeta_0 exponential") {
        // Im C(t) = -chi omega_c e^{-omega_c t} independent of temperature.
        for (double beta : {0.01, 0.5}) {
            for (double t : {0.05, 0.3}) {
                const auto q = correlation_quadrature(j, beta, t);
                CHECK(q.value.imag() ==
                      doctest::Approx(-j.chi * j.omega_c *
                                      std::exp(-j.omega_c * t))
                          .epsilon(1e-6));
            }
        }
    }
}

TEST_CASE("Drude quadrature rejects t = 0 (log-divergent integral)") {
    CHECK_THROWS_AS(correlation_quadrature(OhmicDrude{0.05, 10.0}, 0.5, 0.0),
                    AccuracyError);
}

TEST_CASE("automatic Matsubara cutoff scales with temperature") {
    const OhmicDrude j{0.05, 10.0};
    const auto hot = auto_matsubara_epsilon(j, 0.01);
    const auto warm = auto_matsubara_epsilon(j, 0.1);
    const auto cool = auto_matsubara_epsilon(j, 0.5);
    CHECK(hot.converged);
    CHECK(warm.converged);
    CHECK(cool.converged);
    CHECK(hot.epsilon <= warm.epsilon);
    CHECK(warm.epsilon <= cool.epsilon);
    CHECK(cool.epsilon <= 64);

    // Very low temperature trips the cap and surfaces a warning.
    const auto cold = auto_matsubara_epsilon(j, 50.0);
    CHECK_FALSE(cold.converged);
    CHECK_FALSE(cold.warning.empty());
    CHECK(cold.epsilon == 64);
}

TEST_CASE("decomposition fidelity contract holds at its own check times") {
    // |eval - quadrature| < stated_tol for t >= fidelity_t_min.
    const Lorentzian lor{0.5, 0.5, 0.0};
    const auto dl = lorentz_zero_t_decomposition(lor);
    for (double scaled : {0.0, 0.1, 1.0, 5.0}) {
        const double t = std::max(dl.fidelity_t_min, scaled / lor.lambda);
        const auto q = correlation_quadrature(lor, ZERO_TEMPERATURE, t);
        CHECK(std::abs(q.value - correlation_eval(dl, t)) < dl.stated_tol);
    }

    const OhmicDrude ohm{0.05, 10.0};
    const auto choice = auto_matsubara_epsilon(ohm, 0.1);
    const auto dm = matsubara_decomposition(ohm, 0.1, choice.epsilon);
    for (double scaled : {0.2, 1.0, 5.0}) {
        const double t = std::max(dm.fidelity_t_min, scaled / ohm.omega_c);
        const auto q = correlation_quadrature(ohm, 0.1, t);
        CHECK(std::abs(q.value - correlation_eval(dm, t)) < dm.stated_tol);
    }
}
