#include "doctest.h"

#include <cmath>

#include "zenosim/dephasing_oracle.hpp"
#include "zenosim/errors.hpp"

using namespace zenosim;
using bath::Lorentzian;
using bath::SpectralDensity;

namespace {

// Closed form for the centered Lorentzian, obtained by double time
// integration of the single-exponential correlation function; the quadrature
// must agree with it before it is used anywhere else.
double kappa_closed_form(double gamma0, double lambda, double tau) {
    return 2.0 * gamma0 * (tau - (1.0 - std::exp(-lambda * tau)) / lambda);
}

} // namespace

TEST_CASE("kappa quadrature agrees with the closed form to 1e-7") {
    for (const auto& j :
         {Lorentzian{0.5, 0.05, 0.0}, Lorentzian{0.5, 0.5, 0.0},
          Lorentzian{0.5, 5.0, 0.0}, Lorentzian{0.2, 0.02, 0.0}}) {
        const SpectralDensity spec = j;
        for (double scaled : {0.5, 2.0, 10.0}) {
            const double tau = scaled / j.lambda;
            const double diff =
                std::abs(oracle::kappa(spec, tau) -
                         kappa_closed_form(j.gamma0, j.lambda, tau));
            CAPTURE(j.lambda);
            CAPTURE(tau);
            CHECK(diff < 1e-7);
        }
    }
}

TEST_CASE("kappa stays accurate when panels nearly commensurate the period") {
    // Large lambda*tau once produced coherent per-panel Simpson residuals
    // (quarter-period panel alignment); these grid values pin the fix.
    const Lorentzian j{0.5, 5.0, 0.0};
    const SpectralDensity spec = j;
    for (double tau : {17.1714285714286, 22.8785714285714, 34.2928571428571}) {
        const double diff = std::abs(
            oracle::kappa(spec, tau) - kappa_closed_form(0.5, 5.0, tau));
        CAPTURE(tau);
        CHECK(diff < 1e-7);
    }
}

TEST_CASE("kappa basics") {
    const SpectralDensity j = Lorentzian{0.5, 0.05, 0.0};
    CHECK(oracle::kappa(j, 0.0) == 0.0);
    CHECK_THROWS_AS(oracle::kappa(j, -1.0), DomainError);

    // small-tau expansion gamma0 lambda tau^2
    const double tau = 0.05;
    CHECK(oracle::kappa(j, tau) ==
          doctest::Approx(0.5 * 0.05 * tau * tau).epsilon(2e-3));

    // non-negative and non-decreasing on a grid
    double prev = 0.0;
    for (double t : {0.5, 1.0, 2.0, 5.0, 10.0, 40.0}) {
        const double k = oracle::kappa(j, t);
        CHECK(k >= prev - 1e-12);
        prev = k;
    }
}

TEST_CASE("phi vanishes for a centered Lorentzian and is negative off-center") {
    const SpectralDensity centered = Lorentzian{0.5, 0.05, 0.0};
    CHECK(oracle::phi(centered, 0.0) == 0.0);
    CHECK(std::abs(oracle::phi(centered, 1.0)) < 1e-9);
    CHECK(std::abs(oracle::phi(centered, 5.0)) < 1e-9);

    const SpectralDensity detuned = Lorentzian{0.2, 0.5, 1.0};
    CHECK(oracle::phi(detuned, 1.0) < 0.0);
    CHECK(oracle::phi(detuned, 2.0) < 0.0);
}

TEST_CASE("dephasing qubit rate") {
    const SpectralDensity j = Lorentzian{0.5, 0.05, 0.0};
    CHECK_THROWS_AS(oracle::dephasing_qubit_gamma(j, 0.0), DomainError);

    // kappa -> 0 gives Gamma -> 0 (leading behavior gamma0 lambda tau / 2)
    CHECK(oracle::dephasing_qubit_gamma(j, 1e-4) < 1e-5);

    // saturation: kappa large forces Gamma -> ln(2)/tau
    const SpectralDensity strong = Lorentzian{50.0, 5.0, 0.0};
    const double tau = 10.0;
    CHECK(oracle::dephasing_qubit_gamma(strong, tau) ==
          doctest::Approx(std::log(2.0) / tau).epsilon(1e-6));

    // Fig. 1 configuration has a single interior peak on (0, 40]
    const SpectralDensity fig1 = Lorentzian{0.5, 0.05, 0.0};
    std::vector<double> gamma;
    std::vector<double> taus;
    for (int i = 1; i <= 80; ++i) {
        taus.push_back(0.5 * i);
        gamma.push_back(oracle::dephasing_qubit_gamma(fig1, taus.back()));
    }
    int n_max = 0;
    for (std::size_t i = 1; i + 1 < gamma.size(); ++i) {
        if (gamma[i] > gamma[i - 1] && gamma[i] >= gamma[i + 1]) {
            ++n_max;
        }
    }
    CHECK(n_max == 1);
}

TEST_CASE("dephasing qutrit propagator factors") {
    const SpectralDensity j = Lorentzian{0.2, 0.02, 0.0};
    const double eps = 1.0;
    const double t = 2.0;

    // populations frozen
    CHECK(oracle::dephasing_qutrit_rho_element(j, eps, t, 1.0, 1.0) ==
          Complex(1.0, 0.0));

    // (m, m') = (1, -1): |factor| = e^{-4 kappa}, phase -2 eps t
    const Complex f1 = oracle::dephasing_qutrit_rho_element(j, eps, t, 1.0, -1.0);
    CHECK(std::abs(f1) ==
          doctest::Approx(std::exp(-4.0 * oracle::kappa(j, t))).epsilon(1e-10));
    CHECK(std::arg(f1 * std::exp(Complex(0.0, 2.0 * eps * t))) ==
          doctest::Approx(0.0).epsilon(1e-9));

    // (m, m') = (1, 0) carries the phi phase
    const Complex f2 = oracle::dephasing_qutrit_rho_element(j, eps, t, 1.0, 0.0);
    const Complex expected =
        std::exp(Complex(0.0, -eps * t)) *
        std::exp(Complex(0.0, -oracle::phi(j, t))) *
        std::exp(-oracle::kappa(j, t));
    CHECK(std::abs(f2 - expected) < 1e-12);
}

TEST_CASE("qutrit coherent-state rate reduces to the qubit rate at J = 1/2") {
    const SpectralDensity j = Lorentzian{0.5, 0.5, 0.0};
    for (double tau : {1.0, 5.0}) {
        const double qutrit =
            oracle::dephasing_qutrit_gamma(j, Complex(1.0, 0.0), 0.5, tau);
        const double qubit = oracle::dephasing_qubit_gamma(j, tau);
        CHECK(std::abs(qutrit - qubit) < 1e-9);
    }
}

TEST_CASE("qutrit coherent-state rate across a tau grid stays the qubit rate") {
    const SpectralDensity j = Lorentzian{0.2, 0.02, 0.0};
    for (double tau = 0.5; tau < 20.0; tau *= 2.0) {
        CHECK(std::abs(oracle::dephasing_qutrit_gamma(j, Complex(1.0, 0.0), 0.5,
                                                      tau) -
                       oracle::dephasing_qubit_gamma(j, tau)) < 1e-9);
    }
}

TEST_CASE("qutrit rate edge cases") {
    const SpectralDensity j = Lorentzian{0.2, 0.02, 0.0};
    CHECK_THROWS_AS(
        oracle::dephasing_qutrit_gamma(j, Complex(0.0, 0.0), 1.0, 1.0),
        DomainError);
    CHECK_THROWS_AS(oracle::dephasing_qutrit_gamma(j, Complex(1.0, 0.0), 1.0, 0.0),
                    DomainError);
    // tau -> 0 limit through the kernels: bracket -> 1, Gamma -> 0
    CHECK(oracle::dephasing_qutrit_gamma(j, Complex(1.0, 0.0), 1.0, 1e-5) ==
          doctest::Approx(0.0).epsilon(1e-6));

    // Fig. 3 configuration single peak
    const SpectralDensity fig3 = Lorentzian{0.2, 0.02, 0.0};
    std::vector<double> gamma;
    for (int i = 1; i <= 80; ++i) {
        gamma.push_back(oracle::dephasing_qutrit_gamma(fig3, Complex(1.0, 0.0),
                                                       1.0, 0.5 * i));
    }
    int n_max = 0;
    for (std::size_t i = 1; i + 1 < gamma.size(); ++i) {
        if (gamma[i] > gamma[i - 1] && gamma[i] >= gamma[i + 1]) {
            ++n_max;
        }
    }
    CHECK(n_max == 1);
}

TEST_CASE("rates are nonnegative and vanish at small tau") {
    const SpectralDensity j = Lorentzian{0.5, 0.5, 0.0};
    for (double tau = 0.01; tau < 50.0; tau *= 3.0) {
        CHECK(oracle::dephasing_qubit_gamma(j, tau) >= 0.0);
    }
    CHECK(oracle::dephasing_qubit_gamma(j, 1e-3) < 1e-3);
}

TEST_CASE("short-time Zeno time formula") {
    // gamma0 lambda = 2 -> tau_Z = 1
    CHECK(oracle::short_time_zeno_time(Lorentzian{0.5, 4.0, 0.0}) ==
          doctest::Approx(1.0));
    // doubling lambda divides tau_Z by sqrt(2)
    const double a = oracle::short_time_zeno_time(Lorentzian{0.5, 1.0, 0.0});
    const double b = oracle::short_time_zeno_time(Lorentzian{0.5, 2.0, 0.0});
    CHECK(a / b == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    CHECK_THROWS_AS(oracle::short_time_zeno_time(Lorentzian{0.5, 1.0, 0.3}),
                    DomainError);
}
