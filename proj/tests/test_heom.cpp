#include "doctest.h"

#include <cmath>

#include "zenosim/dephasing_oracle.hpp"
#include "zenosim/errors.hpp"
#include "zenosim/heom.hpp"
#include "zenosim/models.hpp"

using namespace zenosim;
using namespace zenosim::heom;

namespace {

double kappa_closed_form(double gamma0, double lambda, double t) {
    return 2.0 * gamma0 * (t - (1.0 - std::exp(-lambda * t)) / lambda);
}

StateVector plus_state() {
    Vector v(2);
    v << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
    return StateVector{v};
}

HierarchyState evolved(const HeomGenerator& gen, const DensityMatrix& rho0,
                       double t, double dt) {
    HierarchyState s = initial_state(gen, rho0);
    evolve(gen, s, t, dt);
    return s;
}

} // namespace

TEST_CASE("zero-T generator structure") {
    const auto model = models::biased_qubit(1.0, 0.0);

    SUBCASE("nu pairs lambda -/+ i omega0") {
        const auto gen =
            build_zero_t_generator(model, bath::Lorentzian{0.5, 0.3, 0.7}, 2);
        CHECK(gen.nu[0] == Complex(0.3, -0.7));
        CHECK(gen.nu[1] == Complex(0.3, 0.7));
    }
    SUBCASE("omega0 = 0 gives two equal real rates") {
        const auto gen =
            build_zero_t_generator(model, bath::Lorentzian{0.5, 0.3, 0.0}, 2);
        CHECK(gen.nu[0] == Complex(0.3, 0.0));
        CHECK(gen.nu[1] == Complex(0.3, 0.0));
    }
    SUBCASE("depth cap below 1 rejected") {
        CHECK_THROWS_AS(
            build_zero_t_generator(model, bath::Lorentzian{0.5, 0.3, 0.0}, 0),
            ContractError);
    }
}

TEST_CASE("closed-system limit: gamma0 = 0 evolves unitarily") {
    const double eps = 1.3;
    const auto model = models::biased_qubit(eps, 0.0);
    const auto gen =
        build_zero_t_generator(model, bath::Lorentzian{0.0, 0.5, 0.0}, 3);
    const double t = M_PI / eps;
    const auto s = evolved(gen, pure_state_density(plus_state()), t, 0.002);
    const Matrix rho = s.ado(0);
    // rho_eg(t) = (1/2) e^{-i eps t} = -1/2 at t = pi/eps
    CHECK(rho(0, 1).real() == doctest::Approx(-0.5).epsilon(1e-8));
    CHECK(std::abs(rho(0, 1).imag()) < 1e-8);
    // populations untouched
    CHECK(rho(0, 0).real() == doctest::Approx(0.5).epsilon(1e-10));
    // every auxiliary operator stays zero
    for (std::size_t pos = 1; pos < gen.n_ados(); ++pos) {
        CHECK(s.ado(pos).cwiseAbs().maxCoeff() < 1e-14);
    }
}

TEST_CASE("pure dephasing qubit reproduces the exact coherence decay") {
    // Oracle discipline: the closed form is verified against the independent
    // quadrature before the hierarchy is graded against it.
    const bath::Lorentzian j{0.5, 0.05, 0.0};
    const bath::SpectralDensity spec = j;
    for (double t : {1.0, 5.0, 10.0}) {
        CHECK(std::abs(oracle::kappa(spec, t) -
                       kappa_closed_form(j.gamma0, j.lambda, t)) < 1e-7);
    }

    const auto model = models::biased_qubit(1.0, 0.0);
    const auto gen = build_zero_t_generator(model, j, 14);
    const auto rho0 = pure_state_density(plus_state());
    for (double t : {1.0, 5.0, 10.0}) {
        const auto s = evolved(gen, rho0, t, 0.01);
        const Matrix rho = s.ado(0);
        const double expected =
            0.5 * std::exp(-kappa_closed_form(j.gamma0, j.lambda, t));
        CAPTURE(t);
        CHECK(std::abs(std::abs(rho(0, 1)) - expected) < 1e-5);
        // phase is exactly the free rotation e^{-i eps t}
        const Complex rotated = rho(0, 1) * std::exp(Complex(0.0, t));
        CHECK(std::abs(rotated.imag()) < 1e-5);
    }
}

TEST_CASE("dephasing qutrit phase pins the anticommutator pairing") {
    // With omega0 != 0 the (1,0) coherence acquires the phase-diffusion
    // factor e^{-i phi(t)}; its sign discriminates the Psi_p pairing against
    // the nu ordering (the kappa part is pairing-blind).
    const bath::Lorentzian j{0.3, 0.5, 1.0};
    const bath::SpectralDensity spec = j;
    const double eps = 1.0;
    const double t = 2.0;
    const auto model = models::biased_qutrit(eps, 0.0);

    Vector amps(3);
    amps << std::sqrt(0.5), std::sqrt(0.5), 0.0;
    const auto rho0 = pure_state_density(StateVector{amps});

    const auto gen = build_zero_t_generator(model, j, 16);
    const auto s = evolved(gen, rho0, t, 0.002);
    const Complex heom_factor = s.ado(0)(0, 1) / rho0.rho(0, 1);
    const Complex exact =
        oracle::dephasing_qutrit_rho_element(spec, eps, t, 1.0, 0.0);
    CHECK(std::abs(heom_factor - exact) < 1e-5);
    // phi(t) is large enough here that a sign flip is unmistakable
    CHECK(std::abs(oracle::phi(spec, t)) > 0.05);

    // Mutation: flipping the anticommutator weights must break the phase.
    HeomGenerator flipped = gen;
    flipped.down_w2 = {-gen.down_w2[0], -gen.down_w2[1]};
    const auto s_bad = evolved(flipped, rho0, t, 0.002);
    const Complex bad_factor = s_bad.ado(0)(0, 1) / rho0.rho(0, 1);
    CHECK(std::abs(bad_factor - exact) > 1e-3);
}

TEST_CASE("dark state stays frozen under pure dephasing") {
    const auto model = models::biased_qubit(1.0, 0.0);
    const auto gen =
        build_zero_t_generator(model, bath::Lorentzian{0.5, 0.5, 0.0}, 8);
    Vector e(2);
    e << 1.0, 0.0;
    const auto s = evolved(gen, pure_state_density(StateVector{e}), 5.0, 0.01);
    const Matrix rho = s.ado(0);
    CHECK(rho(0, 0).real() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(rho(0, 1)) < 1e-12);
}

TEST_CASE("structure preservation during relaxation dynamics") {
    const auto model = models::biased_qubit(0.85, -0.3 * 0.85);
    const auto gen =
        build_zero_t_generator(model, bath::Lorentzian{0.1, 0.5, 0.3}, 8);
    Vector e(2);
    e << 1.0, 0.0;
    const auto s = evolved(gen, pure_state_density(StateVector{e}), 6.0, 0.01);

    SUBCASE("trace is conserved") {
        CHECK(std::abs(s.ado(0).trace() - Complex(1.0, 0.0)) < 1e-10);
    }
    SUBCASE("physical state stays Hermitian") {
        CHECK(hermiticity_residual(s.ado(0)) < 1e-10);
    }
    SUBCASE("ADO conjugation symmetry rho_(l1,l2) = rho_(l2,l1)^dagger") {
        const auto& layout = *gen.layout;
        for (std::size_t pos = 0; pos < layout.size(); ++pos) {
            const int l1 = layout.component(pos, 0);
            const int l2 = layout.component(pos, 1);
            // locate the transposed index
            for (std::size_t other = 0; other < layout.size(); ++other) {
                if (layout.component(other, 0) == l2 &&
                    layout.component(other, 1) == l1) {
                    const Matrix a = s.ado(pos);
                    const Matrix b = s.ado(other);
                    CHECK((a - b.adjoint()).cwiseAbs().maxCoeff() < 1e-8);
                    break;
                }
            }
        }
    }
    SUBCASE("reduced state is a valid density matrix") {
        const DensityMatrix rho = reduced_state(s);
        CHECK_NOTHROW(rho.validate());
    }
}

TEST_CASE("depth error decreases monotonically on the Fig.-1 configuration") {
    const bath::Lorentzian j{0.5, 0.05, 0.0};
    const auto model = models::biased_qubit(1.0, 0.0);
    const auto rho0 = pure_state_density(plus_state());
    const double tau = 5.0;
    const double exact = 0.5 * std::exp(-kappa_closed_form(0.5, 0.05, tau));

    double prev_err = 1e300;
    for (int depth : {2, 4, 6, 8}) {
        const auto gen = build_zero_t_generator(model, j, depth);
        const auto s = evolved(gen, rho0, tau, 0.01);
        const double err = std::abs(std::abs(s.ado(0)(0, 1)) - exact);
        CAPTURE(depth);
        CHECK(err <= prev_err + 1e-12);
        prev_err = err;
    }
}

TEST_CASE("Markovian limit: coherence decays at 2 gamma0 when lambda = 100 gamma0") {
    const double gamma0 = 0.5;
    const bath::Lorentzian j{gamma0, 100.0 * gamma0, 0.0};
    const auto model = models::biased_qubit(1.0, 0.0);
    const auto gen = build_zero_t_generator(model, j, 4);
    const auto rho0 = pure_state_density(plus_state());
    // fit the log-slope of |rho_eg| between t1 and t2 (both >> 1/lambda)
    const double t1 = 0.2;
    const double t2 = 1.0;
    const auto s1 = evolved(gen, rho0, t1, 0.002);
    const auto s2 = evolved(gen, rho0, t2, 0.002);
    const double rate = -(std::log(std::abs(s2.ado(0)(0, 1))) -
                          std::log(std::abs(s1.ado(0)(0, 1)))) /
                        (t2 - t1);
    CHECK(rate == doctest::Approx(2.0 * gamma0).epsilon(0.02));
}

TEST_CASE("finite-temperature generator matches the truncated-model closed form") {
    const bath::OhmicDrude j{0.05, 10.0};
    const double beta = 0.5;
    const int epsilon = 3;
    const auto model = models::biased_qubit(1.0, 0.0);
    const auto gen = build_finite_t_generator(model, j, beta, epsilon, 10);

    SUBCASE("terminator coefficient is real") {
        CHECK(std::abs(gen.terminator_coefficient.imag()) < 1e-12);
        CHECK(gen.terminator_coefficient.real() > 0.0);
    }

    SUBCASE("dephasing coherence follows the series closed form") {
        // For Delta = 0 the truncated hierarchy is exactly solvable:
        // |rho_eg(t)| = (1/2) exp(-4 sum_q zeta_q^R g_q(t) - 4 c t),
        // g_q(t) = (u t - 1 + e^{-u t})/u^2.
        const auto decomp = bath::matsubara_decomposition(j, beta, epsilon);
        const auto rho0 = pure_state_density(plus_state());
        for (double t : {0.1, 0.5, 1.5}) {
            double exponent =
                4.0 * gen.terminator_coefficient.real() * t;
            for (const auto& term : decomp.terms) {
                const double u = term.upsilon.real();
                exponent += 4.0 * term.zeta.real() *
                            (u * t - 1.0 + std::exp(-u * t)) / (u * u);
            }
            const auto s = evolved(gen, rho0, t, 2e-4);
            CAPTURE(t);
            CHECK(std::abs(std::abs(s.ado(0)(0, 1)) -
                           0.5 * std::exp(-exponent)) < 1e-6);
        }
    }

    SUBCASE("terminator vanishes in the high-temperature limit") {
        const auto hot = build_finite_t_generator(model, j, 1e-3, 0, 2);
        CHECK(std::abs(hot.terminator_coefficient) < 1e-4);
    }

    SUBCASE("every ADO stays Hermitian at finite temperature") {
        const auto relax = models::biased_qubit(1.0, -0.1);
        const auto gen2 = build_finite_t_generator(relax, j, beta, 2, 4);
        Vector e(2);
        e << 1.0, 0.0;
        const auto s =
            evolved(gen2, pure_state_density(StateVector{e}), 0.8, 2e-4);
        for (std::size_t pos = 0; pos < gen2.n_ados(); ++pos) {
            CHECK(hermiticity_residual(s.ado(pos)) < 1e-9);
        }
    }

    SUBCASE("depth 0 is a single time-local equation") {
        const auto gen0 = build_finite_t_generator(model, j, beta, 1, 0);
        CHECK(gen0.n_ados() == 1);
        const auto s =
            evolved(gen0, pure_state_density(plus_state()), 0.3, 1e-4);
        CHECK(std::abs(s.ado(0).trace() - Complex(1.0, 0.0)) < 1e-10);
    }
}

TEST_CASE("reduced state of the fresh hierarchy is the initial state") {
    const auto model = models::biased_qubit(1.0, 0.3);
    const auto gen =
        build_zero_t_generator(model, bath::Lorentzian{0.5, 0.5, 0.0}, 3);
    const auto rho0 = pure_state_density(plus_state());
    const HierarchyState s = initial_state(gen, rho0);
    const DensityMatrix out = reduced_state(s);
    // read-out renormalizes by the trace, which is 1 only to an ulp
    CHECK((out.rho - rho0.rho).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("integrator guard rails") {
    const auto model = models::biased_qubit(1.0, 0.0);
    const auto gen =
        build_zero_t_generator(model, bath::Lorentzian{0.5, 2.0, 0.0}, 10);
    auto rho0 = pure_state_density(plus_state());

    SUBCASE("stability guard rejects large steps with a suggestion") {
        HierarchyState s = initial_state(gen, rho0);
        try {
            evolve(gen, s, 1.0, 0.1); // dt * max|l.nu| = 0.1 * 20 = 2
            FAIL("expected StepSizeError");
        } catch (const StepSizeError& e) {
            CHECK(e.suggested_dt > 0.0);
            CHECK(e.suggested_dt * gen.max_abs_diag < 0.5);
        }
    }
    SUBCASE("nonpositive dt rejected") {
        HierarchyState s = initial_state(gen, rho0);
        CHECK_THROWS_AS(evolve(gen, s, 1.0, 0.0), ContractError);
    }
    SUBCASE("NaN states are reported as divergence") {
        HierarchyState s = initial_state(gen, rho0);
        s.re[3] = std::numeric_limits<double>::quiet_NaN();
        CHECK_THROWS_AS(evolve(gen, s, 0.5, 0.01), DivergenceError);
    }
    SUBCASE("reduced_state rejects drifted traces") {
        HierarchyState s = initial_state(gen, rho0);
        s.re[0] = 0.7; // trace now 1.2
        s.re[3] = 0.5;
        CHECK_THROWS_AS(reduced_state(s), IntegrityError);
    }
}

TEST_CASE("depth convergence control") {
    SUBCASE("infinite tolerance returns L_start") {
        int calls = 0;
        const auto r = converge_in_depth(
            [&](int depth) {
                ++calls;
                return static_cast<double>(depth);
            },
            3, 10, std::numeric_limits<double>::infinity());
        CHECK(r.converged_depth == 3);
        CHECK(r.value == 3.0);
        CHECK(calls == 1);
    }
    SUBCASE("depth-independent functional converges at L_start") {
        const auto r =
            converge_in_depth([](int) { return 1.25; }, 1, 10, 1e-10);
        CHECK(r.converged_depth == 1);
        CHECK(r.value == 1.25);
    }
    SUBCASE("geometric approach converges at the documented depth") {
        // value(L) = 1 + 8^-L: |v(L)-v(L-1)| = 7 * 8^-L first drops below
        // 1e-3 at L = 5
        const auto r = converge_in_depth(
            [](int depth) { return 1.0 + std::pow(8.0, -depth); }, 1, 20, 1e-3);
        CHECK(r.converged_depth == 5);
    }
    SUBCASE("exhaustion raises NonConvergenceError with the last delta") {
        try {
            converge_in_depth([](int depth) { return depth * 1.0; }, 1, 4, 1e-3);
            FAIL("expected NonConvergenceError");
        } catch (const NonConvergenceError& e) {
            CHECK(e.last_delta == doctest::Approx(1.0));
        }
    }
}
