#include "zenosim/verify.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>

#include <json.hpp>

#include "zenosim/csv.hpp"
#include "zenosim/dephasing_oracle.hpp"
#include "zenosim/errors.hpp"
#include "zenosim/infoflow.hpp"
#include "zenosim/runner.hpp"
#include "zenosim/zeno.hpp"

namespace zenosim::verify {

namespace {

namespace fs = std::filesystem;
using zeno::BathSetup;
using zeno::SolverSettings;

std::vector<double> linear_grid(double lo, double hi, int n) {
    std::vector<double> g(n);
    for (int i = 0; i < n; ++i) {
        g[i] = lo + (hi - lo) * i / (n - 1);
    }
    return g;
}

std::vector<double> log_grid(double lo, double hi, int n) {
    std::vector<double> g(n);
    const double r = std::log(hi / lo);
    for (int i = 0; i < n; ++i) {
        g[i] = lo * std::exp(r * i / (n - 1));
    }
    g.back() = hi;
    return g;
}

StateVector qubit_plus() {
    Vector v(2);
    v << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
    return StateVector{v};
}

StateVector basis_excited(int dim) {
    Vector v = Vector::Zero(dim);
    v(0) = 1.0;
    return StateVector{v};
}

double through_origin_slope(const std::vector<double>& tau,
                            const std::vector<double>& gamma) {
    double st2 = 0.0;
    double stg = 0.0;
    for (std::size_t i = 0; i < tau.size(); ++i) {
        st2 += tau[i] * tau[i];
        stg += tau[i] * gamma[i];
    }
    return stg / st2;
}

double lsq_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

// Short-time window inside the quadratic-survival regime for a centered
// Lorentzian dephasing curve: both lambda*tau and kappa(tau) must stay small.
double dephasing_fit_window(double gamma0, double lambda) {
    return std::min(0.1 / lambda, std::sqrt(0.05 / (gamma0 * lambda)));
}

// ---- criterion 1 ------------------------------------------------------------

CriterionResult criterion_dephasing_qubit(int threads) {
    CriterionResult r;
    r.id = 1;
    r.name = "dephasing-qubit oracle equivalence (Fig. 1 family)";
    const auto model = models::biased_qubit(1.0, 0.0);
    const auto grid = linear_grid(0.05, 40.0, 50);
    std::ostringstream detail;
    double worst = 0.0;
    for (double lambda : {0.05, 0.5, 5.0}) {
        const bath::Lorentzian j{0.5, lambda, 0.0};
        BathSetup setup{j, bath::ZERO_TEMPERATURE};
        SolverSettings settings;
        settings.dt = 0.02;
        settings.l_max = 48;
        const auto scan =
            zeno::scan(model, setup, qubit_plus(), grid, settings, threads);
        double max_err = 0.0;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const double exact = oracle::dephasing_qubit_gamma(
                bath::SpectralDensity{j}, grid[i]);
            max_err = std::max(max_err, std::abs(scan.gamma[i] - exact));
        }
        detail << "lambda=" << lambda << ": max|dGamma|="
               << csv::format_number(max_err) << "; ";
        worst = std::max(worst, max_err);
    }
    r.passed = worst < 1e-3;
    r.detail = detail.str() + "threshold 1e-3";
    return r;
}

// ---- criterion 2 ------------------------------------------------------------

CriterionResult criterion_dark_state(int threads) {
    CriterionResult r;
    r.id = 2;
    r.name = "dark-state nullity (excited state, pure dephasing)";
    const auto model = models::biased_qubit(1.0, 0.0);
    const bath::Lorentzian j{0.5, 0.5, 0.0};
    BathSetup setup{j, bath::ZERO_TEMPERATURE};
    SolverSettings settings;
    const auto grid = linear_grid(0.05, 40.0, 50);
    const auto scan =
        zeno::scan(model, setup, basis_excited(2), grid, settings, threads);
    double worst = 0.0;
    for (double g : scan.gamma) {
        worst = std::max(worst, std::abs(g));
    }
    r.passed = worst < 1e-8;
    std::ostringstream detail;
    detail << "max|Gamma| = " << csv::format_number(worst) << " (threshold 1e-8)";
    r.detail = detail.str();
    return r;
}

// ---- criterion 3 ------------------------------------------------------------

CriterionResult criterion_dephasing_qutrit(int threads) {
    CriterionResult r;
    r.id = 3;
    r.name = "dephasing-qutrit oracle equivalence (Fig. 3 family)";
    const auto model = models::biased_qutrit(1.0, 0.0);
    const auto psi0 = models::su2_coherent_state(1.0, M_PI / 2.0, 0.0);
    const auto grid = log_grid(0.05, 40.0, 50);
    std::ostringstream detail;
    bool pass = true;
    for (double lambda : {0.02, 0.2, 2.0}) {
        const bath::Lorentzian j{0.2, lambda, 0.0};
        BathSetup setup{j, bath::ZERO_TEMPERATURE};
        SolverSettings settings;
        settings.dt = 0.02;
        settings.l_max = 48;
        const auto scan = zeno::scan(model, setup, psi0, grid, settings, threads);
        double max_err = 0.0;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const double exact = oracle::dephasing_qutrit_gamma(
                bath::SpectralDensity{j}, Complex(1.0, 0.0), 1.0, grid[i]);
            max_err = std::max(max_err, std::abs(scan.gamma[i] - exact));
        }
        const auto [maxima, minima] = zeno::detect_crossovers(scan.gamma);
        detail << "lambda=" << lambda << ": max|dGamma|="
               << csv::format_number(max_err) << ", maxima=" << maxima.size()
               << "; ";
        pass = pass && max_err < 1e-3 && maxima.size() == 1;
    }
    r.passed = pass;
    r.detail = detail.str() + "threshold 1e-3, expected exactly 1 maximum";
    return r;
}

// ---- criterion 4 ------------------------------------------------------------

CriterionResult criterion_zeno_time_scaling(int threads) {
    CriterionResult r;
    r.id = 4;
    r.name = "Zeno-time scaling tau_Z ~ (gamma0 lambda)^{-1/2}";
    const double gamma0 = 0.5;
    const auto model = models::biased_qubit(1.0, 0.0);
    const std::vector<double> lambdas{0.02, 0.0632, 0.2, 0.632, 2.0};
    std::vector<double> log_lambda, log_tz_exact, log_tz_heom;
    bool pass = true;
    std::ostringstream detail;
    for (double lambda : lambdas) {
        const bath::Lorentzian j{gamma0, lambda, 0.0};
        const double window = dephasing_fit_window(gamma0, lambda);
        const auto grid = linear_grid(window / 8.0, window, 8);
        const double expected = oracle::short_time_zeno_time(j);

        zeno::ZenoScan exact_scan;
        exact_scan.tau = grid;
        for (double tau : grid) {
            exact_scan.gamma.push_back(oracle::dephasing_qubit_gamma(
                bath::SpectralDensity{j}, tau));
            exact_scan.survival.push_back(
                std::exp(-exact_scan.gamma.back() * tau));
        }
        const auto exact_fit = zeno::zeno_time(exact_scan, 8);

        BathSetup setup{j, bath::ZERO_TEMPERATURE};
        SolverSettings settings;
        settings.dt = window / 64.0;
        settings.conv_tol = 1e-7;
        settings.l_max = 30;
        const auto scan =
            zeno::scan(model, setup, qubit_plus(), grid, settings, threads);
        const auto heom_fit = zeno::zeno_time(scan, 8);

        const double dev_exact = std::abs(exact_fit.tau_z - expected) / expected;
        const double dev_heom = std::abs(heom_fit.tau_z - expected) / expected;
        pass = pass && dev_exact < 0.05 && dev_heom < 0.05;
        detail << "lambda=" << lambda << ": exact dev="
               << csv::format_number(dev_exact)
               << ", heom dev=" << csv::format_number(dev_heom) << "; ";

        log_lambda.push_back(std::log(lambda));
        log_tz_exact.push_back(std::log(exact_fit.tau_z));
        log_tz_heom.push_back(std::log(heom_fit.tau_z));
    }
    const double slope_exact = lsq_slope(log_lambda, log_tz_exact);
    const double slope_heom = lsq_slope(log_lambda, log_tz_heom);
    pass = pass && std::abs(slope_exact + 0.5) < 0.05 &&
           std::abs(slope_heom + 0.5) < 0.05;
    detail << "log-log slopes: exact " << csv::format_number(slope_exact)
           << ", heom " << csv::format_number(slope_heom)
           << " (target -0.5 +/- 0.05, tau_Z within 5%)";
    r.passed = pass;
    r.detail = detail.str();
    return r;
}

// ---- criterion 5 ------------------------------------------------------------

CriterionResult criterion_multiple_crossovers(int threads) {
    CriterionResult r;
    r.id = 5;
    r.name = "multiple Zeno/anti-Zeno crossovers (Fig. 2 family)";
    const double eps = 0.85;
    const auto model = models::biased_qubit(eps, -0.3 * eps);
    std::ostringstream detail;
    bool pass = true;
    for (double gamma0 : {0.02, 0.05}) {
        const bath::Lorentzian j{gamma0, 5.0 * gamma0, 0.0};
        BathSetup setup{j, bath::ZERO_TEMPERATURE};
        SolverSettings settings;
        settings.dt = 0.02;
        settings.l_max = 20;
        const auto grid = linear_grid(0.5, 60.0, 120);
        const auto scan =
            zeno::scan(model, setup, basis_excited(2), grid, settings, threads);
        detail << "gamma0=" << gamma0 << ": maxima=" << scan.maxima.size()
               << "; ";
        pass = pass && scan.maxima.size() >= 2;
    }
    r.passed = pass;
    r.detail = detail.str() + "expected >= 2 maxima on tau in (0, 60]";
    return r;
}

// ---- criterion 6 ------------------------------------------------------------

CriterionResult criterion_slope_ordering(int threads) {
    CriterionResult r;
    r.id = 6;
    r.name = "Markovian-vs-non-Markovian short-time slope ordering";
    std::ostringstream detail;
    bool pass = true;

    { // biased qubit, Fig. 2(d) regime
        const double eps = 0.85;
        const auto model = models::biased_qubit(eps, -0.3 * eps);
        const double gamma0 = 1.0;
        double slopes[2] = {0.0, 0.0};
        int idx = 0;
        for (double lambda : {10.0 * gamma0, 0.1 * gamma0}) {
            const bath::Lorentzian j{gamma0, lambda, 0.0};
            BathSetup setup{j, bath::ZERO_TEMPERATURE};
            SolverSettings settings;
            settings.dt = 0.002;
            settings.conv_tol = 1e-6;
            settings.l_max = 30;
            const auto grid = linear_grid(0.01, 0.08, 8);
            const auto scan = zeno::scan(model, setup, basis_excited(2), grid,
                                         settings, threads);
            slopes[idx++] = through_origin_slope(scan.tau, scan.gamma);
        }
        detail << "qubit: a(10*gamma0)=" << csv::format_number(slopes[0])
               << " vs a(0.1*gamma0)=" << csv::format_number(slopes[1]) << "; ";
        pass = pass && slopes[0] > slopes[1];
    }

    { // dephasing qutrit, Fig. 3 regime
        const auto model = models::biased_qutrit(1.0, 0.0);
        const auto psi0 = models::su2_coherent_state(1.0, M_PI / 2.0, 0.0);
        const double gamma0 = 0.2;
        double slopes[2] = {0.0, 0.0};
        int idx = 0;
        for (double lambda : {10.0 * gamma0, 0.1 * gamma0}) {
            const bath::Lorentzian j{gamma0, lambda, 0.0};
            const double window = dephasing_fit_window(gamma0, lambda);
            BathSetup setup{j, bath::ZERO_TEMPERATURE};
            SolverSettings settings;
            settings.dt = window / 64.0;
            settings.conv_tol = 1e-7;
            const auto grid = linear_grid(window / 8.0, window, 8);
            const auto scan =
                zeno::scan(model, setup, psi0, grid, settings, threads);
            slopes[idx++] = through_origin_slope(scan.tau, scan.gamma);
        }
        detail << "qutrit: a(10*gamma0)=" << csv::format_number(slopes[0])
               << " vs a(0.1*gamma0)=" << csv::format_number(slopes[1]);
        pass = pass && slopes[0] > slopes[1];
    }

    r.passed = pass;
    r.detail = detail.str();
    return r;
}

// ---- criterion 7 ------------------------------------------------------------

CriterionResult criterion_finite_temperature(int threads) {
    CriterionResult r;
    r.id = 7;
    r.name = "finite-temperature slope ordering (Fig. 5a)";
    const double eps = 1.0;
    const auto model = models::biased_qubit(eps, -0.1 * eps);
    const bath::OhmicDrude j{0.05, 10.0};
    std::vector<double> betas{0.5, 0.1, 0.01};
    std::vector<double> slopes;
    std::ostringstream detail;
    for (double beta : betas) {
        BathSetup setup{j, beta};
        SolverSettings settings;
        settings.dt = 0.002;
        settings.conv_tol = 1e-6;
        settings.l_max = 12;
        const int epsilon = zeno::resolve_matsubara_epsilon(setup, settings);
        const auto grid = linear_grid(0.02, 0.16, 8);
        const auto scan = zeno::scan(model, setup, basis_excited(2), grid,
                                     settings, threads);
        slopes.push_back(through_origin_slope(scan.tau, scan.gamma));
        detail << "beta=" << beta << ": a=" << csv::format_number(slopes.back())
               << " (epsilon=" << epsilon << "); ";
    }
    // temperature increases left to right (beta decreases): slopes must rise
    const bool pass = slopes[0] < slopes[1] && slopes[1] < slopes[2];
    r.passed = pass;
    r.detail = detail.str() + "expected strictly increasing with temperature";
    return r;
}

// ---- criterion 8 ------------------------------------------------------------

struct StructureReport {
    double trace_drift;
    double herm_residual;
    double min_eigenvalue;
};

StructureReport structure_of_run(const models::ModelSpec& model,
                                 const BathSetup& setup, const StateVector& psi0,
                                 double t_final, const SolverSettings& settings) {
    // converge the depth on Gamma, then inspect the raw final state
    zeno::SolverSettings s = settings;
    const auto conv = heom::converge_in_depth(
        [&](int depth) {
            if (depth == 0 && setup.zero_temperature()) {
                return 0.0;
            }
            const double p =
                zeno::survival_at_depth(model, setup, psi0, t_final, s, depth);
            return zeno::effective_decay_rate(p, t_final);
        },
        s.l_start, s.l_max, s.conv_tol);

    const auto gen = zeno::make_generator(model, setup, s, conv.converged_depth);
    heom::HierarchyState state =
        heom::initial_state(gen, pure_state_density(psi0));
    heom::evolve(gen, state, t_final,
                 zeno::integration_step(gen, t_final, s.dt));
    const Matrix rho = state.ado(0);
    StructureReport rep{};
    rep.trace_drift = std::abs(rho.trace() - Complex(1.0, 0.0));
    rep.herm_residual = hermiticity_residual(rho);
    const Matrix herm = 0.5 * (rho + rho.adjoint().eval());
    rep.min_eigenvalue = hermitian_eigenvalues(herm).minCoeff();
    return rep;
}

CriterionResult criterion_structure(int threads) {
    (void)threads;
    CriterionResult r;
    r.id = 8;
    r.name = "structure preservation (trace, hermiticity, positivity)";
    std::ostringstream detail;
    bool pass = true;
    auto judge = [&](const char* tag, const StructureReport& rep) {
        detail << tag << ": drift=" << csv::format_number(rep.trace_drift)
               << ", herm=" << csv::format_number(rep.herm_residual)
               << ", min_eig=" << csv::format_number(rep.min_eigenvalue) << "; ";
        pass = pass && rep.trace_drift < 1e-8 && rep.herm_residual < 1e-10 &&
               rep.min_eigenvalue >= -1e-6;
    };

    SolverSettings settings;
    settings.dt = 0.01;
    judge("fig1", structure_of_run(models::biased_qubit(1.0, 0.0),
                                   {bath::Lorentzian{0.5, 0.05, 0.0},
                                    bath::ZERO_TEMPERATURE},
                                   qubit_plus(), 10.0, settings));
    judge("fig3",
          structure_of_run(models::biased_qutrit(1.0, 0.0),
                           {bath::Lorentzian{0.2, 0.02, 0.0},
                            bath::ZERO_TEMPERATURE},
                           models::su2_coherent_state(1.0, M_PI / 2.0, 0.0),
                           10.0, settings));
    SolverSettings finite = settings;
    finite.dt = 0.001;
    finite.l_max = 12;
    judge("fig5a", structure_of_run(models::biased_qubit(1.0, -0.1),
                                    {bath::OhmicDrude{0.05, 10.0}, 0.5},
                                    basis_excited(2), 0.5, finite));
    r.passed = pass;
    r.detail = detail.str() + "thresholds 1e-8 / 1e-10 / -1e-6";
    return r;
}

// ---- criterion 9 ------------------------------------------------------------

CriterionResult criterion_markovian_rate(int threads) {
    (void)threads;
    CriterionResult r;
    r.id = 9;
    r.name = "Markovian-limit coherence decay rate 2*gamma0";
    const double gamma0 = 0.5;
    const bath::Lorentzian j{gamma0, 100.0 * gamma0, 0.0};
    const auto model = models::biased_qubit(1.0, 0.0);
    BathSetup setup{j, bath::ZERO_TEMPERATURE};
    SolverSettings settings;
    settings.dt = 0.002;

    auto rate_at_depth = [&](int depth) {
        if (depth == 0) {
            return 0.0;
        }
        const auto gen = zeno::make_generator(model, setup, settings, depth);
        heom::HierarchyState state =
            heom::initial_state(gen, pure_state_density(qubit_plus()));
        const double step = zeno::integration_step(gen, 1.0, settings.dt);
        heom::evolve(gen, state, 0.2, step);
        const double c1 = std::abs(state.ado(0)(0, 1));
        heom::evolve(gen, state, 1.0, step);
        const double c2 = std::abs(state.ado(0)(0, 1));
        return -(std::log(c2) - std::log(c1)) / 0.8;
    };
    const auto conv = heom::converge_in_depth(rate_at_depth, 1, 10, 1e-4);
    const double rel = std::abs(conv.value - 2.0 * gamma0) / (2.0 * gamma0);
    r.passed = rel < 0.02;
    std::ostringstream detail;
    detail << "fitted rate " << csv::format_number(conv.value) << " vs "
           << csv::format_number(2.0 * gamma0) << " (rel dev "
           << csv::format_number(rel) << ", threshold 2%, L="
           << conv.converged_depth << ")";
    r.detail = detail.str();
    return r;
}

// ---- criterion 10 -----------------------------------------------------------

infoflow::FlowTrajectory dephasing_flow(double gamma0, double lambda,
                                        double t_max, int points) {
    const auto model = models::biased_qubit(1.0, 0.0);
    const bath::Lorentzian j{gamma0, lambda, 0.0};
    BathSetup setup{j, bath::ZERO_TEMPERATURE};
    SolverSettings settings;
    settings.dt = 0.005;
    const auto psi0 = qubit_plus();
    Vector minus(2);
    minus << 1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0);
    const DensityMatrix reference = pure_state_density(StateVector{minus});

    // Depth functional: grid-mean distance, so the whole transient (not just
    // the final point, where the coherence has already died) must converge.
    auto trajectory_value = [&](int depth, std::vector<double>* times,
                                std::vector<DensityMatrix>* rotated) {
        const auto gen = zeno::make_generator(model, setup, settings, depth);
        heom::HierarchyState state =
            heom::initial_state(gen, pure_state_density(psi0));
        const double step = zeno::integration_step(gen, t_max, settings.dt);
        double mean = 0.0;
        for (int i = 0; i < points; ++i) {
            const double t = t_max * i / (points - 1);
            if (t > state.t) {
                heom::evolve(gen, state, t, step);
            }
            const DensityMatrix rho = heom::reduced_state(state);
            const Matrix u = expm_i_hermitian(model.h_s, t);
            const DensityMatrix rot{u * rho.rho * u.adjoint()};
            if (times != nullptr) {
                times->push_back(t);
                rotated->push_back(rot);
            }
            mean += infoflow::trace_distance(rot, reference) / points;
        }
        return mean;
    };
    const auto conv = heom::converge_in_depth(
        [&](int depth) {
            if (depth == 0) {
                return 1.0; // decoupled limit keeps the distance at 1
            }
            return trajectory_value(depth, nullptr, nullptr);
        },
        1, 30, 1e-6);
    std::vector<double> times;
    std::vector<DensityMatrix> rotated;
    trajectory_value(conv.converged_depth, &times, &rotated);
    return infoflow::flow_decomposition(times, rotated, reference);
}

CriterionResult criterion_information_flow(int threads) {
    (void)threads;
    CriterionResult r;
    r.id = 10;
    r.name = "information-flow identity and gain split";
    const double gamma0 = 0.5;

    const auto markovian = dephasing_flow(gamma0, 100.0 * gamma0, 3.0, 301);
    const auto memory = dephasing_flow(gamma0, 0.1 * gamma0, 40.0, 401);

    const double id_m =
        std::abs(markovian.distance.back() - (markovian.distance.front() -
                                              markovian.info_loss +
                                              markovian.info_gain));
    const double id_n = std::abs(
        memory.distance.back() -
        (memory.distance.front() - memory.info_loss + memory.info_gain));

    const bool identity_ok = id_m < 1e-4 && id_n < 1e-4 &&
                             std::abs(markovian.distance.front() - 1.0) < 1e-9 &&
                             std::abs(memory.distance.front() - 1.0) < 1e-9;
    const bool markov_ok = markovian.info_gain < 1e-4;
    // "Strictly positive" gain is only decidable above the criterion's own
    // significance scale (the 1e-4 used for the Markovian side); anything
    // smaller is numerical residue, not demonstrated backflow.
    const bool backflow_ok = memory.info_gain > 1e-4;

    std::ostringstream detail;
    detail << "identity residuals " << csv::format_number(id_m) << " / "
           << csv::format_number(id_n) << "; gain(lambda=100*gamma0) = "
           << csv::format_number(markovian.info_gain)
           << "; gain(lambda=0.1*gamma0) = "
           << csv::format_number(memory.info_gain)
           << " [expected > 0 at the 1e-4 significance scale; the "
              "rotating-frame dephasing distance decreases monotonically "
              "(kappa' >= 0 for every lambda), so no backflow exists for "
              "this pair and the clause cannot be met]";
    r.passed = identity_ok && markov_ok && backflow_ok;
    r.detail = detail.str();
    return r;
}

// ---- criterion 11 -----------------------------------------------------------

CriterionResult criterion_bath_fidelity(int threads) {
    (void)threads;
    CriterionResult r;
    r.id = 11;
    r.name = "bath decomposition vs quadrature fidelity";
    std::ostringstream detail;
    bool pass = true;

    // Every zero-temperature Lorentzian shipped in configs/.
    const std::vector<bath::Lorentzian> lorentzians = {
        {0.5, 0.05, 0.0}, {0.5, 0.5, 0.0},  {0.5, 5.0, 0.0},
        {0.2, 0.02, 0.0}, {0.2, 0.2, 0.0},  {0.2, 2.0, 0.0},
        {0.02, 0.1, 0.0}, {0.05, 0.25, 0.0}, {0.1, 0.02, 1.0204},
    };
    double worst_zero = 0.0;
    for (const auto& j : lorentzians) {
        const auto d = bath::lorentz_zero_t_decomposition(j);
        for (double scaled : {0.0, 0.1, 1.0, 5.0}) {
            const double t = scaled / j.lambda;
            const auto q =
                bath::correlation_quadrature(j, bath::ZERO_TEMPERATURE, t);
            worst_zero = std::max(
                worst_zero, std::abs(q.value - bath::correlation_eval(d, t)));
        }
    }
    pass = pass && worst_zero < 1e-7;
    detail << "zero-T worst |eval-quad| = " << csv::format_number(worst_zero)
           << " (threshold 1e-7); ";

    // Finite-temperature Drude at the automatic cutoff.
    const bath::OhmicDrude drude{0.05, 10.0};
    double worst_finite = 0.0;
    for (double beta : {0.5, 0.1, 0.01}) {
        const auto choice = bath::auto_matsubara_epsilon(drude, beta);
        const auto d = bath::matsubara_decomposition(drude, beta, choice.epsilon);
        for (double scaled : {0.2, 1.0, 5.0}) {
            const double t = scaled / drude.omega_c;
            const auto q = bath::correlation_quadrature(drude, beta, t);
            worst_finite = std::max(
                worst_finite, std::abs(q.value - bath::correlation_eval(d, t)));
        }
    }
    pass = pass && worst_finite < 1e-4;
    detail << "finite-T worst |eval-quad| = " << csv::format_number(worst_finite)
           << " (threshold 1e-4, auto epsilon)";
    r.passed = pass;
    r.detail = detail.str();
    return r;
}

// ---- criterion 12 -----------------------------------------------------------

CriterionResult criterion_determinism(int threads) {
    (void)threads;
    CriterionResult r;
    r.id = 12;
    r.name = "thread-count determinism of zeno-scan CSV output";
    config::ExperimentConfig c;
    c.model.kind = "qubit";
    c.model.epsilon = 1.0;
    c.model.delta = 0.0;
    c.model.initial_state = "plus";
    c.bath.kind = "lorentzian";
    c.bath.gamma0 = 0.5;
    c.bath.lambda = 0.5;
    c.bath.omega0 = 0.0;
    c.bath.beta = "zero";
    c.scan.tau_min = 0.25;
    c.scan.tau_max = 6.0;
    c.scan.points = 8;
    c.output.directory = "out";

    const fs::path base = fs::temp_directory_path() / "zenosim-determinism";
    fs::remove_all(base);
    const auto run = [&](int n_threads, const std::string& sub) {
        const std::string dir = (base / sub).string();
        runner::run_zeno_scan(c, dir, n_threads);
        std::ifstream in(dir + "/zeno_scan.csv", std::ios::binary);
        std::ostringstream buf;
        buf << in.rdbuf();
        return buf.str();
    };
    const std::string a = run(1, "t1");
    const std::string b = run(8, "t8");
    fs::remove_all(base);
    r.passed = !a.empty() && a == b;
    std::ostringstream detail;
    detail << "byte-identical CSV across --threads 1 and --threads 8: "
           << (r.passed ? "yes" : "NO") << " (" << a.size() << " bytes)";
    r.detail = detail.str();
    return r;
}

using CriterionFn = CriterionResult (*)(int);

const std::vector<std::pair<int, CriterionFn>>& table() {
    static const std::vector<std::pair<int, CriterionFn>> t = {
        {1, criterion_dephasing_qubit},
        {2, criterion_dark_state},
        {3, criterion_dephasing_qutrit},
        {4, criterion_zeno_time_scaling},
        {5, criterion_multiple_crossovers},
        {6, criterion_slope_ordering},
        {7, criterion_finite_temperature},
        {8, criterion_structure},
        {9, criterion_markovian_rate},
        {10, criterion_information_flow},
        {11, criterion_bath_fidelity},
        {12, criterion_determinism},
    };
    return t;
}

} // namespace

std::vector<int> all_criterion_ids() {
    std::vector<int> ids;
    for (const auto& [id, fn] : table()) {
        ids.push_back(id);
    }
    return ids;
}

CriterionResult run_criterion(int id, int threads) {
    for (const auto& [cid, fn] : table()) {
        if (cid == id) {
            const auto start = std::chrono::steady_clock::now();
            CriterionResult r = fn(threads);
            r.seconds = std::chrono::duration<double>(
                            std::chrono::steady_clock::now() - start)
                            .count();
            return r;
        }
    }
    throw DomainError("unknown criterion id " + std::to_string(id));
}

std::vector<CriterionResult> run_all(int threads) {
    std::vector<CriterionResult> results;
    for (int id : all_criterion_ids()) {
        results.push_back(run_criterion(id, threads));
    }
    return results;
}

std::vector<CriterionResult> run_config_checks(const config::ExperimentConfig& c,
                                               int threads) {
    (void)threads;
    std::vector<CriterionResult> results;

    { // structure preservation on this config
        CriterionResult r;
        r.id = 8;
        r.name = "structure preservation on the supplied config";
        const auto model = config::build_model(c);
        const auto setup = config::build_bath(c);
        const auto psi0 = config::build_initial_state(c);
        const auto settings = config::build_solver(c);
        const auto rep = structure_of_run(model, setup, psi0,
                                          c.scan.tau_max, settings);
        std::ostringstream detail;
        detail << "drift=" << csv::format_number(rep.trace_drift)
               << ", herm=" << csv::format_number(rep.herm_residual)
               << ", min_eig=" << csv::format_number(rep.min_eigenvalue);
        r.passed = rep.trace_drift < 1e-8 && rep.herm_residual < 1e-10 &&
                   rep.min_eigenvalue >= -1e-6;
        r.detail = detail.str();
        results.push_back(r);
    }

    { // bath fidelity on this config
        CriterionResult r;
        r.id = 11;
        r.name = "bath decomposition fidelity on the supplied config";
        const auto setup = config::build_bath(c);
        double worst = 0.0;
        double threshold = 0.0;
        if (setup.zero_temperature()) {
            const auto& j = std::get<bath::Lorentzian>(setup.spectrum);
            const auto d = bath::lorentz_zero_t_decomposition(j);
            threshold = d.stated_tol;
            for (double scaled : {0.0, 0.1, 1.0, 5.0}) {
                const double t = scaled / j.lambda;
                const auto q =
                    bath::correlation_quadrature(j, bath::ZERO_TEMPERATURE, t);
                worst = std::max(worst,
                                 std::abs(q.value - bath::correlation_eval(d, t)));
            }
        } else {
            const auto& j = std::get<bath::OhmicDrude>(setup.spectrum);
            const auto settings = config::build_solver(c);
            const int eps = zeno::resolve_matsubara_epsilon(setup, settings);
            const auto d = bath::matsubara_decomposition(j, setup.beta, eps);
            threshold = d.stated_tol;
            for (double scaled : {0.2, 1.0, 5.0}) {
                const double t =
                    std::max(d.fidelity_t_min, scaled / j.omega_c);
                const auto q = bath::correlation_quadrature(j, setup.beta, t);
                worst = std::max(worst,
                                 std::abs(q.value - bath::correlation_eval(d, t)));
            }
        }
        std::ostringstream detail;
        detail << "worst |eval-quad| = " << csv::format_number(worst)
               << " (threshold " << csv::format_number(threshold) << ")";
        r.passed = worst < threshold;
        r.detail = detail.str();
        results.push_back(r);
    }
    return results;
}

std::string report_json(const std::vector<CriterionResult>& results) {
    nlohmann::json doc;
    doc["suite"] = "zenosim acceptance criteria";
    bool all = true;
    for (const auto& r : results) {
        nlohmann::json item;
        item["id"] = r.id;
        item["name"] = r.name;
        item["passed"] = r.passed;
        item["detail"] = r.detail;
        item["seconds"] = r.seconds;
        doc["criteria"].push_back(item);
        all = all && r.passed;
    }
    doc["all_passed"] = all;
    return doc.dump(2) + "\n";
}

} // namespace zenosim::verify
