#include "zenosim/bath.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "zenosim/errors.hpp"
#include "zenosim/quadrature.hpp"

namespace zenosim::bath {

namespace {

constexpr double PI = std::numbers::pi;

double lorentz_value(const Lorentzian& j, double w) {
    const double d = w - j.omega0;
    return j.gamma0 * j.lambda * j.lambda / (2.0 * PI * (d * d + j.lambda * j.lambda));
}

double drude_value(const OhmicDrude& j, double w) {
    return 2.0 * j.chi * j.omega_c * w / (PI * (w * w + j.omega_c * j.omega_c));
}

// coth(x) - 1 = 2 / (e^{2x} - 1), with the small-x series to avoid
// cancellation.
double coth_minus_one(double x) {
    if (x < 1e-4) {
        return 1.0 / x - 1.0 + x / 3.0 - x * x * x / 45.0;
    }
    return 2.0 / std::expm1(2.0 * x);
}

} // namespace

void Lorentzian::validate() const {
    if (gamma0 < 0.0 || lambda <= 0.0 || !std::isfinite(gamma0) ||
        !std::isfinite(lambda) || !std::isfinite(omega0)) {
        throw ContractError("Lorentzian: requires gamma0 >= 0 and lambda > 0");
    }
}

void OhmicDrude::validate() const {
    if (chi < 0.0 || omega_c <= 0.0 || !std::isfinite(chi) ||
        !std::isfinite(omega_c)) {
        throw ContractError("OhmicDrude: requires chi >= 0 and omega_c > 0");
    }
}

double spectral_density_value(const SpectralDensity& j, double omega) {
    return std::visit(
        [omega](const auto& spec) {
            using T = std::decay_t<decltype(spec)>;
            if constexpr (std::is_same_v<T, Lorentzian>) {
                return lorentz_value(spec, omega);
            } else {
                return drude_value(spec, omega);
            }
        },
        j);
}

void BathDecomposition::validate() const {
    for (const auto& term : terms) {
        if (!(term.upsilon.real() > 0.0)) {
            std::ostringstream msg;
            msg << source << ": non-decaying exponential, Re(upsilon) = "
                << term.upsilon.real();
            throw ContractError(msg.str());
        }
    }
}

BathDecomposition lorentz_zero_t_decomposition(const Lorentzian& j) {
    j.validate();
    BathDecomposition d;
    d.terms.push_back({Complex(0.5 * j.gamma0 * j.lambda, 0.0),
                       Complex(j.lambda, j.omega0)});
    d.beta = ZERO_TEMPERATURE;
    std::ostringstream src;
    src << "lorentzian(gamma0=" << j.gamma0 << ",lambda=" << j.lambda
        << ",omega0=" << j.omega0 << ")@T=0";
    d.source = src.str();
    d.stated_tol = 1e-7;
    d.fidelity_t_min = 0.0;
    d.validate();
    return d;
}

BathDecomposition matsubara_decomposition(const OhmicDrude& j, double beta,
                                          int epsilon) {
    j.validate();
    if (!(beta > 0.0) || !std::isfinite(beta)) {
        throw ContractError("matsubara_decomposition: requires finite beta > 0");
    }
    if (epsilon < 0) {
        throw ContractError("matsubara_decomposition: epsilon must be >= 0");
    }
    const double x = 0.5 * beta * j.omega_c;
    // cot(x) poles sit at integer multiples of pi.
    const double dist_to_pole = std::abs(x / PI - std::round(x / PI));
    if (dist_to_pole < 1e-9) {
        throw SingularParameterError(
            "matsubara_decomposition: beta*omega_c/2 at a pole of cot");
    }
    BathDecomposition d;
    d.beta = beta;
    d.terms.push_back(
        {Complex(j.chi * j.omega_c / std::tan(x), -j.chi * j.omega_c),
         Complex(j.omega_c, 0.0)});
    for (int q = 1; q <= epsilon; ++q) {
        const double u = 2.0 * PI * q / beta;
        if (std::abs(u - j.omega_c) < 1e-9 * j.omega_c) {
            std::ostringstream msg;
            msg << "matsubara_decomposition: Matsubara frequency j=" << q
                << " collides with omega_c";
            throw SingularParameterError(msg.str());
        }
        const double zeta =
            4.0 * j.chi * j.omega_c / beta * u / (u * u - j.omega_c * j.omega_c);
        d.terms.push_back({Complex(zeta, 0.0), Complex(u, 0.0)});
    }
    std::ostringstream src;
    src << "ohmic_drude(chi=" << j.chi << ",omega_c=" << j.omega_c
        << ")@beta=" << beta << ",epsilon=" << epsilon;
    d.source = src.str();
    d.stated_tol = 1e-4;
    d.fidelity_t_min = 0.2 / j.omega_c;
    d.validate();
    return d;
}

MatsubaraChoice auto_matsubara_epsilon(const OhmicDrude& j, double beta) {
    j.validate();
    if (!(beta > 0.0) || !std::isfinite(beta)) {
        throw ContractError("auto_matsubara_epsilon: requires finite beta > 0");
    }
    constexpr int CAP = 64;
    const double t_probe = 0.2 / j.omega_c;
    // |C(t_probe)| from a long reference partial sum.
    const double x = 0.5 * beta * j.omega_c;
    Complex c_ref(j.chi * j.omega_c / std::tan(x) * std::exp(-j.omega_c * t_probe),
                  -j.chi * j.omega_c * std::exp(-j.omega_c * t_probe));
    auto zeta_at = [&](int q) {
        const double u = 2.0 * PI * q / beta;
        return 4.0 * j.chi * j.omega_c / beta * u /
               (u * u - j.omega_c * j.omega_c);
    };
    constexpr int REF = 8192;
    std::vector<double> damped(REF + 2, 0.0);
    for (int q = 1; q <= REF; ++q) {
        damped[q] = std::abs(zeta_at(q)) * std::exp(-2.0 * PI * q / beta * t_probe);
        c_ref += zeta_at(q) * std::exp(-2.0 * PI * q / beta * t_probe);
    }
    const double target = 1e-5 * std::max(1.0, std::abs(c_ref));
    // suffix[q] = sum_{p >= q} damped[p]; the tail dropped by epsilon = q-1.
    std::vector<double> suffix(REF + 2, 0.0);
    for (int q = REF; q >= 1; --q) {
        suffix[q] = suffix[q + 1] + damped[q];
    }
    for (int eps = 1; eps <= CAP; ++eps) {
        if (suffix[eps + 1] < target) {
            return MatsubaraChoice{eps, true, {}};
        }
    }
    // Even the cap cannot make the series faithful at t_probe: very low
    // temperature relative to the cutoff.
    std::ostringstream warn;
    warn << "Matsubara cap reached (epsilon=64): series tail at t=" << t_probe
         << " still " << suffix[CAP + 1] << " vs target " << target
         << "; bath temperature is too low for a faithful expansion";
    return MatsubaraChoice{CAP, false, warn.str()};
}

Complex correlation_eval(const BathDecomposition& d, double t) {
    if (t < 0.0) {
        throw DomainError("correlation_eval: t must be >= 0");
    }
    Complex sum(0.0, 0.0);
    for (const auto& term : d.terms) {
        sum += term.zeta * std::exp(-term.upsilon * t);
    }
    return sum;
}

namespace {

// Zero-temperature Lorentzian: full-line integral of J(w) e^{-iwt}, computed
// as parity-projected half-line integrals. E(w) = J(w)+J(-w) carries the real
// part, O(w) = J(w)-J(-w) the imaginary part.
CorrelationQuadrature lorentz_quadrature(const Lorentzian& j, double t) {
    const double lam = j.lambda;
    const double w0 = j.omega0;
    auto jval = [&](double w) { return lorentz_value(j, w); };
    auto even = [&](double w) { return jval(w) + jval(-w); };
    auto odd = [&](double w) { return jval(w) - jval(-w); };

    const double core = std::abs(w0) + 12.0 * lam;
    constexpr double TOL = 1e-9;

    if (t == 0.0) {
        // No oscillation: core integral plus the exact arctan tails of the
        // integrand itself.
        quad::Result re = quad::adaptive_simpson(even, 0.0, core, TOL, lam);
        const double pref = j.gamma0 * j.lambda / (2.0 * PI);
        const double tail_plus =
            pref * (0.5 * PI - std::atan((core - w0) / lam));
        const double tail_minus =
            pref * (0.5 * PI - std::atan((core + w0) / lam));
        re.value += tail_plus + tail_minus;
        return {Complex(re.value, 0.0), re.abs_err};
    }

    const double half_period = PI / t;
    // Snap the core boundary to a trig-lobe edge so the cell sums alternate.
    auto snap = [&](double w, double offset) {
        const double k = std::ceil((w * t - offset) / PI);
        return (offset + k * PI) / t;
    };
    const double panel = std::min(lam, 0.61803398875 * half_period);

    // Re: int_0^inf E(w) cos(wt) dw, lobes of cos start at wt = pi/2 + k pi.
    const double re_edge = snap(core, 0.5 * PI);
    quad::Result re = quad::adaptive_simpson(
        [&](double w) { return even(w) * std::cos(w * t); }, 0.0, re_edge, TOL,
        panel);
    re += quad::oscillatory_cells(
        [&](double w) { return even(w) * std::cos(w * t); }, re_edge,
        half_period, TOL);

    // Im: -int_0^inf O(w) sin(wt) dw, lobes of sin start at wt = k pi.
    const double im_edge = snap(core, 0.0);
    quad::Result im = quad::adaptive_simpson(
        [&](double w) { return odd(w) * std::sin(w * t); }, 0.0, im_edge, TOL,
        panel);
    im += quad::oscillatory_cells(
        [&](double w) { return odd(w) * std::sin(w * t); }, im_edge,
        half_period, TOL);

    return {Complex(re.value, -im.value), re.abs_err + im.abs_err};
}

// Finite-temperature Ohmic-Drude on the positive half-line. The thermal part
// J(w)(coth - 1) decays exponentially; the remaining J(w) cos / J(w) sin have
// 1/w envelopes and are handled by the accelerated cell sums.
CorrelationQuadrature drude_quadrature(const OhmicDrude& j, double beta,
                                       double t) {
    if (t == 0.0) {
        throw AccuracyError(
            "correlation_quadrature: Ohmic-Drude defining integral is "
            "log-divergent at t = 0 (finite temperature); evaluate at t > 0",
            std::numeric_limits<double>::infinity());
    }
    constexpr double TOL = 1e-9;
    const double half_period = PI / t;
    auto jval = [&](double w) { return drude_value(j, w); };

    // Thermal part: regular at w = 0 (limit 4 chi / (pi beta omega_c)).
    auto thermal = [&](double w) {
        if (w == 0.0) {
            return 4.0 * j.chi / (PI * beta * j.omega_c);
        }
        return jval(w) * coth_minus_one(0.5 * beta * w) * std::cos(w * t);
    };
    // e^{-beta w} < 1e-16 beyond this point.
    const double thermal_reach = 38.0 / beta;
    quad::Result re = quad::adaptive_simpson(
        thermal, 0.0, thermal_reach, TOL,
        std::min(0.5 * half_period, std::max(j.omega_c, 1.0 / beta)));

    auto snap = [&](double w, double offset) {
        const double k = std::ceil((w * t - offset) / PI);
        return (offset + k * PI) / t;
    };
    const double core = 12.0 * j.omega_c;
    const double panel = std::min(j.omega_c, 0.61803398875 * half_period);

    const double re_edge = snap(core, 0.5 * PI);
    re += quad::adaptive_simpson(
        [&](double w) { return jval(w) * std::cos(w * t); }, 0.0, re_edge, TOL,
        panel);
    re += quad::oscillatory_cells(
        [&](double w) { return jval(w) * std::cos(w * t); }, re_edge,
        half_period, TOL);

    const double im_edge = snap(core, 0.0);
    quad::Result im = quad::adaptive_simpson(
        [&](double w) { return jval(w) * std::sin(w * t); }, 0.0, im_edge, TOL,
        panel);
    im += quad::oscillatory_cells(
        [&](double w) { return jval(w) * std::sin(w * t); }, im_edge,
        half_period, TOL);

    const double err = re.abs_err + im.abs_err;
    if (err > 1e-6) {
        throw AccuracyError("correlation_quadrature: error estimate too large",
                            err);
    }
    return {Complex(re.value, -im.value), err};
}

} // namespace

CorrelationQuadrature correlation_quadrature(const SpectralDensity& j,
                                             double beta, double t) {
    if (t < 0.0) {
        throw DomainError("correlation_quadrature: t must be >= 0");
    }
    if (std::holds_alternative<Lorentzian>(j)) {
        if (std::isfinite(beta)) {
            throw ContractError(
                "correlation_quadrature: Lorentzian bath is paired with zero "
                "temperature (beta = infinity)");
        }
        return lorentz_quadrature(std::get<Lorentzian>(j), t);
    }
    if (!std::isfinite(beta) || beta <= 0.0) {
        throw ContractError(
            "correlation_quadrature: Ohmic-Drude bath requires finite beta > 0");
    }
    return drude_quadrature(std::get<OhmicDrude>(j), beta, t);
}

} // namespace zenosim::bath
