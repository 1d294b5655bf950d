#include "zenosim/dephasing_oracle.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <sstream>
#include <tuple>

#include "zenosim/errors.hpp"
#include "zenosim/quadrature.hpp"

namespace zenosim::oracle {

namespace {

constexpr double PI = std::numbers::pi;

// (1 - cos x) / x^2 with the removable singularity handled by series.
double one_minus_cos_over_x2(double x) {
    const double ax = std::abs(x);
    if (ax < 1e-3) {
        const double x2 = x * x;
        return 0.5 - x2 / 24.0 + x2 * x2 / 720.0;
    }
    return (1.0 - std::cos(x)) / (x * x);
}

// (sin x - x) / x^2 with the removable singularity handled by series.
double sin_minus_x_over_x2(double x) {
    const double ax = std::abs(x);
    if (ax < 1e-3) {
        return -x / 6.0 + x * x * x / 120.0;
    }
    return (std::sin(x) - x) / (x * x);
}

struct SpectrumScales {
    double center;  // envelope peak location (>= 0)
    double width;   // envelope width scale
    double prefactor;
};

SpectrumScales scales_of(const bath::SpectralDensity& j) {
    if (std::holds_alternative<bath::Lorentzian>(j)) {
        const auto& l = std::get<bath::Lorentzian>(j);
        return {std::abs(l.omega0), l.lambda, l.gamma0 * l.lambda};
    }
    const auto& o = std::get<bath::OhmicDrude>(j);
    return {o.omega_c, o.omega_c, o.chi * o.omega_c};
}

double jval(const bath::SpectralDensity& j, double w) {
    return bath::spectral_density_value(j, w);
}

// Parity-projected envelopes: the Lorentzian integrals run over the full real
// line, folded onto [0, inf) as E(w) = J(w)+J(-w) (even weights) and
// O(w) = J(w)-J(-w) (odd weights); the Ohmic-Drude kernels are half-line
// integrals of J itself.
struct ProjectedSpectrum {
    std::function<double(double)> even;
    std::function<double(double)> odd;
    // Tail integrals from W to infinity (exact for Drude, asymptotically
    // tight for the Lorentzian at the W used here).
    std::function<double(double)> even_over_w2_tail; // int E(w)/w^2
    std::function<double(double)> odd_over_w_tail;   // int O(w)/w
};

ProjectedSpectrum project(const bath::SpectralDensity& j) {
    ProjectedSpectrum p;
    if (std::holds_alternative<bath::Lorentzian>(j)) {
        const auto l = std::get<bath::Lorentzian>(j);
        p.even = [&j](double w) { return jval(j, w) + jval(j, -w); };
        p.odd = [&j](double w) { return jval(j, w) - jval(j, -w); };
        // E(w)/w^2 ~ (gamma0 lambda^2/pi) / w^4 beyond the peaks.
        const double c4 = l.gamma0 * l.lambda * l.lambda / PI;
        p.even_over_w2_tail = [c4](double W) { return c4 / (3.0 * W * W * W); };
        // O(w)/w ~ (2 gamma0 lambda^2 omega0/pi) / w^4, signed by omega0.
        const double c4o = 2.0 * l.gamma0 * l.lambda * l.lambda * l.omega0 / PI;
        p.odd_over_w_tail = [c4o](double W) { return c4o / (3.0 * W * W * W); };
        return p;
    }
    const auto o = std::get<bath::OhmicDrude>(j);
    p.even = [&j](double w) { return jval(j, w); };
    p.odd = [&j](double w) { return jval(j, w); };
    // int_W^inf J/w^2 dw = (2 chi/(pi omega_c)) * (1/2) ln(1 + omega_c^2/W^2)
    p.even_over_w2_tail = [o](double W) {
        return o.chi / (PI * o.omega_c) *
               std::log1p(o.omega_c * o.omega_c / (W * W));
    };
    // int_W^inf J/w dw = (2 chi omega_c/pi) int dw/(w^2+omega_c^2)
    p.odd_over_w_tail = [o](double W) {
        return 2.0 * o.chi / PI * (0.5 * PI - std::atan(W / o.omega_c));
    };
    return p;
}

double kappa_quadrature(const bath::SpectralDensity& j, double tau) {
    if (tau == 0.0) {
        return 0.0;
    }
    const SpectrumScales sc = scales_of(j);
    const ProjectedSpectrum pr = project(j);
    constexpr double TOL = 1e-10;

    const double half_period = PI / tau;
    const double w_core = sc.center + 12.0 * sc.width;
    // Panels deliberately incommensurate with the oscillation period so that
    // per-panel Simpson residuals cannot accumulate coherently.
    const double panel = std::min(sc.width, 0.61803398875 * half_period);

    // Core: combined integrand, regular at w = 0.
    auto combined = [&](double w) {
        return 4.0 * pr.even(w) * one_minus_cos_over_x2(w * tau) * tau * tau;
    };
    quad::Result total = quad::adaptive_simpson(combined, 0.0, w_core, TOL, panel);

    // Constant piece 4 E(w)/w^2 beyond the core, with its exact tail.
    const double w_far = 64.0 * w_core;
    total += quad::adaptive_simpson(
        [&](double w) { return 4.0 * pr.even(w) / (w * w); }, w_core, w_far,
        TOL, 0.0);
    total.value += 4.0 * pr.even_over_w2_tail(w_far);

    // Oscillatory piece -4 E(w) cos(w tau)/w^2 on cosine lobes.
    const double k_edge =
        (0.5 * PI + std::ceil((w_core * tau - 0.5 * PI) / PI) * PI) / tau;
    auto osc = [&](double w) {
        return -4.0 * pr.even(w) * std::cos(w * tau) / (w * w);
    };
    total += quad::adaptive_simpson(osc, w_core, k_edge, TOL, panel);
    total += quad::oscillatory_cells(osc, k_edge, half_period, TOL);

    if (total.abs_err > 1e-7) {
        throw AccuracyError("kappa: quadrature error estimate too large",
                            total.abs_err);
    }
    return total.value;
}

double phi_quadrature(const bath::SpectralDensity& j, double t) {
    if (t == 0.0) {
        return 0.0;
    }
    const SpectrumScales sc = scales_of(j);
    const ProjectedSpectrum pr = project(j);
    constexpr double TOL = 1e-10;

    const double half_period = PI / t;
    const double w_core = sc.center + 12.0 * sc.width;
    const double panel = std::min(sc.width, 0.61803398875 * half_period);

    auto combined = [&](double w) {
        return 4.0 * pr.odd(w) * sin_minus_x_over_x2(w * t) * t * t;
    };
    quad::Result total = quad::adaptive_simpson(combined, 0.0, w_core, TOL, panel);

    // Linear piece -4 t O(w)/w beyond the core, with its exact tail.
    const double w_far = 64.0 * w_core;
    total += quad::adaptive_simpson(
        [&](double w) { return -4.0 * t * pr.odd(w) / w; }, w_core, w_far, TOL,
        0.0);
    total.value += -4.0 * t * pr.odd_over_w_tail(w_far);

    // Oscillatory piece 4 O(w) sin(w t)/w^2 on sine lobes.
    const double k_edge = std::ceil(w_core * t / PI) * PI / t;
    auto osc = [&](double w) {
        return 4.0 * pr.odd(w) * std::sin(w * t) / (w * w);
    };
    total += quad::adaptive_simpson(osc, w_core, k_edge, TOL, panel);
    total += quad::oscillatory_cells(osc, k_edge, half_period, TOL);

    if (total.abs_err > 1e-7) {
        throw AccuracyError("phi: quadrature error estimate too large",
                            total.abs_err);
    }
    return total.value;
}

// Memo table; values are deterministic so last-write-wins races are benign,
// but a mutex keeps the map itself safe.
struct MemoKey {
    int kind;       // 0 = kappa, 1 = phi
    int variant;    // 0 = Lorentzian, 1 = OhmicDrude
    double p0, p1, p2;
    double t;
    bool operator<(const MemoKey& o) const {
        return std::tie(kind, variant, p0, p1, p2, t) <
               std::tie(o.kind, o.variant, o.p0, o.p1, o.p2, o.t);
    }
};

MemoKey make_key(int kind, const bath::SpectralDensity& j, double t) {
    if (std::holds_alternative<bath::Lorentzian>(j)) {
        const auto& l = std::get<bath::Lorentzian>(j);
        return {kind, 0, l.gamma0, l.lambda, l.omega0, t};
    }
    const auto& o = std::get<bath::OhmicDrude>(j);
    return {kind, 1, o.chi, o.omega_c, 0.0, t};
}

std::mutex memo_mutex;
std::map<MemoKey, double> memo_table;

double memoized(int kind, const bath::SpectralDensity& j, double t,
                double (*eval)(const bath::SpectralDensity&, double)) {
    const MemoKey key = make_key(kind, j, t);
    {
        std::lock_guard<std::mutex> lock(memo_mutex);
        auto it = memo_table.find(key);
        if (it != memo_table.end()) {
            return it->second;
        }
    }
    const double value = eval(j, t);
    std::lock_guard<std::mutex> lock(memo_mutex);
    memo_table.emplace(key, value);
    return value;
}

} // namespace

double kappa(const bath::SpectralDensity& j, double tau) {
    if (tau < 0.0) {
        throw DomainError("kappa: tau must be >= 0");
    }
    return memoized(0, j, tau, kappa_quadrature);
}

double phi(const bath::SpectralDensity& j, double t) {
    if (t < 0.0) {
        throw DomainError("phi: t must be >= 0");
    }
    return memoized(1, j, t, phi_quadrature);
}

double dephasing_qubit_gamma(const bath::SpectralDensity& j, double tau) {
    if (tau <= 0.0) {
        throw DomainError(
            "dephasing_qubit_gamma: tau must be > 0 (the tau -> 0 limit is 0)");
    }
    const double k = kappa(j, tau);
    return -std::log(0.5 + 0.5 * std::exp(-k)) / tau;
}

Complex dephasing_qutrit_rho_element(const bath::SpectralDensity& j,
                                     double epsilon, double t, double m,
                                     double m_prime) {
    const double dm = m - m_prime;
    const double dm2 = m * m - m_prime * m_prime;
    if (dm == 0.0) {
        return Complex(1.0, 0.0); // populations are frozen
    }
    const double k = kappa(j, t);
    const double p = phi(j, t);
    return std::exp(Complex(0.0, -epsilon * dm * t)) *
           std::exp(Complex(0.0, -p * dm2)) * std::exp(-k * dm * dm);
}

double dephasing_qutrit_gamma(const bath::SpectralDensity& j, Complex varsigma,
                              double spin_j, double tau) {
    if (tau <= 0.0) {
        throw DomainError("dephasing_qutrit_gamma: tau must be > 0");
    }
    if (std::abs(varsigma) == 0.0) {
        throw DomainError(
            "dephasing_qutrit_gamma: varsigma = 0 is the frozen |J,-J> state");
    }
    const double two_j = 2.0 * spin_j;
    const int n = static_cast<int>(std::round(two_j));
    if (n < 1 || std::abs(two_j - n) > 1e-12) {
        throw DomainError("dephasing_qutrit_gamma: J must be a half-integer");
    }
    const double k = kappa(j, tau);
    const double p = phi(j, tau);

    // The prefactor and |varsigma| powers combine into binomial weights
    // p_m = C(2J, J+m) |s|^{2(J+m)} / (1+|s|^2)^{2J}, which sum to one;
    // assembled in the log domain so large J cannot overflow.
    const double log_s2 = 2.0 * std::log(std::abs(varsigma));
    const double log_norm = -two_j * std::log1p(std::norm(varsigma));
    std::vector<double> weight(n + 1);
    for (int i = 0; i <= n; ++i) {
        const double log_c = std::lgamma(n + 1.0) - std::lgamma(i + 1.0) -
                             std::lgamma(n - i + 1.0);
        weight[i] = std::exp(log_c + i * log_s2 + log_norm);
    }

    Complex bracket(0.0, 0.0);
    for (int i = 0; i <= n; ++i) {
        const double m = i - spin_j;
        for (int i2 = 0; i2 <= n; ++i2) {
            const double m2 = i2 - spin_j;
            const double dm = m - m2;
            const double dsq = m * m - m2 * m2;
            bracket += weight[i] * weight[i2] *
                       std::exp(Complex(-k * dm * dm, -p * dsq));
        }
    }
    if (!(bracket.real() > 0.0) ||
        std::abs(bracket.imag()) > 1e-10 * std::max(1.0, bracket.real())) {
        std::ostringstream msg;
        msg << "dephasing_qutrit_gamma: bracket " << bracket
            << " is not real-positive";
        throw IntegrityError(msg.str());
    }
    return -std::log(bracket.real()) / tau;
}

double short_time_zeno_time(const bath::Lorentzian& j) {
    j.validate();
    if (j.omega0 != 0.0) {
        throw DomainError("short_time_zeno_time: requires omega0 = 0");
    }
    if (j.gamma0 <= 0.0) {
        throw DomainError("short_time_zeno_time: requires gamma0 > 0");
    }
    return std::sqrt(2.0 / (j.gamma0 * j.lambda));
}

} // namespace zenosim::oracle
