#pragma once

#include <complex>
#include <limits>
#include <string>
#include <variant>
#include <vector>

#include "zenosim/quantum.hpp"

namespace zenosim::bath {

inline constexpr double ZERO_TEMPERATURE =
    std::numeric_limits<double>::infinity(); // beta for a zero-T bath

// J_L(w) = (1/2pi) gamma0 lambda^2 / ((w - omega0)^2 + lambda^2)
struct Lorentzian {
    double gamma0; // coupling strength; 0 means a decoupled (closed) system
    double lambda; // spectral width
    double omega0; // center frequency

    void validate() const;
};

// J_O(w) = (1/pi) 2 chi omega_c w / (w^2 + omega_c^2)
struct OhmicDrude {
    double chi;     // coupling strength; 0 means a decoupled (closed) system
    double omega_c; // cutoff frequency

    void validate() const;
};

using SpectralDensity = std::variant<Lorentzian, OhmicDrude>;

double spectral_density_value(const SpectralDensity& j, double omega);

// One exponential of C(t) = sum_j zeta_j exp(-upsilon_j t).
struct CorrelationTerm {
    Complex zeta;
    Complex upsilon; // Re > 0
};

struct BathDecomposition {
    std::vector<CorrelationTerm> terms;
    double beta = ZERO_TEMPERATURE;
    std::string source;

    // Fidelity contract against the quadrature oracle: |eval - quadrature|
    // stays below stated_tol for every t >= fidelity_t_min. A truncated
    // Matsubara series only resolves times beyond ~1/upsilon_max, and the
    // finite-temperature Drude correlation diverges logarithmically at
    // t -> 0+, so the floor is meaningful there (zero for the Lorentzian).
    double stated_tol = 0.0;
    double fidelity_t_min = 0.0;

    void validate() const; // Re(upsilon_j) > 0 for every term
};

// Eq.-level constructors ------------------------------------------------------

// Single term zeta = gamma0*lambda/2, upsilon = lambda + i*omega0.
BathDecomposition lorentz_zero_t_decomposition(const Lorentzian& j);

// Terms j = 0..epsilon with upsilon_0 = omega_c, upsilon_j = 2 pi j / beta,
// zeta_0 = chi*omega_c*(cot(beta*omega_c/2) - i),
// zeta_j = (4 chi omega_c / beta) * upsilon_j / (upsilon_j^2 - omega_c^2).
BathDecomposition matsubara_decomposition(const OhmicDrude& j, double beta,
                                          int epsilon);

struct MatsubaraChoice {
    int epsilon;
    bool converged;      // tail criterion met within the cap
    std::string warning; // set when the cap was insufficient (very low T)
};

// Smallest epsilon (capped at 64) whose dropped tail is negligible at the
// earliest time the hierarchy needs the series to be faithful (0.2/omega_c).
MatsubaraChoice auto_matsubara_epsilon(const OhmicDrude& j, double beta);

// Evaluation ------------------------------------------------------------------

Complex correlation_eval(const BathDecomposition& d, double t);

struct CorrelationQuadrature {
    Complex value;
    double abs_err;
};

// Defining integral C(t) = int dw J(w) [coth(beta w/2) cos(wt) - i sin(wt)],
// full real line for the Lorentzian at zero temperature, positive half-line
// with the thermal factor for Ohmic-Drude. Throws AccuracyError when the
// integral cannot be evaluated to tolerance (notably Drude at t = 0, where
// the defining integral is log-divergent).
CorrelationQuadrature correlation_quadrature(const SpectralDensity& j,
                                             double beta, double t);

} // namespace zenosim::bath
