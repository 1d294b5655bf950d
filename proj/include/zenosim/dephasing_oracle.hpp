#pragma once

#include "zenosim/bath.hpp"
#include "zenosim/quantum.hpp"

namespace zenosim::oracle {

// Exact pure-dephasing kernels, by adaptive quadrature of the spectral
// integrals (full real line for the Lorentzian). Values are memoized per
// (spectrum, time); both functions vanish at zero.
//
//   kappa(tau) = 4 int dw J(w) (1 - cos(w tau)) / w^2
//   phi(t)     = 4 int dw J(w) (sin(w t) - w t) / w^2
double kappa(const bath::SpectralDensity& j, double tau);
double phi(const bath::SpectralDensity& j, double t);

// Gamma(tau) = -(1/tau) ln[ 1/2 + 1/2 exp(-kappa(tau)) ]
double dephasing_qubit_gamma(const bath::SpectralDensity& j, double tau);

// Multiplicative propagator factor for a dephasing spin-J density matrix
// element (the caller supplies rho_{mm'}(0)):
//   exp(-i eps (m-m') t) exp(-i phi(t) (m^2-m'^2)) exp(-kappa(t) (m-m')^2)
Complex dephasing_qutrit_rho_element(const bath::SpectralDensity& j,
                                     double epsilon, double t, double m,
                                     double m_prime);

// Effective decay rate of a spin-J coherent state |varsigma, J> under pure
// dephasing; the binomial double sum is evaluated with log-domain weights.
double dephasing_qutrit_gamma(const bath::SpectralDensity& j, Complex varsigma,
                              double spin_j, double tau);

// Short-time Zeno time sqrt(2/(gamma0 lambda)) for a centered Lorentzian.
double short_time_zeno_time(const bath::Lorentzian& j);

} // namespace zenosim::oracle
