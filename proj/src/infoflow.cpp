#include "zenosim/infoflow.hpp"

#include <cmath>

#include "zenosim/errors.hpp"

namespace zenosim::infoflow {

double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
    if (rho.dim() != sigma.dim()) {
        throw ContractError("trace_distance: dimension mismatch");
    }
    const Matrix diff = rho.rho - sigma.rho;
    const Matrix herm = 0.5 * (diff + diff.adjoint().eval());
    const Eigen::VectorXd evals = hermitian_eigenvalues(herm);
    return 0.5 * evals.cwiseAbs().sum();
}

double two_level_distance_formula(double c11, Complex c12) {
    const double sq = c11 * c11 + std::norm(c12);
    if (sq > 1.0 + 1e-9) {
        throw ContractError(
            "two_level_distance_formula: c11^2 + |c12|^2 exceeds 1");
    }
    return std::sqrt(sq);
}

FlowTrajectory flow_decomposition(const std::vector<double>& times,
                                  const std::vector<DensityMatrix>& trajectory,
                                  const DensityMatrix& reference,
                                  const NumericPolicy& policy) {
    const std::size_t n = times.size();
    if (n < 3 || trajectory.size() != n) {
        throw ContractError("flow_decomposition: need >= 3 matching grid points");
    }
    const double dt = times[1] - times[0];
    for (std::size_t i = 1; i < n; ++i) {
        if (std::abs((times[i] - times[i - 1]) - dt) > 1e-9 * std::max(1.0, dt)) {
            throw ContractError("flow_decomposition: grid must be uniform");
        }
    }

    FlowTrajectory out;
    out.times = times;
    out.distance.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        out.distance[i] = trace_distance(trajectory[i], reference);
    }

    out.rate.resize(n);
    out.rate[0] = (out.distance[1] - out.distance[0]) / dt;
    out.rate[n - 1] = (out.distance[n - 1] - out.distance[n - 2]) / dt;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        out.rate[i] = (out.distance[i + 1] - out.distance[i - 1]) / (2.0 * dt);
    }

    // Trapezoid weights telescope: sum_i w_i rate_i dt = D(end) - D(0)
    // exactly, so splitting the terms by sign preserves the identity.
    out.cum_loss.resize(n);
    out.cum_gain.resize(n);
    double loss = 0.0;
    double gain = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double w = (i == 0 || i == n - 1) ? 0.5 : 1.0;
        const double segment = w * out.rate[i] * dt;
        if (out.rate[i] > policy.flow_rate_floor) {
            gain += segment;
        } else if (out.rate[i] < -policy.flow_rate_floor) {
            loss -= segment;
        }
        out.cum_loss[i] = loss;
        out.cum_gain[i] = gain;
    }
    out.info_loss = loss;
    out.info_gain = gain;
    return out;
}

} // namespace zenosim::infoflow
