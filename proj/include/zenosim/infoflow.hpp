#pragma once

#include <vector>

#include "zenosim/quantum.hpp"

namespace zenosim::infoflow {

// (1/2) Tr |rho - sigma| via eigenvalues of the Hermitian difference.
double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma);

// Two-level closed form sqrt(c11^2 + |c12|^2) for the distance between a
// state with matrix elements (c11, c12) in the {phi1, phi2} basis and the
// projector |phi2><phi2|.
double two_level_distance_formula(double c11, Complex c12);

struct FlowTrajectory {
    std::vector<double> times;
    std::vector<double> distance;
    std::vector<double> rate;     // centered differences, one-sided at the ends
    std::vector<double> cum_loss; // running -sum of negative rate segments
    std::vector<double> cum_gain; // running sum of positive rate segments
    double info_loss = 0.0;
    double info_gain = 0.0;
};

// Loss/gain split of the trace-distance flow between a trajectory and a fixed
// reference. Trapezoidal segment weights make the discrete identity
//   D(t_final) = D(0) - info_loss + info_gain
// hold to machine precision; rates below the policy floor count as neither.
// The grid must be uniform with at least 3 points.
FlowTrajectory flow_decomposition(const std::vector<double>& times,
                                  const std::vector<DensityMatrix>& trajectory,
                                  const DensityMatrix& reference,
                                  const NumericPolicy& policy = default_policy());

} // namespace zenosim::infoflow
