#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "zenosim/bath.hpp"
#include "zenosim/hierarchy.hpp"
#include "zenosim/models.hpp"
#include "zenosim/quantum.hpp"

namespace zenosim::heom {

// A superoperator acting on column-major vec(rho), stored as split planes for
// the kernels.
struct SuperOp {
    int m = 0; // block dimension d^2
    std::vector<double> re, im;

    static SuperOp from_matrix(const Matrix& op);
};

// X -> A X as a d^2 x d^2 matrix on vec(X) (column-major).
Matrix left_mult_superop(const Matrix& a);
// X -> X B.
Matrix right_mult_superop(const Matrix& b);
// X -> [A, X].
Matrix commutator_superop(const Matrix& a);
// X -> {A, X}.
Matrix anticommutator_superop(const Matrix& a);

// Right-hand side of the hierarchy: for each auxiliary operator rho_l,
//   d rho_l/dt = (A0 - l.nu) rho_l
//              + Up sum_q rho_{l+e_q}
//              + Down1 sum_q l_q w1_q rho_{l-e_q}
//              + Down2 sum_q l_q w2_q rho_{l-e_q}
// with everything past the depth cap treated as zero.
struct HeomGenerator {
    std::shared_ptr<const HierarchyLayout> layout;
    int dim = 0; // system dimension d
    models::ModelSpec model;
    std::vector<Complex> nu; // per-exponential decay rates
    SuperOp a0;              // -i H^x (plus the finite-T correction term)
    SuperOp up_op;           // Phi = -i f^x
    SuperOp down_op1;        // applied to the w1-weighted down sum
    SuperOp down_op2;        // applied to the w2-weighted down sum
    std::vector<double> down_w1, down_w2; // per-exponential real weights
    std::vector<double> diag_re, diag_im; // per-ADO -(l . nu)
    double max_abs_diag = 0.0;            // max |l . nu| (stability guard)
    Complex terminator_coefficient{0.0, 0.0}; // finite-T only

    std::size_t n_ados() const { return layout->size(); }
    std::size_t block_dim() const { return static_cast<std::size_t>(dim) * dim; }
};

inline constexpr std::size_t DEFAULT_ADO_BUDGET = 2'000'000;

// Eq.-level builders -----------------------------------------------------------

HeomGenerator build_zero_t_generator(const models::ModelSpec& model,
                                     const bath::Lorentzian& j, int depth_cap,
                                     std::size_t max_ados = DEFAULT_ADO_BUDGET);

HeomGenerator build_finite_t_generator(const models::ModelSpec& model,
                                       const bath::OhmicDrude& j, double beta,
                                       int epsilon, int depth_cap,
                                       std::size_t max_ados = DEFAULT_ADO_BUDGET);

// State -------------------------------------------------------------------------

struct HierarchyState {
    std::size_t n_ados = 0;
    int dim = 0;
    std::vector<double> re, im; // n_ados * dim^2, column-major blocks
    double t = 0.0;

    std::size_t block_dim() const { return static_cast<std::size_t>(dim) * dim; }
    Matrix ado(std::size_t pos) const;
    void set_ado(std::size_t pos, const Matrix& value);
};

// rho_0 = rho_s(0), every other ADO zero.
HierarchyState initial_state(const HeomGenerator& gen, const DensityMatrix& rho0);

// Classic fixed-step 4th-order integration to t_final (last step shortened).
// Guard: dt * max|l.nu| must stay below 0.5; violations raise StepSizeError
// with a compliant suggestion. Trace drift above policy triggers automatic
// step halving and a rerun before giving up.
void evolve(const HeomGenerator& gen, HierarchyState& state, double t_final,
            double dt, const NumericPolicy& policy = default_policy());

// rho_0, hermitized and trace-renormalized; trace drift beyond policy is an
// integrity error.
DensityMatrix reduced_state(const HierarchyState& state,
                            const NumericPolicy& policy = default_policy());

// Depth-convergence control ------------------------------------------------------

struct DepthConvergence {
    int converged_depth;
    double value;
};

// Smallest L in [L_start, L_max] with |value(L) - value(L-1)| < tol; the
// reference value(L_start - 1) is evaluated first. An infinite tolerance
// returns L_start without further evaluations.
DepthConvergence converge_in_depth(const std::function<double(int)>& value_at_depth,
                                   int l_start, int l_max, double tol);

} // namespace zenosim::heom
