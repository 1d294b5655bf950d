#include "zenosim/heom.hpp"

#include <cmath>
#include <sstream>

#include "zenosim/errors.hpp"
#include "zenosim/kernels.hpp"

namespace zenosim::heom {

SuperOp SuperOp::from_matrix(const Matrix& op) {
    SuperOp s;
    s.m = static_cast<int>(op.rows());
    s.re.resize(static_cast<std::size_t>(s.m) * s.m);
    s.im.resize(static_cast<std::size_t>(s.m) * s.m);
    for (int c = 0; c < s.m; ++c) {
        for (int r = 0; r < s.m; ++r) {
            s.re[static_cast<std::size_t>(c) * s.m + r] = op(r, c).real();
            s.im[static_cast<std::size_t>(c) * s.m + r] = op(r, c).imag();
        }
    }
    return s;
}

Matrix left_mult_superop(const Matrix& a) {
    const int d = static_cast<int>(a.rows());
    Matrix s = Matrix::Zero(d * d, d * d);
    // vec(A X): block-diagonal copies of A (column-major vec).
    for (int c = 0; c < d; ++c) {
        s.block(c * d, c * d, d, d) = a;
    }
    return s;
}

Matrix right_mult_superop(const Matrix& b) {
    const int d = static_cast<int>(b.rows());
    Matrix s = Matrix::Zero(d * d, d * d);
    // vec(X B): (B^T kron I).
    for (int c = 0; c < d; ++c) {
        for (int r = 0; r < d; ++r) {
            s.block(r * d, c * d, d, d) =
                b(c, r) * Matrix::Identity(d, d);
        }
    }
    return s;
}

Matrix commutator_superop(const Matrix& a) {
    return left_mult_superop(a) - right_mult_superop(a);
}

Matrix anticommutator_superop(const Matrix& a) {
    return left_mult_superop(a) + right_mult_superop(a);
}

namespace {

void fill_diag(HeomGenerator& gen) {
    const auto& layout = *gen.layout;
    const std::size_t n = layout.size();
    gen.diag_re.resize(n);
    gen.diag_im.resize(n);
    gen.max_abs_diag = 0.0;
    for (std::size_t pos = 0; pos < n; ++pos) {
        Complex dot(0.0, 0.0);
        for (int q = 0; q < layout.num_exponentials(); ++q) {
            dot += static_cast<double>(layout.component(pos, q)) * gen.nu[q];
        }
        gen.diag_re[pos] = -dot.real();
        gen.diag_im[pos] = -dot.imag();
        gen.max_abs_diag = std::max(gen.max_abs_diag, std::abs(dot));
    }
}

} // namespace

HeomGenerator build_zero_t_generator(const models::ModelSpec& model,
                                     const bath::Lorentzian& j, int depth_cap,
                                     std::size_t max_ados) {
    model.validate();
    j.validate();
    if (depth_cap < 1) {
        throw ContractError("build_zero_t_generator: depth cap must be >= 1");
    }
    HeomGenerator gen;
    gen.layout = std::make_shared<HierarchyLayout>(
        HierarchyLayout::build(2, depth_cap, max_ados));
    gen.dim = model.dim;
    gen.model = model;
    gen.nu = {Complex(j.lambda, -j.omega0), Complex(j.lambda, j.omega0)};

    const Matrix f = model.coupling;
    const Matrix comm_f = commutator_superop(f);
    const Matrix anti_f = anticommutator_superop(f);
    gen.a0 = SuperOp::from_matrix(-I_UNIT * commutator_superop(model.h_s));
    gen.up_op = SuperOp::from_matrix(-I_UNIT * comm_f);

    // The two down operators split Psi_p into commutator and anticommutator
    // pieces with per-exponential real weights:
    //   sum_p l_p Psi_p rho = down_op1 (sum_p l_p rho) +
    //                         down_op2 (sum_p s_p l_p rho)
    // The anticommutator sign s_p must pair +{f, .} with the exponential
    // lambda - i omega0: that pairing reproduces the exact dephasing phase
    // (the opposite one flips the sign of the phase-diffusion function; see
    // tests/test_heom pairing checks).
    const Complex quarter(0.0, 0.25 * j.gamma0 * j.lambda);
    gen.down_op1 = SuperOp::from_matrix(-quarter * comm_f);
    gen.down_op2 = SuperOp::from_matrix(quarter * anti_f);
    gen.down_w1 = {1.0, 1.0};
    gen.down_w2 = {1.0, -1.0};

    fill_diag(gen);
    return gen;
}

HeomGenerator build_finite_t_generator(const models::ModelSpec& model,
                                       const bath::OhmicDrude& j, double beta,
                                       int epsilon, int depth_cap,
                                       std::size_t max_ados) {
    model.validate();
    const bath::BathDecomposition decomp =
        bath::matsubara_decomposition(j, beta, epsilon);
    if (depth_cap < 0) {
        throw ContractError("build_finite_t_generator: depth cap must be >= 0");
    }
    HeomGenerator gen;
    gen.layout = std::make_shared<HierarchyLayout>(
        HierarchyLayout::build(epsilon + 1, depth_cap, max_ados));
    gen.dim = model.dim;
    gen.model = model;
    gen.nu.reserve(decomp.terms.size());
    for (const auto& term : decomp.terms) {
        gen.nu.push_back(term.upsilon);
    }

    const Matrix f = model.coupling;
    const Matrix comm_f = commutator_superop(f);
    const Matrix anti_f = anticommutator_superop(f);

    // Ishizaki-Tanimura correction: the dropped Matsubara tail acts as a
    // time-local double-commutator with coefficient
    //   2 chi/(beta omega_c) - i chi - sum_{q<=eps} zeta_q/upsilon_q,
    // which is real for every epsilon (the imaginary parts cancel exactly).
    Complex tail(2.0 * j.chi / (beta * j.omega_c), -j.chi);
    for (const auto& term : decomp.terms) {
        tail -= term.zeta / term.upsilon;
    }
    gen.terminator_coefficient = tail;
    gen.a0 = SuperOp::from_matrix(-I_UNIT * commutator_superop(model.h_s) -
                                  tail * (comm_f * comm_f));
    gen.up_op = SuperOp::from_matrix(-I_UNIT * comm_f);

    // Theta_q = -i zeta_q^R f^x + zeta_q^I f^o, split as two weighted sums.
    gen.down_op1 = SuperOp::from_matrix(-I_UNIT * comm_f);
    gen.down_op2 = SuperOp::from_matrix(anti_f);
    gen.down_w1.reserve(decomp.terms.size());
    gen.down_w2.reserve(decomp.terms.size());
    for (const auto& term : decomp.terms) {
        gen.down_w1.push_back(term.zeta.real());
        gen.down_w2.push_back(term.zeta.imag());
    }

    fill_diag(gen);
    return gen;
}

Matrix HierarchyState::ado(std::size_t pos) const {
    const std::size_t m = block_dim();
    Matrix out(dim, dim);
    const double* pr = re.data() + pos * m;
    const double* pi = im.data() + pos * m;
    for (int c = 0; c < dim; ++c) {
        for (int r = 0; r < dim; ++r) {
            out(r, c) = Complex(pr[c * dim + r], pi[c * dim + r]);
        }
    }
    return out;
}

void HierarchyState::set_ado(std::size_t pos, const Matrix& value) {
    const std::size_t m = block_dim();
    double* pr = re.data() + pos * m;
    double* pi = im.data() + pos * m;
    for (int c = 0; c < dim; ++c) {
        for (int r = 0; r < dim; ++r) {
            pr[c * dim + r] = value(r, c).real();
            pi[c * dim + r] = value(r, c).imag();
        }
    }
}

HierarchyState initial_state(const HeomGenerator& gen, const DensityMatrix& rho0) {
    rho0.validate();
    if (rho0.dim() != gen.dim) {
        throw ContractError("initial_state: state dimension mismatch");
    }
    HierarchyState s;
    s.n_ados = gen.n_ados();
    s.dim = gen.dim;
    s.re.assign(s.n_ados * s.block_dim(), 0.0);
    s.im.assign(s.n_ados * s.block_dim(), 0.0);
    s.set_ado(0, rho0.rho);
    s.t = 0.0;
    return s;
}

namespace {

// Scratch buffers for one derivative evaluation.
struct DerivWorkspace {
    std::vector<double> up_re, up_im;   // sum of up neighbors
    std::vector<double> dn1_re, dn1_im; // w1-weighted sum of down neighbors
    std::vector<double> dn2_re, dn2_im; // w2-weighted sum of down neighbors

    void resize(std::size_t n) {
        up_re.resize(n);
        up_im.resize(n);
        dn1_re.resize(n);
        dn1_im.resize(n);
        dn2_re.resize(n);
        dn2_im.resize(n);
    }
};

// dx = generator applied to x.
void derivative(const HeomGenerator& gen, const kernels::KernelTable& kt,
                const std::vector<double>& x_re, const std::vector<double>& x_im,
                std::vector<double>& dx_re, std::vector<double>& dx_im,
                DerivWorkspace& ws) {
    const auto& layout = *gen.layout;
    const std::size_t n = layout.size();
    const std::size_t m = gen.block_dim();
    const int k = layout.num_exponentials();
    const std::size_t total = n * m;

    ws.resize(total);
    std::fill(ws.up_re.begin(), ws.up_re.end(), 0.0);
    std::fill(ws.up_im.begin(), ws.up_im.end(), 0.0);
    std::fill(ws.dn1_re.begin(), ws.dn1_re.end(), 0.0);
    std::fill(ws.dn1_im.begin(), ws.dn1_im.end(), 0.0);
    std::fill(ws.dn2_re.begin(), ws.dn2_re.end(), 0.0);
    std::fill(ws.dn2_im.begin(), ws.dn2_im.end(), 0.0);

    // Gather pass: neighbor sums per ADO. Irregular access, scalar on purpose.
    for (std::size_t pos = 0; pos < n; ++pos) {
        const std::size_t base = pos * m;
        if (layout.depth(pos) < layout.depth_cap()) {
            for (int q = 0; q < k; ++q) {
                const std::int32_t up = layout.up(pos, q);
                const std::size_t ub = static_cast<std::size_t>(up) * m;
                for (std::size_t e = 0; e < m; ++e) {
                    ws.up_re[base + e] += x_re[ub + e];
                    ws.up_im[base + e] += x_im[ub + e];
                }
            }
        }
        for (const auto* link = layout.down_begin(pos);
             link != layout.down_end(pos); ++link) {
            const std::size_t db = static_cast<std::size_t>(link->pos) * m;
            const double w1 = link->count * gen.down_w1[link->exponential];
            const double w2 = link->count * gen.down_w2[link->exponential];
            for (std::size_t e = 0; e < m; ++e) {
                ws.dn1_re[base + e] += w1 * x_re[db + e];
                ws.dn1_im[base + e] += w1 * x_im[db + e];
            }
            if (w2 != 0.0) {
                for (std::size_t e = 0; e < m; ++e) {
                    ws.dn2_re[base + e] += w2 * x_re[db + e];
                    ws.dn2_im[base + e] += w2 * x_im[db + e];
                }
            }
        }
    }

    // Apply pass: uniform per-block superoperators, SIMD kernels.
    dx_re.assign(total, 0.0);
    dx_im.assign(total, 0.0);
    kt.block_matvec_accum(dx_re.data(), dx_im.data(), gen.a0.re.data(),
                          gen.a0.im.data(), x_re.data(), x_im.data(), n, m);
    kt.diag_scale_accum(dx_re.data(), dx_im.data(), gen.diag_re.data(),
                        gen.diag_im.data(), x_re.data(), x_im.data(), n, m);
    kt.block_matvec_accum(dx_re.data(), dx_im.data(), gen.up_op.re.data(),
                          gen.up_op.im.data(), ws.up_re.data(),
                          ws.up_im.data(), n, m);
    kt.block_matvec_accum(dx_re.data(), dx_im.data(), gen.down_op1.re.data(),
                          gen.down_op1.im.data(), ws.dn1_re.data(),
                          ws.dn1_im.data(), n, m);
    kt.block_matvec_accum(dx_re.data(), dx_im.data(), gen.down_op2.re.data(),
                          gen.down_op2.im.data(), ws.dn2_re.data(),
                          ws.dn2_im.data(), n, m);
}

double trace_of_block0(const HierarchyState& s) {
    double tr = 0.0;
    for (int r = 0; r < s.dim; ++r) {
        tr += s.re[static_cast<std::size_t>(r) * s.dim + r];
    }
    return tr;
}

bool finite_state(const HierarchyState& s) {
    for (double v : s.re) {
        if (!std::isfinite(v)) {
            return false;
        }
    }
    for (double v : s.im) {
        if (!std::isfinite(v)) {
            return false;
        }
    }
    return true;
}

void run_rk4(const HeomGenerator& gen, HierarchyState& state, double t_final,
             double dt) {
    const auto& kt = kernels::active_kernels();
    const std::size_t total = state.re.size();

    std::vector<double> k_re, k_im;
    std::vector<double> stage_re(total), stage_im(total);
    std::vector<double> acc_re(total), acc_im(total);
    DerivWorkspace ws;

    while (state.t < t_final - 1e-15 * std::max(1.0, t_final)) {
        const double h = std::min(dt, t_final - state.t);

        acc_re = state.re;
        acc_im = state.im;

        // k1
        derivative(gen, kt, state.re, state.im, k_re, k_im, ws);
        kt.axpy_real(acc_re.data(), h / 6.0, k_re.data(), total);
        kt.axpy_real(acc_im.data(), h / 6.0, k_im.data(), total);
        stage_re = state.re;
        stage_im = state.im;
        kt.axpy_real(stage_re.data(), 0.5 * h, k_re.data(), total);
        kt.axpy_real(stage_im.data(), 0.5 * h, k_im.data(), total);

        // k2
        derivative(gen, kt, stage_re, stage_im, k_re, k_im, ws);
        kt.axpy_real(acc_re.data(), h / 3.0, k_re.data(), total);
        kt.axpy_real(acc_im.data(), h / 3.0, k_im.data(), total);
        stage_re = state.re;
        stage_im = state.im;
        kt.axpy_real(stage_re.data(), 0.5 * h, k_re.data(), total);
        kt.axpy_real(stage_im.data(), 0.5 * h, k_im.data(), total);

        // k3
        derivative(gen, kt, stage_re, stage_im, k_re, k_im, ws);
        kt.axpy_real(acc_re.data(), h / 3.0, k_re.data(), total);
        kt.axpy_real(acc_im.data(), h / 3.0, k_im.data(), total);
        stage_re = state.re;
        stage_im = state.im;
        kt.axpy_real(stage_re.data(), h, k_re.data(), total);
        kt.axpy_real(stage_im.data(), h, k_im.data(), total);

        // k4
        derivative(gen, kt, stage_re, stage_im, k_re, k_im, ws);
        kt.axpy_real(acc_re.data(), h / 6.0, k_re.data(), total);
        kt.axpy_real(acc_im.data(), h / 6.0, k_im.data(), total);

        state.re.swap(acc_re);
        state.im.swap(acc_im);
        state.t += h;

        const double tr = trace_of_block0(state);
        if (!std::isfinite(tr)) {
            throw DivergenceError("evolve: non-finite trace encountered");
        }
    }
}

} // namespace

void evolve(const HeomGenerator& gen, HierarchyState& state, double t_final,
            double dt, const NumericPolicy& policy) {
    if (!(dt > 0.0)) {
        throw ContractError("evolve: dt must be > 0");
    }
    if (t_final < state.t) {
        throw ContractError("evolve: t_final before current time");
    }
    if (dt * gen.max_abs_diag >= 0.5) {
        const double suggested = 0.45 / gen.max_abs_diag;
        std::ostringstream msg;
        msg << "evolve: dt * max|l.nu| = " << dt * gen.max_abs_diag
            << " violates the stability guard; use dt <= " << suggested;
        throw StepSizeError(msg.str(), suggested);
    }
    if (state.re.size() != gen.n_ados() * gen.block_dim()) {
        throw ContractError("evolve: state does not match generator layout");
    }

    const HierarchyState original = state;
    double step = dt;
    for (int attempt = 0;; ++attempt) {
        run_rk4(gen, state, t_final, step);
        if (!finite_state(state)) {
            throw DivergenceError("evolve: non-finite values in the hierarchy");
        }
        const double drift = std::abs(trace_of_block0(state) - 1.0);
        if (drift <= policy.trace_drift_tol) {
            return;
        }
        if (attempt >= 2) {
            std::ostringstream msg;
            msg << "evolve: trace drift " << drift
                << " persists after step halving";
            throw IntegrityError(msg.str());
        }
        step *= 0.5;
        state = original;
    }
}

DensityMatrix reduced_state(const HierarchyState& state,
                            const NumericPolicy& policy) {
    Matrix rho = state.ado(0);
    const Complex tr = rho.trace();
    if (std::abs(tr - Complex(1.0, 0.0)) > policy.trace_drift_tol) {
        std::ostringstream msg;
        msg << "reduced_state: trace drift " << std::abs(tr - Complex(1.0, 0.0))
            << " exceeds " << policy.trace_drift_tol;
        throw IntegrityError(msg.str());
    }
    rho = 0.5 * (rho + rho.adjoint().eval());
    rho /= rho.trace().real();
    return DensityMatrix{rho};
}

DepthConvergence converge_in_depth(const std::function<double(int)>& value_at_depth,
                                   int l_start, int l_max, double tol) {
    if (l_start < 1 || l_max < l_start) {
        throw ContractError("converge_in_depth: need 1 <= L_start <= L_max");
    }
    if (!(tol > 0.0)) {
        throw ContractError("converge_in_depth: tolerance must be positive");
    }
    if (std::isinf(tol)) {
        return {l_start, value_at_depth(l_start)};
    }
    double prev = value_at_depth(l_start - 1);
    double delta = 0.0;
    for (int depth = l_start; depth <= l_max; ++depth) {
        const double value = value_at_depth(depth);
        delta = std::abs(value - prev);
        if (delta < tol) {
            return {depth, value};
        }
        prev = value;
    }
    std::ostringstream msg;
    msg << "converge_in_depth: not converged by L_max = " << l_max
        << " (last delta " << delta << ")";
    throw NonConvergenceError(msg.str(), delta);
}

} // namespace zenosim::heom
