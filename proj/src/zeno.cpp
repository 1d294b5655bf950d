#include "zenosim/zeno.hpp"

#include <atomic>
#include <cmath>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "zenosim/errors.hpp"

namespace zenosim::zeno {

int resolve_matsubara_epsilon(const BathSetup& bath_setup,
                              const SolverSettings& settings) {
    if (bath_setup.zero_temperature()) {
        return -1;
    }
    if (settings.matsubara_epsilon >= 0) {
        return settings.matsubara_epsilon;
    }
    const auto& drude = std::get<bath::OhmicDrude>(bath_setup.spectrum);
    return bath::auto_matsubara_epsilon(drude, bath_setup.beta).epsilon;
}

heom::HeomGenerator make_generator(const models::ModelSpec& model,
                                   const BathSetup& bath_setup,
                                   const SolverSettings& settings, int depth) {
    if (bath_setup.zero_temperature()) {
        return heom::build_zero_t_generator(
            model, std::get<bath::Lorentzian>(bath_setup.spectrum), depth,
            settings.max_ados);
    }
    return heom::build_finite_t_generator(
        model, std::get<bath::OhmicDrude>(bath_setup.spectrum), bath_setup.beta,
        resolve_matsubara_epsilon(bath_setup, settings), depth,
        settings.max_ados);
}

double integration_step(const heom::HeomGenerator& gen, double horizon,
                        double dt_request) {
    const double h_scale = gen.model.h_s.cwiseAbs().maxCoeff();
    double step = dt_request;
    if (gen.max_abs_diag > 0.0) {
        step = std::min(step, 0.4 / gen.max_abs_diag);
    }
    if (h_scale > 0.0) {
        step = std::min(step, 0.1 / h_scale);
    }
    return std::min(step, horizon / 16.0);
}

namespace {

// Generators are immutable once built, so they are shared across scan points
// and threads through this cache.
class GeneratorCache {
public:
    GeneratorCache(const models::ModelSpec& model, const BathSetup& bath_setup,
                   const SolverSettings& settings)
        : model_(model), bath_(bath_setup), settings_(settings),
          epsilon_(resolve_matsubara_epsilon(bath_setup, settings)) {}

    std::shared_ptr<const heom::HeomGenerator> at_depth(int depth) {
        std::lock_guard<std::mutex> lock(mutex_);
        auto it = cache_.find(depth);
        if (it != cache_.end()) {
            return it->second;
        }
        auto gen = std::make_shared<heom::HeomGenerator>(build(depth));
        cache_.emplace(depth, gen);
        return gen;
    }

    int epsilon() const { return epsilon_; }

private:
    heom::HeomGenerator build(int depth) const {
        SolverSettings pinned = settings_;
        pinned.matsubara_epsilon = epsilon_; // resolved once, shared by depths
        return make_generator(model_, bath_, pinned, depth);
    }

    models::ModelSpec model_;
    BathSetup bath_;
    SolverSettings settings_;
    int epsilon_;
    std::mutex mutex_;
    std::map<int, std::shared_ptr<const heom::HeomGenerator>> cache_;
};

double survival_from_generator(const heom::HeomGenerator& gen,
                               const StateVector& psi0, double tau, double dt) {
    heom::HierarchyState state =
        heom::initial_state(gen, pure_state_density(psi0));
    const double step = integration_step(gen, tau, dt);
    heom::evolve(gen, state, tau, step);
    const DensityMatrix rho = heom::reduced_state(state);

    const Matrix rotation = expm_i_hermitian(gen.model.h_s, tau);
    const Matrix rotated = rotation * rho.rho * rotation.adjoint();
    const Complex amp = psi0.amplitudes.adjoint() * rotated * psi0.amplitudes;
    if (std::abs(amp.imag()) > 1e-9) {
        throw IntegrityError("survival: imaginary part above tolerance");
    }
    double p = amp.real();
    if (p < -1e-9 || p > 1.0 + 1e-9) {
        std::ostringstream msg;
        msg << "survival: value " << p << " outside [0, 1]";
        throw IntegrityError(msg.str());
    }
    return std::min(1.0, std::max(0.0, p));
}

double survival_at_depth_cached(GeneratorCache& cache, const StateVector& psi0,
                                double tau, const SolverSettings& settings,
                                int depth, bool zero_temperature) {
    if (depth == 0 && zero_temperature) {
        // Depth-0 truncation of the zero-T hierarchy is unitary evolution;
        // the rotating frame cancels it exactly.
        return 1.0;
    }
    return survival_from_generator(*cache.at_depth(depth), psi0, tau,
                                   settings.dt);
}

struct PointResult {
    double survival = 1.0;
    double gamma = 0.0;
    int depth = 0;
};

PointResult converged_point(GeneratorCache& cache, const BathSetup& bath_setup,
                            const StateVector& psi0, double tau,
                            const SolverSettings& settings) {
    std::map<int, double> survivals;
    auto gamma_at_depth = [&](int depth) {
        const double p = survival_at_depth_cached(cache, psi0, tau, settings,
                                                  depth,
                                                  bath_setup.zero_temperature());
        survivals[depth] = p;
        return effective_decay_rate(p, tau);
    };
    const heom::DepthConvergence conv = heom::converge_in_depth(
        gamma_at_depth, settings.l_start, settings.l_max, settings.conv_tol);
    return {survivals.at(conv.converged_depth), conv.value, conv.converged_depth};
}

} // namespace

double survival_at_depth(const models::ModelSpec& model, const BathSetup& bath_setup,
                         const StateVector& psi0, double tau,
                         const SolverSettings& settings, int depth) {
    psi0.validate();
    if (!(tau > 0.0)) {
        throw DomainError("survival: tau must be > 0");
    }
    GeneratorCache cache(model, bath_setup, settings);
    return survival_at_depth_cached(cache, psi0, tau, settings, depth,
                                    bath_setup.zero_temperature());
}

double survival_probability(const models::ModelSpec& model,
                            const BathSetup& bath_setup, const StateVector& psi0,
                            double tau, const SolverSettings& settings) {
    psi0.validate();
    if (!(tau > 0.0)) {
        throw DomainError("survival: tau must be > 0");
    }
    GeneratorCache cache(model, bath_setup, settings);
    return converged_point(cache, bath_setup, psi0, tau, settings).survival;
}

double effective_decay_rate(double survival, double tau) {
    if (!(tau > 0.0)) {
        throw DomainError("effective_decay_rate: tau must be > 0");
    }
    if (!(survival > 0.0)) {
        throw DomainError(
            "effective_decay_rate: survival must be positive (upstream "
            "numerical failure)");
    }
    const double p = std::min(survival, 1.0);
    return -std::log(p) / tau;
}

ZenoScan scan(const models::ModelSpec& model, const BathSetup& bath_setup,
              const StateVector& psi0, const std::vector<double>& tau_grid,
              const SolverSettings& settings, int n_threads) {
    psi0.validate();
    if (tau_grid.empty()) {
        throw ContractError("scan: empty tau grid");
    }
    for (std::size_t i = 0; i < tau_grid.size(); ++i) {
        if (!(tau_grid[i] > 0.0) ||
            (i > 0 && !(tau_grid[i] > tau_grid[i - 1]))) {
            throw ContractError("scan: grid must be strictly increasing and positive");
        }
    }

    GeneratorCache cache(model, bath_setup, settings);
    const std::size_t n = tau_grid.size();
    std::vector<PointResult> results(n);
    std::vector<std::exception_ptr> failures(n);

    const int workers =
        std::max(1, std::min<int>(n_threads, static_cast<int>(n)));
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n) {
                return;
            }
            try {
                results[i] = converged_point(cache, bath_setup, psi0,
                                             tau_grid[i], settings);
            } catch (...) {
                failures[i] = std::current_exception();
            }
        }
    };
    if (workers == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back(worker);
        }
        for (auto& th : pool) {
            th.join();
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (failures[i]) {
            try {
                std::rethrow_exception(failures[i]);
            } catch (const Error& e) {
                std::ostringstream msg;
                msg << "scan: point tau = " << tau_grid[i]
                    << " failed: " << e.what();
                if (dynamic_cast<const NonConvergenceError*>(&e) != nullptr) {
                    throw NonConvergenceError(
                        msg.str(),
                        dynamic_cast<const NonConvergenceError&>(e).last_delta);
                }
                throw Error(msg.str());
            }
        }
    }

    ZenoScan out;
    out.tau = tau_grid;
    out.survival.resize(n);
    out.gamma.resize(n);
    out.converged_depth.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        out.survival[i] = results[i].survival;
        out.gamma[i] = results[i].gamma;
        out.converged_depth[i] = results[i].depth;
    }
    auto extrema = detect_crossovers(out.gamma);
    out.maxima = std::move(extrema.first);
    out.minima = std::move(extrema.second);
    try {
        out.zeno_fit = zeno_time(out);
    } catch (const NoZenoRegimeError&) {
        out.zeno_fit.reset();
    } catch (const ContractError&) {
        out.zeno_fit.reset(); // grid shorter than the fit window
    }
    std::ostringstream prov;
    prov << "model=" << model.label << "; bath=";
    if (bath_setup.zero_temperature()) {
        const auto& l = std::get<bath::Lorentzian>(bath_setup.spectrum);
        prov << "lorentzian(gamma0=" << l.gamma0 << ",lambda=" << l.lambda
             << ",omega0=" << l.omega0 << ")@T=0";
    } else {
        const auto& o = std::get<bath::OhmicDrude>(bath_setup.spectrum);
        prov << "ohmic_drude(chi=" << o.chi << ",omega_c=" << o.omega_c
             << ")@beta=" << bath_setup.beta << ",epsilon=" << cache.epsilon();
    }
    prov << "; dt=" << settings.dt << "; L=[" << settings.l_start << ","
         << settings.l_max << "]; conv_tol=" << settings.conv_tol;
    out.provenance = prov.str();
    return out;
}

ZenoTimeFit zeno_time(const ZenoScan& scan_result, int fit_window) {
    if (fit_window < 3) {
        throw ContractError("zeno_time: fit window must be >= 3");
    }
    if (static_cast<int>(scan_result.tau.size()) < fit_window) {
        throw ContractError("zeno_time: scan shorter than the fit window");
    }
    const NumericPolicy& policy = default_policy();
    double st2 = 0.0;
    double stg = 0.0;
    bool any_signal = false;
    for (int i = 0; i < fit_window; ++i) {
        const double t = scan_result.tau[i];
        const double g = scan_result.gamma[i];
        st2 += t * t;
        stg += t * g;
        any_signal = any_signal || g > policy.extremum_floor;
    }
    const double slope = stg / st2;
    if (!any_signal || slope <= 0.0) {
        throw NoZenoRegimeError(
            "zeno_time: no positive short-time slope (Gamma vanishes or "
            "decreases through the fit window)");
    }
    double ss_res = 0.0;
    double ss_tot = 0.0;
    for (int i = 0; i < fit_window; ++i) {
        const double r = scan_result.gamma[i] - slope * scan_result.tau[i];
        ss_res += r * r;
        ss_tot += scan_result.gamma[i] * scan_result.gamma[i];
    }
    ZenoTimeFit fit;
    fit.slope = slope;
    fit.tau_z = 1.0 / std::sqrt(slope);
    fit.residual = std::sqrt(ss_res / std::max(ss_tot, 1e-300));
    fit.regime_warning = fit.residual > 0.05;
    fit.fit_window = fit_window;
    return fit;
}

std::pair<std::vector<int>, std::vector<int>> detect_crossovers(
    const std::vector<double>& gamma, const NumericPolicy& policy) {
    std::vector<int> maxima;
    std::vector<int> minima;
    if (gamma.size() < 3) {
        return {maxima, minima};
    }
    for (int i = 1; i + 1 < static_cast<int>(gamma.size()); ++i) {
        if (gamma[i] < policy.extremum_floor) {
            continue;
        }
        // Strict on the left, non-strict on the right: a plateau counts once,
        // at its left edge.
        if (gamma[i] > gamma[i - 1] && gamma[i] >= gamma[i + 1]) {
            maxima.push_back(i);
        } else if (gamma[i] < gamma[i - 1] && gamma[i] <= gamma[i + 1]) {
            minima.push_back(i);
        }
    }
    return {maxima, minima};
}

} // namespace zenosim::zeno
