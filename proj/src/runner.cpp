#include "zenosim/runner.hpp"

#include <cmath>
#include <filesystem>
#include <sstream>

#include "zenosim/csv.hpp"
#include "zenosim/errors.hpp"
#include "zenosim/infoflow.hpp"
#include "zenosim/quantum.hpp"

namespace zenosim::runner {

namespace fs = std::filesystem;

namespace {

std::string prepare_dir(const config::ExperimentConfig& c,
                        const std::string& out_dir) {
    const std::string dir = out_dir.empty() ? c.output.directory : out_dir;
    fs::create_directories(dir);
    return dir;
}

Matrix observable_z(int dim) { return dim == 2 ? pauli_z() : spin1_jz(); }

// Maximally mixed state on the orthogonal complement of |psi0> (for a qubit
// this is the antipodal pure state).
DensityMatrix orthogonal_reference(const StateVector& psi0) {
    const int d = psi0.dim();
    const Matrix p = psi0.projector();
    return DensityMatrix{(identity(d) - p) / static_cast<double>(d - 1)};
}

struct Trajectory {
    std::vector<double> times;
    std::vector<DensityMatrix> lab;     // Schroedinger picture
    std::vector<DensityMatrix> rotated; // e^{iHt} rho e^{-iHt}
    int depth = 0;
};

// Single pass along a uniform grid at a converged truncation depth. The
// depth functional is the grid-mean Frobenius norm of the reduced state:
// sensitive to coherences (a bare population observable is frozen under pure
// dephasing) and to the whole transient (a final-time value goes blind once
// the transient has died out by then).
Trajectory converged_trajectory(const config::ExperimentConfig& c,
                                const models::ModelSpec& model,
                                const zeno::BathSetup& bath_setup,
                                const StateVector& psi0, int points,
                                double t_max) {
    const auto settings = config::build_solver(c);
    const DensityMatrix rho0 = pure_state_density(psi0);

    auto run = [&](int depth, Trajectory* keep) {
        if (depth == 0 && bath_setup.zero_temperature()) {
            // depth-0 truncation of a zero-temperature hierarchy is plain
            // unitary evolution, under which the norm is invariant
            return rho0.rho.norm();
        }
        const auto gen = zeno::make_generator(model, bath_setup, settings, depth);
        heom::HierarchyState state = heom::initial_state(gen, rho0);
        const double step =
            zeno::integration_step(gen, std::max(t_max, 1e-12), settings.dt);
        double value = 0.0;
        for (int i = 0; i < points; ++i) {
            const double t = t_max * i / (points - 1);
            if (t > state.t) {
                heom::evolve(gen, state, t, step);
            }
            const DensityMatrix rho = heom::reduced_state(state);
            if (keep != nullptr) {
                keep->times.push_back(t);
                keep->lab.push_back(rho);
                const Matrix u = expm_i_hermitian(model.h_s, t);
                keep->rotated.push_back(
                    DensityMatrix{u * rho.rho * u.adjoint()});
            }
            value += rho.rho.norm() / points;
        }
        return value;
    };

    const auto conv = heom::converge_in_depth(
        [&](int depth) { return run(depth, nullptr); }, settings.l_start,
        settings.l_max, settings.conv_tol);
    Trajectory traj;
    run(conv.converged_depth, &traj);
    traj.depth = conv.converged_depth;
    return traj;
}

std::string sanitize(const std::string& s) {
    std::string out = s;
    for (char& ch : out) {
        if (ch == '.' || ch == '/' || ch == ' ') {
            ch = '_';
        }
    }
    return out;
}

struct ScanOutput {
    zeno::ZenoScan scan;
    std::string file;
};

ScanOutput emit_scan(const config::ExperimentConfig& c, const std::string& dir,
                     const std::string& stem, int threads) {
    const auto model = config::build_model(c);
    const auto bath_setup = config::build_bath(c);
    const auto psi0 = config::build_initial_state(c);
    const auto settings = config::build_solver(c);
    const auto grid = config::build_tau_grid(c);

    const auto scan = zeno::scan(model, bath_setup, psi0, grid, settings, threads);

    csv::Table table;
    table.columns = {"tau", "survival", "gamma", "converged_L", "converged"};
    for (std::size_t i = 0; i < scan.tau.size(); ++i) {
        table.rows.push_back({scan.tau[i], scan.survival[i], scan.gamma[i],
                              static_cast<double>(scan.converged_depth[i]),
                              1.0});
    }
    std::ostringstream maxima;
    maxima << "maxima_tau =";
    for (int i : scan.maxima) {
        maxima << " " << csv::format_number(scan.tau[i]);
    }
    std::ostringstream minima;
    minima << "minima_tau =";
    for (int i : scan.minima) {
        minima << " " << csv::format_number(scan.tau[i]);
    }
    table.footer.push_back(maxima.str());
    table.footer.push_back(minima.str());
    if (scan.zeno_fit) {
        table.footer.push_back("zeno_time = " +
                               csv::format_number(scan.zeno_fit->tau_z));
        table.footer.push_back("zeno_slope = " +
                               csv::format_number(scan.zeno_fit->slope));
        table.footer.push_back("zeno_fit_residual = " +
                               csv::format_number(scan.zeno_fit->residual));
        table.footer.push_back(std::string("zeno_regime_warning = ") +
                               (scan.zeno_fit->regime_warning ? "1" : "0"));
    } else {
        table.footer.push_back("zeno_time = none");
    }
    table.footer.push_back("provenance: " + scan.provenance);

    const std::string path = dir + "/" + stem + ".csv";
    csv::write_file(path,
                    csv::render("zenosim zeno-scan", config::serialize(c), table));
    return {scan, path};
}

} // namespace

RunArtifacts run_dynamics(const config::ExperimentConfig& c,
                          const std::string& out_dir, int threads) {
    (void)threads; // single trajectory; depth sweep dominates and is serial
    const std::string dir = prepare_dir(c, out_dir);
    const auto model = config::build_model(c);
    const auto bath_setup = config::build_bath(c);
    const auto psi0 = config::build_initial_state(c);
    const DensityMatrix reference = orthogonal_reference(psi0);

    const auto traj = converged_trajectory(c, model, bath_setup, psi0,
                                           c.scan.points, c.scan.tau_max);

    csv::Table table;
    table.columns = {"t", model.dim == 2 ? "sigma_z" : "j_z"};
    for (int r = 0; r < model.dim; ++r) {
        for (int col = r + 1; col < model.dim; ++col) {
            std::ostringstream name;
            name << "coh_" << r << col << "_abs";
            table.columns.push_back(name.str());
        }
    }
    table.columns.push_back("trace");
    table.columns.push_back("dist_orth_rot");

    const Matrix obs = observable_z(model.dim);
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        std::vector<double> row;
        row.push_back(traj.times[i]);
        row.push_back(real_expectation(traj.lab[i].rho, obs));
        for (int r = 0; r < model.dim; ++r) {
            for (int col = r + 1; col < model.dim; ++col) {
                row.push_back(std::abs(traj.lab[i].rho(r, col)));
            }
        }
        row.push_back(traj.lab[i].rho.trace().real());
        row.push_back(infoflow::trace_distance(traj.rotated[i], reference));
        table.rows.push_back(row);
    }
    table.footer.push_back("converged_L = " + std::to_string(traj.depth));

    const std::string path = dir + "/dynamics.csv";
    const std::string content =
        csv::render("zenosim dynamics", config::serialize(c), table);
    csv::write_file(path, content);

    RunArtifacts artifacts;
    artifacts.files.push_back(path);
    if (c.output.emit_plots) {
        csv::Series s;
        s.label = table.columns[1];
        for (const auto& row : table.rows) {
            s.x.push_back(row[0]);
            s.y.push_back(row[1]);
        }
        const std::string svg = dir + "/dynamics.svg";
        csv::write_file(svg, csv::render_svg_plot("dynamics", "t",
                                                  table.columns[1], {s}, content));
        artifacts.files.push_back(svg);
    }
    std::ostringstream sum;
    sum << "dynamics: " << traj.times.size() << " points to t = "
        << c.scan.tau_max << ", converged at L = " << traj.depth;
    artifacts.summary = sum.str();
    return artifacts;
}

RunArtifacts run_zeno_scan(const config::ExperimentConfig& c,
                           const std::string& out_dir, int threads) {
    const std::string dir = prepare_dir(c, out_dir);
    RunArtifacts artifacts;

    std::vector<ScanOutput> outputs;
    if (c.sweep) {
        csv::Table summary;
        summary.columns = {"value", "zeno_time", "zeno_slope", "n_maxima",
                           "n_minima"};
        for (std::size_t k = 0; k < c.sweep->values.size(); ++k) {
            const double value = c.sweep->values[k];
            config::ExperimentConfig point =
                config::with_sweep_value(c, c.sweep->parameter, value);
            point.sweep.reset();
            std::ostringstream stem;
            stem << "zeno_scan_" << sanitize(c.sweep->parameter) << "_" << k;
            outputs.push_back(emit_scan(point, dir, stem.str(), threads));
            const auto& scan = outputs.back().scan;
            summary.rows.push_back(
                {value, scan.zeno_fit ? scan.zeno_fit->tau_z : 0.0,
                 scan.zeno_fit ? scan.zeno_fit->slope : 0.0,
                 static_cast<double>(scan.maxima.size()),
                 static_cast<double>(scan.minima.size())});
        }
        const std::string spath = dir + "/zeno_scan_summary.csv";
        csv::write_file(spath, csv::render("zenosim zeno-scan sweep summary",
                                           config::serialize(c), summary));
        artifacts.files.push_back(spath);
    } else {
        outputs.push_back(emit_scan(c, dir, "zeno_scan", threads));
    }
    for (const auto& o : outputs) {
        artifacts.files.push_back(o.file);
    }

    if (c.output.emit_plots) {
        std::vector<csv::Series> series;
        for (std::size_t k = 0; k < outputs.size(); ++k) {
            csv::Series s;
            s.label = c.sweep ? c.sweep->parameter + " = " +
                                    csv::format_number(c.sweep->values[k])
                              : "Gamma(tau)";
            s.x = outputs[k].scan.tau;
            s.y = outputs[k].scan.gamma;
            series.push_back(std::move(s));
        }
        const std::string svg = dir + "/zeno_scan.svg";
        csv::write_file(svg,
                        csv::render_svg_plot("effective decay rate", "tau",
                                             "Gamma", series,
                                             config::serialize(c)));
        artifacts.files.push_back(svg);
    }

    std::ostringstream sum;
    sum << "zeno-scan: " << outputs.size() << " scan(s), "
        << outputs.front().scan.tau.size() << " points each";
    artifacts.summary = sum.str();
    return artifacts;
}

RunArtifacts run_zeno_time(const config::ExperimentConfig& c,
                           const std::string& out_dir, int threads) {
    const std::string dir = prepare_dir(c, out_dir);
    const auto model = config::build_model(c);
    const auto bath_setup = config::build_bath(c);
    const auto psi0 = config::build_initial_state(c);
    const auto settings = config::build_solver(c);
    const auto grid = config::build_tau_grid(c);

    const auto scan = zeno::scan(model, bath_setup, psi0, grid, settings, threads);
    const int window = std::min<int>(8, static_cast<int>(grid.size()));
    const auto fit = zeno::zeno_time(scan, window); // throws NoZenoRegimeError

    csv::Table table;
    table.columns = {"zeno_time", "slope", "fit_residual", "regime_warning",
                     "fit_window"};
    table.rows.push_back({fit.tau_z, fit.slope, fit.residual,
                          fit.regime_warning ? 1.0 : 0.0,
                          static_cast<double>(fit.fit_window)});
    table.footer.push_back("provenance: " + scan.provenance);
    const std::string path = dir + "/zeno_time.csv";
    csv::write_file(path, csv::render("zenosim zeno-time", config::serialize(c),
                                      table));

    RunArtifacts artifacts;
    artifacts.files.push_back(path);
    std::ostringstream sum;
    sum << "zeno-time: tau_Z = " << csv::format_number(fit.tau_z)
        << " (slope " << csv::format_number(fit.slope) << ", residual "
        << csv::format_number(fit.residual) << ")";
    if (fit.regime_warning) {
        sum << " [warning: leading points are outside the quadratic regime]";
    }
    artifacts.summary = sum.str();
    return artifacts;
}

RunArtifacts run_infoflow(const config::ExperimentConfig& c,
                          const std::string& out_dir, int threads) {
    (void)threads;
    const std::string dir = prepare_dir(c, out_dir);
    const auto model = config::build_model(c);
    const auto bath_setup = config::build_bath(c);
    const auto psi0 = config::build_initial_state(c);
    const DensityMatrix reference = orthogonal_reference(psi0);

    const auto traj = converged_trajectory(c, model, bath_setup, psi0,
                                           c.scan.points, c.scan.tau_max);
    const auto flow =
        infoflow::flow_decomposition(traj.times, traj.rotated, reference);

    csv::Table table;
    table.columns = {"t", "distance", "rate", "cum_loss", "cum_gain"};
    for (std::size_t i = 0; i < flow.times.size(); ++i) {
        table.rows.push_back({flow.times[i], flow.distance[i], flow.rate[i],
                              flow.cum_loss[i], flow.cum_gain[i]});
    }
    const double identity_residual =
        std::abs(flow.distance.back() -
                 (flow.distance.front() - flow.info_loss + flow.info_gain));
    table.footer.push_back("info_loss = " + csv::format_number(flow.info_loss));
    table.footer.push_back("info_gain = " + csv::format_number(flow.info_gain));
    table.footer.push_back("identity_residual = " +
                           csv::format_number(identity_residual));
    table.footer.push_back("converged_L = " + std::to_string(traj.depth));

    const std::string path = dir + "/infoflow.csv";
    csv::write_file(path,
                    csv::render("zenosim infoflow", config::serialize(c), table));

    RunArtifacts artifacts;
    artifacts.files.push_back(path);
    std::ostringstream sum;
    sum << "infoflow: loss = " << csv::format_number(flow.info_loss)
        << ", gain = " << csv::format_number(flow.info_gain)
        << ", identity residual = " << csv::format_number(identity_residual);
    artifacts.summary = sum.str();
    return artifacts;
}

} // namespace zenosim::runner
