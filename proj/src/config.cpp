#include "zenosim/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "zenosim/errors.hpp"

namespace zenosim::config {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

bool parse_double(const std::string& s, double& out) {
    try {
        std::size_t used = 0;
        out = std::stod(s, &used);
        return used == s.size();
    } catch (...) {
        return false;
    }
}

bool parse_int(const std::string& s, int& out) {
    try {
        std::size_t used = 0;
        out = std::stoi(s, &used);
        return used == s.size();
    } catch (...) {
        return false;
    }
}

bool parse_bool(const std::string& s, bool& out) {
    if (s == "true" || s == "1") {
        out = true;
        return true;
    }
    if (s == "false" || s == "0") {
        out = false;
        return true;
    }
    return false;
}

const std::set<std::string> SWEEPABLE = {
    "bath.lambda", "bath.gamma0", "bath.omega0", "bath.chi",
    "bath.beta",   "model.epsilon", "model.delta"};

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

ExperimentConfig parse_config(const std::string& text) {
    ExperimentConfig c;
    std::vector<std::string> violations;
    std::set<std::string> sections_seen;

    std::string section;
    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    std::vector<double> sweep_values;
    std::string sweep_parameter;

    auto complain = [&](const std::string& what) {
        std::ostringstream msg;
        msg << "line " << line_no << ": " << what;
        violations.push_back(msg.str());
    };

    while (std::getline(in, raw)) {
        ++line_no;
        std::string line = trim(raw);
        const auto hash = line.find('#');
        if (hash != std::string::npos) {
            line = trim(line.substr(0, hash));
        }
        if (line.empty()) {
            continue;
        }
        if (line.front() == '[') {
            if (line.back() != ']') {
                complain("malformed section header '" + line + "'");
                continue;
            }
            section = line.substr(1, line.size() - 2);
            if (section != "model" && section != "bath" && section != "solver" &&
                section != "scan" && section != "sweep" && section != "output") {
                complain("unknown section [" + section + "]");
                section.clear();
                continue;
            }
            sections_seen.insert(section);
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            complain("expected 'key = value', got '" + line + "'");
            continue;
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (section.empty()) {
            complain("key '" + key + "' outside any section");
            continue;
        }

        auto want_double = [&](double& slot) {
            if (!parse_double(value, slot)) {
                complain("key '" + key + "' expects a number, got '" + value + "'");
            }
        };
        auto want_int = [&](int& slot) {
            if (!parse_int(value, slot)) {
                complain("key '" + key + "' expects an integer, got '" + value +
                         "'");
            }
        };

        if (section == "model") {
            if (key == "kind") {
                c.model.kind = value;
            } else if (key == "epsilon") {
                want_double(c.model.epsilon);
            } else if (key == "delta") {
                want_double(c.model.delta);
            } else if (key == "initial_state") {
                c.model.initial_state = value;
            } else {
                complain("unknown key '" + key + "' in [model]");
            }
        } else if (section == "bath") {
            if (key == "kind") {
                c.bath.kind = value;
            } else if (key == "gamma0") {
                want_double(c.bath.gamma0);
            } else if (key == "lambda") {
                want_double(c.bath.lambda);
            } else if (key == "omega0") {
                want_double(c.bath.omega0);
            } else if (key == "chi") {
                want_double(c.bath.chi);
            } else if (key == "omega_c") {
                want_double(c.bath.omega_c);
            } else if (key == "beta") {
                c.bath.beta = value;
            } else {
                complain("unknown key '" + key + "' in [bath]");
            }
        } else if (section == "solver") {
            if (key == "dt") {
                want_double(c.solver.dt);
            } else if (key == "L_start") {
                want_int(c.solver.l_start);
            } else if (key == "L_max") {
                want_int(c.solver.l_max);
            } else if (key == "conv_tol") {
                want_double(c.solver.conv_tol);
            } else if (key == "matsubara_epsilon") {
                c.solver.matsubara_epsilon = value;
            } else {
                complain("unknown key '" + key + "' in [solver]");
            }
        } else if (section == "scan") {
            if (key == "tau_min") {
                want_double(c.scan.tau_min);
            } else if (key == "tau_max") {
                want_double(c.scan.tau_max);
            } else if (key == "points") {
                want_int(c.scan.points);
            } else if (key == "spacing") {
                c.scan.spacing = value;
            } else {
                complain("unknown key '" + key + "' in [scan]");
            }
        } else if (section == "sweep") {
            if (key == "parameter") {
                sweep_parameter = value;
            } else if (key == "values") {
                std::istringstream vs(value);
                std::string item;
                while (std::getline(vs, item, ',')) {
                    double v = 0.0;
                    if (!parse_double(trim(item), v)) {
                        complain("sweep value '" + trim(item) +
                                 "' is not a number");
                    } else {
                        sweep_values.push_back(v);
                    }
                }
            } else {
                complain("unknown key '" + key + "' in [sweep]");
            }
        } else if (section == "output") {
            if (key == "directory") {
                c.output.directory = value;
            } else if (key == "emit_plots") {
                if (!parse_bool(value, c.output.emit_plots)) {
                    complain("emit_plots expects true/false");
                }
            } else {
                complain("unknown key '" + key + "' in [output]");
            }
        }
    }

    line_no = 0; // subsequent messages are semantic, not positional
    auto semantic = [&](const std::string& what) { violations.push_back(what); };

    // model block
    if (c.model.kind != "qubit" && c.model.kind != "qutrit") {
        semantic("[model] kind must be 'qubit' or 'qutrit' (got '" +
                 c.model.kind + "')");
    }

    // bath block and the zero-T pairing rule
    if (c.bath.kind == "lorentzian") {
        if (c.bath.beta != "zero") {
            semantic("[bath] the Lorentzian bath is paired with zero "
                     "temperature: set beta = zero");
        }
        if (c.bath.gamma0 < 0.0) {
            semantic("[bath] gamma0 must be >= 0");
        }
        if (c.bath.lambda <= 0.0) {
            semantic("[bath] lambda must be > 0");
        }
    } else if (c.bath.kind == "ohmic_drude") {
        double beta = 0.0;
        if (c.bath.beta == "zero" || !parse_double(c.bath.beta, beta) ||
            beta <= 0.0) {
            semantic("[bath] the Ohmic-Drude bath is paired with finite "
                     "temperature: set beta to a positive number");
        }
        if (c.bath.chi < 0.0) {
            semantic("[bath] chi must be >= 0");
        }
        if (c.bath.omega_c <= 0.0) {
            semantic("[bath] omega_c must be > 0");
        }
    } else {
        semantic("[bath] kind must be 'lorentzian' or 'ohmic_drude' (got '" +
                 c.bath.kind + "')");
    }

    // solver block
    if (!(c.solver.dt > 0.0)) {
        semantic("[solver] dt must be > 0");
    }
    if (c.solver.l_start < 1 || c.solver.l_max < c.solver.l_start) {
        semantic("[solver] need 1 <= L_start <= L_max");
    }
    if (!(c.solver.conv_tol > 0.0)) {
        semantic("[solver] conv_tol must be > 0");
    }
    if (c.solver.matsubara_epsilon != "auto") {
        int eps = 0;
        if (!parse_int(c.solver.matsubara_epsilon, eps) || eps < 0) {
            semantic("[solver] matsubara_epsilon must be 'auto' or a "
                     "nonnegative integer");
        }
    }

    // scan block; tau_min = -1 means "use the default"
    if (sections_seen.count("scan") != 0u) {
        const bool tau_min_set = c.scan.tau_min != -1.0;
        if (tau_min_set && c.scan.tau_min <= 0.0) {
            semantic("[scan] tau_min must be > 0 (omit it for the default)");
        }
        if (c.scan.tau_max <= 0.0) {
            semantic("[scan] tau_max is required and must be > 0");
        } else if (tau_min_set && c.scan.tau_max <= c.scan.tau_min) {
            semantic("[scan] tau_max must exceed tau_min");
        }
        if (c.scan.points < 2) {
            semantic("[scan] points must be >= 2");
        }
        if (c.scan.spacing != "linear" && c.scan.spacing != "log") {
            semantic("[scan] spacing must be 'linear' or 'log'");
        }
    } else {
        semantic("[scan] section is required (it also defines the dynamics "
                 "time grid)");
    }

    // sweep block
    if (sections_seen.count("sweep") != 0u) {
        if (SWEEPABLE.count(sweep_parameter) == 0u) {
            std::string known;
            for (const auto& p : SWEEPABLE) {
                known += (known.empty() ? "" : ", ") + p;
            }
            semantic("[sweep] parameter '" + sweep_parameter +
                     "' is not sweepable (known: " + known + ")");
        }
        if (sweep_values.empty()) {
            semantic("[sweep] values list is empty");
        }
        c.sweep = SweepBlock{sweep_parameter, sweep_values};
    }

    // initial state is validated by construction
    if (violations.empty()) {
        try {
            build_initial_state(c);
        } catch (const Error& e) {
            semantic(std::string("[model] initial_state: ") + e.what());
        }
    }

    if (!violations.empty()) {
        std::ostringstream msg;
        msg << violations.size() << " configuration violation(s)";
        for (const auto& v : violations) {
            msg << "\n  - " << v;
        }
        throw ConfigError(msg.str(), violations);
    }
    return c;
}

ExperimentConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file: " + path,
                          {"cannot open config file: " + path});
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

std::string serialize(const ExperimentConfig& c) {
    std::ostringstream out;
    out << "[model]\n";
    out << "kind = " << c.model.kind << "\n";
    out << "epsilon = " << fmt(c.model.epsilon) << "\n";
    out << "delta = " << fmt(c.model.delta) << "\n";
    out << "initial_state = " << c.model.initial_state << "\n";
    out << "[bath]\n";
    out << "kind = " << c.bath.kind << "\n";
    if (c.bath.kind == "lorentzian") {
        out << "gamma0 = " << fmt(c.bath.gamma0) << "\n";
        out << "lambda = " << fmt(c.bath.lambda) << "\n";
        out << "omega0 = " << fmt(c.bath.omega0) << "\n";
    } else {
        out << "chi = " << fmt(c.bath.chi) << "\n";
        out << "omega_c = " << fmt(c.bath.omega_c) << "\n";
    }
    out << "beta = " << c.bath.beta << "\n";
    out << "[solver]\n";
    out << "dt = " << fmt(c.solver.dt) << "\n";
    out << "L_start = " << c.solver.l_start << "\n";
    out << "L_max = " << c.solver.l_max << "\n";
    out << "conv_tol = " << fmt(c.solver.conv_tol) << "\n";
    out << "matsubara_epsilon = " << c.solver.matsubara_epsilon << "\n";
    out << "[scan]\n";
    if (c.scan.tau_min > 0.0) {
        out << "tau_min = " << fmt(c.scan.tau_min) << "\n";
    }
    out << "tau_max = " << fmt(c.scan.tau_max) << "\n";
    out << "points = " << c.scan.points << "\n";
    out << "spacing = " << c.scan.spacing << "\n";
    if (c.sweep) {
        out << "[sweep]\n";
        out << "parameter = " << c.sweep->parameter << "\n";
        out << "values = ";
        for (std::size_t i = 0; i < c.sweep->values.size(); ++i) {
            out << (i ? ", " : "") << fmt(c.sweep->values[i]);
        }
        out << "\n";
    }
    out << "[output]\n";
    out << "directory = " << c.output.directory << "\n";
    out << "emit_plots = " << (c.output.emit_plots ? "true" : "false") << "\n";
    return out.str();
}

models::ModelSpec build_model(const ExperimentConfig& c) {
    if (c.model.kind == "qubit") {
        return models::biased_qubit(c.model.epsilon, c.model.delta);
    }
    return models::biased_qutrit(c.model.epsilon, c.model.delta);
}

StateVector build_initial_state(const ExperimentConfig& c) {
    const int dim = c.model.kind == "qubit" ? 2 : 3;
    const std::string& s = c.model.initial_state;
    if (s == "excited") {
        Vector v = Vector::Zero(dim);
        v(0) = 1.0;
        return StateVector{v};
    }
    if (s == "plus") {
        if (dim != 2) {
            throw DomainError("initial_state 'plus' requires the qubit model");
        }
        Vector v(2);
        v << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
        return StateVector{v};
    }
    if (s.rfind("coherent(", 0) == 0 && s.back() == ')') {
        const std::string args = s.substr(9, s.size() - 10);
        const auto comma = args.find(',');
        double theta = 0.0;
        double phi0 = 0.0;
        if (comma == std::string::npos ||
            !parse_double(trim(args.substr(0, comma)), theta) ||
            !parse_double(trim(args.substr(comma + 1)), phi0)) {
            throw DomainError("coherent(theta,phi0) expects two numbers");
        }
        return models::su2_coherent_state(0.5 * (dim - 1), theta, phi0);
    }
    if (s.rfind("amplitudes:", 0) == 0) {
        std::string rest = s.substr(11);
        Vector v = Vector::Zero(dim);
        int idx = 0;
        std::istringstream in(rest);
        std::string pair;
        while (std::getline(in, pair, ';')) {
            pair = trim(pair);
            if (pair.size() < 5 || pair.front() != '(' || pair.back() != ')') {
                throw DomainError("amplitudes expect (re,im);(re,im);...");
            }
            const std::string body = pair.substr(1, pair.size() - 2);
            const auto comma = body.find(',');
            double re = 0.0;
            double im = 0.0;
            if (comma == std::string::npos ||
                !parse_double(trim(body.substr(0, comma)), re) ||
                !parse_double(trim(body.substr(comma + 1)), im)) {
                throw DomainError("amplitudes expect (re,im);(re,im);...");
            }
            if (idx >= dim) {
                throw DomainError("too many amplitudes for the model dimension");
            }
            v(idx++) = Complex(re, im);
        }
        if (idx != dim) {
            throw DomainError("amplitude count does not match the dimension");
        }
        return normalized_state(v);
    }
    throw DomainError("unknown initial_state '" + s + "'");
}

zeno::BathSetup build_bath(const ExperimentConfig& c) {
    if (c.bath.kind == "lorentzian") {
        return zeno::BathSetup{
            bath::Lorentzian{c.bath.gamma0, c.bath.lambda, c.bath.omega0},
            bath::ZERO_TEMPERATURE};
    }
    double beta = 0.0;
    parse_double(c.bath.beta, beta);
    return zeno::BathSetup{bath::OhmicDrude{c.bath.chi, c.bath.omega_c}, beta};
}

zeno::SolverSettings build_solver(const ExperimentConfig& c) {
    zeno::SolverSettings s;
    s.dt = c.solver.dt;
    s.l_start = c.solver.l_start;
    s.l_max = c.solver.l_max;
    s.conv_tol = c.solver.conv_tol;
    if (c.solver.matsubara_epsilon == "auto") {
        s.matsubara_epsilon = -1;
    } else {
        parse_int(c.solver.matsubara_epsilon, s.matsubara_epsilon);
    }
    return s;
}

std::vector<double> build_tau_grid(const ExperimentConfig& c) {
    double lo = c.scan.tau_min;
    if (lo <= 0.0) {
        // default 0.02 / max(model and bath frequency scales)
        double scale = std::max(std::abs(c.model.epsilon),
                                std::abs(c.model.delta));
        if (c.bath.kind == "lorentzian") {
            scale = std::max(scale, c.bath.lambda);
        } else {
            scale = std::max(scale, c.bath.omega_c);
        }
        if (scale <= 0.0) {
            scale = 1.0;
        }
        lo = 0.02 / scale;
    }
    const double hi = c.scan.tau_max;
    const int n = c.scan.points;
    std::vector<double> grid(n);
    if (c.scan.spacing == "log") {
        const double ratio = std::log(hi / lo);
        for (int i = 0; i < n; ++i) {
            grid[i] = lo * std::exp(ratio * i / (n - 1));
        }
    } else {
        for (int i = 0; i < n; ++i) {
            grid[i] = lo + (hi - lo) * i / (n - 1);
        }
    }
    grid.back() = hi;
    return grid;
}

ExperimentConfig with_sweep_value(const ExperimentConfig& c,
                                  const std::string& parameter, double value) {
    ExperimentConfig out = c;
    if (parameter == "bath.lambda") {
        out.bath.lambda = value;
    } else if (parameter == "bath.gamma0") {
        out.bath.gamma0 = value;
    } else if (parameter == "bath.omega0") {
        out.bath.omega0 = value;
    } else if (parameter == "bath.chi") {
        out.bath.chi = value;
    } else if (parameter == "bath.beta") {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.17g", value);
        out.bath.beta = buf;
    } else if (parameter == "model.epsilon") {
        out.model.epsilon = value;
    } else if (parameter == "model.delta") {
        out.model.delta = value;
    } else {
        throw DomainError("unknown sweep parameter '" + parameter + "'");
    }
    return out;
}

} // namespace zenosim::config
