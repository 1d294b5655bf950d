#include "doctest.h"

#include <cmath>

#include "zenosim/config.hpp"
#include "zenosim/csv.hpp"
#include "zenosim/errors.hpp"

using namespace zenosim;

namespace {

const char* FIG1 = R"(# Fig. 1 fixture
[model]
kind = qubit
epsilon = 1.0
delta = 0.0
initial_state = plus
[bath]
kind = lorentzian
gamma0 = 0.5
lambda = 0.05
omega0 = 0.0
beta = zero
[solver]
dt = 0.01
L_start = 1
L_max = 30
conv_tol = 1e-4
matsubara_epsilon = auto
[scan]
tau_min = 0.05
tau_max = 40
points = 50
spacing = linear
[output]
directory = out
emit_plots = false
)";

} // namespace

TEST_CASE("Fig. 1 fixture parses and is flagged pure dephasing") {
    const auto c = config::parse_config(FIG1);
    CHECK(c.model.kind == "qubit");
    CHECK(c.bath.gamma0 == 0.5);
    const auto model = config::build_model(c);
    CHECK(model.pure_dephasing);
    const auto bath_setup = config::build_bath(c);
    CHECK(bath_setup.zero_temperature());
    const auto grid = config::build_tau_grid(c);
    REQUIRE(grid.size() == 50);
    CHECK(grid.front() == 0.05);
    CHECK(grid.back() == 40.0);
}

TEST_CASE("temperature pairing is enforced both ways") {
    std::string bad = FIG1;
    bad.replace(bad.find("kind = lorentzian"), 17, "kind = ohmic_drude");
    try {
        config::parse_config(bad);
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        bool mentions_pairing = false;
        for (const auto& v : e.violations) {
            mentions_pairing =
                mentions_pairing ||
                v.find("paired with finite") != std::string::npos;
        }
        CHECK(mentions_pairing);
    }

    std::string bad2 = FIG1;
    bad2.replace(bad2.find("beta = zero"), 11, "beta = 0.5");
    CHECK_THROWS_AS(config::parse_config(bad2), ConfigError);
}

TEST_CASE("tau_min = 0 is rejected; omitting it selects the default") {
    std::string bad = FIG1;
    bad.replace(bad.find("tau_min = 0.05"), 14, "tau_min = 0.00");
    CHECK_THROWS_AS(config::parse_config(bad), ConfigError);

    std::string defaulted = FIG1;
    defaulted.replace(defaulted.find("tau_min = 0.05\n"), 15, "");
    const auto c = config::parse_config(defaulted);
    const auto grid = config::build_tau_grid(c);
    // default 0.02 / max(epsilon, delta, lambda) = 0.02 / 1.0
    CHECK(grid.front() == doctest::Approx(0.02));
}

TEST_CASE("unknown keys are rejected and all violations are reported") {
    std::string bad = FIG1;
    bad += "[model]\ntypo_key = 3\n";
    bad.replace(bad.find("points = 50"), 11, "points = 1");
    bad.replace(bad.find("dt = 0.01"), 9, "dt = -1");
    try {
        config::parse_config(bad);
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(e.violations.size() == 3);
    }
}

TEST_CASE("serialize and parse round-trip to an identical config") {
    std::string with_sweep = FIG1;
    with_sweep += "[sweep]\nparameter = bath.lambda\nvalues = 0.05, 0.5, 5\n";
    const auto c1 = config::parse_config(with_sweep);
    const std::string text = config::serialize(c1);
    const auto c2 = config::parse_config(text);
    CHECK(config::serialize(c2) == text);
}

TEST_CASE("initial state forms") {
    {
        std::string s = FIG1;
        s.replace(s.find("initial_state = plus"), 20,
                  "initial_state = excited");
        const auto psi = config::build_initial_state(config::parse_config(s));
        CHECK(std::abs(psi.amplitudes(0)) == doctest::Approx(1.0));
    }
    {
        std::string s = FIG1;
        s.replace(s.find("initial_state = plus"), 20,
                  "initial_state = amplitudes:(0.6,0);(0,0.8)");
        const auto psi = config::build_initial_state(config::parse_config(s));
        CHECK(std::abs(psi.amplitudes(0)) == doctest::Approx(0.6));
        CHECK(std::abs(psi.amplitudes(1)) == doctest::Approx(0.8));
    }
    {
        std::string s = FIG1;
        s.replace(s.find("kind = qubit"), 12, "kind = qutrit");
        s.replace(s.find("initial_state = plus"), 20,
                  "initial_state = coherent(1.5707963267948966,0)");
        const auto psi = config::build_initial_state(config::parse_config(s));
        CHECK(std::abs(psi.amplitudes(1)) ==
              doctest::Approx(std::sqrt(2.0) / 2.0));
    }
    {
        std::string s = FIG1;
        s.replace(s.find("kind = qubit"), 12, "kind = qutrit");
        // 'plus' is a qubit-only shorthand
        CHECK_THROWS_AS(config::parse_config(s), ConfigError);
    }
}

TEST_CASE("sweep application") {
    const auto c = config::parse_config(FIG1);
    const auto swept = config::with_sweep_value(c, "bath.lambda", 5.0);
    CHECK(swept.bath.lambda == 5.0);
    CHECK(swept.bath.gamma0 == c.bath.gamma0);
    CHECK_THROWS_AS(config::with_sweep_value(c, "bath.nope", 1.0), DomainError);
}

TEST_CASE("csv number format uses 12 significant digits") {
    CHECK(csv::format_number(0.5) == "0.5");
    CHECK(csv::format_number(1.0 / 3.0) == "0.333333333333");
    CHECK(csv::format_number(1.23456789012345e-7) == "1.23456789012e-07");
}

TEST_CASE("csv render embeds the config snapshot and footer") {
    csv::Table t;
    t.columns = {"a", "b"};
    t.rows = {{1.0, 2.0}, {3.0, 4.5}};
    t.footer = {"note = 1"};
    const std::string text = csv::render("zenosim test", "[model]\nkind = qubit", t);
    CHECK(text.find("# zenosim test\n") != std::string::npos);
    CHECK(text.find("#   [model]\n") != std::string::npos);
    CHECK(text.find("#   kind = qubit\n") != std::string::npos);
    CHECK(text.find("a,b\n1,2\n3,4.5\n") != std::string::npos);
    CHECK(text.find("# note = 1\n") != std::string::npos);
}
