#include "zenosim/quadrature.hpp"

#include <algorithm>
#include <limits>
#include <cmath>
#include <vector>

#include "zenosim/errors.hpp"

namespace zenosim::quad {

namespace {

struct SimpsonSample {
    double fa, fm, fb;
    double estimate(double a, double b) const {
        return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    }
};

Result simpson_recurse(const Fn& f, double a, double b, const SimpsonSample& s,
                       double whole, double tol, int depth, int force,
                       double scale, double parent_delta) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const SimpsonSample left{s.fa, f(lm), s.fm};
    const SimpsonSample right{s.fm, f(rm), s.fb};
    const double l = left.estimate(a, m);
    const double r = right.estimate(m, b);
    const double delta = l + r - whole;
    // Three stopping rules besides the depth cap: the absolute target, a
    // relative floor tied to the enclosing panel's magnitude (refining past
    // ~1e-13 of it only churns roundoff), and stagnation (a refinement that
    // no longer shrinks the correction is already at the attainable floor).
    // The forced levels guard against accidental early agreement on
    // oscillatory integrands.
    const double floor = 1e-13 * scale;
    const bool met = std::abs(delta) <= 15.0 * std::max(tol, floor);
    // A refinement that stops shrinking the correction while the correction
    // is already within ~1e-10 of the panel scale sits at the roundoff
    // floor; past it, splitting further only wanders.
    const bool roundoff_plateau = std::abs(delta) >= 0.5 * parent_delta &&
                                  std::abs(delta) <= 1e3 * floor;
    if (depth <= 0 || (force <= 0 && (met || roundoff_plateau))) {
        return Result{l + r + delta / 15.0, std::abs(delta) / 15.0};
    }
    const double child_parent = std::abs(delta);
    Result res = simpson_recurse(f, a, m, left, l, 0.5 * tol, depth - 1,
                                 force - 1, scale, child_parent);
    res += simpson_recurse(f, m, b, right, r, 0.5 * tol, depth - 1, force - 1,
                           scale, child_parent);
    return res;
}

Result simpson_panel(const Fn& f, double a, double b, double tol) {
    const SimpsonSample s{f(a), f(0.5 * (a + b)), f(b)};
    const double whole = s.estimate(a, b);
    const double scale =
        std::abs(whole) + (b - a) * (std::abs(s.fa) + std::abs(s.fm) +
                                     std::abs(s.fb));
    return simpson_recurse(f, a, b, s, whole, tol, 44, 2, scale,
                           std::numeric_limits<double>::infinity());
}

} // namespace

Result adaptive_simpson(const Fn& f, double a, double b, double tol,
                        double max_panel) {
    if (!(b > a)) {
        return Result{};
    }
    int n_panels = 1;
    if (max_panel > 0.0 && b - a > max_panel) {
        n_panels = static_cast<int>(std::ceil((b - a) / max_panel));
        n_panels = std::min(n_panels, 4'000'000);
    }
    const double h = (b - a) / n_panels;
    const double panel_tol = tol / n_panels;
    Result total;
    for (int k = 0; k < n_panels; ++k) {
        total += simpson_panel(f, a + k * h, a + (k + 1) * h, panel_tol);
    }
    return total;
}

Result oscillatory_cells(const Fn& f, double a, double cell, double tol,
                         int max_cells) {
    if (cell <= 0.0) {
        throw DomainError("oscillatory_cells: nonpositive cell width");
    }
    std::vector<double> partial; // partial sums after each cell
    partial.reserve(max_cells);
    double raw = 0.0;
    double cell_err = 0.0;
    double prev_mag = 0.0;
    for (int k = 0; k < max_cells; ++k) {
        const double lo = a + k * cell;
        const Result piece = simpson_panel(f, lo, lo + cell, tol * 0.05);
        raw += piece.value;
        cell_err += piece.abs_err;
        partial.push_back(raw);
        const double mag = std::abs(piece.value);
        if (k > 0 && mag + prev_mag < 0.25 * tol) {
            // Plain summation converged; the dropped tail is below two dead
            // cells' worth.
            return Result{raw, cell_err + mag + prev_mag};
        }
        prev_mag = mag;
    }
    // Euler transformation of the trailing partial sums. Repeated pairwise
    // averaging converges geometrically for alternating cell integrals with a
    // smoothly decaying envelope, which is exactly the shape of these tails.
    // The estimate after each level is kept anchored to the newest sums.
    const std::size_t use = std::min<std::size_t>(partial.size(), 96);
    std::vector<double> tab(partial.end() - use, partial.end());
    const std::size_t n = tab.size();
    double apex = tab[n - 1];
    double last_change = std::abs(apex);
    for (std::size_t m = 1; m < n; ++m) {
        for (std::size_t i = 0; i + m < n; ++i) {
            tab[i] = 0.5 * (tab[i] + tab[i + 1]);
        }
        const double cand = tab[n - 1 - m];
        last_change = std::abs(cand - apex);
        apex = cand;
        if (last_change < 0.05 * tol && m > 8) {
            break;
        }
    }
    return Result{apex, cell_err + last_change};
}

} // namespace zenosim::quad
