#include "sorptran/diagnostics.hpp"

#include <cmath>
#include <stdexcept>

#include "sorptran/mesh.hpp"
#include "sorptran/stepper.hpp"

namespace sorptran {

SupportInterval extract_support(const StateField& field, int component, double support_eps) {
    if (component < 0 || component >= field.components()) {
        throw std::invalid_argument("extract_support: component out of range");
    }
    if (!(support_eps > 0.0)) {
        throw std::invalid_argument("extract_support: threshold must be positive");
    }
    const Grid1D& grid = field.grid();
    const int total = grid.total_nodes();

    int first = -1;
    int last = -1;
    for (int i = 0; i < total; ++i) {
        if (field.value(i, component) > support_eps) {
            if (first < 0) first = i;
            last = i;
        }
    }
    SupportInterval out;
    if (first < 0) return out;
    out.empty = false;
    out.left = grid.node(first);
    out.right = grid.node(last);
    int gap_start = -1;
    for (int i = first + 1; i < last; ++i) {
        const bool below = field.value(i, component) <= support_eps;
        if (below && gap_start < 0) gap_start = i;
        if (!below && gap_start >= 0) {
            out.gaps.push_back({grid.node(gap_start), grid.node(i - 1)});
            gap_start = -1;
        }
    }
    return out;
}

double dirichlet_energy(const StateField& field) {
    const Grid1D& grid = field.grid();
    const double dx = grid.dx();
    const int m = field.components();
    double acc = 0.0;
    for (int i = 0; i + 1 < grid.total_nodes(); ++i) {
        for (int k = 0; k < m; ++k) {
            const double d = (field.value(i + 1, k) - field.value(i, k)) / dx;
            acc += d * d;
        }
    }
    return acc * dx;
}

StepDiagnostics compute_step_diagnostics(const StateField& field, const Isotherm& isotherm,
                                         int step, double prev_dirichlet_cumulative, double dt,
                                         double support_eps) {
    const Grid1D& grid = field.grid();
    const int total = grid.total_nodes();
    const int m = field.components();

    StepDiagnostics diag;
    diag.step = step;
    diag.dirichlet_cumulative =
        step == 0 ? 0.0 : prev_dirichlet_cumulative + dt * dirichlet_energy(field);

    std::vector<double> nodal(total);
    for (int i = 0; i < total; ++i) nodal[i] = isotherm.conjugate_density(field.node(i));
    diag.energy = trapezoid_integral(grid, nodal);

    diag.min_value = field.value(0, 0);
    std::vector<double> bu(m);
    std::vector<std::vector<double>> b_nodal(m, std::vector<double>(total));
    for (int i = 0; i < total; ++i) {
        isotherm.b(field.node(i), bu);
        for (int k = 0; k < m; ++k) {
            b_nodal[k][i] = bu[k];
            diag.min_value = std::min(diag.min_value, field.value(i, k));
        }
    }
    diag.mass.resize(m);
    diag.support.resize(m);
    for (int k = 0; k < m; ++k) {
        diag.mass[k] = trapezoid_integral(grid, b_nodal[k]);
        diag.support[k] = extract_support(field, k, support_eps);
    }
    return diag;
}

double l2_qt_error(const Trajectory& traj,
                   const std::function<void(double t, double x, std::span<double>)>& exact) {
    if (!traj.complete()) {
        throw std::logic_error("l2_qt_error: trajectory was thinned; all levels are required");
    }
    const Grid1D& grid = traj.grid();
    const TimePartition& time = traj.time();
    const int total = grid.total_nodes();
    const int m = traj.components();

    std::vector<double> sq(total);
    std::vector<double> ue(m);
    double acc = 0.0;
    for (int n = 1; n <= time.steps(); ++n) {
        const StateField& field = traj.level(n);
        const double tn = time.time(n);
        for (int i = 0; i < total; ++i) {
            exact(tn, grid.node(i), ue);
            double s = 0.0;
            for (int k = 0; k < m; ++k) {
                const double d = field.value(i, k) - ue[k];
                s += d * d;
            }
            sq[i] = s;
        }
        acc += time.dt() * trapezoid_integral(grid, sq);
    }
    return std::sqrt(acc);
}

double l2_qt_error(const Trajectory& a, const Trajectory& b) {
    if (!a.complete() || !b.complete()) {
        throw std::logic_error("l2_qt_error: trajectories were thinned; all levels are required");
    }
    if (a.components() != b.components() || a.time().steps() != b.time().steps() ||
        a.grid().total_nodes() != b.grid().total_nodes()) {
        throw std::invalid_argument("l2_qt_error: trajectories live on different discretizations");
    }
    const Grid1D& grid = a.grid();
    const int total = grid.total_nodes();
    const int m = a.components();

    std::vector<double> sq(total);
    double acc = 0.0;
    for (int n = 1; n <= a.time().steps(); ++n) {
        const StateField& fa = a.level(n);
        const StateField& fb = b.level(n);
        for (int i = 0; i < total; ++i) {
            double s = 0.0;
            for (int k = 0; k < m; ++k) {
                const double d = fa.value(i, k) - fb.value(i, k);
                s += d * d;
            }
            sq[i] = s;
        }
        acc += a.time().dt() * trapezoid_integral(grid, sq);
    }
    return std::sqrt(acc);
}

EnergyAudit audit_energy_estimate(const Trajectory& traj) {
    if (!traj.source_free()) {
        throw std::logic_error(
            "audit_energy_estimate: only supported for source-free runs; with f != 0 the bound "
            "carries an unknown constant");
    }
    const auto& diags = traj.diagnostics();
    EnergyAudit audit;
    audit.initial_energy = diags.front().energy;
    for (const auto& d : diags) audit.max_energy = std::max(audit.max_energy, d.energy);
    audit.dirichlet_total = diags.back().dirichlet_cumulative;
    const double bound = audit.initial_energy * (1.0 + 1e-8) + 1e-10;
    audit.margin = bound - (audit.max_energy + audit.dirichlet_total);
    audit.holds = audit.margin >= 0.0;
    return audit;
}

RateFit fit_rate(std::span<const std::pair<double, double>> points) {
    if (points.size() < 2) {
        throw std::invalid_argument("fit_rate: need at least two points");
    }
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (const auto& [dx, err] : points) {
        if (!(dx > 0.0) || !(err > 0.0)) {
            throw std::invalid_argument("fit_rate: points must be positive");
        }
        const double x = std::log(dx);
        const double y = std::log(err);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double n = static_cast<double>(points.size());
    const double denom = n * sxx - sx * sx;
    if (!(std::fabs(denom) > 0.0)) {
        throw std::invalid_argument("fit_rate: degenerate abscissae");
    }
    RateFit fit;
    fit.rate = (n * sxy - sx * sy) / denom;
    fit.prefactor = std::exp((sy - fit.rate * sx) / n);
    return fit;
}

}  // namespace sorptran
