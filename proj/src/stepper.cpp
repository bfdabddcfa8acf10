#include "sorptran/stepper.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace sorptran {

Trajectory::Trajectory(const Isotherm& isotherm, const Grid1D& grid, const TimePartition& time,
                       int stride, bool source_free)
    : isotherm_(isotherm), grid_(grid), time_(time), stride_(stride), source_free_(source_free) {}

bool Trajectory::level_stored(int n) const {
    return std::binary_search(stored_levels_.begin(), stored_levels_.end(), n);
}

const StateField& Trajectory::level(int n) const {
    if (n < 0 || n > time_.steps()) {
        throw std::out_of_range("Trajectory: level " + std::to_string(n) + " out of range");
    }
    auto it = std::lower_bound(stored_levels_.begin(), stored_levels_.end(), n);
    if (it == stored_levels_.end() || *it != n) {
        throw std::logic_error("Trajectory: level " + std::to_string(n) +
                               " was thinned out of storage");
    }
    return states_[static_cast<size_t>(it - stored_levels_.begin())];
}

const StateField& Trajectory::query(double t) const {
    const double T = time_.total_time();
    if (!(t >= 0.0 && t <= T)) {
        throw std::out_of_range("Trajectory: query time outside [0, T]");
    }
    // u_h is U^n on ((n-1) dt, n dt]; snap near-integer ratios so that exact
    // level times land on their own level despite rounding.
    const double ratio = t / time_.dt();
    const double nearest = std::round(ratio);
    double n = (std::fabs(ratio - nearest) <= 1e-9 * std::max(1.0, nearest)) ? nearest
                                                                             : std::ceil(ratio);
    n = std::min(n, static_cast<double>(time_.steps()));
    return level(static_cast<int>(n));
}

Trajectory run(const ProblemSpec& spec, const SolverConfig& solver_cfg) {
    if (!spec.initial_condition) {
        throw std::invalid_argument("run: missing initial condition");
    }
    if (spec.store_stride < 1) {
        throw std::invalid_argument("run: store stride must be positive");
    }
    const Grid1D& grid = spec.grid;
    const TimePartition& time = spec.time;
    const int m = spec.isotherm.components();
    const int interior = grid.interior_nodes();
    const int total = grid.total_nodes();
    const double dt = time.dt();

    StateField state(grid, m);
    std::vector<double> tmp(m);
    for (int i = 0; i < total; ++i) {
        spec.initial_condition(grid.node(i), tmp);
        for (int k = 0; k < m; ++k) {
            if (!std::isfinite(tmp[k])) {
                throw std::invalid_argument("run: initial condition not finite at a node");
            }
            state.value(i, k) = tmp[k];
        }
    }
    for (int k = 0; k < m; ++k) {
        if (state.value(0, k) != 0.0 || state.value(total - 1, k) != 0.0) {
            throw std::invalid_argument("run: initial condition must vanish at the boundary nodes");
        }
    }

    Trajectory traj(spec.isotherm, grid, time, spec.store_stride, !spec.source);
    traj.reports_.reserve(time.steps());
    traj.diagnostics_.reserve(time.steps() + 1);
    traj.diagnostics_.push_back(
        compute_step_diagnostics(state, spec.isotherm, 0, 0.0, dt, spec.support_eps));
    traj.states_.push_back(state);
    traj.stored_levels_.push_back(0);

    std::vector<double> bprev(static_cast<size_t>(total) * m);
    std::vector<double> source;
    std::vector<double> u(state.interior().begin(), state.interior().end());

    for (int n = 0; n < time.steps(); ++n) {
        for (int i = 0; i < total; ++i) {
            spec.isotherm.b(state.node(i), std::span<double>(bprev).subspan(
                                               static_cast<size_t>(i) * m, m));
        }
        if (spec.source) {
            source.resize(static_cast<size_t>(total) * m);
            const double t_next = time.time(n + 1);
            for (int i = 0; i < total; ++i) {
                spec.source(t_next, grid.node(i),
                            std::span<double>(source).subspan(static_cast<size_t>(i) * m, m));
            }
        }
        DiscreteEnergy energy(spec.isotherm, grid, dt, bprev, source);

        MinimizeResult result;
        try {
            result = minimize(energy, u, solver_cfg);
        } catch (NonConvergenceError& err) {
            err.set_step_index(n);
            throw;
        }
        u = std::move(result.minimizer);
        state.set_interior(u);

        traj.reports_.push_back(result.report);
        traj.diagnostics_.push_back(compute_step_diagnostics(
            state, spec.isotherm, n + 1, traj.diagnostics_.back().dirichlet_cumulative, dt,
            spec.support_eps));
        if ((n + 1) % spec.store_stride == 0 || n + 1 == time.steps()) {
            traj.states_.push_back(state);
            traj.stored_levels_.push_back(n + 1);
        }
    }
    return traj;
}

}  // namespace sorptran
