#pragma once

#include <functional>
#include <vector>

#include "sorptran/diagnostics.hpp"
#include "sorptran/energy.hpp"
#include "sorptran/field.hpp"
#include "sorptran/isotherm.hpp"
#include "sorptran/mesh.hpp"
#include "sorptran/minimizer.hpp"

namespace sorptran {

struct ProblemSpec {
    Isotherm isotherm;
    Grid1D grid;
    TimePartition time;
    /// Nodal initial values; must be finite and zero at the boundary nodes.
    std::function<void(double x, std::span<double>)> initial_condition;
    /// Source f(t, x); empty means f = 0. Sampled at nodes at the implicit
    /// time t^{n+1} of each step.
    std::function<void(double t, double x, std::span<double>)> source;
    /// Store every k-th level (level 0 and the final level always kept).
    /// Diagnostics and solve reports cover every step regardless; error
    /// integrals over thinned trajectories are unsupported.
    int store_stride = 1;
    double support_eps = kDefaultSupportEps;
};

/// The discrete solution: states per time level (possibly thinned),
/// per-step solve reports and diagnostics. Immutable once returned.
class Trajectory {
public:
    const Grid1D& grid() const { return grid_; }
    const TimePartition& time() const { return time_; }
    const Isotherm& isotherm() const { return isotherm_; }
    int components() const { return isotherm_.components(); }

    int levels() const { return time_.steps() + 1; }
    bool complete() const { return stride_ == 1; }
    bool source_free() const { return source_free_; }

    bool level_stored(int n) const;
    const StateField& level(int n) const;

    /// Piecewise-constant-in-time value: U^n for t in ((n-1) dt, n dt], and
    /// the initial level at t = 0. Throws std::out_of_range outside [0, T].
    const StateField& query(double t) const;

    const std::vector<SolveReport>& reports() const { return reports_; }
    const std::vector<StepDiagnostics>& diagnostics() const { return diagnostics_; }

private:
    friend Trajectory run(const ProblemSpec&, const SolverConfig&);

    Trajectory(const Isotherm& isotherm, const Grid1D& grid, const TimePartition& time,
               int stride, bool source_free);

    Isotherm isotherm_;
    Grid1D grid_;
    TimePartition time_;
    int stride_;
    bool source_free_;
    std::vector<StateField> states_;
    std::vector<int> stored_levels_;
    std::vector<SolveReport> reports_;
    std::vector<StepDiagnostics> diagnostics_;
};

/// The Rothe loop: sample the initial condition, then repeatedly assemble the
/// per-step energy from b(previous level) and minimize it. NonConvergenceError
/// escapes with the failing step index attached.
Trajectory run(const ProblemSpec& spec, const SolverConfig& solver_cfg = {});

}  // namespace sorptran
