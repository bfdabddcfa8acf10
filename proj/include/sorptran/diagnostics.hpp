#pragma once

#include <array>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "sorptran/field.hpp"
#include "sorptran/isotherm.hpp"

namespace sorptran {

class Trajectory;

inline constexpr double kDefaultSupportEps = 1e-10;

/// Hull of the nodes where a component exceeds the threshold, plus the
/// internal gaps (maximal sub-intervals of the hull at or below it), so
/// holes in the support are detectable.
struct SupportInterval {
    bool empty = true;
    double left = 0.0;
    double right = 0.0;
    std::vector<std::array<double, 2>> gaps;
};

SupportInterval extract_support(const StateField& field, int component, double support_eps);

struct StepDiagnostics {
    int step = 0;
    double energy = 0.0;                // integral of B(U) over the domain
    double dirichlet_cumulative = 0.0;  // sum_{k<=step} dt * ||grad_h U^k||^2
    double min_value = 0.0;             // over all nodes and components
    std::vector<double> mass;           // per component: integral of b(U)_k
    std::vector<SupportInterval> support;
};

/// Diagnostics for one time level. The Dirichlet term accumulates: pass the
/// previous level's cumulative value (level 0 carries none).
StepDiagnostics compute_step_diagnostics(const StateField& field, const Isotherm& isotherm,
                                         int step, double prev_dirichlet_cumulative, double dt,
                                         double support_eps = kDefaultSupportEps);

/// dt * sum over cells of |(U_{i+1} - U_i)/dx|^2 dx -- one step's Dirichlet
/// contribution.
double dirichlet_energy(const StateField& field);

/// L2 error over the space-time cylinder: the numerical solution is constant
/// on ((n-1) dt, n dt], so each slab contributes dt times the trapezoid
/// integral of |U^n - exact(t^n, .)|^2 with the exact solution sampled at the
/// slab's right endpoint. Needs every level stored.
double l2_qt_error(const Trajectory& traj,
                   const std::function<void(double t, double x, std::span<double>)>& exact);

/// Same norm between two trajectories on identical grids and time partitions.
double l2_qt_error(const Trajectory& a, const Trajectory& b);

struct EnergyAudit {
    bool holds = false;
    double max_energy = 0.0;       // max_n of the B integral
    double dirichlet_total = 0.0;  // cumulative Dirichlet term at the final level
    double initial_energy = 0.0;
    double margin = 0.0;           // bound minus left-hand side
};

/// Checks the telescoped a priori estimate
///   max_n energy(n) + dirichlet_total <= energy(0) * (1 + 1e-8) + 1e-10,
/// valid for f = 0 with homogeneous Dirichlet data; throws otherwise (with
/// inhomogeneous data the bound carries an unknown constant).
EnergyAudit audit_energy_estimate(const Trajectory& traj);

struct RateFit {
    double rate = 0.0;
    double prefactor = 0.0;
};

/// Least-squares fit of log(error) against log(dx): e ~ prefactor * dx^rate.
/// Needs at least two points, all positive.
RateFit fit_rate(std::span<const std::pair<double, double>> points);

struct ErrorReport {
    std::vector<std::pair<double, double>> points;  // (dx, e2)
    RateFit fit;
};

}  // namespace sorptran
