#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "sorptran/energy.hpp"

namespace sorptran {

struct SolverConfig {
    /// Convergence threshold on max|gradient| / dx, i.e. on the residual of
    /// the Euler-Lagrange equation per unit volume, so accuracy is
    /// comparable across mesh refinements.
    double grad_tol = 1e-10;
    int max_iters = 200;
    double ls_shrink = 0.5;      // backtracking factor
    double ls_decrease = 1e-4;   // sufficient-decrease constant
    int max_ls_backtracks = 60;
};

struct SolveReport {
    int iterations = 0;
    double grad_norm = 0.0;       // final max|gradient| / dx
    double energy_decrease = 0.0; // F(start) - F(end)
    bool converged = false;
    bool fallback_used = false;   // a gradient step replaced a Newton step
    std::vector<double> energy_path;  // energy at the start and after each accepted step
};

class NonConvergenceError : public std::runtime_error {
public:
    NonConvergenceError(const std::string& what, SolveReport report)
        : std::runtime_error(what), report_(report) {}

    const SolveReport& report() const { return report_; }

    /// Time step at which a stepper run failed; -1 outside a run.
    int step_index() const { return step_; }
    void set_step_index(int step) { step_ = step; }

private:
    SolveReport report_;
    int step_ = -1;
};

class NonFiniteEnergyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct MinimizeResult {
    std::vector<double> minimizer;
    SolveReport report;
};

/// Finds the unique minimizer of the strictly convex per-step energy by
/// damped Newton: banded direct solve on the (shift-guarded) Hessian,
/// backtracking line search on the true energy, and a gradient-descent
/// fallback when a Newton direction fails the descent test. Steps whose
/// predicted decrease is below the floating-point resolution of F are
/// accepted if they do not measurably increase the energy; the endgame at
/// degenerate nodes moves the value of F by less than one ulp.
MinimizeResult minimize(const DiscreteEnergy& f, std::span<const double> initial,
                        const SolverConfig& cfg = {});

}  // namespace sorptran
