#include "sorptran/minimizer.hpp"

#include <cmath>
#include <limits>

#include "sorptran/block_tridiag.hpp"

namespace sorptran {

namespace {

double max_abs(std::span<const double> v) {
    double best = 0.0;
    for (double x : v) {
        const double a = std::fabs(x);
        if (a > best) best = a;
    }
    return best;
}

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

void validate(const SolverConfig& cfg) {
    if (!(cfg.grad_tol > 0.0)) throw std::invalid_argument("SolverConfig: grad_tol must be positive");
    if (cfg.max_iters < 1) throw std::invalid_argument("SolverConfig: max_iters must be positive");
    if (!(cfg.ls_shrink > 0.0 && cfg.ls_shrink < 1.0)) {
        throw std::invalid_argument("SolverConfig: line-search shrink factor must lie in (0, 1)");
    }
    if (!(cfg.ls_decrease > 0.0 && cfg.ls_decrease < 1.0)) {
        throw std::invalid_argument("SolverConfig: sufficient-decrease constant must lie in (0, 1)");
    }
}

}  // namespace

MinimizeResult minimize(const DiscreteEnergy& f, std::span<const double> initial,
                        const SolverConfig& cfg) {
    validate(cfg);
    const int n = f.unknowns();
    if (initial.size() != static_cast<size_t>(n)) {
        throw std::invalid_argument("minimize: initial point size mismatch");
    }
    const int m = f.isotherm().components();
    const int nodes = f.grid().interior_nodes();
    const double dx = f.grid().dx();

    std::vector<double> u(initial.begin(), initial.end());
    std::vector<double> grad(n), direction(n), trial(n);
    std::vector<double> blocks(static_cast<size_t>(nodes) * m * m);
    BlockTridiagonalSolver banded(nodes, m);

    SolveReport report;
    double energy = f.evaluate(u);
    if (!std::isfinite(energy)) {
        throw NonFiniteEnergyError("minimize: energy not finite at the initial point");
    }
    const double initial_energy = energy;
    report.energy_path.push_back(energy);

    f.gradient(u, grad);
    report.grad_norm = max_abs(grad) / dx;

    for (int iter = 0; iter < cfg.max_iters; ++iter) {
        if (report.grad_norm <= cfg.grad_tol) {
            report.converged = true;
            report.energy_decrease = initial_energy - energy;
            return {std::move(u), report};
        }
        report.iterations = iter + 1;

        // Newton direction from the banded factorization.
        f.hessian_diag_blocks(u, blocks);
        banded.factor(blocks, f.hessian_offdiag());
        for (int i = 0; i < n; ++i) direction[i] = -grad[i];
        banded.solve(direction);

        bool finite_dir = true;
        for (double d : direction) {
            if (!std::isfinite(d)) {
                finite_dir = false;
                break;
            }
        }
        double slope = finite_dir ? dot(grad, direction) : 0.0;
        if (!finite_dir || !(slope < 0.0)) {
            // Newton direction failed the descent test; fall back to steepest
            // descent scaled to the Laplacian part so the first trial is sane.
            report.fallback_used = true;
            const double scale = dx / (2.0 * f.dt() / dx + dx);
            for (int i = 0; i < n; ++i) direction[i] = -grad[i] * scale;
            slope = dot(grad, direction);
        }

        // Backtracking on the true energy. Differences smaller than the
        // floating-point resolution of the energy cannot be measured; such
        // steps are accepted as long as the energy does not measurably grow,
        // which is what the endgame at degenerate nodes looks like.
        const double noise = 16.0 * std::numeric_limits<double>::epsilon() *
                             (1.0 + std::fabs(energy));
        double alpha = 1.0;
        bool accepted = false;
        for (int bt = 0; bt <= cfg.max_ls_backtracks; ++bt) {
            for (int i = 0; i < n; ++i) trial[i] = u[i] + alpha * direction[i];
            double trial_energy;
            try {
                trial_energy = f.evaluate(trial);
            } catch (const std::domain_error&) {
                trial_energy = std::numeric_limits<double>::infinity();
            }
            if (std::isfinite(trial_energy)) {
                const bool armijo = trial_energy <= energy + cfg.ls_decrease * alpha * slope;
                const bool below_noise = std::fabs(alpha * slope) <= noise &&
                                         trial_energy <= energy + noise;
                if (armijo || below_noise) {
                    u.swap(trial);
                    energy = trial_energy;
                    report.energy_path.push_back(energy);
                    accepted = true;
                    break;
                }
            }
            alpha *= cfg.ls_shrink;
        }
        if (!accepted) {
            report.energy_decrease = initial_energy - energy;
            report.grad_norm = max_abs(grad) / dx;
            throw NonConvergenceError("minimize: line search found no acceptable step", report);
        }

        f.gradient(u, grad);
        report.grad_norm = max_abs(grad) / dx;
    }

    report.energy_decrease = initial_energy - energy;
    if (report.grad_norm <= cfg.grad_tol) {
        report.converged = true;
        return {std::move(u), report};
    }
    throw NonConvergenceError("minimize: gradient tolerance not reached within max_iters", report);
}

}  // namespace sorptran
