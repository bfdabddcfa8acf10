#pragma once

#include <span>

namespace sorptran {

/// Uniform 1D grid on [a, b] with `interior_nodes` interior nodes.
/// Node i = 0 is the left boundary, node interior_nodes + 1 the right one,
/// and dx = (b - a) / (interior_nodes + 1).
class Grid1D {
public:
    Grid1D(double a, double b, int interior_nodes);

    double left() const { return a_; }
    double right() const { return b_; }
    int interior_nodes() const { return interior_; }
    int total_nodes() const { return interior_ + 2; }
    double dx() const { return dx_; }

    // Nodes by formula, not by accumulation, so refinement studies are bit-stable.
    double node(int i) const { return a_ + i * dx_; }

private:
    double a_;
    double b_;
    int interior_;
    double dx_;
};

/// Uniform partition of [0, T] into `steps` intervals of length dt = T / steps.
class TimePartition {
public:
    TimePartition(double total_time, int steps);

    double total_time() const { return total_; }
    int steps() const { return steps_; }
    double dt() const { return dt_; }

    double time(int n) const { return n == steps_ ? total_ : n * dt_; }

private:
    double total_;
    int steps_;
    double dt_;
};

/// Cell-wise trapezoid rule over the whole grid: sum over cells of
/// (g_i + g_{i+1}) / 2 * dx. Expects values at all total_nodes() nodes.
double trapezoid_integral(const Grid1D& grid, std::span<const double> nodal_values);

}  // namespace sorptran
