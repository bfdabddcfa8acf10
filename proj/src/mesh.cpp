#include "sorptran/mesh.hpp"

#include <stdexcept>
#include <string>

namespace sorptran {

Grid1D::Grid1D(double a, double b, int interior_nodes)
    : a_(a), b_(b), interior_(interior_nodes) {
    if (!(a < b)) {
        throw std::invalid_argument("Grid1D: left endpoint must be below the right one");
    }
    if (interior_nodes < 1) {
        throw std::invalid_argument("Grid1D: need at least one interior node");
    }
    dx_ = (b - a) / (interior_ + 1);
}

TimePartition::TimePartition(double total_time, int steps)
    : total_(total_time), steps_(steps) {
    if (!(total_time > 0.0)) {
        throw std::invalid_argument("TimePartition: final time must be positive");
    }
    if (steps < 1) {
        throw std::invalid_argument("TimePartition: need at least one step");
    }
    dt_ = total_ / steps_;
}

double trapezoid_integral(const Grid1D& grid, std::span<const double> nodal_values) {
    const size_t n = static_cast<size_t>(grid.total_nodes());
    if (nodal_values.size() != n) {
        throw std::invalid_argument("trapezoid_integral: expected " + std::to_string(n) +
                                    " nodal values, got " + std::to_string(nodal_values.size()));
    }
    double acc = 0.5 * (nodal_values[0] + nodal_values[n - 1]);
    for (size_t i = 1; i + 1 < n; ++i) {
        acc += nodal_values[i];
    }
    return acc * grid.dx();
}

}  // namespace sorptran
