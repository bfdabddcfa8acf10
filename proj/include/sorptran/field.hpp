#pragma once

#include <span>
#include <vector>

#include "sorptran/mesh.hpp"

namespace sorptran {

/// Vector-valued nodal field on a Grid1D: total_nodes() rows of `components`
/// values, node-major. Boundary rows (first and last node) stay zero under
/// the homogeneous Dirichlet condition used throughout.
class StateField {
public:
    StateField(const Grid1D& grid, int components);

    const Grid1D& grid() const { return grid_; }
    int components() const { return m_; }

    double value(int node, int comp) const { return data_[node * m_ + comp]; }
    double& value(int node, int comp) { return data_[node * m_ + comp]; }

    std::span<const double> node(int i) const { return {data_.data() + i * m_, static_cast<size_t>(m_)}; }
    std::span<double> node(int i) { return {data_.data() + i * m_, static_cast<size_t>(m_)}; }

    std::span<const double> data() const { return data_; }

    /// Values at nodes 1 .. interior_nodes(), contiguous.
    std::span<const double> interior() const;
    void set_interior(std::span<const double> values);

private:
    Grid1D grid_;
    int m_;
    std::vector<double> data_;
};

}  // namespace sorptran
