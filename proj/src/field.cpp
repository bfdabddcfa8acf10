#include "sorptran/field.hpp"

#include <algorithm>
#include <stdexcept>

namespace sorptran {

StateField::StateField(const Grid1D& grid, int components)
    : grid_(grid), m_(components),
      data_(static_cast<size_t>(grid.total_nodes()) * components, 0.0) {
    if (components < 1) {
        throw std::invalid_argument("StateField: need at least one component");
    }
}

std::span<const double> StateField::interior() const {
    return {data_.data() + m_, static_cast<size_t>(grid_.interior_nodes()) * m_};
}

void StateField::set_interior(std::span<const double> values) {
    const size_t expected = static_cast<size_t>(grid_.interior_nodes()) * m_;
    if (values.size() != expected) {
        throw std::invalid_argument("StateField: interior size mismatch");
    }
    std::copy(values.begin(), values.end(), data_.begin() + m_);
}

}  // namespace sorptran
