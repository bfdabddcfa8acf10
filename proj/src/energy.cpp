#include "sorptran/energy.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace sorptran {

namespace {

void ensure_finite(std::span<const double> u, const char* what) {
    for (double v : u) {
        if (!std::isfinite(v)) {
            throw std::domain_error(std::string(what) + ": non-finite value");
        }
    }
}

}  // namespace

DiscreteEnergy::DiscreteEnergy(const Isotherm& isotherm, const Grid1D& grid, double dt,
                               std::vector<double> bprev, std::vector<double> source,
                               double hessian_shift_radius)
    : isotherm_(isotherm), grid_(grid), dt_(dt), bprev_(std::move(bprev)),
      source_(std::move(source)), shift_(hessian_shift_radius) {
    if (!(dt > 0.0)) {
        throw std::invalid_argument("DiscreteEnergy: dt must be positive");
    }
    const size_t m = static_cast<size_t>(isotherm_.components());
    const size_t full = static_cast<size_t>(grid_.total_nodes()) * m;
    if (bprev_.size() != full) {
        throw std::invalid_argument("DiscreteEnergy: bprev must cover every node");
    }
    if (!source_.empty() && source_.size() != full) {
        throw std::invalid_argument("DiscreteEnergy: source must cover every node or be empty");
    }
    ensure_finite(bprev_, "DiscreteEnergy bprev");
    if (!source_.empty()) ensure_finite(source_, "DiscreteEnergy source");
    for (size_t k = 0; k < m; ++k) {
        if (bprev_[k] != 0.0 || bprev_[full - m + k] != 0.0) {
            throw std::invalid_argument("DiscreteEnergy: bprev boundary rows must be zero");
        }
    }
    if (!(shift_ > 0.0)) {
        throw std::invalid_argument("DiscreteEnergy: shift radius must be positive");
    }
}

double DiscreteEnergy::evaluate(std::span<const double> u) const {
    ensure_finite(u, "energy evaluate");
    const int interior = grid_.interior_nodes();
    const int m = isotherm_.components();
    const double dx = grid_.dx();

    double bulk = 0.0;  // phi, bprev and source terms
    for (int i = 0; i < interior; ++i) {
        std::span<const double> ui = u.subspan(static_cast<size_t>(i) * m, m);
        double coupling = 0.0;
        const double* bp = bprev_.data() + static_cast<size_t>(i + 1) * m;
        for (int k = 0; k < m; ++k) coupling += bp[k] * ui[k];
        if (!source_.empty()) {
            const double* f = source_.data() + static_cast<size_t>(i + 1) * m;
            for (int k = 0; k < m; ++k) coupling += f[k] * ui[k] * dt_;
        }
        bulk += isotherm_.potential(ui) - coupling;
    }

    // Dirichlet part over all cells, zero values at both boundary nodes.
    double quad = 0.0;
    for (int i = 0; i <= interior; ++i) {
        for (int k = 0; k < m; ++k) {
            const double lo = (i == 0) ? 0.0 : u[static_cast<size_t>(i - 1) * m + k];
            const double hi = (i == interior) ? 0.0 : u[static_cast<size_t>(i) * m + k];
            const double d = (hi - lo) / dx;
            quad += d * d;
        }
    }
    return bulk * dx + 0.5 * dt_ * quad * dx;
}

void DiscreteEnergy::gradient(std::span<const double> u, std::span<double> out) const {
    ensure_finite(u, "energy gradient");
    const int interior = grid_.interior_nodes();
    const int m = isotherm_.components();
    const double dx = grid_.dx();
    const double lap = dt_ / dx;

    std::vector<double> bu(m);
    for (int i = 0; i < interior; ++i) {
        std::span<const double> ui = u.subspan(static_cast<size_t>(i) * m, m);
        isotherm_.b(ui, bu);
        const double* bp = bprev_.data() + static_cast<size_t>(i + 1) * m;
        const double* f = source_.empty() ? nullptr : source_.data() + static_cast<size_t>(i + 1) * m;
        for (int k = 0; k < m; ++k) {
            const double left = (i == 0) ? 0.0 : u[static_cast<size_t>(i - 1) * m + k];
            const double right = (i == interior - 1) ? 0.0 : u[static_cast<size_t>(i + 1) * m + k];
            double g = (bu[k] - bp[k] - (f ? f[k] * dt_ : 0.0)) * dx;
            g += lap * (2.0 * ui[k] - left - right);
            out[static_cast<size_t>(i) * m + k] = g;
        }
    }
}

void DiscreteEnergy::shifted_jacobian(std::span<const double> u, std::span<double> out) const {
    const size_t m = u.size();
    double r = 0.0;
    for (double v : u) r += v * v;
    r = std::sqrt(r);
    if (r >= shift_) {
        isotherm_.jacobian_b(u, out);
        return;
    }
    std::vector<double> shifted(m, 0.0);
    if (r > 0.0) {
        for (size_t k = 0; k < m; ++k) shifted[k] = u[k] * (shift_ / r);
    } else {
        shifted[0] = shift_;
    }
    isotherm_.jacobian_b(shifted, out);
}

void DiscreteEnergy::hessian_diag_blocks(std::span<const double> u, std::span<double> out) const {
    ensure_finite(u, "energy hessian");
    const int interior = grid_.interior_nodes();
    const int m = isotherm_.components();
    const double dx = grid_.dx();
    const double diag = 2.0 * dt_ / dx;

    for (int i = 0; i < interior; ++i) {
        std::span<const double> ui = u.subspan(static_cast<size_t>(i) * m, m);
        std::span<double> block = out.subspan(static_cast<size_t>(i) * m * m, static_cast<size_t>(m) * m);
        shifted_jacobian(ui, block);
        for (int j = 0; j < m * m; ++j) block[j] *= dx;
        for (int k = 0; k < m; ++k) block[static_cast<size_t>(k) * m + k] += diag;
    }
}

void DiscreteEnergy::hessian_apply(std::span<const double> u, std::span<const double> direction,
                                   std::span<double> out) const {
    const int interior = grid_.interior_nodes();
    const int m = isotherm_.components();
    const double off = hessian_offdiag();

    std::vector<double> blocks(static_cast<size_t>(interior) * m * m);
    hessian_diag_blocks(u, blocks);

    for (int i = 0; i < interior; ++i) {
        const double* block = blocks.data() + static_cast<size_t>(i) * m * m;
        const double* vi = direction.data() + static_cast<size_t>(i) * m;
        for (int j = 0; j < m; ++j) {
            double acc = 0.0;
            for (int k = 0; k < m; ++k) acc += block[j * m + k] * vi[k];
            if (i > 0) acc += off * direction[static_cast<size_t>(i - 1) * m + j];
            if (i + 1 < interior) acc += off * direction[static_cast<size_t>(i + 1) * m + j];
            out[static_cast<size_t>(i) * m + j] = acc;
        }
    }
}

}  // namespace sorptran
