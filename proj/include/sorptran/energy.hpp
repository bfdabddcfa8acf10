#pragma once

#include <span>
#include <vector>

#include "sorptran/isotherm.hpp"
#include "sorptran/mesh.hpp"

namespace sorptran {

/// Radius below which the Hessian assembly evaluates D_u b at a radially
/// shifted point instead of the exact one. The shift only guards against
/// overflow of |u|^{p-1} near the underflow range; everywhere representable
/// the exact derivative is used, so Newton keeps its local convergence at
/// nodes with very small values.
inline constexpr double kHessianShiftRadius = 1e-150;

/// The per-step functional
///
///   F(U) = sum_i phi(U_i) dx - sum_i bprev_i . U_i dx - sum_i f_i . U_i dx dt
///          + dt/2 sum_{cells} |(U_{i+1} - U_i) / dx|^2 dx
///
/// over the interior unknowns U (interior_nodes x m), with zero Dirichlet
/// values at both boundary nodes. Strictly convex; its unique minimizer is
/// the next time level. Immutable once assembled; evaluation, gradient and
/// Hessian action are pure.
class DiscreteEnergy {
public:
    /// bprev holds b(previous level) at all nodes (boundary rows zero);
    /// source holds the f values at the implicit time, same layout, and may
    /// be empty for f = 0.
    DiscreteEnergy(const Isotherm& isotherm, const Grid1D& grid, double dt,
                   std::vector<double> bprev, std::vector<double> source = {},
                   double hessian_shift_radius = kHessianShiftRadius);

    const Isotherm& isotherm() const { return isotherm_; }
    const Grid1D& grid() const { return grid_; }
    double dt() const { return dt_; }
    int unknowns() const { return grid_.interior_nodes() * isotherm_.components(); }
    bool has_source() const { return !source_.empty(); }
    double hessian_shift_radius() const { return shift_; }

    double evaluate(std::span<const double> interior_u) const;
    void gradient(std::span<const double> interior_u, std::span<double> out) const;

    /// Dense m x m diagonal Hessian blocks, one per interior node
    /// (D_u b(U_i) dx + 2 dt/dx on the diagonal). Off-diagonal coupling
    /// between adjacent nodes is the scalar hessian_offdiag() times identity.
    void hessian_diag_blocks(std::span<const double> interior_u, std::span<double> out) const;
    double hessian_offdiag() const { return -dt_ / grid_.dx(); }

    void hessian_apply(std::span<const double> interior_u, std::span<const double> direction,
                       std::span<double> out) const;

private:
    void shifted_jacobian(std::span<const double> u, std::span<double> out) const;

    Isotherm isotherm_;
    Grid1D grid_;
    double dt_;
    std::vector<double> bprev_;
    std::vector<double> source_;
    double shift_;
};

}  // namespace sorptran
