#pragma once

#include <span>
#include <string_view>

namespace sorptran {

enum class IsothermKind {
    // b(u) = u + |u|^{p-1} u: idealized multicomponent Freundlich sorption
    // capacity for the coupled transport system.
    FreundlichTransport,
    // b(u) = |u|^{p-1} u: scalar capacity law; z = b(u) maps the homogeneous
    // equation to the porous medium equation with exponent m = 1/p.
    PmeScalar,
};

/// Capacity nonlinearity b = grad(phi), its convex potential phi, and the
/// conjugate energy density B(u) = u.b(u) - phi(u).
///
/// All evaluations are exact; in particular jacobian_b() returns the true
/// derivative, which blows up as |u| -> 0. Callers that need a bounded
/// Hessian (the per-step energy) apply their own shift policy before calling.
/// Pure functions of the inputs; safe to share across threads.
class Isotherm {
public:
    Isotherm(IsothermKind kind, double exponent, int components);

    IsothermKind kind() const { return kind_; }
    double exponent() const { return p_; }
    int components() const { return m_; }
    std::string_view name() const;

    /// phi(u); >= 0, strictly convex, phi(0) = 0.
    double potential(std::span<const double> u) const;

    /// b(u) = grad(phi)(u), with the limit value b(0) = 0.
    void b(std::span<const double> u, std::span<double> out) const;

    /// B(u) = u.b(u) - phi(u), evaluated in closed form.
    double conjugate_density(std::span<const double> u) const;

    /// D_u b(u), row-major m x m. Requires |u| > 0: the derivative is
    /// unbounded at the origin and the power would overflow there.
    void jacobian_b(std::span<const double> u, std::span<double> out) const;

    struct GrowthReport {
        double c1 = 0.0;  // smallest C with |b(u)| <= C (|u| + 1) over the samples
        double c2 = 0.0;  // smallest C with |b(u)|^2 <= C (B(u) + 1)
        bool finite = false;
    };

    /// Empirical growth constants over a flat list of m-vectors.
    GrowthReport check_growth_conditions(std::span<const double> samples_flat) const;

private:
    IsothermKind kind_;
    double p_;
    int m_;
    double linear_;  // 1 for the transport law, 0 for the PME law
};

}  // namespace sorptran
