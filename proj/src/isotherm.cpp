#include "sorptran/isotherm.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace sorptran {

namespace {

// |u|^{p-1} u is defined by its limit 0 at u = 0; below this radius the power
// factor is not evaluated at all (0^{negative} would be inf).
constexpr double kZeroRadius = 1e-300;

double norm(std::span<const double> u) {
    double s = 0.0;
    for (double v : u) s += v * v;
    return std::sqrt(s);
}

void ensure_finite(std::span<const double> u, const char* what) {
    for (double v : u) {
        if (!std::isfinite(v)) {
            throw std::domain_error(std::string(what) + ": non-finite input component");
        }
    }
}

}  // namespace

Isotherm::Isotherm(IsothermKind kind, double exponent, int components)
    : kind_(kind), p_(exponent), m_(components),
      linear_(kind == IsothermKind::FreundlichTransport ? 1.0 : 0.0) {
    if (!(exponent > 0.0 && exponent < 1.0)) {
        throw std::invalid_argument("Isotherm: exponent must lie in (0, 1)");
    }
    if (components < 1) {
        throw std::invalid_argument("Isotherm: need at least one component");
    }
}

std::string_view Isotherm::name() const {
    return kind_ == IsothermKind::FreundlichTransport ? "freundlich-transport" : "pme-scalar";
}

double Isotherm::potential(std::span<const double> u) const {
    ensure_finite(u, "potential");
    const double r = norm(u);
    return 0.5 * linear_ * r * r + std::pow(r, p_ + 1.0) / (p_ + 1.0);
}

void Isotherm::b(std::span<const double> u, std::span<double> out) const {
    ensure_finite(u, "isotherm b");
    const double r = norm(u);
    if (r < kZeroRadius) {
        for (size_t k = 0; k < u.size(); ++k) out[k] = 0.0;
        return;
    }
    const double power = std::pow(r, p_ - 1.0);
    for (size_t k = 0; k < u.size(); ++k) {
        out[k] = linear_ * u[k] + power * u[k];
    }
}

double Isotherm::conjugate_density(std::span<const double> u) const {
    ensure_finite(u, "conjugate density");
    const double r = norm(u);
    return 0.5 * linear_ * r * r + p_ / (p_ + 1.0) * std::pow(r, p_ + 1.0);
}

void Isotherm::jacobian_b(std::span<const double> u, std::span<double> out) const {
    ensure_finite(u, "isotherm jacobian");
    const double r = norm(u);
    if (!(r > 0.0)) {
        throw std::domain_error("isotherm jacobian: unbounded at u = 0");
    }
    // D_u b = linear Id + |u|^{p-1} (Id + (p-1) uhat uhat^T)
    const double power = std::pow(r, p_ - 1.0);
    const size_t m = u.size();
    for (size_t j = 0; j < m; ++j) {
        const double uhat_j = u[j] / r;
        for (size_t k = 0; k < m; ++k) {
            double v = power * (p_ - 1.0) * uhat_j * (u[k] / r);
            if (j == k) v += linear_ + power;
            out[j * m + k] = v;
        }
    }
}

Isotherm::GrowthReport Isotherm::check_growth_conditions(std::span<const double> samples_flat) const {
    const size_t m = static_cast<size_t>(m_);
    if (samples_flat.empty() || samples_flat.size() % m != 0) {
        throw std::invalid_argument("check_growth_conditions: need a nonempty multiple of m values");
    }
    GrowthReport report;
    std::vector<double> bu(m);
    for (size_t off = 0; off < samples_flat.size(); off += m) {
        std::span<const double> u = samples_flat.subspan(off, m);
        b(u, bu);
        const double bn = norm(bu);
        const double c1 = bn / (norm(u) + 1.0);
        const double c2 = bn * bn / (conjugate_density(u) + 1.0);
        if (c1 > report.c1) report.c1 = c1;
        if (c2 > report.c2) report.c2 = c2;
    }
    report.finite = std::isfinite(report.c1) && std::isfinite(report.c2);
    return report;
}

}  // namespace sorptran
