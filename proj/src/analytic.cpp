#include "sorptran/analytic.hpp"

#include <cmath>
#include <stdexcept>

namespace sorptran {

ZkbProfile::ZkbProfile(double mass_param, double time_shift, double center, double m_exponent,
                       int dimension)
    : c_(mass_param), t0_(time_shift), x0_(center), m_(m_exponent), d_(dimension) {
    if (!(m_exponent > 1.0)) {
        throw std::invalid_argument("ZkbProfile: exponent m must exceed 1");
    }
    if (!(mass_param > 0.0)) {
        throw std::invalid_argument("ZkbProfile: mass parameter must be positive");
    }
    if (dimension < 1) {
        throw std::invalid_argument("ZkbProfile: dimension must be at least 1");
    }
    const double d = static_cast<double>(d_);
    alpha_ = d / (d * (m_ - 1.0) + 2.0);
    beta_ = alpha_ / d;
    k_ = alpha_ * (m_ - 1.0) / (2.0 * m_ * d);
}

double ZkbProfile::z(double t, double x) const {
    const double shifted = t + t0_;
    if (!(shifted > 0.0)) {
        throw std::domain_error("ZkbProfile: profile undefined for t <= -t0");
    }
    const double r = x - x0_;
    const double core = c_ - k_ * r * r * std::pow(shifted, -2.0 * beta_);
    if (core <= 0.0) return 0.0;
    return std::pow(shifted, -alpha_) * std::pow(core, 1.0 / (m_ - 1.0));
}

double ZkbProfile::u(double t, double x) const {
    const double zval = z(t, x);
    return std::pow(zval, m_);
}

double ZkbProfile::support_radius(double t) const {
    const double shifted = t + t0_;
    if (!(shifted > 0.0)) {
        throw std::domain_error("ZkbProfile: profile undefined for t <= -t0");
    }
    return std::sqrt(c_ / k_) * std::pow(shifted, beta_);
}

}  // namespace sorptran
