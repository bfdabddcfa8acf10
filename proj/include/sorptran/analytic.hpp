#pragma once

namespace sorptran {

/// Self-similar source-type solution family of the porous medium equation
/// d_t z = Laplace(|z|^{m-1} z):
///
///   z(t, x) = (t + t0)^{-alpha} (C - k |x - x0|^2 (t + t0)^{-2 beta})_+^{1/(m-1)}
///
/// with alpha = d / (d (m-1) + 2), beta = alpha / d, k = alpha (m-1) / (2 m d).
/// C > 0 sets the conserved mass, t0 and x0 shift the profile. Pulling back
/// through the scalar capacity law z = b(u) = |u|^{p-1} u with p = 1/m gives
/// u = z^m, an exact solution of d_t b(u) = Laplace(u) used as the error
/// oracle. The solver runs in d = 1; the constants keep d general.
class ZkbProfile {
public:
    ZkbProfile(double mass_param, double time_shift, double center, double m_exponent,
               int dimension = 1);

    double mass_param() const { return c_; }
    double time_shift() const { return t0_; }
    double center() const { return x0_; }
    double m_exponent() const { return m_; }
    int dimension() const { return d_; }

    double alpha() const { return alpha_; }
    double beta() const { return beta_; }
    double k_const() const { return k_; }

    /// The profile in the PME variable; zero outside the support ball.
    /// Throws std::domain_error for t <= -t0.
    double z(double t, double x) const;

    /// Pullback to the transport variable: u = z^m.
    double u(double t, double x) const;

    /// Radius of the support ball, sqrt(C/k) (t + t0)^beta; strictly
    /// increasing in t.
    double support_radius(double t) const;

private:
    double c_;
    double t0_;
    double x0_;
    double m_;
    int d_;
    double alpha_;
    double beta_;
    double k_;
};

}  // namespace sorptran
