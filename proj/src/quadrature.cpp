#include "relchan/quadrature.hpp"

#include <cmath>
#include <numbers>

namespace relchan {

void IntegrationSpec::validate() const {
  if (!(rel_tol > 0.0)) throw std::invalid_argument("IntegrationSpec: rel_tol must be positive");
  if (!(abs_tol > 0.0)) throw std::invalid_argument("IntegrationSpec: abs_tol must be positive");
  if (max_subdivisions < 1) throw std::invalid_argument("IntegrationSpec: max_subdivisions must be >= 1");
}

QuadratureResult integrate_1d(const std::function<double(double)>& f, const Range& x_range,
                              const IntegrationSpec& spec) {
  spec.validate();
  std::size_t evaluations = 0;
  auto sample = [&](double x) {
    ++evaluations;
    return detail::Sample<double>{f(x), 0.0};
  };
  const auto r = detail::integrate_axis<double>(sample, x_range, spec);
  if (!r.converged)
    throw QuadratureError("integrate_1d: no convergence", {r.value}, r.error, evaluations);
  return {r.value, r.error, evaluations};
}

QuadratureResult integrate_2d(const std::function<double(double, double)>& f, const Range& x_range,
                              const Range& y_range, const IntegrationSpec& spec) {
  spec.validate();
  std::size_t evaluations = 0;
  const IntegrationSpec inner = detail::inner_spec(spec);

  auto over_x = [&](double x) {
    auto over_y = [&](double y) {
      ++evaluations;
      return detail::Sample<double>{f(x, y), 0.0};
    };
    const auto r = detail::integrate_axis<double>(over_y, y_range, inner);
    return detail::Sample<double>{r.value, r.error};
  };
  // Inner shortfalls are already in the carried error, so only the outer
  // estimate decides convergence.
  const auto r = detail::integrate_axis<double>(over_x, x_range, spec);
  if (!r.converged) {
    throw QuadratureError("integrate_2d: no convergence within " + std::to_string(spec.max_subdivisions) +
                              " subdivisions (error estimate " + std::to_string(r.error) + ")",
                          {r.value}, r.error, evaluations);
  }
  return {r.value, r.error, evaluations};
}

double boost_weight(double qx, double qr, const Rapidity& alpha) {
  const double q0 = std::hypot(qx, qr, 1.0);
  const double transverse = 1.0 + qr * qr;
  // Q⁰ ∓ Qx, each computed on the side where it does not cancel.
  const double minus = qx > 0.0 ? transverse / (q0 + qx) : q0 - qx;
  const double plus = qx < 0.0 ? transverse / (q0 - qx) : q0 + qx;

  if (alpha.is_infinite()) return 1.0 / (2.0 * minus);

  const double a = alpha.value();
  if (a == 0.0) return 0.0;
  // Numerator and denominator both scaled by e^{-|α|}.
  const double m = std::abs(a);
  const double decay = std::exp(-m);
  const double numerator = 0.25 * std::expm1(-m) * std::expm1(-m);
  const double leading = a > 0.0 ? minus : plus;
  const double trailing = a > 0.0 ? plus : minus;
  const double denominator = 0.5 * (leading + trailing * decay * decay) + decay;
  return numerator / denominator;
}

QuadratureResult integral_V(const MomentumPacket& packet, const Rapidity& alpha, const IntegrationSpec& spec) {
  spec.validate();
  if (!alpha.is_infinite() && alpha.value() == 0.0) return {0.0, 0.0, 0};

  const double k = packet.mean();
  const double w = packet.width();
  const double prefactor = 1.0 / (std::sqrt(std::numbers::pi) * w * w * w);
  const double inv_w2 = 1.0 / (w * w);

  auto integrand = [=](double qx, double qr) {
    const double dx = qx - k;
    const double gauss = std::exp(-(dx * dx + qr * qr) * inv_w2);
    if (gauss == 0.0) return 0.0;
    const double q0 = std::hypot(qx, qr, 1.0);
    return prefactor * qr * qr * qr * gauss / (q0 + 1.0) * boost_weight(qx, qr, alpha);
  };

  QuadratureResult r = integrate_2d(integrand, Range::whole_line(k, w), Range::half_line(0.0, w), spec);

  constexpr double slack = 1e-10;
  if (r.value < -slack || r.value >= 1.0 + slack) {
    throw QuadratureError("integral_V: value " + std::to_string(r.value) + " outside [0, 1)", {r.value},
                          r.error_estimate, r.evaluations);
  }
  if (r.value < 0.0) r.value = 0.0;
  if (r.value >= 1.0) r.value = std::nextafter(1.0, 0.0);
  return r;
}

QuadratureResult integral_U(const MomentumPacket& packet, const Rapidity& alpha, const IntegrationSpec& spec) {
  return integral_V(packet, alpha, spec);
}

}  // namespace relchan
