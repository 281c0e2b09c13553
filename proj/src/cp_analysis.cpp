#include "relchan/cp_analysis.hpp"

#include <cmath>
#include <stdexcept>

namespace relchan {

namespace {

std::optional<double> scan_then_bisect(const std::function<double(double)>& f, double lo, double hi, int steps,
                                       double tol) {
  if (steps < 1) throw std::invalid_argument("crossing scan needs at least one interval");
  double prev_x = lo;
  double prev_f = f(lo);
  for (int i = 1; i <= steps; ++i) {
    const double x = lo + (hi - lo) * i / steps;
    const double fx = f(x);
    if ((prev_f > 0.0) != (fx > 0.0)) return bisect_root(f, prev_x, x, tol);
    prev_x = x;
    prev_f = fx;
  }
  return std::nullopt;
}

}  // namespace

DensityMatrix2 channel_E(const ChannelIntegrals& integrals, double theta, double lambda) {
  return boosted_tau(integrals.v.value, integrals.u.value, theta, lambda);
}

DensityMatrix2 channel_E(const ChannelParams& params, double lambda) {
  return channel_E(channel_integrals(params), params.theta, lambda);
}

DensityMatrix4 channel_N(const ChannelIntegrals& integrals, double theta, const std::array<double, 4>& lambdas) {
  return boosted_tau4(integrals.v.value, integrals.u.value, theta, lambdas);
}

DensityMatrix4 channel_N(const ChannelParams& params, const std::array<double, 4>& lambdas) {
  return channel_N(channel_integrals(params), params.theta, lambdas);
}

DeltaResult delta2(const ChannelIntegrals& integrals, double theta, double lambda) {
  const HolevoReport boosted = holevo_boosted2(integrals, theta, lambda);
  return {boosted.chi - holevo_rest2(lambda, theta).chi, boosted.quadrature_error};
}

DeltaResult delta2(const ChannelParams& params, double lambda) {
  return delta2(channel_integrals(params), params.theta, lambda);
}

DeltaResult delta4(const ChannelIntegrals& integrals, double theta, const std::array<double, 4>& lambdas) {
  const HolevoReport boosted = holevo_boosted4(integrals, theta, lambdas);
  return {boosted.chi - holevo_rest4(lambdas, theta).chi, boosted.quadrature_error};
}

DeltaResult delta4(const ChannelParams& params, const std::array<double, 4>& lambdas) {
  return delta4(channel_integrals(params), params.theta, lambdas);
}

ComplexMatrix2 KrausSet::completeness() const {
  ComplexMatrix2 sum;
  for (const auto& g : ops) sum += adjoint(g) * g;
  return sum;
}

KrausSet kraus_set(double v) {
  if (!(v >= 0.0 && v < 1.0)) throw std::invalid_argument("kraus_set: V must lie in [0, 1)");
  const double flip = std::sqrt(0.5 * v);
  KrausSet k;
  k.ops[0] = ComplexMatrix2::identity() * Complex(std::sqrt(1.0 - v));
  k.ops[1](0, 1) = flip;
  k.ops[1](1, 0) = flip;
  k.ops[2](0, 1) = Complex(0.0, -flip);
  k.ops[2](1, 0) = Complex(0.0, flip);
  return k;
}

DensityMatrix2 apply_kraus(const KrausSet& kraus, const DensityMatrix2& rho) {
  ComplexMatrix2 out;
  for (const auto& g : kraus.ops) out += g * rho.matrix() * adjoint(g);
  return DensityMatrix2(out);
}

double discord_witness(const ChannelParams& params, double lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw std::invalid_argument("discord_witness: lambda must lie in [0, 1]");
  params.validate();
  // φ↑φθ† − φθφ↑† = sinθ [[0, 1], [−1, 0]], whose HS norm is √2 |sinθ|.
  const double spin_norm = std::sqrt(2.0) * std::abs(std::sin(params.theta));
  const double overlap = packet_overlap(params.packet0, params.packet1);
  const double momentum_norm = std::sqrt(std::max(0.0, 2.0 - 2.0 * overlap * overlap));
  return lambda * (1.0 - lambda) * std::abs(std::cos(params.theta)) * spin_norm * momentum_norm;
}

std::optional<double> bisect_root(const std::function<double(double)>& f, double lo, double hi, double tol) {
  double f_lo = f(lo);
  const double f_hi = f(hi);
  if ((f_lo > 0.0) == (f_hi > 0.0)) return std::nullopt;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    const double f_mid = f(mid);
    if ((f_mid > 0.0) == (f_lo > 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

std::optional<double> delta2_crossing(const ChannelIntegrals& integrals, double lambda, double lo, double hi,
                                      int scan_steps, double tol) {
  return scan_then_bisect([&](double theta) { return delta2(integrals, theta, lambda).value; }, lo, hi, scan_steps,
                          tol);
}

std::optional<double> delta4_crossing(const ChannelIntegrals& integrals, const std::array<double, 4>& lambdas,
                                      double lo, double hi, int scan_steps, double tol) {
  return scan_then_bisect([&](double theta) { return delta4(integrals, theta, lambdas).value; }, lo, hi, scan_steps,
                          tol);
}

}  // namespace relchan
