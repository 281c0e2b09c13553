#include "relchan/states.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace relchan {

namespace {

void validate_probability(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument(std::string(what) + " must lie in [0, 1]");
}

}  // namespace

MomentumPacket::MomentumPacket(double mean, double width) : mean_(mean), width_(width) {
  if (!std::isfinite(mean)) throw std::invalid_argument("MomentumPacket: mean must be finite");
  if (!(width > 0.0) || !std::isfinite(width)) throw std::invalid_argument("MomentumPacket: width must be positive");
}

MomentumPacket MomentumPacket::from_mean_vector(const Vec3& mean, double width) {
  if (mean[1] != 0.0 || mean[2] != 0.0)
    throw std::invalid_argument("MomentumPacket: mean momentum must lie along the x axis");
  return MomentumPacket(mean[0], width);
}

Ensemble2::Ensemble2(double lambda, PureSpinorState state0, PureSpinorState state1)
    : lambda_(lambda), state0_(state0), state1_(state1) {
  validate_probability(lambda, "Ensemble2: lambda");
  if (state0.theta != 0.0) throw std::invalid_argument("Ensemble2: state0 must be the spin-up signal");
  if (!std::isfinite(state1.theta)) throw std::invalid_argument("Ensemble2: theta must be finite");
}

void validate_probabilities4(const std::array<double, 4>& lambdas) {
  double sum = 0.0;
  for (double l : lambdas) {
    validate_probability(l, "probability");
    sum += l;
  }
  if (std::abs(sum - 1.0) > 1e-12) throw std::invalid_argument("probabilities must sum to 1");
}

Ensemble4::Ensemble4(const std::array<double, 4>& lambdas, PureSpinorState state0, PureSpinorState state1)
    : lambdas_(lambdas), state0_(state0), state1_(state1) {
  validate_probabilities4(lambdas);
  if (state0.theta != 0.0) throw std::invalid_argument("Ensemble4: state0 must be the spin-up signal");
  if (!std::isfinite(state1.theta)) throw std::invalid_argument("Ensemble4: theta must be finite");
}

double packet_value(const MomentumPacket& packet, const Vec3& q) {
  const double w = packet.width();
  const double dx = q[0] - packet.mean();
  const double r2 = dx * dx + q[1] * q[1] + q[2] * q[2];
  return std::pow(std::numbers::pi, -0.75) * std::pow(w, -1.5) * std::exp(-r2 / (2.0 * w * w));
}

double packet_overlap(const MomentumPacket& p0, const MomentumPacket& p1) {
  const double w0 = p0.width();
  const double w1 = p1.width();
  const double s = w0 * w0 + w1 * w1;
  const double dk = p0.mean() - p1.mean();
  return std::pow(2.0 * w0 * w1 / s, 1.5) * std::exp(-dk * dk / (2.0 * s));
}

double state_overlap(const PureSpinorState& s0, const PureSpinorState& s1) {
  if (s0.theta != 0.0) throw std::invalid_argument("state_overlap: first state must have theta = 0");
  return std::abs(std::cos(s1.theta)) * packet_overlap(s0.packet, s1.packet);
}

RealMatrix2 spin_projector(double theta) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  RealMatrix2 m;
  m(0, 0) = c * c;
  m(0, 1) = c * s;
  m(1, 0) = c * s;
  m(1, 1) = s * s;
  return m;
}

DensityMatrix2 rest_tau(const Ensemble2& ensemble) {
  const double l = ensemble.lambda();
  return DensityMatrix2(l * spin_projector(0.0) + (1.0 - l) * spin_projector(ensemble.state1().theta));
}

DensityMatrix4 rest_tau4(const Ensemble4& ensemble) {
  const RealMatrix2 t0 = spin_projector(0.0);
  const RealMatrix2 t1 = spin_projector(ensemble.state1().theta);
  const auto& l = ensemble.lambdas();
  return DensityMatrix4(l[0] * kron(t0, t0) + l[1] * kron(t0, t1) + l[2] * kron(t1, t0) + l[3] * kron(t1, t1));
}

}  // namespace relchan
