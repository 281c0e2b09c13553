#include "relchan/relativity.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace relchan {

namespace {

double shell_energy(const Vec3& k) { return std::sqrt(k[0] * k[0] + k[1] * k[1] + k[2] * k[2] + 1.0); }

double finite_alpha(const Rapidity& alpha, const char* what) {
  if (alpha.is_infinite())
    throw std::domain_error(std::string(what) + ": pointwise kinematics undefined for infinite rapidity");
  return alpha.value();
}

}  // namespace

FourMomentum FourMomentum::on_shell(const Vec3& momentum) {
  return FourMomentum(shell_energy(momentum), momentum, true);
}

FourMomentum::FourMomentum(double energy, const Vec3& momentum) : energy_(energy), momentum_(momentum) {
  const double shell = shell_energy(momentum);
  if (!(std::abs(energy - shell) <= 1e-12 * shell)) throw std::invalid_argument("FourMomentum: off mass shell");
}

RealMatrix4 boost_matrix(const Rapidity& alpha) {
  const double a = finite_alpha(alpha, "boost_matrix");
  RealMatrix4 m = RealMatrix4::identity();
  m(0, 0) = std::cosh(a);
  m(0, 1) = std::sinh(a);
  m(1, 0) = std::sinh(a);
  m(1, 1) = std::cosh(a);
  return m;
}

FourMomentum receiver_momentum(const Rapidity& alpha, const FourMomentum& q) {
  const double a = finite_alpha(alpha, "receiver_momentum");
  const Vec3& k = q.momentum();
  const Vec3 p{k[0] * std::cosh(a) - q.energy() * std::sinh(a), k[1], k[2]};
  return FourMomentum::on_shell(p);
}

FourMomentum sender_momentum(const Rapidity& alpha, const FourMomentum& p) {
  const double a = finite_alpha(alpha, "sender_momentum");
  const Vec3& k = p.momentum();
  const Vec3 q{k[0] * std::cosh(a) + p.energy() * std::sinh(a), k[1], k[2]};
  return FourMomentum::on_shell(q);
}

ComplexMatrix2 wigner_d(const Rapidity& alpha, const FourMomentum& q) {
  const double a = finite_alpha(alpha, "wigner_d");
  const double c = std::cosh(0.5 * a);
  const double s = std::sinh(0.5 * a);
  const double q0 = q.energy();
  const Vec3& k = q.momentum();
  const double p0 = receiver_momentum(alpha, q).energy();
  const double norm = 1.0 / std::sqrt((p0 + 1.0) * (q0 + 1.0));

  // e_x × q = (0, −q_z, q_y); −iS(e_x × q)·σ expands to the entries below.
  const double diag = c * (q0 + 1.0) - s * k[0];
  ComplexMatrix2 d;
  d(0, 0) = Complex(diag, -s * k[1]) * norm;
  d(0, 1) = Complex(s * k[2], 0.0) * norm;
  d(1, 0) = Complex(-s * k[2], 0.0) * norm;
  d(1, 1) = Complex(diag, s * k[1]) * norm;
  return d;
}

std::pair<Complex, Complex> boosted_components(const MomentumPacket& packet, const Rapidity& alpha, const Vec3& p) {
  const double a = finite_alpha(alpha, "boosted_components");
  if (a == 0.0) return {packet_value(packet, p), 0.0};

  const FourMomentum pm = FourMomentum::on_shell(p);
  const FourMomentum qm = sender_momentum(alpha, pm);
  const double p0 = pm.energy();
  const double q0 = qm.energy();
  const Vec3& q = qm.momentum();
  const double c = std::cosh(0.5 * a);
  const double s = std::sinh(0.5 * a);

  const double scale = std::sqrt(q0 / p0) / std::sqrt((q0 + 1.0) * (p0 + 1.0)) * packet_value(packet, q);
  const Complex up = scale * Complex(c * (q0 + 1.0) - s * q[0], -s * q[1]);
  const Complex down = -scale * s * q[2];
  return {up, down};
}

OracleResult boosted_density_oracle(const PureSpinorState& state, const Rapidity& alpha, const IntegrationSpec& spec) {
  finite_alpha(alpha, "boosted_density_oracle");
  const double cos_t = std::cos(state.theta);
  const double sin_t = std::sin(state.theta);
  const MomentumPacket& packet = state.packet;

  // Components: ρ₀₀, ρ₁₁, Re ρ₀₁, Im ρ₀₁.
  auto integrand = [&](double qx, double qy, double qz) {
    const Vec3 q{qx, qy, qz};
    const double f = packet_value(packet, q);
    if (f == 0.0) return std::array<double, 4>{};
    const ComplexMatrix2 d = wigner_d(alpha, FourMomentum::on_shell(q));
    const Complex u = f * (d(0, 0) * cos_t + d(0, 1) * sin_t);
    const Complex v = f * (d(1, 0) * cos_t + d(1, 1) * sin_t);
    const Complex off = u * std::conj(v);
    return std::array<double, 4>{std::norm(u), std::norm(v), off.real(), off.imag()};
  };

  const double w = packet.width();
  const auto r = integrate_3d<4>(integrand, Range::whole_line(packet.mean(), w), Range::whole_line(0.0, w),
                                 Range::whole_line(0.0, w), spec);

  ComplexMatrix2 m;
  m(0, 0) = r.value[0];
  m(1, 1) = r.value[1];
  m(0, 1) = Complex(r.value[2], r.value[3]);
  m(1, 0) = std::conj(m(0, 1));
  const double tol = std::max(kStateTolerance, 10.0 * std::max(spec.rel_tol, r.error_estimate));
  return {DensityMatrix2(m, tol), r.error_estimate, r.evaluations};
}

}  // namespace relchan
