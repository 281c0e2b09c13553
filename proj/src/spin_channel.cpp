#include "relchan/spin_channel.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace relchan {

namespace {

void check_weight(double x, const char* name) {
  if (!(x >= 0.0 && x < 1.0)) {
    std::ostringstream os;
    os << name << " = " << x << " outside [0, 1)";
    throw std::invalid_argument(os.str());
  }
}

void check_probabilities(std::span<const double> probs) {
  if (probs.empty()) throw std::invalid_argument("holevo: empty probability vector");
  double sum = 0.0;
  for (double p : probs) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("holevo: probability outside [0, 1]");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-12) throw std::invalid_argument("holevo: probabilities must sum to 1");
}

double xlog2x(double x) { return x > 0.0 ? x * std::log2(x) : 0.0; }

template <std::size_t N>
std::vector<double> to_vec(const std::array<double, N>& a) {
  return {a.begin(), a.end()};
}

template <typename State>
HolevoReport holevo_impl(std::span<const double> probs, std::span<const State> states) {
  check_probabilities(probs);
  if (probs.size() != states.size()) throw std::invalid_argument("holevo: probability/state count mismatch");

  auto mixture = states.front().matrix() * 0.0;
  HolevoReport report;
  double conditional = 0.0;
  for (std::size_t i = 0; i < states.size(); ++i) {
    mixture += states[i].matrix() * probs[i];
    const auto ev = states[i].eigenvalues();
    const double s = entropy_bits(ev);
    report.conditional_entropies.push_back(s);
    report.conditional_eigenvalues.push_back(to_vec(ev));
    conditional += probs[i] * s;
  }
  const State average(mixture);
  const auto ev = average.eigenvalues();
  report.ensemble_entropy = entropy_bits(ev);
  report.ensemble_eigenvalues = to_vec(ev);
  report.chi = report.ensemble_entropy - conditional;
  return report;
}

// χ(τ′) from the closed-form spectra of τ′, τ₀′ and τ₁′.
HolevoReport boosted2_closed(double v, double u, double theta, double lambda) {
  const DensityMatrix2 tau = boosted_tau(v, u, theta, lambda);
  const auto gamma = tau.eigenvalues();
  const std::array<double, 2> delta{v, 1.0 - v};
  const auto epsilon = boosted_tau1_eigenvalues(theta, u);

  HolevoReport r;
  r.ensemble_eigenvalues = to_vec(gamma);
  r.conditional_eigenvalues = {to_vec(delta), to_vec(epsilon)};
  r.ensemble_entropy = entropy_bits(gamma);
  r.conditional_entropies = {entropy_bits(delta), entropy_bits(epsilon)};
  r.chi = -(xlog2x(gamma[0]) + xlog2x(gamma[1])) + lambda * (xlog2x(delta[0]) + xlog2x(delta[1])) +
          (1.0 - lambda) * (xlog2x(epsilon[0]) + xlog2x(epsilon[1]));
  return r;
}

HolevoReport boosted4_closed(double v, double u, double theta, const std::array<double, 4>& l) {
  const DensityMatrix4 tau = boosted_tau4(v, u, theta, l);
  const auto& gamma = tau.eigenvalues();
  const DensityMatrix2 t0 = boosted_tau0(v);
  const DensityMatrix2 t1 = boosted_tau1(theta, u);
  const double s0 = von_neumann_entropy(t0);
  const double s1 = von_neumann_entropy(t1);

  HolevoReport r;
  r.ensemble_eigenvalues = to_vec(gamma);
  r.ensemble_entropy = entropy_bits(gamma);
  r.conditional_entropies = {2.0 * s0, s0 + s1, s1 + s0, 2.0 * s1};
  for (const auto* pair : {&t0, &t1}) r.conditional_eigenvalues.push_back(to_vec(pair->eigenvalues()));
  r.chi = r.ensemble_entropy - 2.0 * l[0] * s0 - 2.0 * l[3] * s1 - (l[1] + l[2]) * (s0 + s1);
  return r;
}

// First-order propagation of the V and U quadrature errors into χ.
double propagate(const std::function<double(double, double)>& chi, const ChannelIntegrals& in) {
  auto partial = [&](bool wrt_v) {
    const double x = wrt_v ? in.v.value : in.u.value;
    const double h = std::max(1e-7, 1e-4 * x);
    const double lo = std::max(0.0, x - h);
    const double hi = std::min(x + h, std::nextafter(1.0, 0.0));
    const double f_hi = wrt_v ? chi(hi, in.u.value) : chi(in.v.value, hi);
    const double f_lo = wrt_v ? chi(lo, in.u.value) : chi(in.v.value, lo);
    return std::abs(f_hi - f_lo) / (hi - lo);
  };
  double err = 0.0;
  if (in.v.error_estimate > 0.0) err += partial(true) * in.v.error_estimate;
  if (in.u.error_estimate > 0.0) err += partial(false) * in.u.error_estimate;
  return err;
}

}  // namespace

void ChannelParams::validate() const {
  if (!std::isfinite(theta)) throw std::invalid_argument("ChannelParams: theta must be finite");
  spec.validate();
}

ChannelIntegrals channel_integrals(const ChannelParams& params) {
  params.validate();
  return {integral_V(params.packet0, params.alpha, params.spec), integral_U(params.packet1, params.alpha, params.spec)};
}

DensityMatrix2 boosted_tau0(double v) {
  check_weight(v, "V");
  RealMatrix2 m;
  m(0, 0) = 1.0 - v;
  m(1, 1) = v;
  return DensityMatrix2(m);
}

DensityMatrix2 boosted_tau1(double theta, double u) {
  check_weight(u, "U");
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  const double a = c * c * (1.0 - u) + s * s * u;
  const double b = c * s * (1.0 - 4.0 * u);
  RealMatrix2 m;
  m(0, 0) = a;
  m(0, 1) = b;
  m(1, 0) = b;
  m(1, 1) = 1.0 - a;
  return DensityMatrix2(m);
}

std::array<double, 2> boosted_tau1_eigenvalues(double theta, double u) {
  check_weight(u, "U");
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  const double a = c * c * (1.0 - u) + s * s * u;
  const double b = c * s * (1.0 - 4.0 * u);
  const double r = std::hypot(a - 0.5, b);
  return {0.5 - r, 0.5 + r};
}

DensityMatrix2 boosted_tau(double v, double u, double theta, double lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw std::invalid_argument("lambda must lie in [0, 1]");
  return DensityMatrix2(boosted_tau0(v).matrix() * Complex(lambda) +
                        boosted_tau1(theta, u).matrix() * Complex(1.0 - lambda));
}

DensityMatrix4 boosted_tau4(double v, double u, double theta, const std::array<double, 4>& l) {
  validate_probabilities4(l);
  const RealMatrix2 t0 = boosted_tau0(v).real_matrix();
  const RealMatrix2 t1 = boosted_tau1(theta, u).real_matrix();
  return DensityMatrix4(l[0] * kron(t0, t0) + l[1] * kron(t0, t1) + l[2] * kron(t1, t0) + l[3] * kron(t1, t1));
}

double entropy_bits(std::span<const double> eigenvalues) {
  constexpr double tol = kStateTolerance;
  double trace = 0.0;
  double h = 0.0;
  for (double x : eigenvalues) {
    if (!(x >= -tol && x <= 1.0 + tol)) {
      std::ostringstream os;
      os << "entropy: eigenvalue " << x << " outside [0, 1]";
      throw InvalidStateError(os.str());
    }
    trace += x;
    h -= xlog2x(std::clamp(x, 0.0, 1.0));
  }
  if (std::abs(trace - 1.0) > tol) throw InvalidStateError("entropy: eigenvalues do not sum to 1");
  return h;
}

double von_neumann_entropy(const DensityMatrix2& rho) { return entropy_bits(rho.eigenvalues()); }

double von_neumann_entropy(const DensityMatrix4& rho) { return entropy_bits(rho.eigenvalues()); }

double shannon_entropy(std::span<const double> probs) {
  check_probabilities(probs);
  double h = 0.0;
  for (double p : probs) h -= xlog2x(p);
  return h;
}

HolevoReport holevo(std::span<const double> probs, std::span<const DensityMatrix2> states) {
  return holevo_impl(probs, states);
}

HolevoReport holevo(std::span<const double> probs, std::span<const DensityMatrix4> states) {
  return holevo_impl(probs, states);
}

HolevoReport holevo_rest2(double lambda, double theta) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw std::invalid_argument("holevo_rest2: lambda must lie in [0, 1]");
  const double s = std::sin(theta);
  const double disc = std::max(0.0, 1.0 + 4.0 * s * s * (lambda * lambda - lambda));
  const double half_root = 0.5 * std::sqrt(disc);
  const std::array<double, 2> beta{0.5 - half_root, 0.5 + half_root};

  HolevoReport r;
  r.ensemble_eigenvalues = to_vec(beta);
  r.ensemble_entropy = entropy_bits(beta);
  r.conditional_entropies = {0.0, 0.0};
  r.conditional_eigenvalues = {{0.0, 1.0}, {0.0, 1.0}};
  r.chi = r.ensemble_entropy;
  return r;
}

HolevoReport holevo_rest4(const std::array<double, 4>& lambdas, double theta) {
  const MomentumPacket any(0.0, 1.0);
  const DensityMatrix4 tau = rest_tau4(Ensemble4(lambdas, {any, 0.0}, {any, theta}));
  HolevoReport r;
  r.ensemble_eigenvalues = to_vec(tau.eigenvalues());
  r.ensemble_entropy = entropy_bits(tau.eigenvalues());
  r.conditional_entropies = {0.0, 0.0, 0.0, 0.0};
  r.conditional_eigenvalues.assign(4, {0.0, 0.0, 0.0, 1.0});
  r.chi = r.ensemble_entropy;
  return r;
}

HolevoReport holevo_boosted2(const ChannelIntegrals& integrals, double theta, double lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw std::invalid_argument("holevo_boosted2: lambda must lie in [0, 1]");
  HolevoReport r = boosted2_closed(integrals.v.value, integrals.u.value, theta, lambda);
  r.quadrature_error = propagate(
      [&](double v, double u) { return boosted2_closed(v, u, theta, lambda).chi; }, integrals);
  return r;
}

HolevoReport holevo_boosted2(const ChannelParams& params, double lambda) {
  return holevo_boosted2(channel_integrals(params), params.theta, lambda);
}

HolevoReport holevo_boosted4_generic(double v, double u, double theta, const std::array<double, 4>& lambdas) {
  const DensityMatrix2 t0 = boosted_tau0(v);
  const DensityMatrix2 t1 = boosted_tau1(theta, u);
  const std::array<DensityMatrix4, 4> products{tensor(t0, t0), tensor(t0, t1), tensor(t1, t0), tensor(t1, t1)};
  return holevo(std::span<const double>(lambdas), std::span<const DensityMatrix4>(products));
}

HolevoReport holevo_boosted4(const ChannelIntegrals& integrals, double theta, const std::array<double, 4>& lambdas) {
  const double v = integrals.v.value;
  const double u = integrals.u.value;
  HolevoReport r = boosted4_closed(v, u, theta, lambdas);
  const double generic = holevo_boosted4_generic(v, u, theta, lambdas).chi;
  if (std::abs(generic - r.chi) > 1e-9) {
    std::ostringstream os;
    os << "holevo_boosted4: closed form " << r.chi << " disagrees with generic Holevo sum " << generic;
    throw std::logic_error(os.str());
  }
  r.quadrature_error = propagate(
      [&](double vv, double uu) { return boosted4_closed(vv, uu, theta, lambdas).chi; }, integrals);
  return r;
}

HolevoReport holevo_boosted4(const ChannelParams& params, const std::array<double, 4>& lambdas) {
  return holevo_boosted4(channel_integrals(params), params.theta, lambdas);
}

}  // namespace relchan
