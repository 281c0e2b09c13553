#pragma once

// Adaptive quadrature over (semi-)infinite boxes.
//
// The core is a globally adaptive 15-point Gauss-Kronrod scheme on a single
// axis. Higher dimensions nest it: each outer node evaluates a full inner
// integral, and the inner error estimate is carried outward with the Kronrod
// weights so the reported error bounds both levels. Unbounded axes are mapped
// onto finite intervals by x = c + s·tan(u), with (c, s) chosen by the caller
// to sit on the integrand's bulk.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "relchan/rapidity.hpp"
#include "relchan/states.hpp"

namespace relchan {

struct IntegrationSpec {
  double rel_tol = 1e-8;
  double abs_tol = 1e-14;
  int max_subdivisions = 2000;

  /// Throws std::invalid_argument on a nonpositive tolerance or cap.
  void validate() const;

  /// Spec used for figure sweeps.
  static IntegrationSpec sweep() { return {1e-6, 1e-14, 2000}; }
};

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  std::size_t evaluations = 0;
};

/// Non-convergence. Carries the best estimate reached before giving up.
class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, std::vector<double> best_value, double error_estimate,
                  std::size_t evaluations)
      : std::runtime_error(what),
        best_value_(std::move(best_value)),
        error_estimate_(error_estimate),
        evaluations_(evaluations) {}

  const std::vector<double>& best_value() const { return best_value_; }
  double error_estimate() const { return error_estimate_; }
  QuadratureResult best() const {
    return {best_value_.empty() ? 0.0 : best_value_.front(), error_estimate_, evaluations_};
  }

 private:
  std::vector<double> best_value_;
  double error_estimate_;
  std::size_t evaluations_;
};

/// Integration interval. Infinite endpoints are allowed; `center` and
/// `scale` steer the tangent map used for them.
struct Range {
  double lower;
  double upper;
  double center = 0.0;
  double scale = 1.0;

  static Range finite(double a, double b) { return {a, b, 0.5 * (a + b), 0.5 * (b - a)}; }
  static Range whole_line(double center = 0.0, double scale = 1.0) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    return {-inf, inf, center, scale};
  }
  /// [lower, ∞) mapped by x = lower + scale·tan(u).
  static Range half_line(double lower = 0.0, double scale = 1.0) {
    return {lower, std::numeric_limits<double>::infinity(), lower, scale};
  }
};

template <std::size_t N>
struct VectorQuadratureResult {
  std::array<double, N> value{};
  double error_estimate = 0.0;
  std::size_t evaluations = 0;
};

namespace detail {

template <std::size_t N>
double max_abs(const std::array<double, N>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}
inline double max_abs(double v) { return std::abs(v); }

template <typename V>
struct Sample {
  V value{};
  double error = 0.0;
};

template <typename V>
struct Panel {
  double a;
  double b;
  V value;
  double rule_error;
  double carried_error;
};

namespace gk15 {
inline constexpr std::array<double, 8> xgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> wgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights for the nodes xgk[1], xgk[3], xgk[5], xgk[7].
inline constexpr std::array<double, 4> wg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};
}  // namespace gk15

// QUADPACK-style error heuristic for a single component.
inline double gk_error(double resk, double resg, double resabs, double resasc, double half) {
  constexpr double eps = std::numeric_limits<double>::epsilon();
  constexpr double tiny = std::numeric_limits<double>::min();
  double err = std::abs((resk - resg) * half);
  resabs *= std::abs(half);
  resasc *= std::abs(half);
  if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  if (resabs > tiny / (50.0 * eps)) err = std::max(50.0 * eps * resabs, err);
  return err;
}

template <typename V>
struct Ops;

template <>
struct Ops<double> {
  static constexpr std::size_t size = 1;
  static double& at(double& v, std::size_t) { return v; }
  static double at(const double& v, std::size_t) { return v; }
};

template <std::size_t N>
struct Ops<std::array<double, N>> {
  static constexpr std::size_t size = N;
  static double& at(std::array<double, N>& v, std::size_t i) { return v[i]; }
  static double at(const std::array<double, N>& v, std::size_t i) { return v[i]; }
};

// One Gauss-Kronrod panel. `f(u)` returns Sample<V> with its own carried error.
template <typename V, typename F>
Panel<V> gk15_panel(F& f, double a, double b) {
  using O = Ops<V>;
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);

  std::array<Sample<V>, 15> s;
  s[0] = f(center);
  for (std::size_t j = 0; j < 7; ++j) {
    const double dx = half * gk15::xgk[j];
    s[1 + 2 * j] = f(center - dx);
    s[2 + 2 * j] = f(center + dx);
  }

  Panel<V> p{a, b, V{}, 0.0, 0.0};
  for (std::size_t c = 0; c < O::size; ++c) {
    const double fc = O::at(s[0].value, c);
    double resk = gk15::wgk[7] * fc;
    double resg = gk15::wg[3] * fc;
    double resabs = std::abs(resk);
    for (std::size_t j = 0; j < 7; ++j) {
      const double f1 = O::at(s[1 + 2 * j].value, c);
      const double f2 = O::at(s[2 + 2 * j].value, c);
      resk += gk15::wgk[j] * (f1 + f2);
      resabs += gk15::wgk[j] * (std::abs(f1) + std::abs(f2));
      if (j % 2 == 1) resg += gk15::wg[j / 2] * (f1 + f2);
    }
    const double mean = 0.5 * resk;
    double resasc = gk15::wgk[7] * std::abs(fc - mean);
    for (std::size_t j = 0; j < 7; ++j)
      resasc += gk15::wgk[j] *
                (std::abs(O::at(s[1 + 2 * j].value, c) - mean) + std::abs(O::at(s[2 + 2 * j].value, c) - mean));
    O::at(p.value, c) = resk * half;
    p.rule_error = std::max(p.rule_error, gk_error(resk, resg, resabs, resasc, half));
  }

  double carried = gk15::wgk[7] * s[0].error;
  for (std::size_t j = 0; j < 7; ++j) carried += gk15::wgk[j] * (s[1 + 2 * j].error + s[2 + 2 * j].error);
  p.carried_error = carried * std::abs(half);
  return p;
}

template <typename V>
struct AdaptiveOutcome {
  V value{};
  double error = 0.0;
  bool converged = false;
};

// Globally adaptive bisection on [a, b]: always split the panel with the
// largest rule error until the summed error meets the tolerance.
template <typename V, typename F>
AdaptiveOutcome<V> adaptive(F&& f, double a, double b, const IntegrationSpec& spec, int initial_panels) {
  using O = Ops<V>;
  std::vector<Panel<V>> panels;
  panels.reserve(static_cast<std::size_t>(spec.max_subdivisions) + 1);
  for (int k = 0; k < initial_panels; ++k) {
    const double lo = a + (b - a) * k / initial_panels;
    const double hi = (k + 1 == initial_panels) ? b : a + (b - a) * (k + 1) / initial_panels;
    panels.push_back(gk15_panel<V>(f, lo, hi));
  }

  AdaptiveOutcome<V> out;
  while (true) {
    V total{};
    double rule = 0.0;
    double carried = 0.0;
    std::size_t worst = 0;
    for (std::size_t k = 0; k < panels.size(); ++k) {
      for (std::size_t c = 0; c < O::size; ++c) O::at(total, c) += O::at(panels[k].value, c);
      rule += panels[k].rule_error;
      carried += panels[k].carried_error;
      if (panels[k].rule_error > panels[worst].rule_error) worst = k;
    }
    out.value = total;
    out.error = rule + carried;
    const double tol = std::max(spec.rel_tol * max_abs(total), spec.abs_tol);
    if (out.error <= tol) {
      out.converged = true;
      return out;
    }
    // Refining this axis cannot reduce error inherited from the inner axes.
    if (carried > tol) return out;
    if (static_cast<int>(panels.size()) >= spec.max_subdivisions) return out;

    const Panel<V> p = panels[worst];
    const double mid = 0.5 * (p.a + p.b);
    if (!(mid > p.a && mid < p.b)) return out;
    panels[worst] = gk15_panel<V>(f, p.a, mid);
    panels.push_back(gk15_panel<V>(f, mid, p.b));
  }
}

// Maps a Range onto a finite u-interval. `jacobian` returns dx/du.
struct AxisMap {
  double u_lo;
  double u_hi;
  double origin;
  double scale;
  int kind;  // 0 finite, 1 whole line, 2 [lower, ∞), 3 (-∞, upper]

  explicit AxisMap(const Range& r);

  // Returns false where the map leaves double range; such nodes contribute 0.
  bool operator()(double u, double& x, double& jacobian) const {
    switch (kind) {
      case 0:
        x = u;
        jacobian = 1.0;
        return true;
      default: {
        const double t = std::tan(u);
        jacobian = scale * (1.0 + t * t);
        x = (kind == 3) ? origin - scale * t : origin + scale * t;
        return std::isfinite(x) && std::isfinite(jacobian);
      }
    }
  }
  int initial_panels() const { return kind == 0 ? 1 : 8; }
};

inline AxisMap::AxisMap(const Range& r) : u_lo(0), u_hi(0), origin(0), scale(r.scale), kind(0) {
  const bool lo_inf = std::isinf(r.lower);
  const bool hi_inf = std::isinf(r.upper);
  if (!(r.lower < r.upper)) throw std::invalid_argument("Range: lower must be below upper");
  if ((lo_inf || hi_inf) && !(r.scale > 0.0 && std::isfinite(r.scale)))
    throw std::invalid_argument("Range: scale must be positive for unbounded ranges");
  const double half_pi = 0.5 * 3.14159265358979323846;
  if (lo_inf && hi_inf) {
    kind = 1;
    origin = r.center;
    u_lo = -half_pi;
    u_hi = half_pi;
  } else if (hi_inf) {
    kind = 2;
    origin = r.lower;
    u_hi = half_pi;
  } else if (lo_inf) {
    kind = 3;
    origin = r.upper;
    u_hi = half_pi;
  } else {
    u_lo = r.lower;
    u_hi = r.upper;
  }
}

template <typename V, typename F>
AdaptiveOutcome<V> integrate_axis(F&& sample_at_x, const Range& range, const IntegrationSpec& spec) {
  const AxisMap map(range);
  auto mapped = [&](double u) {
    double x = 0.0;
    double jac = 0.0;
    if (!map(u, x, jac)) return Sample<V>{};
    Sample<V> s = sample_at_x(x);
    for (std::size_t c = 0; c < Ops<V>::size; ++c) Ops<V>::at(s.value, c) *= jac;
    s.error *= jac;
    return s;
  };
  return adaptive<V>(mapped, map.u_lo, map.u_hi, spec, map.initial_panels());
}

// Tolerance handed to nested inner integrals.
inline IntegrationSpec inner_spec(const IntegrationSpec& spec) {
  return {spec.rel_tol * 0.1, spec.abs_tol * 0.1, spec.max_subdivisions};
}

template <typename V>
std::vector<double> to_vector(const V& v) {
  std::vector<double> out(Ops<V>::size);
  for (std::size_t c = 0; c < out.size(); ++c) out[c] = Ops<V>::at(v, c);
  return out;
}

}  // namespace detail

/// ∫ f(x) dx.
QuadratureResult integrate_1d(const std::function<double(double)>& f, const Range& x_range,
                              const IntegrationSpec& spec = {});

/// ∫∫ f(x, y) dy dx with y innermost.
QuadratureResult integrate_2d(const std::function<double(double, double)>& f, const Range& x_range,
                              const Range& y_range, const IntegrationSpec& spec = {});

/// Vector-valued ∫∫∫ f(x, y, z) dz dy dx. f must be side-effect free.
/// Tolerance is measured against the largest component.
template <std::size_t N, typename F>
VectorQuadratureResult<N> integrate_3d(F&& f, const Range& x_range, const Range& y_range, const Range& z_range,
                                       const IntegrationSpec& spec = {}) {
  spec.validate();
  using V = std::array<double, N>;
  std::size_t evaluations = 0;
  const IntegrationSpec mid = detail::inner_spec(spec);
  const IntegrationSpec inner = detail::inner_spec(mid);

  auto over_x = [&](double x) {
    auto over_y = [&](double y) {
      auto over_z = [&](double z) {
        ++evaluations;
        return detail::Sample<V>{f(x, y, z), 0.0};
      };
      auto r = detail::integrate_axis<V>(over_z, z_range, inner);
      return detail::Sample<V>{r.value, r.error};
    };
    auto r = detail::integrate_axis<V>(over_y, y_range, mid);
    return detail::Sample<V>{r.value, r.error};
  };
  // Inner shortfalls are already in the carried error.
  auto r = detail::integrate_axis<V>(over_x, x_range, spec);
  if (!r.converged) {
    throw QuadratureError("integrate_3d: no convergence within " + std::to_string(spec.max_subdivisions) +
                              " subdivisions (error estimate " + std::to_string(r.error) + ")",
                          detail::to_vector(r.value), r.error, evaluations);
  }
  return {r.value, r.error, evaluations};
}

/// The V(α) / U(α) spin-flip weight of a boosted Gaussian packet:
///
///   sinh²(α/2)/(√π W³) ∫dQx ∫₀^∞ dQr Qr³ exp(-[(Qx-K)² + Qr²]/W²)
///                      / [(Q⁰+1)(Q⁰ cosh α - Qx sinh α + 1)],
///
/// Q⁰ = √(Qx² + Qr² + 1). For the infinite sentinel the boost factor
/// sinh²(α/2)/(P⁰+1) is replaced by its limit 1/(2(Q⁰ - Qx)). The result is
/// clamped to [0, 1) when it overshoots by at most 1e-10; larger excursions
/// throw QuadratureError.
QuadratureResult integral_V(const MomentumPacket& packet, const Rapidity& alpha, const IntegrationSpec& spec = {});

/// Same integral evaluated for the second signal's packet.
QuadratureResult integral_U(const MomentumPacket& packet, const Rapidity& alpha, const IntegrationSpec& spec = {});

/// sinh²(α/2)/(Q⁰cosh α − Qx sinh α + 1), evaluated without overflow or
/// cancellation; the infinite sentinel yields 1/(2(Q⁰ − Qx)).
double boost_weight(double qx, double qr, const Rapidity& alpha);

}  // namespace relchan
