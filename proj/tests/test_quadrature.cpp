#include <cmath>
#include <cstring>
#include <numbers>
#include <random>

#include "doctest.h"
#include "relchan/quadrature.hpp"

using namespace relchan;

namespace {

// V(α) by the textbook integrand, no rescaling. Only safe for moderate |α|.
double direct_V(const MomentumPacket& p, double alpha) {
  const double k = p.mean();
  const double w = p.width();
  const double s2 = std::pow(std::sinh(0.5 * alpha), 2);
  auto f = [&](double qx, double qr) {
    const double q0 = std::sqrt(qx * qx + qr * qr + 1.0);
    const double g = std::pow(qr, 3) * std::exp(-((qx - k) * (qx - k) + qr * qr) / (w * w));
    return g / ((q0 + 1.0) * (q0 * std::cosh(alpha) - qx * std::sinh(alpha) + 1.0));
  };
  const auto r = integrate_2d(f, Range::whole_line(k, w), Range::half_line(0.0, w), {1e-11, 1e-300, 4000});
  return s2 / (std::sqrt(std::numbers::pi) * w * w * w) * r.value;
}

}  // namespace

TEST_CASE("integrate_1d on standard integrals") {
  const auto r = integrate_1d([](double x) { return std::exp(-x * x); }, Range::whole_line());
  CHECK(r.value == doctest::Approx(std::sqrt(std::numbers::pi)).epsilon(1e-12));
  CHECK(r.error_estimate <= 1e-8 * r.value);

  const auto s = integrate_1d([](double x) { return std::sin(x); }, Range::finite(0.0, std::numbers::pi));
  CHECK(s.value == doctest::Approx(2.0).epsilon(1e-12));

  const auto h = integrate_1d([](double x) { return std::exp(-x); }, Range::half_line(0.0, 1.0));
  CHECK(h.value == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("integrate_2d examples") {
  const auto g = integrate_2d([](double x, double y) { return std::exp(-x * x - y * y); }, Range::whole_line(),
                              Range::half_line());
  CHECK(std::abs(g.value - std::numbers::pi / 2) < 1e-8);

  const auto c = integrate_2d([](double x, double y) { return y * y * y * std::exp(-x * x - y * y); },
                              Range::whole_line(), Range::half_line());
  CHECK(std::abs(c.value - std::sqrt(std::numbers::pi) / 2) < 1e-8);

  const auto z = integrate_2d([](double, double) { return 0.0; }, Range::whole_line(), Range::half_line());
  CHECK(z.value == 0.0);
  CHECK(z.error_estimate == 0.0);
}

TEST_CASE("integrate_2d handles an off-centre bump when the map is centred on it") {
  const double k = 50.0;
  const double w = 6.0;
  auto f = [&](double x, double y) { return std::exp(-((x - k) * (x - k) + y * y) / (w * w)); };
  const auto r = integrate_2d(f, Range::whole_line(k, w), Range::half_line(0.0, w));
  CHECK(r.value == doctest::Approx(std::numbers::pi * w * w / 2).epsilon(1e-9));
}

TEST_CASE("integrate_3d vector components") {
  auto f = [](double x, double y, double z) {
    const double g = std::exp(-x * x - y * y - z * z);
    return std::array<double, 2>{g, x * x * g};
  };
  const auto r = integrate_3d<2>(f, Range::whole_line(), Range::whole_line(), Range::whole_line());
  const double pi32 = std::pow(std::numbers::pi, 1.5);
  CHECK(r.value[0] == doctest::Approx(pi32).epsilon(1e-9));
  CHECK(r.value[1] == doctest::Approx(pi32 / 2).epsilon(1e-9));
}

TEST_CASE("non-convergence carries the best estimate") {
  auto f = [](double x) { return std::cos(200.0 * x) * std::exp(-x * x); };
  try {
    integrate_1d(f, Range::whole_line(), {1e-14, 1e-300, 2});
    FAIL("expected QuadratureError");
  } catch (const QuadratureError& e) {
    CHECK(e.best_value().size() == 1);
    CHECK(std::isfinite(e.best().value));
    CHECK(e.error_estimate() > 0.0);
  }
}

TEST_CASE("integration spec validation") {
  CHECK_THROWS_AS((IntegrationSpec{0.0, 1e-14, 10}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((IntegrationSpec{1e-8, -1.0, 10}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((IntegrationSpec{1e-8, 1e-14, 0}.validate()), std::invalid_argument);
  CHECK_NOTHROW(IntegrationSpec{}.validate());
}

TEST_CASE("V vanishes exactly at zero rapidity") {
  for (auto p : {MomentumPacket{1.0, 0.05}, MomentumPacket{50.0, 6.0}, MomentumPacket{0.0, 1.0}}) {
    CHECK(integral_V(p, Rapidity(0.0)).value == 0.0);
    CHECK(integral_U(p, Rapidity(0.0)).value == 0.0);
  }
}

TEST_CASE("V is positive away from zero rapidity") {
  for (double a : {-3.0, -0.1, 1e-3, 0.5, 4.0}) {
    const double v = integral_V({1.0, 1.0}, Rapidity(a)).value;
    CHECK(v > 0.0);
    CHECK(v < 1.0);
  }
}

TEST_CASE("V at large rapidity approaches the infinite-boost integrand") {
  for (double w : {0.05, 1.0, 6.0, 10.0}) {
    for (double k : {-100.0, -10.0, 0.0, 1.0, 50.0, 100.0}) {
      CAPTURE(w);
      CAPTURE(k);
      const MomentumPacket p{k, w};
      const double v20 = integral_V(p, Rapidity(20.0)).value;
      const double vinf = integral_V(p, Rapidity::infinite()).value;
      CHECK(std::abs(v20 - vinf) < 1e-6);
      CHECK(vinf > 0.0);
      CHECK(vinf <= 0.5);
    }
  }
}

TEST_CASE("narrow packets barely feel the boost") {
  CHECK(integral_V({1.0, 0.05}, Rapidity(2.0)).value < 0.05);
}

TEST_CASE("frozen V/U values") {
  CHECK(integral_V({1.0, 0.05}, Rapidity(0.5)).value == doctest::Approx(1.5906234e-05).epsilon(1e-6));
  CHECK(integral_U({50.0, 6.0}, Rapidity(0.5)).value == doctest::Approx(7.0466470e-04).epsilon(1e-6));
  CHECK(integral_U({50.0, 6.0}, Rapidity(2.0)).value == doctest::Approx(0.047678446).epsilon(1e-6));
}

TEST_CASE("rescaled evaluation matches the textbook integrand for both signs of alpha") {
  for (double a : {-2.0, -0.5, 0.5, 2.0}) {
    for (auto p : {MomentumPacket{1.0, 1.0}, MomentumPacket{-3.0, 2.0}, MomentumPacket{50.0, 6.0}}) {
      CAPTURE(a);
      CAPTURE(p.mean());
      const double v = integral_V(p, Rapidity(a), {1e-11, 1e-300, 4000}).value;
      CHECK(v == doctest::Approx(direct_V(p, a)).epsilon(1e-9));
    }
  }
  // Opposite rapidities differ because the packet mean is off-axis.
  const MomentumPacket p{1.0, 1.0};
  CHECK(integral_V(p, Rapidity(1.0)).value != doctest::Approx(integral_V(p, Rapidity(-1.0)).value));
}

TEST_CASE("V and U share one implementation") {
  const MomentumPacket p{50.0, 6.0};
  for (double a : {0.3, 2.0, 7.0}) {
    const auto v = integral_V(p, Rapidity(a));
    const auto u = integral_U(p, Rapidity(a));
    CHECK(std::memcmp(&v.value, &u.value, sizeof(double)) == 0);
  }
}

TEST_CASE("U for a fast wide packet agrees with a Monte Carlo estimate") {
  const double k = 50.0;
  const double w = 6.0;
  const double alpha = 5.0;
  // |f|² is a product of N(mean, W²/2) densities.
  std::mt19937_64 rng(20240501);
  std::normal_distribution<double> nx(k, w / std::sqrt(2.0));
  std::normal_distribution<double> nt(0.0, w / std::sqrt(2.0));
  const double s2 = std::pow(std::sinh(0.5 * alpha), 2);
  const double ch = std::cosh(alpha);
  const double sh = std::sinh(alpha);
  constexpr int n = 10'000'000;
  double sum = 0.0;
  double sum2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double qx = nx(rng);
    const double qy = nt(rng);
    const double qz = nt(rng);
    const double q0 = std::sqrt(qx * qx + qy * qy + qz * qz + 1.0);
    const double x = s2 * qz * qz / ((q0 + 1.0) * (q0 * ch - qx * sh + 1.0));
    sum += x;
    sum2 += x * x;
  }
  const double mean = sum / n;
  const double sigma = std::sqrt((sum2 / n - mean * mean) / n);
  const double u = integral_U({k, w}, Rapidity(alpha)).value;
  CHECK(u > 0.0);
  CHECK(u < 1.0);
  CHECK(std::abs(u - mean) < 3.0 * sigma);
}

TEST_CASE("boost_weight") {
  CHECK(boost_weight(0.3, 0.4, Rapidity(0.0)) == 0.0);
  const double qx = 0.7;
  const double qr = 1.1;
  const double q0 = std::sqrt(qx * qx + qr * qr + 1.0);
  for (double a : {-1.5, 0.2, 3.0}) {
    const double expected = std::pow(std::sinh(a / 2), 2) / (q0 * std::cosh(a) - qx * std::sinh(a) + 1.0);
    CHECK(boost_weight(qx, qr, Rapidity(a)) == doctest::Approx(expected).epsilon(1e-13));
  }
  CHECK(boost_weight(qx, qr, Rapidity::infinite()) == doctest::Approx(0.5 / (q0 - qx)).epsilon(1e-14));
  CHECK(std::isfinite(boost_weight(qx, qr, Rapidity(800.0))));
  CHECK(boost_weight(qx, qr, Rapidity(800.0)) == doctest::Approx(0.5 / (q0 - qx)).epsilon(1e-14));
  // Far along the boost direction Q⁰ − Qx cancels catastrophically unless rewritten.
  const double big = 1e9;
  CHECK(boost_weight(big, 0.0, Rapidity::infinite()) == doctest::Approx(big).epsilon(1e-9));
}
