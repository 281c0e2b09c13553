#include <cmath>
#include <random>

#include "doctest.h"
#include "relchan/relativity.hpp"
#include "relchan/spin_channel.hpp"
#include "test_support.hpp"

using namespace relchan;
using relchan::testing::kPi;

namespace {

RealMatrix4 minkowski() {
  RealMatrix4 eta = RealMatrix4::identity() * -1.0;
  eta(0, 0) = 1.0;
  return eta;
}

double max_entry_diff(const ComplexMatrix2& a, const RealMatrix2& b) { return max_abs_diff(a, to_complex(b)); }

}  // namespace

TEST_CASE("boost_matrix") {
  CHECK(max_abs_diff(boost_matrix(Rapidity(0.0)), RealMatrix4::identity()) == 0.0);

  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  const RealMatrix4 eta = minkowski();
  for (int i = 0; i < 50; ++i) {
    const double a = u(rng);
    const RealMatrix4 l = boost_matrix(Rapidity(a));
    CHECK(max_abs_diff(l * boost_matrix(Rapidity(-a)), RealMatrix4::identity()) < 1e-12 * std::cosh(2 * a));
    CHECK(max_abs_diff(testing::transpose(l) * eta * l, eta) < 1e-12 * std::cosh(2 * a));
  }

  const RealMatrix4 l1 = boost_matrix(Rapidity(1.0));
  CHECK(l1(0, 0) == doctest::Approx(1.5430806).epsilon(1e-7));
  CHECK(l1(1, 0) == doctest::Approx(1.1752012).epsilon(1e-7));
  CHECK(l1(2, 0) == 0.0);
  CHECK(l1(3, 0) == 0.0);

  CHECK_THROWS_AS(boost_matrix(Rapidity::infinite()), std::domain_error);
}

TEST_CASE("rapidity") {
  CHECK(Rapidity(0.5).velocity() == doctest::Approx(-std::tanh(0.5)));
  CHECK(Rapidity::infinite().velocity() == -1.0);
  CHECK(Rapidity::infinite().is_infinite());
  CHECK_THROWS_AS(Rapidity::infinite().value(), std::domain_error);
  CHECK_THROWS_AS(Rapidity(std::nan("")), std::invalid_argument);
  CHECK_THROWS_AS(Rapidity(-HUGE_VAL), std::invalid_argument);
}

TEST_CASE("four-momenta") {
  const auto q = FourMomentum::on_shell({1.0, 2.0, 2.0});
  CHECK(q.energy() == doctest::Approx(std::sqrt(10.0)));
  CHECK_NOTHROW(FourMomentum(std::sqrt(10.0), {1.0, 2.0, 2.0}));
  CHECK_THROWS_AS(FourMomentum(3.0, {1.0, 2.0, 2.0}), std::invalid_argument);

  // Receiver and sender frames are inverse to each other and match Λ⁻¹ acting on q.
  const Rapidity a(0.8);
  const auto p = receiver_momentum(a, q);
  const auto back = sender_momentum(a, p);
  CHECK(back.momentum()[0] == doctest::Approx(1.0).epsilon(1e-13));
  const RealMatrix4 inv = boost_matrix(Rapidity(-0.8));
  const double px = inv(1, 0) * q.energy() + inv(1, 1) * q.momentum()[0];
  const double p0 = inv(0, 0) * q.energy() + inv(0, 1) * q.momentum()[0];
  CHECK(p.momentum()[0] == doctest::Approx(px).epsilon(1e-13));
  CHECK(p.energy() == doctest::Approx(p0).epsilon(1e-13));
  CHECK(p0 == doctest::Approx(q.energy() * std::cosh(0.8) - q.momentum()[0] * std::sinh(0.8)).epsilon(1e-13));
}

TEST_CASE("wigner_d is the identity without a boost or without motion") {
  const auto q = FourMomentum::on_shell({0.3, -1.2, 0.7});
  CHECK(max_abs_diff(wigner_d(Rapidity(0.0), q), ComplexMatrix2::identity()) < 1e-15);
  for (double a : {-3.0, 0.5, 2.0, 7.0})
    CHECK(max_abs_diff(wigner_d(Rapidity(a), FourMomentum::on_shell({0, 0, 0})), ComplexMatrix2::identity()) <
          1e-12);
  CHECK_THROWS_AS(wigner_d(Rapidity::infinite(), q), std::domain_error);
}

TEST_CASE("wigner_d is unitary") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> ua(-5.0, 5.0);
  std::uniform_real_distribution<double> uq(-10.0, 10.0);
  for (int i = 0; i < 500; ++i) {
    const auto q = FourMomentum::on_shell({uq(rng), uq(rng), uq(rng)});
    const auto d = wigner_d(Rapidity(ua(rng)), q);
    CHECK(max_abs_diff(adjoint(d) * d, ComplexMatrix2::identity()) < 1e-12);
  }
}

TEST_CASE("wigner_d off-diagonal comes from the transverse momentum") {
  const double a = 1.0;
  const auto q = FourMomentum::on_shell({0.0, 0.0, 1.0});
  const auto d = wigner_d(Rapidity(a), q);
  const double q0 = std::sqrt(2.0);
  const double p0 = q0 * std::cosh(a);
  const double expected = std::sinh(a / 2) / std::sqrt((p0 + 1.0) * (q0 + 1.0));
  CHECK(std::abs(d(0, 1)) == doctest::Approx(expected).epsilon(1e-14));
  CHECK(std::abs(d(1, 0)) == doctest::Approx(expected).epsilon(1e-14));
  CHECK(std::abs(d(0, 1)) > 0.1);

  const auto along = wigner_d(Rapidity(a), FourMomentum::on_shell({2.0, 0.0, 0.0}));
  CHECK(std::abs(along(0, 1)) == 0.0);
  CHECK(std::abs(along(0, 0)) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("boosted_components") {
  const MomentumPacket p{0.4, 1.3};
  const Vec3 k{0.2, -0.1, 0.5};
  const auto [a0, b0] = boosted_components(p, Rapidity(0.0), k);
  CHECK(a0 == Complex(packet_value(p, k), 0.0));
  CHECK(b0 == Complex(0.0, 0.0));

  for (double a : {-2.0, 0.3, 1.5}) {
    const auto [ab, bb] = boosted_components(p, Rapidity(a), {0.7, 0.4, 0.0});
    CHECK(bb == Complex(0.0, 0.0));
    CHECK(std::abs(ab) > 0.0);
  }
  CHECK_THROWS_AS(boosted_components(p, Rapidity::infinite(), k), std::domain_error);
}

TEST_CASE("boosted components stay normalized") {
  const MomentumPacket p{0.0, 1.0};
  const double a = 1.0;
  auto f = [&](double x, double y, double z) {
    const auto [u, v] = boosted_components(p, Rapidity(a), {x, y, z});
    return std::array<double, 1>{std::norm(u) + std::norm(v)};
  };
  const auto r = integrate_3d<1>(f, Range::whole_line(-std::sinh(a), std::cosh(a)), Range::whole_line(),
                                 Range::whole_line(), {1e-8, 1e-14, 2000});
  CHECK(std::abs(r.value[0] - 1.0) < 1e-6);
}

TEST_CASE("brute-force density matrix matches the closed forms") {
  const MomentumPacket p{0.0, 1.0};
  const Rapidity a(1.0);
  const double v = integral_V(p, a).value;

  SUBCASE("identity at rest") {
    const auto r = boosted_density_oracle({p, 0.0}, Rapidity(0.0), {1e-8, 1e-14, 2000});
    CHECK(max_entry_diff(r.rho.matrix(), spin_projector(0.0)) < 1e-8);
  }
  SUBCASE("spin up") {
    const auto r = boosted_density_oracle({p, 0.0}, a, {1e-8, 1e-14, 2000});
    CHECK(max_abs_diff(r.rho.matrix(), boosted_tau0(v).matrix()) < 1e-6);
    CHECK(r.rho.eigenvalues()[0] > -1e-9);
  }
  SUBCASE("tilted spin") {
    const auto r = boosted_density_oracle({p, kPi / 4}, a, {1e-8, 1e-14, 2000});
    CHECK(max_abs_diff(r.rho.matrix(), boosted_tau1(kPi / 4, v).matrix()) < 1e-6);
    CHECK(max_abs_diff(r.rho.matrix(), adjoint(r.rho.matrix())) < 1e-12);
    CHECK(std::abs(r.rho.matrix().trace().real() - 1.0) < 1e-7);
    CHECK(r.rho.eigenvalues()[0] > -1e-9);
  }
}
