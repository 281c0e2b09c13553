#pragma once

// Lorentz kinematics on two-spinors for a boost along x.
//
// Conventions (unit mass): the receiver-frame momentum p and the sender-frame
// momentum q are related by q = Λ p with Λ the x-boost of rapidity α, so
//
//   p⁰ = q⁰ cosh α − q_x sinh α.
//
// The Wigner rotation below is the one that makes p ↦ q a unitary map on
// spinor wave functions under that convention.

#include <utility>

#include "relchan/density.hpp"
#include "relchan/linalg.hpp"
#include "relchan/quadrature.hpp"
#include "relchan/rapidity.hpp"
#include "relchan/states.hpp"

namespace relchan {

/// On-shell four-momentum in units of the mass.
class FourMomentum {
 public:
  /// Builds (√(|q|²+1), q).
  static FourMomentum on_shell(const Vec3& momentum);

  /// Rejects (energy, momentum) pairs off the mass shell by more than 1e-12
  /// relative to the energy.
  FourMomentum(double energy, const Vec3& momentum);

  double energy() const { return energy_; }
  const Vec3& momentum() const { return momentum_; }

 private:
  FourMomentum(double energy, const Vec3& momentum, bool /*trusted*/) : energy_(energy), momentum_(momentum) {}

  double energy_;
  Vec3 momentum_;
};

/// Identity except the (t, x) block [[cosh α, sinh α], [sinh α, cosh α]].
RealMatrix4 boost_matrix(const Rapidity& alpha);

/// Receiver-frame four-momentum p = Λ⁻¹ q of a sender-frame momentum q.
FourMomentum receiver_momentum(const Rapidity& alpha, const FourMomentum& q);

/// Sender-frame four-momentum q = Λ p.
FourMomentum sender_momentum(const Rapidity& alpha, const FourMomentum& p);

/// Wigner rotation D(Λ, q) induced on the spin of a particle with
/// sender-frame momentum q:
///
///   D = [C(q⁰+1) − S(q_x + i (e_x × q)·σ)] / √((p⁰+1)(q⁰+1)),
///
/// C = cosh(α/2), S = sinh(α/2). Unitary for every finite α and on-shell q.
ComplexMatrix2 wigner_d(const Rapidity& alpha, const FourMomentum& q);

/// Boosted spin-up wave function at receiver-frame momentum p:
///   a = K f(q) [C(q⁰+1) − S(q_x + i q_y)],  b = −K f(q) S q_z,
///   K = √(q⁰/p⁰) / √((q⁰+1)(p⁰+1)).
/// The boosted spin-down wave function is (−b, a*).
std::pair<Complex, Complex> boosted_components(const MomentumPacket& packet, const Rapidity& alpha, const Vec3& p);

struct OracleResult {
  DensityMatrix2 rho;
  double error_estimate;
  std::size_t evaluations;
};

/// Reduced spin state of a boosted signal by brute-force 3D quadrature of
/// ∫ d³q D ψ(q) ψ(q)† D†. Throws QuadratureError on non-convergence.
OracleResult boosted_density_oracle(const PureSpinorState& state, const Rapidity& alpha,
                                    const IntegrationSpec& spec = {});

}  // namespace relchan
