#pragma once

// Rest-frame signal states: Gaussian momentum packets, the two signal
// spinors and their reduced spin density operators.
//
// All momenta are in units of the particle mass.

#include <array>

#include "relchan/density.hpp"

namespace relchan {

using Vec3 = std::array<double, 3>;

/// Normalized Gaussian momentum amplitude with mean (K, 0, 0) and width W.
class MomentumPacket {
 public:
  MomentumPacket(double mean, double width);

  /// Rejects means with a nonzero y or z component.
  static MomentumPacket from_mean_vector(const Vec3& mean, double width);

  double mean() const { return mean_; }
  double width() const { return width_; }

  friend bool operator==(const MomentumPacket&, const MomentumPacket&) = default;

 private:
  double mean_;
  double width_;
};

/// Packet ⊗ (cos θ, sin θ). θ = 0 is the spin-up signal ψ₀.
struct PureSpinorState {
  MomentumPacket packet;
  double theta = 0.0;
};

/// Two-symbol source: ψ₀ with probability λ, ψ₁ with 1 − λ.
class Ensemble2 {
 public:
  /// `state0` must have θ = 0.
  Ensemble2(double lambda, PureSpinorState state0, PureSpinorState state1);

  double lambda() const { return lambda_; }
  const PureSpinorState& state0() const { return state0_; }
  const PureSpinorState& state1() const { return state1_; }

 private:
  double lambda_;
  PureSpinorState state0_;
  PureSpinorState state1_;
};

/// Four-symbol source over the products ψ₀⊗ψ₀, ψ₀⊗ψ₁, ψ₁⊗ψ₀, ψ₁⊗ψ₁.
class Ensemble4 {
 public:
  Ensemble4(const std::array<double, 4>& lambdas, PureSpinorState state0, PureSpinorState state1);

  const std::array<double, 4>& lambdas() const { return lambdas_; }
  const PureSpinorState& state0() const { return state0_; }
  const PureSpinorState& state1() const { return state1_; }

 private:
  std::array<double, 4> lambdas_;
  PureSpinorState state0_;
  PureSpinorState state1_;
};

/// Throws std::invalid_argument unless every entry is in [0,1] and the sum is
/// 1 within 1e-12.
void validate_probabilities4(const std::array<double, 4>& lambdas);

/// π^{-3/4} W^{-3/2} exp(-|Q - (K,0,0)|² / 2W²).
double packet_value(const MomentumPacket& packet, const Vec3& q);

/// ∫ f₀ f₁ d³Q in closed form.
double packet_overlap(const MomentumPacket& p0, const MomentumPacket& p1);

/// |⟨ψ₀|ψ₁⟩|; `s0` must be the θ = 0 signal.
double state_overlap(const PureSpinorState& s0, const PureSpinorState& s1);

/// Spin projector onto (cos θ, sin θ).
RealMatrix2 spin_projector(double theta);

DensityMatrix2 rest_tau(const Ensemble2& ensemble);
DensityMatrix4 rest_tau4(const Ensemble4& ensemble);

}  // namespace relchan
