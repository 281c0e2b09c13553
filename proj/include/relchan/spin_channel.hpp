#pragma once

// Reduced spin states seen by a boosted receiver, von Neumann entropies and
// Holevo quantities for the two- and four-symbol encodings. Entropies are in
// bits.

#include <array>
#include <span>
#include <vector>

#include "relchan/density.hpp"
#include "relchan/quadrature.hpp"
#include "relchan/rapidity.hpp"
#include "relchan/states.hpp"

namespace relchan {

/// Fixed channel context: boost, the two signal packets, the spin angle of
/// ψ₁ and the quadrature tolerance for V and U.
struct ChannelParams {
  Rapidity alpha{0.0};
  MomentumPacket packet0{1.0, 0.05};
  MomentumPacket packet1{50.0, 6.0};
  double theta = 0.0;
  IntegrationSpec spec{};

  void validate() const;
};

/// V(α) for ψ₀'s packet and U(α) for ψ₁'s packet.
struct ChannelIntegrals {
  QuadratureResult v;
  QuadratureResult u;
};

ChannelIntegrals channel_integrals(const ChannelParams& params);

struct HolevoReport {
  double chi = 0.0;
  double ensemble_entropy = 0.0;
  std::vector<double> conditional_entropies;
  std::vector<double> ensemble_eigenvalues;
  std::vector<std::vector<double>> conditional_eigenvalues;
  /// First-order bound on |Δχ| from the V/U quadrature errors; 0 when no
  /// quadrature was involved.
  double quadrature_error = 0.0;
};

/// diag(1 − V, V). V must lie in [0, 1).
DensityMatrix2 boosted_tau0(double v);

/// [[A, B], [B, 1 − A]] with A = cos²θ(1 − U) + sin²θ U and
/// B = cosθ sinθ (1 − 4U). U must lie in [0, 1); the matrix is only a
/// state for U ≤ 1/2, which every physical boost satisfies.
DensityMatrix2 boosted_tau1(double theta, double u);

/// Closed-form spectrum of boosted_tau1: 1/2 ± √((A − 1/2)² + B²), ascending.
std::array<double, 2> boosted_tau1_eigenvalues(double theta, double u);

/// −Σ λ log₂ λ with 0·log 0 = 0. Eigenvalues within 1e-10 of [0, 1] are
/// clamped; anything further out, or a trace off by more than 1e-10, throws
/// InvalidStateError.
double entropy_bits(std::span<const double> eigenvalues);

double von_neumann_entropy(const DensityMatrix2& rho);
double von_neumann_entropy(const DensityMatrix4& rho);

/// Shannon entropy of a probability vector in bits.
double shannon_entropy(std::span<const double> probs);

/// χ = S(Σ pᵢ ρᵢ) − Σ pᵢ S(ρᵢ). Throws std::invalid_argument for a size
/// mismatch or an invalid probability vector.
HolevoReport holevo(std::span<const double> probs, std::span<const DensityMatrix2> states);
HolevoReport holevo(std::span<const double> probs, std::span<const DensityMatrix4> states);

/// Rest-frame two-symbol χ(τ) from β± = 1/2 ± ½√(1 + 4 sin²θ (λ² − λ)).
HolevoReport holevo_rest2(double lambda, double theta);

/// Rest-frame four-symbol χ(τ̃) = S(τ̃).
HolevoReport holevo_rest4(const std::array<double, 4>& lambdas, double theta);

/// Boosted two-symbol χ(τ′) = −Σγ log γ + λ Σδ log δ + (1−λ) Σε log ε.
HolevoReport holevo_boosted2(const ChannelParams& params, double lambda);
HolevoReport holevo_boosted2(const ChannelIntegrals& integrals, double theta, double lambda);

/// Boosted four-symbol χ(τ̃′) via
///   −Σγ̃ log γ̃ − 2λ₁S(τ₀′) − 2λ₄S(τ₁′) − (λ₂+λ₃)[S(τ₀′) + S(τ₁′)].
/// Also evaluates the generic Holevo sum over the four product states and
/// throws std::logic_error if the two disagree by more than 1e-9.
HolevoReport holevo_boosted4(const ChannelParams& params, const std::array<double, 4>& lambdas);
HolevoReport holevo_boosted4(const ChannelIntegrals& integrals, double theta, const std::array<double, 4>& lambdas);

/// The generic path: holevo() over τᵢ′⊗τⱼ′.
HolevoReport holevo_boosted4_generic(double v, double u, double theta, const std::array<double, 4>& lambdas);

/// τ′ = λτ₀′ + (1 − λ)τ₁′.
DensityMatrix2 boosted_tau(double v, double u, double theta, double lambda);

/// τ̃′ = λ₁τ₀′⊗τ₀′ + λ₂τ₀′⊗τ₁′ + λ₃τ₁′⊗τ₀′ + λ₄τ₁′⊗τ₁′.
DensityMatrix4 boosted_tau4(double v, double u, double theta, const std::array<double, 4>& lambdas);

}  // namespace relchan
