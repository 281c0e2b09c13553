#pragma once

// Effective spin maps of the boosted channel on the prepared ensembles, the
// Holevo-monotonicity witnesses of non-complete-positivity, the Kraus form of
// the symmetric case and the commutator witness of spin-momentum discord.
//
// ℰ and 𝒩 are defined only on the convex hulls of the prepared signals:
// ℰ on {λτ₀ + (1−λ)τ₁}, 𝒩 on {Σ λᵢⱼ τᵢ⊗τⱼ}. Points of those sets are named
// by their mixing weights.

#include <array>
#include <functional>
#include <optional>

#include "relchan/density.hpp"
#include "relchan/linalg.hpp"
#include "relchan/spin_channel.hpp"

namespace relchan {

/// ℰ(λτ₀ + (1−λ)τ₁) = λτ₀′ + (1−λ)τ₁′.
DensityMatrix2 channel_E(const ChannelParams& params, double lambda);
DensityMatrix2 channel_E(const ChannelIntegrals& integrals, double theta, double lambda);

/// 𝒩 on the four-symbol mixture, mapping every τᵢ⊗τⱼ to τᵢ′⊗τⱼ′.
DensityMatrix4 channel_N(const ChannelParams& params, const std::array<double, 4>& lambdas);
DensityMatrix4 channel_N(const ChannelIntegrals& integrals, double theta, const std::array<double, 4>& lambdas);

/// Δ value with the propagated quadrature error of its boosted term.
struct DeltaResult {
  double value;
  double quadrature_error;
};

/// Δ₂ = χ[ℰ(τ)] − χ(τ). A positive value certifies that ℰ is not CP.
DeltaResult delta2(const ChannelParams& params, double lambda);
DeltaResult delta2(const ChannelIntegrals& integrals, double theta, double lambda);

/// Δ₄ = χ[𝒩(τ̃)] − χ(τ̃).
DeltaResult delta4(const ChannelParams& params, const std::array<double, 4>& lambdas);
DeltaResult delta4(const ChannelIntegrals& integrals, double theta, const std::array<double, 4>& lambdas);

/// Kraus operators of ℰ in the symmetric case (equal packets, θ = π/2):
/// √(1−V) I, √(V/2) σx, √(V/2) σy.
struct KrausSet {
  std::array<ComplexMatrix2, 3> ops;

  /// Σ Γ†Γ.
  ComplexMatrix2 completeness() const;
};

KrausSet kraus_set(double v);

/// Σ Γ ρ Γ†.
DensityMatrix2 apply_kraus(const KrausSet& kraus, const DensityMatrix2& rho);

/// Hilbert-Schmidt norm of [τ⊗I, ρ] for the prepared spin-momentum state:
/// λ(1−λ)|cosθ| ‖φ↑φθ† − φθφ↑†‖ ‖ρ₁ − ρ₀‖ with ‖ρ₁ − ρ₀‖ = √(2 − 2|⟨f₀|f₁⟩|²).
double discord_witness(const ChannelParams& params, double lambda);

/// Bisects a sign change of `f` on [lo, hi] down to `tol`. Returns nullopt
/// when f(lo) and f(hi) share a sign.
std::optional<double> bisect_root(const std::function<double(double)>& f, double lo, double hi, double tol = 1e-4);

/// Smallest angle ϑ in (lo, hi) where Δ₂(θ) changes sign, located by a grid
/// scan of `scan_steps` intervals followed by bisection to `tol`.
std::optional<double> delta2_crossing(const ChannelIntegrals& integrals, double lambda, double lo, double hi,
                                      int scan_steps = 64, double tol = 1e-4);

std::optional<double> delta4_crossing(const ChannelIntegrals& integrals, const std::array<double, 4>& lambdas,
                                      double lo, double hi, int scan_steps = 64, double tol = 1e-4);

}  // namespace relchan
