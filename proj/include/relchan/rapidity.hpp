#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>

namespace relchan {

/// Boost rapidity along x, or the +∞ sentinel for the asymptotic regime.
/// The receiver velocity is v = -tanh α.
class Rapidity {
 public:
  explicit Rapidity(double alpha) : alpha_(alpha) {
    if (std::isnan(alpha) || alpha == -std::numeric_limits<double>::infinity())
      throw std::invalid_argument("Rapidity: alpha must be finite or +inf");
  }

  static Rapidity infinite() { return Rapidity(std::numeric_limits<double>::infinity()); }

  bool is_infinite() const { return std::isinf(alpha_); }

  /// Throws std::domain_error for the +∞ sentinel.
  double value() const {
    if (is_infinite()) throw std::domain_error("Rapidity: finite value requested for the infinite sentinel");
    return alpha_;
  }

  double velocity() const { return is_infinite() ? -1.0 : -std::tanh(alpha_); }

  /// Finite value or +inf; for reporting only.
  double raw() const { return alpha_; }

  friend bool operator==(const Rapidity&, const Rapidity&) = default;

 private:
  double alpha_;
};

}  // namespace relchan
