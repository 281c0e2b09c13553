#pragma once

// Parameter sweeps that regenerate the channel figures as CSV tables.

#include <array>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "relchan/quadrature.hpp"
#include "relchan/rapidity.hpp"

namespace relchan {

enum class Experiment { fig1, fig2, fig3, fig4, fig5, custom };

std::optional<Experiment> parse_experiment(std::string_view name);
std::string_view experiment_name(Experiment e);

/// Invalid sweep configuration (maps to exit code 2).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Parses "0.3", "pi", "pi/8", "3pi/8", "-pi/4", "inf".
double parse_angle_or_number(std::string_view text);

/// Comma-separated list of parse_angle_or_number values.
std::vector<double> parse_number_list(std::string_view text);

struct SweepRange {
  double min = 0.0;
  double max = 1.0;
  int steps = 2;
  bool log_spaced = false;

  std::vector<double> values() const;
};

struct SweepConfig {
  Experiment experiment = Experiment::fig1;

  double w0 = 0.05;
  double w1 = 6.0;
  double k0 = 1.0;
  double lambda = 0.5;
  std::array<double, 4> lambdas{0.25, 0.25, 0.25, 0.25};

  /// Curves: K₁ for fig2, θ for fig3/fig4, λ for fig5. Single-valued
  /// elsewhere.
  std::vector<double> k1_values{50.0};
  std::vector<double> theta_values{0.39269908169872414};  // π/8
  std::vector<double> lambda_values{0.5};

  /// Fixed rapidity for fig4, fig5 and single-point custom runs.
  Rapidity alpha = Rapidity::infinite();
  /// Swept rapidities for fig2, fig3 and custom (0 and ∞ are appended).
  std::optional<SweepRange> alpha_range = SweepRange{0.05, 12.0, 40, true};
  bool alpha_sweep = true;

  SweepRange theta_range{0.0, 3.14159265358979323846, 181, false};
  SweepRange w1_range{0.25, 10.0, 40, false};

  IntegrationSpec spec = IntegrationSpec::sweep();
  unsigned threads = 0;  // 0: hardware concurrency

  /// Default packets, curves and rapidities for each experiment.
  static SweepConfig defaults_for(Experiment e);

  /// Throws ConfigError.
  void validate() const;

  /// Rapidity grid for α sweeps: {0} ∪ range ∪ {∞}, or the fixed α.
  std::vector<Rapidity> alpha_grid() const;
};

struct SweepRow {
  std::vector<double> values;
  bool failed = false;
};

struct SweepTable {
  std::vector<std::string> comments;
  std::vector<std::string> columns;
  std::vector<SweepRow> rows;

  bool any_failed() const;
  /// Index of a column; throws std::out_of_range when absent.
  std::size_t column(std::string_view name) const;
};

SweepTable run_fig1(const SweepConfig& config);
SweepTable run_fig2(const SweepConfig& config);
SweepTable run_fig3(const SweepConfig& config);
SweepTable run_fig4(const SweepConfig& config);
SweepTable run_fig5(const SweepConfig& config);
SweepTable run_custom(const SweepConfig& config);

SweepTable run_experiment(const SweepConfig& config);

/// 9 significant digits, "inf"/"nan" for non-finite values, '#' comments,
/// then the header and rows; the trailing `status` column reads ok/failed.
void write_csv(std::ostream& os, const SweepTable& table);

std::string format_number(double x);

}  // namespace relchan
