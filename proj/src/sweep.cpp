#include "relchan/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>
#include <thread>

#include "relchan/cp_analysis.hpp"
#include "relchan/spin_channel.hpp"
#include "relchan/states.hpp"

namespace relchan {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kChiSlack = 1e-9;

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

double parse_double(std::string_view s) {
  double x = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  if (ec != std::errc() || ptr != s.data() + s.size()) throw ConfigError("not a number: '" + std::string(s) + "'");
  return x;
}

// Evaluates rows on a worker pool; results keep sweep order.
std::vector<SweepRow> parallel_rows(std::size_t n, const std::function<SweepRow(std::size_t)>& row,
                                    unsigned threads) {
  std::vector<SweepRow> out(n);
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(n, 1)));
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < n; i = next++) out[i] = row(i);
  };
  std::vector<std::jthread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(work);
  work();
  return out;
}

SweepRow failed_row(std::size_t width, std::vector<double> leading) {
  leading.resize(width, kNaN);
  return {std::move(leading), true};
}

ChannelParams channel(const SweepConfig& c, double k1, double w1, double theta, const Rapidity& alpha) {
  ChannelParams p;
  p.alpha = alpha;
  p.packet0 = MomentumPacket(c.k0, c.w0);
  p.packet1 = MomentumPacket(k1, w1);
  p.theta = theta;
  p.spec = c.spec;
  return p;
}

std::string join(const std::vector<double>& xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? "," : "") + format_number(xs[i]);
  return s;
}

std::string describe(const SweepRange& r) {
  return format_number(r.min) + ":" + format_number(r.max) + ":" + std::to_string(r.steps) +
         (r.log_spaced ? ":log" : ":linear");
}

std::vector<std::string> provenance(const SweepConfig& c) {
  std::vector<std::string> out;
  auto add = [&out](const std::string& k, const std::string& v) { out.push_back(k + "=" + v); };
  add("experiment", std::string(experiment_name(c.experiment)));
  add("w0", format_number(c.w0));
  add("w1", format_number(c.w1));
  add("k0", format_number(c.k0));
  add("k1", join(c.k1_values));
  add("theta", join(c.theta_values));
  add("lambda", join(c.lambda_values));
  add("lambdas", join({c.lambdas.begin(), c.lambdas.end()}));
  add("alpha", format_number(c.alpha.raw()));
  add("alpha_sweep", c.alpha_sweep ? "true" : "false");
  if (c.alpha_range) add("alpha_range", describe(*c.alpha_range));
  add("theta_range", describe(c.theta_range));
  add("w1_range", describe(c.w1_range));
  add("rel_tol", format_number(c.spec.rel_tol));
  add("abs_tol", format_number(c.spec.abs_tol));
  return out;
}

SweepTable make_table(const SweepConfig& c, std::vector<std::string> columns) {
  c.validate();
  SweepTable t;
  t.comments = provenance(c);
  t.columns = std::move(columns);
  return t;
}

// Holevo quantities for one (integrals, θ) point of a two-symbol sweep:
// chi, chi_rest, s_tau, s_tau0, s_tau1, v, u, chi_error, quad_error.
std::vector<double> two_symbol_columns(const ChannelIntegrals& in, double theta, double lambda) {
  const HolevoReport b = holevo_boosted2(in, theta, lambda);
  const HolevoReport r = holevo_rest2(lambda, theta);
  return {b.chi,
          r.chi,
          b.ensemble_entropy,
          b.conditional_entropies[0],
          b.conditional_entropies[1],
          in.v.value,
          in.u.value,
          b.quadrature_error,
          std::max(in.v.error_estimate, in.u.error_estimate)};
}

std::vector<double> four_symbol_columns(const ChannelIntegrals& in, double theta, const std::array<double, 4>& l) {
  const HolevoReport b = holevo_boosted4(in, theta, l);
  const HolevoReport r = holevo_rest4(l, theta);
  return {b.chi,
          r.chi,
          b.ensemble_entropy,
          b.conditional_entropies[0] / 2.0,
          b.conditional_entropies[3] / 2.0,
          in.v.value,
          in.u.value,
          b.quadrature_error,
          std::max(in.v.error_estimate, in.u.error_estimate)};
}

std::vector<double> concat(std::vector<double> a, const std::vector<double>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

}  // namespace

std::optional<Experiment> parse_experiment(std::string_view name) {
  if (name == "fig1") return Experiment::fig1;
  if (name == "fig2") return Experiment::fig2;
  if (name == "fig3") return Experiment::fig3;
  if (name == "fig4") return Experiment::fig4;
  if (name == "fig5") return Experiment::fig5;
  if (name == "custom") return Experiment::custom;
  return std::nullopt;
}

std::string_view experiment_name(Experiment e) {
  switch (e) {
    case Experiment::fig1: return "fig1";
    case Experiment::fig2: return "fig2";
    case Experiment::fig3: return "fig3";
    case Experiment::fig4: return "fig4";
    case Experiment::fig5: return "fig5";
    case Experiment::custom: return "custom";
  }
  return "unknown";
}

double parse_angle_or_number(std::string_view text) {
  const std::string s = trim(text);
  if (s.empty()) throw ConfigError("empty number");
  if (s == "inf" || s == "+inf" || s == "infinity") return std::numeric_limits<double>::infinity();

  const auto pi_pos = s.find("pi");
  if (pi_pos == std::string::npos) return parse_double(s);

  double coeff = 1.0;
  const std::string head = s.substr(0, pi_pos);
  if (head == "-") coeff = -1.0;
  else if (!head.empty() && head != "+") coeff = parse_double(head.back() == '*' ? head.substr(0, head.size() - 1) : head);

  double denom = 1.0;
  const std::string tail = s.substr(pi_pos + 2);
  if (!tail.empty()) {
    if (tail.front() != '/') throw ConfigError("cannot parse angle '" + s + "'");
    denom = parse_double(tail.substr(1));
    if (denom == 0.0) throw ConfigError("division by zero in '" + s + "'");
  }
  return coeff * kPi / denom;
}

std::vector<double> parse_number_list(std::string_view text) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const auto end = comma == std::string_view::npos ? text.size() : comma;
    out.push_back(parse_angle_or_number(text.substr(start, end - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::vector<double> SweepRange::values() const {
  std::vector<double> v(static_cast<std::size_t>(steps));
  for (int i = 0; i < steps; ++i) {
    const double t = static_cast<double>(i) / (steps - 1);
    v[i] = log_spaced ? min * std::pow(max / min, t) : min + (max - min) * t;
  }
  v.back() = max;
  return v;
}

SweepConfig SweepConfig::defaults_for(Experiment e) {
  SweepConfig c;
  c.experiment = e;
  const std::vector<double> angle_curves{0.0, kPi / 10, kPi / 8, kPi / 4, 3 * kPi / 8, kPi / 2};
  switch (e) {
    case Experiment::fig1:
      c.alpha_sweep = false;
      c.alpha = Rapidity(0.0);
      break;
    case Experiment::fig2:
      break;
    case Experiment::fig3:
      c.theta_values = angle_curves;
      break;
    case Experiment::fig4:
      c.k1_values = {10.0};
      c.theta_values = angle_curves;
      c.alpha_sweep = false;
      break;
    case Experiment::fig5:
      c.alpha_sweep = false;
      c.lambda_values = {0.25, 0.5, 0.75};
      c.theta_range = {0.0, kPi, 91, false};
      break;
    case Experiment::custom:
      break;
  }
  return c;
}

void SweepConfig::validate() const {
  auto positive = [](double x, const char* name) {
    if (!(x > 0.0) || !std::isfinite(x)) throw ConfigError(std::string(name) + " must be positive and finite");
  };
  auto finite = [](double x, const char* name) {
    if (!std::isfinite(x)) throw ConfigError(std::string(name) + " must be finite");
  };
  auto range = [](const SweepRange& r, const char* name) {
    if (r.steps < 2) throw ConfigError(std::string(name) + ": steps must be >= 2");
    if (!(r.min < r.max)) throw ConfigError(std::string(name) + ": min must be below max");
    if (!std::isfinite(r.min) || !std::isfinite(r.max)) throw ConfigError(std::string(name) + ": bounds must be finite");
    if (r.log_spaced && !(r.min > 0.0)) throw ConfigError(std::string(name) + ": log spacing needs min > 0");
  };
  auto probability = [](double p, const char* name) {
    if (!(p >= 0.0 && p <= 1.0)) throw ConfigError(std::string(name) + " must lie in [0, 1]");
  };

  positive(w0, "w0");
  positive(w1, "w1");
  finite(k0, "k0");
  probability(lambda, "lambda");
  if (k1_values.empty() || theta_values.empty() || lambda_values.empty())
    throw ConfigError("curve lists must not be empty");
  for (double k : k1_values) finite(k, "k1");
  for (double t : theta_values) finite(t, "theta");
  for (double l : lambda_values) probability(l, "lambda");
  try {
    validate_probabilities4(lambdas);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("lambdas: ") + e.what());
  }
  if (alpha_sweep && alpha_range) range(*alpha_range, "alpha range");
  range(theta_range, "theta range");
  range(w1_range, "w1 range");
  if (w1_range.min <= 0.0) throw ConfigError("w1 range must be positive");
  try {
    spec.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

std::vector<Rapidity> SweepConfig::alpha_grid() const {
  if (!alpha_sweep) return {alpha};
  std::vector<Rapidity> grid{Rapidity(0.0)};
  if (alpha_range)
    for (double a : alpha_range->values())
      if (a != 0.0) grid.emplace_back(a);
  grid.push_back(Rapidity::infinite());
  return grid;
}

bool SweepTable::any_failed() const {
  return std::any_of(rows.begin(), rows.end(), [](const SweepRow& r) { return r.failed; });
}

std::size_t SweepTable::column(std::string_view name) const {
  const auto it = std::find(columns.begin(), columns.end(), name);
  if (it == columns.end()) throw std::out_of_range("no column " + std::string(name));
  return static_cast<std::size_t>(it - columns.begin());
}

SweepTable run_fig1(const SweepConfig& config) {
  SweepTable t = make_table(config, {"theta", "chi2", "chi4"});
  const auto thetas = config.theta_range.values();
  t.rows = parallel_rows(
      thetas.size(),
      [&](std::size_t i) {
        const double th = thetas[i];
        return SweepRow{{th, holevo_rest2(config.lambda, th).chi, holevo_rest4(config.lambdas, th).chi}};
      },
      config.threads);
  return t;
}

SweepTable run_fig2(const SweepConfig& config) {
  SweepTable t = make_table(config, {"k1", "alpha", "chi", "chi_rest", "s_tau", "s_tau0", "s_tau1", "v", "u",
                                     "chi_error", "quad_error"});
  const auto alphas = config.alpha_grid();
  const double theta = config.theta_values.front();
  const std::size_t n_alpha = alphas.size();
  t.rows = parallel_rows(
      config.k1_values.size() * n_alpha,
      [&](std::size_t i) {
        const double k1 = config.k1_values[i / n_alpha];
        const Rapidity& a = alphas[i % n_alpha];
        try {
          const auto in = channel_integrals(channel(config, k1, config.w1, theta, a));
          return SweepRow{concat({k1, a.raw()}, two_symbol_columns(in, theta, config.lambda))};
        } catch (const QuadratureError&) {
          return failed_row(t.columns.size(), {k1, a.raw()});
        }
      },
      config.threads);
  return t;
}

SweepTable run_fig3(const SweepConfig& config) {
  SweepTable t = make_table(config, {"theta", "alpha", "chi4", "chi4_rest", "s_tau4", "s_tau0", "s_tau1", "v", "u",
                                     "chi_error", "quad_error"});
  const auto alphas = config.alpha_grid();
  const double k1 = config.k1_values.front();
  // V and U do not depend on θ: integrate once per α.
  std::vector<std::optional<ChannelIntegrals>> integrals(alphas.size());
  parallel_rows(
      alphas.size(),
      [&](std::size_t i) {
        try {
          integrals[i] = channel_integrals(channel(config, k1, config.w1, 0.0, alphas[i]));
        } catch (const QuadratureError&) {
        }
        return SweepRow{};
      },
      config.threads);

  for (double theta : config.theta_values) {
    for (std::size_t i = 0; i < alphas.size(); ++i) {
      const double a = alphas[i].raw();
      if (!integrals[i]) {
        t.rows.push_back(failed_row(t.columns.size(), {theta, a}));
        continue;
      }
      t.rows.push_back({concat({theta, a}, four_symbol_columns(*integrals[i], theta, config.lambdas))});
    }
  }
  return t;
}

SweepTable run_fig4(const SweepConfig& config) {
  SweepTable t = make_table(config, {"theta", "w1", "alpha", "chi", "chi_rest", "s_tau", "s_tau0", "s_tau1", "v",
                                     "u", "chi_error", "quad_error"});
  const auto widths = config.w1_range.values();
  const double k1 = config.k1_values.front();
  const Rapidity alpha = config.alpha;
  std::vector<std::optional<ChannelIntegrals>> integrals(widths.size());
  parallel_rows(
      widths.size(),
      [&](std::size_t i) {
        try {
          integrals[i] = channel_integrals(channel(config, k1, widths[i], 0.0, alpha));
        } catch (const QuadratureError&) {
        }
        return SweepRow{};
      },
      config.threads);

  for (double theta : config.theta_values) {
    for (std::size_t i = 0; i < widths.size(); ++i) {
      if (!integrals[i]) {
        t.rows.push_back(failed_row(t.columns.size(), {theta, widths[i], alpha.raw()}));
        continue;
      }
      t.rows.push_back(
          {concat({theta, widths[i], alpha.raw()}, two_symbol_columns(*integrals[i], theta, config.lambda))});
    }
  }
  return t;
}

SweepTable run_fig5(const SweepConfig& config) {
  SweepTable t = make_table(config, {"bits", "lambda", "theta", "delta", "chi_boosted", "chi_rest", "chi_error"});
  const double k1 = config.k1_values.front();
  ChannelIntegrals in;
  try {
    in = channel_integrals(channel(config, k1, config.w1, 0.0, config.alpha));
  } catch (const QuadratureError&) {
    for (double l : config.lambda_values) t.rows.push_back(failed_row(t.columns.size(), {2.0, l}));
    t.rows.push_back(failed_row(t.columns.size(), {4.0, config.lambdas[0]}));
    return t;
  }

  const auto thetas = config.theta_range.values();
  for (double l : config.lambda_values) {
    for (double th : thetas) {
      const HolevoReport b = holevo_boosted2(in, th, l);
      const double rest = holevo_rest2(l, th).chi;
      t.rows.push_back({{2.0, l, th, b.chi - rest, b.chi, rest, b.quadrature_error}});
    }
    const auto cross = delta2_crossing(in, l, 1e-6, kPi / 2);
    t.comments.push_back("crossing bits=2 lambda=" + format_number(l) +
                         " vartheta=" + (cross ? format_number(*cross) : std::string("none")));
  }
  for (double th : thetas) {
    const HolevoReport b = holevo_boosted4(in, th, config.lambdas);
    const double rest = holevo_rest4(config.lambdas, th).chi;
    t.rows.push_back({{4.0, config.lambdas[0], th, b.chi - rest, b.chi, rest, b.quadrature_error}});
  }
  const auto cross = delta4_crossing(in, config.lambdas, 1e-6, kPi / 2);
  t.comments.push_back("crossing bits=4 lambdas=" + join({config.lambdas.begin(), config.lambdas.end()}) +
                       " vartheta=" + (cross ? format_number(*cross) : std::string("none")));
  return t;
}

SweepTable run_custom(const SweepConfig& config) {
  SweepTable t = make_table(config, {"alpha", "chi2", "chi2_rest", "delta2", "chi4", "chi4_rest", "delta4", "v", "u",
                                     "chi_error", "quad_error"});
  const auto alphas = config.alpha_grid();
  const double k1 = config.k1_values.front();
  const double theta = config.theta_values.front();
  t.rows = parallel_rows(
      alphas.size(),
      [&](std::size_t i) {
        const Rapidity& a = alphas[i];
        try {
          const auto in = channel_integrals(channel(config, k1, config.w1, theta, a));
          const HolevoReport b2 = holevo_boosted2(in, theta, config.lambda);
          const HolevoReport b4 = holevo_boosted4(in, theta, config.lambdas);
          const double r2 = holevo_rest2(config.lambda, theta).chi;
          const double r4 = holevo_rest4(config.lambdas, theta).chi;
          return SweepRow{{a.raw(), b2.chi, r2, b2.chi - r2, b4.chi, r4, b4.chi - r4, in.v.value, in.u.value,
                           std::max(b2.quadrature_error, b4.quadrature_error),
                           std::max(in.v.error_estimate, in.u.error_estimate)}};
        } catch (const QuadratureError&) {
          return failed_row(t.columns.size(), {a.raw()});
        }
      },
      config.threads);
  return t;
}

SweepTable run_experiment(const SweepConfig& config) {
  SweepTable t;
  switch (config.experiment) {
    case Experiment::fig1: t = run_fig1(config); break;
    case Experiment::fig2: t = run_fig2(config); break;
    case Experiment::fig3: t = run_fig3(config); break;
    case Experiment::fig4: t = run_fig4(config); break;
    case Experiment::fig5: t = run_fig5(config); break;
    case Experiment::custom: t = run_custom(config); break;
  }
  // Guard the physical range of every emitted χ.
  for (auto& row : t.rows) {
    if (row.failed) continue;
    for (std::size_t c = 0; c < t.columns.size(); ++c) {
      const std::string& name = t.columns[c];
      if (name.rfind("chi", 0) != 0 || name == "chi_error") continue;
      const bool four = name.find('4') != std::string::npos ||
                        (config.experiment == Experiment::fig5 && row.values[0] == 4.0);
      const double upper = (four ? 2.0 : 1.0) + kChiSlack;
      if (!(row.values[c] >= -kChiSlack && row.values[c] <= upper)) row.failed = true;
    }
  }
  return t;
}

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", x);
  return buf;
}

void write_csv(std::ostream& os, const SweepTable& table) {
  for (const auto& c : table.comments) os << "# " << c << '\n';
  for (const auto& c : table.columns) os << c << ',';
  os << "status\n";
  for (const auto& row : table.rows) {
    for (double v : row.values) os << format_number(v) << ',';
    os << (row.failed ? "failed" : "ok") << '\n';
  }
}

}  // namespace relchan
