// relchan: regenerate the relativistic spin-channel sweeps as CSV.
//
//   relchan fig2 --k1 10,30,50 --tol 1e-6 --out fig2.csv
//   relchan custom --alpha inf --theta pi/8 --lambdas 0.4,0.2,0.2,0.2
//
// Exit codes: 0 success, 2 configuration error, 3 numerical failure.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "relchan/sweep.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

struct Flags {
  std::optional<std::string> w0, w1, k0, alpha;
  // Comma lists; config files hand these over already split.
  std::vector<std::string> k1, theta, lambda, lambdas;
  std::optional<std::string> alpha_min, alpha_max, theta_min, theta_max, w1_min, w1_max;
  std::optional<int> alpha_steps, theta_steps, w1_steps;
  bool alpha_infinite = false;
  std::optional<double> tol;
  std::optional<unsigned> threads;
  std::string out = "-";
};

std::string joined(const std::vector<std::string>& parts) {
  std::string s;
  for (const auto& p : parts) s += (s.empty() ? "" : ",") + p;
  return s;
}

void add_flags(CLI::App& app, Flags& f) {
  app.add_option("--w0", f.w0, "width of the first packet (units of m)");
  app.add_option("--w1", f.w1, "width of the second packet (units of m)");
  app.add_option("--k0", f.k0, "mean momentum of the first packet (units of m)");
  app.add_option("--k1", f.k1, "mean momentum of the second packet; comma list gives fig2 curves")->delimiter(',');
  app.add_option("--theta", f.theta, "spin angle of the second signal; accepts pi/8 etc., comma list for curves")->delimiter(',');
  app.add_option("--lambda", f.lambda, "probability of the first signal; comma list gives fig5 curves")->delimiter(',');
  app.add_option("--lambdas", f.lambdas, "four-symbol probabilities a,b,c,d")->delimiter(',');
  app.add_option("--alpha", f.alpha, "fixed rapidity (number or inf); disables the alpha sweep");
  app.add_option("--alpha-min", f.alpha_min, "smallest swept rapidity (log grid)");
  app.add_option("--alpha-max", f.alpha_max, "largest swept rapidity");
  app.add_option("--alpha-steps", f.alpha_steps, "number of swept rapidities");
  app.add_flag("--alpha-infinite", f.alpha_infinite, "use the alpha -> infinity limit");
  app.add_option("--theta-min", f.theta_min, "theta sweep start (fig1, fig5)");
  app.add_option("--theta-max", f.theta_max, "theta sweep end (fig1, fig5)");
  app.add_option("--theta-steps", f.theta_steps, "theta sweep points (fig1, fig5)");
  app.add_option("--w1-min", f.w1_min, "W1 sweep start (fig4)");
  app.add_option("--w1-max", f.w1_max, "W1 sweep end (fig4)");
  app.add_option("--w1-steps", f.w1_steps, "W1 sweep points (fig4)");
  app.add_option("--tol", f.tol, "relative quadrature tolerance");
  app.add_option("--threads", f.threads, "worker threads (0 = all cores)");
  app.add_option("--out", f.out, "output path, '-' for stdout");
}

relchan::SweepConfig build_config(relchan::Experiment e, const Flags& f) {
  using relchan::parse_angle_or_number;
  using relchan::parse_number_list;
  auto c = relchan::SweepConfig::defaults_for(e);

  if (f.w0) c.w0 = parse_angle_or_number(*f.w0);
  if (f.w1) c.w1 = parse_angle_or_number(*f.w1);
  if (f.k0) c.k0 = parse_angle_or_number(*f.k0);
  if (!f.k1.empty()) c.k1_values = parse_number_list(joined(f.k1));
  if (!f.theta.empty()) c.theta_values = parse_number_list(joined(f.theta));
  if (!f.lambda.empty()) {
    c.lambda_values = parse_number_list(joined(f.lambda));
    c.lambda = c.lambda_values.front();
  }
  if (!f.lambdas.empty()) {
    const auto l = parse_number_list(joined(f.lambdas));
    if (l.size() != 4) throw relchan::ConfigError("--lambdas needs exactly four values");
    c.lambdas = {l[0], l[1], l[2], l[3]};
  }

  if (f.alpha_min || f.alpha_max || f.alpha_steps) {
    relchan::SweepRange r = c.alpha_range.value_or(relchan::SweepRange{0.05, 12.0, 40, true});
    if (f.alpha_min) r.min = parse_angle_or_number(*f.alpha_min);
    if (f.alpha_max) r.max = parse_angle_or_number(*f.alpha_max);
    if (f.alpha_steps) r.steps = *f.alpha_steps;
    r.log_spaced = r.min > 0.0;
    c.alpha_range = r;
  }
  if (f.alpha) {
    try {
      c.alpha = relchan::Rapidity(parse_angle_or_number(*f.alpha));
    } catch (const std::invalid_argument& err) {
      throw relchan::ConfigError(err.what());
    }
    c.alpha_sweep = false;
  }
  if (f.alpha_infinite) {
    c.alpha = relchan::Rapidity::infinite();
    c.alpha_sweep = false;
  }

  if (f.theta_min) c.theta_range.min = parse_angle_or_number(*f.theta_min);
  if (f.theta_max) c.theta_range.max = parse_angle_or_number(*f.theta_max);
  if (f.theta_steps) c.theta_range.steps = *f.theta_steps;
  if (f.w1_min) c.w1_range.min = parse_angle_or_number(*f.w1_min);
  if (f.w1_max) c.w1_range.max = parse_angle_or_number(*f.w1_max);
  if (f.w1_steps) c.w1_range.steps = *f.w1_steps;

  if (f.tol) c.spec.rel_tol = *f.tol;
  if (f.threads) c.threads = *f.threads;
  c.validate();
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Holevo bound of a spin-1/2 channel observed by a boosted receiver"};
  app.set_config("--config", "", "flat key=value file; command-line flags override it");
  app.require_subcommand(1);

  Flags flags;
  std::optional<relchan::Experiment> chosen;
  for (auto e : {relchan::Experiment::fig1, relchan::Experiment::fig2, relchan::Experiment::fig3,
                 relchan::Experiment::fig4, relchan::Experiment::fig5, relchan::Experiment::custom}) {
    auto* sub = app.add_subcommand(std::string(relchan::experiment_name(e)));
    sub->fallthrough();
    sub->callback([&chosen, e] { chosen = e; });
  }
  add_flags(app, flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  relchan::SweepConfig config;
  try {
    config = build_config(*chosen, flags);
  } catch (const relchan::ConfigError& e) {
    std::cerr << "relchan: " << e.what() << '\n';
    return kExitConfig;
  }

  relchan::SweepTable table;
  try {
    table = relchan::run_experiment(config);
  } catch (const std::exception& e) {
    std::cerr << "relchan: " << e.what() << '\n';
    return kExitNumerical;
  }

  if (flags.out == "-") {
    relchan::write_csv(std::cout, table);
  } else {
    std::ofstream os(flags.out);
    if (!os) {
      std::cerr << "relchan: cannot open " << flags.out << '\n';
      return kExitConfig;
    }
    relchan::write_csv(os, table);
  }

  if (table.any_failed()) {
    std::cerr << "relchan: some rows failed (status column)\n";
    return kExitNumerical;
  }
  return 0;
}
