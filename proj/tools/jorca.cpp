// jorca: classical gain analysis of parametric down-conversion outcome
// patterns. Subcommands expose the builtin scenarios (verify, sweep, report),
// randomized correspondence scans, and the three-wave-mixing integrator.
//
// Exit status: 0 success / all verdicts agree, 1 verification disagreement,
// 2 usage or validation error, 3 internal error.

#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "jorca/io.hpp"
#include "jorca/kernels/gain_batch.hpp"
#include "jorca/three_wave.hpp"

namespace {

using jorca::Json;

struct GridSpec {
  double start = 0.0;
  double stop = 0.0;
  std::size_t count = 0;
};

// "start:stop:count", endpoints inclusive
GridSpec parse_grid(const std::string& text) {
  GridSpec grid;
  char tail = 0;
  const int got = std::sscanf(text.c_str(), "%lf:%lf:%zu%c", &grid.start,
                              &grid.stop, &grid.count, &tail);
  if (got != 3 || grid.count < 1 || !std::isfinite(grid.start) ||
      !std::isfinite(grid.stop)) {
    throw std::invalid_argument("--beta: expected start:stop:count with count >= 1");
  }
  return grid;
}

std::vector<double> expand_grid(const GridSpec& grid) {
  std::vector<double> points(grid.count);
  if (grid.count == 1) {
    points[0] = grid.start;
    return points;
  }
  const double step =
      (grid.stop - grid.start) / static_cast<double>(grid.count - 1);
  for (std::size_t i = 0; i < grid.count; ++i) {
    points[i] = grid.start + static_cast<double>(i) * step;
  }
  points.back() = grid.stop;
  return points;
}

// "re,im"
jorca::ComplexAmp parse_complex(const std::string& text) {
  double re = 0.0, im = 0.0;
  char tail = 0;
  const int got = std::sscanf(text.c_str(), "%lf,%lf%c", &re, &im, &tail);
  if (got != 2 || !std::isfinite(re) || !std::isfinite(im)) {
    throw std::invalid_argument("expected a complex number as re,im");
  }
  return {re, im};
}

void emit(const std::string& content, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << content;
    if (!content.empty() && content.back() != '\n') std::cout << '\n';
  } else {
    jorca::atomic_write_file(out_path, content);
  }
}

void print_outcome_lines(const jorca::VerificationRecord& record) {
  for (const auto& out : record.outcomes) {
    std::cout << record.scenario << "  " << out.label
              << "  prob=" << jorca::format_g17(out.prob)
              << "  lambda_max=" << jorca::format_g17(out.lambda_max)
              << "  verdict=" << jorca::to_string(out.verdict)
              << "  agree=" << (out.agree ? "yes" : "no") << '\n';
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "jorca: classical-gain verdicts for two-photon outcome patterns\n"
      "Environment: JORCA_THREADS caps row parallelism; JORCA_SIMD=scalar\n"
      "forces the scalar sampling kernel."};
  app.require_subcommand(1);
  app.set_config("--config", "",
                 "key = value file presetting any flag (sections per "
                 "subcommand); command-line flags win");

  std::string scenario_name, out_path, format = "json", outcome_label;
  std::string beta_spec, e0_spec = "0,0", e1_spec = "0,0", e2_spec = "0,0";
  double eps = 0.0;
  int wing = 2;
  std::size_t scan_n = 0;
  std::uint64_t rng_seed = 0;
  double zero_fraction = 0.1;
  jorca::VerifyTolerances tol;
  double w1 = 0.0, w2 = 0.0, gamma = 0.0, t_end = 0.0, dt = 0.0;
  std::size_t stride = 100, max_steps = 10'000'000;

  auto add_tolerance_flags = [&tol](CLI::App* cmd) {
    cmd->add_option("--zero-prob-tol", tol.zero_prob,
                    "probability below this counts as a quantum zero")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--lambda-tol", tol.lambda,
                    "lambda_max at or below this counts as forbidden")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--allowed-prob-tol", tol.allowed_prob,
                    "probability above this must have positive gain")
        ->check(CLI::PositiveNumber);
  };

  CLI::App* verify = app.add_subcommand(
      "verify",
      "quantum vs classical verdicts for a builtin scenario\n"
      "CSV columns: label,prob,lambda_max,verdict,agree");
  verify->add_option("--scenario", scenario_name, "builtin scenario name")
      ->required();
  verify->add_option("--eps", eps, "gain scale parameter")->required();
  verify->add_option("--format", format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  verify->add_option("--out", out_path, "output file (written atomically)");
  add_tolerance_flags(verify);

  CLI::App* sweep = app.add_subcommand(
      "sweep",
      "polarizer-angle sweep of the first forbidden outcome\n"
      "CSV columns: beta,prob,lambda_max");
  sweep->add_option("--scenario", scenario_name, "builtin scenario name")
      ->required();
  sweep->add_option("--wing", wing, "which wing's analyzer to sweep (1 or 2)")
      ->required()
      ->check(CLI::Range(1, 2));
  sweep->add_option("--beta", beta_spec, "angle grid start:stop:count")
      ->required();
  sweep->add_option("--eps", eps, "gain scale parameter")->required();
  sweep->add_option("--format", format, "csv or json")
      ->check(CLI::IsMember({"json", "csv"}));
  sweep->add_option("--out", out_path, "output file (written atomically)");

  CLI::App* scan = app.add_subcommand(
      "scan",
      "random-state correspondence scan with forced exact zeros\n"
      "CSV columns: index,forced_zero,a,b,prob,lambda_max,qm_forbidden,"
      "cl_forbidden,agree");
  scan->add_option("--n", scan_n, "number of random cases")->required();
  scan->add_option("--eps", eps, "gain scale parameter")->required();
  scan->add_option("--rng-seed", rng_seed, "deterministic seed")->required();
  scan->add_option("--zero-fraction", zero_fraction,
                   "fraction of cases forced to exact zero probability")
      ->check(CLI::Range(0.0, 1.0));
  scan->add_option("--format", format, "json summary or per-case csv")
      ->check(CLI::IsMember({"json", "csv"}));
  scan->add_option("--out", out_path, "output file (written atomically)");
  add_tolerance_flags(scan);

  CLI::App* ode = app.add_subcommand(
      "ode",
      "three-wave-mixing RK4 trajectory with conservation columns\n"
      "CSV columns: t,e0_re,e0_im,e1_re,e1_im,e2_re,e2_im,mr_12,mr_01,mr_02");
  ode->add_option("--e0", e0_spec, "pump envelope re,im")->required();
  ode->add_option("--e1", e1_spec, "signal envelope re,im")->required();
  ode->add_option("--e2", e2_spec, "idler envelope re,im")->required();
  ode->add_option("--w1", w1, "signal angular frequency")->required();
  ode->add_option("--w2", w2, "idler angular frequency")->required();
  ode->add_option("--gamma", gamma, "coupling strength")->required();
  ode->add_option("--t-end", t_end, "integration time")->required();
  ode->add_option("--dt", dt, "RK4 step")->required();
  ode->add_option("--stride", stride, "snapshot every N steps");
  ode->add_option("--max-steps", max_steps, "step budget");
  ode->add_option("--out", out_path, "output CSV (written atomically)");

  CLI::App* report = app.add_subcommand(
      "report", "full gain reports (optimizing seed, intensities) as JSON");
  report->add_option("--scenario", scenario_name, "builtin scenario name")
      ->required();
  report->add_option("--eps", eps, "gain scale parameter")->required();
  report->add_option("--outcome", outcome_label,
                     "restrict to one outcome label");
  report->add_option("--out", out_path, "output file (written atomically)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return 2;
  }

  try {
    if (verify->parsed()) {
      const jorca::Scenario s = jorca::builtin(scenario_name);
      const auto record = jorca::run_scenario(s, eps, tol);
      print_outcome_lines(record);
      if (!out_path.empty()) {
        jorca::atomic_write_file(out_path, format == "csv"
                                               ? jorca::to_csv(record)
                                               : jorca::to_json(record).dump(2));
      }
      return record.all_agree ? 0 : 1;
    }

    if (sweep->parsed()) {
      const jorca::Scenario s = jorca::builtin(scenario_name);
      const auto betas = expand_grid(parse_grid(beta_spec));
      const auto rows = jorca::sweep_angle(s, wing, betas, eps);
      if (format == "csv") {
        emit(jorca::sweep_to_csv(rows), out_path);
      } else {
        emit(jorca::sweep_to_json(s.name, wing, eps, rows).dump(2), out_path);
      }
      return 0;
    }

    if (scan->parsed()) {
      const auto summary =
          jorca::random_scan(scan_n, eps, rng_seed, zero_fraction, tol);
      if (format == "csv") {
        emit(jorca::scan_to_csv(summary), out_path);
      } else {
        emit(jorca::to_json(summary).dump(2), out_path);
      }
      return summary.all_agree() ? 0 : 1;
    }

    if (ode->parsed()) {
      const jorca::ThreeWaveState init(parse_complex(e0_spec),
                                       parse_complex(e1_spec),
                                       parse_complex(e2_spec), w1 + w2, w1, w2,
                                       gamma);
      jorca::IntegrateOptions opts;
      opts.stride = stride;
      opts.max_steps = max_steps;
      const auto traj = jorca::integrate(init, t_end, dt, opts);
      std::ostringstream os;
      jorca::write_trajectory_csv(traj, os);
      emit(os.str(), out_path);
      return 0;
    }

    if (report->parsed()) {
      const jorca::Scenario s = jorca::builtin(scenario_name);
      if (!(eps > 0.0) || !std::isfinite(eps)) {
        throw std::invalid_argument("report: eps must be > 0");
      }
      const jorca::GainSchedule sched = s.schedule(eps);
      Json out;
      out["scenario"] = s.name;
      out["eps"] = eps;
      Json outcomes = Json::array();
      bool matched = false;
      for (const auto& spec : s.outcomes) {
        if (!outcome_label.empty() && spec.label != outcome_label) continue;
        matched = true;
        const auto rep =
            jorca::max_gain(jorca::OutcomeConstraint(spec.setting()), sched);
        Json o;
        o["label"] = spec.label;
        o["prob"] = std::norm(jorca::joint_amplitude(s.state, spec.setting()));
        o["report"] = jorca::to_json(rep);
        outcomes.push_back(std::move(o));
      }
      if (!matched) {
        throw std::invalid_argument("report: no outcome labeled '" +
                                    outcome_label + "'");
      }
      out["outcomes"] = std::move(outcomes);
      emit(out.dump(2), out_path);
      return 0;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 3;
  }
  return 2;
}
