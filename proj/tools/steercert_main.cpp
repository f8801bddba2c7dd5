// Command-line front-end: ingest JSON problem descriptions, run the
// certification routines, and emit machine-readable reports next to a short
// human-readable summary.
//
// Exit codes: 0 decisive verdict, 2 undecided, 1 input or usage error.

#include <chrono>
#include <cstdint>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "steercert/certify.hpp"
#include "steercert/json_io.hpp"

using namespace steercert;

namespace {

struct CommonArgs {
  std::string input;
  std::string out;
  double tol = kSolverTol;
  int max_iter = kSolverMaxIter;
  std::uint64_t seed = 0;
  bool timings = false;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("input", args.input, "input JSON file")->required();
  cmd->add_option("--tol", args.tol, "solver feasibility tolerance");
  cmd->add_option("--max-iter", args.max_iter, "projection iteration cap");
  cmd->add_option("--seed", args.seed, "seed recorded for reproducibility");
  cmd->add_option("--out", args.out, "write the JSON report to this file");
  cmd->add_flag("--timings", args.timings,
                "record wall-clock milliseconds in reports (off keeps reruns bit-identical)");
}

SolveOptions options_from(const CommonArgs& args) {
  SolveOptions options;
  options.tol = args.tol;
  options.max_iter = args.max_iter;
  options.seed = args.seed;
  return options;
}

std::string show(double v) {
  std::ostringstream s;
  s << std::setprecision(9) << v;
  return s.str();
}

void print_summary(const CertReport& rep) {
  std::cout << "task:        " << rep.task << "\n";
  std::cout << "verdict:     " << rep.verdict << "\n";
  std::cout << "robustness:  " << (rep.robustness ? show(*rep.robustness) : "-") << "\n";
  std::cout << "residual:    " << show(rep.residual) << "\n";
  std::cout << "iterations:  " << rep.iterations << "\n";
  if (rep.near_boundary) std::cout << "note:        verdict sits near the solver tie zone\n";
  if (!rep.diagnostics.empty()) std::cout << "diagnostics: " << rep.diagnostics << "\n";
}

void write_report(const CommonArgs& args, const Json& report) {
  if (!args.out.empty()) save_json_file(args.out, report);
}

/// Run one certification with optional wall-clock stamping.
template <typename Fn>
CertReport run_timed(const CommonArgs& args, Fn&& fn) {
  const auto start = std::chrono::steady_clock::now();
  CertReport rep = fn();
  if (args.timings) {
    const auto stop = std::chrono::steady_clock::now();
    rep.ms = std::chrono::duration<double, std::milli>(stop - start).count();
  }
  return rep;
}

int finish_check(const CommonArgs& args, const CertReport& rep) {
  print_summary(rep);
  write_report(args, to_json(rep));
  return rep.decisive ? 0 : 2;
}

int run_check_jm(const CommonArgs& args) {
  const MeasurementAssemblage ma = measurement_assemblage_from_json(load_json_file(args.input));
  const CertReport rep =
      run_timed(args, [&] { return check_joint_measurability(ma, options_from(args)); });
  return finish_check(args, rep);
}

int run_check_steering(const CommonArgs& args) {
  const Assemblage assemblage = assemblage_from_json(load_json_file(args.input));
  const CertReport rep = run_timed(args, [&] { return check_lhs(assemblage, options_from(args)); });
  return finish_check(args, rep);
}

int run_check_channel(const CommonArgs& args) {
  const ChannelAssemblage ca = channel_steering_input_from_json(load_json_file(args.input));
  const CertReport rep =
      run_timed(args, [&] { return check_channel_unsteerable(ca, options_from(args)); });
  return finish_check(args, rep);
}

int run_theorem(const CommonArgs& args) {
  const TheoremInput input = theorem_input_from_json(load_json_file(args.input));
  const TheoremReport rep =
      theorem_harness(input.measurements, input.extensions, options_from(args));

  std::cout << "jm verdict:    " << rep.jm.verdict << "\n";
  for (const TheoremRow& row : rep.rows) {
    std::cout << "  " << std::left << std::setw(18) << row.label << " " << std::setw(12)
              << row.channel.verdict;
    if (row.forward_residual) std::cout << " forward_residual " << show(*row.forward_residual);
    std::cout << "\n";
  }
  std::cout << "biconditional: " << rep.biconditional << "\n";
  std::cout << "boundary:      " << (rep.boundary ? "yes" : "no") << "\n";
  write_report(args, to_json(rep));
  return rep.biconditional == "undecided" ? 2 : 0;
}

int run_sweep(const CommonArgs& args, int grid) {
  const MeasurementAssemblage ma = measurement_assemblage_from_json(load_json_file(args.input));
  const SolveOptions options = options_from(args);

  std::cout << "eta       verdict               robustness\n";
  Json rows = Json::array();
  bool any_undecided = false;
  for (int i = 0; i < grid; ++i) {
    const double eta = static_cast<double>(i) / (grid - 1);
    // eta scales the input toward itself: eta = 1 is the assemblage as given,
    // eta = 0 is fully depolarized (always jointly measurable).
    const CertReport rep = check_joint_measurability(white_noise_mix(ma, 1.0 - eta), options);
    any_undecided = any_undecided || !rep.decisive;

    std::ostringstream line;
    line << std::fixed << std::setprecision(4) << eta << "    " << std::left << std::setw(22)
         << rep.verdict;
    line << (rep.robustness ? show(*rep.robustness) : "-");
    std::cout << line.str() << "\n";

    Json row;
    row["eta"] = eta;
    row["verdict"] = rep.verdict;
    row["robustness"] = rep.robustness ? Json(*rep.robustness) : Json(nullptr);
    rows.push_back(std::move(row));
  }

  Json report;
  report["task"] = "sweep";
  report["dim"] = ma.dim();
  report["m"] = ma.settings();
  report["n"] = ma.outcomes();
  report["grid"] = grid;
  report["rows"] = std::move(rows);
  write_report(args, report);
  return any_undecided ? 2 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"steercert: certify joint measurability and steering properties"};
  app.require_subcommand(1);

  CommonArgs jm_args, steering_args, channel_args, theorem_args, sweep_args;
  int grid = 21;

  CLI::App* jm = app.add_subcommand(
      "check-jm", "decide whether the POVMs of a measurement assemblage are jointly measurable");
  add_common(jm, jm_args);

  CLI::App* steering = app.add_subcommand(
      "check-steering", "decide whether a state assemblage admits a hidden-state model");
  add_common(steering, steering_args);

  CLI::App* channel = app.add_subcommand(
      "check-channel", "decide whether a channel assemblage admits an instrument decomposition");
  add_common(channel, channel_args);

  CLI::App* theorem = app.add_subcommand(
      "theorem",
      "cross-check joint measurability against channel steering for the given extensions");
  add_common(theorem, theorem_args);

  CLI::App* sweep = app.add_subcommand(
      "sweep", "scan the white-noise scale eta and tabulate verdict and robustness per point");
  add_common(sweep, sweep_args);
  sweep->add_option("--grid", grid, "number of eta points on [0, 1]")
      ->check(CLI::Range(2, 10001));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (jm->parsed()) return run_check_jm(jm_args);
    if (steering->parsed()) return run_check_steering(steering_args);
    if (channel->parsed()) return run_check_channel(channel_args);
    if (theorem->parsed()) return run_theorem(theorem_args);
    if (sweep->parsed()) return run_sweep(sweep_args, grid);
  } catch (const JsonError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
