#include "axisym/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>

#include "axisym/convergence.hpp"

#ifndef AXISYM_VERSION
#define AXISYM_VERSION "unknown"
#endif

namespace axisym {

RunOutcome execute_run(const SimConfig& config) {
  config.validate();
  const std::filesystem::path dir(config.output_dir);
  RunManifest manifest{config, AXISYM_VERSION, utc_timestamp(), {}, TerminationReason::completed, {}};
  RunOutcome outcome;
  try {
    TimeseriesWriter series(dir / "timeseries.csv");
    const RegularityConstants consts = compute_constants();
    double gamma0_sup = 0.0;
    auto observer = [&](const FlowState& s, std::int64_t step) {
      if (step == 0) {
        gamma0_sup = linf_norm(s.gamma());
        write_snapshot(dir / "snapshot_initial.csv", s);
      }
      outcome.records.push_back(make_record(s, consts, gamma0_sup));
      series.append(outcome.records.back());
    };
    auto dump = [&](const FlowState& s, std::int64_t) { write_snapshot(dir / "snapshot_abort.csv", s); };
    outcome.result = run(config, observer, dump);
    write_snapshot(dir / "snapshot_final.csv", outcome.result->final_state);
  } catch (const BlowupError& e) {
    outcome.reason = TerminationReason::blowup;
    outcome.message = e.what();
  } catch (const NonFiniteError& e) {
    outcome.reason = TerminationReason::blowup;
    outcome.message = e.what();
  } catch (const SolverError& e) {
    outcome.reason = TerminationReason::solver_failure;
    outcome.message = e.what();
  } catch (...) {
    manifest.finished = utc_timestamp();
    manifest.reason = TerminationReason::solver_failure;
    manifest.message = "aborted by an unexpected error";
    write_manifest(dir / "manifest.txt", manifest);
    throw;
  }
  manifest.finished = utc_timestamp();
  manifest.reason = outcome.reason;
  manifest.message = outcome.message;
  write_manifest(dir / "manifest.txt", manifest);
  return outcome;
}

double step_slack(const SimConfig& config, const RunResult& result) {
  const Grid g = config.grid();
  return 10.0 * (result.dt_max + g.dr() * g.dr() + g.dz() * g.dz());
}

namespace {

std::string fmt(const char* spec, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, x);
  return buf;
}

}  // namespace

std::vector<CheckResult> verify_checks(const SimConfig& config, const RunOutcome& outcome) {
  if (!outcome.result) throw InternalError("verify_checks needs a completed run");
  const auto& recs = outcome.records;
  const double h2 = config.grid().h2();
  // Records are up to `cadence` steps apart.
  const double eps = step_slack(config, *outcome.result);
  const double allowance = std::pow(1.0 + eps, static_cast<double>(config.cadence)) - 1.0;
  std::vector<CheckResult> out;

  {
    CheckResult c{"vertical_balance", true, true, {}};
    double worst = INFINITY;
    for (const auto& r : recs) worst = std::min(worst, r.margin_balance);
    c.passed = worst >= 0.0;
    c.detail = "min margin " + fmt("%.3e", worst);
    out.push_back(c);
  }
  {
    CheckResult a{"gradient_bound", true, true, {}}, b{"hessian_bound", true, true, {}};
    double wa = INFINITY, wb = INFINITY;
    for (const auto& r : recs) {
      wa = std::min(wa, r.margin_grad + 10.0 * h2 * r.omega_l2);
      wb = std::min(wb, r.margin_hessian + 10.0 * h2 * r.dz_omega_l2);
    }
    a.passed = wa >= 0.0;
    b.passed = wb >= 0.0;
    a.detail = "min margin + slack " + fmt("%.3e", wa);
    b.detail = "min margin + slack " + fmt("%.3e", wb);
    out.push_back(a);
    out.push_back(b);
  }
  {
    CheckResult c{"agmon", true, true, {}};
    double worst = INFINITY, ratio = 0.0;
    for (const auto& r : recs) {
      worst = std::min(worst, r.margin_agmon);
      ratio = std::max(ratio, r.agmon_ratio);
    }
    c.passed = worst >= 0.0;
    c.detail = "min margin " + fmt("%.3e", worst) + ", max ratio " + fmt("%.4f", ratio);
    out.push_back(c);
  }
  {
    CheckResult c{"gamma_max_principle", true, true, {}};
    if (recs.size() < 2) {
      c.applicable = false;
      c.detail = "fewer than two records";
    } else {
      const GrowthReport g = check_gamma_max_principle(recs);
      c.passed = g.l2 <= allowance && g.l4 <= allowance && g.linf <= allowance;
      c.detail = "growth l2 " + fmt("%.3e", g.l2) + " l4 " + fmt("%.3e", g.l4) + " linf " +
                 fmt("%.3e", g.linf) + " allowance " + fmt("%.3e", allowance);
    }
    out.push_back(c);
  }
  {
    CheckResult c{"energy_monotone", true, true, {}};
    const EnergyReport e = check_energy_monotone(recs);
    if (!e.applicable) {
      c.applicable = false;
      c.detail = "not applicable: initial smallness " + fmt("%.4g", recs.front().smallness) + " > 1/4";
    } else {
      c.passed = e.worst_relative <= allowance;
      c.detail = "worst relative increase " + fmt("%.3e", e.worst_relative) + " allowance " +
                 fmt("%.3e", allowance);
    }
    out.push_back(c);
  }
  {
    CheckResult c{"velocity_l4_finite", true, true, {}};
    double vmax = 0.0;
    for (const auto& r : recs) {
      c.passed = c.passed && std::isfinite(r.vr_l4) && std::isfinite(r.vz_l4) && std::isfinite(r.vtheta_l4);
      vmax = std::max({vmax, r.vr_l4, r.vz_l4, r.vtheta_l4});
    }
    c.detail = "largest component L4 norm " + fmt("%.3e", vmax);
    out.push_back(c);
  }
  return out;
}

namespace {

int report_run_failure(const RunOutcome& o) {
  std::cerr << termination_name(o.reason) << ": " << o.message << '\n';
  return o.reason == TerminationReason::blowup ? exit_code::blowup : exit_code::solver;
}

int cmd_run(const SimConfig& cfg) {
  const RunOutcome o = execute_run(cfg);
  if (o.reason != TerminationReason::completed) return report_run_failure(o);
  std::cout << "completed " << o.result->steps << " steps, " << o.records.size() << " records in "
            << cfg.output_dir << '\n';
  return exit_code::ok;
}

int cmd_verify(const SimConfig& cfg) {
  const RunOutcome o = execute_run(cfg);
  if (o.reason != TerminationReason::completed) return report_run_failure(o);
  bool ok = true;
  for (const auto& c : verify_checks(cfg, o)) {
    const char* tag = !c.applicable ? "N/A " : c.passed ? "PASS" : "FAIL";
    std::cout << tag << ' ' << c.name << ": " << c.detail << '\n';
    ok = ok && (!c.applicable || c.passed);
  }
  if (o.result->omega_growth_time)
    std::cout << "note: ||Omega||^(1/2) exceeded twice its initial value at t = "
              << format_double(*o.result->omega_growth_time) << '\n';
  return ok ? exit_code::ok : exit_code::check;
}

int cmd_constants() {
  const RegularityConstants c = compute_constants();
  std::printf("C1 = %.12g\nC3 = %.12g\nCP_bound = %.12g\n", c.C1, c.C3, c.CP_bound);
  return exit_code::ok;
}

int cmd_scaling(const SimConfig& cfg, double lambda, Index n) {
  const Grid grid(n, n, cfg.R, cfg.H);
  const ScalingReport r = scaling_check(cfg.init, grid, lambda, compute_constants());
  const double down = std::pow(lambda, -0.75), up = std::pow(lambda, 0.75);
  const double ev = std::abs(r.v_ratio - down), eg = std::abs(r.gamma_ratio - up),
               eo = std::abs(r.omega_ratio - down);
  std::printf("S = %.12g\nS_scaled = %.12g\ndeviation = %.3e\n", r.S, r.S_scaled, r.deviation);
  std::printf("V ratio = %.12g (expected %.12g)\n", r.v_ratio, down);
  std::printf("Gamma ratio = %.12g (expected %.12g)\n", r.gamma_ratio, up);
  std::printf("Omega ratio = %.12g (expected %.12g)\n", r.omega_ratio, down);
  const bool ok = r.deviation <= 1e-2 && ev <= 1e-2 && eg <= 1e-2 && eo <= 1e-2;
  return ok ? exit_code::ok : exit_code::check;
}

int cmd_convergence(const std::vector<Index>& sizes) {
  bool ok = true;
  for (const auto& s : run_convergence_studies(sizes)) {
    std::printf("%-18s %-11s", s.name.c_str(), s.norm.c_str());
    for (double e : s.errors) std::printf(" %.3e", e);
    std::printf(" | orders");
    for (double o : s.orders) std::printf(" %.3f", o);
    std::printf("\n");
    ok = ok && s.min_order() >= 1.8 && s.max_order() <= 2.2;
  }
  return ok ? exit_code::ok : exit_code::check;
}

int cmd_sweep(const SimConfig& base, const std::vector<double>& As, const std::vector<double>& Bs) {
  const std::filesystem::path root(base.output_dir);
  std::ostringstream table;
  table << "A,B,S0,energy_monotone,blowup,T_reached\n";
  for (double a : As)
    for (double b : Bs) {
      SimConfig cfg = base;
      cfg.init.A = a;
      cfg.init.B = b;
      cfg.output_dir = (root / ("A_" + format_double(a) + "_B_" + format_double(b))).string();
      const RunOutcome o = execute_run(cfg);
      const double s0 = o.records.empty() ? NAN : o.records.front().smallness;
      std::string monotone = "n/a";
      if (o.result) {
        for (const auto& c : verify_checks(cfg, o))
          if (c.name == "energy_monotone" && c.applicable) monotone = c.passed ? "yes" : "no";
      }
      const double reached = o.records.empty() ? 0.0 : o.records.back().t;
      table << format_double(a) << ',' << format_double(b) << ',' << format_double(s0) << ','
            << monotone << ',' << (o.reason == TerminationReason::blowup ? "yes" : "no") << ','
            << format_double(reached) << '\n';
    }
  std::filesystem::create_directories(root);
  std::ofstream(root / "sweep.csv", std::ios::binary) << table.str();
  std::cout << table.str();
  return exit_code::ok;
}

}  // namespace

int cli_main(int argc, char** argv) {
  CLI::App app{"Axisymmetric Navier-Stokes in a finite cylinder: simulation and verification harness"};
  app.require_subcommand(1);
  std::string config_path, out_dir;
  double lambda = 2.0;
  Index scaling_n = 256;
  std::vector<Index> sizes{32, 64, 128};
  std::vector<double> As{0.005, 0.01, 0.02}, Bs{0.005, 0.01, 0.02};

  const auto add_config = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "key = value configuration file")->check(CLI::ExistingFile);
    sub->add_option("--out", out_dir, "output directory (overrides output.dir)");
  };
  auto* run_cmd = app.add_subcommand("run", "integrate to time.T and write outputs");
  add_config(run_cmd);
  auto* verify_cmd = app.add_subcommand("verify", "run and assert every margin");
  add_config(verify_cmd);
  auto* const_cmd = app.add_subcommand("constants", "print the regularity constants");
  auto* scale_cmd = app.add_subcommand("scaling-check", "compare S for data and its rescaling");
  add_config(scale_cmd);
  scale_cmd->add_option("--lambda", lambda, "rescaling factor")->check(CLI::PositiveNumber);
  scale_cmd->add_option("--n", scaling_n, "cells per direction")->check(CLI::Range(2, 4096));
  auto* conv_cmd = app.add_subcommand("convergence", "manufactured-solution order studies");
  conv_cmd->add_option("--sizes", sizes, "resolutions, successive doublings")->delimiter(',');
  auto* sweep_cmd = app.add_subcommand("sweep", "amplitude grid over (A, B)");
  add_config(sweep_cmd);
  sweep_cmd->add_option("--A", As, "swirl amplitudes")->delimiter(',');
  sweep_cmd->add_option("--B", Bs, "vorticity amplitudes")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? exit_code::ok : exit_code::config;
  }

  try {
    SimConfig cfg;
    if (!config_path.empty()) cfg = load_config(config_path);
    if (!out_dir.empty()) cfg.output_dir = out_dir;
    if (*run_cmd) return cmd_run(cfg);
    if (*verify_cmd) return cmd_verify(cfg);
    if (*const_cmd) return cmd_constants();
    if (*scale_cmd) return cmd_scaling(cfg, lambda, scaling_n);
    if (*conv_cmd) return cmd_convergence(sizes);
    if (*sweep_cmd) return cmd_sweep(cfg, As, Bs);
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return exit_code::config;
  } catch (const SolverError& e) {
    std::cerr << "solver failure: " << e.what() << '\n';
    return exit_code::solver;
  } catch (const BlowupError& e) {
    std::cerr << e.what() << '\n';
    return exit_code::blowup;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code::check;
  }
  return exit_code::ok;
}

}  // namespace axisym
