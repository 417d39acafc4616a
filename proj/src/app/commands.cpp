#include "elion/app/commands.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <iostream>

#include "elion/backaction.hpp"
#include "elion/coupling.hpp"
#include "elion/errors.hpp"
#include "elion/metrology.hpp"
#include "elion/parallel.hpp"
#include "elion/scattering.hpp"
#include "elion/specfun.hpp"

namespace elion::app {
namespace {

TrapConfig make_trap(const TrapArgs& t) {
  return TrapConfig::from_mhz(t.trap_mhz,
                              t.cyclic ? FrequencyConvention::kCyclic : FrequencyConvention::kAngular);
}

void require_points(int points, const char* flag) {
  if (points < 2) throw DomainError(std::string(flag) + " must be at least 2");
}

double grid_value(double max, int i, int points) {
  return max * static_cast<double>(i) / static_cast<double>(points - 1);
}

std::string energy_label(double ev) { return "p_flip_" + format_number(ev) + "eV"; }

}  // namespace

CsvTable phase_profile_table(const PhaseProfileArgs& args) {
  require_points(args.points, "--points");
  if (!(args.b_max > 0.0) || !std::isfinite(args.b_max)) throw DomainError("--b-max must be positive");
  if (!std::isfinite(args.alpha)) throw DomainError("--alpha must be finite");
  const TrapConfig trap = make_trap(args.trap);
  const double r0 = trap.r0();
  const BeamConfig beam = BeamConfig::from_energy(args.energy_ev, {}, kDefaultSpotFraction * r0);
  const double width = std::sqrt(r0 * r0 + 2.0 * beam.spot_width() * beam.spot_width());
  const double v = beam.velocity();
  const double ion_x = std::sqrt(2.0) * r0 * args.alpha;

  std::vector<double> phase(args.points);
  std::vector<double> p_scat(args.points);
  parallel_for(static_cast<std::size_t>(args.points), args.threads, [&](std::size_t i) {
    const double impact = std::abs(grid_value(args.b_max, static_cast<int>(i), args.points) * r0 - ion_x);
    phase[i] = sigma_phase(width, impact, v);
    p_scat[i] = std::clamp(1.0 - std::norm(sigma(width, {impact, 0.0}, v)), 0.0, 1.0);
  });

  CsvTable table{{"b_over_R0", "delta_phi_minus_phi0", "p_scat"}, {}};
  for (int i = 0; i < args.points; ++i) {
    table.add_row({grid_value(args.b_max, i, args.points), phase[i] - phase[0], p_scat[i]});
  }
  return table;
}

CsvTable flip_prob_table(const FlipProbArgs& args) {
  require_points(args.points, "--points");
  if (args.energies_ev.empty()) throw DomainError("--energy-ev needs at least one value");
  if (!(args.alpha_max > 0.0) || !std::isfinite(args.alpha_max)) {
    throw DomainError("--alpha-max must be positive");
  }
  std::vector<double> energies = args.energies_ev;
  std::sort(energies.begin(), energies.end());
  energies.erase(std::unique(energies.begin(), energies.end()), energies.end());

  const TrapConfig trap = make_trap(args.trap);
  std::vector<BeamConfig> beams;
  for (double e : energies) {
    beams.push_back(BeamConfig::from_energy(e, {}, kDefaultSpotFraction * trap.r0()));
  }
  const std::size_t ne = beams.size();
  std::vector<double> values(static_cast<std::size_t>(args.points) * ne);
  parallel_for(values.size(), args.threads, [&](std::size_t k) {
    const double alpha = grid_value(args.alpha_max, static_cast<int>(k / ne), args.points);
    values[k] = focused_flip_probability(alpha, beams[k % ne], trap);
  });

  CsvTable table;
  table.header.push_back("alpha");
  for (double e : energies) table.header.push_back(energy_label(e));
  for (int i = 0; i < args.points; ++i) {
    std::vector<double> row{grid_value(args.alpha_max, i, args.points)};
    for (std::size_t j = 0; j < ne; ++j) row.push_back(values[i * ne + j]);
    table.add_row(std::move(row));
  }
  return table;
}

CsvTable backaction_map_table(const BackactionMapArgs& args) {
  require_points(args.grid, "--grid");
  if (!(args.chi_max >= 0.0 && args.chi_max < 1.0)) throw DomainError("--chi-max must lie in [0, 1)");
  if (!(args.b_max > 0.0) || !std::isfinite(args.b_max)) throw DomainError("--b-max must be positive");
  const double v = electron_velocity(args.energy_ev);

  // Grid is uniform in sqrt(chi).
  std::vector<double> chi(args.grid);
  std::vector<double> b(args.grid);
  for (int i = 0; i < args.grid; ++i) {
    const double root = grid_value(std::sqrt(args.chi_max), i, args.grid);
    chi[i] = root * root;
    b[i] = grid_value(args.b_max, i, args.grid);
  }
  const EtaMap map = eta_map(chi, b, v, args.threads);

  CsvTable table{{"sqrt_chi", "chi", "b_over_R0", "eta"}, {}};
  for (int i = 0; i < args.grid; ++i) {
    for (int j = 0; j < args.grid; ++j) {
      table.add_row({grid_value(std::sqrt(args.chi_max), i, args.grid), chi[i], b[j], map.at(i, j)});
    }
  }
  return table;
}

CsvTable fisher_table(const FisherArgs& args) {
  using namespace metrology;
  if (args.eps_sweep) {
    if (args.points < 1) throw DomainError("--points must be at least 1");
    if (!(args.eps_max > 0.0 && args.eps_max < 1.0)) throw DomainError("--eps-max must lie in (0, 1)");
    CsvTable table{{"eps", "n_star", "gain"}, {}};
    for (int k = 1; k <= args.points; ++k) {
      const double eps = args.eps_max * k / args.points;
      table.add_row({eps, static_cast<double>(*optimal_n(eps)), relative_gain(eps)});
    }
    return table;
  }
  if (args.n_max < 1) throw DomainError("--n-max must be at least 1");
  if (!(args.eps >= 0.0 && args.eps <= 1.0)) throw DomainError("--eps must lie in [0, 1]");
  CsvTable table{{"n", "SQL", "HL", "expected_F"}, {}};
  if (args.g) table.header.push_back("nonideal_F");
  for (int n = 1; n <= args.n_max; ++n) {
    std::vector<double> row{static_cast<double>(n), static_cast<double>(n), fisher_ideal(n),
                            expected_fisher_lossy(n, args.eps)};
    if (args.g) row.push_back(fisher_nonideal(n, *args.g, args.phi));
    table.add_row(std::move(row));
  }
  return table;
}

CsvTable protocol_sim_table(const ProtocolSimArgs& args) {
  if (args.trials < 1) throw DomainError("--trials must be at least 1");
  if (args.n < 1) throw DomainError("--n must be at least 1");
  metrology::ProtocolConfig cfg;
  cfg.n_electrons = args.n;
  cfg.loss_prob = args.eps;
  cfg.coupling_g = args.g;
  cfg.true_phase = args.phi;
  cfg.phase_estimate = args.phi_estimate;
  cfg.seed = args.seed;
  const auto mc = metrology::monte_carlo_protocol(cfg, args.trials, args.threads);

  CsvTable table{{"n", "eps", "g", "phi", "trials", "empirical_p0", "stderr", "analytic_p0",
                  "restart_count", "all_detected_trials", "all_detected_p0",
                  "all_detected_stderr"},
                 {}};
  table.add_row({static_cast<double>(args.n), args.eps, args.g, args.phi,
                 static_cast<double>(args.trials), mc.empirical_p0, mc.standard_error,
                 metrology::analytic_expected_p0(cfg), static_cast<double>(mc.restart_count),
                 static_cast<double>(mc.all_detected_trials), mc.all_detected_p0,
                 mc.all_detected_standard_error});
  return table;
}

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"Electron-ion coupling and phase-estimation simulator"};
  app.require_subcommand(1);

  std::string out;
  unsigned threads = 1;
  std::map<std::string, std::string> params;
  const auto record = [&params](const std::string& key, double value) {
    params[key] = format_number(value);
  };

  PhaseProfileArgs pp;
  auto* cmd_pp = app.add_subcommand("phase-profile", "scattering phase and P_scat versus b");
  cmd_pp->add_option("--energy-ev", pp.energy_ev);
  cmd_pp->add_option("--trap-mhz", pp.trap.trap_mhz);
  cmd_pp->add_flag("--cyclic", pp.trap.cyclic, "read --trap-mhz as a cyclic frequency");
  cmd_pp->add_option("--alpha", pp.alpha);
  cmd_pp->add_option("--b-max", pp.b_max, "largest b in units of R0");
  cmd_pp->add_option("--points", pp.points);

  FlipProbArgs fp;
  auto* cmd_fp = app.add_subcommand("flip-prob", "qubit flip probability versus |alpha|");
  cmd_fp->add_option("--energy-ev", fp.energies_ev)->delimiter(',');
  cmd_fp->add_option("--trap-mhz", fp.trap.trap_mhz);
  cmd_fp->add_flag("--cyclic", fp.trap.cyclic);
  cmd_fp->add_option("--alpha-max", fp.alpha_max);
  cmd_fp->add_option("--points", fp.points);

  BackactionMapArgs ba;
  auto* cmd_ba = app.add_subcommand("backaction-map", "eta over (sqrt chi, b / R0)");
  cmd_ba->add_option("--energy-ev", ba.energy_ev);
  cmd_ba->add_option("--chi-max", ba.chi_max);
  cmd_ba->add_option("--b-max", ba.b_max);
  cmd_ba->add_option("--grid", ba.grid, "points per axis");

  FisherArgs fi;
  double g_value = 0.0;
  auto* cmd_fi = app.add_subcommand("fisher", "Fisher information tables");
  cmd_fi->add_option("--eps", fi.eps);
  cmd_fi->add_option("--n-max", fi.n_max);
  cmd_fi->add_flag("--eps-sweep", fi.eps_sweep, "tabulate n_star and gain over eps instead");
  cmd_fi->add_option("--eps-max", fi.eps_max);
  cmd_fi->add_option("--points", fi.points);
  auto* g_opt = cmd_fi->add_option("--g", g_value);
  cmd_fi->add_option("--phi", fi.phi);

  ProtocolSimArgs ps;
  double phi_estimate = 0.0;
  auto* cmd_ps = app.add_subcommand("protocol-sim", "Monte Carlo of the phase-estimation protocol");
  cmd_ps->add_option("--n", ps.n);
  cmd_ps->add_option("--eps", ps.eps);
  cmd_ps->add_option("--g", ps.g);
  cmd_ps->add_option("--phi", ps.phi);
  auto* est_opt = cmd_ps->add_option("--phi-estimate", phi_estimate);
  cmd_ps->add_option("--trials", ps.trials);
  cmd_ps->add_option("--seed", ps.seed);

  for (auto* sub : {cmd_pp, cmd_fp, cmd_ba, cmd_fi, cmd_ps}) {
    sub->add_option("--out", out, "output CSV path (relative paths honour ELION_OUTPUT_DIR)");
    sub->add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    CsvTable table;
    RunManifest manifest;
    manifest.constant_set_version = units::kConstantSetVersion;
    if (cmd_pp->parsed()) {
      pp.threads = threads;
      manifest.command = "phase-profile";
      record("energy_ev", pp.energy_ev);
      record("trap_mhz", pp.trap.trap_mhz);
      params["cyclic"] = pp.trap.cyclic ? "true" : "false";
      record("alpha", pp.alpha);
      record("b_max", pp.b_max);
      record("points", pp.points);
      table = phase_profile_table(pp);
    } else if (cmd_fp->parsed()) {
      fp.threads = threads;
      manifest.command = "flip-prob";
      std::string list;
      for (double e : fp.energies_ev) list += (list.empty() ? "" : ",") + format_number(e);
      params["energy_ev"] = list;
      record("trap_mhz", fp.trap.trap_mhz);
      params["cyclic"] = fp.trap.cyclic ? "true" : "false";
      record("alpha_max", fp.alpha_max);
      record("points", fp.points);
      table = flip_prob_table(fp);
    } else if (cmd_ba->parsed()) {
      ba.threads = threads;
      manifest.command = "backaction-map";
      record("energy_ev", ba.energy_ev);
      record("chi_max", ba.chi_max);
      record("b_max", ba.b_max);
      record("grid", ba.grid);
      table = backaction_map_table(ba);
    } else if (cmd_fi->parsed()) {
      manifest.command = "fisher";
      if (*g_opt) fi.g = g_value;
      params["mode"] = fi.eps_sweep ? "eps-sweep" : "n-table";
      if (fi.eps_sweep) {
        record("eps_max", fi.eps_max);
        record("points", fi.points);
      } else {
        record("eps", fi.eps);
        record("n_max", fi.n_max);
        if (fi.g) {
          record("g", *fi.g);
          record("phi", fi.phi);
        }
      }
      table = fisher_table(fi);
    } else {
      ps.threads = threads;
      if (*est_opt) ps.phi_estimate = phi_estimate;
      manifest.command = "protocol-sim";
      manifest.seed = ps.seed;
      record("n", ps.n);
      record("eps", ps.eps);
      record("g", ps.g);
      record("phi", ps.phi);
      if (ps.phi_estimate) record("phi_estimate", *ps.phi_estimate);
      params["trials"] = std::to_string(ps.trials);
      table = protocol_sim_table(ps);
    }
    manifest.parameters = params;
    const auto path = resolve_output(out.empty() ? manifest.command + ".csv" : out);
    emit(path, table, manifest);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitOk;
}

}  // namespace elion::app
