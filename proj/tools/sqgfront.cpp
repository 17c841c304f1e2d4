// sqgfront: command line driver for runs and experiment batteries.
//
// Exit codes: 0 ok, 1 malformed config or input, 2 continuation halt, 3 blow-up.

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <functional>
#include <iostream>

#include "sqgfront/config.hpp"
#include "sqgfront/csv.hpp"
#include "sqgfront/evolution.hpp"
#include "sqgfront/experiments.hpp"
#include "sqgfront/initial_data.hpp"

namespace {

using namespace sqgfront;

enum Exit { kExitOk = 0, kExitBadInput = 1, kExitHalt = 2, kExitBlowUp = 3 };

int exit_for(Outcome o) {
  switch (o) {
    case Outcome::completed: return kExitOk;
    case Outcome::continuation_halt: return kExitHalt;
    case Outcome::blow_up: return kExitBlowUp;
  }
  return kExitOk;
}

struct Output {
  std::ofstream file;
  std::ostream* stream = &std::cout;

  explicit Output(const std::string& path) {
    if (path.empty()) return;
    file.open(path, std::ios::binary | std::ios::trunc);
    if (!file) throw ConfigError("cannot open output file " + path, 0);
    stream = &file;
  }
};

int cmd_run(const RunConfig& cfg, std::ostream& out) {
  const PeriodicField phi0 = make_initial(cfg.initial, cfg.solver.space());
  CsvWriter csv(out, {"t", "E_s", "hs_norm", "opnorm", "margin", "w1inf", "flags"});
  const IntegrationResult res = integrate(phi0, cfg.solver, [&](const TrajectoryPoint& p) {
    const EnergyReport& r = p.report;
    csv.row() << r.t << r.E_s << r.hs << r.opnorm << r.margin << r.w1inf << r.flags;
    return true;
  });
  if (res.outcome != Outcome::completed) std::cerr << "sqgfront: " << res.message << '\n';
  return exit_for(res.outcome);
}

int cmd_identities(const RunConfig& cfg, std::ostream& out) {
  IdentityOptions opt;
  opt.k_list = cfg.experiment.k_list;
  opt.eps_list = cfg.experiment.eps_list;
  opt.s = cfg.experiment.identity_s;
  opt.amp = cfg.experiment.identity_amp;
  CsvWriter csv(out, {"identity", "eps", "K", "residual", "slope"});
  for (const IdentityRow& r : identity_battery(opt)) csv.row() << r.identity << r.eps << r.K << r.residual << r.slope;
  return kExitOk;
}

int cmd_convergence(const RunConfig& cfg, std::ostream& out) {
  const InitialSpec spec = cfg.initial;
  const PeriodicField phi0 = make_initial(spec, cfg.solver.space());
  if (!continuation_check(phi0, cfg.solver.s, cfg.solver.paraproduct(), cfg.solver.positivity_threshold).ok()) {
    std::cerr << "sqgfront: initial data violate the continuation criterion\n";
    return kExitHalt;
  }
  const ConvergenceTable table = convergence_study(
      [&](const SpectralSpace& sp) { return make_initial(spec, sp); }, cfg.solver, cfg.experiment.n_list,
      cfg.experiment.dt_list);

  CsvWriter csv(out, {"kind", "from", "to", "diff_h2", "ratio", "status"});
  bool blew_up = false;
  for (const SpatialRow& r : table.spatial) {
    csv.row() << "spatial" << r.n_coarse << r.n_fine << r.diff << r.ratio << r.status;
    blew_up |= r.status != "ok";
  }
  std::vector<double> dts = cfg.experiment.dt_list;
  std::sort(dts.begin(), dts.end(), std::greater<>());
  for (std::size_t j = 0; j < table.temporal.size(); ++j) {
    const TemporalRow& r = table.temporal[j];
    csv.row() << "temporal" << r.dt << dts[j + 1] << r.diff << r.ratio << r.status;
    blew_up |= r.status != "ok";
  }
  return blew_up ? kExitBlowUp : kExitOk;
}

int cmd_stability(const RunConfig& cfg, std::ostream& out) {
  const SpectralSpace sp = cfg.solver.space();
  const PeriodicField phi0 = make_initial(cfg.initial, sp);
  CsvWriter csv(out, {"perturbation", "t", "distance", "M"});
  int code = kExitOk;
  for (double size : cfg.experiment.perturbations) {
    const PeriodicField psi0 = phi0 + single_mode(sp, cfg.experiment.perturbation_mode, size);
    StabilityReport rep;
    try {
      rep = stability_experiment(phi0, psi0, cfg.experiment.r, cfg.solver);
    } catch (const NotPositiveDefinite& e) {
      std::cerr << "sqgfront: " << e.what() << '\n';
      return kExitHalt;
    }
    for (std::size_t i = 0; i < rep.times.size(); ++i)
      csv.row() << size << rep.times[i] << rep.distances[i] << rep.M;
    if (rep.outcome != Outcome::completed) {
      std::cerr << "sqgfront: " << rep.message << '\n';
      code = std::max(code, exit_for(rep.outcome));
    }
  }
  return code;
}

int cmd_bona_smith(const RunConfig& cfg, std::ostream& out) {
  const SpectralSpace ref(cfg.experiment.n_ref);
  const PeriodicField f = make_initial(cfg.initial, ref);
  const BonaSmithTable t = bona_smith_table(f, cfg.solver.s, cfg.experiment.delta, cfg.experiment.bona_smith_n);
  CsvWriter csv(out, {"N", "tail_h2", "smooth_norm", "product", "slope_tail", "slope_smooth", "slope_product"});
  for (const BonaSmithRow& r : t.rows)
    csv.row() << r.N << r.tail << r.smooth << r.product << t.slope_tail << t.slope_smooth << t.slope_product;
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"SQG-front pseudo-spectral laboratory"};
  app.require_subcommand(1);

  std::string config_path, out_path;
  using Command = int (*)(const RunConfig&, std::ostream&);
  const std::pair<const char*, Command> commands[] = {
      {"run", cmd_run},
      {"identities", cmd_identities},
      {"convergence", cmd_convergence},
      {"stability", cmd_stability},
      {"bona-smith", cmd_bona_smith},
  };
  const char* help[] = {
      "Integrate the initial data and write the monitored energy reports",
      "Residual-decay tables of the para-product expansion identities",
      "Spatial and temporal convergence study",
      "Lipschitz stability experiment",
      "Bona-Smith smoothing rates",
  };
  std::vector<CLI::App*> subs;
  for (std::size_t i = 0; i < std::size(commands); ++i) {
    CLI::App* sub = app.add_subcommand(commands[i].first, help[i]);
    sub->add_option("--config", config_path, "Configuration file")->required();
    sub->add_option("--out", out_path, "CSV output path (overrides [output] path)");
    subs.push_back(sub);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitBadInput;
  }

  try {
    const RunConfig cfg = load_config(config_path);
    Output output(out_path.empty() ? cfg.output : out_path);
    for (std::size_t i = 0; i < subs.size(); ++i)
      if (subs[i]->parsed()) return commands[i].second(cfg, *output.stream);
  } catch (const ConfigError& e) {
    std::cerr << "sqgfront: " << config_path << ": " << e.what() << '\n';
    return kExitBadInput;
  } catch (const ContinuationHalt& e) {
    std::cerr << "sqgfront: " << e.what() << '\n';
    return kExitHalt;
  } catch (const BlowUp& e) {
    std::cerr << "sqgfront: " << e.what() << '\n';
    return kExitBlowUp;
  } catch (const std::exception& e) {
    std::cerr << "sqgfront: " << e.what() << '\n';
    return kExitBadInput;
  }
  return kExitOk;
}
