#include "sqgfront/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>

#include "sqgfront/errors.hpp"
#include "sqgfront/initial_data.hpp"
#include "sqgfront/parallel.hpp"

namespace sqgfront {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double h2_distance(const PeriodicField& a, const PeriodicField& b) {
  if (a.max_mode() >= b.max_mode()) return hs_norm(a - change_space(b, a.space()), 2.0);
  return hs_norm(change_space(a, b.space()) - b, 2.0);
}

}  // namespace

double loglog_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw DimensionError("loglog_slope: need two or more matching points");
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) return kNaN;
    lx.push_back(std::log(x[i]));
    ly.push_back(std::log(y[i]));
  }
  const double n = static_cast<double>(lx.size());
  const double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / n;
  const double my = std::accumulate(ly.begin(), ly.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxy += (lx[i] - mx) * (ly[i] - my);
    sxx += (lx[i] - mx) * (lx[i] - mx);
  }
  return sxy / sxx;
}

// ---------------------------------------------------------------------------

ConvergenceTable convergence_study(const Generator& initial, const SolverConfig& cfg, std::vector<int> n_list,
                                   std::vector<double> dt_list) {
  std::sort(n_list.begin(), n_list.end());
  std::sort(dt_list.begin(), dt_list.end(), std::greater<>());
  ConvergenceTable table;

  struct Cell {
    std::optional<PeriodicField> phi;
    std::string status = "ok";
  };
  auto run = [&](SolverConfig c, double dt, Cell& cell) {
    try {
      cell.phi = evolve_fixed(initial(c.space()), c, c.t_end, dt);
    } catch (const Error& e) {
      cell.status = e.what();
    }
  };

  std::vector<Cell> spatial(n_list.size());
  std::vector<Cell> temporal(dt_list.size());
  double dt_spatial = 0.0;
  if (!n_list.empty()) {
    SolverConfig finest = cfg;
    finest.N = n_list.back();
    finest.dt = cfg.dt;
    dt_spatial = finest.time_step();
  }
  parallel_for(n_list.size() + dt_list.size(), [&](std::size_t job) {
    if (job < n_list.size()) {
      SolverConfig c = cfg;
      c.N = n_list[job];
      run(c, dt_spatial, spatial[job]);
    } else {
      const std::size_t j = job - n_list.size();
      run(cfg, dt_list[j], temporal[j]);
    }
  });

  double prev = kNaN;
  for (std::size_t i = 0; i + 1 < n_list.size(); ++i) {
    SpatialRow row{n_list[i], n_list[i + 1], kNaN, kNaN, "ok"};
    if (!spatial[i].phi || !spatial[i + 1].phi) {
      row.status = spatial[i].phi ? spatial[i + 1].status : spatial[i].status;
    } else {
      row.diff = h2_distance(*spatial[i + 1].phi, *spatial[i].phi);
      row.ratio = row.diff / prev;
    }
    prev = row.diff;
    table.spatial.push_back(row);
  }
  prev = kNaN;
  for (std::size_t j = 0; j + 1 < dt_list.size(); ++j) {
    TemporalRow row{dt_list[j], kNaN, kNaN, "ok"};
    if (!temporal[j].phi || !temporal[j + 1].phi) {
      row.status = temporal[j].phi ? temporal[j + 1].status : temporal[j].status;
    } else {
      row.diff = h2_distance(*temporal[j].phi, *temporal[j + 1].phi);
      row.ratio = prev / row.diff;
    }
    prev = row.diff;
    table.temporal.push_back(row);
  }
  return table;
}

// ---------------------------------------------------------------------------

StabilityReport stability_experiment(const PeriodicField& phi0, const PeriodicField& psi0, double r,
                                     const SolverConfig& cfg) {
  cfg.validate();
  if (!(r >= 0.0 && r < cfg.s - 1.0)) throw DomainError("stability: need 0 <= r < s - 1");
  const WeylParaproduct para = cfg.paraproduct();
  for (const PeriodicField* f : {&phi0, &psi0})
    if (!continuation_check(*f, cfg.s, para, cfg.positivity_threshold).ok())
      throw NotPositiveDefinite("stability: initial data outside the positivity regime", 0.0);

  const Stepper stepper(cfg);
  StabilityReport rep;
  rep.r = r;
  rep.initial_distance = h_norm(phi0 - psi0, r);
  rep.times.push_back(0.0);
  rep.distances.push_back(rep.initial_distance);

  const long n = static_cast<long>(std::ceil(cfg.t_end / cfg.time_step()));
  const double h = cfg.t_end / static_cast<double>(n);
  PeriodicField phi = phi0, psi = psi0;
  for (long k = 1; k <= n; ++k) {
    phi = stepper.step(phi, h);
    psi = stepper.step(psi, h);
    if (!phi.all_finite() || !psi.all_finite()) {
      rep.outcome = Outcome::blow_up;
      rep.message = "non-finite coefficients";
      break;
    }
    if (k % cfg.monitor_cadence != 0 && k != n) continue;
    if (!continuation_check(phi, cfg.s, para, cfg.positivity_threshold).ok() ||
        !continuation_check(psi, cfg.s, para, cfg.positivity_threshold).ok()) {
      rep.outcome = Outcome::continuation_halt;
      rep.message = "positivity lost";
      break;
    }
    rep.times.push_back(k == n ? cfg.t_end : static_cast<double>(k) * h);
    rep.distances.push_back(h_norm(phi - psi, r));
  }

  const double peak = *std::max_element(rep.distances.begin(), rep.distances.end());
  if (rep.initial_distance > 0.0)
    rep.M = peak / rep.initial_distance;
  else
    rep.M = peak > 0.0 ? std::numeric_limits<double>::infinity() : 1.0;
  return rep;
}

// ---------------------------------------------------------------------------

BonaSmithTable bona_smith_table(const PeriodicField& f, double s, double delta, const std::vector<int>& n_list) {
  BonaSmithTable table{s, delta, {}, kNaN, kNaN, kNaN};
  std::vector<double> ns, tails, smooths, products;
  for (int n : n_list) {
    if (n < 1 || n > f.max_mode()) throw DomainError("bona_smith: N outside 1..N_ref");
    const PeriodicField fn = project(f, n);
    BonaSmithRow row{n, hs_norm(f - fn, 2.0), hs_norm(fn, s + 1.0 + delta), 0.0};
    row.product = row.tail * row.smooth;
    table.rows.push_back(row);
    ns.push_back(n);
    tails.push_back(row.tail);
    smooths.push_back(row.smooth);
    products.push_back(row.product);
  }
  if (ns.size() >= 2) {
    table.slope_tail = loglog_slope(ns, tails);
    table.slope_smooth = loglog_slope(ns, smooths);
    table.slope_product = loglog_slope(ns, products);
  }
  return table;
}

// ---------------------------------------------------------------------------

std::vector<IdentityRow> identity_battery(const IdentityOptions& opt) {
  std::vector<int> ks = opt.k_list;
  std::sort(ks.begin(), ks.end());
  for (int k : ks)
    if (k < 4) throw DomainError("identity battery: K must be at least 4");

  static const char* kNames[] = {"lemma31", "lemma33", "corollary32", "lemma32"};
  std::vector<IdentityRow> rows;
  for (double eps : opt.eps_list) {
    const WeylParaproduct para{CutoffChi(eps)};
    std::vector<std::vector<double>> values(4, std::vector<double>(ks.size()));
    parallel_for(ks.size(), [&](std::size_t i) {
      const int k = ks[i];
      const SpectralSpace sp(2 * k);
      const PeriodicField u = single_mode(sp, 1, opt.amp);
      const PeriodicField v = single_mode(sp, k, opt.amp);
      values[0][i] = lemma31_residual(para, u, v);
      const double vs = hs_norm(v, opt.s);
      values[1][i] = vs > 0.0 ? lemma33_residual(para, u, v, opt.s) / vs : 0.0;
      values[2][i] = corollary32_defect(v, opt.s);
      values[3][i] = lemma32_residual(para, u, single_mode(sp, 2, opt.amp), v, opt.s).ratio();
    });
    const std::vector<double> kx(ks.begin(), ks.end());
    for (std::size_t g = 0; g < 4; ++g) {
      const double slope = ks.size() >= 2 ? loglog_slope(kx, values[g]) : kNaN;
      for (std::size_t i = 0; i < ks.size(); ++i) rows.push_back({kNames[g], eps, ks[i], values[g][i], slope});
    }
  }
  return rows;
}

}  // namespace sqgfront
