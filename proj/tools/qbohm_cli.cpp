// Command-line front end for the hard-wall well with the variable-mass
// profile m(x) = m0/(1+gamma*x)^2: closed-form reports, numeric spectra,
// pilot-wave snapshots, information integrals, the Cramer-Rao sweep figure,
// and Crank-Nicolson propagation.
//
// Exit codes: 0 success, 1 domain/physics/IO errors, 2 usage errors.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "qbohm/qbohm.hpp"

namespace {

using nlohmann::json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string command;
  std::optional<double> gamma;
  std::optional<double> gamma_l;
  double L = 1.0;
  double hbar = 1.0;
  double m0 = 1.0;
  std::vector<int> n_list;
  std::size_t points = 2001;
  std::string output;  // artifact path stem; empty = summary only
  std::string format;  // csv | json | svg; default csv (fig1: svg)
  std::string route = "mapped";
  double dt = 1e-3;
  std::size_t steps = 100;
  std::size_t store_every = 0;  // 0 = steps/100, at least 1
  double gamma_l_min = -0.95;
  double gamma_l_max = 10.0;
};

const char* kCommands = "well, solve, bohm, fisher, fig1, propagate";

bool known_command(const std::string& c) {
  return c == "well" || c == "solve" || c == "bohm" || c == "fisher" || c == "fig1" ||
         c == "propagate";
}

// ---------------------------------------------------------------------------
// JSON config: same keys as the long flags, with underscores instead of
// dashes.  Flags given on the command line override file values.

void load_json_config(const std::string& path, RunConfig& cfg, bool& had_gamma,
                      bool& had_gamma_l, bool& had_n) {
  std::ifstream is(path);
  if (!is) throw UsageError("config: cannot read '" + path + "'");
  json j;
  try {
    is >> j;
  } catch (const json::exception& e) {
    throw UsageError("config: " + std::string(e.what()));
  }
  if (!j.is_object()) throw UsageError("config: top level must be a JSON object");
  try {
    for (const auto& [key, val] : j.items()) {
      if (key == "command") cfg.command = val.get<std::string>();
      else if (key == "gamma") { cfg.gamma = val.get<double>(); had_gamma = true; }
      else if (key == "gammaL") { cfg.gamma_l = val.get<double>(); had_gamma_l = true; }
      else if (key == "L") cfg.L = val.get<double>();
      else if (key == "hbar") cfg.hbar = val.get<double>();
      else if (key == "m0") cfg.m0 = val.get<double>();
      else if (key == "n") {
        if (val.is_array()) cfg.n_list = val.get<std::vector<int>>();
        else cfg.n_list = {val.get<int>()};
        had_n = true;
      }
      else if (key == "points") cfg.points = val.get<std::size_t>();
      else if (key == "output") cfg.output = val.get<std::string>();
      else if (key == "format") cfg.format = val.get<std::string>();
      else if (key == "route") cfg.route = val.get<std::string>();
      else if (key == "dt") cfg.dt = val.get<double>();
      else if (key == "steps") cfg.steps = val.get<std::size_t>();
      else if (key == "store_every") cfg.store_every = val.get<std::size_t>();
      else if (key == "gammaL_min") cfg.gamma_l_min = val.get<double>();
      else if (key == "gammaL_max") cfg.gamma_l_max = val.get<double>();
      else throw UsageError("config: unknown key '" + key + "'");
    }
  } catch (const json::exception& e) {
    throw UsageError("config: " + std::string(e.what()));
  }
  if (!cfg.format.empty() && cfg.format != "csv" && cfg.format != "json" && cfg.format != "svg")
    throw UsageError("config: format must be csv, json or svg");
  if (cfg.route != "mapped" && cfg.route != "direct" && cfg.route != "both")
    throw UsageError("config: route must be mapped, direct or both");
}

// ---------------------------------------------------------------------------
// Small shared helpers.

double resolved_gamma(const RunConfig& cfg) {
  if (cfg.gamma) return *cfg.gamma;
  if (cfg.gamma_l) return *cfg.gamma_l / cfg.L;
  return 0.0;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open for writing: " + path);
  return os;
}

json report_to_json(const qbohm::FisherReport& r) {
  json j;
  j["gamma"] = r.gamma;
  j["gamma_L"] = r.gamma_L;
  j["n"] = r.n;
  j["I_pdm"] = r.I_pdm;
  j["I_q"] = r.I_q;
  j["I_F"] = r.I_F;
  j["mean_x"] = r.mean_x;
  j["var_x"] = r.var_x;
  j["cr_q_lhs"] = r.cr_q_lhs;
  j["cr_q_rhs"] = r.cr_q_rhs;
  j["cr_pdm"] = r.cr_pdm;
  j["cr_std"] = r.cr_std;
  j["margin_q"] = r.margin_q;
  j["deformed_bound_ok"] = r.deformed_bound_ok;
  j["E_n"] = r.E_n;
  j["L_q"] = r.L_q;
  j["k_qn"] = r.k_qn;
  return j;
}

// ---------------------------------------------------------------------------
// Commands.

void run_well(const RunConfig& cfg) {
  qbohm::WellSpec w(cfg.L, resolved_gamma(cfg), cfg.hbar, cfg.m0);
  std::vector<qbohm::FisherReport> rows;
  for (int n : cfg.n_list) rows.push_back(qbohm::well_report(w, n));
  for (const auto& r : rows)
    std::printf("well: gammaL=%.12g n=%d E=%.12g I_q=%.12g I_pdm=%.12g I_F=%.12g margin_q=%.12g\n",
                r.gamma_L, r.n, r.E_n, r.I_q, r.I_pdm, r.I_F, r.margin_q);
  if (cfg.output.empty()) return;
  if (cfg.format == "csv") {
    auto os = open_out(cfg.output + ".csv");
    qbohm::write_report_csv(os, rows, true);
  } else if (cfg.format == "json") {
    json j = json::array();
    for (const auto& r : rows) j.push_back(report_to_json(r));
    open_out(cfg.output + ".json") << j.dump(2) << '\n';
  } else {
    auto grid = w.grid(cfg.points);
    qbohm::PlotPanel panel{"stationary deformed states", "x", "phi_n(x)", {}};
    for (int n : cfg.n_list) {
      auto phi = qbohm::sample_phi(w, n, grid);
      qbohm::PlotSeries s{"n=" + std::to_string(n), {}, {}, false};
      for (std::size_t i = 0; i < grid.n_points; ++i) {
        s.x.push_back(grid.node(i));
        s.y.push_back(phi.values[i].real());
      }
      panel.series.push_back(std::move(s));
    }
    qbohm::write_svg_file(cfg.output + ".svg", {panel});
  }
}

void run_solve(const RunConfig& cfg) {
  qbohm::WellSpec w(cfg.L, resolved_gamma(cfg), cfg.hbar, cfg.m0);
  auto grid = w.grid(cfg.points);
  const int n_max = *std::max_element(cfg.n_list.begin(), cfg.n_list.end());
  if (n_max < 1) throw qbohm::domain_error("solve: quantum numbers must be >= 1");

  struct Row {
    std::string route;
    int n;
    double e_num, e_closed, rel_err;
  };
  std::vector<Row> rows;
  std::vector<std::pair<std::string, qbohm::EigenSolution>> solutions;
  if (cfg.route == "mapped" || cfg.route == "both")
    solutions.emplace_back("mapped", qbohm::solve_mapped(w.potential(), grid,
                                                         static_cast<std::size_t>(n_max),
                                                         cfg.hbar, cfg.m0));
  if (cfg.route == "direct" || cfg.route == "both")
    solutions.emplace_back("direct", qbohm::solve_direct(w.potential(), grid,
                                                         static_cast<std::size_t>(n_max),
                                                         cfg.hbar, cfg.m0));
  for (const auto& [name, sol] : solutions)
    for (int n : cfg.n_list) {
      const double e = sol.energies[static_cast<std::size_t>(n - 1)];
      const double closed = w.energy(n);
      rows.push_back({name, n, e, closed, std::abs(e - closed) / closed});
    }
  for (const auto& r : rows)
    std::printf("solve[%s]: n=%d E=%.12g closed=%.12g rel_err=%.3e\n", r.route.c_str(), r.n,
                r.e_num, r.e_closed, r.rel_err);

  if (cfg.output.empty()) return;
  if (cfg.format == "csv") {
    auto os = open_out(cfg.output + ".csv");
    os << "route,n,E_numeric,E_closed,rel_err\n";
    char buf[160];
    for (const auto& r : rows) {
      std::snprintf(buf, sizeof buf, "%s,%d,%.17g,%.17g,%.6e\n", r.route.c_str(), r.n, r.e_num,
                    r.e_closed, r.rel_err);
      os << buf;
    }
  } else if (cfg.format == "json") {
    json j = json::array();
    for (const auto& r : rows)
      j.push_back({{"route", r.route},
                   {"n", r.n},
                   {"E_numeric", r.e_num},
                   {"E_closed", r.e_closed},
                   {"rel_err", r.rel_err}});
    open_out(cfg.output + ".json") << j.dump(2) << '\n';
  } else {
    std::vector<qbohm::PlotPanel> panels;
    for (const auto& [name, sol] : solutions) {
      qbohm::PlotPanel panel{"numeric states (" + name + ")", "x", "psi_n(x)", {}};
      for (int n : cfg.n_list) {
        const auto& psi = sol.psi[static_cast<std::size_t>(n - 1)];
        qbohm::PlotSeries s{"n=" + std::to_string(n), {}, {}, false};
        for (std::size_t i = 0; i < grid.n_points; ++i) {
          s.x.push_back(grid.node(i));
          s.y.push_back(psi.values[i].real());
        }
        panel.series.push_back(std::move(s));
      }
      panels.push_back(std::move(panel));
    }
    qbohm::write_svg_file(cfg.output + ".svg", panels);
  }
}

void run_bohm(const RunConfig& cfg) {
  qbohm::WellSpec w(cfg.L, resolved_gamma(cfg), cfg.hbar, cfg.m0);
  auto grid = w.grid(cfg.points);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (int n : cfg.n_list) {
    auto phi = qbohm::sample_phi(w, n, grid);
    auto snap = qbohm::make_snapshot(phi, cfg.hbar, cfg.m0);
    const double e = w.energy(n);
    double peak = 0.0;
    for (double v : snap.varrho.values) peak = std::max(peak, v);
    double split_err = 0.0, hj_err = 0.0;
    for (std::size_t i = 0; i < grid.n_points; ++i) {
      if (snap.varrho.values[i] < 1e-4 * peak) continue;
      const double sum =
          snap.q1.values[i] + snap.q2.values[i] + snap.q3.values[i];
      if (!std::isnan(sum) && !std::isnan(snap.q_total.values[i]))
        split_err = std::max(split_err, std::abs(sum - snap.q_total.values[i]));
      if (!std::isnan(snap.q_total.values[i]))
        hj_err = std::max(hj_err, std::abs(snap.q_total.values[i] - e));
    }
    std::printf("bohm: n=%d E=%.12g split_err=%.3e hj_err=%.3e\n", n, e, split_err, hj_err);

    if (cfg.output.empty()) continue;
    const std::string stem =
        cfg.n_list.size() > 1 ? cfg.output + "_n" + std::to_string(n) : cfg.output;
    if (cfg.format == "csv") {
      qbohm::write_snapshot_csv_file(stem + ".csv", snap);
    } else if (cfg.format == "json") {
      json j{{"n", n},          {"E", e},
             {"gammaL", w.gamma * w.L}, {"points", grid.n_points},
             {"split_err", split_err},  {"hj_err", hj_err}};
      open_out(stem + ".json") << j.dump(2) << '\n';
    } else {
      qbohm::PlotPanel dens{"deformed density, n=" + std::to_string(n), "x", "varrho_q", {}};
      qbohm::PlotSeries sd{"varrho_q", {}, {}, false};
      qbohm::PlotPanel qp{"quantum potential, n=" + std::to_string(n), "x", "Q_q", {}};
      qbohm::PlotSeries sq{"Q_q", {}, {}, false};
      for (std::size_t i = 0; i < grid.n_points; ++i) {
        sd.x.push_back(grid.node(i));
        sd.y.push_back(snap.varrho.values[i]);
        sq.x.push_back(grid.node(i));
        // Display mask: Q is ill conditioned where the density vanishes.
        sq.y.push_back(snap.varrho.values[i] < 1e-4 * peak ? nan : snap.q_total.values[i]);
      }
      dens.series.push_back(std::move(sd));
      qp.series.push_back(std::move(sq));
      qbohm::write_svg_file(stem + ".svg", {dens, qp});
    }
  }
}

void run_fisher(const RunConfig& cfg) {
  if (cfg.format == "svg")
    throw UsageError("format 'svg' is not available for command 'fisher'");
  qbohm::WellSpec w(cfg.L, resolved_gamma(cfg), cfg.hbar, cfg.m0);
  auto grid = w.grid(cfg.points);
  std::vector<qbohm::FisherReport> rows;
  std::vector<qbohm::FisherReport> closed;
  for (int n : cfg.n_list) {
    auto rho = qbohm::density(qbohm::sample_psi(w, n, grid));
    auto r = qbohm::cramer_rao_check(rho);
    r.gamma_L = w.gamma * w.L;
    r.n = n;
    rows.push_back(r);
    closed.push_back(qbohm::well_report(w, n));
    std::printf("fisher: n=%d I_q=%.12g closed_I_q=%.12g I_pdm=%.12g I_F=%.12g margin_q=%.12g\n",
                n, r.I_q, closed.back().I_q, r.I_pdm, r.I_F, r.margin_q);
  }
  if (cfg.output.empty()) return;
  if (cfg.format == "csv") {
    auto os = open_out(cfg.output + ".csv");
    qbohm::write_report_csv(os, rows, false);
  } else {
    json j = json::array();
    for (std::size_t i = 0; i < rows.size(); ++i)
      j.push_back({{"quadrature", report_to_json(rows[i])},
                   {"closed_form", report_to_json(closed[i])}});
    open_out(cfg.output + ".json") << j.dump(2) << '\n';
  }
}

void run_fig1(const RunConfig& cfg) {
  std::vector<double> values;
  for (double v : qbohm::default_sweep_gamma_l())
    if (v >= cfg.gamma_l_min - 1e-12 && v <= cfg.gamma_l_max + 1e-12) values.push_back(v);
  if (values.empty())
    throw qbohm::domain_error("fig1: no sweep abscissas inside the requested range");
  const int n_max = *std::max_element(cfg.n_list.begin(), cfg.n_list.end());
  auto all = qbohm::sweep_reports(values, n_max, cfg.L, cfg.hbar, cfg.m0);
  std::vector<qbohm::FisherReport> rows;
  for (const auto& r : all)
    if (std::find(cfg.n_list.begin(), cfg.n_list.end(), r.n) != cfg.n_list.end())
      rows.push_back(r);

  for (int n : cfg.n_list) {
    double min_margin = std::numeric_limits<double>::infinity();
    double at = 0.0;
    for (const auto& r : rows)
      if (r.n == n && r.margin_q < min_margin) {
        min_margin = r.margin_q;
        at = r.gamma_L;
      }
    std::printf("fig1: n=%d abscissas=%zu min_margin_q=%.12g at gammaL=%.6g\n", n, values.size(),
                min_margin, at);
  }

  if (cfg.format == "json") {
    json j = json::array();
    for (const auto& r : rows) j.push_back(report_to_json(r));
    open_out(cfg.output + ".json") << j.dump(2) << '\n';
    return;
  }
  {
    auto os = open_out(cfg.output + ".csv");
    qbohm::write_report_csv(os, rows, true);
  }
  if (cfg.format != "svg") return;

  auto log10_or_nan = [](double v) {
    return v > 0.0 ? std::log10(v) : std::numeric_limits<double>::quiet_NaN();
  };
  const double x_lo = values.front(), x_hi = values.back();
  qbohm::PlotSeries unit{"unit product", {x_lo, x_hi}, {0.0, 0.0}, true};

  qbohm::PlotPanel a{"(a) variable-mass product", "gamma L", "log10 I (dx)^2", {}};
  qbohm::PlotPanel b{"(b) deformed product vs bound", "gamma L", "log10 I_q (dx)^2", {}};
  qbohm::PlotPanel c{"(c) plain uncertainty product", "gamma L", "log10 I_F (dx)^2", {}};
  for (int n : cfg.n_list) {
    qbohm::PlotSeries sa{"n=" + std::to_string(n), {}, {}, false};
    qbohm::PlotSeries sb = sa, sc = sa;
    qbohm::PlotSeries sbound{"bound n=" + std::to_string(n), {}, {}, true};
    for (const auto& r : rows) {
      if (r.n != n) continue;
      sa.x.push_back(r.gamma_L);
      sa.y.push_back(log10_or_nan(r.cr_pdm));
      sb.x.push_back(r.gamma_L);
      sb.y.push_back(log10_or_nan(r.cr_q_lhs));
      sbound.x.push_back(r.gamma_L);
      sbound.y.push_back(log10_or_nan(r.cr_q_rhs));
      sc.x.push_back(r.gamma_L);
      sc.y.push_back(log10_or_nan(r.cr_std));
    }
    a.series.push_back(std::move(sa));
    b.series.push_back(std::move(sb));
    b.series.push_back(std::move(sbound));
    c.series.push_back(std::move(sc));
  }
  a.series.push_back(unit);
  c.series.push_back(unit);
  qbohm::write_svg_file(cfg.output + ".svg", {a, b, c});
}

void run_propagate(const RunConfig& cfg) {
  qbohm::WellSpec w(cfg.L, resolved_gamma(cfg), cfg.hbar, cfg.m0);
  auto grid = w.grid(cfg.points);
  const int n_max = *std::max_element(cfg.n_list.begin(), cfg.n_list.end());
  auto sol = qbohm::solve_mapped(w.potential(), grid, static_cast<std::size_t>(n_max), cfg.hbar,
                                 cfg.m0);
  qbohm::ComplexField phi0 = sol.phi[0];
  for (std::size_t i = 0; i < grid.n_points; ++i) {
    qbohm::cplx acc{0.0, 0.0};
    for (int n : cfg.n_list) acc += sol.phi[static_cast<std::size_t>(n - 1)].values[i];
    phi0.values[i] = acc;
  }
  phi0 = qbohm::normalized(phi0);
  for (int n : cfg.n_list)
    std::printf("propagate: component n=%d E=%.12g\n", n,
                sol.energies[static_cast<std::size_t>(n - 1)]);

  std::size_t se = cfg.store_every ? cfg.store_every : std::max<std::size_t>(1, cfg.steps / 100);
  auto run = qbohm::propagate(phi0, w.potential(), cfg.dt, cfg.steps, cfg.hbar, cfg.m0, se);
  double drift = 0.0;
  for (double qn : run.q_norms) drift = std::max(drift, std::abs(qn - run.q_norms.front()));

  // Continuity needs uniformly spaced slices; drop a ragged final slice.
  std::size_t uniform = run.phi.size();
  if (cfg.steps % se != 0 && uniform > 1) --uniform;
  double residual = std::numeric_limits<double>::quiet_NaN();
  if (uniform >= 3) {
    std::vector<qbohm::ComplexField> slices(run.phi.begin(),
                                            run.phi.begin() + static_cast<long>(uniform));
    residual = qbohm::max_abs(
        qbohm::continuity_residual(slices, cfg.dt * static_cast<double>(se), cfg.hbar, cfg.m0));
  }
  std::printf("propagate: steps=%zu dt=%.6g stored=%zu qnorm_drift=%.3e continuity_max=%.3e\n",
              cfg.steps, cfg.dt, run.phi.size(), drift, residual);

  if (cfg.output.empty()) return;
  if (cfg.format == "csv") {
    qbohm::write_csv_file(cfg.output + ".csv", run.phi.back());
  } else if (cfg.format == "json") {
    json j;
    j["dt"] = cfg.dt;
    j["steps"] = cfg.steps;
    j["store_every"] = se;
    j["times"] = run.times;
    j["q_norms"] = run.q_norms;
    j["qnorm_drift"] = drift;
    j["continuity_max"] = residual;
    open_out(cfg.output + ".json") << j.dump(2) << '\n';
  } else {
    qbohm::PlotPanel panel{"deformed density before and after", "x", "varrho_q", {}};
    qbohm::PlotSeries s0{"t=0", {}, {}, false};
    qbohm::PlotSeries s1{"t=final", {}, {}, true};
    const auto& first = run.phi.front();
    const auto& last = run.phi.back();
    for (std::size_t i = 0; i < grid.n_points; ++i) {
      s0.x.push_back(grid.node(i));
      s0.y.push_back(std::norm(first.values[i]));
      s1.x.push_back(grid.node(i));
      s1.y.push_back(std::norm(last.values[i]));
    }
    panel.series.push_back(std::move(s0));
    panel.series.push_back(std::move(s1));
    qbohm::write_svg_file(cfg.output + ".svg", {panel});
  }
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  bool json_gamma = false, json_gamma_l = false, json_n = false;

  // The config file is applied before the regular parse, so explicit flags
  // override it.
  std::string config_path;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--config" && i + 1 < argc) config_path = argv[i + 1];
    else if (a.rfind("--config=", 0) == 0) config_path = a.substr(9);
  }
  if (!config_path.empty()) {
    try {
      load_json_config(config_path, cfg, json_gamma, json_gamma_l, json_n);
    } catch (const UsageError& e) {
      std::fprintf(stderr, "usage error: %s\n", e.what());
      return 2;
    }
  }

  CLI::App app{
      "Variable-mass quantum well toolkit.\n"
      "Commands: well (closed-form report), solve (numeric spectra), bohm\n"
      "(pilot-wave snapshot), fisher (information integrals), fig1\n"
      "(Cramer-Rao sweep figure), propagate (Crank-Nicolson evolution)."};
  std::string command = cfg.command;
  std::string config_opt;
  app.add_option("command", command, "one of: " + std::string(kCommands));
  app.add_option("--config", config_opt, "JSON config file; explicit flags override its values");
  app.add_option("--gamma", cfg.gamma, "deformation parameter gamma");
  app.add_option("--gammaL", cfg.gamma_l, "dimensionless gamma*L (alternative to --gamma)");
  app.add_option("--L", cfg.L, "well width")->capture_default_str();
  app.add_option("--hbar", cfg.hbar, "Planck constant")->capture_default_str();
  app.add_option("--m0", cfg.m0, "reference mass")->capture_default_str();
  app.add_option("--n", cfg.n_list, "quantum numbers, e.g. 1,2,3")->delimiter(',');
  app.add_option("--points", cfg.points, "grid points")->capture_default_str();
  app.add_option("--output", cfg.output, "artifact path stem (no extension)");
  app.add_option("--format", cfg.format, "artifact format: csv, json or svg")
      ->check(CLI::IsMember({"csv", "json", "svg"}));
  app.add_option("--route", cfg.route, "solver route: mapped, direct or both")
      ->capture_default_str()
      ->check(CLI::IsMember({"mapped", "direct", "both"}));
  app.add_option("--dt", cfg.dt, "propagation time step")->capture_default_str();
  app.add_option("--steps", cfg.steps, "propagation step count")->capture_default_str();
  app.add_option("--store-every", cfg.store_every, "slice storage stride (0 = steps/100)");
  app.add_option("--gammaL-min", cfg.gamma_l_min, "sweep lower bound (fig1)")
      ->capture_default_str();
  app.add_option("--gammaL-max", cfg.gamma_l_max, "sweep upper bound (fig1)")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (command.empty()) {
    std::fprintf(stderr, "usage error: missing command; expected one of: %s\n", kCommands);
    return 2;
  }
  if (!known_command(command)) {
    std::fprintf(stderr, "usage error: unknown command '%s'; expected one of: %s\n",
                 command.c_str(), kCommands);
    return 2;
  }
  cfg.command = command;

  const bool flag_gamma = app.count("--gamma") > 0, flag_gamma_l = app.count("--gammaL") > 0;
  if (flag_gamma && flag_gamma_l) {
    std::fprintf(stderr, "usage error: specify --gamma or --gammaL, not both\n");
    return 2;
  }
  if (flag_gamma) cfg.gamma_l.reset();
  else if (flag_gamma_l) cfg.gamma.reset();
  else if (json_gamma && json_gamma_l) {
    std::fprintf(stderr, "usage error: config sets both gamma and gammaL\n");
    return 2;
  }

  const bool n_given = app.count("--n") > 0 || json_n;
  if (!n_given) cfg.n_list = cfg.command == "fig1" ? std::vector<int>{1, 2, 3}
                                                   : std::vector<int>{1};
  if (cfg.n_list.empty()) {
    std::fprintf(stderr, "usage error: --n needs at least one quantum number\n");
    return 2;
  }
  if (cfg.format.empty()) cfg.format = cfg.command == "fig1" ? "svg" : "csv";
  if (cfg.command == "fig1" && cfg.output.empty()) cfg.output = "fig1";

  try {
    if (cfg.command == "well") run_well(cfg);
    else if (cfg.command == "solve") run_solve(cfg);
    else if (cfg.command == "bohm") run_bohm(cfg);
    else if (cfg.command == "fisher") run_fisher(cfg);
    else if (cfg.command == "fig1") run_fig1(cfg);
    else run_propagate(cfg);
  } catch (const UsageError& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
