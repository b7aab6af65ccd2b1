#include "commands.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <vector>

#include "dnls/dynamics.hpp"
#include "dnls/functionals.hpp"
#include "dnls/io.hpp"
#include "dnls/modulation.hpp"
#include "dnls/random_field.hpp"
#include "dnls/spectral.hpp"
#include "dnls/waves.hpp"

namespace dnlslab {

using namespace dnls;
namespace fn = dnls::functionals;
namespace dyn = dnls::dynamics;
namespace md = dnls::modulation;
using nlohmann::json;

namespace {

json functional_report(const Omega& w, const Field& v, const Params& p) {
  json j;
  j["E"] = fn::energy(v, p);
  j["Q0"] = fn::charge0(v);
  j["Q1"] = fn::charge1(v);
  j["L"] = fn::l_form(w, v);
  j["S"] = fn::action(w, v, p);
  j["K"] = fn::nehari(w, v, p);
  return j;
}

Grid make_grid(const Omega& w, int n, double half_length) {
  return half_length > 0.0 ? Grid(half_length, n) : waves::default_grid(w, n);
}

json load_config(const std::string& path) {
  if (path.empty()) return json::object();
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open config file: " + path);
  return json::parse(in);  // parse_error propagates with diagnostics
}

json merge(json base, const json& overrides) {
  for (const auto& [k, v] : overrides.items()) base[k] = v;
  return base;
}

double get_num(const json& j, const char* key, std::optional<double> dflt = {}) {
  if (j.contains(key)) {
    if (!j[key].is_number())
      throw InvalidArgument(std::string("config field '") + key +
                            "' must be a number");
    return j[key].get<double>();
  }
  if (dflt) return *dflt;
  throw InvalidArgument(std::string("config field '") + key + "' is required");
}

struct EvolveSetup {
  Omega omega;
  Params params;
  Grid grid;
  dyn::EvolutionConfig cfg;
  std::uint64_t seed = 0;
  json resolved;
};

EvolveSetup parse_evolution(const json& doc) {
  EvolveSetup s;
  s.omega = Omega(get_num(doc, "omega0"), get_num(doc, "omega1"));
  s.params = Params(get_num(doc, "b"));
  const int n = static_cast<int>(get_num(doc, "n", 2048));
  s.grid = make_grid(s.omega, n, get_num(doc, "half_length", 0.0));

  s.cfg.dt = get_num(doc, "dt", 0.0);
  s.cfg.t_end = get_num(doc, "t_end");
  s.cfg.dealias = doc.value("dealias", true);
  s.cfg.monitor_every = static_cast<int>(get_num(doc, "monitor_every", 50));
  s.cfg.drift_tolerance = get_num(doc, "drift_tolerance", 1e-7);
  const std::string scheme = doc.value("scheme", "ifrk4");
  if (scheme == "ifrk4")
    s.cfg.scheme = dyn::Scheme::IntegratingFactorRK4;
  else if (scheme == "midpoint")
    s.cfg.scheme = dyn::Scheme::ImplicitMidpoint;
  else
    throw InvalidArgument("scheme must be 'ifrk4' or 'midpoint'");
  s.seed = static_cast<std::uint64_t>(get_num(doc, "seed", 20260808.0));

  s.resolved = {{"omega0", s.omega.omega0},
                {"omega1", s.omega.omega1},
                {"b", s.params.b},
                {"gamma", s.params.gamma},
                {"n", s.grid.n},
                {"half_length", s.grid.half_length},
                {"dt", s.cfg.dt},
                {"t_end", s.cfg.t_end},
                {"scheme", scheme},
                {"dealias", s.cfg.dealias},
                {"monitor_every", s.cfg.monitor_every},
                {"drift_tolerance", s.cfg.drift_tolerance},
                {"seed", s.seed}};
  return s;
}

}  // namespace

int cmd_wave(const WaveArgs& a) {
  io::RunManifest man;
  man.command = "wave";
  man.started_at = io::timestamp_utc_now();

  const Omega w(a.omega0, a.omega1);
  const Params p(a.b);
  const Grid g = make_grid(w, a.n, a.half_length);
  const Field phi = waves::profile(w, p, g);

  const std::string csv = a.out + "_profile.csv";
  const std::string rep = a.out + "_functionals.json";
  io::write_field_csv(csv, phi);
  io::write_json(rep, functional_report(w, phi, p));

  man.parameters = {{"omega0", w.omega0}, {"omega1", w.omega1},
                    {"b", p.b},           {"gamma", p.gamma},
                    {"n", g.n},           {"half_length", g.half_length}};
  man.outputs = {csv, rep};
  man.finished_at = io::timestamp_utc_now();
  man.write(a.out + "_manifest.json");
  std::cout << "wrote " << csv << " and " << rep << "\n";
  return kExitOk;
}

int cmd_classify(const ClassifyArgs& a) {
  io::RunManifest man;
  man.command = "classify";
  man.started_at = io::timestamp_utc_now();

  const Omega w(a.omega0, a.omega1);
  const Params p(a.b);
  const auto r = waves::classify(w, p, a.tol);

  json j = {{"b", p.b},
            {"gamma", p.gamma},
            {"omega0", w.omega0},
            {"omega1", w.omega1},
            {"kappa", r.kappa ? json(*r.kappa) : json(nullptr)},
            {"q1", r.q1_closed},
            {"det_d2", r.det_d2},
            {"d2_00", r.d2_00},
            {"verdict", waves::to_string(r.verdict)}};
  const std::string rep = a.out + "_report.json";
  io::write_json(rep, j);

  man.parameters = {{"omega0", w.omega0},
                    {"omega1", w.omega1},
                    {"b", p.b},
                    {"tol", a.tol}};
  man.outputs = {rep};
  man.finished_at = io::timestamp_utc_now();
  man.write(a.out + "_manifest.json");
  std::cout << waves::to_string(r.verdict) << "\n";
  return kExitOk;
}

int cmd_kappa(const KappaArgs& a) {
  io::RunManifest man;
  man.command = "kappa";
  man.started_at = io::timestamp_utc_now();
  const double nan = std::numeric_limits<double>::quiet_NaN();

  std::vector<std::string> outputs;
  if (!a.sweep) {
    const Params p(a.b);
    json j;
    j["b"] = a.b;
    if (a.b > 0.0) {
      const double xh = waves::xi_hat(p);
      j["xi_hat"] = xh;
      j["kappa"] = waves::kappa(p);
      j["g_residual"] = waves::g_function(xh, p) - 1.0;
    } else {
      j["xi_hat"] = nullptr;  // no threshold without the quintic term
      j["kappa"] = nullptr;
      j["g_residual"] = nullptr;
    }
    const std::string rep = a.out + "_kappa.json";
    io::write_json(rep, j);
    outputs.push_back(rep);
  } else {
    if (!(a.bmax > a.bmin) || a.steps < 2)
      throw InvalidArgument("sweep requires bmax > bmin and steps >= 2");
    std::vector<std::vector<double>> rows;
    for (int i = 0; i < a.steps; ++i) {
      const double b = a.bmin + (a.bmax - a.bmin) * i / (a.steps - 1);
      const Params p(b);
      if (b > 0.0) {
        const double xh = waves::xi_hat(p);
        rows.push_back(
            {b, xh, waves::kappa(p), waves::g_function(xh, p) - 1.0});
      } else {
        rows.push_back({b, nan, nan, nan});  // null row
      }
    }
    const std::string csv = a.out + "_sweep.csv";
    io::write_csv(csv, "b,xi_hat,kappa,g_residual", rows);
    outputs.push_back(csv);
  }

  man.parameters = {{"b", a.b},
                    {"sweep", a.sweep},
                    {"bmin", a.bmin},
                    {"bmax", a.bmax},
                    {"steps", a.steps}};
  man.outputs = outputs;
  man.finished_at = io::timestamp_utc_now();
  man.write(a.out + "_manifest.json");
  return kExitOk;
}

int cmd_evolve(const std::string& config_path, const json& overrides,
               const std::string& out, bool plot) {
  io::RunManifest man;
  man.command = "evolve";
  man.started_at = io::timestamp_utc_now();

  const EvolveSetup s =
      parse_evolution(merge(load_config(config_path), overrides));
  const Field phi = waves::profile(s.omega, s.params, s.grid);

  std::vector<std::vector<double>> rows;
  double final_transport = 0.0;
  auto monitor = [&](const dyn::MonitorSample& m, const Field& u) {
    if (m.step == 0) rows.clear();  // dt-halving restart
    const auto [dist, theta] = md::orbital_distance(u, phi);
    rows.push_back({m.t, m.energy, m.q0, m.q1, m.h1norm, dist});
    const Field exact = fn::translate(
        fn::ThetaPair(s.omega.omega0 * m.t, s.omega.omega1 * m.t), phi);
    final_transport = fn::norm_h1(u - exact);
    return true;
  };

  const auto traj = dyn::evolve(phi, s.cfg, s.params, monitor);

  const std::string traj_csv = out + "_trajectory.csv";
  io::write_csv(traj_csv, "t,E,Q0,Q1,h1norm,orbdist", rows);
  std::vector<std::string> outputs = {traj_csv};
  for (size_t i = 0; i < traj.snapshots.size(); ++i) {
    const std::string snap = out + "_snap_" + std::to_string(i) + ".csv";
    io::write_field_csv(snap, traj.snapshots[i].second);
    outputs.push_back(snap);
  }
  if (plot) {
    io::PlotSeries dist{"orbdist", {}, {}};
    for (const auto& r : rows) {
      dist.x.push_back(r[0]);
      dist.y.push_back(r[5]);
    }
    io::write_svg_plot(out + "_orbdist.svg", "orbital distance", {dist});
    io::write_gnuplot_script(out + "_plot.gp", traj_csv,
                             {"E", "Q0", "Q1", "orbdist"});
    outputs.push_back(out + "_orbdist.svg");
    outputs.push_back(out + "_plot.gp");
  }

  man.parameters = s.resolved;
  man.parameters["initial"] = "soliton";
  man.parameters["dt_used"] = traj.dt_used;
  man.parameters["final_transport_error"] = final_transport;
  man.outputs = outputs;
  man.finished_at = io::timestamp_utc_now();
  man.write(out + "_manifest.json");
  std::cout << "evolved to t=" << traj.times.back() << ", transport error "
            << final_transport << "\n";
  return kExitOk;
}

int cmd_stability_experiment(const std::string& config_path,
                             const json& overrides, const std::string& out,
                             bool plot) {
  io::RunManifest man;
  man.command = "stability-experiment";
  man.started_at = io::timestamp_utc_now();

  json doc = merge(load_config(config_path), overrides);
  const EvolveSetup s = parse_evolution(doc);
  const double lambda = get_num(doc, "lambda");
  const double factor = get_num(doc, "distance_factor", 10.0);
  std::string kind = doc.value("perturbation", "psi_direction");
  if (!(std::fabs(lambda) <= 0.1))
    throw InvalidArgument(
        "perturbation amplitude must satisfy |lambda| <= 0.1");
  if (!(factor > 1.0)) throw InvalidArgument("distance_factor must exceed 1");
  if (kind != "psi_direction" && kind != "scaling" && kind != "random")
    throw InvalidArgument(
        "perturbation must be psi_direction, scaling or random");

  const Field phi = waves::profile(s.omega, s.params, s.grid);
  const auto verdict = waves::classify(s.omega, s.params);

  bool fallback = false;
  std::optional<md::UnstableDirection> direction;
  std::optional<Field> psi;
  if (kind == "psi_direction") {
    if (verdict.verdict != waves::Verdict::Unstable) {
      std::cerr << "warning: psi_direction requires an unstable wave; "
                   "falling back to the scaling perturbation\n";
      kind = "scaling";
      fallback = true;
    } else {
      direction = md::unstable_direction(s.omega, s.params, s.grid);
      psi = direction->psi;
    }
  }

  Field u0 = phi;
  if (kind == "psi_direction") {
    axpy(u0, lambda, *psi);
  } else if (kind == "scaling") {
    u0 = cplx(1.0 + lambda, 0.0) * phi;
  } else {
    double peak = 0.0;
    for (const cplx& z : phi.v) peak = std::max(peak, std::abs(z));
    axpy(u0, 1.0, random_field(s.grid, s.seed, 0, std::fabs(lambda) * peak));
  }

  const auto [d_init, theta_init] = md::orbital_distance(u0, phi);

  struct Row {
    double t, alpha0, alpha1, a, p, dist;
    bool converged;
  };
  std::vector<Row> series;
  std::vector<std::vector<double>> traj_rows;
  std::optional<std::array<double, 2>> warm;
  bool exceeded = false;
  double t_exceeded = 0.0, d_max = 0.0;
  double h_min_eig = std::numeric_limits<double>::infinity();
  const double nan = std::numeric_limits<double>::quiet_NaN();

  auto monitor = [&](const dyn::MonitorSample& m, const Field& u) {
    if (m.step == 0) {  // dt-halving restart
      series.clear();
      traj_rows.clear();
      warm.reset();
      exceeded = false;
      d_max = 0.0;
    }
    const auto [dist, theta] = md::orbital_distance(u, phi);
    d_max = std::max(d_max, dist);
    traj_rows.push_back({m.t, m.energy, m.q0, m.q1, m.h1norm, dist});

    Row row{m.t, nan, nan, nan, nan, dist, false};
    if (psi) {
      try {
        md::AlphaOptions opts;
        opts.initial_guess = warm;
        const auto st = md::solve_alpha(u, phi, opts);
        warm = {{st.alpha0, st.alpha1}};
        const Field q = md::q_field(u, st, phi, *psi);
        row.alpha0 = st.alpha0;
        row.alpha1 = st.alpha1;
        row.a = md::a_functional(u, st, *psi);
        row.p = md::p_functional(u, q, s.omega, s.params);
        row.converged = true;
        {
          const auto& hm = st.h_matrix;
          fn::Hessian2 sym;
          sym.a00 = hm[0][0];
          sym.a01 = 0.5 * (hm[0][1] + hm[1][0]);
          sym.a11 = hm[1][1];
          h_min_eig = std::min(h_min_eig, sym.eigenvalues()[0]);
        }
      } catch (const NotInTube&) {
        warm.reset();
      } catch (const NoConvergence&) {
        warm.reset();
      }
    }
    series.push_back(row);

    if (d_init > 0.0 && dist > factor * d_init) {
      exceeded = true;
      t_exceeded = m.t;
      return false;
    }
    return true;
  };

  dyn::evolve(u0, s.cfg, s.params, monitor);

  std::vector<std::vector<double>> srows;
  for (const Row& r : series)
    srows.push_back({r.t, r.alpha0, r.alpha1, r.a, r.p, r.dist});
  const std::string series_csv = out + "_series.csv";
  const std::string traj_csv = out + "_trajectory.csv";
  io::write_csv(series_csv, "t,alpha0,alpha1,A,P,orbdist", srows);
  io::write_csv(traj_csv, "t,E,Q0,Q1,h1norm,orbdist", traj_rows);

  // dichotomy data and the dA/dt = P identity over the logged series
  double p_min = std::numeric_limits<double>::infinity();
  double p_max = -p_min;
  int p_count = 0;
  double dadt_max_rel = 0.0;
  int dadt_points = 0;
  for (size_t i = 0; i < series.size(); ++i) {
    if (!series[i].converged) continue;
    p_min = std::min(p_min, series[i].p);
    p_max = std::max(p_max, series[i].p);
    ++p_count;
    if (i == 0 || i + 1 >= series.size()) continue;
    if (!series[i - 1].converged || !series[i + 1].converged) continue;
    if (std::fabs(series[i].p) <= 1e-8) continue;
    const double dadt = (series[i + 1].a - series[i - 1].a) /
                        (series[i + 1].t - series[i - 1].t);
    dadt_max_rel = std::max(
        dadt_max_rel, std::fabs(dadt - series[i].p) / std::fabs(series[i].p));
    ++dadt_points;
  }

  json rep;
  rep["verdict"] = waves::to_string(verdict.verdict);
  rep["perturbation"] = kind;
  rep["fallback_used"] = fallback;
  rep["lambda"] = lambda;
  rep["initial_distance"] = d_init;
  rep["max_distance"] = d_max;
  rep["distance_factor"] = factor;
  rep["exceeded"] = exceeded;
  rep["t_exceeded"] = exceeded ? json(t_exceeded) : json(nullptr);
  if (p_count > 0) {
    rep["p_min"] = p_min;
    rep["p_max"] = p_max;
    rep["p_sign"] = p_min > 0.0   ? "positive"
                    : p_max < 0.0 ? "negative"
                                  : "indefinite";
    rep["h_matrix_min_eigenvalue"] = h_min_eig;
  } else {
    rep["p_min"] = nullptr;
    rep["p_max"] = nullptr;
    rep["p_sign"] = "n/a";
    rep["h_matrix_min_eigenvalue"] = nullptr;
  }
  rep["dadt_check"] = {
      {"points", dadt_points},
      {"max_rel_err", dadt_points ? json(dadt_max_rel) : json(nullptr)}};
  const std::string rep_json = out + "_report.json";
  io::write_json(rep_json, rep);
  std::vector<std::string> outputs = {series_csv, traj_csv, rep_json};

  if (direction) {
    json cert = {{"c0", direction->c[0]},
                 {"c1", direction->c[1]},
                 {"q0_pairing", direction->certificate.q0_pairing},
                 {"q1_pairing", direction->certificate.q1_pairing},
                 {"second_variation", direction->certificate.second_variation}};
    io::write_json(out + "_certificate.json", cert);
    outputs.push_back(out + "_certificate.json");
  }
  if (plot) {
    io::PlotSeries dist{"orbdist", {}, {}}, pser{"P", {}, {}};
    for (const Row& r : series) {
      dist.x.push_back(r.t);
      dist.y.push_back(r.dist);
      pser.x.push_back(r.t);
      pser.y.push_back(r.p);
    }
    io::write_svg_plot(out + "_orbdist.svg", "orbital distance and P",
                       {dist, pser});
    io::write_gnuplot_script(out + "_plot.gp", series_csv,
                             {"A", "P", "orbdist"});
    outputs.push_back(out + "_orbdist.svg");
    outputs.push_back(out + "_plot.gp");
  }

  man.parameters = s.resolved;
  man.parameters["lambda"] = lambda;
  man.parameters["perturbation"] = kind;
  man.parameters["distance_factor"] = factor;
  man.outputs = outputs;
  man.finished_at = io::timestamp_utc_now();
  man.write(out + "_manifest.json");
  std::cout << "exceeded=" << (exceeded ? "yes" : "no")
            << " max_distance=" << d_max << " initial=" << d_init << "\n";
  return kExitOk;
}

}  // namespace dnlslab
