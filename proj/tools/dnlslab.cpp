// dnlslab: numerical laboratory for solitary waves of the derivative NLS
// equation with a quintic term.  See README.md for the command reference.

#include <exception>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "commands.hpp"
#include "dnls/errors.hpp"
#include "dnls/version.hpp"
#include "json.hpp"

namespace {

using dnlslab::kExitInput;
using dnlslab::kExitNumerical;

int dispatch(const std::function<int()>& fn) {
  try {
    return fn();
  } catch (const dnls::InvalidParams& e) {
    std::cerr << "input error: " << e.what() << "\n";
  } catch (const dnls::InvalidOmega& e) {
    std::cerr << "input error: " << e.what() << "\n";
  } catch (const dnls::InvalidArgument& e) {
    std::cerr << "input error: " << e.what() << "\n";
  } catch (const dnls::GridTooShort& e) {
    std::cerr << "input error: " << e.what() << "\n";
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "input error: " << e.what() << "\n";
  } catch (const dnls::Error& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitInput;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"solitary-wave laboratory for the quintic derivative NLS"};
  app.set_version_flag("--version", DNLS_VERSION);
  app.require_subcommand(1);

  dnlslab::WaveArgs wave;
  auto* cw = app.add_subcommand("wave", "sample a solitary-wave profile");
  cw->add_option("omega0,--omega0", wave.omega0, "frequency")->required();
  cw->add_option("omega1,--omega1", wave.omega1, "velocity parameter")
      ->required();
  cw->add_option("b,--b", wave.b, "quintic coupling")->required();
  cw->add_option("--n", wave.n, "grid size (power of two)");
  cw->add_option("--length", wave.half_length,
                 "grid half-length (0 = automatic)");
  cw->add_option("--out", wave.out, "output prefix");

  dnlslab::ClassifyArgs cls;
  auto* cc = app.add_subcommand("classify", "stability verdict for a wave");
  cc->add_option("omega0,--omega0", cls.omega0, "frequency")->required();
  cc->add_option("omega1,--omega1", cls.omega1, "velocity parameter")
      ->required();
  cc->add_option("b,--b", cls.b, "quintic coupling")->required();
  cc->add_option("--tol", cls.tol, "borderline tolerance");
  cc->add_option("--out", cls.out, "output prefix");

  dnlslab::KappaArgs kap;
  auto* ck = app.add_subcommand("kappa", "critical velocity ratio kappa(b)");
  ck->add_option("--b", kap.b, "quintic coupling");
  auto* sweep = ck->add_option_group("sweep");
  sweep->add_option("--sweep", [&kap](const CLI::results_t& res) {
    if (res.size() != 3) return false;
    try {
      kap.bmin = std::stod(res[0]);
      kap.bmax = std::stod(res[1]);
      kap.steps = std::stoi(res[2]);
    } catch (const std::exception&) {
      return false;
    }
    kap.sweep = true;
    return true;
  }, "bmin bmax steps")->expected(3);
  ck->add_option("--out", kap.out, "output prefix");

  std::string evolve_config, evolve_out = "evolve";
  bool evolve_plot = false;
  nlohmann::json evolve_over = nlohmann::json::object();
  auto* ce = app.add_subcommand("evolve", "integrate a solitary wave in time");
  ce->add_option("--config", evolve_config, "JSON config file");
  ce->add_option("--out", evolve_out, "output prefix");
  ce->add_flag("--plot", evolve_plot, "emit an SVG plot and gnuplot script");
  auto num_override = [](nlohmann::json& doc, const std::string& key) {
    return [&doc, key](const CLI::results_t& res) {
      try {
        doc[key] = std::stod(res[0]);
      } catch (const std::exception&) {
        return false;
      }
      return true;
    };
  };
  for (const char* key : {"omega0", "omega1", "b", "n", "dt", "t_end",
                          "monitor_every", "drift_tolerance", "seed"})
    ce->add_option(std::string("--") + key, num_override(evolve_over, key),
                   "override config field");
  std::string evolve_scheme;
  ce->add_option("--scheme", evolve_scheme, "ifrk4 or midpoint");

  std::string exp_config, exp_out = "experiment";
  bool exp_plot = false;
  nlohmann::json exp_over = nlohmann::json::object();
  auto* cx = app.add_subcommand("stability-experiment",
                                "perturb a wave and track the orbit distance");
  cx->add_option("--config", exp_config, "JSON config file");
  cx->add_option("--out", exp_out, "output prefix");
  cx->add_flag("--plot", exp_plot, "emit an SVG plot and gnuplot script");
  for (const char* key :
       {"omega0", "omega1", "b", "n", "dt", "t_end", "monitor_every",
        "drift_tolerance", "seed", "lambda", "distance_factor"})
    cx->add_option(std::string("--") + key, num_override(exp_over, key),
                   "override config field");
  std::string exp_kind;
  cx->add_option("--perturbation", exp_kind,
                 "psi_direction, scaling or random");

  std::string selftest_filter;
  auto* cs = app.add_subcommand("selftest",
                                "reduced-resolution acceptance checks");
  cs->add_option("--filter", selftest_filter, "run only matching checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }

  if (cw->parsed()) return dispatch([&] { return dnlslab::cmd_wave(wave); });
  if (cc->parsed())
    return dispatch([&] { return dnlslab::cmd_classify(cls); });
  if (ck->parsed()) return dispatch([&] { return dnlslab::cmd_kappa(kap); });
  if (ce->parsed())
    return dispatch([&] {
      if (!evolve_scheme.empty()) evolve_over["scheme"] = evolve_scheme;
      return dnlslab::cmd_evolve(evolve_config, evolve_over, evolve_out,
                                 evolve_plot);
    });
  if (cx->parsed())
    return dispatch([&] {
      if (!exp_kind.empty()) exp_over["perturbation"] = exp_kind;
      return dnlslab::cmd_stability_experiment(exp_config, exp_over, exp_out,
                                               exp_plot);
    });
  if (cs->parsed())
    return dispatch([&] { return dnlslab::cmd_selftest(selftest_filter); });
  return kExitInput;
}
