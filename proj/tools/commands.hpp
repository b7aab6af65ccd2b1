#pragma once

#include <cstdint>
#include <string>

#include "json.hpp"

namespace dnlslab {

// exit codes shared by every subcommand
inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;
inline constexpr int kExitNumerical = 3;

struct WaveArgs {
  double omega0 = 1.0;
  double omega1 = 0.0;
  double b = 0.0;
  int n = 4096;
  double half_length = 0.0;  // 0 = automatic
  std::string out = "wave";
};

struct ClassifyArgs {
  double omega0 = 1.0;
  double omega1 = 0.0;
  double b = 0.0;
  double tol = 1e-9;
  std::string out = "classify";
};

struct KappaArgs {
  double b = 0.0;
  bool sweep = false;
  double bmin = 0.0;
  double bmax = 1.0;
  int steps = 10;
  std::string out = "kappa";
};

int cmd_wave(const WaveArgs& a);
int cmd_classify(const ClassifyArgs& a);
int cmd_kappa(const KappaArgs& a);

// config-file driven commands; `overrides` holds CLI flag overrides applied
// on top of the config document
int cmd_evolve(const std::string& config_path, const nlohmann::json& overrides,
               const std::string& out, bool plot = false);
int cmd_stability_experiment(const std::string& config_path,
                             const nlohmann::json& overrides,
                             const std::string& out, bool plot = false);

int cmd_selftest(const std::string& filter);

}  // namespace dnlslab
