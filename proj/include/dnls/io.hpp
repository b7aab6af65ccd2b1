#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "dnls/grid.hpp"

#include "json.hpp"

namespace dnls::io {

/// 17 significant digits, enough to round-trip a double exactly.
std::string format_float(double x);

/// Write-then-rename so readers never observe a partial file.
void write_text_atomic(const std::filesystem::path& path,
                       const std::string& content);

/// Field CSV with the fixed header `x,re,im`.
void write_field_csv(const std::filesystem::path& path, const Field& f);

/// Generic CSV: fixed header line plus rows of floats.
void write_csv(const std::filesystem::path& path, const std::string& header,
               const std::vector<std::vector<double>>& rows);

void write_json(const std::filesystem::path& path, const nlohmann::json& j);

/// Minimal SVG polyline plot of one or more named series over a shared
/// abscissa; enough for quick inspection without external tooling.
struct PlotSeries {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;
};
void write_svg_plot(const std::filesystem::path& path, const std::string& title,
                    const std::vector<PlotSeries>& series);

/// gnuplot script that renders the named columns of a CSV written by this
/// tool.
void write_gnuplot_script(const std::filesystem::path& path,
                          const std::string& csv_file,
                          const std::vector<std::string>& columns);

std::string timestamp_utc_now();

/// Run provenance: command, resolved parameters, and the files produced.
/// Written last so every listed output exists on successful exit.
struct RunManifest {
  std::string command;
  nlohmann::json parameters;
  std::string started_at;
  std::string finished_at;
  std::vector<std::string> outputs;

  void write(const std::filesystem::path& path) const;
};

}  // namespace dnls::io
