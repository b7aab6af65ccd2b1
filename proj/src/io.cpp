#include "dnls/io.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>

#include "dnls/version.hpp"

namespace dnls::io {

std::string format_float(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

void write_text_atomic(const std::filesystem::path& path,
                       const std::string& content) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open " + tmp.string() + " for writing");
    out << content;
    if (!out) throw Error("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

void write_field_csv(const std::filesystem::path& path, const Field& f) {
  std::string s = "x,re,im\n";
  for (int j = 0; j < f.grid.n; ++j) {
    const cplx z = f.v[static_cast<size_t>(j)];
    s += format_float(f.grid.node(j));
    s += ',';
    s += format_float(z.real());
    s += ',';
    s += format_float(z.imag());
    s += '\n';
  }
  write_text_atomic(path, s);
}

void write_csv(const std::filesystem::path& path, const std::string& header,
               const std::vector<std::vector<double>>& rows) {
  std::string s = header + "\n";
  for (const auto& row : rows) {
    for (size_t i = 0; i < row.size(); ++i) {
      if (i) s += ',';
      s += format_float(row[i]);
    }
    s += '\n';
  }
  write_text_atomic(path, s);
}

void write_json(const std::filesystem::path& path, const nlohmann::json& j) {
  write_text_atomic(path, j.dump(2) + "\n");
}

void write_svg_plot(const std::filesystem::path& path, const std::string& title,
                    const std::vector<PlotSeries>& series) {
  const int w = 900, h = 540, margin = 60;
  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  for (const auto& s : series) {
    for (size_t i = 0; i < s.x.size(); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      xmin = std::min(xmin, s.x[i]);
      xmax = std::max(xmax, s.x[i]);
      ymin = std::min(ymin, s.y[i]);
      ymax = std::max(ymax, s.y[i]);
    }
  }
  if (!(xmax > xmin)) xmax = xmin + 1.0;
  if (!(ymax > ymin)) ymax = ymin + 1.0;
  auto px = [&](double x) {
    return margin + (x - xmin) / (xmax - xmin) * (w - 2 * margin);
  };
  auto py = [&](double y) {
    return h - margin - (y - ymin) / (ymax - ymin) * (h - 2 * margin);
  };

  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c",
                                 "#9467bd", "#ff7f0e", "#8c564b"};
  std::string s;
  char buf[256];
  std::snprintf(buf, sizeof(buf),
                "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%d\" "
                "height=\"%d\" viewBox=\"0 0 %d %d\">\n",
                w, h, w, h);
  s += buf;
  s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  std::snprintf(buf, sizeof(buf),
                "<text x=\"%d\" y=\"28\" font-family=\"sans-serif\" "
                "font-size=\"16\">%s</text>\n",
                margin, title.c_str());
  s += buf;
  std::snprintf(buf, sizeof(buf),
                "<rect x=\"%d\" y=\"%d\" width=\"%d\" height=\"%d\" "
                "fill=\"none\" stroke=\"black\"/>\n",
                margin, margin, w - 2 * margin, h - 2 * margin);
  s += buf;
  for (const char* corner : {"min", "max"}) {
    const bool mx = std::string(corner) == "max";
    std::snprintf(buf, sizeof(buf),
                  "<text x=\"%g\" y=\"%d\" font-family=\"sans-serif\" "
                  "font-size=\"11\">%.6g</text>\n",
                  mx ? px(xmax) - 40 : px(xmin), h - margin + 18,
                  mx ? xmax : xmin);
    s += buf;
    std::snprintf(buf, sizeof(buf),
                  "<text x=\"4\" y=\"%g\" font-family=\"sans-serif\" "
                  "font-size=\"11\">%.6g</text>\n",
                  mx ? py(ymax) + 4 : py(ymin) + 4, mx ? ymax : ymin);
    s += buf;
  }
  for (size_t k = 0; k < series.size(); ++k) {
    s += "<polyline fill=\"none\" stroke=\"";
    s += colors[k % 6];
    s += "\" stroke-width=\"1.2\" points=\"";
    for (size_t i = 0; i < series[k].x.size(); ++i) {
      if (!std::isfinite(series[k].y[i])) continue;
      std::snprintf(buf, sizeof(buf), "%.2f,%.2f ", px(series[k].x[i]),
                    py(series[k].y[i]));
      s += buf;
    }
    s += "\"/>\n";
    std::snprintf(buf, sizeof(buf),
                  "<text x=\"%d\" y=\"%zu\" font-family=\"sans-serif\" "
                  "font-size=\"12\" fill=\"%s\">%s</text>\n",
                  w - margin - 120, margin + 18 * (k + 1), colors[k % 6],
                  series[k].name.c_str());
    s += buf;
  }
  s += "</svg>\n";
  write_text_atomic(path, s);
}

void write_gnuplot_script(const std::filesystem::path& path,
                          const std::string& csv_file,
                          const std::vector<std::string>& columns) {
  std::string s = "set datafile separator ','\nset key autotitle columnhead\n";
  s += "set xlabel 't'\n";
  s += "plot ";
  for (size_t i = 0; i < columns.size(); ++i) {
    if (i) s += ", ";
    s += "'" + csv_file + "' using 1:'" + columns[i] + "' with lines";
  }
  s += "\n";
  write_text_atomic(path, s);
}

std::string timestamp_utc_now() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void RunManifest::write(const std::filesystem::path& path) const {
  nlohmann::json j;
  j["command"] = command;
  j["version"] = DNLS_VERSION;
  j["parameters"] = parameters;
  j["started_at"] = started_at;
  j["finished_at"] = finished_at;
  j["outputs"] = outputs;
  write_json(path, j);
}

}  // namespace dnls::io
