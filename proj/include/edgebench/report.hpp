// Result emission: ROC curves as CSV (lossless round trip), AUC tables as
// JSON/CSV with stable key order, and self-contained SVG plots with fixed
// [0,1]^2 axes and the chance diagonal.
#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "edgebench/errors.hpp"
#include "edgebench/eval.hpp"
#include "edgebench/version.hpp"

namespace edgebench {

// Shortest exact decimal form of a double; parses back bit-identical.
inline std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline void write_text_atomic(const std::string& path,
                              const std::string& content) {
  const std::filesystem::path tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out << content;
    if (!out) throw std::runtime_error("write failed: " + path);
  }
  std::filesystem::rename(tmp, path);
}

inline std::string roc_csv(const RocCurve& curve) {
  std::string out = "threshold,fpr,tpr\n";
  for (const RocPoint& p : curve.points) {
    out += format_double(p.threshold);
    out += ',';
    out += format_double(p.fpr);
    out += ',';
    out += format_double(p.tpr);
    out += '\n';
  }
  return out;
}

inline void write_roc_csv(const std::string& path, const RocCurve& curve) {
  write_text_atomic(path, roc_csv(curve));
}

inline RocCurve parse_roc_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != "threshold,fpr,tpr")
    throw FormatError("ROC CSV: missing or unexpected header");
  RocCurve curve;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string cell;
    RocPoint p;
    try {
      std::getline(row, cell, ',');
      p.threshold = std::stod(cell);
      std::getline(row, cell, ',');
      p.fpr = std::stod(cell);
      std::getline(row, cell, ',');
      p.tpr = std::stod(cell);
    } catch (const std::exception&) {
      throw FormatError("ROC CSV: malformed row '" + line + "'");
    }
    curve.points.push_back(p);
  }
  curve.auc = trapezoid_auc(curve.points);
  return curve;
}

inline RocCurve read_roc_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw NotFoundError("cannot open ROC CSV: " + path);
  return parse_roc_csv(in);
}

// AUC table keyed (image id, detector) plus run metadata. JSON objects are
// emitted with lexicographically sorted keys, so serialization is stable.
struct AucReport {
  std::map<std::string, std::map<std::string, double>> auc;
  std::map<std::string, std::string> parameters;
  std::string timestamp;
  std::string tool = "edgebench";
  std::string version = kVersion;
};

inline nlohmann::json to_json(const AucReport& r) {
  nlohmann::json j;
  j["auc"] = r.auc;
  j["metadata"]["parameters"] = r.parameters;
  j["metadata"]["timestamp"] = r.timestamp;
  j["metadata"]["tool"] = r.tool;
  j["metadata"]["version"] = r.version;
  return j;
}

inline AucReport auc_report_from_json(const nlohmann::json& j) {
  AucReport r;
  r.auc = j.at("auc")
              .get<std::map<std::string, std::map<std::string, double>>>();
  const auto& meta = j.at("metadata");
  r.parameters =
      meta.at("parameters").get<std::map<std::string, std::string>>();
  r.timestamp = meta.value("timestamp", "");
  r.tool = meta.value("tool", "");
  r.version = meta.value("version", "");
  return r;
}

inline void write_auc_report_json(const std::string& path,
                                  const AucReport& r) {
  write_text_atomic(path, to_json(r).dump(2) + "\n");
}

inline AucReport read_auc_report_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw NotFoundError("cannot open report: " + path);
  nlohmann::json j;
  in >> j;
  return auc_report_from_json(j);
}

// Rows are images, columns are detectors; cells left empty when a
// combination was not run.
inline std::string auc_csv(const AucReport& r,
                           const std::vector<std::string>& detectors) {
  std::string out = "image";
  for (const auto& d : detectors) out += "," + d;
  out += '\n';
  for (const auto& [image, row] : r.auc) {
    out += image;
    for (const auto& d : detectors) {
      out += ',';
      auto it = row.find(d);
      if (it != row.end()) out += format_double(it->second);
    }
    out += '\n';
  }
  return out;
}

inline void write_auc_csv(const std::string& path, const AucReport& r,
                          const std::vector<std::string>& detectors) {
  write_text_atomic(path, auc_csv(r, detectors));
}

namespace detail {

inline const std::vector<std::string>& plot_palette() {
  static const std::vector<std::string> colors = {
      "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
      "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};
  return colors;
}

inline std::string svg_coord(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

}  // namespace detail

// Fixed 560x560 canvas, axes spanning [0,1]^2, dashed chance diagonal,
// one polyline per labeled curve and a legend listing each AUC.
inline std::string svg_roc_plot(
    const std::string& title,
    const std::vector<std::pair<std::string, RocCurve>>& series) {
  constexpr double kLeft = 64.0, kTop = 40.0, kSize = 440.0;
  auto px = [&](double fpr) { return kLeft + fpr * kSize; };
  auto py = [&](double tpr) { return kTop + (1.0 - tpr) * kSize; };

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"560\" "
         "height=\"560\" viewBox=\"0 0 560 560\">\n";
  svg += "<rect width=\"560\" height=\"560\" fill=\"white\"/>\n";
  svg += "<text x=\"280\" y=\"24\" text-anchor=\"middle\" "
         "font-family=\"sans-serif\" font-size=\"16\">" +
         title + "</text>\n";

  // frame, ticks and grid
  for (int i = 0; i <= 5; ++i) {
    const double v = i / 5.0;
    const std::string label = detail::svg_coord(v).substr(0, 3);
    svg += "<line x1=\"" + detail::svg_coord(px(v)) + "\" y1=\"" +
           detail::svg_coord(py(0)) + "\" x2=\"" + detail::svg_coord(px(v)) +
           "\" y2=\"" + detail::svg_coord(py(1)) +
           "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
    svg += "<line x1=\"" + detail::svg_coord(px(0)) + "\" y1=\"" +
           detail::svg_coord(py(v)) + "\" x2=\"" + detail::svg_coord(px(1)) +
           "\" y2=\"" + detail::svg_coord(py(v)) +
           "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
    svg += "<text x=\"" + detail::svg_coord(px(v)) + "\" y=\"" +
           detail::svg_coord(py(0) + 20.0) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"12\">" +
           label + "</text>\n";
    svg += "<text x=\"" + detail::svg_coord(px(0) - 10.0) + "\" y=\"" +
           detail::svg_coord(py(v) + 4.0) +
           "\" text-anchor=\"end\" font-family=\"sans-serif\" "
           "font-size=\"12\">" +
           label + "</text>\n";
  }
  svg += "<rect x=\"" + detail::svg_coord(kLeft) + "\" y=\"" +
         detail::svg_coord(kTop) + "\" width=\"" + detail::svg_coord(kSize) +
         "\" height=\"" + detail::svg_coord(kSize) +
         "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";
  svg += "<text x=\"280\" y=\"540\" text-anchor=\"middle\" "
         "font-family=\"sans-serif\" font-size=\"14\">False Positive "
         "Rate</text>\n";
  svg += "<text x=\"18\" y=\"260\" text-anchor=\"middle\" "
         "font-family=\"sans-serif\" font-size=\"14\" transform=\"rotate(-90 "
         "18 260)\">True Positive Rate</text>\n";

  // chance diagonal
  svg += "<line x1=\"" + detail::svg_coord(px(0)) + "\" y1=\"" +
         detail::svg_coord(py(0)) + "\" x2=\"" + detail::svg_coord(px(1)) +
         "\" y2=\"" + detail::svg_coord(py(1)) +
         "\" stroke=\"#999999\" stroke-width=\"1\" "
         "stroke-dasharray=\"6,4\"/>\n";

  const auto& palette = detail::plot_palette();
  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto& [label, curve] = series[k];
    const std::string& color = palette[k % palette.size()];
    std::string pts;
    for (const RocPoint& p : curve.points) {
      pts += detail::svg_coord(px(p.fpr)) + "," +
             detail::svg_coord(py(p.tpr)) + " ";
    }
    svg += "<polyline fill=\"none\" stroke=\"" + color +
           "\" stroke-width=\"2\" points=\"" + pts + "\"/>\n";

    const double ly = kTop + kSize - 16.0 * (series.size() - k);
    svg += "<rect x=\"" + detail::svg_coord(kLeft + kSize - 180.0) +
           "\" y=\"" + detail::svg_coord(ly - 9.0) +
           "\" width=\"12\" height=\"4\" fill=\"" + color + "\"/>\n";
    char auc_buf[32];
    std::snprintf(auc_buf, sizeof(auc_buf), "%.4f", curve.auc);
    svg += "<text x=\"" + detail::svg_coord(kLeft + kSize - 162.0) +
           "\" y=\"" + detail::svg_coord(ly) +
           "\" font-family=\"sans-serif\" font-size=\"12\">" + label +
           " (AUC " + auc_buf + ")</text>\n";
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace edgebench
