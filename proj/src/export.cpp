#include "cvea/export.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>

#include <json.hpp>

#include "cvea/errors.hpp"

namespace cvea {

ExportFormat export_format_from_string(const std::string& s) {
  if (s == "csv") return ExportFormat::csv;
  if (s == "json") return ExportFormat::json;
  throw DomainError("unknown export format '" + s + "'");
}

std::string format_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

double round_significant(double x) { return std::strtod(format_number(x).c_str(), nullptr); }

std::string to_csv(const std::vector<BoundaryCurve>& curves) {
  std::string out = "kind,method,abscissa,value,tolerance\n";
  for (const auto& c : curves) {
    const std::string prefix = c.name() + "," + to_string(c.method) + ",";
    const std::string tol = format_number(c.tolerance);
    for (const auto& [x, y] : c.samples) {
      out += prefix + format_number(x) + "," + format_number(y) + "," + tol + "\n";
    }
  }
  return out;
}

std::string to_json(const std::vector<BoundaryCurve>& curves) {
  nlohmann::ordered_json doc;
  doc["curves"] = nlohmann::ordered_json::array();
  for (const auto& c : curves) {
    nlohmann::ordered_json jc;
    jc["kind"] = to_string(c.kind);
    jc["label"] = c.label;
    jc["method"] = to_string(c.method);
    jc["tolerance"] = round_significant(c.tolerance);
    auto samples = nlohmann::ordered_json::array();
    for (const auto& [x, y] : c.samples) {
      samples.push_back({round_significant(x), round_significant(y)});
    }
    jc["samples"] = std::move(samples);
    doc["curves"].push_back(std::move(jc));
  }
  return doc.dump(2) + "\n";
}

std::vector<BoundaryCurve> curves_from_json(const std::string& text) {
  const auto doc = nlohmann::json::parse(text);
  std::vector<BoundaryCurve> curves;
  for (const auto& jc : doc.at("curves")) {
    BoundaryCurve c;
    c.kind = curve_kind_from_string(jc.at("kind").get<std::string>());
    c.label = jc.value("label", "");
    c.method = curve_method_from_string(jc.at("method").get<std::string>());
    c.tolerance = jc.at("tolerance").get<double>();
    for (const auto& s : jc.at("samples")) {
      c.samples.emplace_back(s.at(0).get<double>(), s.at(1).get<double>());
    }
    curves.push_back(std::move(c));
  }
  return curves;
}

void export_curves(const std::vector<BoundaryCurve>& curves, ExportFormat format,
                   const std::filesystem::path& path) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw IoError("cannot open " + path.string() + " for writing");
  os << (format == ExportFormat::csv ? to_csv(curves) : to_json(curves));
  if (!os) throw IoError("failed writing " + path.string());
}

}  // namespace cvea
