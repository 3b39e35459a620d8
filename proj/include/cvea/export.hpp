#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "cvea/phase_diagram.hpp"

namespace cvea {

enum class ExportFormat { csv, json };

ExportFormat export_format_from_string(const std::string& s);

/// Value rounded to 12 significant digits, the precision used in all exports.
double round_significant(double x);

/// Fixed 12-significant-digit decimal text of x.
std::string format_number(double x);

/// CSV with header "kind,method,abscissa,value,tolerance", LF endings.
std::string to_csv(const std::vector<BoundaryCurve>& curves);

/// {"curves": [{"kind", "label", "method", "tolerance", "samples": [[x, y], ...]}]}
std::string to_json(const std::vector<BoundaryCurve>& curves);

std::vector<BoundaryCurve> curves_from_json(const std::string& text);

/// Writes the curves; throws IoError when the file cannot be written.
void export_curves(const std::vector<BoundaryCurve>& curves, ExportFormat format,
                   const std::filesystem::path& path);

}  // namespace cvea
