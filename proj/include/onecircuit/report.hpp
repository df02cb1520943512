#pragma once

#include <string>

#include "onecircuit/gradients.hpp"

namespace onecircuit {

/// Writes the report as schema-1 JSON. Doubles keep at least 15 significant
/// digits so a round trip is bit-exact.
void persist_report(const GradientReport& report, const std::string& path);

/// Parses a schema-1 report file; missing or mistyped fields raise
/// std::runtime_error naming the field.
GradientReport load_report(const std::string& path);

std::string report_to_json(const GradientReport& report);
GradientReport report_from_json(const std::string& text);

}  // namespace onecircuit
