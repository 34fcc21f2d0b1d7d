#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "flatfront/analysis.hpp"
#include "flatfront/config.hpp"
#include "flatfront/meromorphic.hpp"
#include "flatfront/weierstrass.hpp"

namespace flatfront {

// MeroFn:  {"num": [[re, im], ...], "den": [...], "power": s,
//           "domain": {"kind": "punctured-sphere" | "disk", "removed": ["1", "inf"],
//                      "radius": r}}
// WeierstrassData: {"family": "revolution" | "voss" | "custom", "chart": "plane" | "log",
//                   "params": {...}, "ends": [...], "h": MeroFn, "rho": MeroFn, "t": MeroFn}
// Revolution and Voss data are rebuilt from "params" when read back; custom
// data are taken verbatim. Parse failures raise Error(kParseError).

nlohmann::json to_json(const Domain& d);
Domain domain_from_json(const nlohmann::json& j);

nlohmann::json to_json(const MeroFn& f);
MeroFn mero_from_json(const nlohmann::json& j);

nlohmann::json to_json(const WeierstrassData& d);
WeierstrassData data_from_json(const nlohmann::json& j);

WeierstrassData read_data(const std::string& path);
void write_text(const std::string& path, const std::string& text);

/// Optional parts of the verification report.
struct ReportOptions {
  std::optional<ChartGrid> grid;  // singular curves; a default grid when unset
  std::vector<double> fd_steps = {1e-2, 1e-3};
  int flatness_samples = 50;
  unsigned seed = 7;
  bool monodromy = true;
};

/// {"data", "ends", "completeness", "classification", "flatness",
///  "singular_curves", "monodromy"}. Reals are rounded to 9 significant
/// digits so that reports are stable across platforms.
nlohmann::json verification_report(const WeierstrassData& d, const ReportOptions& opts = {},
                                   const Tolerances& tol = {});

/// Serialization used for all files written by the tools.
std::string dump(const nlohmann::json& j);

}  // namespace flatfront
