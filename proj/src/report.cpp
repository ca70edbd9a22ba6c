#include "permsaddle/report.hpp"

namespace permsaddle {

using nlohmann::json;

json report_to_json(const PValueReport& report) {
  json methods = json::object();
  if (report.saddlepoint) methods["saddlepoint"] = {{"p_value", *report.saddlepoint}};
  if (report.exact) methods["exact"] = {{"p_value", *report.exact}};
  if (report.monte_carlo) {
    json mc = {{"p_value", *report.monte_carlo}};
    if (report.mc_std_error) mc["std_error"] = *report.mc_std_error;
    if (report.mc_replicates) mc["replicates"] = *report.mc_replicates;
    methods["monte_carlo"] = mc;
  }
  if (report.normal) methods["normal"] = {{"p_value", *report.normal}};

  json doc;
  doc["n"] = report.n;
  doc["v0"] = report.v0;
  doc["methods"] = methods;
  doc["diagnostics"] = report.method_diagnostics;
  doc["errors"] = report.method_errors;
  return doc;
}

PValueReport report_from_json(const json& doc) {
  PValueReport report;
  report.n = doc.at("n").get<int>();
  report.v0 = doc.at("v0").get<double>();
  const json& methods = doc.at("methods");
  if (methods.contains("saddlepoint")) {
    report.saddlepoint = methods["saddlepoint"].at("p_value").get<double>();
  }
  if (methods.contains("exact")) report.exact = methods["exact"].at("p_value").get<double>();
  if (methods.contains("monte_carlo")) {
    const json& mc = methods["monte_carlo"];
    report.monte_carlo = mc.at("p_value").get<double>();
    if (mc.contains("std_error")) report.mc_std_error = mc["std_error"].get<double>();
    if (mc.contains("replicates")) report.mc_replicates = mc["replicates"].get<std::uint64_t>();
  }
  if (methods.contains("normal")) report.normal = methods["normal"].at("p_value").get<double>();
  if (doc.contains("diagnostics")) {
    report.method_diagnostics = doc["diagnostics"].get<std::map<std::string, double>>();
  }
  if (doc.contains("errors")) {
    report.method_errors = doc["errors"].get<std::map<std::string, std::string>>();
  }
  return report;
}

}  // namespace permsaddle
