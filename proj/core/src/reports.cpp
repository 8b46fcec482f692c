#include "anisodnl/reports.hpp"

#include <cmath>
#include <map>
#include <ostream>

namespace anisodnl {

using nlohmann::json;

namespace {

// JSON has no infinities; encode them as strings.
json num(double x) {
  if (std::isfinite(x)) return x;
  if (std::isnan(x)) return "nan";
  return x > 0 ? "inf" : "-inf";
}

json nums(const std::vector<double>& v) {
  json a = json::array();
  for (double x : v) a.push_back(num(x));
  return a;
}

}  // namespace

json to_json(const AdmissibilityReport& r) {
  json conds = json::array();
  for (const auto& c : r.conditions)
    conds.push_back({{"id", c.id}, {"description", c.description}, {"pass", c.pass},
                     {"margin", num(c.margin)}, {"detail", c.detail}});
  json j = {{"conditions", conds},
            {"all_pass", r.all_pass()},
            {"cascade_enabled", r.cascade_enabled},
            {"degiorgi_enabled", r.degiorgi_enabled},
            {"sigma_margin", num(r.sigma_margin)},
            {"closeness_margin", num(r.closeness_margin)}};
  j["closeness_failing_axis"] =
      r.closeness_failing_axis ? json(*r.closeness_failing_axis + 1) : json(nullptr);
  return j;
}

json to_json(const SolveReport& r) {
  json steps = json::array();
  for (const auto& s : r.steps)
    steps.push_back({{"step", s.step}, {"t", s.t}, {"iterations", s.iterations},
                     {"residuals", nums(s.residuals)}, {"picard_used", s.picard_used},
                     {"clamped", s.clamped}, {"converged", s.converged}});
  return {{"steps", steps},
          {"total_iterations", r.total_iterations()},
          {"max_final_residual", num(r.max_final_residual())},
          {"fallback_count", r.fallback_count()},
          {"clamp_count", r.clamp_count()}};
}

json to_json(const DataNorms& d) {
  return {{"u0_sup", num(d.u0_sup)},           {"g_sup", num(d.g_sup)},
          {"m_star", num(d.m_star)},           {"f_pbar_conj", num(d.f_pbar_conj)},
          {"f_sigma", num(d.f_sigma)},         {"cylinder", num(d.cylinder)}};
}

json to_json(const DeGiorgiReport& r) {
  return {{"c_struct", num(r.c_struct)}, {"m", num(r.m)},   {"mu", num(r.mu)},
          {"p_bar", num(r.p_bar)},       {"q", nums(r.q)},  {"q_bar", num(r.q_bar)},
          {"delta", num(r.delta)},       {"Q", num(r.Q)},   {"b", num(r.b)},
          {"K", num(r.K)},               {"K0", num(r.K0)}, {"M", num(r.M)},
          {"L", num(r.L)},               {"data", to_json(r.data)}};
}

json to_json(const LevelMeasurements& r) {
  return {{"levels", nums(r.levels)}, {"Y", nums(r.Y)}, {"E", nums(r.E)}};
}

json to_json(const RecursionEnvelope& r) {
  return {{"first", r.first},
          {"last", r.last},
          {"K_fit", num(r.K_fit)},
          {"envelope", nums(r.envelope)},
          {"worst_ratio", num(r.worst_ratio)}};
}

json to_json(const EnergyReport& r) {
  return {{"M", num(r.M)},
          {"m_star", num(r.m_star)},
          {"level_energy", num(r.level_energy)},
          {"gradient_terms", nums(r.gradient_terms)},
          {"lhs", num(r.lhs)},
          {"rhs", num(r.rhs)},
          {"ratio", num(r.ratio)}};
}

json to_json(const ComparisonReport& r) {
  return {{"t1_index", r.t1_index},
          {"times", nums(r.times)},
          {"lhs", nums(r.lhs)},
          {"rhs", nums(r.rhs)},
          {"violation", num(r.violation)},
          {"max_excess", num(r.max_excess)},
          {"boundary_min_v", num(r.boundary_min_v)},
          {"hypothesis_ok", r.hypothesis_ok}};
}

json to_json(const CalibratedConstant& c) {
  return {{"value", num(c.value)},
          {"raw", num(c.raw)},
          {"worst_pair", {num(c.worst_a), num(c.worst_b)}},
          {"evaluated", c.evaluated}};
}

json to_json(const TroisiCalibration& c) {
  return {{"constant", num(c.constant)}, {"raw", num(c.raw)}, {"samples", c.samples}};
}

json make_report(const std::string& kind, bool pass, json data) {
  return {{"schema", kReportSchema}, {"kind", kind}, {"pass", pass}, {"data", std::move(data)}};
}

std::vector<std::string> validate_report(const json& report) {
  static const std::map<std::string, std::vector<std::string>> required = {
      {"admissibility", {"conditions", "cascade_enabled", "degiorgi_enabled"}},
      {"constant", {"solve", "max_deviation", "tolerance"}},
      {"manufactured", {"levels", "errors"}},
      {"cascade", {"ks", "ordering_excess", "distances", "ordering_tol"}},
      {"comparison", {"pairs", "ordering_tol"}},
      {"degiorgi", {"constants", "measurements", "bound_excess"}},
      {"energy", {"energy"}},
      {"mollifier", {"steklov", "exponential"}},
      {"calibration", {"b_sandwich", "power_inequality", "troisi"}},
      {"failure", {"error"}},
  };
  std::vector<std::string> problems;
  if (!report.is_object()) return {"report is not a JSON object"};
  if (!report.contains("schema") || report["schema"] != kReportSchema)
    problems.push_back(std::string("schema must be \"") + kReportSchema + "\"");
  if (!report.contains("pass") || !report["pass"].is_boolean()) problems.push_back("pass must be a boolean");
  if (!report.contains("data") || !report["data"].is_object()) problems.push_back("data must be an object");
  if (!report.contains("kind") || !report["kind"].is_string()) {
    problems.push_back("kind must be a string");
    return problems;
  }
  const auto it = required.find(report["kind"].get<std::string>());
  if (it == required.end()) {
    problems.push_back("unknown kind " + report["kind"].get<std::string>());
    return problems;
  }
  if (report.contains("data") && report["data"].is_object())
    for (const auto& key : it->second)
      if (!report["data"].contains(key)) problems.push_back("data." + key + " is missing");
  return problems;
}

void write_levels_csv(std::ostream& out, const LevelMeasurements& levels) {
  const auto old = out.precision(17);
  out << "j,M_j,Y_j,E_j\n";
  for (std::size_t j = 0; j < levels.levels.size(); ++j)
    out << j << ',' << levels.levels[j] << ',' << levels.Y[j] << ',' << levels.E[j] << '\n';
  out.precision(old);
}

void write_comparison_csv(std::ostream& out, const ComparisonReport& r) {
  const auto old = out.precision(17);
  out << "t2,lhs,rhs,gap\n";
  for (std::size_t i = 0; i < r.times.size(); ++i)
    out << r.times[i] << ',' << r.lhs[i] << ',' << r.rhs[i] << ',' << r.lhs[i] - r.rhs[i] << '\n';
  out.precision(old);
}

}  // namespace anisodnl
