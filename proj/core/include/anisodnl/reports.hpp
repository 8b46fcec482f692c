#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "anisodnl/algebra.hpp"
#include "anisodnl/calibration.hpp"
#include "anisodnl/comparison.hpp"
#include "anisodnl/degiorgi.hpp"
#include "anisodnl/energy.hpp"
#include "anisodnl/model.hpp"
#include "anisodnl/solver.hpp"

namespace anisodnl {

inline constexpr const char* kReportSchema = "anisodnl-report/1";

nlohmann::json to_json(const AdmissibilityReport& r);
/// Omits wall-clock time so that reports are reproducible byte for byte.
nlohmann::json to_json(const SolveReport& r);
nlohmann::json to_json(const DataNorms& d);
nlohmann::json to_json(const DeGiorgiReport& r);
nlohmann::json to_json(const LevelMeasurements& r);
nlohmann::json to_json(const RecursionEnvelope& r);
nlohmann::json to_json(const EnergyReport& r);
nlohmann::json to_json(const ComparisonReport& r);
nlohmann::json to_json(const CalibratedConstant& c);
nlohmann::json to_json(const TroisiCalibration& c);

/// {"schema": kReportSchema, "kind": kind, "pass": pass, "data": data}.
nlohmann::json make_report(const std::string& kind, bool pass, nlohmann::json data);

/// Problems found in a report document; empty when it conforms to the schema.
std::vector<std::string> validate_report(const nlohmann::json& report);

/// Columns: j,M_j,Y_j,E_j.
void write_levels_csv(std::ostream& out, const LevelMeasurements& levels);
/// Columns: t2,lhs,rhs,gap with gap = lhs - rhs.
void write_comparison_csv(std::ostream& out, const ComparisonReport& r);

}  // namespace anisodnl
