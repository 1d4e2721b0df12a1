// JSON and CSV emission for step, curve, and torsion reports. Big integers
// serialize as decimal strings with factor lists alongside; ratios print
// with four decimals to match the reference tables.
#pragma once

#include "goodfrey/pipeline.hpp"

#include <json.hpp>

#include <string>

namespace goodfrey {

nlohmann::json to_json(const FactoredInteger& f);
nlohmann::json to_json(const StepReport& s);
nlohmann::json to_json(const CurveInvariants& inv);
nlohmann::json to_json(const TorsionReport& t);
nlohmann::json to_json(const SeedReport& r);
nlohmann::json to_json(const MapIdentityReport& r);

nlohmann::json to_json(const PipelineRow& row);

// family,j,a,b,c,q,sigma_m,sigma,good_triple,good_curve,torsion_certified
std::string csv_header();
std::string to_csv_row(const PipelineRow& row);

// 4-decimal fixed formatting used in tables; empty marker for unavailable.
std::string format4(std::optional<double> v);

}  // namespace goodfrey
