#pragma once

#include <json.hpp>

#include "gradenorm/analyzer.hpp"

namespace gradenorm {

using Json = nlohmann::json;

// JSON shapes used by the CLI reports.  Elements serialize as lists of
// {"word": [indices], "re": float, "im": float}.

Json element_to_json(const Element<double>& e);
Json element_to_json(const Element<std::complex<double>>& e);

Json spec_to_json(const AlgebraSpec<double>& spec);
Json spec_to_json(const AlgebraSpec<std::complex<double>>& spec);

Json weights_to_json(const WeightSpec& w);
Json norm_to_json(const NormSpec<double>& ns);
Json norm_to_json(const NormSpec<std::complex<double>>& ns);

Json witness_to_json(const WitnessReport<double>& w);
Json witness_to_json(const WitnessReport<std::complex<double>>& w);

Json audit_to_json(const AuditReport& a);
Json ratio_to_json(const RatioReport& r);
Json best_constant_to_json(const BestConstantReport& b);

/// CSV of the per-trial ratio distribution: trial, degree_a, degree_b, ratio.
std::string ratio_csv(const RatioReport& r);

}  // namespace gradenorm
