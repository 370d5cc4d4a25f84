#pragma once

#include <json.hpp>

#include "parisi/certifier.hpp"
#include "parisi/measure.hpp"
#include "parisi/mixture.hpp"
#include "parisi/solver.hpp"

namespace parisi::io {

/// Ordered JSON keeps the field layout stable so identical inputs produce
/// byte-identical documents.
using Json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "parisi-zero/1";

Json to_json(const DiscreteMeasure& nu);
DiscreteMeasure measure_from_json(const Json& j);

/// Accepts {"terms":[{"weight":"5/7","power":3}, ...]}; weights may be
/// strings (exact rationals / decimals) or JSON numbers with denominator
/// 10^9.
MixtureModel model_from_json(const Json& j, bool renormalize = false);
Json to_json(const MixtureModel& model);

Json to_json(const CriterionReport& r);
Json to_json(const SolveResult& r);
Json to_json(const Rejection& r);
Json to_json(const CertificationReport& r);

}  // namespace parisi::io
