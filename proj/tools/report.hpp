#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "nehari/a2.hpp"
#include "nehari/hankel.hpp"
#include "nehari/nehari.hpp"
#include "nehari/regularity.hpp"

namespace nehari::app {

using json = nlohmann::json;

// Non-finite values become the strings "inf", "-inf" and "nan" so that the
// output stays valid JSON.
json number(double v);
json complex_number(cplx z);

// [{x, y}, ...]
json curve(const std::vector<double>& x, const std::vector<double>& y);

json to_json(const A2Report& r, bool with_arc_values = false);
json to_json(const std::vector<RotationRow>& rows);
json to_json(const FormProbe& p);
json to_json(const TrivialCriterion& t);
json to_json(const Log4Report& r);
json to_json(const StepModulus& s);
json to_json(const ApproxSequenceCheck& a, double n_cut);
json to_json(const DensityResidualCurve& d);
json to_json(const std::vector<TruncationPoint>& curve);
json clip_summary(const ScatteringMatrix& s);

// "key,value" rows with JSON-pointer-like keys, in document order.
std::string flatten_csv(const json& doc);

} // namespace nehari::app
