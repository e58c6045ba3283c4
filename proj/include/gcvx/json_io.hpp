#pragma once

#include <string>

#include <json.hpp>

#include "gcvx/convex.hpp"
#include "gcvx/giry.hpp"
#include "gcvx/measurable.hpp"
#include "gcvx/rational.hpp"
#include "gcvx/step_fn.hpp"

// JSON encodings for the workbench. Malformed documents raise UsageError;
// well-formed documents describing invalid objects raise DomainError.
namespace gcvx::json_io {

using nlohmann::json;

json to_json(const kernel::Rational& r);
/// Accepts "p/q" strings and JSON integers.
kernel::Rational rational_from_json(const json& j);
json to_json(const kernel::Vec& v);
kernel::Vec vec_from_json(const json& j);

json to_json(const kernel::StepFn& f);
kernel::StepFn step_fn_from_json(const json& j);

/// {"points": [...], "sigma": [[ids], ...]}, plus "atoms" for convenience.
json to_json(const measurable::FinMeasSpace& x);
/// "sigma" absent means the powerset; "generators" instead of "sigma" generates.
measurable::FinMeasSpace space_from_json(const json& j);
json subsets_json(const measurable::FinMeasSpace& x, const std::vector<measurable::Subset>& family);

json to_json(const convex::ConvexSpace& a);
convex::ConvexSpace convex_from_json(const json& j);

json to_json(const convex::BooleanSubobject& s, const convex::ConvexSpace& a);
convex::BooleanSubobject subobject_from_json(const json& j, const convex::ConvexSpace& a);

json to_json(const convex::Point& p, const convex::ConvexSpace& a);

json to_json(const giry::FinDist& p);
/// {"space": <space>, "mass": {"atom0": "1/2", ...}}; atoms missing from "mass" get 0.
giry::FinDist dist_from_json(const json& j);

/// Reads and parses a file; UsageError if it cannot be opened or parsed.
json load_file(const std::string& path);

}  // namespace gcvx::json_io
