#pragma once

#include "hiconvex/divided_differences.hpp"
#include "hiconvex/function_models.hpp"
#include "hiconvex/matrix_ext.hpp"
#include "hiconvex/measures.hpp"
#include "hiconvex/sample_grid.hpp"

#include <json.hpp>

#include <string>

namespace hiconvex {

/**
 * JSON wire formats:
 *   model    {"kind":"catalog","name":"sqrt","alpha":0.5,"domain":[0,4]}
 *            {"kind":"polynomial","coeffs":[0,0,0,1],"domain":[0,1]}
 *            {"kind":"blocks","quad":[c0,c1,c2],"knots":[{"a":0.3,"c":1.2}],"domain":[0,1]}
 *   measure  {"atoms":[{"x":0.0,"w":0.25},{"x":0.6667,"w":0.75}]}
 *   matrix   {"n":2,"rows":[[1.0,0.5],[0.5,2.0]]}
 * Parse errors throw std::invalid_argument with a "parse:" prefix naming the
 * offending field.
 */
FunctionModel model_from_json(const nlohmann::json& j);
nlohmann::json model_to_json(const FunctionModel& model);

DiscreteMeasure measure_from_json(const nlohmann::json& j,
                                  MeasureKind kind = MeasureKind::Probability);
nlohmann::json measure_to_json(const DiscreteMeasure& mu);

SymmetricMatrix matrix_from_json(const nlohmann::json& j);
nlohmann::json matrix_to_json(const SymmetricMatrix& a);

nlohmann::json table_to_json(const DividedDiffTable& table);

// Reads a CSV file with exact header "x,f" into a validated grid. Errors
// carry 1-based line numbers: "malformed-row: line N" / "unsorted-data: line N".
SampleGrid ingest_samples(const std::string& path);

// Inline JSON when the argument starts with '{' or '['; otherwise the
// argument names a file to read. Parse failures mention the source.
nlohmann::json json_from_arg(const std::string& arg);

} // namespace hiconvex
