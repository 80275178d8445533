#pragma once

#include <string>

#include "json.hpp"

#include "jacobi/inverse.hpp"
#include "jacobi/operator.hpp"
#include "jacobi/scattering.hpp"
#include "jacobi/stability.hpp"

namespace jacobi {

using Json = nlohmann::json;

/// Schema errors name the offending field and the expected shape.
JacobiOperator operator_from_json(const Json& j);
Json to_json(const JacobiOperator& op);

Json to_json(const ScatteringData& sd);

RootData root_data_from_json(const Json& j);
Json to_json(const RootData& rd);

Json to_json(const ReconstructionReport& rep);
Json to_json(const SweepSummary& s);

/// Throws Error(Io) when the file cannot be read and Error(Schema) when it is
/// not JSON.
Json read_json_file(const std::string& path);
/// Writes to `path`, or to stdout when `path` is empty or "-".
void write_text(const std::string& path, const std::string& text);

}  // namespace jacobi
