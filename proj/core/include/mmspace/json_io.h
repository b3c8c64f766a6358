#pragma once

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "mmspace/space.h"

namespace mmspace {

using Json = nlohmann::json;

// Canonical text encoding: object keys sorted, two-space indentation, arrays
// of scalars kept on one line, floating-point numbers printed with 17
// significant digits, infinities and NaN as null, LF line endings and a
// trailing newline.
std::string canonical_dump(const Json& value);

// {"name", "labels", "dist", "edges" (graph spaces only), "mu"}.
Json space_to_json(const Space& space);

// Throws SchemaError for malformed documents and ValidationError (with the
// build error as cause) for documents describing an invalid space.
Space space_from_json(const Json& doc);

Space read_space(const std::filesystem::path& path);
void write_space(const Space& space, const std::filesystem::path& path);

}  // namespace mmspace
