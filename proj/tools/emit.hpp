#pragma once

#include <string>

#include <json.hpp>

namespace elp::cli {

using Json = nlohmann::ordered_json;

/// One double formatted with 17 significant digits (lossless round trip).
std::string fmt17(double v);

/// Serializes a document with every floating-point value written via
/// fmt17; key order is preserved, output ends with a newline.
std::string dump_json(const Json& j);

/// Writes payload to the named file, or to stdout for "-"/"stdout".
void write_payload(const std::string& out, const std::string& payload);

}  // namespace elp::cli
