#pragma once

#include <string>

#include <nlohmann/json.hpp>

namespace dimerlab::cli {

using Json = nlohmann::ordered_json;

/// Reals as "%.12e".
std::string format_real(double v);

/// Serializes with keys in insertion order, reals as "%.12e", non-finite
/// reals as null and two-space indentation.  Ends with a newline.
std::string dump_json(const Json& value);

}  // namespace dimerlab::cli
