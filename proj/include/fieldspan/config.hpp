#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>

#include "fieldspan/scoring.hpp"

namespace fieldspan {

/// Parses a scorer configuration:
///
///   {"k1": 1.2, "b": 0.75, "z": 0.55, "x": 0.25, "M": 45,
///    "clamp_negative_idf": false,
///    "fields": {"title": {"boost": 2, "b": 0, "z": 0.55, "x": 0.25}}}
///
/// Every key is optional. Per-field keys left out fall back to the field's
/// defaults from ScorerParams::defaults, with b, z and x following the
/// top-level values. Throws ConfigError on malformed JSON, wrong value
/// types, unknown keys or fields, or out-of-range values.
[[nodiscard]] ScorerParams parse_config(std::string_view json_text, std::span<std::string const> schema);

[[nodiscard]] ScorerParams load_config(std::filesystem::path const& path, std::span<std::string const> schema);

}  // namespace fieldspan
