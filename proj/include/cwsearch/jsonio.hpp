#pragma once

// JSON encodings shared by the ledgers, manifests and CLI records.

#include <span>
#include <vector>

#include <nlohmann/json.hpp>

#include "cwsearch/compress.hpp"

namespace cwsearch {

/// Unsigned 64-bit values are written as JSON numbers, larger ones as
/// decimal strings.
nlohmann::json big_to_json(const BigInt& value);
BigInt big_from_json(const nlohmann::json& j);

nlohmann::json seq_to_json(std::span<const int> seq);

/// Throws errc::parse unless j is an array of integers.
std::vector<int> seq_from_json(const nlohmann::json& j);

/// Parses one JSONL line holding an integer array.
std::vector<int> parse_seq_line(const std::string& line);

}  // namespace cwsearch
