#pragma once

#include <json.hpp>
#include <span>

#include "outer_growth.hpp"
#include "schottky_search.hpp"

namespace asymwalk {

using Json = nlohmann::ordered_json;

// {"rank": k, "weights": {"a": 1, "A": [2, 3], ...}}; numbers or [p, q] pairs.
// Every signed generator must be present and nothing else.
WeightScheme weights_from_json(const Json& j);
Json weights_to_json(const WeightScheme& ws);

// {"rank": k, "support": ["a", "A", ...], "probabilities": [...]}; an absent
// probability list means uniform.
MeasureSpec measure_from_json(const Json& j);
Json measure_to_json(const MeasureSpec& mu);

// Sequences in word text format, constants and the calibration log.
SchottkySet schottky_from_json(const Json& j);
Json schottky_to_json(const SchottkySet& S);

// [{"name": ..., "images": [...], "inverse_images": [...]}, ...] at the given rank.
std::vector<Automorphism> automorphisms_from_json(int rank, const Json& j);
Json automorphisms_to_json(const std::vector<Automorphism>& list);

// Throws invalid_argument naming the first key of `j` outside `allowed`.
void reject_unknown_keys(const Json& j, std::span<const char* const> allowed, const char* where);
inline void reject_unknown_keys(const Json& j, std::initializer_list<const char*> allowed, const char* where) {
  reject_unknown_keys(j, std::span<const char* const>(allowed.begin(), allowed.size()), where);
}

Json read_json_file(const std::string& path);

}  // namespace asymwalk
