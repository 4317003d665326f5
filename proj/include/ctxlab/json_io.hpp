#pragma once

#include <string>

#include <json.hpp>

#include "ctxlab/simpdist.hpp"

namespace ctxlab {

// Scenario file: {"d": int, "vertices": [ids], "edges": [{"id","source","target"}]}.
// Distribution file: {"scenario": <inline object or path string>, "kind":
// "rational"|"boolean", "edges": {edge-id: d x d row-major matrix}, optional
// "vertices": {vertex-id: length-d array} for isolated-vertex marginals}.
// Rational entries are always "num/den" strings; Boolean entries are 0/1.
// Serialization is canonical (ordered fields, 2-space indent, one trailing
// newline), so parse-then-serialize is byte-stable.

nlohmann::ordered_json scenario_to_json(const Scenario& sc);
Scenario scenario_from_json(const nlohmann::json& j);

nlohmann::ordered_json dist_to_json(const SimpDist& p);  // scenario always inline
// base_dir resolves a path-valued "scenario" reference.
SimpDist dist_from_json(const nlohmann::json& j, const std::string& base_dir = ".");

std::string canonical_text(const nlohmann::ordered_json& j);

// FNV-1a 64-bit digest of the canonical text, as 16 hex digits.
std::string fnv1a_digest(const std::string& text);

// Throws ParseError carrying the file name and nlohmann's line/column message.
nlohmann::json load_json_file(const std::string& path);
Scenario load_scenario_file(const std::string& path);
SimpDist load_dist_file(const std::string& path);

void write_text_file(const std::string& path, const std::string& text);

}  // namespace ctxlab
