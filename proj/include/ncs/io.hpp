#pragma once

#include <json.hpp>

#include <string>

#include "ncs/graph.hpp"
#include "ncs/linsys.hpp"

namespace ncs {

// Graph files: JSON {"nodes": N, "edges": [[a,b], ...]} with 0 <= a < b < N,
// or plain text with one "a b" pair per line (any order; node count is the
// largest id + 1). JSON is detected by a leading '{'.
NcsGraph graph_from_json(const nlohmann::json& j);
nlohmann::json graph_to_json(const NcsGraph& g);
NcsGraph parse_graph_text(const std::string& text);
NcsGraph load_graph_file(const std::string& path);

// Round files bundle the graph with one measurement per edge:
// {"exact": true, "graph": {...}, "measurements": [[a, b, value], ...]}.
// Exact rounds carry values as strings ("3.25", "-1/3") parsed exactly;
// noisy rounds carry plain JSON numbers.
struct RoundFile {
  NcsGraph graph;
  bool exact = true;
  MeasurementSet exact_measurements;
  NoisyMeasurements noisy_measurements;
};

RoundFile round_from_json(const nlohmann::json& j);
nlohmann::json round_to_json(const NcsGraph& g, const MeasurementSet& m);
nlohmann::json round_to_json(const NcsGraph& g, const NoisyMeasurements& m);
RoundFile load_round_file(const std::string& path);

// Truth files record the generating state of a synthetic round:
// {"exact": ..., "nodes": N, "offsets": [...], "faults": [[a, b, value], ...]}.
nlohmann::json truth_to_json(const ClockState& truth, const std::map<Edge, Rational>& faults);
nlohmann::json truth_to_json(const std::vector<double>& offsets,
                             const std::map<Edge, double>& faults);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace ncs
