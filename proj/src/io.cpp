#include "ncs/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace ncs {

using nlohmann::json;

NcsGraph graph_from_json(const json& j) {
  if (!j.is_object() || !j.contains("nodes") || !j.contains("edges"))
    throw std::invalid_argument("graph json needs \"nodes\" and \"edges\"");
  if (!j["nodes"].is_number_integer())
    throw std::invalid_argument("\"nodes\" must be an integer");
  const int n = j["nodes"].get<int>();
  if (!j["edges"].is_array()) throw std::invalid_argument("\"edges\" must be an array");

  std::vector<Edge> edges;
  for (const auto& item : j["edges"]) {
    if (!item.is_array() || item.size() != 2 || !item[0].is_number_integer() ||
        !item[1].is_number_integer())
      throw std::invalid_argument("each edge must be an [a, b] integer pair");
    const int a = item[0].get<int>(), b = item[1].get<int>();
    if (a >= b) throw std::invalid_argument("edge endpoints must satisfy a < b");
    edges.push_back(Edge{a, b});
  }
  return NcsGraph(n, std::move(edges));
}

json graph_to_json(const NcsGraph& g) {
  json edges = json::array();
  for (const Edge& e : g.edges()) edges.push_back(json::array({e.a, e.b}));
  return json{{"nodes", g.node_count()}, {"edges", std::move(edges)}};
}

NcsGraph parse_graph_text(const std::string& text) {
  std::istringstream in(text);
  std::vector<Edge> edges;
  int max_node = -1;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream row(line);
    long long u, v;
    if (!(row >> u)) continue;   // blank line
    if (!(row >> v)) throw std::invalid_argument("expected two node ids per line: " + line);
    std::string rest;
    if (row >> rest) throw std::invalid_argument("trailing content on line: " + line);
    if (u < 0 || v < 0 || u > 1000000 || v > 1000000)
      throw std::invalid_argument("node id out of range on line: " + line);
    Edge e = make_edge(static_cast<NodeId>(u), static_cast<NodeId>(v));
    edges.push_back(e);
    max_node = std::max(max_node, static_cast<int>(e.b));
  }
  if (max_node < 0) throw std::invalid_argument("graph text contains no edges");
  return NcsGraph(max_node + 1, std::move(edges));
}

NcsGraph load_graph_file(const std::string& path) {
  const std::string text = read_file(path);
  const std::size_t first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{')
    return graph_from_json(json::parse(text));
  return parse_graph_text(text);
}

RoundFile round_from_json(const json& j) {
  if (!j.is_object() || !j.contains("exact") || !j.contains("graph") ||
      !j.contains("measurements"))
    throw std::invalid_argument("round json needs \"exact\", \"graph\", \"measurements\"");
  if (!j["exact"].is_boolean()) throw std::invalid_argument("\"exact\" must be a boolean");

  RoundFile r;
  r.exact = j["exact"].get<bool>();
  r.graph = graph_from_json(j["graph"]);
  if (!j["measurements"].is_array())
    throw std::invalid_argument("\"measurements\" must be an array");

  for (const auto& item : j["measurements"]) {
    if (!item.is_array() || item.size() != 3 || !item[0].is_number_integer() ||
        !item[1].is_number_integer())
      throw std::invalid_argument("each measurement must be [a, b, value]");
    Edge e{item[0].get<int>(), item[1].get<int>()};
    if (e.a >= e.b) throw std::invalid_argument("measurement endpoints must satisfy a < b");
    if (!r.graph.has_edge(e.a, e.b))
      throw std::invalid_argument("measurement on non-edge " + to_string(e));
    if (r.exact) {
      if (!item[2].is_string())
        throw std::invalid_argument("exact measurement values must be strings");
      auto v = parse_rational(item[2].get<std::string>());
      if (!v) throw std::invalid_argument("unparseable value: " + item[2].get<std::string>());
      if (!r.exact_measurements.values.emplace(e, *v).second)
        throw std::invalid_argument("duplicate measurement for " + to_string(e));
    } else {
      if (!item[2].is_number())
        throw std::invalid_argument("noisy measurement values must be numbers");
      if (!r.noisy_measurements.emplace(e, item[2].get<double>()).second)
        throw std::invalid_argument("duplicate measurement for " + to_string(e));
    }
  }

  const std::size_t have =
      r.exact ? r.exact_measurements.values.size() : r.noisy_measurements.size();
  if (static_cast<int>(have) != r.graph.edge_count())
    throw std::invalid_argument("round does not cover every edge exactly once");
  return r;
}

json round_to_json(const NcsGraph& g, const MeasurementSet& m) {
  json rows = json::array();
  for (const auto& [e, v] : m.values)
    rows.push_back(json::array({e.a, e.b, format_rational(v)}));
  return json{{"exact", true}, {"graph", graph_to_json(g)}, {"measurements", std::move(rows)}};
}

json round_to_json(const NcsGraph& g, const NoisyMeasurements& m) {
  json rows = json::array();
  for (const auto& [e, v] : m) rows.push_back(json::array({e.a, e.b, v}));
  return json{{"exact", false}, {"graph", graph_to_json(g)}, {"measurements", std::move(rows)}};
}

RoundFile load_round_file(const std::string& path) {
  return round_from_json(json::parse(read_file(path)));
}

json truth_to_json(const ClockState& truth, const std::map<Edge, Rational>& faults) {
  json offsets = json::array();
  for (const Rational& v : truth.offsets) offsets.push_back(format_rational(v));
  json fault_rows = json::array();
  for (const auto& [e, v] : faults)
    fault_rows.push_back(json::array({e.a, e.b, format_rational(v)}));
  return json{{"exact", true},
              {"nodes", static_cast<int>(truth.offsets.size()) + 1},
              {"offsets", std::move(offsets)},
              {"faults", std::move(fault_rows)}};
}

json truth_to_json(const std::vector<double>& offsets, const std::map<Edge, double>& faults) {
  json off = json::array();
  for (double v : offsets) off.push_back(v);
  json fault_rows = json::array();
  for (const auto& [e, v] : faults) fault_rows.push_back(json::array({e.a, e.b, v}));
  return json{{"exact", false},
              {"nodes", static_cast<int>(offsets.size()) + 1},
              {"offsets", std::move(off)},
              {"faults", std::move(fault_rows)}};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << content;
  if (!out) throw std::runtime_error("failed writing " + path);
}

}  // namespace ncs
