#pragma once

#include <fstream>
#include <string>

#include <json.hpp>

#include "bricard/errors.hpp"
#include "bricard/topo.hpp"

namespace bricard::topo {

/// Schema: {"nodes":[{"id":int,"arity":int}],"edges":[{"a":int,"b":int,"binary_links":int}]}
inline nlohmann::json to_json(const TopologyGraph& g) {
  nlohmann::json j;
  j["nodes"] = nlohmann::json::array();
  j["edges"] = nlohmann::json::array();
  for (const GraphNode& n : g.nodes) j["nodes"].push_back({{"id", n.id}, {"arity", n.arity}});
  for (const GraphEdge& e : g.edges)
    j["edges"].push_back({{"a", e.a}, {"b", e.b}, {"binary_links", e.binary_links}});
  return j;
}

inline TopologyGraph graph_from_json(const nlohmann::json& j) {
  TopologyGraph g;
  for (const auto& n : j.at("nodes"))
    g.nodes.push_back({n.at("id").get<int>(), n.at("arity").get<int>()});
  for (const auto& e : j.at("edges"))
    g.edges.push_back(
        {e.at("a").get<int>(), e.at("b").get<int>(), e.at("binary_links").get<int>()});
  if (!is_well_formed(g)) throw Error("graph violates its structural invariants");
  return g;
}

inline TopologyGraph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open graph file: " + path);
  nlohmann::json j;
  try {
    in >> j;
    return graph_from_json(j);
  } catch (const nlohmann::json::exception& e) {
    throw Error("malformed graph file " + path + ": " + e.what());
  }
}

inline void save_graph(const TopologyGraph& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write graph file: " + path);
  out << to_json(g).dump(2) << '\n';
}

}  // namespace bricard::topo
