#include "qcaembed/io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace qcaembed {

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << text;
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

std::vector<QcaCell> layout_from_json(const Json& doc) {
  std::vector<QcaCell> cells;
  for (const auto& c : doc.at("cells")) {
    QcaCell cell;
    cell.id = c.at("id").get<int>();
    cell.x = c.at("x").get<double>();
    cell.y = c.at("y").get<double>();
    const std::string kind = c.value("kind", "normal");
    if (kind == "driver") {
      cell.kind = CellKind::driver;
      cell.polarization = c.at("P").get<double>();
    } else if (kind != "normal") {
      throw std::invalid_argument("cell " + std::to_string(cell.id) + " has unknown kind '" + kind + "'");
    }
    cell.diag_ok = c.value("diag_ok", false);
    cell.rotated = c.value("rotated", false);
    cells.push_back(cell);
  }
  return cells;
}

Json layout_to_json(const std::vector<QcaCell>& cells, const std::string& name) {
  Json doc;
  doc["name"] = name;
  auto& list = doc["cells"] = Json::array();
  for (const auto& c : cells) {
    Json j{{"id", c.id}, {"x", c.x}, {"y", c.y}, {"kind", c.kind == CellKind::driver ? "driver" : "normal"}};
    if (c.kind == CellKind::driver) j["P"] = c.polarization;
    if (c.diag_ok) j["diag_ok"] = true;
    if (c.rotated) j["rotated"] = true;
    list.push_back(j);
  }
  return doc;
}

Json graph_to_json(const ConnectivityGraph& graph) {
  Json doc;
  doc["name"] = graph.name();
  doc["adjacency"] = std::string(to_string(graph.mode()));
  auto& nodes = doc["nodes"] = Json::array();
  for (int v = 0; v < graph.num_nodes(); ++v) nodes.push_back({{"id", graph.id(v)}, {"bias", graph.bias(v)}});
  auto& edges = doc["edges"] = Json::array();
  for (const auto& e : graph.edges()) edges.push_back({{"a", graph.id(e.a)}, {"b", graph.id(e.b)}, {"Ek", e.ek}});
  return doc;
}

ConnectivityGraph graph_from_json(const Json& doc, AdjacencyMode fallback_mode) {
  const AdjacencyMode mode =
      doc.contains("adjacency") ? parse_adjacency(doc["adjacency"].get<std::string>()) : fallback_mode;
  std::vector<int> ids;
  std::vector<double> bias;
  for (const auto& n : doc.at("nodes")) {
    ids.push_back(n.at("id").get<int>());
    bias.push_back(n.value("bias", 0.0));
  }
  std::map<int, int> index;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (!index.emplace(ids[i], static_cast<int>(i)).second) {
      throw std::invalid_argument("duplicate node id " + std::to_string(ids[i]));
    }
  }
  std::vector<CircuitEdge> edges;
  for (const auto& e : doc.at("edges")) {
    const int a = e.at("a").get<int>();
    const int b = e.at("b").get<int>();
    if (!index.count(a) || !index.count(b)) throw std::invalid_argument("edge references an unknown node id");
    edges.push_back({index[a], index[b], e.at("Ek").get<double>()});
  }
  return ConnectivityGraph(doc.value("name", std::string()), mode, std::move(ids), std::move(bias), std::move(edges));
}

ConnectivityGraph circuit_from_json(const Json& doc, AdjacencyMode mode) {
  if (doc.contains("cells")) {
    const auto cells = layout_from_json(doc);
    return build_connectivity(cells, mode, doc.value("name", std::string()));
  }
  if (doc.contains("nodes")) return graph_from_json(doc, mode);
  throw std::invalid_argument("circuit JSON needs either 'cells' or 'nodes'");
}

ConnectivityGraph load_circuit(const std::string& path, AdjacencyMode mode) {
  Json doc;
  try {
    doc = Json::parse(read_text_file(path));
  } catch (const Json::parse_error& e) {
    throw std::invalid_argument("'" + path + "' is not valid JSON: " + e.what());
  }
  return circuit_from_json(doc, mode);
}

Json hardware_to_json(const ChimeraGraph& graph) {
  Json doc;
  const auto& spec = graph.spec();
  doc["spec"] = {{"rows", spec.rows}, {"cols", spec.cols}, {"half_tile", spec.half_tile}};
  const YieldMask mask = graph.missing();
  doc["disabled_qubits"] = mask.disabled_qubits;
  auto& couplers = doc["disabled_couplers"] = Json::array();
  for (const auto& [a, b] : mask.disabled_couplers) couplers.push_back({a, b});
  return doc;
}

ChimeraGraph hardware_from_json(const Json& doc) {
  ChimeraSpec spec;
  const auto& s = doc.at("spec");
  spec.rows = s.at("rows").get<int>();
  spec.cols = s.at("cols").get<int>();
  spec.half_tile = s.value("half_tile", 4);
  YieldMask mask;
  if (doc.contains("disabled_qubits")) mask.disabled_qubits = doc["disabled_qubits"].get<std::vector<int>>();
  if (doc.contains("disabled_couplers")) {
    for (const auto& c : doc["disabled_couplers"]) mask.disabled_couplers.emplace_back(c.at(0).get<int>(), c.at(1).get<int>());
  }
  return apply_yield(build_chimera(spec), mask);
}

Json embedding_to_json(const ConnectivityGraph& circuit, const EmbeddingDocument& doc) {
  Json out;
  auto& cells = out["cells"] = Json::object();
  for (int v = 0; v < circuit.num_nodes(); ++v) {
    const std::string key = std::to_string(circuit.id(v));
    if (doc.chains) {
      cells[key] = Json::array({doc.chains->assigned[v]});
    } else {
      cells[key] = doc.models.models[v];
    }
  }
  if (doc.chains) {
    auto& routes = out["routes"] = Json::array();
    for (int e = 0; e < circuit.num_edges(); ++e) {
      const auto& edge = circuit.edge(e);
      routes.push_back({{"edge", {circuit.id(edge.a), circuit.id(edge.b)}}, {"chain", doc.chains->routes[e]}});
    }
  }
  out["algorithm"] = doc.algorithm;
  out["seed"] = doc.seed;
  if (doc.wall_ms) out["wall_ms"] = *doc.wall_ms;
  return out;
}

EmbeddingDocument embedding_from_json(const Json& json, const ConnectivityGraph& circuit) {
  EmbeddingDocument doc;
  doc.algorithm = json.value("algorithm", std::string());
  doc.seed = json.value("seed", std::uint64_t{0});
  if (json.contains("wall_ms")) doc.wall_ms = json["wall_ms"].get<double>();
  const auto& cells = json.at("cells");
  doc.models.models.assign(circuit.num_nodes(), {});
  for (int v = 0; v < circuit.num_nodes(); ++v) {
    const std::string key = std::to_string(circuit.id(v));
    if (!cells.contains(key)) throw std::invalid_argument("embedding has no entry for cell " + key);
    doc.models.models[v] = cells[key].get<std::vector<int>>();
  }
  if (json.contains("routes")) {
    ChainEmbedding chains;
    chains.assigned.resize(circuit.num_nodes());
    for (int v = 0; v < circuit.num_nodes(); ++v) {
      if (doc.models.models[v].size() != 1) throw std::invalid_argument("chain embedding cells need one qubit each");
      chains.assigned[v] = doc.models.models[v][0];
    }
    chains.routes.assign(circuit.num_edges(), {});
    for (const auto& r : json["routes"]) {
      const auto ends = r.at("edge").get<std::vector<int>>();
      if (ends.size() != 2) throw std::invalid_argument("route edge needs two cell ids");
      const auto a = circuit.node_of_id(ends[0]);
      const auto b = circuit.node_of_id(ends[1]);
      if (!a || !b) throw std::invalid_argument("route references an unknown cell");
      const auto e = circuit.edge_between(*a, *b);
      if (!e) throw std::invalid_argument("route references a pair that is not a circuit edge");
      auto chain = r.at("chain").get<std::vector<int>>();
      if (circuit.edge(*e).a != *a) std::reverse(chain.begin(), chain.end());
      chains.routes[*e] = std::move(chain);
    }
    doc.chains = std::move(chains);
  }
  return doc;
}

} // namespace qcaembed
