#pragma once

#include "qcaembed/chimera.hpp"
#include "qcaembed/circuit.hpp"
#include "qcaembed/embedding.hpp"

#include "json.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace qcaembed {

using Json = nlohmann::ordered_json;

std::string read_text_file(const std::string& path);
/// Writes atomically enough for our purposes (truncate + write); throws on
/// failure.
void write_text_file(const std::string& path, const std::string& text);

/// Cell layout: {"name", "cells": [{"id", "x", "y", "kind", "P", "diag_ok", "rotated"}]}.
std::vector<QcaCell> layout_from_json(const Json& doc);
Json layout_to_json(const std::vector<QcaCell>& cells, const std::string& name);

/// Connectivity graph: {"name", "adjacency", "nodes": [{"id", "bias"}],
/// "edges": [{"a", "b", "Ek"}]} with a and b given as node ids.
Json graph_to_json(const ConnectivityGraph& graph);
ConnectivityGraph graph_from_json(const Json& doc, AdjacencyMode fallback_mode);

/// Either circuit format. Layouts are turned into graphs under `mode`;
/// pre-built graphs keep the adjacency recorded in the file unless it is
/// missing.
ConnectivityGraph circuit_from_json(const Json& doc, AdjacencyMode mode);
ConnectivityGraph load_circuit(const std::string& path, AdjacencyMode mode);

/// {"spec": {"rows", "cols", "half_tile"}, "disabled_qubits": [...],
///  "disabled_couplers": [[i, j], ...]}
Json hardware_to_json(const ChimeraGraph& graph);
ChimeraGraph hardware_from_json(const Json& doc);

struct EmbeddingDocument {
  std::string algorithm;
  std::uint64_t seed = 0;
  std::optional<double> wall_ms;
  std::optional<ChainEmbedding> chains;
  VertexModelEmbedding models;
};

/// {"cells": {"<id>": [qubits]}, "routes": [{"edge": [a, b], "chain": [...]}],
///  "algorithm", "seed", "wall_ms"}. A chain embedding lists each cell's
/// assigned qubit; vertex models list the whole model and no routes.
Json embedding_to_json(const ConnectivityGraph& circuit, const EmbeddingDocument& doc);
EmbeddingDocument embedding_from_json(const Json& json, const ConnectivityGraph& circuit);

} // namespace qcaembed
