#pragma once

#include "qcaembed/chimera.hpp"
#include "qcaembed/circuit.hpp"

#include <compare>
#include <span>
#include <string>
#include <vector>

namespace qcaembed {

/// Place-and-route form: one assigned qubit per circuit node plus a qubit
/// chain per circuit edge. routes[e] runs from assigned[edge(e).a] to
/// assigned[edge(e).b], endpoints included; a directly coupled pair has a
/// two-element chain.
struct ChainEmbedding {
  std::vector<int> assigned;
  std::vector<std::vector<int>> routes;

  friend bool operator==(const ChainEmbedding&, const ChainEmbedding&) = default;
};

/// Minor-embedding form: each circuit node maps to a connected qubit set.
struct VertexModelEmbedding {
  std::vector<std::vector<int>> models;  // sorted qubit lists

  int total_qubits() const;
  int max_model_size() const;

  friend bool operator==(const VertexModelEmbedding&, const VertexModelEmbedding&) = default;
};

struct Violation {
  std::string kind;    // inactive | empty | connectivity | disjointness | edge | chain | count
  std::string detail;
};

/// Checks every model is non-empty, uses active qubits only, induces a
/// connected subgraph, models are pairwise disjoint, and every circuit edge
/// is realised by at least one coupler between the two models.
std::vector<Violation> validate(const VertexModelEmbedding& embedding, const ConnectivityGraph& circuit,
                                const ChimeraGraph& hw);

/// Checks the place-and-route invariants: injective assignment, chains made of
/// active couplers with the right endpoints, and no qubit shared between two
/// chain interiors or between a chain interior and an assigned qubit.
std::vector<Violation> validate(const ChainEmbedding& embedding, const ConnectivityGraph& circuit,
                                const ChimeraGraph& hw);

/// Treats every assigned qubit as its own model and every chain interior as
/// belonging to the edge, counting all used qubits.
int qubits_used(const ChainEmbedding& embedding);
/// Coupler count of each route.
std::vector<int> chain_lengths(const ChainEmbedding& embedding);

/// Lexicographic quality of a (possibly overlapping) set of models.
struct EmbeddingMetrics {
  long overuse = 0;     // sum over qubits of max(0, multiplicity - 1)
  long total_size = 0;  // sum of model sizes
  long max_size = 0;

  friend auto operator<=>(const EmbeddingMetrics&, const EmbeddingMetrics&) = default;
};

EmbeddingMetrics embedding_metrics(std::span<const std::vector<int>> models, int num_qubits);

} // namespace qcaembed
