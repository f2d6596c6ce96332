#include "qcaembed/embedding.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>

namespace qcaembed {

int VertexModelEmbedding::total_qubits() const {
  int total = 0;
  for (const auto& m : models) total += static_cast<int>(m.size());
  return total;
}

int VertexModelEmbedding::max_model_size() const {
  int best = 0;
  for (const auto& m : models) best = std::max(best, static_cast<int>(m.size()));
  return best;
}

namespace {

std::string node_name(const ConnectivityGraph& circuit, int node) {
  return "cell " + std::to_string(circuit.id(node));
}

bool model_connected(const std::vector<int>& model, const ChimeraGraph& hw) {
  if (model.size() <= 1) return true;
  std::vector<int> sorted = model;
  std::sort(sorted.begin(), sorted.end());
  std::vector<char> seen(sorted.size(), 0);
  std::queue<std::size_t> todo;
  todo.push(0);
  seen[0] = 1;
  std::size_t reached = 1;
  while (!todo.empty()) {
    const int q = sorted[todo.front()];
    todo.pop();
    for (int nb : hw.adjacent(q)) {
      auto it = std::lower_bound(sorted.begin(), sorted.end(), nb);
      if (it == sorted.end() || *it != nb) continue;
      auto k = static_cast<std::size_t>(it - sorted.begin());
      if (!seen[k]) {
        seen[k] = 1;
        ++reached;
        todo.push(k);
      }
    }
  }
  return reached == sorted.size();
}

} // namespace

std::vector<Violation> validate(const VertexModelEmbedding& embedding, const ConnectivityGraph& circuit,
                                const ChimeraGraph& hw) {
  std::vector<Violation> out;
  if (static_cast<int>(embedding.models.size()) != circuit.num_nodes()) {
    out.push_back({"count", "embedding has " + std::to_string(embedding.models.size()) +
                                " models for " + std::to_string(circuit.num_nodes()) + " cells"});
    return out;
  }
  std::vector<int> owner(hw.num_qubits(), -1);
  for (int v = 0; v < circuit.num_nodes(); ++v) {
    const auto& model = embedding.models[v];
    if (model.empty()) {
      out.push_back({"empty", node_name(circuit, v) + " has an empty model"});
      continue;
    }
    bool all_active = true;
    for (int q : model) {
      if (!hw.is_active(q)) {
        out.push_back({"inactive", node_name(circuit, v) + " uses inactive qubit " + std::to_string(q)});
        all_active = false;
        continue;
      }
      if (owner[q] >= 0 && owner[q] != v) {
        out.push_back({"disjointness", "qubit " + std::to_string(q) + " shared by " +
                                           node_name(circuit, owner[q]) + " and " + node_name(circuit, v)});
      } else if (owner[q] == v) {
        out.push_back({"disjointness", "qubit " + std::to_string(q) + " repeated in " + node_name(circuit, v)});
      }
      owner[q] = v;
    }
    if (all_active && !model_connected(model, hw)) {
      out.push_back({"connectivity", node_name(circuit, v) + " model is not connected"});
    }
  }
  for (const auto& edge : circuit.edges()) {
    bool realised = false;
    for (int q : embedding.models[edge.a]) {
      if (!hw.is_active(q)) continue;
      for (int nb : hw.adjacent(q)) {
        const auto& mb = embedding.models[edge.b];
        if (std::find(mb.begin(), mb.end(), nb) != mb.end()) {
          realised = true;
          break;
        }
      }
      if (realised) break;
    }
    if (!realised) {
      out.push_back({"edge", "no coupler realises edge (" + std::to_string(circuit.id(edge.a)) + "," +
                                 std::to_string(circuit.id(edge.b)) + ")"});
    }
  }
  return out;
}

std::vector<Violation> validate(const ChainEmbedding& embedding, const ConnectivityGraph& circuit,
                                const ChimeraGraph& hw) {
  std::vector<Violation> out;
  if (static_cast<int>(embedding.assigned.size()) != circuit.num_nodes() ||
      static_cast<int>(embedding.routes.size()) != circuit.num_edges()) {
    out.push_back({"count", "chain embedding does not match the circuit size"});
    return out;
  }
  // -1 free, >= 0 assigned cell, <= -2 interior of route (-2 - e).
  std::vector<int> use(hw.num_qubits(), -1);
  for (int v = 0; v < circuit.num_nodes(); ++v) {
    const int q = embedding.assigned[v];
    if (!hw.is_active(q)) {
      out.push_back({"inactive", node_name(circuit, v) + " assigned to inactive qubit " + std::to_string(q)});
      continue;
    }
    if (use[q] >= 0) {
      out.push_back({"disjointness", "qubit " + std::to_string(q) + " assigned to two cells"});
    }
    use[q] = v;
  }
  for (int e = 0; e < circuit.num_edges(); ++e) {
    const auto& chain = embedding.routes[e];
    const auto& edge = circuit.edge(e);
    const std::string label =
        "route (" + std::to_string(circuit.id(edge.a)) + "," + std::to_string(circuit.id(edge.b)) + ")";
    if (chain.size() < 2 || chain.front() != embedding.assigned[edge.a] ||
        chain.back() != embedding.assigned[edge.b]) {
      out.push_back({"chain", label + " does not join the assigned qubits"});
      continue;
    }
    for (std::size_t k = 0; k + 1 < chain.size(); ++k) {
      if (!hw.has_coupler(chain[k], chain[k + 1])) {
        out.push_back({"chain", label + " uses missing coupler (" + std::to_string(chain[k]) + "," +
                                    std::to_string(chain[k + 1]) + ")"});
      }
    }
    for (std::size_t k = 1; k + 1 < chain.size(); ++k) {
      const int q = chain[k];
      if (!hw.is_active(q)) {
        out.push_back({"inactive", label + " passes inactive qubit " + std::to_string(q)});
        continue;
      }
      if (use[q] != -1) {
        out.push_back({"disjointness", label + " reuses qubit " + std::to_string(q)});
      }
      use[q] = -2 - e;
    }
  }
  return out;
}

int qubits_used(const ChainEmbedding& embedding) {
  int total = static_cast<int>(embedding.assigned.size());
  for (const auto& chain : embedding.routes) {
    if (chain.size() > 2) total += static_cast<int>(chain.size()) - 2;
  }
  return total;
}

std::vector<int> chain_lengths(const ChainEmbedding& embedding) {
  std::vector<int> out;
  out.reserve(embedding.routes.size());
  for (const auto& chain : embedding.routes) out.push_back(static_cast<int>(chain.size()) - 1);
  return out;
}

EmbeddingMetrics embedding_metrics(std::span<const std::vector<int>> models, int num_qubits) {
  EmbeddingMetrics m;
  std::vector<int> multiplicity(num_qubits, 0);
  for (const auto& model : models) {
    m.total_size += static_cast<long>(model.size());
    m.max_size = std::max(m.max_size, static_cast<long>(model.size()));
    for (int q : model) {
      if (q < 0 || q >= num_qubits) throw std::out_of_range("qubit index out of range in model");
      if (multiplicity[q]++ > 0) ++m.overuse;
    }
  }
  return m;
}

} // namespace qcaembed
