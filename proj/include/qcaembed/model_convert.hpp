#pragma once

#include "qcaembed/chimera.hpp"
#include "qcaembed/circuit.hpp"
#include "qcaembed/embedding.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <vector>

namespace qcaembed {

using Rational = boost::multiprecision::cpp_rational;

/// A maximal run of degree-2 cells between two end nodes (cells whose degree
/// is not 2), with the qubits of the routes that join them.
struct CircuitChain {
  int end_a = 0;                // node index
  int end_b = 0;                // equal to end_a for a loop
  std::vector<int> internal;    // degree-2 nodes from end_a towards end_b
  std::vector<int> qubits;      // assigned[end_a] .. assigned[end_b]

  int internal_count() const { return static_cast<int>(internal.size()); }          // N
  int qubit_count() const { return static_cast<int>(qubits.size()) - 2; }           // M
  int virtual_count() const { return qubit_count() - internal_count(); }            // M - N
};

struct ChainDecomposition {
  int num_nodes = 0;
  std::vector<char> is_end;          // per node
  std::vector<int> pseudo_ends;      // end nodes promoted to break pure cycles
  std::vector<CircuitChain> chains;
};

/// Virtual qubits granted to the two end nodes of each chain: n from the
/// end_a side, m from the end_b side.
struct Allocation {
  std::vector<int> n;
  std::vector<int> m;
  Rational objective;
};

ChainDecomposition decompose(const ConnectivityGraph& circuit, const ChainEmbedding& embedding);

/// max over { (M_k - n_k - m_k) / N_k : N_k > 0 } and { 1 + S_l : end nodes },
/// S_l the qubits granted to end node l. Throws if the allocation breaks
/// 0 <= n, m and n + m <= M - N (n + m == M when N == 0).
Rational allocation_objective(const ChainDecomposition& dec, const std::vector<int>& n, const std::vector<int>& m);

/// Exact min-max allocation. The optimum is one of finitely many candidate
/// values; the smallest feasible one is found by bisection, each feasibility
/// test being a max-flow from chains (needing ceil(M - T N) granted qubits) to
/// end nodes (holding at most floor(T) - 1).
Allocation allocate(const ChainDecomposition& dec);

/// Chain embedding to vertex models: end nodes take their assigned qubit plus
/// the granted qubits adjacent to it along each chain; the remaining qubits
/// of a chain are cut into contiguous, near-equal runs for its internal
/// cells (the first cells take one extra when the division is uneven).
VertexModelEmbedding convert(const ConnectivityGraph& circuit, const ChainEmbedding& embedding);
VertexModelEmbedding convert(const ConnectivityGraph& circuit, const ChainEmbedding& embedding,
                             const ChainDecomposition& dec, const Allocation& allocation);

} // namespace qcaembed
