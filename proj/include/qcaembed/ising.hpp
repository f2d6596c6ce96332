#pragma once

#include "qcaembed/chimera.hpp"
#include "qcaembed/circuit.hpp"
#include "qcaembed/embedding.hpp"
#include "qcaembed/model_convert.hpp"
#include "qcaembed/simd/kernels.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace qcaembed {

/// Classical energy E(s) = sum_i h_i s_i + sum_(i,j) J_ij s_i s_j over
/// s in {-1, +1}^n. Spin s_i = +1 is basis bit i clear.
struct IsingModel {
  int n = 0;
  std::vector<double> h;
  std::vector<simd::Coupling> couplings;

  double energy(std::uint64_t state) const;
};

/// Circuit-level model: one spin per node, h_i = b_i / E_FM and
/// J_ij = -E_k(i,j) / E_FM. A cell's polarisation is P_i = -s_i, so a +1
/// driver next to a cell pulls the cell to P = +1.
IsingModel circuit_ising(const ConnectivityGraph& circuit);

inline int polarization_of_spin(int s) { return -s; }

/// Hardware-level problem, stored exactly. Keys are linear qubit indices and
/// coupler pairs (a < b).
struct IsingProblem {
  std::map<int, Rational> h;
  std::map<std::pair<int, int>, Rational> j;
  // Factor applied to every circuit-derived term (biases and circuit-edge
  // couplers); chain couplers stay at -1.
  Rational scale = 1;
  bool scaled = false;

  double h_value(int q) const;
  double j_value(int a, int b) const;
  /// Spin model on the qubits that carry a term, in ascending qubit order;
  /// `qubits` receives that order.
  IsingModel to_model(std::vector<int>& qubits) const;
};

struct AssignOptions {
  // Scale the circuit-derived terms so no vertex model can profit from
  // breaking internally (see the README); otherwise scale only when some
  // term would leave [-1, 1].
  bool chain_safe = false;
};

/// Bias split: every qubit of model i gets h = b_i / (E_FM |Q_i|);
/// couplers inside a model get J = -1; a circuit edge spreads -E_k / E_FM
/// evenly over the couplers joining the two models.
IsingProblem assign(const VertexModelEmbedding& embedding, const ConnectivityGraph& circuit, const ChimeraGraph& hw,
                    const AssignOptions& options = {});

/// Largest circuit-derived weight W = |b_i| + sum of |E_k| over i's edges.
double max_node_weight(const ConnectivityGraph& circuit);

inline constexpr int kMaxBruteSpins = 24;

/// All global minimisers (basis states) of the model; ties use an absolute
/// tolerance of 1e-9 scaled by the largest term. Throws above kMaxBruteSpins.
std::vector<std::uint64_t> ground_states_brute(const IsingModel& model);

std::string format_ising_text(const IsingProblem& problem);
std::string format_ising_json(const IsingProblem& problem);

} // namespace qcaembed
