#pragma once

#include "qcaembed/chimera.hpp"

#include <span>
#include <vector>

namespace qcaembed {

/// PathFinder-style negotiated congestion parameters. The cost of entering an
/// interior qubit q while routing a net is
///   (base(q) + history(q)) * (1 + present_factor * sharing(q))
/// where sharing counts the other nets currently using q and
/// present_factor = present_growth * iteration.
struct RouterConfig {
  double present_growth = 0.5;
  double history_increment = 1.0;
  int max_iterations = 50;
};

struct RoutePair {
  int source = 0;
  int target = 0;
};

struct RouteResult {
  bool success = false;
  std::vector<std::vector<int>> chains;  // source .. target per pair
  std::vector<int> congested;            // qubits still shared on failure
  int iterations = 0;
};

class CongestionRouter {
 public:
  /// `reserved` flags qubits that may not be used as chain interiors (pair
  /// endpoints are reserved automatically). `base_cost` may be empty (all 1).
  CongestionRouter(const ChimeraGraph& hw, std::vector<RoutePair> pairs, std::span<const char> reserved,
                   RouterConfig config = {}, std::span<const double> base_cost = {});

  int num_nets() const { return static_cast<int>(pairs_.size()); }
  bool is_routed(int net) const { return routed_[net] != 0; }
  const std::vector<int>& chain(int net) const { return chains_[net]; }
  int sharing(int q) const { return sharing_[q]; }
  double history(int q) const { return history_[q]; }
  int iteration() const { return iteration_; }

  /// Routes `net` with the current costs. Returns false when the target is
  /// unreachable through non-reserved qubits. Throws if already routed.
  bool route(int net);
  /// Removes the chain of `net` and releases its sharing counts. Throws
  /// std::logic_error if `net` is not routed.
  void rip_up(int net);

  /// Rip-up-and-reroute until no interior qubit is shared.
  RouteResult run();

  std::vector<int> congested() const;

 private:
  double node_cost(int q) const;

  const ChimeraGraph& hw_;
  std::vector<RoutePair> pairs_;
  RouterConfig config_;
  std::vector<char> blocked_;
  std::vector<double> base_;
  std::vector<int> sharing_;
  std::vector<double> history_;
  std::vector<std::vector<int>> chains_;
  std::vector<char> routed_;
  int iteration_ = 1;

  std::vector<double> dist_;
  std::vector<int> parent_;
};

/// Routes every pair so that chains are vertex-disjoint apart from shared
/// endpoints. On failure `congested` lists the qubits still overused (empty
/// when some pair is unreachable).
RouteResult route_all(std::span<const RoutePair> pairs, const ChimeraGraph& hw,
                      std::span<const char> reserved, RouterConfig config = {},
                      std::span<const double> base_cost = {});

} // namespace qcaembed
