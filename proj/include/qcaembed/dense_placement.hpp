#pragma once

#include "qcaembed/chimera.hpp"
#include "qcaembed/circuit.hpp"
#include "qcaembed/embedding.hpp"
#include "qcaembed/rng.hpp"
#include "qcaembed/router.hpp"

#include <chrono>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qcaembed {

struct DenseConfig {
  double seed_adjacency_power = 3.0;   // P(seed cell i) ~ A_i^p
  double seed_gaussian_sigma = 1.0;    // tiles
  double internal_coupler_cost = 1.0;
  double external_coupler_cost = 1.9;
  double edge_proximity_cost = 0.5;    // per tile closer to the boundary
  double seam_qubit_cost = 3.0;        // c_q
  double seam_path_cost = 4.0;         // c_p
  double seam_distance_cost = 3.0;     // c_d
  int max_seam_recursion = 3;
  int max_seam_attempts = 4;           // seam openings tried for one cell
  int placement_candidates = 3;        // ranked qubits tried before opening a seam
  double trial_timeout_s = 30.0;
  RouterConfig router;

  void validate() const;
};

enum class FailureReason { none, seed, placement, routing, seam, timeout, rounds };

std::string_view to_string(FailureReason reason);

/// C = c_q * n_q + c_p * n_p + c_d * d
double seam_cost(int conflicting_qubits, int conflicting_paths, double distance, const DenseConfig& config);

/// Opening a seam at `boundary` (between tile rows/cols boundary-1 and
/// boundary) shifts a band of used rows/cols by one tile into the nearest
/// free row/col on the `direction` side (+1 towards higher indices, -1
/// towards lower ones).
struct SeamCandidate {
  bool rows = true;  // true: horizontal seam between tile rows
  int boundary = 0;
  int direction = 1;
  int free_line = 0;  // row/col that absorbs the shift
  int conflicting_qubits = 0;
  int conflicting_paths = 0;
  double distance = 0.0;
  double cost = 0.0;
  bool away_from_centroid = false;
};

/// Mutable state of one Dense Placement trial. Exposed so each stage of the
/// algorithm can be driven and inspected independently.
class DensePlacer {
 public:
  DensePlacer(const ConnectivityGraph& circuit, const ChimeraGraph& hw, DenseConfig config, Rng& rng);

  /// Draws the seed (cell, qubit). The tile comes from a Gaussian of width
  /// sigma about the array centre; qubits of the tile are tried in random
  /// order. Returns nullopt when no qubit has enough free neighbours.
  std::optional<std::pair<int, int>> select_seed();
  /// Probability of each unplaced cell being drawn as seed.
  std::vector<double> seed_cell_weights() const;

  /// Ranked suitable free qubits for `cell`, cheapest summed search cost from
  /// the assigned qubits of its placed neighbours first.
  std::vector<int> placement_candidates(int cell, int limit);
  std::optional<int> place_next(int cell);
  bool is_suitable(int qubit, int cell) const;
  /// Search cost of stepping from `from` onto `to`.
  double step_cost(int from, int to) const;

  void assign(int cell, int qubit);
  void unassign(int cell);
  /// Routes every unrouted edge between `cell` and its placed neighbours.
  bool route_cell(int cell);

  std::vector<SeamCandidate> seam_candidates(int cell) const;
  /// Opens the cheapest seam next to `cell`'s placed neighbours, then repairs
  /// conflicts (re-placing cells, re-routing chains). False on seam failure.
  bool open_seam(int cell, int depth);
  /// Applies one seam shift; returns false if conflict repair failed.
  bool apply_seam(const SeamCandidate& seam, int depth);

  /// Places `cell` with seam opening on failure.
  bool place_cell(int cell, int depth);

  /// Runs the whole trial.
  FailureReason run();

  bool is_free(int q) const { return hw_.is_active(q) && qubit_cell_[q] < 0 && qubit_route_[q] < 0; }
  int assigned_qubit(int cell) const { return cell_qubit_[cell]; }
  int cell_on(int q) const { return qubit_cell_[q]; }
  int route_on(int q) const { return qubit_route_[q]; }
  const std::vector<int>& route(int edge) const { return routes_[edge]; }
  void set_route(int edge, std::vector<int> chain);
  int num_placed() const { return placed_count_; }
  int seams_opened() const { return seams_opened_; }
  const std::string& detail() const { return detail_; }
  /// Requires every cell placed and every edge routed.
  ChainEmbedding result() const;
  bool timed_out() const;

 private:
  void clear_route(int edge);
  int placed_neighbours(int cell) const;
  int unplaced_connections(int cell) const;
  bool line_free(bool rows, int line) const;
  void centroid(double& mean_row, double& mean_col) const;
  int shifted_qubit(int q, const SeamCandidate& seam) const;
  bool in_band(int q, const SeamCandidate& seam) const;
  // Builds the shifted chain, bridging across the seam; empty if it breaks.
  std::vector<int> shift_chain(const std::vector<int>& chain, const SeamCandidate& seam) const;
  void evaluate_seam(SeamCandidate& seam) const;
  std::optional<std::pair<int, int>> seed_for(const std::vector<int>& cells);

  const ConnectivityGraph& circuit_;
  const ChimeraGraph& hw_;
  DenseConfig config_;
  Rng& rng_;
  std::vector<int> cell_qubit_;
  std::vector<int> qubit_cell_;
  std::vector<int> qubit_route_;
  std::vector<std::vector<int>> routes_;
  int placed_count_ = 0;
  int seams_opened_ = 0;
  int max_edge_distance_ = 0;
  std::string detail_;
  std::chrono::steady_clock::time_point start_;
};

struct DenseResult {
  std::optional<ChainEmbedding> embedding;
  FailureReason reason = FailureReason::none;
  std::string detail;
  int seams_opened = 0;
  double wall_ms = 0.0;
};

/// Dense Placement embedding: seed, then repeatedly place the unplaced
/// neighbours of the placed set (most unplaced connections first) and route
/// their connections, opening seams when no suitable qubit is left.
DenseResult embed_dense(const ConnectivityGraph& circuit, const ChimeraGraph& hw, const DenseConfig& config,
                        Rng& rng);

} // namespace qcaembed
