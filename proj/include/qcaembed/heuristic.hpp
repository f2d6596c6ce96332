#pragma once

#include "qcaembed/chimera.hpp"
#include "qcaembed/circuit.hpp"
#include "qcaembed/dense_placement.hpp"
#include "qcaembed/embedding.hpp"
#include "qcaembed/rng.hpp"

#include <chrono>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qcaembed {

/// Node order of the initial pass: uniformly shuffled, or priority-first
/// (most already-placed neighbours next, which keeps the pass connected).
enum class InitialOrder { random, priority };

std::string_view to_string(InitialOrder order);
InitialOrder parse_initial_order(std::string_view text);

struct HeurConfig {
  double overuse_base = 10.0;      // D: a qubit used k times costs D^k
  int no_improvement_limit = 10;   // rounds without a better state
  int max_outer_rounds = 100;
  int refine_rounds = 30;          // shrinking rounds once overuse reaches 0
  int tries = 10;                  // restarts from a fresh initial pass
  double history_increment = 1.0;  // added each round to qubits still overused
  InitialOrder initial_order = InitialOrder::random;
  double trial_timeout_s = 30.0;

  void validate() const;
};

/// Vertex-model state of one heuristic trial. Models may overlap while the
/// search runs; overlap is priced by the overuse weight.
class HeuristicEmbedder {
 public:
  HeuristicEmbedder(const ConnectivityGraph& circuit, const ChimeraGraph& hw, HeurConfig config, Rng& rng);

  /// Drops the model of `node` and grows a new one: root qubit with the
  /// smallest summed weighted distance to the neighbouring models, joined to
  /// each of them by a shortest path whose far end is handed to the
  /// neighbour so the two models stay balanced.
  void place(int node);
  /// Initial pass, overlap removal, then shrinking; repeated from scratch up
  /// to `tries` times until overuse reaches 0.
  FailureReason run();
  /// One initial pass plus improvement rounds.
  FailureReason run_once();

  const std::vector<std::vector<int>>& models() const { return models_; }
  void set_models(std::vector<std::vector<int>> models);
  EmbeddingMetrics metrics() const;
  double qubit_weight(int q) const;
  int usage(int q) const { return usage_[q]; }
  int rounds() const { return rounds_; }
  int tries_used() const { return tries_used_; }
  const std::string& detail() const { return detail_; }
  bool timed_out() const;

 private:
  void add_qubit(int node, int q);
  void clear_model(int node);
  void drop_qubit(int q);
  void refresh_weight(int q);
  // Drops leaf qubits the model no longer needs for any circuit edge.
  void trim(int node);
  bool reaches(int node, int skip, int other) const;
  // Cheapest root for a model joining `targets`, ties broken at random; -1
  // when no qubit reaches all of them. Leaves parent links in parent_.
  int choose_root(const std::vector<int>& targets);
  std::vector<int> initial_order();
  void reset();

  const ConnectivityGraph& circuit_;
  const ChimeraGraph& hw_;
  HeurConfig config_;
  Rng& rng_;
  std::vector<std::vector<int>> models_;
  std::vector<int> usage_;
  std::vector<double> weight_;
  std::vector<double> power_;
  std::vector<std::vector<double>> dist_;
  std::vector<std::vector<int>> parent_;
  std::vector<std::vector<std::pair<double, int>>> heaps_;
  std::vector<int> settled_;
  std::vector<double> history_;
  long overuse_ = 0;
  long total_ = 0;
  int rounds_ = 0;
  int tries_used_ = 0;
  std::string detail_;
  std::chrono::steady_clock::time_point start_;
};

struct HeuristicResult {
  std::optional<VertexModelEmbedding> embedding;
  FailureReason reason = FailureReason::none;
  std::string detail;
  EmbeddingMetrics metrics;
  int rounds = 0;
  int tries = 0;
  double wall_ms = 0.0;
};

HeuristicResult embed_heuristic(const ConnectivityGraph& circuit, const ChimeraGraph& hw, const HeurConfig& config,
                                Rng& rng);

} // namespace qcaembed
