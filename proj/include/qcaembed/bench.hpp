#pragma once

#include "qcaembed/chimera.hpp"
#include "qcaembed/circuit.hpp"
#include "qcaembed/dense_placement.hpp"
#include "qcaembed/fit.hpp"
#include "qcaembed/heuristic.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace qcaembed {

enum class Algorithm { dense, heuristic };

std::string_view to_string(Algorithm algorithm);
Algorithm parse_algorithm(std::string_view text);

struct TrialRecord {
  std::string circuit_id;
  int n_cells = 0;
  std::string algorithm;
  std::string adjacency;
  int rows = 0;
  int cols = 0;
  double n_dis = 0.0;
  std::uint64_t seed = 0;
  bool success = false;
  int n_qubits = 0;
  int max_model = 0;
  double wall_ms = 0.0;

  friend bool operator==(const TrialRecord&, const TrialRecord&) = default;
};

inline constexpr const char* kCsvHeader =
    "circuit_id,n_cells,algorithm,adjacency,rows,cols,n_dis,seed,success,n_qubits,max_model,wall_ms";

/// Doubles use the shortest representation that reads back exactly. With
/// omit_timing every wall_ms is written as 0 so runs can be byte-compared.
std::string records_to_csv(const std::vector<TrialRecord>& records, bool omit_timing = false);
std::vector<TrialRecord> records_from_csv(const std::string& text);

struct SweepCircuit {
  std::string id;
  ConnectivityGraph graph;
};

struct SweepConfig {
  std::vector<Algorithm> algorithms = {Algorithm::dense, Algorithm::heuristic};
  ChimeraSpec spec;
  std::vector<double> n_dis = {0.0};
  int trials = 1;
  std::uint64_t root_seed = 1;
  DenseConfig dense;
  HeurConfig heuristic;
  int jobs = 1;
};

/// Seeds: trial seed = derive_seed(root, "trial/<circuit>/<algorithm>", n_dis
/// index, trial); the yield mask of a trial is drawn from
/// derive_seed(root, "yield/<circuit>", n_dis index, trial) so both
/// algorithms meet the same broken hardware.
std::uint64_t trial_seed(std::uint64_t root, const std::string& circuit_id, Algorithm algorithm, int ndis_index,
                         int trial);
std::uint64_t yield_seed(std::uint64_t root, const std::string& circuit_id, int ndis_index, int trial);

struct TrialOutcome {
  TrialRecord record;
  std::vector<int> model_sizes;    // of the (converted) vertex models
  std::vector<int> chain_lengths;  // dense routes, couplers per route
};

/// One embedding attempt. Successful embeddings are re-validated; a failed
/// validation throws std::logic_error.
TrialOutcome run_trial(const SweepCircuit& circuit, Algorithm algorithm, const ChimeraGraph& hw, double n_dis,
                       std::uint64_t seed, const SweepConfig& config);

struct SweepResult {
  std::vector<TrialRecord> records;
  std::map<std::string, std::map<int, long>> model_sizes;  // per algorithm
  std::map<int, long> chain_lengths;                      // dense routes
};

/// Records come back ordered by (circuit, n_dis, algorithm, trial) whatever
/// the number of worker threads.
SweepResult run_sweep(const std::vector<SweepCircuit>& circuits, const SweepConfig& config);

struct GroupSummary {
  std::string algorithm;
  std::string adjacency;
  double n_dis = 0.0;
  int trials = 0;
  int successes = 0;
  double mean_qubits = 0.0;      // over successes
  double mean_max_model = 0.0;   // over successes
  double mean_wall_ms = 0.0;
};

std::vector<GroupSummary> summarize(const std::vector<TrialRecord>& records);
std::string format_summary(const std::vector<GroupSummary>& groups, const SweepResult* histograms = nullptr);

struct GroupFit {
  std::string algorithm;
  std::string adjacency;
  double n_dis = 0.0;
  FitResult fit;
};

/// 50P-size fits per (algorithm, adjacency, n_dis); groups that cannot be fitted
/// are skipped.
std::vector<GroupFit> fit_success(const std::vector<TrialRecord>& records, int bin_width = 20);
/// Mean qubits of successful trials against cell count, binned, per
/// (algorithm, adjacency) at n_dis = 0.
std::vector<GroupFit> fit_usage(const std::vector<TrialRecord>& records, int bin_width = 20);
/// Power law of the per-bin maximum wall time against cell count.
std::vector<GroupFit> fit_runtime(const std::vector<TrialRecord>& records, int bin_width = 20);
/// Yield law per (algorithm, adjacency) from the erfc mu at each n_dis.
std::vector<GroupFit> fit_yield_groups(const std::vector<TrialRecord>& records, int bin_width = 20);

std::string group_fits_to_json(const std::vector<GroupFit>& fits);

} // namespace qcaembed
