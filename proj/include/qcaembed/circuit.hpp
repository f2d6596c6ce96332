#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qcaembed {

enum class AdjacencyMode { limited, full };

std::string_view to_string(AdjacencyMode mode);
AdjacencyMode parse_adjacency(std::string_view text);

enum class CellKind { normal, driver };

struct QcaCell {
  int id = 0;
  // Position in units of the cell pitch.
  double x = 0.0;
  double y = 0.0;
  CellKind kind = CellKind::normal;
  // Only meaningful for drivers; must lie in [-1, 1].
  double polarization = 0.0;
  // Accepted for file compatibility, geometrically treated as a normal cell.
  bool rotated = false;
  // Diagonal interactions of this cell survive limited adjacency when both
  // cells carry the flag (used to mark inverter structures).
  bool diag_ok = false;
};

/// Interactions are ignored at or beyond this centre distance (cell pitches).
inline constexpr double kInteractionRadius = 2.0;
/// Dot spacing inside a cell as a fraction of the cell pitch.
inline constexpr double kDotSpacing = 0.45;

/// Kink energy for a displacement (dx, dy) between two cell centres, in units
/// of the nearest-neighbour value: E(opposite polarisations) - E(equal
/// polarisations) from a two-electron four-dot point-charge model.
double kink_energy(double dx, double dy);
/// Throws std::invalid_argument for coincident cells.
double kink_energy(const QcaCell& a, const QcaCell& b);

struct CircuitEdge {
  int a = 0;  // node index, a < b
  int b = 0;
  double ek = 0.0;  // kink energy in units of E_k^FM
};

/// Weighted interaction graph of the non-driver cells. Node i carries the bias
/// b_i = sum_D E_k^{i,D} P_D; each edge carries the kink energy.
class ConnectivityGraph {
 public:
  ConnectivityGraph() = default;
  /// Validates (simple graph, indices in range, distinct ids) and builds the
  /// adjacency lists. Throws std::invalid_argument on violations.
  ConnectivityGraph(std::string name, AdjacencyMode mode, std::vector<int> ids,
                    std::vector<double> bias, std::vector<CircuitEdge> edges);

  const std::string& name() const { return name_; }
  AdjacencyMode mode() const { return mode_; }
  int num_nodes() const { return static_cast<int>(ids_.size()); }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  int id(int node) const { return ids_[node]; }
  std::span<const int> ids() const { return ids_; }
  double bias(int node) const { return bias_[node]; }
  std::span<const double> biases() const { return bias_; }
  const CircuitEdge& edge(int e) const { return edges_[e]; }
  std::span<const CircuitEdge> edges() const { return edges_; }
  int degree(int node) const { return static_cast<int>(adjacency_[node].size()); }
  /// (neighbour, edge index) pairs.
  std::span<const std::pair<int, int>> adjacent(int node) const { return adjacency_[node]; }
  std::optional<int> edge_between(int a, int b) const;
  std::optional<int> node_of_id(int id) const;
  bool connected() const { return connected_; }

 private:
  std::string name_;
  AdjacencyMode mode_ = AdjacencyMode::full;
  std::vector<int> ids_;
  std::vector<double> bias_;
  std::vector<CircuitEdge> edges_;
  std::vector<std::vector<std::pair<int, int>>> adjacency_;
  bool connected_ = true;
};

/// Builds the connectivity graph of a cell layout. Under limited adjacency a
/// diagonal interaction survives only when both cells are flagged diag_ok.
/// Throws std::invalid_argument on an empty non-driver set, coincident cells,
/// duplicate ids, or driver polarisations outside [-1, 1]. A disconnected
/// result is returned with connected() == false.
ConnectivityGraph build_connectivity(std::span<const QcaCell> layout, AdjacencyMode mode,
                                     std::string name = {});

} // namespace qcaembed
