#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qcaembed {

enum class Orientation : std::uint8_t { vertical = 0, horizontal = 1 };

/// Dimensions of a Chimera processor: rows x cols tiles, each a complete
/// bipartite K_{L,L} between L vertical and L horizontal qubits.
struct ChimeraSpec {
  int rows = 8;
  int cols = 8;
  int half_tile = 4;

  void validate() const;
  int num_tiles() const { return rows * cols; }
  int qubits_per_tile() const { return 2 * half_tile; }
  int num_qubits() const { return 2 * half_tile * rows * cols; }
  /// Coupler count of the full-yield graph.
  long num_couplers() const;

  friend bool operator==(const ChimeraSpec&, const ChimeraSpec&) = default;
};

/// Parses "MxNxL" (e.g. "8x8x4"); throws std::invalid_argument on malformed or
/// non-positive dimensions.
ChimeraSpec parse_chimera_spec(std::string_view text);
std::string format_chimera_spec(const ChimeraSpec& spec);

/// Qubit address. Linear order is row-major over tiles, and inside a tile the
/// L vertical qubits come before the L horizontal ones:
///   linear = (tile_row * cols + tile_col) * 2L + (horizontal ? L : 0) + index
struct QubitId {
  int tile_row = 0;
  int tile_col = 0;
  Orientation orientation = Orientation::vertical;
  int index = 0;

  friend auto operator<=>(const QubitId&, const QubitId&) = default;
};

int to_linear(const ChimeraSpec& spec, const QubitId& q);
QubitId from_linear(const ChimeraSpec& spec, int linear);

/// Tiles between (tile_row, tile_col) and the nearest processor boundary.
int edge_distance(const ChimeraSpec& spec, int tile_row, int tile_col);

/// True when the full-yield Chimera graph has a coupler between a and b.
bool is_chimera_coupler(const ChimeraSpec& spec, int a, int b);

struct YieldMask {
  std::vector<int> disabled_qubits;
  std::vector<std::pair<int, int>> disabled_couplers;
  // Set when the qubit list was drawn rather than given explicitly.
  std::optional<double> fraction;
  std::optional<std::uint64_t> seed;

  /// floor(fraction * num_qubits) distinct qubits, uniformly without
  /// replacement. Same (spec, fraction, seed) gives the same set.
  static YieldMask random(const ChimeraSpec& spec, double fraction, std::uint64_t seed);
};

/// Chimera hardware graph with a yield mask already applied. Immutable after
/// construction apart from apply_yield, which returns a new graph.
class ChimeraGraph {
 public:
  ChimeraGraph() : ChimeraGraph(ChimeraSpec{}) {}
  explicit ChimeraGraph(const ChimeraSpec& spec);

  const ChimeraSpec& spec() const { return spec_; }
  int num_qubits() const { return spec_.num_qubits(); }
  int num_active_qubits() const { return active_count_; }
  long num_active_couplers() const;

  bool is_active(int q) const { return q >= 0 && q < num_qubits() && active_[q] != 0; }
  /// Active neighbours; empty for an inactive qubit.
  std::span<const int> adjacent(int q) const { return adjacency_[q]; }
  bool has_coupler(int a, int b) const;
  /// Sorted list of active couplers (a < b).
  std::vector<std::pair<int, int>> couplers() const;

  int tile_row(int q) const { return q / spec_.qubits_per_tile() / spec_.cols; }
  int tile_col(int q) const { return q / spec_.qubits_per_tile() % spec_.cols; }
  int tile_of(int q) const { return q / spec_.qubits_per_tile(); }
  bool same_tile(int a, int b) const { return tile_of(a) == tile_of(b); }
  int qubit_edge_distance(int q) const { return edge_distance(spec_, tile_row(q), tile_col(q)); }

  /// Qubits and couplers of the full-yield graph that are missing here.
  YieldMask missing() const;

  friend ChimeraGraph apply_yield(const ChimeraGraph& graph, const YieldMask& mask);

 private:
  ChimeraSpec spec_;
  std::vector<std::uint8_t> active_;
  std::vector<std::vector<int>> adjacency_;
  int active_count_ = 0;
};

ChimeraGraph build_chimera(const ChimeraSpec& spec);

/// Removes disabled qubits with all incident couplers, and disabled couplers.
/// Throws std::invalid_argument if the mask references qubits or couplers
/// outside the full-yield graph.
ChimeraGraph apply_yield(const ChimeraGraph& graph, const YieldMask& mask);

/// Active coupled qubits of q. Throws std::invalid_argument if q is inactive.
std::vector<QubitId> neighbors(const ChimeraGraph& graph, const QubitId& q);

} // namespace qcaembed
