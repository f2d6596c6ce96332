#include "qcaembed/chimera.hpp"

#include "qcaembed/rng.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace qcaembed {

void ChimeraSpec::validate() const {
  if (rows < 1 || cols < 1 || half_tile < 1) {
    throw std::invalid_argument("chimera dimensions must be positive, got " +
                                format_chimera_spec(*this));
  }
}

long ChimeraSpec::num_couplers() const {
  const long m = rows, n = cols, l = half_tile;
  return l * l * m * n + l * (m - 1) * n + l * m * (n - 1);
}

ChimeraSpec parse_chimera_spec(std::string_view text) {
  ChimeraSpec spec;
  int* fields[3] = {&spec.rows, &spec.cols, &spec.half_tile};
  std::size_t pos = 0;
  for (int k = 0; k < 3; ++k) {
    std::size_t end = text.find('x', pos);
    if (k == 2) end = text.size();
    if (end == std::string_view::npos) {
      throw std::invalid_argument("chimera spec must look like MxNxL: " + std::string(text));
    }
    auto part = text.substr(pos, end - pos);
    auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), *fields[k]);
    if (ec != std::errc{} || ptr != part.data() + part.size() || part.empty()) {
      throw std::invalid_argument("chimera spec must look like MxNxL: " + std::string(text));
    }
    pos = end + 1;
  }
  spec.validate();
  return spec;
}

std::string format_chimera_spec(const ChimeraSpec& spec) {
  return std::to_string(spec.rows) + "x" + std::to_string(spec.cols) + "x" +
         std::to_string(spec.half_tile);
}

int to_linear(const ChimeraSpec& spec, const QubitId& q) {
  if (q.tile_row < 0 || q.tile_row >= spec.rows || q.tile_col < 0 || q.tile_col >= spec.cols ||
      q.index < 0 || q.index >= spec.half_tile) {
    throw std::out_of_range("qubit address outside the processor");
  }
  const int tile = q.tile_row * spec.cols + q.tile_col;
  const int side = q.orientation == Orientation::horizontal ? spec.half_tile : 0;
  return tile * spec.qubits_per_tile() + side + q.index;
}

QubitId from_linear(const ChimeraSpec& spec, int linear) {
  if (linear < 0 || linear >= spec.num_qubits()) {
    throw std::out_of_range("linear qubit index " + std::to_string(linear) + " out of range");
  }
  const int per_tile = spec.qubits_per_tile();
  const int tile = linear / per_tile;
  const int within = linear % per_tile;
  QubitId q;
  q.tile_row = tile / spec.cols;
  q.tile_col = tile % spec.cols;
  q.orientation = within < spec.half_tile ? Orientation::vertical : Orientation::horizontal;
  q.index = within % spec.half_tile;
  return q;
}

int edge_distance(const ChimeraSpec& spec, int tile_row, int tile_col) {
  return std::min({tile_row, tile_col, spec.rows - 1 - tile_row, spec.cols - 1 - tile_col});
}

bool is_chimera_coupler(const ChimeraSpec& spec, int a, int b) {
  if (a == b || a < 0 || b < 0 || a >= spec.num_qubits() || b >= spec.num_qubits()) return false;
  const QubitId qa = from_linear(spec, a);
  const QubitId qb = from_linear(spec, b);
  if (qa.tile_row == qb.tile_row && qa.tile_col == qb.tile_col) {
    return qa.orientation != qb.orientation;
  }
  if (qa.orientation != qb.orientation || qa.index != qb.index) return false;
  // Vertical qubits couple to the tiles above and below, horizontal ones left and right.
  if (qa.orientation == Orientation::vertical) {
    return qa.tile_col == qb.tile_col && std::abs(qa.tile_row - qb.tile_row) == 1;
  }
  return qa.tile_row == qb.tile_row && std::abs(qa.tile_col - qb.tile_col) == 1;
}

YieldMask YieldMask::random(const ChimeraSpec& spec, double fraction, std::uint64_t seed) {
  spec.validate();
  if (!(fraction >= 0.0 && fraction <= 1.0)) {
    throw std::invalid_argument("disable fraction must lie in [0, 1]");
  }
  const int total = spec.num_qubits();
  const int count = static_cast<int>(std::floor(fraction * total));
  std::vector<int> all(total);
  std::iota(all.begin(), all.end(), 0);
  Rng rng = make_rng(seed);
  // Partial Fisher-Yates: the first `count` slots are a uniform sample.
  for (int i = 0; i < count; ++i) {
    auto j = i + static_cast<int>(uniform_index(rng, static_cast<std::uint64_t>(total - i)));
    std::swap(all[i], all[j]);
  }
  YieldMask mask;
  mask.disabled_qubits.assign(all.begin(), all.begin() + count);
  std::sort(mask.disabled_qubits.begin(), mask.disabled_qubits.end());
  mask.fraction = fraction;
  mask.seed = seed;
  return mask;
}

ChimeraGraph::ChimeraGraph(const ChimeraSpec& spec) : spec_(spec) {
  spec_.validate();
  const int n = spec_.num_qubits();
  active_.assign(n, 1);
  adjacency_.assign(n, {});
  active_count_ = n;
  const int l = spec_.half_tile;
  for (int r = 0; r < spec_.rows; ++r) {
    for (int c = 0; c < spec_.cols; ++c) {
      for (int i = 0; i < l; ++i) {
        const int v = to_linear(spec_, {r, c, Orientation::vertical, i});
        for (int j = 0; j < l; ++j) {
          const int h = to_linear(spec_, {r, c, Orientation::horizontal, j});
          adjacency_[v].push_back(h);
          adjacency_[h].push_back(v);
        }
        if (r + 1 < spec_.rows) {
          const int below = to_linear(spec_, {r + 1, c, Orientation::vertical, i});
          adjacency_[v].push_back(below);
          adjacency_[below].push_back(v);
        }
        const int h = to_linear(spec_, {r, c, Orientation::horizontal, i});
        if (c + 1 < spec_.cols) {
          const int right = to_linear(spec_, {r, c + 1, Orientation::horizontal, i});
          adjacency_[h].push_back(right);
          adjacency_[right].push_back(h);
        }
      }
    }
  }
  for (auto& list : adjacency_) std::sort(list.begin(), list.end());
}

long ChimeraGraph::num_active_couplers() const {
  long twice = 0;
  for (const auto& list : adjacency_) twice += static_cast<long>(list.size());
  return twice / 2;
}

bool ChimeraGraph::has_coupler(int a, int b) const {
  if (!is_active(a) || !is_active(b)) return false;
  const auto& list = adjacency_[a];
  return std::binary_search(list.begin(), list.end(), b);
}

std::vector<std::pair<int, int>> ChimeraGraph::couplers() const {
  std::vector<std::pair<int, int>> out;
  for (int a = 0; a < num_qubits(); ++a) {
    for (int b : adjacency_[a]) {
      if (a < b) out.emplace_back(a, b);
    }
  }
  return out;
}

YieldMask ChimeraGraph::missing() const {
  YieldMask mask;
  const ChimeraGraph full(spec_);
  for (int q = 0; q < num_qubits(); ++q) {
    if (!is_active(q)) mask.disabled_qubits.push_back(q);
  }
  for (auto [a, b] : full.couplers()) {
    if (is_active(a) && is_active(b) && !has_coupler(a, b)) mask.disabled_couplers.emplace_back(a, b);
  }
  return mask;
}

ChimeraGraph build_chimera(const ChimeraSpec& spec) { return ChimeraGraph(spec); }

ChimeraGraph apply_yield(const ChimeraGraph& graph, const YieldMask& mask) {
  const ChimeraSpec& spec = graph.spec();
  if (mask.fraction && !(*mask.fraction >= 0.0 && *mask.fraction <= 1.0)) {
    throw std::invalid_argument("disable fraction must lie in [0, 1]");
  }
  ChimeraGraph out = graph;
  for (int q : mask.disabled_qubits) {
    if (q < 0 || q >= spec.num_qubits()) {
      throw std::invalid_argument("disabled qubit " + std::to_string(q) + " outside the processor");
    }
    if (!out.active_[q]) continue;
    out.active_[q] = 0;
    --out.active_count_;
    for (int nb : out.adjacency_[q]) {
      auto& list = out.adjacency_[nb];
      list.erase(std::lower_bound(list.begin(), list.end(), q));
    }
    out.adjacency_[q].clear();
  }
  for (auto [a, b] : mask.disabled_couplers) {
    if (!is_chimera_coupler(spec, a, b)) {
      throw std::invalid_argument("disabled coupler (" + std::to_string(a) + "," +
                                  std::to_string(b) + ") is not a Chimera coupler");
    }
    if (!out.has_coupler(a, b)) continue;
    auto& la = out.adjacency_[a];
    la.erase(std::lower_bound(la.begin(), la.end(), b));
    auto& lb = out.adjacency_[b];
    lb.erase(std::lower_bound(lb.begin(), lb.end(), a));
  }
  return out;
}

std::vector<QubitId> neighbors(const ChimeraGraph& graph, const QubitId& q) {
  const int linear = to_linear(graph.spec(), q);
  if (!graph.is_active(linear)) {
    throw std::invalid_argument("qubit " + std::to_string(linear) + " is not active");
  }
  std::vector<QubitId> out;
  for (int nb : graph.adjacent(linear)) out.push_back(from_linear(graph.spec(), nb));
  return out;
}

} // namespace qcaembed
