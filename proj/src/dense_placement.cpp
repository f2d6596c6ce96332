#include "qcaembed/dense_placement.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <queue>
#include <stdexcept>
#include <tuple>

namespace qcaembed {

void DenseConfig::validate() const {
  if (!(internal_coupler_cost > 0 && external_coupler_cost > 0 && edge_proximity_cost >= 0 &&
        seam_qubit_cost > 0 && seam_path_cost > 0 && seam_distance_cost > 0)) {
    throw std::invalid_argument("dense placement costs must be positive");
  }
  if (!(seed_adjacency_power >= 0)) throw std::invalid_argument("seed adjacency power must be >= 0");
  if (!(seed_gaussian_sigma > 0)) throw std::invalid_argument("seed sigma must be > 0");
  if (max_seam_recursion < 0 || max_seam_attempts < 0 || placement_candidates < 1) {
    throw std::invalid_argument("dense placement limits must be non-negative");
  }
}

std::string_view to_string(FailureReason reason) {
  switch (reason) {
    case FailureReason::none: return "none";
    case FailureReason::seed: return "seed";
    case FailureReason::placement: return "placement";
    case FailureReason::routing: return "routing";
    case FailureReason::seam: return "seam";
    case FailureReason::timeout: return "timeout";
    case FailureReason::rounds: return "rounds";
  }
  return "unknown";
}

double seam_cost(int conflicting_qubits, int conflicting_paths, double distance, const DenseConfig& config) {
  return config.seam_qubit_cost * conflicting_qubits + config.seam_path_cost * conflicting_paths +
         config.seam_distance_cost * distance;
}

namespace {

int draw_weighted(const std::vector<double>& weights, Rng& rng) {
  double total = 0.0;
  for (double w : weights) total += w;
  if (total <= 0.0) return -1;
  double u = uniform_unit(rng) * total;
  int last = -1;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] <= 0.0) continue;
    last = static_cast<int>(i);
    if (u < weights[i]) return last;
    u -= weights[i];
  }
  return last;
}

} // namespace

DensePlacer::DensePlacer(const ConnectivityGraph& circuit, const ChimeraGraph& hw, DenseConfig config, Rng& rng)
    : circuit_(circuit), hw_(hw), config_(config), rng_(rng) {
  config_.validate();
  cell_qubit_.assign(circuit_.num_nodes(), -1);
  qubit_cell_.assign(hw_.num_qubits(), -1);
  qubit_route_.assign(hw_.num_qubits(), -1);
  routes_.assign(circuit_.num_edges(), {});
  const auto& spec = hw_.spec();
  for (int r = 0; r < spec.rows; ++r) {
    for (int c = 0; c < spec.cols; ++c) max_edge_distance_ = std::max(max_edge_distance_, edge_distance(spec, r, c));
  }
  start_ = std::chrono::steady_clock::now();
}

bool DensePlacer::timed_out() const {
  const auto elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  return elapsed > config_.trial_timeout_s;
}

std::vector<double> DensePlacer::seed_cell_weights() const {
  std::vector<double> w(circuit_.num_nodes(), 0.0);
  bool any = false;
  for (int v = 0; v < circuit_.num_nodes(); ++v) {
    if (cell_qubit_[v] >= 0) continue;
    w[v] = std::pow(static_cast<double>(circuit_.degree(v)), config_.seed_adjacency_power);
    any = any || w[v] > 0.0;
  }
  if (!any) {
    for (int v = 0; v < circuit_.num_nodes(); ++v) w[v] = cell_qubit_[v] >= 0 ? 0.0 : 1.0;
  }
  double total = 0.0;
  for (double x : w) total += x;
  if (total > 0.0) {
    for (double& x : w) x /= total;
  }
  return w;
}

std::optional<std::pair<int, int>> DensePlacer::select_seed() {
  std::vector<int> unplaced;
  for (int v = 0; v < circuit_.num_nodes(); ++v) {
    if (cell_qubit_[v] < 0) unplaced.push_back(v);
  }
  return seed_for(unplaced);
}

std::optional<std::pair<int, int>> DensePlacer::seed_for(const std::vector<int>& cells) {
  if (cells.empty()) return std::nullopt;
  std::vector<double> cell_w(circuit_.num_nodes(), 0.0);
  bool any = false;
  for (int v : cells) {
    cell_w[v] = std::pow(static_cast<double>(circuit_.degree(v)), config_.seed_adjacency_power);
    any = any || cell_w[v] > 0.0;
  }
  if (!any) {
    for (int v : cells) cell_w[v] = 1.0;
  }
  const int cell = draw_weighted(cell_w, rng_);
  const int need = circuit_.degree(cell);

  const auto& spec = hw_.spec();
  const double rc = (spec.rows - 1) / 2.0;
  const double cc = (spec.cols - 1) / 2.0;
  const double two_var = 2.0 * config_.seed_gaussian_sigma * config_.seed_gaussian_sigma;
  std::vector<double> tile_w(spec.num_tiles());
  for (int r = 0; r < spec.rows; ++r) {
    for (int c = 0; c < spec.cols; ++c) {
      const double d2 = (r - rc) * (r - rc) + (c - cc) * (c - cc);
      // Floor keeps far tiles reachable once the centre is exhausted.
      tile_w[r * spec.cols + c] = std::max(std::exp(-d2 / two_var), 1e-300);
    }
  }
  const int per_tile = spec.qubits_per_tile();
  std::vector<int> order(per_tile);
  for (;;) {
    const int tile = draw_weighted(tile_w, rng_);
    if (tile < 0) return std::nullopt;
    for (int k = 0; k < per_tile; ++k) order[k] = tile * per_tile + k;
    shuffle_range(order.begin(), order.end(), rng_);
    for (int q : order) {
      if (!is_free(q)) continue;
      int free_nb = 0;
      for (int nb : hw_.adjacent(q)) free_nb += is_free(nb) ? 1 : 0;
      if (free_nb >= need) return std::make_pair(cell, q);
    }
    tile_w[tile] = 0.0;
  }
}

double DensePlacer::step_cost(int from, int to) const {
  const double coupler = hw_.same_tile(from, to) ? config_.internal_coupler_cost : config_.external_coupler_cost;
  return coupler + config_.edge_proximity_cost * (max_edge_distance_ - hw_.qubit_edge_distance(to));
}

bool DensePlacer::is_suitable(int qubit, int cell) const {
  if (!is_free(qubit)) return false;
  int have = 0;
  for (int nb : hw_.adjacent(qubit)) {
    if (is_free(nb)) {
      ++have;
      continue;
    }
    const int owner = qubit_cell_[nb];
    if (owner >= 0 && circuit_.edge_between(cell, owner)) ++have;
  }
  return have >= circuit_.degree(cell);
}

std::vector<int> DensePlacer::placement_candidates(int cell, int limit) {
  std::vector<int> sources;
  for (auto [nb, e] : circuit_.adjacent(cell)) {
    if (cell_qubit_[nb] >= 0) sources.push_back(cell_qubit_[nb]);
  }
  const int n = hw_.num_qubits();
  constexpr double inf = std::numeric_limits<double>::infinity();
  std::vector<double> total(n, 0.0);
  std::vector<double> dist(n);
  using Item = std::tuple<double, int>;
  for (int s : sources) {
    std::fill(dist.begin(), dist.end(), inf);
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    dist[s] = 0.0;
    heap.emplace(0.0, s);
    while (!heap.empty()) {
      auto [d, q] = heap.top();
      heap.pop();
      if (d > dist[q]) continue;
      for (int nb : hw_.adjacent(q)) {
        if (!is_free(nb)) continue;
        const double nd = d + step_cost(q, nb);
        if (nd < dist[nb]) {
          dist[nb] = nd;
          heap.emplace(nd, nb);
        }
      }
    }
    for (int q = 0; q < n; ++q) total[q] += dist[q];
  }
  struct Candidate {
    long long key;
    std::uint64_t tie;
    int qubit;
  };
  std::vector<Candidate> found;
  for (int q = 0; q < n; ++q) {
    if (sources.empty() ? !is_free(q) : total[q] == inf) continue;
    if (!is_suitable(q, cell)) continue;
    found.push_back({std::llround(total[q] * 1e6), 0, q});
  }
  for (auto& c : found) c.tie = rng_();
  std::sort(found.begin(), found.end(), [](const Candidate& a, const Candidate& b) {
    return std::tie(a.key, a.tie, a.qubit) < std::tie(b.key, b.tie, b.qubit);
  });
  std::vector<int> out;
  for (int k = 0; k < static_cast<int>(found.size()) && k < limit; ++k) out.push_back(found[k].qubit);
  return out;
}

std::optional<int> DensePlacer::place_next(int cell) {
  auto ranked = placement_candidates(cell, 1);
  if (ranked.empty()) return std::nullopt;
  return ranked.front();
}

void DensePlacer::assign(int cell, int qubit) {
  if (cell_qubit_[cell] >= 0) throw std::logic_error("cell already placed");
  if (!is_free(qubit)) throw std::logic_error("qubit " + std::to_string(qubit) + " is not free");
  cell_qubit_[cell] = qubit;
  qubit_cell_[qubit] = cell;
  ++placed_count_;
}

void DensePlacer::clear_route(int edge) {
  auto& chain = routes_[edge];
  for (std::size_t k = 1; k + 1 < chain.size(); ++k) qubit_route_[chain[k]] = -1;
  chain.clear();
}

void DensePlacer::set_route(int edge, std::vector<int> chain) {
  clear_route(edge);
  for (std::size_t k = 1; k + 1 < chain.size(); ++k) {
    if (!is_free(chain[k])) throw std::logic_error("route interior qubit is not free");
    qubit_route_[chain[k]] = edge;
  }
  routes_[edge] = std::move(chain);
}

void DensePlacer::unassign(int cell) {
  const int q = cell_qubit_[cell];
  if (q < 0) return;
  for (auto [nb, e] : circuit_.adjacent(cell)) clear_route(e);
  qubit_cell_[q] = -1;
  cell_qubit_[cell] = -1;
  --placed_count_;
}

bool DensePlacer::route_cell(int cell) {
  std::vector<RoutePair> pairs;
  std::vector<int> edges;
  for (auto [nb, e] : circuit_.adjacent(cell)) {
    if (cell_qubit_[nb] < 0 || !routes_[e].empty()) continue;
    pairs.push_back({cell_qubit_[cell], cell_qubit_[nb]});
    edges.push_back(e);
  }
  if (pairs.empty()) return true;
  std::vector<char> reserved(hw_.num_qubits());
  for (int q = 0; q < hw_.num_qubits(); ++q) reserved[q] = is_free(q) ? 0 : 1;
  auto result = route_all(pairs, hw_, reserved, config_.router);
  if (!result.success) return false;
  for (std::size_t k = 0; k < edges.size(); ++k) {
    auto chain = std::move(result.chains[k]);
    if (circuit_.edge(edges[k]).a != cell) std::reverse(chain.begin(), chain.end());
    set_route(edges[k], std::move(chain));
  }
  return true;
}

int DensePlacer::placed_neighbours(int cell) const {
  int count = 0;
  for (auto [nb, e] : circuit_.adjacent(cell)) count += cell_qubit_[nb] >= 0 ? 1 : 0;
  return count;
}

int DensePlacer::unplaced_connections(int cell) const {
  return circuit_.degree(cell) - placed_neighbours(cell);
}

bool DensePlacer::line_free(bool rows, int line) const {
  const auto& spec = hw_.spec();
  const int per_tile = spec.qubits_per_tile();
  const int count = rows ? spec.cols : spec.rows;
  for (int k = 0; k < count; ++k) {
    const int tile = rows ? line * spec.cols + k : k * spec.cols + line;
    for (int i = 0; i < per_tile; ++i) {
      const int q = tile * per_tile + i;
      if (qubit_cell_[q] >= 0 || qubit_route_[q] >= 0) return false;
    }
  }
  return true;
}

void DensePlacer::centroid(double& mean_row, double& mean_col) const {
  double sr = 0.0, sc = 0.0;
  int n = 0;
  for (int q : cell_qubit_) {
    if (q < 0) continue;
    sr += hw_.tile_row(q) + 0.5;
    sc += hw_.tile_col(q) + 0.5;
    ++n;
  }
  mean_row = n ? sr / n : hw_.spec().rows / 2.0;
  mean_col = n ? sc / n : hw_.spec().cols / 2.0;
}

bool DensePlacer::in_band(int q, const SeamCandidate& seam) const {
  const int line = seam.rows ? hw_.tile_row(q) : hw_.tile_col(q);
  if (seam.direction > 0) return line >= seam.boundary && line < seam.free_line;
  return line > seam.free_line && line < seam.boundary;
}

int DensePlacer::shifted_qubit(int q, const SeamCandidate& seam) const {
  if (!in_band(q, seam)) return q;
  const auto& spec = hw_.spec();
  const int stride = seam.rows ? spec.cols * spec.qubits_per_tile() : spec.qubits_per_tile();
  return q + seam.direction * stride;
}

std::vector<int> DensePlacer::shift_chain(const std::vector<int>& chain, const SeamCandidate& seam) const {
  std::vector<int> out;
  out.reserve(chain.size() + 1);
  for (std::size_t k = 0; k < chain.size(); ++k) {
    if (k > 0 && in_band(chain[k - 1], seam) != in_band(chain[k], seam)) {
      // The band side moved one tile away; its old position bridges the gap.
      const int bridge = in_band(chain[k], seam) ? chain[k] : chain[k - 1];
      out.push_back(bridge);
    }
    out.push_back(shifted_qubit(chain[k], seam));
  }
  for (std::size_t k = 0; k < out.size(); ++k) {
    if (!hw_.is_active(out[k])) return {};
    if (k > 0 && !hw_.has_coupler(out[k - 1], out[k])) return {};
  }
  return out;
}

void DensePlacer::evaluate_seam(SeamCandidate& seam) const {
  std::vector<char> conflicting(circuit_.num_nodes(), 0);
  seam.conflicting_qubits = 0;
  for (int v = 0; v < circuit_.num_nodes(); ++v) {
    const int q = cell_qubit_[v];
    if (q < 0 || !in_band(q, seam)) continue;
    if (!hw_.is_active(shifted_qubit(q, seam))) {
      conflicting[v] = 1;
      ++seam.conflicting_qubits;
    }
  }
  seam.conflicting_paths = 0;
  for (int e = 0; e < circuit_.num_edges(); ++e) {
    if (routes_[e].empty()) continue;
    const auto& edge = circuit_.edge(e);
    if (conflicting[edge.a] || conflicting[edge.b]) continue;
    if (shift_chain(routes_[e], seam).empty()) ++seam.conflicting_paths;
  }
  double mean_row, mean_col;
  centroid(mean_row, mean_col);
  const double mean = seam.rows ? mean_row : mean_col;
  seam.distance = std::abs(seam.boundary - mean);
  seam.cost = seam_cost(seam.conflicting_qubits, seam.conflicting_paths, seam.distance, config_);
  seam.away_from_centroid = seam.direction > 0 ? seam.boundary >= mean : seam.boundary <= mean;
}

std::vector<SeamCandidate> DensePlacer::seam_candidates(int cell) const {
  const auto& spec = hw_.spec();
  std::vector<char> row_free(spec.rows), col_free(spec.cols);
  for (int r = 0; r < spec.rows; ++r) row_free[r] = line_free(true, r) ? 1 : 0;
  for (int c = 0; c < spec.cols; ++c) col_free[c] = line_free(false, c) ? 1 : 0;

  std::vector<SeamCandidate> out;
  auto consider = [&](bool rows, int boundary, int direction) {
    const int lines = rows ? spec.rows : spec.cols;
    if (boundary < 1 || boundary > lines - 1) return;
    const auto& is_free_line = rows ? row_free : col_free;
    int free_line = -1;
    if (direction > 0) {
      for (int l = boundary; l < lines; ++l) {
        if (is_free_line[l]) {
          free_line = l;
          break;
        }
      }
      if (free_line < 0 || free_line == boundary) return;
    } else {
      for (int l = boundary - 1; l >= 0; --l) {
        if (is_free_line[l]) {
          free_line = l;
          break;
        }
      }
      if (free_line < 0 || free_line == boundary - 1) return;
    }
    for (const auto& s : out) {
      if (s.rows == rows && s.boundary == boundary && s.direction == direction) return;
    }
    SeamCandidate seam;
    seam.rows = rows;
    seam.boundary = boundary;
    seam.direction = direction;
    seam.free_line = free_line;
    evaluate_seam(seam);
    out.push_back(seam);
  };
  for (auto [nb, e] : circuit_.adjacent(cell)) {
    const int q = cell_qubit_[nb];
    if (q < 0) continue;
    const int r = hw_.tile_row(q);
    const int c = hw_.tile_col(q);
    for (int direction : {1, -1}) {
      consider(true, r, direction);
      consider(true, r + 1, direction);
      consider(false, c, direction);
      consider(false, c + 1, direction);
    }
  }
  return out;
}

bool DensePlacer::apply_seam(const SeamCandidate& seam, int depth) {
  const int n = circuit_.num_nodes();
  std::vector<int> new_qubit(n, -1);
  std::vector<int> conflicting;
  for (int v = 0; v < n; ++v) {
    const int q = cell_qubit_[v];
    if (q < 0) continue;
    const int moved = shifted_qubit(q, seam);
    if (hw_.is_active(moved)) {
      new_qubit[v] = moved;
    } else {
      conflicting.push_back(v);
    }
  }
  std::vector<std::vector<int>> new_routes(circuit_.num_edges());
  std::vector<int> broken;
  for (int e = 0; e < circuit_.num_edges(); ++e) {
    if (routes_[e].empty()) continue;
    const auto& edge = circuit_.edge(e);
    if (new_qubit[edge.a] < 0 || new_qubit[edge.b] < 0) continue;
    auto moved = shift_chain(routes_[e], seam);
    if (moved.empty()) {
      broken.push_back(e);
    } else {
      new_routes[e] = std::move(moved);
    }
  }

  std::fill(qubit_cell_.begin(), qubit_cell_.end(), -1);
  std::fill(qubit_route_.begin(), qubit_route_.end(), -1);
  placed_count_ = 0;
  for (int v = 0; v < n; ++v) {
    cell_qubit_[v] = new_qubit[v];
    if (new_qubit[v] >= 0) {
      qubit_cell_[new_qubit[v]] = v;
      ++placed_count_;
    }
  }
  for (int e = 0; e < circuit_.num_edges(); ++e) {
    routes_[e] = std::move(new_routes[e]);
    const auto& chain = routes_[e];
    for (std::size_t k = 1; k + 1 < chain.size(); ++k) qubit_route_[chain[k]] = e;
  }
  ++seams_opened_;

  if (!broken.empty()) {
    std::vector<RoutePair> pairs;
    for (int e : broken) pairs.push_back({cell_qubit_[circuit_.edge(e).a], cell_qubit_[circuit_.edge(e).b]});
    std::vector<char> reserved(hw_.num_qubits());
    for (int q = 0; q < hw_.num_qubits(); ++q) reserved[q] = is_free(q) ? 0 : 1;
    auto result = route_all(pairs, hw_, reserved, config_.router);
    if (!result.success) {
      detail_ = "could not re-route chains broken by a seam";
      return false;
    }
    for (std::size_t k = 0; k < broken.size(); ++k) set_route(broken[k], std::move(result.chains[k]));
  }

  // Conflicting cells are re-placed next to whatever neighbours are still
  // placed; the rest wait for the main loop's frontier.
  bool progress = true;
  while (progress && !conflicting.empty()) {
    progress = false;
    std::stable_sort(conflicting.begin(), conflicting.end(),
                     [&](int a, int b) { return placed_neighbours(a) > placed_neighbours(b); });
    for (auto it = conflicting.begin(); it != conflicting.end();) {
      if (placed_neighbours(*it) == 0) {
        ++it;
        continue;
      }
      if (!place_cell(*it, depth + 1)) return false;
      it = conflicting.erase(it);
      progress = true;
    }
  }
  return true;
}

bool DensePlacer::open_seam(int cell, int depth) {
  auto candidates = seam_candidates(cell);
  if (candidates.empty()) {
    detail_ = "no free row or column to open a seam into";
    return false;
  }
  const SeamCandidate* best = nullptr;
  for (const auto& seam : candidates) {
    if (best == nullptr || seam.cost < best->cost - 1e-9 ||
        (std::abs(seam.cost - best->cost) <= 1e-9 && seam.away_from_centroid && !best->away_from_centroid)) {
      best = &seam;
    }
  }
  const SeamCandidate chosen = *best;
  return apply_seam(chosen, depth);
}

bool DensePlacer::place_cell(int cell, int depth) {
  for (int attempt = 0;; ++attempt) {
    if (timed_out()) {
      detail_ = "trial timeout";
      return false;
    }
    auto candidates = placement_candidates(cell, config_.placement_candidates);
    for (int q : candidates) {
      assign(cell, q);
      if (route_cell(cell)) return true;
      unassign(cell);
    }
    detail_ = candidates.empty() ? "no suitable qubit for cell " + std::to_string(circuit_.id(cell))
                                 : "could not route cell " + std::to_string(circuit_.id(cell));
    if (attempt >= config_.max_seam_attempts || depth >= config_.max_seam_recursion) return false;
    if (!open_seam(cell, depth)) return false;
    if (cell_qubit_[cell] >= 0) return true;  // re-placed during conflict repair
    if (placed_neighbours(cell) == 0) return true;  // neighbours displaced; main loop retries
  }
}

FailureReason DensePlacer::run() {
  start_ = std::chrono::steady_clock::now();
  const int n = circuit_.num_nodes();
  auto seed = select_seed();
  if (!seed) {
    detail_ = "no qubit can host the seed cell";
    return FailureReason::seed;
  }
  assign(seed->first, seed->second);

  while (placed_count_ < n) {
    if (timed_out()) {
      detail_ = "trial timeout";
      return FailureReason::timeout;
    }
    std::vector<int> frontier;
    for (int v = 0; v < n; ++v) {
      if (cell_qubit_[v] < 0 && placed_neighbours(v) > 0) frontier.push_back(v);
    }
    if (frontier.empty()) {
      auto next = select_seed();
      if (!next) {
        detail_ = "no qubit can host the seed of a further component";
        return FailureReason::seed;
      }
      assign(next->first, next->second);
      continue;
    }
    shuffle_range(frontier.begin(), frontier.end(), rng_);
    std::vector<int> key(n);
    for (int v : frontier) key[v] = unplaced_connections(v);
    std::stable_sort(frontier.begin(), frontier.end(), [&](int a, int b) { return key[a] > key[b]; });
    for (int v : frontier) {
      if (cell_qubit_[v] >= 0 || placed_neighbours(v) == 0) continue;
      if (!place_cell(v, 0)) {
        if (timed_out()) return FailureReason::timeout;
        if (detail_.rfind("no suitable", 0) == 0) return FailureReason::placement;
        if (detail_.rfind("could not route", 0) == 0 || detail_.rfind("could not re-route", 0) == 0) {
          return FailureReason::routing;
        }
        return FailureReason::seam;
      }
    }
  }
  // Seam repair can leave an edge between two placed cells unrouted.
  for (int e = 0; e < circuit_.num_edges(); ++e) {
    if (!routes_[e].empty()) continue;
    if (!route_cell(circuit_.edge(e).a)) {
      detail_ = "could not route remaining edges";
      return FailureReason::routing;
    }
  }
  return FailureReason::none;
}

ChainEmbedding DensePlacer::result() const {
  ChainEmbedding out;
  out.assigned = cell_qubit_;
  out.routes = routes_;
  return out;
}

DenseResult embed_dense(const ConnectivityGraph& circuit, const ChimeraGraph& hw, const DenseConfig& config,
                        Rng& rng) {
  const auto t0 = std::chrono::steady_clock::now();
  DenseResult out;
  if (circuit.num_nodes() == 0) throw std::invalid_argument("circuit has no cells");
  DensePlacer placer(circuit, hw, config, rng);
  out.reason = placer.run();
  out.detail = placer.detail();
  out.seams_opened = placer.seams_opened();
  if (out.reason == FailureReason::none) out.embedding = placer.result();
  out.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

} // namespace qcaembed
