#include "qcaembed/heuristic.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <queue>
#include <stdexcept>
#include <tuple>

namespace qcaembed {

void HeurConfig::validate() const {
  if (!(overuse_base > 1.0)) throw std::invalid_argument("overuse cost base must exceed 1");
  if (no_improvement_limit < 1 || max_outer_rounds < 0 || refine_rounds < 0 || tries < 1) {
    throw std::invalid_argument("heuristic round limits must be positive");
  }
  if (!(history_increment >= 0.0)) throw std::invalid_argument("history increment must be >= 0");
  if (!(trial_timeout_s > 0)) throw std::invalid_argument("timeout must be positive");
}

HeuristicEmbedder::HeuristicEmbedder(const ConnectivityGraph& circuit, const ChimeraGraph& hw, HeurConfig config,
                                     Rng& rng)
    : circuit_(circuit), hw_(hw), config_(config), rng_(rng) {
  config_.validate();
  power_.resize(64);
  for (std::size_t k = 0; k < power_.size(); ++k) power_[k] = std::pow(config_.overuse_base, static_cast<double>(k));
  reset();
  start_ = std::chrono::steady_clock::now();
}

void HeuristicEmbedder::reset() {
  models_.assign(circuit_.num_nodes(), {});
  usage_.assign(hw_.num_qubits(), 0);
  weight_.assign(hw_.num_qubits(), 1.0);
  history_.assign(hw_.num_qubits(), 0.0);
  overuse_ = 0;
  total_ = 0;
}

bool HeuristicEmbedder::timed_out() const {
  const auto elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  return elapsed > config_.trial_timeout_s;
}

double HeuristicEmbedder::qubit_weight(int q) const { return weight_[q]; }

void HeuristicEmbedder::add_qubit(int node, int q) {
  auto& model = models_[node];
  if (std::find(model.begin(), model.end(), q) != model.end()) return;
  model.push_back(q);
  if (usage_[q]++ > 0) ++overuse_;
  ++total_;
  refresh_weight(q);
}

void HeuristicEmbedder::drop_qubit(int q) {
  if (--usage_[q] > 0) --overuse_;
  --total_;
  refresh_weight(q);
}

void HeuristicEmbedder::refresh_weight(int q) {
  const auto k = static_cast<std::size_t>(usage_[q]);
  weight_[q] = (k < power_.size() ? power_[k] : std::pow(config_.overuse_base, static_cast<double>(k))) + history_[q];
}

void HeuristicEmbedder::clear_model(int node) {
  for (int q : models_[node]) drop_qubit(q);
  models_[node].clear();
}

void HeuristicEmbedder::set_models(std::vector<std::vector<int>> models) {
  if (static_cast<int>(models.size()) != circuit_.num_nodes()) throw std::invalid_argument("model count mismatch");
  for (const auto& model : models) {
    for (int q : model) {
      if (!hw_.is_active(q)) throw std::invalid_argument("model uses inactive qubit " + std::to_string(q));
    }
  }
  reset();
  for (int v = 0; v < circuit_.num_nodes(); ++v) {
    for (int q : models[v]) add_qubit(v, q);
  }
}

EmbeddingMetrics HeuristicEmbedder::metrics() const {
  EmbeddingMetrics m;
  m.overuse = overuse_;
  m.total_size = total_;
  for (const auto& model : models_) m.max_size = std::max(m.max_size, static_cast<long>(model.size()));
  return m;
}

int HeuristicEmbedder::choose_root(const std::vector<int>& targets) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  const int n = hw_.num_qubits();
  const std::size_t k = targets.size();
  dist_.resize(std::max(dist_.size(), k));
  parent_.resize(std::max(parent_.size(), k));
  heaps_.resize(std::max(heaps_.size(), k));
  settled_.assign(n, 0);
  using Item = std::pair<double, int>;
  const auto later = std::greater<Item>{};
  for (std::size_t t = 0; t < k; ++t) {
    dist_[t].assign(n, inf);
    parent_[t].assign(n, -1);
    auto& heap = heaps_[t];
    heap.clear();
    for (int q : models_[targets[t]]) {
      dist_[t][q] = 0.0;
      heap.emplace_back(0.0, q);
    }
    std::make_heap(heap.begin(), heap.end(), later);
  }
  // The searches advance together in distance order. A root costs at least
  // its largest distance, so once every frontier lies beyond the best cost
  // seen no unsettled qubit can beat it.
  std::vector<std::pair<double, int>> found;
  double best = inf;
  for (;;) {
    std::size_t pick = k;
    for (std::size_t t = 0; t < k; ++t) {
      if (!heaps_[t].empty() && (pick == k || heaps_[t].front().first < heaps_[pick].front().first)) pick = t;
    }
    if (pick == k || heaps_[pick].front().first > best * (1.0 + 1e-12)) break;
    auto& heap = heaps_[pick];
    std::pop_heap(heap.begin(), heap.end(), later);
    const auto [d, q] = heap.back();
    heap.pop_back();
    auto& dist = dist_[pick];
    if (d > dist[q]) continue;
    if (++settled_[q] == static_cast<int>(k) && hw_.is_active(q)) {
      const double w = weight_[q];
      double c = w;
      // Each search charged the root itself; count it once.
      for (std::size_t t = 0; t < k; ++t) {
        if (dist_[t][q] > 0.0) c += dist_[t][q] - w;
      }
      found.emplace_back(c, q);
      best = std::min(best, c);
    }
    for (int nb : hw_.adjacent(q)) {
      const double nd = d + weight_[nb];
      if (nd < dist[nb]) {
        dist[nb] = nd;
        parent_[pick][nb] = q;
        heap.emplace_back(nd, nb);
        std::push_heap(heap.begin(), heap.end(), later);
      }
    }
  }
  if (best == inf) return -1;
  std::vector<int> ties;
  for (auto [c, q] : found) {
    if (c <= best * (1.0 + 1e-12)) ties.push_back(q);
  }
  std::sort(ties.begin(), ties.end());
  return ties[uniform_index(rng_, ties.size())];
}

void HeuristicEmbedder::place(int node) {
  clear_model(node);
  std::vector<int> targets;
  for (auto [nb, e] : circuit_.adjacent(node)) {
    if (!models_[nb].empty()) targets.push_back(nb);
  }
  const int n = hw_.num_qubits();
  auto place_anywhere = [&] {
    int least = std::numeric_limits<int>::max();
    std::vector<int> pool;
    for (int q = 0; q < n; ++q) {
      if (!hw_.is_active(q)) continue;
      if (usage_[q] < least) {
        least = usage_[q];
        pool.clear();
      }
      if (usage_[q] == least) pool.push_back(q);
    }
    if (pool.empty()) throw std::invalid_argument("hardware graph has no active qubits");
    add_qubit(node, pool[uniform_index(rng_, pool.size())]);
  };
  if (targets.empty()) {
    place_anywhere();
    return;
  }
  const int root = choose_root(targets);
  if (root < 0) {
    detail_ = "neighbouring models are not mutually reachable";
    place_anywhere();
    return;
  }
  add_qubit(node, root);

  for (std::size_t t = 0; t < targets.size(); ++t) {
    const int other = targets[t];
    std::vector<int> path;
    for (int q = root; q != -1; q = parent_[t][q]) path.push_back(q);
    // path: root .. first qubit of the neighbour's model. Start after the last
    // qubit this model already owns.
    std::size_t start = 0;
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
      const auto& mine = models_[node];
      if (std::find(mine.begin(), mine.end(), path[i]) != mine.end()) start = i;
    }
    if (path.size() < 2 || start + 2 > path.size()) continue;
    const long len = static_cast<long>(path.size()) - static_cast<long>(start) - 2;
    const long a = static_cast<long>(models_[node].size());
    const long b = static_cast<long>(models_[other].size());
    const long tail = std::clamp((a + len - b) / 2, 0L, len);
    const long head = len - tail;
    for (long i = 0; i < head; ++i) add_qubit(node, path[start + 1 + i]);
    for (long i = head; i < len; ++i) add_qubit(other, path[start + 1 + i]);
  }
  for (int other : targets) trim(other);
}

bool HeuristicEmbedder::reaches(int node, int skip, int other) const {
  for (int a : models_[node]) {
    if (a == skip) continue;
    for (int b : models_[other]) {
      if (hw_.has_coupler(a, b)) return true;
    }
  }
  return false;
}

void HeuristicEmbedder::trim(int node) {
  auto& model = models_[node];
  bool changed = true;
  while (changed && model.size() > 1) {
    changed = false;
    for (std::size_t i = 0; i < model.size(); ++i) {
      const int q = model[i];
      int inside = 0;
      for (int nb : hw_.adjacent(q)) inside += std::count(model.begin(), model.end(), nb) > 0;
      if (inside > 1) continue;
      bool needed = false;
      for (auto [u, e] : circuit_.adjacent(node)) {
        if (!models_[u].empty() && !reaches(node, q, u)) {
          needed = true;
          break;
        }
      }
      if (needed) continue;
      model.erase(model.begin() + static_cast<long>(i));
      drop_qubit(q);
      changed = true;
      break;
    }
  }
}

std::string_view to_string(InitialOrder order) {
  return order == InitialOrder::random ? "random" : "priority";
}

InitialOrder parse_initial_order(std::string_view text) {
  if (text == "random") return InitialOrder::random;
  if (text == "priority") return InitialOrder::priority;
  throw std::invalid_argument("initial order must be random or priority, got '" + std::string(text) + "'");
}

std::vector<int> HeuristicEmbedder::initial_order() {
  const int n = circuit_.num_nodes();
  std::vector<int> order(n);
  for (int v = 0; v < n; ++v) order[v] = v;
  shuffle_range(order.begin(), order.end(), rng_);
  if (config_.initial_order == InitialOrder::random) return order;
  // Most placed neighbours first; the shuffled position breaks ties.
  std::vector<int> rank(n);
  for (int i = 0; i < n; ++i) rank[order[i]] = i;
  std::vector<int> placed(n, 0);
  std::vector<char> done(n, 0);
  std::vector<int> out;
  out.reserve(n);
  while (static_cast<int>(out.size()) < n) {
    int pick = -1;
    for (int v = 0; v < n; ++v) {
      if (done[v]) continue;
      if (pick < 0 || placed[v] > placed[pick] || (placed[v] == placed[pick] && rank[v] < rank[pick])) pick = v;
    }
    done[pick] = 1;
    out.push_back(pick);
    for (auto [u, e] : circuit_.adjacent(pick)) ++placed[u];
  }
  return out;
}

FailureReason HeuristicEmbedder::run() {
  start_ = std::chrono::steady_clock::now();
  FailureReason reason = FailureReason::rounds;
  for (tries_used_ = 1; tries_used_ <= config_.tries; ++tries_used_) {
    reset();
    reason = run_once();
    if (reason != FailureReason::rounds) break;
  }
  tries_used_ = std::min(tries_used_, config_.tries);
  return reason;
}

FailureReason HeuristicEmbedder::run_once() {
  auto order = initial_order();
  for (int v : order) {
    if (timed_out()) {
      detail_ = "trial timeout during the initial pass";
      return FailureReason::timeout;
    }
    place(v);
  }
  // Overlap removal: the working state moves freely while qubits that stay
  // overused grow more expensive; `best` only ever improves.
  EmbeddingMetrics best = metrics();
  std::vector<std::vector<int>> best_models = models_;
  int stale = 0;
  for (rounds_ = 1; rounds_ <= config_.max_outer_rounds && best.overuse > 0; ++rounds_) {
    if (stale >= config_.no_improvement_limit || timed_out()) break;
    shuffle_range(order.begin(), order.end(), rng_);
    for (int v : order) place(v);
    for (int q = 0; q < hw_.num_qubits(); ++q) {
      if (usage_[q] > 1) {
        history_[q] += config_.history_increment;
        refresh_weight(q);
      }
    }
    const EmbeddingMetrics now = metrics();
    if (now < best) {
      best = now;
      best_models = models_;
      stale = 0;
    } else {
      ++stale;
    }
  }
  set_models(std::move(best_models));
  if (overuse_ > 0) {
    if (timed_out()) {
      detail_ = "trial timeout";
      return FailureReason::timeout;
    }
    detail_ = "overlapping models remain (overuse " + std::to_string(overuse_) + ")";
    return FailureReason::rounds;
  }
  // Shrinking: same free moves without history, keeping the best state.
  std::fill(history_.begin(), history_.end(), 0.0);
  for (int q = 0; q < hw_.num_qubits(); ++q) refresh_weight(q);
  best = metrics();
  best_models = models_;
  stale = 0;
  for (int r = 0; r < config_.refine_rounds && stale < config_.no_improvement_limit && !timed_out(); ++r) {
    shuffle_range(order.begin(), order.end(), rng_);
    for (int v : order) place(v);
    const EmbeddingMetrics now = metrics();
    if (now < best) {
      best = now;
      best_models = models_;
      stale = 0;
    } else {
      ++stale;
    }
  }
  set_models(std::move(best_models));
  return FailureReason::none;
}

HeuristicResult embed_heuristic(const ConnectivityGraph& circuit, const ChimeraGraph& hw, const HeurConfig& config,
                                Rng& rng) {
  const auto t0 = std::chrono::steady_clock::now();
  if (circuit.num_nodes() == 0) throw std::invalid_argument("circuit has no cells");
  HeuristicEmbedder embedder(circuit, hw, config, rng);
  HeuristicResult out;
  out.reason = embedder.run();
  out.detail = embedder.detail();
  out.metrics = embedder.metrics();
  out.rounds = embedder.rounds();
  out.tries = embedder.tries_used();
  if (out.reason == FailureReason::none) {
    VertexModelEmbedding emb;
    emb.models = embedder.models();
    for (auto& m : emb.models) std::sort(m.begin(), m.end());
    if (validate(emb, circuit, hw).empty()) {
      out.embedding = std::move(emb);
    } else {
      out.reason = FailureReason::rounds;
      out.detail = "models do not realise every circuit edge";
    }
  }
  out.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

} // namespace qcaembed
