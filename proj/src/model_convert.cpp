#include "qcaembed/model_convert.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <queue>
#include <stdexcept>

namespace qcaembed {

namespace {

std::vector<int> oriented_route(const ConnectivityGraph& circuit, const ChainEmbedding& embedding, int e,
                                int from) {
  std::vector<int> route = embedding.routes[e];
  if (circuit.edge(e).a != from) std::reverse(route.begin(), route.end());
  return route;
}

// Rational p / q with q > 0, compared exactly in 64-bit arithmetic; the
// values involved are bounded by qubit counts.
struct Fraction {
  long long p = 0;
  long long q = 1;
};

bool less(const Fraction& a, const Fraction& b) { return static_cast<__int128>(a.p) * b.q < static_cast<__int128>(b.p) * a.q; }
bool equal(const Fraction& a, const Fraction& b) { return static_cast<__int128>(a.p) * b.q == static_cast<__int128>(b.p) * a.q; }

long long floor_div(long long a, long long b) {
  long long d = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --d;
  return d;
}

long long ceil_div(long long a, long long b) { return -floor_div(-a, b); }

class MaxFlow {
 public:
  explicit MaxFlow(int n) : adj_(n) {}

  int add_edge(int from, int to, long long cap) {
    adj_[from].push_back(static_cast<int>(edges_.size()));
    edges_.push_back({to, cap});
    adj_[to].push_back(static_cast<int>(edges_.size()));
    edges_.push_back({from, 0});
    return static_cast<int>(edges_.size()) - 2;
  }

  long long flow_on(int edge) const { return edges_[edge ^ 1].cap; }

  // Edmonds-Karp; graphs here have a few hundred nodes at most.
  long long run(int s, int t) {
    long long total = 0;
    const int n = static_cast<int>(adj_.size());
    for (;;) {
      std::vector<int> via(n, -1);
      std::queue<int> todo;
      todo.push(s);
      via[s] = -2;
      while (!todo.empty() && via[t] == -1) {
        const int v = todo.front();
        todo.pop();
        for (int id : adj_[v]) {
          const auto& e = edges_[id];
          if (e.cap > 0 && via[e.to] == -1) {
            via[e.to] = id;
            todo.push(e.to);
          }
        }
      }
      if (via[t] == -1) return total;
      long long push = std::numeric_limits<long long>::max();
      for (int v = t; v != s; v = edges_[via[v] ^ 1].to) push = std::min(push, edges_[via[v]].cap);
      for (int v = t; v != s; v = edges_[via[v] ^ 1].to) {
        edges_[via[v]].cap -= push;
        edges_[via[v] ^ 1].cap += push;
      }
      total += push;
    }
  }

 private:
  struct Edge {
    int to;
    long long cap;
  };
  std::vector<std::vector<int>> adj_;
  std::vector<Edge> edges_;
};

struct FlowPlan {
  bool feasible = false;
  std::vector<int> n;
  std::vector<int> m;
};

FlowPlan feasible_at(const ChainDecomposition& dec, const Fraction& t) {
  const int k = static_cast<int>(dec.chains.size());
  const int ends = dec.num_nodes;
  FlowPlan plan;
  const long long cap = floor_div(t.p, t.q) - 1;
  if (cap < 0) return plan;
  const int source = k + ends;
  const int sink = source + 1;
  MaxFlow flow(sink + 1);
  long long demand = 0;
  std::vector<int> to_a(k), to_b(k, -1);
  for (int c = 0; c < k; ++c) {
    const auto& chain = dec.chains[c];
    const long long big_m = chain.qubit_count();
    const long long big_n = chain.internal_count();
    long long need;
    if (big_n == 0) {
      need = big_m;
    } else {
      need = std::max(0LL, ceil_div(big_m * t.q - t.p * big_n, t.q));
      if (need > big_m - big_n) return plan;
    }
    demand += need;
    flow.add_edge(source, c, need);
    to_a[c] = flow.add_edge(c, k + chain.end_a, need);
    if (chain.end_b != chain.end_a) to_b[c] = flow.add_edge(c, k + chain.end_b, need);
  }
  for (int v = 0; v < ends; ++v) {
    if (dec.is_end[v]) flow.add_edge(k + v, sink, cap);
  }
  if (flow.run(source, sink) != demand) return plan;
  plan.feasible = true;
  plan.n.resize(k);
  plan.m.resize(k);
  for (int c = 0; c < k; ++c) {
    plan.n[c] = static_cast<int>(flow.flow_on(to_a[c]));
    plan.m[c] = to_b[c] >= 0 ? static_cast<int>(flow.flow_on(to_b[c])) : 0;
  }
  return plan;
}

} // namespace

ChainDecomposition decompose(const ConnectivityGraph& circuit, const ChainEmbedding& embedding) {
  if (static_cast<int>(embedding.assigned.size()) != circuit.num_nodes() ||
      static_cast<int>(embedding.routes.size()) != circuit.num_edges()) {
    throw std::invalid_argument("chain embedding does not match the circuit");
  }
  const int n = circuit.num_nodes();
  ChainDecomposition dec;
  dec.num_nodes = n;
  dec.is_end.assign(n, 0);
  for (int v = 0; v < n; ++v) dec.is_end[v] = circuit.degree(v) != 2 ? 1 : 0;
  std::vector<char> used(circuit.num_edges(), 0);

  auto walk = [&](int start, int first_edge) {
    CircuitChain chain;
    chain.end_a = start;
    chain.qubits.push_back(embedding.assigned[start]);
    int cur = start;
    int e = first_edge;
    for (;;) {
      used[e] = 1;
      const auto route = oriented_route(circuit, embedding, e, cur);
      chain.qubits.insert(chain.qubits.end(), route.begin() + 1, route.end());
      const auto& edge = circuit.edge(e);
      const int next = edge.a == cur ? edge.b : edge.a;
      if (dec.is_end[next]) {
        chain.end_b = next;
        break;
      }
      chain.internal.push_back(next);
      const auto adj = circuit.adjacent(next);
      e = adj[0].second == e ? adj[1].second : adj[0].second;
      cur = next;
    }
    dec.chains.push_back(std::move(chain));
  };

  for (int v = 0; v < n; ++v) {
    if (!dec.is_end[v]) continue;
    for (auto [nb, e] : circuit.adjacent(v)) {
      if (!used[e]) walk(v, e);
    }
  }
  // What is left are cycles of degree-2 cells; each gets its smallest-id cell
  // as an end node.
  for (;;) {
    int pick = -1;
    for (int v = 0; v < n; ++v) {
      if (dec.is_end[v]) continue;
      bool open = false;
      for (auto [nb, e] : circuit.adjacent(v)) open = open || !used[e];
      if (open && (pick < 0 || circuit.id(v) < circuit.id(pick))) pick = v;
    }
    if (pick < 0) break;
    dec.is_end[pick] = 1;
    dec.pseudo_ends.push_back(pick);
    walk(pick, circuit.adjacent(pick)[0].second);
  }
  return dec;
}

Rational allocation_objective(const ChainDecomposition& dec, const std::vector<int>& n, const std::vector<int>& m) {
  const std::size_t k = dec.chains.size();
  if (n.size() != k || m.size() != k) throw std::invalid_argument("allocation size does not match the chains");
  std::vector<long long> granted(dec.num_nodes, 0);
  Rational best = 0;
  for (std::size_t c = 0; c < k; ++c) {
    const auto& chain = dec.chains[c];
    const int big_m = chain.qubit_count();
    const int big_n = chain.internal_count();
    if (n[c] < 0 || m[c] < 0) throw std::invalid_argument("negative allocation");
    if (big_n == 0 ? n[c] + m[c] != big_m : n[c] + m[c] > big_m - big_n) {
      throw std::invalid_argument("allocation exceeds the virtual qubits of a chain");
    }
    granted[chain.end_a] += n[c];
    granted[chain.end_b] += m[c];
    if (big_n > 0) best = std::max(best, Rational(big_m - n[c] - m[c], big_n));
  }
  for (int v = 0; v < dec.num_nodes; ++v) {
    if (dec.is_end[v]) best = std::max(best, Rational(1 + granted[v]));
  }
  return best;
}

Allocation allocate(const ChainDecomposition& dec) {
  std::vector<Fraction> candidates;
  long long total_virtual = 0;
  for (const auto& chain : dec.chains) {
    total_virtual += std::max(0, chain.virtual_count());
    if (chain.internal_count() > 0) {
      for (int t = 0; t <= chain.virtual_count(); ++t) {
        candidates.push_back({chain.qubit_count() - t, chain.internal_count()});
      }
    }
  }
  for (long long s = 0; s <= total_virtual; ++s) candidates.push_back({1 + s, 1});
  std::sort(candidates.begin(), candidates.end(), less);
  candidates.erase(std::unique(candidates.begin(), candidates.end(), equal), candidates.end());
  // Values below 1 can never be met by an end node.
  candidates.erase(std::remove_if(candidates.begin(), candidates.end(),
                                  [](const Fraction& f) { return less(f, Fraction{1, 1}); }),
                   candidates.end());

  std::size_t lo = 0, hi = candidates.size() - 1;
  if (!feasible_at(dec, candidates[hi]).feasible) throw std::logic_error("allocation infeasible at its upper bound");
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (feasible_at(dec, candidates[mid]).feasible) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  FlowPlan plan = feasible_at(dec, candidates[lo]);
  Allocation out;
  out.n = std::move(plan.n);
  out.m = std::move(plan.m);
  out.objective = allocation_objective(dec, out.n, out.m);
  if (out.objective > Rational(candidates[lo].p, candidates[lo].q)) {
    throw std::logic_error("allocation flow does not meet its target value");
  }
  return out;
}

VertexModelEmbedding convert(const ConnectivityGraph& circuit, const ChainEmbedding& embedding,
                             const ChainDecomposition& dec, const Allocation& allocation) {
  const int n = circuit.num_nodes();
  VertexModelEmbedding out;
  out.models.assign(n, {});
  for (int v = 0; v < n; ++v) {
    if (dec.is_end[v]) out.models[v].push_back(embedding.assigned[v]);
  }
  for (std::size_t c = 0; c < dec.chains.size(); ++c) {
    const auto& chain = dec.chains[c];
    const int big_m = chain.qubit_count();
    const int big_n = chain.internal_count();
    const int grant_a = allocation.n[c];
    const int grant_b = allocation.m[c];
    for (int i = 1; i <= grant_a; ++i) out.models[chain.end_a].push_back(chain.qubits[i]);
    for (int i = big_m - grant_b + 1; i <= big_m; ++i) out.models[chain.end_b].push_back(chain.qubits[i]);
    if (big_n == 0) continue;
    const int rest = big_m - grant_a - grant_b;
    if (rest < big_n) throw std::logic_error("chain left with fewer qubits than internal cells");
    int pos = grant_a + 1;
    for (int j = 0; j < big_n; ++j) {
      const int take = rest / big_n + (j < rest % big_n ? 1 : 0);
      auto& model = out.models[chain.internal[j]];
      for (int i = 0; i < take; ++i) model.push_back(chain.qubits[pos++]);
    }
  }
  for (auto& model : out.models) std::sort(model.begin(), model.end());
  return out;
}

VertexModelEmbedding convert(const ConnectivityGraph& circuit, const ChainEmbedding& embedding) {
  const auto dec = decompose(circuit, embedding);
  return convert(circuit, embedding, dec, allocate(dec));
}

} // namespace qcaembed
