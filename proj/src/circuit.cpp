#include "qcaembed/circuit.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <set>
#include <stdexcept>

namespace qcaembed {

std::string_view to_string(AdjacencyMode mode) {
  return mode == AdjacencyMode::limited ? "limited" : "full";
}

AdjacencyMode parse_adjacency(std::string_view text) {
  if (text == "limited") return AdjacencyMode::limited;
  if (text == "full") return AdjacencyMode::full;
  throw std::invalid_argument("adjacency must be 'limited' or 'full', got '" + std::string(text) + "'");
}

namespace {

using Dots = std::array<std::array<double, 2>, 2>;

// Electron positions for polarisation +1 (one diagonal) and -1 (the other).
Dots electrons(int polarization) {
  constexpr double h = kDotSpacing / 2;
  if (polarization > 0) return {{{h, h}, {-h, -h}}};
  return {{{-h, h}, {h, -h}}};
}

double coulomb(double dx, double dy, int p1, int p2) {
  const Dots e1 = electrons(p1);
  const Dots e2 = electrons(p2);
  double sum = 0.0;
  for (const auto& a : e1) {
    for (const auto& b : e2) sum += 1.0 / std::hypot(dx + b[0] - a[0], dy + b[1] - a[1]);
  }
  return sum;
}

// Background charges cancel in this symmetric combination.
double raw_kink(double dx, double dy) {
  return 0.5 * (coulomb(dx, dy, 1, -1) + coulomb(dx, dy, -1, 1)) -
         0.5 * (coulomb(dx, dy, 1, 1) + coulomb(dx, dy, -1, -1));
}

bool is_diagonal(double dx, double dy) {
  constexpr double eps = 1e-9;
  return std::abs(dx) > eps && std::abs(dy) > eps;
}

} // namespace

double kink_energy(double dx, double dy) {
  const double r = std::hypot(dx, dy);
  if (r < 1e-9) throw std::invalid_argument("kink energy of coincident cells is undefined");
  if (r >= kInteractionRadius) return 0.0;
  static const double nearest = raw_kink(1.0, 0.0);
  return raw_kink(dx, dy) / nearest;
}

double kink_energy(const QcaCell& a, const QcaCell& b) { return kink_energy(b.x - a.x, b.y - a.y); }

ConnectivityGraph::ConnectivityGraph(std::string name, AdjacencyMode mode, std::vector<int> ids,
                                     std::vector<double> bias, std::vector<CircuitEdge> edges)
    : name_(std::move(name)), mode_(mode), ids_(std::move(ids)), bias_(std::move(bias)),
      edges_(std::move(edges)) {
  const int n = num_nodes();
  if (static_cast<int>(bias_.size()) != n) {
    throw std::invalid_argument("bias list and id list differ in length");
  }
  {
    std::set<int> seen(ids_.begin(), ids_.end());
    if (static_cast<int>(seen.size()) != n) throw std::invalid_argument("duplicate node ids");
  }
  adjacency_.assign(n, {});
  std::set<std::pair<int, int>> pairs;
  for (int e = 0; e < num_edges(); ++e) {
    auto& edge = edges_[e];
    if (edge.a > edge.b) std::swap(edge.a, edge.b);
    if (edge.a < 0 || edge.b >= n) throw std::invalid_argument("edge endpoint out of range");
    if (edge.a == edge.b) throw std::invalid_argument("self edge on node " + std::to_string(ids_[edge.a]));
    if (!pairs.insert({edge.a, edge.b}).second) {
      throw std::invalid_argument("parallel edge between " + std::to_string(ids_[edge.a]) + " and " +
                                  std::to_string(ids_[edge.b]));
    }
    adjacency_[edge.a].emplace_back(edge.b, e);
    adjacency_[edge.b].emplace_back(edge.a, e);
  }
  for (auto& list : adjacency_) std::sort(list.begin(), list.end());

  if (n > 0) {
    std::vector<char> seen(n, 0);
    std::queue<int> todo;
    todo.push(0);
    seen[0] = 1;
    int reached = 1;
    while (!todo.empty()) {
      int v = todo.front();
      todo.pop();
      for (auto [u, e] : adjacency_[v]) {
        if (!seen[u]) {
          seen[u] = 1;
          ++reached;
          todo.push(u);
        }
      }
    }
    connected_ = reached == n;
  }
}

std::optional<int> ConnectivityGraph::edge_between(int a, int b) const {
  for (auto [u, e] : adjacency_[a]) {
    if (u == b) return e;
  }
  return std::nullopt;
}

std::optional<int> ConnectivityGraph::node_of_id(int id) const {
  auto it = std::find(ids_.begin(), ids_.end(), id);
  if (it == ids_.end()) return std::nullopt;
  return static_cast<int>(it - ids_.begin());
}

ConnectivityGraph build_connectivity(std::span<const QcaCell> layout, AdjacencyMode mode,
                                     std::string name) {
  std::vector<int> node_of(layout.size(), -1);
  std::vector<int> ids;
  std::set<int> seen_ids;
  for (std::size_t i = 0; i < layout.size(); ++i) {
    const QcaCell& c = layout[i];
    if (!seen_ids.insert(c.id).second) throw std::invalid_argument("duplicate cell id " + std::to_string(c.id));
    if (c.kind == CellKind::driver) {
      if (!(c.polarization >= -1.0 && c.polarization <= 1.0)) {
        throw std::invalid_argument("driver polarization outside [-1, 1] on cell " + std::to_string(c.id));
      }
      continue;
    }
    node_of[i] = static_cast<int>(ids.size());
    ids.push_back(c.id);
  }
  if (ids.empty()) throw std::invalid_argument("layout has no non-driver cells");

  std::vector<double> bias(ids.size(), 0.0);
  std::vector<CircuitEdge> edges;
  for (std::size_t i = 0; i < layout.size(); ++i) {
    for (std::size_t j = i + 1; j < layout.size(); ++j) {
      const QcaCell& a = layout[i];
      const QcaCell& b = layout[j];
      const double dx = b.x - a.x;
      const double dy = b.y - a.y;
      if (std::hypot(dx, dy) < 1e-9) {
        throw std::invalid_argument("cells " + std::to_string(a.id) + " and " + std::to_string(b.id) +
                                    " share a position");
      }
      const double ek = kink_energy(dx, dy);
      if (ek == 0.0) continue;
      if (mode == AdjacencyMode::limited && is_diagonal(dx, dy) && !(a.diag_ok && b.diag_ok)) continue;
      const bool a_drv = a.kind == CellKind::driver;
      const bool b_drv = b.kind == CellKind::driver;
      if (a_drv && b_drv) continue;
      if (a_drv) {
        bias[node_of[j]] += ek * a.polarization;
      } else if (b_drv) {
        bias[node_of[i]] += ek * b.polarization;
      } else {
        edges.push_back({node_of[i], node_of[j], ek});
      }
    }
  }
  return ConnectivityGraph(std::move(name), mode, std::move(ids), std::move(bias), std::move(edges));
}

} // namespace qcaembed
