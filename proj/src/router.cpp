#include "qcaembed/router.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <queue>
#include <stdexcept>
#include <tuple>

namespace qcaembed {

CongestionRouter::CongestionRouter(const ChimeraGraph& hw, std::vector<RoutePair> pairs,
                                   std::span<const char> reserved, RouterConfig config,
                                   std::span<const double> base_cost)
    : hw_(hw), pairs_(std::move(pairs)), config_(config) {
  const int n = hw_.num_qubits();
  blocked_.assign(n, 0);
  if (!reserved.empty()) {
    if (static_cast<int>(reserved.size()) != n) throw std::invalid_argument("reserved mask size mismatch");
    std::copy(reserved.begin(), reserved.end(), blocked_.begin());
  }
  for (const auto& p : pairs_) {
    if (!hw_.is_active(p.source) || !hw_.is_active(p.target)) {
      throw std::invalid_argument("route endpoint is not an active qubit");
    }
    if (p.source == p.target) throw std::invalid_argument("route endpoints must differ");
    blocked_[p.source] = 1;
    blocked_[p.target] = 1;
  }
  base_.assign(n, 1.0);
  if (!base_cost.empty()) {
    if (static_cast<int>(base_cost.size()) != n) throw std::invalid_argument("base cost size mismatch");
    std::copy(base_cost.begin(), base_cost.end(), base_.begin());
  }
  sharing_.assign(n, 0);
  history_.assign(n, 0.0);
  chains_.assign(pairs_.size(), {});
  routed_.assign(pairs_.size(), 0);
  dist_.assign(n, 0.0);
  parent_.assign(n, -1);
}

double CongestionRouter::node_cost(int q) const {
  const double present = config_.present_growth * iteration_;
  return (base_[q] + history_[q]) * (1.0 + present * sharing_[q]);
}

bool CongestionRouter::route(int net) {
  if (routed_[net]) throw std::logic_error("net already routed");
  const auto [source, target] = pairs_[net];
  constexpr double inf = std::numeric_limits<double>::infinity();
  std::fill(dist_.begin(), dist_.end(), inf);
  std::fill(parent_.begin(), parent_.end(), -1);
  using Item = std::tuple<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  dist_[source] = 0.0;
  heap.emplace(0.0, source);
  while (!heap.empty()) {
    auto [d, q] = heap.top();
    heap.pop();
    if (d > dist_[q]) continue;
    if (q == target) break;
    for (int nb : hw_.adjacent(q)) {
      double step;
      if (nb == target) {
        step = 0.0;
      } else if (blocked_[nb]) {
        continue;
      } else {
        step = node_cost(nb);
      }
      const double nd = d + step;
      if (nd < dist_[nb]) {
        dist_[nb] = nd;
        parent_[nb] = q;
        heap.emplace(nd, nb);
      }
    }
  }
  if (dist_[target] == inf) return false;
  std::vector<int> chain;
  for (int q = target; q != -1; q = parent_[q]) chain.push_back(q);
  std::reverse(chain.begin(), chain.end());
  for (std::size_t k = 1; k + 1 < chain.size(); ++k) ++sharing_[chain[k]];
  chains_[net] = std::move(chain);
  routed_[net] = 1;
  return true;
}

void CongestionRouter::rip_up(int net) {
  if (!routed_[net]) throw std::logic_error("rip_up of a net that is not routed");
  const auto& chain = chains_[net];
  for (std::size_t k = 1; k + 1 < chain.size(); ++k) --sharing_[chain[k]];
  chains_[net].clear();
  routed_[net] = 0;
}

std::vector<int> CongestionRouter::congested() const {
  std::vector<int> out;
  for (int q = 0; q < hw_.num_qubits(); ++q) {
    if (sharing_[q] > 1) out.push_back(q);
  }
  return out;
}

RouteResult CongestionRouter::run() {
  RouteResult result;
  for (iteration_ = 1; iteration_ <= config_.max_iterations; ++iteration_) {
    for (int net = 0; net < num_nets(); ++net) {
      if (routed_[net]) rip_up(net);
      if (!route(net)) {
        result.iterations = iteration_;
        return result;
      }
    }
    auto over = congested();
    if (over.empty()) {
      result.success = true;
      result.iterations = iteration_;
      result.chains = chains_;
      return result;
    }
    for (int q : over) history_[q] += config_.history_increment;
  }
  result.iterations = config_.max_iterations;
  iteration_ = config_.max_iterations;
  result.congested = congested();
  return result;
}

RouteResult route_all(std::span<const RoutePair> pairs, const ChimeraGraph& hw, std::span<const char> reserved,
                      RouterConfig config, std::span<const double> base_cost) {
  CongestionRouter router(hw, std::vector<RoutePair>(pairs.begin(), pairs.end()), reserved, config, base_cost);
  return router.run();
}

} // namespace qcaembed
