#include "qcaembed/circuit_gen.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <vector>

namespace qcaembed {

void GenConfig::validate() const {
  if (majority_min < 0 || inverter_min < 0 || driver_min < 0) throw std::invalid_argument("counts must be >= 0");
  if (majority_max < majority_min || inverter_max < inverter_min || driver_max < driver_min) {
    throw std::invalid_argument("count ranges must satisfy min <= max");
  }
  if (majority_max + inverter_max < 1) throw std::invalid_argument("at least one component is required");
  if (wire_min < 0 || wire_max < wire_min) throw std::invalid_argument("wire length range must satisfy 0 <= min <= max");
  if (max_branch < 3) throw std::invalid_argument("max_branch must be at least 3");
  if (!(feed_from_gate >= 0.0 && feed_from_gate <= 1.0)) throw std::invalid_argument("feed_from_gate must be in [0, 1]");
  if (max_attempts < 1) throw std::invalid_argument("max_attempts must be >= 1");
}

namespace {

struct TemplateCell {
  double x, y;
  bool diag_ok;
};

struct Component {
  std::vector<int> inputs;
  int output = -1;
};

class Builder {
 public:
  explicit Builder(AdjacencyMode mode) : mode_(mode) {}

  int add_node(double bias = 0.0) {
    bias_.push_back(bias);
    degree_.push_back(0);
    return static_cast<int>(bias_.size()) - 1;
  }

  // Only orthogonal neighbours occupy a side of a cell, so diagonal edges do
  // not count towards the branching limit.
  void add_edge(int a, int b, double ek, bool orthogonal = true) {
    if (a == b) throw std::logic_error("generator produced a self edge");
    if (!pairs_.insert({std::min(a, b), std::max(a, b)}).second) throw std::logic_error("generator produced a parallel edge");
    edges_.push_back({a, b, ek});
    if (orthogonal) {
      ++degree_[a];
      ++degree_[b];
    }
  }

  Component add_template(const std::vector<TemplateCell>& cells, std::vector<int> inputs, int output) {
    std::vector<int> nodes;
    for (std::size_t i = 0; i < cells.size(); ++i) nodes.push_back(add_node());
    for (std::size_t i = 0; i < cells.size(); ++i) {
      for (std::size_t j = i + 1; j < cells.size(); ++j) {
        const double dx = cells[j].x - cells[i].x;
        const double dy = cells[j].y - cells[i].y;
        const double ek = kink_energy(dx, dy);
        if (ek == 0.0) continue;
        const bool diagonal = dx != 0.0 && dy != 0.0;
        if (diagonal && mode_ == AdjacencyMode::limited && !(cells[i].diag_ok && cells[j].diag_ok)) continue;
        add_edge(nodes[i], nodes[j], ek, !diagonal);
      }
    }
    Component c;
    for (int i : inputs) c.inputs.push_back(nodes[i]);
    c.output = nodes[output];
    return c;
  }

  int degree(int v) const { return degree_[v]; }
  void set_bias(int v, double b) { bias_[v] = b; }
  int size() const { return static_cast<int>(bias_.size()); }

  ConnectivityGraph finish(const std::string& name) {
    std::vector<int> ids(bias_.size());
    for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = static_cast<int>(i);
    return ConnectivityGraph(name, mode_, std::move(ids), bias_, edges_);
  }

 private:
  AdjacencyMode mode_;
  std::vector<double> bias_;
  std::vector<int> degree_;
  std::vector<CircuitEdge> edges_;
  std::set<std::pair<int, int>> pairs_;
};

// Majority gate: centre with three input arms and an output arm.
const std::vector<TemplateCell> kMajority = {
    {0, 0, false}, {-1, 0, false}, {0, 1, false}, {0, -1, false}, {1, 0, false}};

// Inverter: the input forks into two arms whose ends meet the output cell
// diagonally.
const std::vector<TemplateCell> kInverter = {{0, 0, false}, {1, 0, false}, {1, 1, false}, {1, -1, false},
                                             {2, 1, true},  {2, -1, true}, {3, 0, true},  {4, 0, false}};

int uniform_int(Rng& rng, int lo, int hi) {
  return lo + static_cast<int>(uniform_index(rng, static_cast<std::uint64_t>(hi - lo + 1)));
}

} // namespace

ConnectivityGraph generate(const GenConfig& config, Rng& rng, const std::string& name) {
  config.validate();
  for (int attempt = 0; attempt < config.max_attempts; ++attempt) {
    const int majorities = uniform_int(rng, config.majority_min, config.majority_max);
    const int inverters = uniform_int(rng, config.inverter_min, config.inverter_max);
    if (majorities + inverters == 0) continue;
    std::vector<int> kinds(majorities, 0);
    kinds.resize(majorities + inverters, 1);
    shuffle_range(kinds.begin(), kinds.end(), rng);

    Builder b(config.adjacency);
    std::vector<Component> comps;
    for (int kind : kinds) {
      comps.push_back(kind == 0 ? b.add_template(kMajority, {1, 2, 3}, 4) : b.add_template(kInverter, {0}, 7));
    }

    // Decide the source of every input: -1 driver, else the feeding component.
    std::vector<std::vector<int>> feeds(comps.size());
    std::vector<std::vector<int>> sinks(comps.size());
    int drivers = 0;
    for (std::size_t c = 0; c < comps.size(); ++c) {
      const std::size_t k = comps[c].inputs.size();
      feeds[c].assign(k, -1);
      if (c == 0) continue;
      const std::size_t forced = uniform_index(rng, k);
      for (std::size_t i = 0; i < k; ++i) {
        if (i == forced || uniform_unit(rng) < config.feed_from_gate) {
          const int src = static_cast<int>(uniform_index(rng, c));
          feeds[c][i] = src;
          sinks[src].push_back(comps[c].inputs[i]);
        }
      }
    }
    for (const auto& f : feeds) drivers += static_cast<int>(std::count(f.begin(), f.end(), -1));
    if (drivers < config.driver_min || drivers > config.driver_max) continue;

    auto wire = [&](int from, int to, double first_bias) {
      const int len = uniform_int(rng, config.wire_min, config.wire_max);
      int prev = from;
      for (int i = 0; i < len; ++i) {
        const int cell = b.add_node(i == 0 ? first_bias : 0.0);
        if (prev >= 0) b.add_edge(prev, cell, 1.0);
        prev = cell;
      }
      if (prev >= 0) {
        b.add_edge(prev, to, 1.0);
      } else {
        b.set_bias(to, first_bias);
      }
    };

    bool ok = true;
    for (std::size_t c = 0; c < comps.size() && ok; ++c) {
      // Driver-fed inputs.
      for (std::size_t i = 0; i < feeds[c].size(); ++i) {
        if (feeds[c][i] != -1) continue;
        const double p = uniform_index(rng, 2) == 0 ? 1.0 : -1.0;
        wire(-1, comps[c].inputs[i], p);
      }
    }
    for (std::size_t src = 0; src < comps.size() && ok; ++src) {
      // Wire tree rooted at the output: each new leaf path attaches at a
      // uniformly drawn tree node that still has spare degree.
      std::vector<int> tree = {comps[src].output};
      for (int sink : sinks[src]) {
        std::vector<int> open;
        for (int v : tree) {
          if (b.degree(v) < config.max_branch) open.push_back(v);
        }
        if (open.empty()) {
          ok = false;
          break;
        }
        const int at = open[uniform_index(rng, open.size())];
        const int before = b.size();
        wire(at, sink, 0.0);
        for (int v = before; v < b.size(); ++v) tree.push_back(v);
      }
    }
    if (!ok) continue;
    auto graph = b.finish(name);
    if (!graph.connected()) continue;
    return graph;
  }
  throw std::invalid_argument("could not generate a circuit satisfying the configuration after " +
                              std::to_string(config.max_attempts) + " attempts");
}

} // namespace qcaembed
