#include "qcaembed/ising.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>

namespace qcaembed {

namespace {

// Exact value of a finite double.
Rational exact(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("non-finite weight");
  if (x == 0.0) return 0;
  int exponent = 0;
  const double mantissa = std::frexp(x, &exponent);
  const auto scaled = static_cast<long long>(std::ldexp(mantissa, 53));
  exponent -= 53;
  boost::multiprecision::cpp_int num = scaled;
  boost::multiprecision::cpp_int den = 1;
  if (exponent >= 0) {
    num <<= exponent;
  } else {
    den <<= -exponent;
  }
  return Rational(num, den);
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

std::string format_double(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

} // namespace

double IsingModel::energy(std::uint64_t state) const {
  std::vector<double> s(n);
  for (int i = 0; i < n; ++i) s[i] = (state >> i) & 1U ? -1.0 : 1.0;
  double e = 0.0;
  for (int i = 0; i < n; ++i) e += h[i] * s[i];
  for (const auto& c : couplings) e += c.value * (s[c.i] * s[c.j]);
  return e;
}

IsingModel circuit_ising(const ConnectivityGraph& circuit) {
  IsingModel model;
  model.n = circuit.num_nodes();
  model.h.assign(circuit.biases().begin(), circuit.biases().end());
  for (const auto& e : circuit.edges()) model.couplings.push_back({e.a, e.b, -e.ek});
  return model;
}

double IsingProblem::h_value(int q) const {
  auto it = h.find(q);
  return it == h.end() ? 0.0 : to_double(it->second);
}

double IsingProblem::j_value(int a, int b) const {
  auto it = j.find({std::min(a, b), std::max(a, b)});
  return it == j.end() ? 0.0 : to_double(it->second);
}

IsingModel IsingProblem::to_model(std::vector<int>& qubits) const {
  std::set<int> used;
  for (const auto& [q, v] : h) used.insert(q);
  for (const auto& [pair, v] : j) {
    used.insert(pair.first);
    used.insert(pair.second);
  }
  qubits.assign(used.begin(), used.end());
  IsingModel model;
  model.n = static_cast<int>(qubits.size());
  model.h.assign(model.n, 0.0);
  auto index = [&](int q) {
    return static_cast<int>(std::lower_bound(qubits.begin(), qubits.end(), q) - qubits.begin());
  };
  for (const auto& [q, v] : h) model.h[index(q)] = to_double(v);
  for (const auto& [pair, v] : j) model.couplings.push_back({index(pair.first), index(pair.second), to_double(v)});
  return model;
}

double max_node_weight(const ConnectivityGraph& circuit) {
  double best = 0.0;
  for (int v = 0; v < circuit.num_nodes(); ++v) {
    double w = std::abs(circuit.bias(v));
    for (auto [nb, e] : circuit.adjacent(v)) w += std::abs(circuit.edge(e).ek);
    best = std::max(best, w);
  }
  return best;
}

IsingProblem assign(const VertexModelEmbedding& embedding, const ConnectivityGraph& circuit, const ChimeraGraph& hw,
                    const AssignOptions& options) {
  if (auto bad = validate(embedding, circuit, hw); !bad.empty()) {
    throw std::invalid_argument("cannot assign parameters to an invalid embedding: " + bad.front().detail);
  }
  IsingProblem out;
  std::vector<int> owner(hw.num_qubits(), -1);
  for (int v = 0; v < circuit.num_nodes(); ++v) {
    for (int q : embedding.models[v]) owner[q] = v;
  }

  // Unscaled circuit-derived terms first.
  std::map<int, Rational> h;
  for (int v = 0; v < circuit.num_nodes(); ++v) {
    const auto& model = embedding.models[v];
    const Rational share = exact(circuit.bias(v)) / static_cast<long>(model.size());
    for (int q : model) h[q] = share;
  }
  std::map<std::pair<int, int>, Rational> circuit_j;
  std::map<std::pair<int, int>, Rational> chain_j;
  for (const auto& [a, b] : hw.couplers()) {
    if (owner[a] < 0 || owner[b] < 0) continue;
    if (owner[a] == owner[b]) chain_j[{a, b}] = -1;
  }
  for (const auto& edge : circuit.edges()) {
    std::vector<std::pair<int, int>> joins;
    for (int q : embedding.models[edge.a]) {
      for (int nb : hw.adjacent(q)) {
        if (owner[nb] == edge.b) joins.emplace_back(std::min(q, nb), std::max(q, nb));
      }
    }
    const Rational each = -exact(edge.ek) / static_cast<long>(joins.size());
    for (const auto& key : joins) circuit_j[key] += each;
  }

  Rational largest = 0;
  for (const auto& [q, v] : h) largest = std::max(largest, Rational(abs(v)));
  for (const auto& [key, v] : circuit_j) largest = std::max(largest, Rational(abs(v)));
  if (options.chain_safe) {
    Rational w_max = 0;
    for (int v = 0; v < circuit.num_nodes(); ++v) {
      Rational w = abs(exact(circuit.bias(v)));
      for (auto [nb, e] : circuit.adjacent(v)) w += abs(exact(circuit.edge(e).ek));
      w_max = std::max(w_max, w);
    }
    out.scale = 1 / (w_max + 1);
    out.scaled = true;
  } else if (largest > 1) {
    out.scale = 1 / largest;
    out.scaled = true;
  }
  for (auto& [q, v] : h) out.h[q] = v * out.scale;
  for (auto& [key, v] : circuit_j) out.j[key] = v * out.scale;
  for (auto& [key, v] : chain_j) out.j[key] = v;
  return out;
}

std::vector<std::uint64_t> ground_states_brute(const IsingModel& model) {
  if (model.n > kMaxBruteSpins) {
    throw std::invalid_argument("brute-force search is limited to " + std::to_string(kMaxBruteSpins) + " spins, got " +
                                std::to_string(model.n));
  }
  if (static_cast<int>(model.h.size()) != model.n) throw std::invalid_argument("field count does not match spins");
  double scale = 0.0;
  for (double x : model.h) scale += std::abs(x);
  for (const auto& c : model.couplings) scale += std::abs(c.value);
  const double tol = 1e-9 * std::max(1.0, scale);

  const std::uint64_t total = std::uint64_t{1} << model.n;
  constexpr std::uint64_t block = 4096;
  std::vector<double> energies(std::min(total, block));
  double best = std::numeric_limits<double>::infinity();
  std::vector<std::pair<std::uint64_t, double>> near;
  for (std::uint64_t first = 0; first < total; first += block) {
    const std::uint64_t count = std::min(block, total - first);
    std::span<double> out(energies.data(), count);
    simd::diagonal_energies(model.h, model.couplings, first, out);
    for (std::uint64_t k = 0; k < count; ++k) {
      const double e = out[k];
      if (e < best - tol) {
        best = e;
        near.clear();
      }
      if (e <= best + tol) {
        best = std::min(best, e);
        near.emplace_back(first + k, e);
      }
    }
  }
  std::vector<std::uint64_t> states;
  for (const auto& [s, e] : near) {
    if (e <= best + tol) states.push_back(s);
  }
  return states;
}

std::string format_ising_text(const IsingProblem& problem) {
  std::ostringstream os;
  for (const auto& [q, v] : problem.h) os << "h " << q << ' ' << format_double(to_double(v)) << '\n';
  for (const auto& [key, v] : problem.j) {
    os << "J " << key.first << ' ' << key.second << ' ' << format_double(to_double(v)) << '\n';
  }
  return os.str();
}

std::string format_ising_json(const IsingProblem& problem) {
  nlohmann::ordered_json doc;
  doc["scale"] = to_double(problem.scale);
  doc["scaled"] = problem.scaled;
  auto& h = doc["h"] = nlohmann::ordered_json::array();
  for (const auto& [q, v] : problem.h) h.push_back({{"qubit", q}, {"value", to_double(v)}});
  auto& j = doc["J"] = nlohmann::ordered_json::array();
  for (const auto& [key, v] : problem.j) j.push_back({{"a", key.first}, {"b", key.second}, {"value", to_double(v)}});
  return doc.dump(2) + "\n";
}

} // namespace qcaembed
