#include "qcaembed/dense_placement.hpp"
#include "qcaembed/heuristic.hpp"
#include "qcaembed/io.hpp"
#include "qcaembed/ising.hpp"
#include "qcaembed/model_convert.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <set>
#include <stdexcept>

using namespace qcaembed;

namespace {

ConnectivityGraph fixture(const std::string& name, AdjacencyMode mode = AdjacencyMode::limited) {
  return load_circuit(std::string(QCAEMBED_DATA_DIR) + "/circuits/" + name + ".json", mode);
}

std::vector<oracle::Term> terms(const IsingModel& m) {
  std::vector<oracle::Term> out;
  for (const auto& c : m.couplings) out.push_back({c.i, c.j, c.value});
  return out;
}

} // namespace

TEST(Ising, CircuitModelSigns) {
  // Driver +1 next to a single cell: h = +1, ground state s = -1, P = +1.
  std::vector<QcaCell> cells = {{0, 0, 0, CellKind::driver, 1.0}, {1, 1, 0}, {2, 2, 0}};
  auto g = build_connectivity(cells, AdjacencyMode::full);
  auto m = circuit_ising(g);
  EXPECT_DOUBLE_EQ(m.h[0], 1.0);
  ASSERT_EQ(m.couplings.size(), 1u);
  EXPECT_DOUBLE_EQ(m.couplings[0].value, -1.0);
  auto gs = ground_states_brute(m);
  ASSERT_EQ(gs.size(), 1u);
  EXPECT_EQ(gs[0], 0b11u);  // both spins -1
  EXPECT_EQ(polarization_of_spin(-1), 1);
}

TEST(Ising, BruteForceMatchesOracle) {
  auto rng = make_rng(8);
  for (int t = 0; t < 40; ++t) {
    IsingModel m;
    m.n = 2 + static_cast<int>(uniform_index(rng, 10));
    for (int i = 0; i < m.n; ++i) m.h.push_back(static_cast<double>(uniform_index(rng, 5)) - 2.0);
    for (int i = 0; i < m.n; ++i)
      for (int j = i + 1; j < m.n; ++j)
        if (uniform_unit(rng) < 0.4) m.couplings.push_back({i, j, static_cast<double>(uniform_index(rng, 5)) - 2.0});
    EXPECT_EQ(ground_states_brute(m), oracle::ground_states(m.n, m.h, terms(m)));
  }
}

TEST(Ising, BruteForceCap) {
  IsingModel m;
  m.n = kMaxBruteSpins + 1;
  m.h.assign(m.n, 0.0);
  EXPECT_THROW(ground_states_brute(m), std::invalid_argument);
}

TEST(Assign, SplitsBiasAndCouplings) {
  auto hw = build_chimera({1, 1, 4});
  ConnectivityGraph g("two", AdjacencyMode::full, {0, 1}, {0.6, 0.0}, {{0, 1, 1.0}});
  // Model 0 spans qubits 0 and 4; model 1 is qubit 5, coupled to 0 only.
  VertexModelEmbedding e{{{0, 4}, {5}}};
  auto p = assign(e, g, hw);
  EXPECT_FALSE(p.scaled);
  EXPECT_EQ(p.h.at(0), Rational(0.6) / 2);
  EXPECT_EQ(p.h.at(0) + p.h.at(4), Rational(0.6));
  EXPECT_EQ(p.j.at({0, 4}), Rational(-1));
  EXPECT_EQ(p.j.at({0, 5}), Rational(-1));
  EXPECT_EQ(p.j.count({4, 5}), 0u);
}

TEST(Assign, SpreadsCircuitEdgeOverParallelCouplers) {
  auto hw = build_chimera({1, 1, 4});
  ConnectivityGraph g("two", AdjacencyMode::full, {0, 1}, {0.0, 0.0}, {{0, 1, 0.5}});
  VertexModelEmbedding e{{{0, 1, 4}, {5}}};  // 0 and 1 both couple to 5
  auto p = assign(e, g, hw);
  EXPECT_EQ(p.j.at({0, 5}) + p.j.at({1, 5}), Rational(-0.5));
  EXPECT_EQ(p.j.at({0, 5}), p.j.at({1, 5}));
}

TEST(Assign, ScalesOutOfRangeTerms) {
  auto hw = build_chimera({1, 1, 4});
  ConnectivityGraph g("one", AdjacencyMode::full, {0, 1}, {3.0, 0.0}, {{0, 1, 1.0}});
  VertexModelEmbedding e{{{0}, {4}}};
  auto p = assign(e, g, hw);
  EXPECT_TRUE(p.scaled);
  EXPECT_EQ(p.scale, Rational(1, 3));
  EXPECT_EQ(p.h.at(0), Rational(1));
  EXPECT_EQ(p.j.at({0, 4}), Rational(-1, 3));
}

TEST(Assign, ChainSafeScale) {
  auto hw = build_chimera({1, 1, 4});
  ConnectivityGraph g("one", AdjacencyMode::full, {0, 1}, {1.0, 0.0}, {{0, 1, 1.0}});
  VertexModelEmbedding e{{{0, 5}, {4}}};
  auto p = assign(e, g, hw, {.chain_safe = true});
  EXPECT_EQ(p.scale, Rational(1, 3));  // W_max = 2
  EXPECT_EQ(p.j.at({0, 5}), Rational(-1));
}

TEST(Assign, InvalidEmbeddingRejected) {
  auto hw = build_chimera({1, 1, 4});
  ConnectivityGraph g("one", AdjacencyMode::full, {0, 1}, {0.0, 0.0}, {{0, 1, 1.0}});
  EXPECT_THROW(assign(VertexModelEmbedding{{{0}, {1}}}, g, hw), std::invalid_argument);
}

TEST(Assign, ConservationAndRangeOnRealEmbeddings) {
  auto hw = build_chimera({4, 4, 4});
  for (const char* name : {"wire10", "majority", "inverter"}) {
    auto circuit = fixture(name, AdjacencyMode::full);
    auto rng = make_rng(5);
    auto res = embed_heuristic(circuit, hw, {}, rng);
    ASSERT_TRUE(res.embedding) << name;
    for (bool safe : {false, true}) {
      auto p = assign(*res.embedding, circuit, hw, {.chain_safe = safe});
      for (int v = 0; v < circuit.num_nodes(); ++v) {
        Rational sum = 0;
        for (int q : res.embedding->models[v]) sum += p.h.count(q) ? p.h.at(q) : Rational(0);
        EXPECT_EQ(sum / p.scale, Rational(circuit.bias(v))) << name << " node " << v;
      }
      for (const auto& [q, v] : p.h) EXPECT_LE(abs(v), Rational(1));
      for (const auto& [k, v] : p.j) EXPECT_LE(abs(v), Rational(1));
    }
  }
}

TEST(Assign, EmbeddedGroundStatesCollapseToCircuitOnes) {
  auto hw = build_chimera({2, 2, 4});
  auto circuit = fixture("majority");
  auto rng = make_rng(2);
  auto res = embed_heuristic(circuit, hw, {}, rng);
  ASSERT_TRUE(res.embedding);
  auto p = assign(*res.embedding, circuit, hw, {.chain_safe = true});
  std::vector<int> qubits;
  auto model = p.to_model(qubits);
  auto embedded = oracle::ground_states(model.n, model.h, terms(model));
  auto expected = oracle::ground_states(circuit.num_nodes(), circuit_ising(circuit).h, terms(circuit_ising(circuit)));
  std::set<std::uint64_t> collapsed;
  for (auto s : embedded) {
    std::uint64_t c = 0;
    for (int v = 0; v < circuit.num_nodes(); ++v) {
      std::set<int> bits;
      for (int q : res.embedding->models[v]) {
        auto idx = std::lower_bound(qubits.begin(), qubits.end(), q) - qubits.begin();
        bits.insert(static_cast<int>((s >> idx) & 1));
      }
      ASSERT_EQ(bits.size(), 1u) << "model " << v << " broken in a ground state";
      if (*bits.begin()) c |= std::uint64_t{1} << v;
    }
    collapsed.insert(c);
  }
  EXPECT_EQ(collapsed, std::set<std::uint64_t>(expected.begin(), expected.end()));
}

TEST(Assign, OutputFormats) {
  auto hw = build_chimera({1, 1, 4});
  ConnectivityGraph g("one", AdjacencyMode::full, {0, 1}, {0.5, 0.0}, {{0, 1, 1.0}});
  auto p = assign(VertexModelEmbedding{{{0}, {4}}}, g, hw);
  EXPECT_EQ(format_ising_text(p), "h 0 0.5\nh 4 0\nJ 0 4 -1\n");
  auto j = nlohmann::json::parse(format_ising_json(p));
  EXPECT_EQ(j["J"][0]["value"], -1.0);
  EXPECT_EQ(j["scaled"], false);
}
