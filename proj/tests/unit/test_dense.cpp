#include "qcaembed/circuit_gen.hpp"
#include "qcaembed/dense_placement.hpp"
#include "qcaembed/io.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

using namespace qcaembed;

namespace {

ConnectivityGraph fixture(const std::string& name, AdjacencyMode mode = AdjacencyMode::limited) {
  return load_circuit(std::string(QCAEMBED_DATA_DIR) + "/circuits/" + name + ".json", mode);
}

ConnectivityGraph path_graph(int n) {
  std::vector<int> ids(n);
  std::vector<CircuitEdge> edges;
  for (int i = 0; i < n; ++i) ids[i] = i;
  for (int i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1, 1.0});
  return ConnectivityGraph("path", AdjacencyMode::full, ids, std::vector<double>(n, 0.0), edges);
}

} // namespace

TEST(Dense, FixturesEmbedAndValidate) {
  auto hw = build_chimera({4, 4, 4});
  for (const char* name : {"wire10", "majority", "inverter"}) {
    for (auto mode : {AdjacencyMode::limited, AdjacencyMode::full}) {
      auto circuit = fixture(name, mode);
      auto rng = make_rng(3);
      auto res = embed_dense(circuit, hw, {}, rng);
      ASSERT_EQ(res.reason, FailureReason::none) << name << " " << res.detail;
      ASSERT_TRUE(res.embedding);
      EXPECT_TRUE(validate(*res.embedding, circuit, hw).empty()) << name;
    }
  }
}

TEST(Dense, SameSeedSameEmbedding) {
  auto hw = build_chimera({8, 8, 4});
  GenConfig cfg;
  cfg.majority_max = 3;
  auto grng = make_rng(4);
  auto circuit = generate(cfg, grng);
  auto r1 = make_rng(99), r2 = make_rng(99);
  auto a = embed_dense(circuit, hw, {}, r1);
  auto b = embed_dense(circuit, hw, {}, r2);
  ASSERT_EQ(a.reason, b.reason);
  if (a.embedding) EXPECT_EQ(*a.embedding, *b.embedding);
}

TEST(Dense, TooLargeFailsCleanly) {
  auto hw = build_chimera({1, 1, 4});
  auto circuit = path_graph(20);
  auto rng = make_rng(1);
  auto res = embed_dense(circuit, hw, {}, rng);
  EXPECT_NE(res.reason, FailureReason::none);
  EXPECT_FALSE(res.embedding);
}

TEST(Dense, AvoidsDisabledQubits) {
  auto full = build_chimera({4, 4, 4});
  auto hw = apply_yield(full, YieldMask::random(full.spec(), 0.1, 5));
  auto circuit = fixture("majority");
  int ok = 0;
  for (int s = 0; s < 5; ++s) {
    auto rng = make_rng(s);
    auto res = embed_dense(circuit, hw, {}, rng);
    if (!res.embedding) continue;
    ++ok;
    EXPECT_TRUE(validate(*res.embedding, circuit, hw).empty());
  }
  EXPECT_GT(ok, 0);
}

TEST(Dense, SeedWeightsFollowDegreePower) {
  auto hw = build_chimera({4, 4, 4});
  auto circuit = fixture("majority");
  auto rng = make_rng(1);
  DenseConfig cfg;
  DensePlacer placer(circuit, hw, cfg, rng);
  auto w = placer.seed_cell_weights();
  double total = 0;
  for (int v = 0; v < circuit.num_nodes(); ++v) total += std::pow(circuit.degree(v), 3.0);
  for (int v = 0; v < circuit.num_nodes(); ++v) EXPECT_NEAR(w[v], std::pow(circuit.degree(v), 3.0) / total, 1e-12);
}

TEST(Dense, SeedLandsNearCentre) {
  auto hw = build_chimera({8, 8, 4});
  auto circuit = fixture("majority");
  double mean_dist = 0;
  const int draws = 400;
  for (int s = 0; s < draws; ++s) {
    auto rng = make_rng(s);
    DensePlacer placer(circuit, hw, {}, rng);
    auto seed = placer.select_seed();
    ASSERT_TRUE(seed);
    const double dr = hw.tile_row(seed->second) - 3.5, dc = hw.tile_col(seed->second) - 3.5;
    mean_dist += std::hypot(dr, dc);
    EXPECT_GE(static_cast<int>(hw.adjacent(seed->second).size()), circuit.degree(seed->first));
  }
  // A unit-width Gaussian about the centre keeps seeds within a couple of tiles.
  EXPECT_LT(mean_dist / draws, 2.0);
}

TEST(Dense, StepCostPrefersInternalAndCentralCouplers) {
  auto hw = build_chimera({8, 8, 4});
  auto circuit = path_graph(2);
  auto rng = make_rng(1);
  DenseConfig cfg;
  DensePlacer placer(circuit, hw, cfg, rng);
  const int centre = to_linear(hw.spec(), {3, 3, Orientation::vertical, 0});
  const int inside = to_linear(hw.spec(), {3, 3, Orientation::horizontal, 0});
  const int below = to_linear(hw.spec(), {4, 3, Orientation::vertical, 0});
  EXPECT_DOUBLE_EQ(placer.step_cost(centre, inside), cfg.internal_coupler_cost);
  EXPECT_DOUBLE_EQ(placer.step_cost(centre, below), cfg.external_coupler_cost);
  const int edge = to_linear(hw.spec(), {0, 3, Orientation::vertical, 0});
  const int next = to_linear(hw.spec(), {1, 3, Orientation::vertical, 0});
  EXPECT_DOUBLE_EQ(placer.step_cost(next, edge), cfg.external_coupler_cost + 3 * cfg.edge_proximity_cost);
}

TEST(Dense, SuitabilityCountsFreeAndFriendlyNeighbours) {
  auto hw = build_chimera({1, 1, 4});
  // Star: centre 0 with four leaves.
  ConnectivityGraph star("star", AdjacencyMode::full, {0, 1, 2, 3, 4}, {0, 0, 0, 0, 0},
                         {{0, 1, 1.0}, {0, 2, 1.0}, {0, 3, 1.0}, {0, 4, 1.0}});
  auto rng = make_rng(1);
  DensePlacer placer(star, hw, {}, rng);
  // Vertical qubit 0 has four horizontal neighbours.
  EXPECT_TRUE(placer.is_suitable(0, 0));
  placer.assign(1, 4);  // a leaf on a neighbour keeps qubit 0 suitable
  EXPECT_TRUE(placer.is_suitable(0, 0));
  placer.assign(2, 1);  // qubit 1 is not a neighbour of 0
  placer.assign(3, 5);
  EXPECT_TRUE(placer.is_suitable(0, 0));
  placer.unassign(3);
  ConnectivityGraph other("o", AdjacencyMode::full, {0, 1, 2, 3, 4, 5}, {0, 0, 0, 0, 0, 0},
                          {{0, 1, 1.0}, {0, 2, 1.0}, {0, 3, 1.0}, {0, 4, 1.0}});
  DensePlacer p2(other, hw, {}, rng);
  p2.assign(5, 4);  // unrelated cell occupies a neighbour
  EXPECT_FALSE(p2.is_suitable(0, 0));
  EXPECT_FALSE(p2.is_suitable(4, 0));
}

TEST(Dense, SeamCostFormula) {
  DenseConfig cfg;
  EXPECT_DOUBLE_EQ(seam_cost(2, 1, 1.5, cfg), 3.0 * 2 + 4.0 * 1 + 3.0 * 1.5);
  cfg.seam_qubit_cost = 1;
  cfg.seam_path_cost = 0;
  cfg.seam_distance_cost = 0;
  EXPECT_DOUBLE_EQ(seam_cost(7, 5, 9, cfg), 7.0);
}

TEST(Dense, SeamShiftKeepsEmbeddingValid) {
  auto hw = build_chimera({6, 6, 4});
  auto circuit = fixture("wire10");
  int applied = 0;
  for (int s = 0; s < 10 && applied < 3; ++s) {
    auto rng = make_rng(s);
    DensePlacer placer(circuit, hw, {}, rng);
    if (placer.run() != FailureReason::none) continue;
    for (int cell = 0; cell < circuit.num_nodes(); ++cell) {
      auto seams = placer.seam_candidates(cell);
      if (seams.empty()) continue;
      auto cheapest = *std::min_element(seams.begin(), seams.end(),
                                        [](const auto& a, const auto& b) { return a.cost < b.cost; });
      if (!placer.apply_seam(cheapest, 0)) break;
      EXPECT_TRUE(validate(placer.result(), circuit, hw).empty());
      ++applied;
      break;
    }
  }
  EXPECT_GT(applied, 0);
}

TEST(Dense, ConfigValidation) {
  DenseConfig cfg;
  cfg.placement_candidates = 0;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
  DenseConfig neg;
  neg.seed_gaussian_sigma = -1;
  EXPECT_THROW(neg.validate(), std::invalid_argument);
}
