#include "qcaembed/chimera.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <set>
#include <stdexcept>

using namespace qcaembed;

TEST(Chimera, CountsMatchCoordinateEnumeration) {
  for (auto [r, c, l] : {std::tuple{8, 8, 4}, std::tuple{1, 1, 4}, std::tuple{2, 3, 2}, std::tuple{4, 4, 4}}) {
    ChimeraSpec spec{r, c, l};
    auto g = build_chimera(spec);
    auto ref = oracle::chimera_couplers(r, c, l);
    EXPECT_EQ(g.num_qubits(), 2 * l * r * c);
    EXPECT_EQ(spec.num_couplers(), static_cast<long>(ref.size()));
    auto got = g.couplers();
    EXPECT_EQ((std::set<std::pair<int, int>>(got.begin(), got.end())), ref);
  }
}

TEST(Chimera, Vesuvius512) {
  auto g = build_chimera({8, 8, 4});
  EXPECT_EQ(g.num_qubits(), 512);
  EXPECT_EQ(g.num_active_couplers(), 1472);
}

TEST(Chimera, DegreesInteriorAndBoundary) {
  auto g = build_chimera({8, 8, 4});
  for (int q = 0; q < g.num_qubits(); ++q) {
    auto id = from_linear(g.spec(), q);
    const bool vertical = id.orientation == Orientation::vertical;
    const int line = vertical ? id.tile_row : id.tile_col;
    const bool edge = line == 0 || line == 7;
    EXPECT_EQ(static_cast<int>(g.adjacent(q).size()), edge ? 5 : 6) << q;
  }
}

TEST(Chimera, LinearRoundTrip) {
  ChimeraSpec spec{3, 5, 4};
  for (int q = 0; q < spec.num_qubits(); ++q) EXPECT_EQ(to_linear(spec, from_linear(spec, q)), q);
  EXPECT_EQ(to_linear(spec, {1, 2, Orientation::horizontal, 3}), (1 * 5 + 2) * 8 + 4 + 3);
}

TEST(Chimera, ParseSpec) {
  EXPECT_EQ(parse_chimera_spec("8x8x4"), (ChimeraSpec{8, 8, 4}));
  EXPECT_EQ(parse_chimera_spec("2x3x1"), (ChimeraSpec{2, 3, 1}));
  for (const char* bad : {"0x8x4", "8x8", "8x8x4x1", "axbxc", "-1x8x4", "", "8x8x0"}) {
    EXPECT_THROW(parse_chimera_spec(bad), std::invalid_argument) << bad;
  }
  EXPECT_EQ(format_chimera_spec({4, 6, 4}), "4x6x4");
}

TEST(Chimera, CouplerPredicateAgreesWithGraph) {
  ChimeraSpec spec{2, 2, 4};
  auto ref = oracle::chimera_couplers(2, 2, 4);
  for (int a = 0; a < spec.num_qubits(); ++a)
    for (int b = a + 1; b < spec.num_qubits(); ++b) EXPECT_EQ(is_chimera_coupler(spec, a, b), ref.count({a, b}) > 0);
}

TEST(Chimera, EdgeDistance) {
  ChimeraSpec spec{8, 8, 4};
  EXPECT_EQ(edge_distance(spec, 0, 3), 0);
  EXPECT_EQ(edge_distance(spec, 3, 4), 3);
  EXPECT_EQ(edge_distance(spec, 7, 7), 0);
}

TEST(Chimera, YieldRemovesQubitsAndCouplers) {
  auto full = build_chimera({2, 2, 4});
  YieldMask mask;
  mask.disabled_qubits = {0, 9};
  mask.disabled_couplers = {{1, 4}};
  auto g = apply_yield(full, mask);
  EXPECT_EQ(g.num_active_qubits(), 30);
  EXPECT_FALSE(g.is_active(0));
  EXPECT_TRUE(g.adjacent(0).empty());
  EXPECT_FALSE(g.has_coupler(1, 4));
  for (int q = 0; q < g.num_qubits(); ++q)
    for (int r : g.adjacent(q)) {
      EXPECT_TRUE(g.is_active(r));
      EXPECT_TRUE(full.has_coupler(q, r));
    }
  auto missing = g.missing();
  EXPECT_EQ(missing.disabled_qubits, (std::vector<int>{0, 9}));
  EXPECT_EQ(missing.disabled_couplers, (std::vector<std::pair<int, int>>{{1, 4}}));
}

TEST(Chimera, YieldOutOfRangeRejected) {
  auto full = build_chimera({1, 1, 4});
  YieldMask mask;
  mask.disabled_qubits = {8};
  EXPECT_THROW(apply_yield(full, mask), std::invalid_argument);
  YieldMask bad;
  bad.disabled_couplers = {{0, 1}};  // same orientation, not a coupler
  EXPECT_THROW(apply_yield(full, bad), std::invalid_argument);
}

TEST(Chimera, RandomYieldCountAndDeterminism) {
  ChimeraSpec spec{8, 8, 4};
  auto a = YieldMask::random(spec, 0.05, 17);
  auto b = YieldMask::random(spec, 0.05, 17);
  auto c = YieldMask::random(spec, 0.05, 18);
  EXPECT_EQ(a.disabled_qubits.size(), 25u);  // floor(0.05 * 512)
  EXPECT_EQ(a.disabled_qubits, b.disabled_qubits);
  EXPECT_NE(a.disabled_qubits, c.disabled_qubits);
  std::set<int> distinct(a.disabled_qubits.begin(), a.disabled_qubits.end());
  EXPECT_EQ(distinct.size(), a.disabled_qubits.size());
  EXPECT_EQ(YieldMask::random(spec, 0.0, 1).disabled_qubits.size(), 0u);
}

TEST(Chimera, NeighborsOfInactiveThrows) {
  auto full = build_chimera({1, 1, 4});
  YieldMask mask;
  mask.disabled_qubits = {2};
  auto g = apply_yield(full, mask);
  EXPECT_THROW(neighbors(g, from_linear(g.spec(), 2)), std::invalid_argument);
  EXPECT_EQ(neighbors(g, from_linear(g.spec(), 4)).size(), 3u);
}
