#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>

#include "oracles.hpp"

namespace dalnet {
namespace {

using testing::kInf;

NetworkSpec make_spec(std::vector<SegmentSpec> segs, std::optional<VertexId> root = 1) {
  NetworkSpec spec;
  spec.root = root;
  std::set<VertexId> ids;
  for (const auto& s : segs) {
    ids.insert(s.from);
    ids.insert(s.to);
  }
  for (VertexId v : ids) spec.vertices.push_back({v, std::nullopt});
  spec.segments = std::move(segs);
  return spec;
}

// a=1 -> b=2 -> {c=3, d=4} -> e=5 -> f=6 with lengths from the bundled file.
Network diamond_short() { return read_network(std::filesystem::path(DALNET_DATA_DIR) / "diamond_short.json"); }

// Stem 1 -> 2 (length 1), arms 2 -> 3 -> 5 (1 + 2) and 2 -> 4 -> 5 (2 + 3),
// stem 5 -> 6 (1).
Network diamond() {
  return Network::build(make_spec({{1, 1, 2, 1.0}, {2, 2, 3, 1.0}, {3, 3, 5, 2.0}, {4, 2, 4, 2.0}, {5, 4, 5, 3.0},
                                   {6, 5, 6, 1.0}}));
}

std::vector<SegmentId> ids_of(const Network& net, std::span<const std::size_t> segs) {
  std::vector<SegmentId> out;
  for (std::size_t s : segs) out.push_back(net.segment(s).id);
  return out;
}

TEST(Network, DiamondShortIsValid) {
  const Network net = diamond_short();
  EXPECT_EQ(net.segment_count(), 6u);
  EXPECT_DOUBLE_EQ(net.total_length(), 10.0);
  EXPECT_TRUE(net.root_reaches_all());
  EXPECT_FALSE(net.is_out_tree());
}

TEST(Network, SingleSegment) {
  const Network net = Network::build(make_spec({{7, 1, 2, 1.0}}));
  EXPECT_EQ(ids_of(net, net.topological_order()), std::vector<SegmentId>{7});
}

TEST(Network, TwoCycleIsRejected) {
  try {
    Network::build(make_spec({{1, 1, 2, 1.0}, {2, 2, 1, 1.0}}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::CycleDetected);
  }
}

TEST(Network, BuildErrors) {
  auto code_of = [](const NetworkSpec& spec) {
    try {
      Network::build(spec);
    } catch (const Error& e) {
      return e.code();
    }
    return Errc::UsageError;
  };
  EXPECT_EQ(code_of(make_spec({{1, 1, 2, 0.0}})), Errc::NonpositiveLength);
  EXPECT_EQ(code_of(make_spec({{1, 1, 2, -1.0}})), Errc::NonpositiveLength);
  EXPECT_EQ(code_of(make_spec({{1, 1, 2, 1.0}, {1, 2, 3, 1.0}})), Errc::DuplicateId);
  EXPECT_EQ(code_of(make_spec({{1, 1, 2, std::nullopt}})), Errc::MissingLengthAndCoords);
  NetworkSpec dangling = make_spec({{1, 1, 2, 1.0}});
  dangling.segments.push_back({2, 2, 99, 1.0});
  EXPECT_EQ(code_of(dangling), Errc::DanglingVertexRef);
  EXPECT_EQ(code_of(make_spec({{1, 1, 2, 1.0}}, 42)), Errc::UnknownVertex);
}

TEST(Network, LengthsFromCoords) {
  NetworkSpec spec;
  spec.vertices = {{1, std::vector<double>{0.0, 0.0}}, {2, std::vector<double>{3.0, 4.0}}};
  spec.segments = {{1, 1, 2, std::nullopt}};
  EXPECT_DOUBLE_EQ(Network::build(spec).length(0), 5.0);
}

TEST(Network, TopologicalOrderDiamondShort) {
  const Network net = diamond_short();
  const auto order = ids_of(net, net.topological_order());
  EXPECT_EQ(order.front(), 1);
  EXPECT_EQ(order.back(), 4);
  EXPECT_EQ(order, (std::vector<SegmentId>{1, 2, 3, 5, 6, 4}));
}

TEST(Network, ParallelSegmentsOrderedById) {
  const Network net = Network::build(make_spec({{3, 5, 6, 1.0}, {1, 1, 2, 1.0}, {2, 3, 4, 1.0}}, std::nullopt));
  EXPECT_EQ(ids_of(net, net.topological_order()), (std::vector<SegmentId>{1, 2, 3}));
}

TEST(Network, UpstreamSegments) {
  const Network net = diamond_short();
  auto up = ids_of(net, net.upstream_segments(net.segment_index(4)));
  std::sort(up.begin(), up.end());
  EXPECT_EQ(up, (std::vector<SegmentId>{1, 2, 3, 5, 6}));
  EXPECT_TRUE(net.upstream_segments(net.segment_index(1)).empty());

  const Network chain = Network::build(make_spec({{1, 1, 2, 1.0}, {2, 2, 3, 1.0}, {3, 3, 4, 1.0}}));
  auto up3 = ids_of(chain, chain.upstream_segments(chain.segment_index(3)));
  std::sort(up3.begin(), up3.end());
  EXPECT_EQ(up3, (std::vector<SegmentId>{1, 2}));
}

TEST(Network, Distances) {
  const Network net = diamond();
  const NetworkLocation u{net.segment_index(1), 0.25};
  const NetworkLocation v{net.segment_index(6), 0.5};
  EXPECT_EQ(net.distance(u, u), 0.0);
  // Stem remainder 0.75, shorter arm 3, then 0.5 on the last stem.
  EXPECT_DOUBLE_EQ(net.distance(u, v), 0.75 + 3.0 + 0.5);
  EXPECT_EQ(net.distance(v, u), kInf);

  const Network tree = read_network(std::filesystem::path(DALNET_DATA_DIR) / "tree.json");
  const NetworkLocation leaf{tree.segment_index(3), 1.0};
  const NetworkLocation other{tree.segment_index(5), 1.0};
  EXPECT_EQ(tree.distance(leaf, other), kInf);
  EXPECT_EQ(tree.distance(other, leaf), kInf);
}

TEST(Network, PathEnumerationDiamond) {
  const Network net = diamond();
  const NetworkLocation u{net.segment_index(1), 0.25};
  const NetworkLocation v{net.segment_index(6), 0.5};
  auto paths = net.enumerate_paths(u, v, 10.0);
  ASSERT_EQ(paths.size(), 2u);
  std::sort(paths.begin(), paths.end(), [](const auto& a, const auto& b) { return a.length < b.length; });
  EXPECT_DOUBLE_EQ(paths[0].length, 0.75 + 3.0 + 0.5);
  EXPECT_DOUBLE_EQ(paths[1].length, 0.75 + 5.0 + 0.5);
  // Out-degrees along either path: 2 at the split, 1 at the arm midpoint and merge.
  EXPECT_EQ(paths[0].split_product, 2);
  EXPECT_EQ(paths[1].split_product, 2);
  EXPECT_EQ(net.enumerate_paths(u, v, 5.0).size(), 1u);
  EXPECT_TRUE(net.enumerate_paths(v, u, 100.0).empty());

  const auto same = net.enumerate_paths({0, 0.2}, {0, 0.7}, 10.0);
  ASSERT_EQ(same.size(), 1u);
  EXPECT_DOUBLE_EQ(same[0].length, 0.5);
  EXPECT_EQ(same[0].split_product, 1);
}

TEST(Network, RootDistances) {
  const Network tree = read_network(std::filesystem::path(DALNET_DATA_DIR) / "tree.json");
  EXPECT_DOUBLE_EQ(tree.distance_from_root({tree.segment_index(1), 0.5}), 0.5);
  // Root path to segment 4 runs 1 -> 2 -> 4.
  EXPECT_DOUBLE_EQ(tree.distance_from_root({tree.segment_index(4), 1.0}), 2.0 + 2.0 + 1.0);
  const RootPath p = tree.root_path({tree.segment_index(4), 1.0});
  EXPECT_EQ(ids_of(tree, p.segments), (std::vector<SegmentId>{1, 2, 4}));
  EXPECT_TRUE(tree.is_out_tree());
}

TEST(Network, RootPathTieBreak) {
  // Equal arms 2 -> 3 -> 5 and 2 -> 4 -> 5; segment 2 beats segment 4.
  const Network net = Network::build(make_spec({{1, 1, 2, 1.0}, {4, 2, 4, 1.0}, {5, 4, 5, 1.0}, {2, 2, 3, 1.0},
                                                {3, 3, 5, 1.0}, {6, 5, 6, 1.0}}));
  const RootPath p = net.root_path({net.segment_index(6), 0.5});
  EXPECT_EQ(ids_of(net, p.segments), (std::vector<SegmentId>{1, 2, 3, 6}));
}

TEST(Network, Scaling) {
  const Network net = diamond_short();
  const Network same = net.scaled(1.0);
  for (std::size_t s = 0; s < net.segment_count(); ++s) EXPECT_EQ(same.length(s), net.length(s));
  const Network big = net.scaled(std::pow(1.5, 3));
  EXPECT_NEAR(big.total_length(), 10.0 * 3.375, 1e-12);
  try {
    net.scaled(0.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::NonpositiveFactor);
  }
}

TEST(Network, VertexAllocation) {
  const Network tree = read_network(std::filesystem::path(DALNET_DATA_DIR) / "tree.json");
  EXPECT_EQ(tree.allocate_vertex_point(tree.vertex_index(1)), (NetworkLocation{tree.segment_index(1), 0.0}));
  EXPECT_EQ(tree.allocate_vertex_point(tree.vertex_index(4)), (NetworkLocation{tree.segment_index(3), 3.0}));
  const Network net = diamond_short();
  try {
    net.allocate_vertex_point(net.vertex_index(5));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::AmbiguousAllocation);
  }
}

TEST(Network, JsonRoundTripAndUnknownKeys) {
  const Network net = diamond_short();
  const Network again = Network::build(parse_network_json(network_to_json(net)));
  ASSERT_EQ(again.segment_count(), net.segment_count());
  for (std::size_t s = 0; s < net.segment_count(); ++s) {
    EXPECT_EQ(again.segment(s).id, net.segment(s).id);
    EXPECT_EQ(again.length(s), net.length(s));
  }
  try {
    parse_network_json(R"({"vertices": [], "segments": [], "colour": 1})");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::ParseError);
  }
}

TEST(Network, DistanceMatchesFloydWarshall) {
  SplitMix64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const auto net = testing::random_network(rng);
    const auto vd = testing::vertex_distances(*net);
    for (int k = 0; k < 10; ++k) {
      const std::size_t a = rng() % net->segment_count();
      const std::size_t b = rng() % net->segment_count();
      const NetworkLocation u{a, net->length(a) * rng.uniform()};
      const NetworkLocation v{b, net->length(b) * rng.uniform()};
      const double expected = testing::location_distance(*net, vd, u, v);
      const double got = net->distance(u, v);
      if (std::isinf(expected)) {
        EXPECT_TRUE(std::isinf(got));
      } else {
        EXPECT_NEAR(got, expected, 1e-12);
      }
    }
  }
}

}  // namespace
}  // namespace dalnet
