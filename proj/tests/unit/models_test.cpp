#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>

#include "oracles.hpp"

namespace dalnet {
namespace {

std::shared_ptr<const Network> load(const char* name) {
  return std::make_shared<const Network>(read_network(std::filesystem::path(DALNET_DATA_DIR) / name));
}

std::shared_ptr<const Network> chain(std::vector<double> lengths) {
  NetworkSpec spec;
  spec.root = 1;
  for (std::size_t v = 0; v <= lengths.size(); ++v) spec.vertices.push_back({static_cast<VertexId>(v + 1), {}});
  for (std::size_t s = 0; s < lengths.size(); ++s) {
    spec.segments.push_back({static_cast<SegmentId>(s + 1), static_cast<VertexId>(s + 1),
                             static_cast<VertexId>(s + 2), lengths[s]});
  }
  return std::make_shared<const Network>(Network::build(spec));
}

PointPattern empty_on(const std::shared_ptr<const Network>& net) { return PointPattern(net, std::vector<PointRecord>{}); }

TEST(Poisson, Homogeneous) {
  const auto net = load("diamond.json");
  const PoissonModel model(341.0 / 876.0);
  const auto h = empty_on(net);
  EXPECT_DOUBLE_EQ(conditional_intensity(model, h, {2, 0.3}), 341.0 / 876.0);
  EXPECT_DOUBLE_EQ(integrated_intensity(model, h, {2, 2.0}), 2.0 * 341.0 / 876.0);
  const auto b = thinning_bounds(PoissonModel(2.0), h, {2, 0.5});
  EXPECT_DOUBLE_EQ(b.bound, 2.0);
  EXPECT_DOUBLE_EQ(b.horizon, net->length(2) - 0.5);
  EXPECT_THROW(PoissonModel(-1.0), Error);
}

TEST(Poisson, Inhomogeneous) {
  const auto net = chain({1.0});
  const PoissonModel model([](std::size_t, double t) { return t; });
  EXPECT_NEAR(integrated_intensity(model, empty_on(net), {0, 1.0}), 0.5, 1e-12);
  const PoissonModel negative([](std::size_t, double) { return -1.0; });
  try {
    conditional_intensity(negative, empty_on(net), {0, 0.5});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::NegativeRate);
  }
}

TEST(Hawkes, EmptyHistory) {
  const auto net = load("diamond.json");
  const HawkesModel model({1.0, 0.8, 5.0});
  EXPECT_DOUBLE_EQ(conditional_intensity(model, empty_on(net), {3, 1.0}), 1.0);
  EXPECT_DOUBLE_EQ(integrated_intensity(model, empty_on(net), {3, 1.5}), 1.5);
}

TEST(Hawkes, OneParentAtHalfLife) {
  const auto net = chain({2.0});
  const double s = 0.2;
  const PointPattern h(net, std::vector<PointRecord>{{0, s, 0}});
  const HawkesModel model({1.0, 0.8, 5.0});
  EXPECT_NEAR(conditional_intensity(model, h, {0, s + std::log(2.0) / 5.0}), 3.0, 1e-12);
  // mu t + alpha Gamma(t - s)
  const double t = 1.3;
  EXPECT_NEAR(integrated_intensity(model, h, {0, t}), t + 0.8 * (1.0 - std::exp(-5.0 * (t - s))), 1e-12);
}

TEST(Hawkes, OnlyShortestPathCounts) {
  const auto net = load("diamond_short.json");
  const PointPattern h(net, std::vector<PointRecord>{{net->segment_index(1), 0.5, 0}});
  const HawkesModel model({1.0, 0.8, 2.0});
  const NetworkLocation u{net->segment_index(4), 0.5};
  // Both arms have length 4; d = 0.5 + 4 + 0.5.
  EXPECT_NEAR(conditional_intensity(model, h, u), 1.0 + 0.8 * 2.0 * std::exp(-2.0 * 5.0), 1e-12);
}

TEST(ModifiedHawkes, StraightLineEqualsHawkes) {
  const auto net = chain({1.0, 2.0, 1.5});
  const PointPattern h(net, std::vector<PointRecord>{{0, 0.4, 0}, {1, 1.0, 0}});
  const HawkesModel plain({1.0, 0.8, 3.0});
  const ModifiedHawkesModel mod({1.0, 0.8, 3.0});
  for (double t : {0.1, 0.7, 1.4}) {
    const NetworkLocation u{2, t};
    EXPECT_NEAR(conditional_intensity(mod, h, u), conditional_intensity(plain, h, u), 1e-12);
    EXPECT_NEAR(integrated_intensity(mod, h, u), integrated_intensity(plain, h, u), 1e-12);
  }
}

TEST(ModifiedHawkes, DivergingJunctionHalves) {
  const auto tree = load("tree.json");
  // Segment 1 ends at b, which has out-degree 2.
  const PointPattern h(tree, std::vector<PointRecord>{{tree->segment_index(1), 1.0, 0}});
  const ModifiedHawkesModel mod({1.0, 0.8, 3.0});
  const HawkesModel plain({1.0, 0.8, 3.0});
  const NetworkLocation u{tree->segment_index(5), 0.5};
  EXPECT_NEAR(conditional_intensity(mod, h, u) - 1.0, 0.5 * (conditional_intensity(plain, h, u) - 1.0), 1e-12);
}

TEST(ModifiedHawkes, EqualArmDiamondRecombines) {
  const auto net = load("diamond_short.json");
  const PointPattern h(net, std::vector<PointRecord>{{net->segment_index(1), 0.5, 0}});
  const ModifiedHawkesModel mod({1.0, 0.8, 2.0});
  const HawkesModel plain({1.0, 0.8, 2.0});
  const NetworkLocation u{net->segment_index(4), 0.5};
  EXPECT_NEAR(conditional_intensity(mod, h, u), conditional_intensity(plain, h, u), 1e-12);
}

TEST(NonlinearHawkes, Basics) {
  const auto net = chain({2.0});
  const NonlinearHawkesModel model({0.3, -1.0, 5.0});
  EXPECT_NEAR(conditional_intensity(model, empty_on(net), {0, 0.5}), std::exp(0.3), 1e-12);
  const PointPattern h(net, std::vector<PointRecord>{{0, 0.5, 0}});
  EXPECT_NEAR(conditional_intensity(model, h, {0, 0.5 + 1e-12}), std::exp(0.3 - 5.0), 1e-9);
  const NonlinearHawkesModel flat({0.3, 0.0, 5.0});
  EXPECT_NEAR(integrated_intensity(flat, h, {0, 1.7}), 1.7 * std::exp(0.3), 1e-10);
}

TEST(SelfCorrecting, Basics) {
  const auto net = chain({2.0, 1.0});
  const SelfCorrectingModel model({0.7, 0.4});
  EXPECT_NEAR(conditional_intensity(model, empty_on(net), {0, 1e-14}), 1.0, 1e-12);
  EXPECT_NEAR(integrated_intensity(model, empty_on(net), {0, 1.5}), std::expm1(0.7 * 1.5) / 0.7, 1e-12);
  const SelfCorrectingModel poisson_like({0.7, 0.0});
  const PointPattern h(net, std::vector<PointRecord>{{0, 0.5, 0}, {0, 1.5, 0}});
  EXPECT_NEAR(conditional_intensity(poisson_like, h, {1, 0.5}), std::exp(0.7 * 2.5), 1e-12);
  // Two points on the root path.
  EXPECT_NEAR(conditional_intensity(model, h, {1, 0.5}), std::exp(0.7 * 2.5 - 0.4 * 2.0), 1e-12);
}

TEST(SelfCorrecting, NeedsRoot) {
  NetworkSpec spec;
  spec.vertices = {{1, {}}, {2, {}}};
  spec.segments = {{1, 1, 2, 1.0}};
  const auto net = std::make_shared<const Network>(Network::build(spec));
  try {
    conditional_intensity(SelfCorrectingModel({1.0, 0.1}), empty_on(net), {0, 0.5});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::NoRootDesignated);
  }
}

TEST(Multitype, EmptyHistoryAndMarkDistribution) {
  const auto net = chain({2.0});
  const MultitypeHawkesModel model({{1.0, 3.0}, {{0.2, 0.1}, {0.3, 0.4}}, {{2.0, 2.0}, {2.0, 2.0}}});
  const PointPattern h(net, std::vector<PointRecord>{}, 2, true);
  EXPECT_DOUBLE_EQ(conditional_intensity(model, h, {0, 1.0}, 1), 3.0);
  const auto f = mark_distribution(model, h, {0, 1.0});
  EXPECT_NEAR(f[0], 0.25, 1e-15);
  EXPECT_NEAR(f[1], 0.75, 1e-15);
}

TEST(Multitype, SingleTypeEqualsHawkes) {
  SplitMix64 rng(3);
  const auto net = load("diamond.json");
  const PointPattern h = testing::random_pattern(net, rng);
  const MultitypeHawkesModel mt({{1.2}, {{0.6}}, {{4.0}}});
  const HawkesModel plain({1.2, 0.6, 4.0});
  for (int k = 0; k < 20; ++k) {
    const std::size_t s = rng() % net->segment_count();
    const NetworkLocation u{s, net->length(s) * rng.uniform()};
    EXPECT_NEAR(conditional_intensity(mt, h, u), conditional_intensity(plain, h, u), 1e-12);
    EXPECT_NEAR(integrated_intensity(mt, h, u), integrated_intensity(plain, h, u), 1e-12);
  }
}

TEST(Multitype, DiagonalSplitsIntoIndependentHawkes) {
  SplitMix64 rng(4);
  const auto net = load("diamond.json");
  const PointPattern h = testing::random_pattern(net, rng, 4, 2);
  const MultitypeHawkesModel mt({{1.0, 2.0}, {{0.5, 0.0}, {0.0, 0.3}}, {{3.0, 1.0}, {1.0, 6.0}}});
  const HawkesModel first({1.0, 0.5, 3.0});
  const HawkesModel second({2.0, 0.3, 6.0});
  const PointPattern h0 = h.restricted_to_mark(0);
  const PointPattern h1 = h.restricted_to_mark(1);
  for (int k = 0; k < 20; ++k) {
    const std::size_t s = rng() % net->segment_count();
    const NetworkLocation u{s, net->length(s) * rng.uniform()};
    EXPECT_NEAR(conditional_intensity(mt, h, u, 0), conditional_intensity(first, h0, u), 1e-12);
    EXPECT_NEAR(conditional_intensity(mt, h, u, 1), conditional_intensity(second, h1, u), 1e-12);
    EXPECT_NEAR(integrated_intensity(mt, h, u, 1), integrated_intensity(second, h1, u), 1e-12);
  }
}

// Closed forms against direct-summation intensities and quadrature.
class OracleAgreement : public ::testing::TestWithParam<int> {};

std::unique_ptr<IntensityModel> model_for(int which) {
  switch (which) {
    case 0: return std::make_unique<HawkesModel>(HawkesParams{0.7, 0.6, 2.5});
    case 1: return std::make_unique<ModifiedHawkesModel>(HawkesParams{0.7, 0.6, 2.5});
    case 2: return std::make_unique<NonlinearHawkesModel>(NonlinearHawkesParams{0.2, -0.4, 2.5});
    case 3: return std::make_unique<SelfCorrectingModel>(SelfCorrectingParams{0.5, 0.3});
    default:
      return std::make_unique<MultitypeHawkesModel>(
          MultitypeHawkesParams{{0.5, 0.8}, {{0.3, 0.2}, {0.1, 0.4}}, {{2.0, 3.0}, {1.5, 2.5}}});
  }
}

TEST_P(OracleAgreement, IntensityAndIntegral) {
  SplitMix64 rng(100 + static_cast<std::uint64_t>(GetParam()));
  const auto model = model_for(GetParam());
  const int marks = model->mark_count();
  for (int trial = 0; trial < 20; ++trial) {
    const auto net = testing::random_network(rng);
    const PointPattern h = testing::random_pattern(net, rng, 3, marks);
    const std::size_t s = rng() % net->segment_count();
    const NetworkLocation u{s, net->length(s) * rng.uniform()};
    const int m = static_cast<int>(rng() % static_cast<std::uint64_t>(marks));
    const double lambda = conditional_intensity(*model, h, u, m);
    EXPECT_NEAR(lambda, testing::oracle_intensity(*model, h, u, m), 1e-10 * lambda);
    const double big = integrated_intensity(*model, h, u, m);
    EXPECT_NEAR(big, testing::oracle_integrated(*model, h, s, u.offset, m), 1e-8 * std::max(big, 1e-300));
  }
}

INSTANTIATE_TEST_SUITE_P(Models, OracleAgreement, ::testing::Range(0, 5));

TEST(ThinningBounds, DominateOnGrid) {
  SplitMix64 rng(8);
  for (int which = 0; which < 5; ++which) {
    const auto model = model_for(which);
    for (int trial = 0; trial < 20; ++trial) {
      const auto net = testing::random_network(rng);
      const PointPattern h = testing::random_pattern(net, rng, 3, model->mark_count());
      const std::size_t s = rng() % net->segment_count();
      const auto pts = h.on_segment(s);
      // Just after an own point, when there is one.
      const double t = pts.empty() ? 0.0 : pts[0].offset;
      const ThinningBound b = thinning_bounds(*model, h, {s, t});
      ASSERT_GT(b.horizon, 0.0);
      auto ev = model->on_segment(*net, s, h.by_segment());
      for (const auto& p : pts) {
        if (p.offset <= t) ev->add_point(p.offset, p.mark);
      }
      // The evaluator holds no points beyond t, matching what the bound covers.
      for (int g = 1; g <= 200; ++g) {
        const double x = t + b.horizon * g / 200.0;
        EXPECT_LE(ev->ground_intensity(x), b.bound * (1.0 + 1e-12));
      }
    }
  }
}

TEST(ThinningBounds, HawkesJustAfterPoint) {
  const auto net = chain({2.0});
  const PointPattern h(net, std::vector<PointRecord>{{0, 0.5, 0}});
  const ThinningBound b = thinning_bounds(HawkesModel({1.0, 0.8, 5.0}), h, {0, 0.5});
  EXPECT_NEAR(b.bound, 1.0 + 0.8 * 5.0, 1e-12);
}

TEST(ThinningBounds, SelfCorrectingUsesSegmentEnd) {
  const auto net = chain({2.0});
  const PointPattern h(net, std::vector<PointRecord>{{0, 0.5, 0}});
  const ThinningBound b = thinning_bounds(SelfCorrectingModel({0.7, 0.4}), h, {0, 0.5});
  EXPECT_NEAR(b.bound, std::exp(0.7 * 2.0 - 0.4), 1e-12);
  EXPECT_NEAR(b.horizon, 1.5, 1e-15);
}

TEST(ModelJson, RoundTrip) {
  for (int which = 0; which < 5; ++which) {
    const auto model = model_for(which);
    const auto again = parse_model_json(model_to_json(*model));
    EXPECT_EQ(again->family(), model->family());
    EXPECT_EQ(again->parameters(), model->parameters());
  }
  const auto p = parse_model_json(R"({"model": "poisson", "params": {"lambda": 2}})");
  EXPECT_EQ(p->parameters(), std::vector<double>{2.0});
  EXPECT_THROW(parse_model_json(R"({"model": "poisson", "params": {"rate": 2}})"), Error);
  EXPECT_THROW(parse_model_json(R"({"model": "cox", "params": {}})"), Error);
}

}  // namespace
}  // namespace dalnet
