#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>

#include "oracles.hpp"

namespace dalnet {
namespace {

std::shared_ptr<const Network> load(const char* name) {
  return std::make_shared<const Network>(read_network(std::filesystem::path(DALNET_DATA_DIR) / name));
}

std::shared_ptr<const Network> single(double length) {
  NetworkSpec spec;
  spec.root = 1;
  spec.vertices = {{1, {}}, {2, {}}};
  spec.segments = {{1, 1, 2, length}};
  return std::make_shared<const Network>(Network::build(spec));
}

TEST(Random, SplitMixIsDeterministicAndUniform) {
  SplitMix64 a(42), b(42);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a(), b());
  SplitMix64 rng(1);
  double sum = 0.0;
  for (int i = 0; i < 100000; ++i) {
    const double u = rng.uniform();
    ASSERT_GT(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
  }
  EXPECT_NEAR(sum / 100000.0, 0.5, 0.005);
  EXPECT_TRUE(std::isinf(rng.exponential(0.0)));
}

TEST(InverseStep, LinearCompensator) {
  const auto net = single(3.0);
  auto ev = PoissonModel(2.0).on_segment(*net, 0, PointPattern(net, std::vector<PointRecord>{}).by_segment());
  const auto t = inverse_step(*ev, 3.0, 0.0, 1.0, 1e-10);
  ASSERT_TRUE(t.has_value());
  EXPECT_NEAR(*t, 0.5, 1e-10);
  EXPECT_FALSE(inverse_step(*ev, 3.0, 0.0, 6.5, 1e-10).has_value());
}

TEST(InverseStep, HawkesAgainstQuadrature) {
  SplitMix64 rng(21);
  const HawkesModel model({1.0, 0.8, 5.0});
  for (int trial = 0; trial < 50; ++trial) {
    const auto net = testing::random_network(rng);
    const PointPattern h = testing::random_pattern(net, rng, 3);
    const std::size_t s = rng() % net->segment_count();
    auto ev = model.on_segment(*net, s, h.by_segment());
    const double length = net->length(s);
    const double target = ev->integrated(length, 0) * rng.uniform();
    const auto t = inverse_step(*ev, length, 0.0, target, 1e-10 * length);
    ASSERT_TRUE(t.has_value());
    // With no own points the compensator is the integral of the upstream-only intensity.
    const PointPattern upstream = history_before(h, {s, 0.0});
    const double check = testing::oracle_integrated(model, upstream, s, *t);
    EXPECT_NEAR(check, target, 1e-8 * std::max(1.0, target));
  }
}

TEST(OgataStep, PoissonAcceptsEverything) {
  const auto net = single(100.0);
  auto ev = PoissonModel(2.0).on_segment(*net, 0, PointPattern(net, std::vector<PointRecord>{}).by_segment());
  SplitMix64 rng(3);
  double t = 0.0;
  int accepted = 0;
  while (true) {
    const OgataStep step = ogata_step(*ev, 100.0, t, rng);
    if (step.kind == OgataStep::Kind::exhausted) break;
    ASSERT_EQ(step.kind, OgataStep::Kind::accepted);
    t = step.offset;
    ++accepted;
  }
  EXPECT_GT(accepted, 100);
}

TEST(OgataStep, CandidatePastEndIsExhausted) {
  const auto net = single(1e-9);
  auto ev = PoissonModel(1.0).on_segment(*net, 0, PointPattern(net, std::vector<PointRecord>{}).by_segment());
  SplitMix64 rng(3);
  EXPECT_EQ(ogata_step(*ev, 1e-9, 0.0, rng).kind, OgataStep::Kind::exhausted);
}

TEST(OgataStep, BrokenBoundIsReported) {
  class Broken final : public SegmentIntensity {
   public:
    double intensity(double, int) const override { return 10.0; }
    double integrated(double t, int) const override { return 10.0 * t; }
    ThinningBound thinning_bound(double t) const override { return {1.0, 5.0 - t}; }
    void add_point(double, int) override {}
  };
  Broken ev;
  SplitMix64 rng(1);
  try {
    for (int i = 0; i < 100; ++i) ogata_step(ev, 5.0, 0.0, rng);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::BoundViolation);
  }
}

TEST(Simulate, ZeroRateGivesEmptyPattern) {
  const auto net = load("diamond.json");
  for (auto algorithm : {Algorithm::inverse, Algorithm::ogata}) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      EXPECT_TRUE(simulate(PoissonModel(0.0), net, {algorithm, seed}).empty());
    }
  }
}

TEST(Simulate, PoissonMeanCount) {
  const auto net = single(10.0);
  for (auto algorithm : {Algorithm::inverse, Algorithm::ogata}) {
    const int reps = 10000;
    double sum = 0.0;
    for (int r = 0; r < reps; ++r) {
      sum += static_cast<double>(simulate(PoissonModel(1.0), net, {algorithm, static_cast<std::uint64_t>(r)}).size());
    }
    // Mean 10, standard error sqrt(10 / reps).
    EXPECT_NEAR(sum / reps, 10.0, 3.0 * std::sqrt(10.0 / reps));
  }
}

TEST(Simulate, Deterministic) {
  const auto net = load("diamond.json");
  const HawkesModel model({1.0, 0.8, 5.0});
  for (auto algorithm : {Algorithm::inverse, Algorithm::ogata}) {
    const PointPattern a = simulate(model, net, {algorithm, 7});
    const PointPattern b = simulate(model, net, {algorithm, 7});
    EXPECT_EQ(pattern_to_csv(a), pattern_to_csv(b));
    const PointPattern c = simulate(model, net, {algorithm, 8});
    EXPECT_NE(pattern_to_csv(a), pattern_to_csv(c));
  }
}

TEST(Simulate, PointsAreInterior) {
  const auto net = load("diamond.json");
  const SelfCorrectingModel model({0.4, 0.1});
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const PointPattern p = simulate(model, net, {Algorithm::inverse, seed});
    for (const auto& x : p.points()) {
      EXPECT_GT(x.offset, 0.0);
      EXPECT_LT(x.offset, net->length(x.segment));
    }
  }
}

TEST(Simulate, HawkesAlgorithmsAgreeOnMeanCount) {
  const auto net = load("diamond.json");
  const HawkesModel model({1.0, 0.8, 5.0});
  std::vector<double> inv, oga;
  for (std::uint64_t r = 0; r < 2000; ++r) {
    inv.push_back(static_cast<double>(simulate(model, net, {Algorithm::inverse, r}).size()));
    oga.push_back(static_cast<double>(simulate(model, net, {Algorithm::ogata, 100000 + r}).size()));
  }
  EXPECT_GT(ks_two_sample(inv, oga).p_value, 0.01);
}

TEST(SimulateMarked, IndependentTypesArePoisson) {
  const auto net = load("diamond.json");
  const MultitypeHawkesModel model({{0.5, 1.5}, {{0.0, 0.0}, {0.0, 0.0}}, {{1.0, 1.0}, {1.0, 1.0}}});
  const int reps = 2000;
  double n0 = 0.0, n1 = 0.0;
  for (int r = 0; r < reps; ++r) {
    const PointPattern p = simulate_marked(model, net, {Algorithm::ogata, static_cast<std::uint64_t>(r)});
    ASSERT_TRUE(p.marked());
    n0 += static_cast<double>(p.count_with_mark(0));
    n1 += static_cast<double>(p.count_with_mark(1));
  }
  const double length = net->total_length();
  EXPECT_NEAR(n0 / reps, 0.5 * length, 3.0 * std::sqrt(0.5 * length / reps));
  EXPECT_NEAR(n1 / reps, 1.5 * length, 3.0 * std::sqrt(1.5 * length / reps));
}

TEST(SimulateMarked, SymmetricTypesHaveEqualFrequencies) {
  const auto net = load("diamond.json");
  const MultitypeHawkesModel model({{1.0, 1.0}, {{0.3, 0.2}, {0.2, 0.3}}, {{4.0, 4.0}, {4.0, 4.0}}});
  double n0 = 0.0, total = 0.0;
  for (std::uint64_t r = 0; r < 1000; ++r) {
    const PointPattern p = simulate_marked(model, net, {Algorithm::inverse, r});
    n0 += static_cast<double>(p.count_with_mark(0));
    total += static_cast<double>(p.size());
  }
  EXPECT_NEAR(n0 / total, 0.5, 0.02);
}

TEST(SimulateMarked, SingleTypeMatchesUnmarkedLaw) {
  const auto net = load("diamond.json");
  const MultitypeHawkesModel mt({{1.0}, {{0.8}}, {{5.0}}});
  const HawkesModel plain({1.0, 0.8, 5.0});
  // Same seed, same draws: the single-type mark draw consumes no randomness.
  for (std::uint64_t r = 0; r < 20; ++r) {
    EXPECT_EQ(simulate_marked(mt, net, {Algorithm::inverse, r}).size(),
              simulate(plain, net, {Algorithm::inverse, r}).size());
  }
}

}  // namespace
}  // namespace dalnet
