#include <gtest/gtest.h>

#include "suite.hpp"

using namespace ncfeyn;

namespace {

struct Case {
  RibbonGraph graph;
  FaceData fd;
  std::vector<HyperTree> hts;
  ModelParams p;
  RealPoly hu;
};

Case make(const std::string& name, Model m, const Rational& omega) {
  Case c{suite::load(name, m).graph, {}, {}, suite::params(m, omega), RealPoly(0)};
  c.fd = trace_faces(c.graph);
  c.hts = hypertrees(c.graph, c.fd);
  c.hu = compute_HU(build_gaussian(c.graph, c.p));
  return c;
}

}  // namespace

TEST(Bounds, BubbleStrictByHand) {
  auto c = make("bubble", Model::GW, frac(1, 2));
  const auto r = gw_bound_check(c.hu, c.hts, c.fd.genus, c.p, BoundMode::Strict);
  ASSERT_EQ(r.rows.size(), 2u);
  for (const auto& row : r.rows) {
    EXPECT_EQ(row.coefficient, frac(5, 4));
    EXPECT_EQ(row.bound, 1);
    EXPECT_TRUE(row.pass);
  }
  EXPECT_EQ(*r.lambda, frac(5, 4));
  EXPECT_EQ(*r.coefficient_lambda, frac(5, 4));
  EXPECT_TRUE(r.pass);
}

TEST(Bounds, LambdaScalesWithHU) {
  for (const std::string name : {"bubble", "chain3", "genus1_vacuum"}) {
    auto c = make(name, Model::GW, frac(1, 2));
    const auto a = gw_bound_check(c.hu, c.hts, c.fd.genus, c.p, BoundMode::Projective);
    const auto b = gw_bound_check(c.hu * frac(3, 7), c.hts, c.fd.genus, c.p, BoundMode::Projective);
    ASSERT_TRUE(a.lambda && b.lambda);
    EXPECT_EQ(*b.lambda, *a.lambda * frac(3, 7)) << name;
  }
}

TEST(Bounds, StrictPassMeansLambdaAtLeastOne) {
  for (const auto& e : suite::topologies())
    for (const auto& w : suite::omegas()) {
      auto c = make(e.name, Model::GW, w);
      const auto r = gw_bound_check(c.hu, c.hts, c.fd.genus, c.p, BoundMode::Strict);
      if (c.graph.num_lines() == 0) continue;
      ASSERT_TRUE(r.lambda.has_value());
      EXPECT_EQ(r.pass, *r.lambda >= 1) << e.name;
      const auto proj = gw_bound_check(c.hu, c.hts, c.fd.genus, c.p, BoundMode::Projective);
      EXPECT_TRUE(proj.pass) << e.name;
      EXPECT_GT(sgn(*proj.lambda), 0);
    }
}

TEST(Bounds, OddOrderHyperTreesVanishAtGenusOne) {
  auto c = make("genus1_vacuum", Model::GW, frac(1, 2));
  const auto r = gw_bound_check(c.hu, c.hts, c.fd.genus, c.p, BoundMode::Projective);
  ASSERT_EQ(r.rows.size(), c.hts.size());
  bool saw_odd = false;
  for (std::size_t i = 0; i < r.rows.size(); ++i) {
    if (c.hts[i].k % 2) {
      saw_odd = true;
      EXPECT_EQ(sgn(r.rows[i].coefficient), 0);
      EXPECT_TRUE(r.rows[i].charged_to.has_value());
    } else {
      EXPECT_GT(sgn(r.rows[i].coefficient), 0);
    }
  }
  EXPECT_TRUE(saw_odd);
  EXPECT_TRUE(r.pass);
}

TEST(Bounds, LSZNeedsProductForStrictMode) {
  auto c = make("bubble", Model::LSZ, frac(1, 2));
  EXPECT_THROW(lsz_bound_check(c.hu, c.hts, c.fd.genus, c.fd.F, c.p, BoundMode::Strict), ConfigurationError);
  const auto r = lsz_bound_check(c.hu, c.hts, c.fd.genus, c.fd.F, c.p, BoundMode::Projective);
  EXPECT_TRUE(r.pass);
  const auto s = lsz_bound_check(c.hu, c.hts, c.fd.genus, c.fd.F, c.p, BoundMode::Strict, Rational(1));
  EXPECT_EQ(s.rows.size(), r.rows.size());
}

TEST(Bounds, NegativeCoefficientFails) {
  const RealPoly hu = RealPoly::monomial({1}, Rational(1)) - RealPoly::monomial({2}, Rational(2));
  const auto r = gw_bound_check(hu, {HyperTree{{0}, 0}}, 0, suite::params(Model::GW, frac(1, 2)), BoundMode::Projective);
  EXPECT_FALSE(r.pass);
  EXPECT_FALSE(r.notes.empty());
}

TEST(PowerCounting, SuiteTable) {
  struct Row {
    std::string name;
    int F, L, g, N;
    Rational omega;
  };
  const std::vector<Row> table = {
      {"vertex", 1, 0, 0, 4, 0},        {"tadpole", 2, 1, 0, 2, -1},      {"bubble", 2, 2, 0, 4, 0},
      {"chain3", 3, 4, 0, 4, 0},        {"planar_vacuum", 4, 4, 0, 0, -2}, {"genus1_vacuum", 2, 4, 1, 0, 2},
      {"genus1_four_point", 1, 4, 1, 4, 4},
  };
  for (const auto& row : table) {
    auto c = make(row.name, Model::GW, frac(1, 2));
    const auto pc = power_counting(c.graph, c.fd, c.hu);
    EXPECT_EQ(pc.F, row.F) << row.name;
    EXPECT_EQ(pc.L, row.L) << row.name;
    EXPECT_EQ(pc.g, row.g) << row.name;
    EXPECT_EQ(pc.N, row.N) << row.name;
    EXPECT_EQ(pc.omega, row.omega) << row.name;
    EXPECT_TRUE(pc.consistent()) << row.name;
  }
}

TEST(RootInvariance, LeadingSupportDoesNotDependOnRoot) {
  for (const std::string name : {"bubble", "chain3"})
    for (Model m : {Model::GW, Model::LSZ})
      for (const Rational& w : {frac(1, 4), frac(1, 2)}) {
        const auto r = root_invariance_check(suite::load(name, m).graph, suite::params(m, w));
        EXPECT_TRUE(r.invariant) << name;
        EXPECT_EQ(r.roots.size(), r.supports.size());
      }
}
