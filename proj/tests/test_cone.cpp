#include <gtest/gtest.h>

#include "test_util.hpp"
#include "toric/cone.hpp"

using namespace toric;

namespace {

Cone quadrant() { return cone_from_rays(2, {V({1, 0}), V({0, 1})}); }

std::vector<Cone> corpus() {
  return {
      quadrant(),
      cone_from_rays(2, {V({1, 0}), V({1, 2})}),
      cone_from_rays(2, {V({0, 1}), V({3, -2})}),
      cone_from_rays(2, {V({2, 1})}),
      cone_from_rays(3, {V({1, 0, 1}), V({0, 1, 1}), V({-1, 0, 1}), V({0, -1, 1})}),
      cone_from_rays(3, {V({1, 0, 0}), V({0, 1, 0}), V({1, 1, 2})}),
      cone_from_rays(3, {V({1, 0, 0}), V({0, 1, 0})}),
      cone_from_rays(3, {V({1, 2, 3})}),
      Cone::zero(3),
  };
}

}  // namespace

TEST(Primitive, Examples) {
  EXPECT_EQ(primitive(V({2, 4})), V({1, 2}));
  EXPECT_EQ(primitive(V({0, -3})), V({0, -1}));
  EXPECT_EQ(primitive(V({6, 10, 15})), V({6, 10, 15}));
  EXPECT_THROW(primitive(V({0, 0})), InputError);
}

TEST(ConeFromRays, Examples) {
  EXPECT_EQ(cone_from_rays(2, {V({1, 0}), V({0, 1}), V({1, 1})}).rays(), (std::vector<IntVector>{V({0, 1}), V({1, 0})}));
  EXPECT_THROW(cone_from_rays(2, {V({1, 0}), V({-1, 0})}), InputError);
  EXPECT_EQ(cone_from_rays(2, {V({2, 0}), V({0, 2})}), quadrant());
}

TEST(ConeFromRays, Idempotent) {
  for (const auto& c : corpus()) EXPECT_EQ(cone_from_rays(c.ambient_rank(), c.rays()), c);
}

TEST(Contains, Quadrant) {
  Cone q = quadrant();
  EXPECT_TRUE(q.contains(V({1, 1})));
  EXPECT_TRUE(q.relint_contains(V({1, 1})));
  EXPECT_TRUE(q.contains(V({1, 0})));
  EXPECT_FALSE(q.relint_contains(V({1, 0})));
  EXPECT_FALSE(q.contains(V({-1, 0})));
}

TEST(Contains, AgreesWithFeasibilityOracle) {
  for (const auto& c : corpus()) {
    const std::size_t n = c.ambient_rank();
    std::vector<long> x(n, -3);
    for (long den = 1; den <= 2; ++den) {
      std::fill(x.begin(), x.end(), -3);
      while (true) {
        RationalVector p;
        IntVector scaled;
        for (long v : x) {
          p.push_back(Rational(v, den));
          scaled.push_back(v);
        }
        for (auto& r : p) r.canonicalize();
        ASSERT_EQ(c.contains(p), oracle::in_cone(c.rays(), scaled)) << to_string(p);
        std::size_t j = 0;
        while (j < n && x[j] == 3) x[j++] = -3;
        if (j == n) break;
        ++x[j];
      }
    }
  }
}

TEST(Faces, Examples) {
  EXPECT_EQ(Cone::zero(2).faces().size(), 1u);
  EXPECT_EQ(cone_from_rays(2, {V({1, 0})}).faces().size(), 2u);
  EXPECT_EQ(quadrant().faces().size(), 4u);
  auto square = cone_from_rays(3, {V({1, 0, 1}), V({0, 1, 1}), V({-1, 0, 1}), V({0, -1, 1})});
  EXPECT_EQ(square.faces().size(), 10u);
}

TEST(Faces, SimplicialCount) {
  for (const auto& c : corpus())
    if (c.is_simplicial()) EXPECT_EQ(c.faces().size(), std::size_t{1} << c.rays().size());
}

TEST(Intersect, Examples) {
  EXPECT_EQ(intersect(quadrant(), quadrant()), quadrant());
  EXPECT_EQ(intersect(quadrant(), cone_from_rays(2, {V({0, 1}), V({-1, 0})})), cone_from_rays(2, {V({0, 1})}));
  Cone a = cone_from_rays(2, {V({1, 0}), V({1, 2})});
  Cone b = cone_from_rays(2, {V({1, 1}), V({0, 1})});
  EXPECT_EQ(intersect(a, b), cone_from_rays(2, {V({1, 1}), V({1, 2})}));
}

TEST(Intersect, CommutativeAndPointwise) {
  auto cs = corpus();
  for (const auto& a : cs)
    for (const auto& b : cs) {
      if (a.ambient_rank() != b.ambient_rank()) continue;
      Cone ab = intersect(a, b);
      EXPECT_EQ(ab, intersect(b, a));
      std::vector<long> x(a.ambient_rank(), -2);
      while (true) {
        IntVector p(x.begin(), x.end());
        ASSERT_EQ(ab.contains(p), oracle::in_cone(a.rays(), p) && oracle::in_cone(b.rays(), p));
        std::size_t j = 0;
        while (j < x.size() && x[j] == 2) x[j++] = -2;
        if (j == x.size()) break;
        ++x[j];
      }
    }
}

TEST(Simplicial, Examples) {
  EXPECT_TRUE(quadrant().is_simplicial());
  EXPECT_TRUE(cone_from_rays(2, {V({1, 0}), V({0, 1}), V({1, 1})}).is_simplicial());
  EXPECT_FALSE(cone_from_rays(3, {V({1, 0, 1}), V({0, 1, 1}), V({-1, 0, 1}), V({0, -1, 1})}).is_simplicial());
}

TEST(Smooth, Examples) {
  EXPECT_TRUE(quadrant().is_smooth());
  EXPECT_FALSE(cone_from_rays(2, {V({1, 0}), V({1, 2})}).is_smooth());
  EXPECT_TRUE(cone_from_rays(3, {V({1, 2, 3})}).is_smooth());
  for (const auto& c : corpus())
    if (c.is_smooth()) EXPECT_TRUE(c.is_simplicial());
}

TEST(QuotientType, Examples) {
  auto t = quotient_type_2d(quadrant());
  EXPECT_EQ(t.order, 1);
  EXPECT_EQ(t.weight, 0);
  EXPECT_TRUE(t.is_smooth());

  auto a1 = quotient_type_2d(cone_from_rays(2, {V({0, 1}), V({2, -1})}));
  EXPECT_EQ(a1, (QuotientType{2, 1}));
  EXPECT_TRUE(a1.is_a_type());

  // cone((0,1), (3,-1)) is the 1/3(1,1) point; the A2 point is cone((0,1), (3,-2)).
  EXPECT_EQ(quotient_type_2d(cone_from_rays(2, {V({0, 1}), V({3, -1})})), (QuotientType{3, 1}));
  auto a2 = quotient_type_2d(cone_from_rays(2, {V({0, 1}), V({3, -2})}));
  EXPECT_EQ(a2, (QuotientType{3, 2}));
  EXPECT_TRUE(a2.is_a_type());

  EXPECT_THROW(quotient_type_2d(cone_from_rays(2, {V({1, 0})})), InputError);
}

TEST(QuotientType, AgreesWithNormalFormSearch) {
  auto rng = seeded(7);
  std::uniform_int_distribution<long> dist(-7, 7);
  int checked = 0;
  while (checked < 300) {
    IntVector u = V({dist(rng), dist(rng)}), v = V({dist(rng), dist(rng)});
    if (u[0] * v[1] - u[1] * v[0] == 0) continue;
    Cone c = cone_from_rays(2, {u, v});
    auto t = quotient_type_2d(c);
    auto [d, k] = oracle::quotient_type(c.rays()[0], c.rays()[1]);
    ASSERT_EQ(t.order, d) << to_string(u) << to_string(v);
    ASSERT_EQ(t.weight, k) << to_string(u) << to_string(v);
    ++checked;
  }
}
