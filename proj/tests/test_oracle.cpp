#include <gtest/gtest.h>

#include <random>
#include <set>

#include "fixtures.hpp"
#include "qmtl/hypermetric.hpp"
#include "qmtl/oracle.hpp"

using namespace qmtl;

namespace {
using GP = GraphProduct;
}

TEST(Oracle, DownsetCount) {
  auto P = fx::raag_path3();
  EXPECT_EQ(oracle::downset_count(P, parse_word(P, "a b c")), 6u);
  EXPECT_EQ(oracle::downset_count(P, parse_word(P, "a")), 2u);
  EXPECT_EQ(oracle::downset_count(P, NormalForm{}), 1u);
  // pairwise commuting syllables
  auto K = fx::make({"a", "b", "c", "d"}, {{"a", "b"}, {"a", "c"}, {"a", "d"}, {"b", "c"}, {"b", "d"}, {"c", "d"}},
                    VertexGroupSpec::integers());
  EXPECT_EQ(oracle::downset_count(K, parse_word(K, "a b c d")), 16u);
  EXPECT_EQ(oracle::downset_count(K, parse_word(K, "a b^2")), 4u);
}

TEST(Oracle, DownsetCountMatchesInterval) {
  std::mt19937 rng(2);
  for (auto P : {fx::raag_path3(), fx::racg_path4(), fx::z3_path3()}) {
    GP X(P);
    for (int it = 0; it < 30; ++it) {
      auto g = fx::random_nf(P, rng, it % 7);
      EXPECT_EQ(X.interval(X.basepoint(), g).size(), oracle::downset_count(P, g)) << X.vertex_str(g);
    }
  }
}

TEST(Oracle, MedianTriangleStaircase) {
  Staircase S({3, 1, 1});
  auto m = oracle::median_triangle(S, Point{0, 0}, Point{4, 5}, Point{2, 3});
  EXPECT_EQ(m.a1, m.a2);
  EXPECT_EQ(m.a2, m.a3);
  auto d = oracle::median_triangle(S, Point{0, 0}, Point{0, 0}, Point{3, 4});
  EXPECT_EQ(d.a1, (Point{0, 0}));
  EXPECT_EQ(d.a3, (Point{0, 0}));
}

TEST(Oracle, MedianTriangleRaag) {
  GP X(fx::raag_path3());
  auto m = oracle::median_triangle(X, X.basepoint(), X.parse_vertex("a b"), X.parse_vertex("a c"));
  // a is shared, b and c commute: the median is the single point a
  EXPECT_EQ(X.vertex_str(m.a1), "a");
  EXPECT_EQ(m.a1, m.a2);
  EXPECT_EQ(m.a2, m.a3);

  // a nondegenerate triangle: three distinct elements of one clique
  GP Z(fx::z3_path3());
  auto t = oracle::median_triangle(Z, Z.basepoint(), Z.parse_vertex("a"), Z.parse_vertex("a^2"));
  EXPECT_EQ(Z.vertex_str(t.a1), "1");
  EXPECT_EQ(Z.vertex_str(t.a2), "a");
  EXPECT_EQ(Z.vertex_str(t.a3), "a^2");
}

TEST(Oracle, RatioEstimate) {
  auto lin = oracle::ratio_estimate([](long long n) { return std::optional<std::size_t>(2 * n); }, 12);
  ASSERT_TRUE(lin.slope);
  EXPECT_EQ(*lin.slope, Rational(2));
  EXPECT_EQ(lin.period, 1);
  // 3 every 2 steps
  auto half = oracle::ratio_estimate([](long long n) { return std::optional<std::size_t>(3 * n / 2 + 1); }, 12);
  ASSERT_TRUE(half.slope);
  EXPECT_EQ(*half.slope, Rational(3, 2));
  auto none = oracle::ratio_estimate([](long long) { return std::optional<std::size_t>(); }, 12);
  EXPECT_FALSE(none.slope);

  GP X(fx::dinf());
  Hyperplanes<GP> H(X);
  Omega<GP> W(H, OmegaMode::contact);
  auto [p, q] = X.parse_edge("1+u");
  auto J = H.hyp(p, q);
  auto g = X.parse_iso("u v");
  auto s = oracle::ratio_estimate([&](long long n) { return W.displacement_value(J, g, n); }, 10);
  for (const auto& [n, d] : s.samples) EXPECT_EQ(d, static_cast<std::size_t>(2 * n));
  EXPECT_EQ(s.slope, Rational(2));
}

TEST(Oracle, ReferenceDistanceTransversePair) {
  GP X(fx::racg_path4());
  Hyperplanes<GP> H(X);
  auto [a0, a1] = X.parse_edge("1+a");
  auto [b0, b1] = X.parse_edge("1+b");
  EXPECT_EQ(oracle::bfs_reference_distance(H, {a0, a1}, {b0, b1}, OmegaMode::crossing), 1u);
  EXPECT_EQ(oracle::bfs_reference_distance(H, {a0, a1}, {a1, a0}, OmegaMode::crossing), 0u);
}

TEST(Oracle, StaircaseWindow) {
  oracle::StaircaseWindow win({2, 1, 1}, 0, 3);
  auto A = win.hyperplane_of(0, 1, 0, 2), B = win.hyperplane_of(0, 1, 1, 1);
  ASSERT_TRUE(A && B);
  EXPECT_TRUE(win.transverse(*A, *B));
  EXPECT_TRUE(win.in_contact(*A, *B));
  EXPECT_EQ(win.distance(*A, *B, OmegaMode::crossing), 1u);
  EXPECT_FALSE(win.hyperplane_of(0, 0, 1, 0));  // leaves the region
  EXPECT_EQ(A, win.hyperplane_of(1, 1, 1, 2));
  // tangent at (0,1) without a square
  auto C = win.hyperplane_of(0, 0, 0, 1);
  EXPECT_FALSE(win.transverse(*C, *B));
  EXPECT_TRUE(win.in_contact(*C, *B));
}
