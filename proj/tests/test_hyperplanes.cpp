#include <gtest/gtest.h>

#include <random>

#include "bfs_oracle.hpp"
#include "fixtures.hpp"
#include "qmtl/hyperplanes.hpp"

using namespace qmtl;

namespace {

using GEdge = OrientedEdge<NormalForm>;

template <class B>
OrientedEdge<typename B::Vertex> E(const B& X, const std::string& s) {
  auto [p, q] = X.parse_edge(s);
  return {p, q};
}

using fx::random_edge;

}  // namespace

TEST(Hyperplanes, SameHyperplaneExamples) {
  GraphProduct X(fx::raag_path3());
  Hyperplanes<GraphProduct> H(X);
  EXPECT_TRUE(H.same_hyperplane(E(X, "1+a"), E(X, "b+a")));
  EXPECT_TRUE(H.same_hyperplane(E(X, "1+a"), E(X, "a+a")));
  EXPECT_FALSE(H.same_hyperplane(E(X, "1+a"), E(X, "c+a")));
}

TEST(Hyperplanes, TransverseExamples) {
  GraphProduct X(fx::raag_path3());
  Hyperplanes<GraphProduct> H(X);
  EXPECT_TRUE(H.transverse(H.hyp(E(X, "1+a")), H.hyp(E(X, "1+b"))));
  EXPECT_FALSE(H.transverse(H.hyp(E(X, "1+a")), H.hyp(E(X, "1+c"))));
  EXPECT_TRUE(H.transverse_scan(E(X, "1+a"), E(X, "1+b")));
  EXPECT_FALSE(H.transverse_scan(E(X, "1+a"), E(X, "1+c")));
  Staircase S({3, 1, 1});
  Hyperplanes<Staircase> HS(S);
  EXPECT_FALSE(HS.transverse(HS.hyp({0, 0}, {0, 1}), HS.hyp({1, 1}, {1, 2})));
  EXPECT_TRUE(HS.transverse(HS.hyp({0, 1}, {0, 2}), HS.hyp({0, 1}, {1, 1})));
}

TEST(Hyperplanes, CarrierExamples) {
  GraphProduct X(fx::raag_path3());
  Hyperplanes<GraphProduct> H(X);
  auto e = E(X, "b+a");
  EXPECT_TRUE(H.carrier_contains(X.basepoint(), H.hyp(e)));
  EXPECT_TRUE(H.carrier_contains_semantic(X.basepoint(), e));
  EXPECT_FALSE(H.carrier_contains(X.parse_vertex("c"), H.hyp(E(X, "1+a"))));
  EXPECT_FALSE(H.carrier_contains_semantic(X.parse_vertex("c"), E(X, "1+a")));
  EXPECT_TRUE(H.carrier_contains(e.tail, H.hyp(e)));
}

TEST(Hyperplanes, MinPairExamples) {
  GraphProduct X(fx::dinf());
  Hyperplanes<GraphProduct> H(X);
  auto mp = H.carrier_min_pair(H.hyp(E(X, "1+u")), H.hyp(E(X, "u v+u")));
  EXPECT_EQ(mp.x, X.parse_vertex("u"));
  EXPECT_EQ(mp.x2, X.parse_vertex("u v"));
  EXPECT_EQ(mp.dist, 1u);
  EXPECT_EQ(H.carrier_min_pair(H.hyp(E(X, "1+u")), H.hyp(E(X, "u+v"))).dist, 0u);
}

TEST(Hyperplanes, ContactExamples) {
  GraphProduct X(fx::raag_path3());
  Hyperplanes<GraphProduct> H(X);
  EXPECT_TRUE(H.in_contact(H.hyp(E(X, "1+a")), H.hyp(E(X, "1+c"))));
  EXPECT_THROW(H.in_contact(H.hyp(E(X, "1+a")), H.hyp(E(X, "b+a"))), ContractViolation);
  GraphProduct D(fx::dinf());
  Hyperplanes<GraphProduct> HD(D);
  EXPECT_FALSE(HD.in_contact(HD.hyp(E(D, "1+u")), HD.hyp(E(D, "u v+u"))));
}

TEST(Hyperplanes, StrongSeparationExamples) {
  GraphProduct D(fx::dinf());
  Hyperplanes<GraphProduct> HD(D);
  EXPECT_TRUE(HD.strongly_separated(HD.hyp(E(D, "1+u")), HD.hyp(E(D, "u v+u"))));
  GraphProduct X(fx::raag_path3());
  Hyperplanes<GraphProduct> H(X);
  EXPECT_FALSE(H.strongly_separated(H.hyp(E(X, "1+a")), H.hyp(E(X, "1+c"))));
  GraphProduct F(fx::f2());
  Hyperplanes<GraphProduct> HF(F);
  EXPECT_TRUE(HF.strongly_separated(HF.hyp(E(F, "1+a")), HF.hyp(E(F, "a b+a"))));
}

TEST(Hyperplanes, SeparatorsAndCounts) {
  GraphProduct X(fx::raag_path3());
  Hyperplanes<GraphProduct> H(X);
  auto seps = H.separators(X.basepoint(), X.parse_vertex("a b c"));
  ASSERT_EQ(seps.size(), 3u);
  EXPECT_EQ(X.label_name(seps[0].label), "a");
  EXPECT_EQ(X.label_name(seps[1].label), "b");
  EXPECT_EQ(X.label_name(seps[2].label), "c");
  EXPECT_EQ(H.separators(X.basepoint(), X.parse_vertex("a^2")).size(), 1u);
  EXPECT_TRUE(H.separators(X.basepoint(), X.basepoint()).empty());
  EXPECT_EQ(H.ss_count(H.hyp(E(X, "1+a")), H.hyp(E(X, "1+c"))), 0u);
  EXPECT_EQ(H.ss_count(H.hyp(E(X, "1+a")), H.hyp(E(X, "1+b"))), 0u);

  // five separators on the line, strictly separated only two apart
  GraphProduct D(fx::dinf());
  Hyperplanes<GraphProduct> HD(D);
  EXPECT_EQ(HD.ss_count(HD.hyp(E(D, "1+u")), HD.hyp(E(D, "u v u v u v+u"))), 3u);
}

TEST(Hyperplanes, KeysAgreeWithSameHyperplane) {
  std::mt19937 rng(21);
  std::size_t same = 0, total = 0;
  for (auto P : {fx::raag_path3(), fx::racg_path4(), fx::s3_edge(), fx::raag_c4(), fx::z3_path3()}) {
    GraphProduct X(P);
    Hyperplanes<GraphProduct> H(X);
    for (int it = 0; it < 300; ++it) {
      auto e = random_edge(X, rng, it % 3);
      // a nearby edge: translate e by a short word, or pick a random one
      GEdge f;
      if (it % 2) {
        auto w = fx::random_nf(P, rng, 1 + it % 2);
        auto t = nf_mul(P, e.tail, nf_mul(P, w, nf_inv(P, e.tail)));
        f = {nf_mul(P, t, e.tail), nf_mul(P, t, e.head)};
      } else {
        f = random_edge(X, rng, it % 3);
      }
      bool by_key = H.hyp(e).key == H.hyp(f).key;
      EXPECT_EQ(by_key, H.same_hyperplane(e, f));
      EXPECT_EQ(H.same_hyperplane(e, f), H.same_hyperplane(f, e));
      same += by_key;
      ++total;
    }
  }
  EXPECT_GE(total, 1000u);
  EXPECT_GT(same, 100u);
}

TEST(Hyperplanes, SameHyperplaneIsAnEquivalence) {
  std::mt19937 rng(4);
  for (auto P : {fx::raag_path3(), fx::racg_path4()}) {
    GraphProduct X(P);
    Hyperplanes<GraphProduct> H(X);
    std::vector<GEdge> pool;
    for (int i = 0; i < 40; ++i) pool.push_back(random_edge(X, rng, i % 3));
    for (const auto& a : pool) {
      EXPECT_TRUE(H.same_hyperplane(a, a));
      for (const auto& b : pool)
        for (const auto& c : pool)
          if (H.same_hyperplane(a, b) && H.same_hyperplane(b, c)) EXPECT_TRUE(H.same_hyperplane(a, c));
    }
  }
}

TEST(Hyperplanes, MinPairAgreesWithScanAndBruteForce) {
  std::mt19937 rng(8);
  for (auto P : {fx::racg_path4(), fx::dinf(), fx::z3_path3()}) {
    GraphProduct X(P);
    Hyperplanes<GraphProduct> H(X);
    auto gens = fx::finite_generators(P, 1);
    for (int it = 0; it < 40; ++it) {
      auto e = random_edge(X, rng, it % 3), f = random_edge(X, rng, it % 4);
      if (H.same_hyperplane(e, f)) continue;
      auto mp = H.carrier_min_pair(H.hyp(e), H.hyp(f));
      EXPECT_TRUE(H.carrier_contains_semantic(mp.x, e));
      EXPECT_TRUE(H.carrier_contains_semantic(mp.x2, f));
      EXPECT_EQ(mp.dist, H.carrier_min_pair_scan(e, f).dist);
      // brute force over a ball that contains both gates
      std::size_t R = X.distance(e.tail, f.tail);
      auto ball = fx::ball(P, e.tail, R, gens);
      std::vector<NormalForm> inA, inB;
      for (const auto& [z, d] : ball) {
        if (H.carrier_contains_semantic(z, e)) inA.push_back(z);
        if (H.carrier_contains_semantic(z, f)) inB.push_back(z);
      }
      std::size_t best = SIZE_MAX;
      for (const auto& a : inA)
        for (const auto& b : inB) best = std::min(best, X.distance(a, b));
      EXPECT_EQ(mp.dist, best);
    }
  }
}

TEST(Hyperplanes, TransverseAgreesWithScan) {
  std::mt19937 rng(12);
  std::size_t hits = 0;
  for (auto P : {fx::raag_path3(), fx::racg_path4(), fx::s3_edge()}) {
    GraphProduct X(P);
    Hyperplanes<GraphProduct> H(X);
    for (int it = 0; it < 80; ++it) {
      auto e = random_edge(X, rng, it % 3), f = random_edge(X, rng, it % 3);
      if (H.same_hyperplane(e, f)) continue;
      bool t = H.transverse(H.hyp(e), H.hyp(f));
      EXPECT_EQ(t, H.transverse_scan(e, f));
      if (t) {
        ++hits;
        EXPECT_TRUE(P.graph.adjacent(static_cast<std::size_t>(X.edge_label(e.tail, e.head)),
                                     static_cast<std::size_t>(X.edge_label(f.tail, f.head))));
      }
    }
  }
  EXPECT_GT(hits, 5u);
}

TEST(Hyperplanes, StaircaseAgreesWithScan) {
  Staircase S({3, 2, 1});
  Hyperplanes<Staircase> H(S);
  std::vector<OrientedEdge<Point>> pool;
  for (long long x = -2; x <= 4; ++x)
    for (long long y = S.floor_at(x); y <= S.floor_at(x) + 3; ++y)
      for (const auto& m : S.clique_menu({x, y})) pool.push_back({{x, y}, m});
  std::mt19937 rng(1);
  for (int it = 0; it < 300; ++it) {
    auto e = pool[rng() % pool.size()], f = pool[rng() % pool.size()];
    EXPECT_EQ(H.hyp(e).key == H.hyp(f).key, H.same_hyperplane(e, f));
    if (H.same_hyperplane(e, f)) continue;
    EXPECT_EQ(H.transverse(H.hyp(e), H.hyp(f)), H.transverse_scan(e, f));
    EXPECT_EQ(H.carrier_min_pair(H.hyp(e), H.hyp(f)).dist, H.carrier_min_pair_scan(e, f).dist);
  }
}
