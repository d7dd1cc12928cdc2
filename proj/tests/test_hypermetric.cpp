#include <gtest/gtest.h>

#include <cstdio>
#include <random>

#include "fixtures.hpp"
#include "qmtl/hypermetric.hpp"
#include "qmtl/oracle.hpp"

using namespace qmtl;

namespace {

using GP = GraphProduct;
using fx::random_edge;

template <class B>
HyperplaneHandle<typename B::Vertex> Hh(const Hyperplanes<B>& H, const std::string& s) {
  auto [p, q] = H.backend().parse_edge(s);
  return H.hyp(p, q);
}

}  // namespace

TEST(Hypermetric, ModeParsing) {
  EXPECT_EQ(parse_mode("crossing"), OmegaMode::crossing);
  EXPECT_EQ(parse_mode("contact"), OmegaMode::contact);
  EXPECT_THROW(parse_mode("both"), ConfigError);
}

TEST(Hypermetric, LineContactDistance) {
  GP X(fx::dinf());
  Hyperplanes<GP> H(X);
  Omega<GP> W(H, OmegaMode::contact);
  auto d = W.distance(Hh(H, "1+u"), Hh(H, "uv+u"));
  ASSERT_TRUE(d.value);
  EXPECT_EQ(*d.value, 2u);
  ASSERT_EQ(d.chain.size(), 3u);
  EXPECT_TRUE(H.same(d.chain[1], Hh(H, "u+v")));
}

TEST(Hypermetric, RacgPathCrossing) {
  GP X(fx::racg_path4());
  Hyperplanes<GP> H(X);
  Omega<GP> W(H, OmegaMode::crossing);
  auto d = W.distance(Hh(H, "1+a"), Hh(H, "1+d"));
  ASSERT_TRUE(d.value);
  EXPECT_EQ(*d.value, 3u);
  for (std::size_t i = 0; i + 1 < d.chain.size(); ++i) EXPECT_TRUE(H.transverse(d.chain[i], d.chain[i + 1]));
  EXPECT_EQ(W.distance(Hh(H, "1+a"), Hh(H, "1+b")).value, 1u);
}

TEST(Hypermetric, CrossingNeedsConnectedGraph) {
  GP X(fx::dinf());
  Hyperplanes<GP> H(X);
  EXPECT_THROW(Omega<GP>(H, OmegaMode::crossing), ConfigError);
}

TEST(Hypermetric, Displacements) {
  GP X(fx::dinf());
  Hyperplanes<GP> H(X);
  Omega<GP> W(H, OmegaMode::contact);
  EXPECT_EQ(W.displacement(Hh(H, "1+u"), X.parse_iso("u v"), 1).value, 2u);
  EXPECT_EQ(W.displacement(Hh(H, "1+u"), X.iso_identity(), 1).value, 0u);

  GP F(fx::f2());
  Hyperplanes<GP> HF(F);
  Omega<GP> WF(HF, OmegaMode::contact);
  auto A = Hh(HF, "1+a");
  auto g = F.parse_iso("a b");
  EXPECT_EQ(WF.displacement(A, g, 3).value, 6u);
  auto ref = oracle::bfs_reference_distance(HF, A.rep, HF.translate(F.power(g, 3), A).rep, OmegaMode::contact);
  EXPECT_EQ(ref, 6u);
}

TEST(Hypermetric, ChainsAreWitnesses) {
  GP X(fx::raag_path3());
  Hyperplanes<GP> H(X);
  std::mt19937 rng(11);
  for (auto mode : {OmegaMode::crossing, OmegaMode::contact}) {
    Omega<GP> W(H, mode);
    for (int it = 0; it < 60; ++it) {
      auto A = H.hyp(random_edge(X, rng, 3)), C = H.hyp(random_edge(X, rng, 3));
      if (H.same(A, C)) continue;
      auto d = W.distance(A, C);
      ASSERT_TRUE(d.value);
      ASSERT_EQ(d.chain.size(), *d.value + 1);
      for (std::size_t i = 0; i + 1 < d.chain.size(); ++i) {
        if (mode == OmegaMode::crossing)
          EXPECT_TRUE(H.transverse(d.chain[i], d.chain[i + 1]));
        else
          EXPECT_TRUE(H.in_contact(d.chain[i], d.chain[i + 1]));
      }
    }
  }
}

TEST(Hypermetric, AgreesWithReference) {
  std::mt19937 rng(5);
  struct Case {
    Presentation P;
    bool crossing;
  };
  std::vector<Case> cases{{fx::racg_path4(), true}, {fx::raag_path3(), true}, {fx::dinf(), false},
                          {fx::z3_path3(), true},   {fx::raag_c4(), true},    {fx::s3_edge(), true}};
  for (auto& c : cases) {
    GP X(c.P);
    Hyperplanes<GP> H(X);
    std::vector<OmegaMode> modes{OmegaMode::contact};
    if (c.crossing) modes.push_back(OmegaMode::crossing);
    for (auto mode : modes) {
      Omega<GP> W(H, mode);
      for (int it = 0; it < 25; ++it) {
        auto e = random_edge(X, rng, 1 + it % 4), f = random_edge(X, rng, it % 4);
        auto A = H.hyp(e), C = H.hyp(f);
        auto ref = oracle::bfs_reference_distance(H, e, f, mode);
        auto got = W.distance(A, C).value;
        EXPECT_EQ(got, ref) << X.edge_str(e.tail, e.head) << " vs " << X.edge_str(f.tail, f.head) << " in "
                            << mode_name(mode);
      }
    }
  }
}

TEST(Hypermetric, StaircaseAgreesWithWindow) {
  for (long long n : {3, 4}) {
    StaircaseParams sp{n, 1, 1};
    Staircase S(sp);
    Hyperplanes<Staircase> H(S);
    oracle::StaircaseWindow win(sp, -20, 30);
    for (auto mode : {OmegaMode::crossing, OmegaMode::contact}) {
      Omega<Staircase> W(H, mode);
      for (long long k = 1; k <= 6; ++k) {
        auto A = H.hyp({0, 1}, {1, 1});
        auto C = H.hyp({k, k + 1}, {k + 1, k + 1});
        auto a = win.hyperplane_of(0, 1, 1, 1), c = win.hyperplane_of(k, k + 1, k + 1, k + 1);
        ASSERT_TRUE(a && c);
        EXPECT_EQ(W.distance(A, C).value, win.distance(*a, *c, mode)) << "n=" << n << " k=" << k;
        auto D = H.hyp({k, k}, {k, k + 1});
        auto dd = win.hyperplane_of(k, k, k, k + 1);
        EXPECT_EQ(W.distance(A, D).value, win.distance(*a, *dd, mode)) << "n=" << n << " k=" << k;
      }
    }
  }
}

TEST(Hypermetric, Sandwiches) {
  std::mt19937 rng(9);
  for (auto P : {fx::racg_path4(), fx::raag_path3(), fx::z3_path3()}) {
    GP X(P);
    Hyperplanes<GP> H(X);
    Omega<GP> WG(H, OmegaMode::contact), WD(H, OmegaMode::crossing);
    const std::size_t N = X.cliques_per_vertex();
    for (int it = 0; it < 40; ++it) {
      auto A = H.hyp(random_edge(X, rng, 1 + it % 5)), C = H.hyp(random_edge(X, rng, it % 5));
      if (H.same(A, C)) continue;
      std::size_t ss = H.ss_count(A, C);
      auto g = WG.distance(A, C).value, d = WD.distance(A, C).value;
      ASSERT_TRUE(g && d);
      EXPECT_LE(ss, *g);
      EXPECT_LE(*g, 3 * (1 + ss));
      EXPECT_LE(ss, *d);
      EXPECT_LE(*d, (2 + N) * (1 + ss));
    }
  }
}

TEST(Hypermetric, ContactTrianglesAreThin) {
  std::mt19937 rng(21);
  GP X(fx::racg_path4());
  Hyperplanes<GP> H(X);
  Omega<GP> W(H, OmegaMode::contact);
  int checked = 0;
  for (int it = 0; it < 30; ++it) {
    HyperplaneHandle<NormalForm> T[3];
    for (auto& t : T) t = H.hyp(random_edge(X, rng, 2 + it % 4));
    if (H.same(T[0], T[1]) || H.same(T[1], T[2]) || H.same(T[0], T[2])) continue;
    for (int s = 0; s < 3; ++s) {
      auto side = W.distance(T[s], T[(s + 1) % 3]).chain;
      auto o1 = W.distance(T[(s + 1) % 3], T[(s + 2) % 3]).chain;
      auto o2 = W.distance(T[(s + 2) % 3], T[s]).chain;
      o1.insert(o1.end(), o2.begin(), o2.end());
      for (const auto& J : side) {
        std::size_t best = 1000;
        for (const auto& K : o1) best = std::min(best, *W.value(J, K));
        EXPECT_LE(best, 3u);
      }
    }
    ++checked;
  }
  EXPECT_GE(checked, 20);
}

TEST(Hypermetric, CacheRoundTrip) {
  GP X(fx::racg_path4());
  Hyperplanes<GP> H(X);
  DistanceCache cache;
  Omega<GP> W(H, OmegaMode::crossing, &cache);
  auto A = Hh(H, "1+a"), D = Hh(H, "1+d");
  EXPECT_EQ(W.value(A, D), 3u);
  EXPECT_EQ(cache.size(), 1u);
  std::string path = testing::TempDir() + "qmtl_cache_test.txt";
  cache.save(path);
  DistanceCache back;
  back.load(path);
  EXPECT_EQ(back.get(OmegaMode::crossing, D.key, A.key), 3);
  EXPECT_FALSE(back.get(OmegaMode::contact, A.key, D.key));
  std::remove(path.c_str());

  DistanceCache missing;
  missing.load(path);
  EXPECT_EQ(missing.size(), 0u);
  {
    std::FILE* f = std::fopen(path.c_str(), "w");
    std::fputs("not a cache\n", f);
    std::fclose(f);
  }
  EXPECT_THROW(missing.load(path), ConfigError);
  std::remove(path.c_str());
}
