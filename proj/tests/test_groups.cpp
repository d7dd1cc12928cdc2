#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"

using namespace qmtl;

TEST(Groups, Basics) {
  auto z2 = VertexGroupSpec::cyclic(2);
  EXPECT_TRUE(z2.is_identity(z2.mul(1, 1)));
  auto z = VertexGroupSpec::integers();
  EXPECT_TRUE(z.is_identity(z.mul(3, -3)));
  auto s3 = fx::s3();
  // (12)(23) = (123) with right-to-left composition
  EXPECT_EQ(s3.element_name(static_cast<std::size_t>(s3.mul(s3.from_name("s"), s3.from_name("t")))), "r");
}

TEST(Groups, SampleNontrivial) {
  EXPECT_EQ(VertexGroupSpec::cyclic(3).sample_nontrivial(), 1);
  EXPECT_EQ(VertexGroupSpec::integers().sample_nontrivial(), 1);
  EXPECT_EQ(fx::s3().sample_nontrivial(), 1);
  auto t = VertexGroupSpec::table({"x", "e"}, 1, {{1, 0}, {0, 1}});
  EXPECT_EQ(t.sample_nontrivial(), 0);
  EXPECT_EQ(t.sample_nontrivial(), t.sample_nontrivial());
}

TEST(Groups, TableValidation) {
  EXPECT_THROW(VertexGroupSpec::table({"e"}, 0, {{0}}), ConfigError);
  EXPECT_THROW(VertexGroupSpec::table({"e", "x"}, 0, {{0, 1}, {1, 1}}), ConfigError);
  EXPECT_THROW(VertexGroupSpec::cyclic(1), ConfigError);
  // not associative: x*x = y, y*x = e, x*y = x
  EXPECT_THROW(VertexGroupSpec::table({"e", "x", "y"}, 0, {{0, 1, 2}, {1, 2, 1}, {2, 0, 0}}), ConfigError);
}

TEST(Groups, RandomAxioms) {
  std::mt19937 rng(7);
  std::vector<VertexGroupSpec> specs{VertexGroupSpec::cyclic(5), VertexGroupSpec::integers(), fx::s3()};
  for (const auto& G : specs) {
    auto draw = [&]() -> BigInt {
      if (G.kind() == GroupKind::finite_table) return std::uniform_int_distribution<int>(0, 5)(rng);
      return G.from_exponent(std::uniform_int_distribution<int>(-50, 50)(rng));
    };
    for (int i = 0; i < 1000; ++i) {
      BigInt a = draw(), b = draw(), c = draw();
      EXPECT_EQ(G.mul(G.mul(a, b), c), G.mul(a, G.mul(b, c)));
      EXPECT_TRUE(G.is_identity(G.mul(a, G.inv(a))));
      EXPECT_TRUE(G.valid(G.mul(a, b)));
    }
  }
}

TEST(Groups, MixedVertexIsAContractViolation) {
  GroupFamily fam({VertexGroupSpec::integers(), VertexGroupSpec::integers()});
  EXPECT_THROW(fam.mul({0, 1}, {1, 1}), ContractViolation);
}
