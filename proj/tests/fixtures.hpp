#pragma once

// Small presentations shared by the test binaries.

#include <array>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "qmtl/graph_product.hpp"
#include "qmtl/qm.hpp"

namespace fx {

using namespace qmtl;

inline Presentation make(const std::vector<std::string>& names,
                         const std::vector<std::pair<std::string, std::string>>& edges,
                         const VertexGroupSpec& g) {
  return Presentation(DefGraph(names, edges), GroupFamily(std::vector<VertexGroupSpec>(names.size(), g)));
}

// Z/2 * Z/2
inline Presentation dinf() { return make({"u", "v"}, {}, VertexGroupSpec::cyclic(2)); }
// Z * Z
inline Presentation f2() { return make({"a", "b"}, {}, VertexGroupSpec::integers()); }
// RAAG on the path a-b-c
inline Presentation raag_path3() {
  return make({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}}, VertexGroupSpec::integers());
}
// RACG on the path a-b-c-d
inline Presentation racg_path4() {
  return make({"a", "b", "c", "d"}, {{"a", "b"}, {"b", "c"}, {"c", "d"}}, VertexGroupSpec::cyclic(2));
}
// RAAG on the 4-cycle
inline Presentation raag_c4() {
  return make({"a", "b", "c", "d"}, {{"a", "b"}, {"b", "c"}, {"c", "d"}, {"d", "a"}},
              VertexGroupSpec::integers());
}
// Z/3 on the path a-b-c
inline Presentation z3_path3() {
  return make({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}}, VertexGroupSpec::cyclic(3));
}

// S3 with elements e, s=(12), t=(23), r=(123), q=(132), f=(13)
inline VertexGroupSpec s3() {
  // permutations of {0,1,2} as images
  std::vector<std::array<int, 3>> perm = {{0, 1, 2}, {1, 0, 2}, {0, 2, 1}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  std::vector<std::vector<std::size_t>> mul(6, std::vector<std::size_t>(6));
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 6; ++j) {
      // (ij)(x) = i(j(x)): apply j first
      std::array<int, 3> c{perm[i][perm[j][0]], perm[i][perm[j][1]], perm[i][perm[j][2]]};
      for (std::size_t k = 0; k < 6; ++k)
        if (perm[k] == c) mul[i][j] = k;
    }
  return VertexGroupSpec::table({"e", "s", "t", "r", "q", "f"}, 0, mul);
}

// S3 at a, Z at b, adjacent
inline Presentation s3_edge() {
  return Presentation(DefGraph({"a", "b"}, {{"a", "b"}}), GroupFamily({s3(), VertexGroupSpec::integers()}));
}

/// Random raw word with `len` syllables.
inline std::vector<Syllable> random_raw(const Presentation& P, std::mt19937& rng, std::size_t len,
                                        int max_exp = 3) {
  std::vector<Syllable> raw;
  std::uniform_int_distribution<std::size_t> pick(0, P.graph.size() - 1);
  for (std::size_t i = 0; i < len; ++i) {
    std::size_t v = pick(rng);
    const auto& G = P.groups.at(v);
    BigInt val;
    if (G.kind() == GroupKind::finite_table) {
      val = std::uniform_int_distribution<std::size_t>(0, G.table_size() - 1)(rng);
    } else {
      int e = 0;
      while (e == 0) e = std::uniform_int_distribution<int>(-max_exp, max_exp)(rng);
      val = G.from_exponent(e);
    }
    raw.push_back({v, val});
  }
  return raw;
}

inline NormalForm random_nf(const Presentation& P, std::mt19937& rng, std::size_t len) {
  return reduce(P, random_raw(P, rng, len));
}

/// Random oriented edge at a random vertex of syllable length <= len.
inline OrientedEdge<NormalForm> random_edge(const GraphProduct& X, std::mt19937& rng, std::size_t len) {
  const auto& P = X.presentation();
  auto p = random_nf(P, rng, len);
  std::size_t u = rng() % P.graph.size();
  const auto& G = P.groups.at(u);
  BigInt v;
  if (G.kind() == GroupKind::finite_table)
    v = 1 + rng() % (G.table_size() - 1);  // identity is index 0 in the fixtures
  else if (G.kind() == GroupKind::cyclic)
    v = 1 + rng() % (G.order() - 1);
  else
    v = (rng() % 2 ? 1 : -1) * static_cast<int>(1 + rng() % 2);
  return {p, nf_mul(P, p, NormalForm{{Syllable{u, v}}})};
}


}  // namespace fx
