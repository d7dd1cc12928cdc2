#pragma once

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qmtl/common.hpp"

namespace qmtl {

/// Finite simplicial graph Gamma defining a graph product. Vertex indices
/// follow the listing order, which is also the total order used to make
/// normal forms canonical.
class DefGraph {
 public:
  static constexpr std::size_t kMaxVertices = 12;

  DefGraph() = default;

  DefGraph(std::vector<std::string> names,
           const std::vector<std::pair<std::string, std::string>>& edges)
      : names_(std::move(names)) {
    if (names_.empty()) throw ConfigError("defining graph has no vertices");
    if (names_.size() > kMaxVertices)
      throw ConfigError("defining graph has more than 12 vertices");
    for (std::size_t i = 0; i < names_.size(); ++i) {
      if (names_[i].empty()) throw ConfigError("empty vertex name");
      for (char c : names_[i])
        if (std::isspace(static_cast<unsigned char>(c)) || c == '^' || c == ':' || c == '+' ||
            c == ',')
          throw ConfigError("vertex name '" + names_[i] + "' contains a reserved character");
      if (!index_.emplace(names_[i], i).second)
        throw ConfigError("duplicate vertex '" + names_[i] + "'");
    }
    adj_.assign(names_.size(), std::vector<bool>(names_.size(), false));
    for (const auto& [a, b] : edges) {
      std::size_t i = require(a), j = require(b);
      if (i == j) throw ConfigError("loop at vertex '" + a + "'");
      if (adj_[i][j]) throw ConfigError("multi-edge between '" + a + "' and '" + b + "'");
      adj_[i][j] = adj_[j][i] = true;
    }
  }

  std::size_t size() const { return names_.size(); }
  const std::string& name(std::size_t v) const { return names_.at(v); }
  const std::vector<std::string>& names() const { return names_; }

  std::optional<std::size_t> find(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  std::size_t require(const std::string& name) const {
    auto v = find(name);
    if (!v) throw ConfigError("unknown vertex '" + name + "'");
    return *v;
  }

  bool adjacent(std::size_t u, std::size_t v) const { return adj_[u][v]; }

  // u == v or u ~ v
  bool in_star(std::size_t u, std::size_t v) const { return u == v || adj_[u][v]; }

  std::size_t edge_count() const {
    std::size_t n = 0;
    for (std::size_t i = 0; i < size(); ++i)
      for (std::size_t j = i + 1; j < size(); ++j) n += adj_[i][j];
    return n;
  }

 private:
  std::vector<std::string> names_;
  std::map<std::string, std::size_t> index_;
  std::vector<std::vector<bool>> adj_;
};

/// Size of a maximum clique, by branch and bound over vertex subsets.
inline std::size_t clique_number(const DefGraph& g) {
  std::size_t best = 0;
  std::vector<std::size_t> current;
  std::function<void(std::vector<std::size_t>)> grow = [&](std::vector<std::size_t> cand) {
    if (current.size() > best) best = current.size();
    if (current.size() + cand.size() <= best) return;
    for (std::size_t k = 0; k < cand.size(); ++k) {
      std::size_t v = cand[k];
      std::vector<std::size_t> next;
      for (std::size_t j = k + 1; j < cand.size(); ++j)
        if (g.adjacent(v, cand[j])) next.push_back(cand[j]);
      current.push_back(v);
      grow(std::move(next));
      current.pop_back();
    }
  };
  std::vector<std::size_t> all(g.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  grow(all);
  return best;
}

inline bool has_induced_c4(const DefGraph& g) {
  const std::size_t n = g.size();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      for (std::size_t c = b + 1; c < n; ++c)
        for (std::size_t d = c + 1; d < n; ++d) {
          const std::size_t q[4] = {a, b, c, d};
          std::size_t edges = 0;
          bool all_degree_two = true;
          for (std::size_t i = 0; i < 4; ++i) {
            std::size_t deg = 0;
            for (std::size_t j = 0; j < 4; ++j) deg += (i != j && g.adjacent(q[i], q[j]));
            all_degree_two = all_degree_two && deg == 2;
            edges += deg;
          }
          // four vertices, four edges, all degrees two: exactly a 4-cycle
          if (all_degree_two && edges == 8) return true;
        }
  return false;
}

/// Connectivity of Gamma. For a graph product this is exactly the absence of
/// cut vertices in the quasi-median graph, so the crossing graph is connected.
inline bool crossing_connected(const DefGraph& g) {
  if (g.size() == 0) return false;
  std::vector<bool> seen(g.size(), false);
  std::vector<std::size_t> stack{0};
  seen[0] = true;
  while (!stack.empty()) {
    std::size_t v = stack.back();
    stack.pop_back();
    for (std::size_t w = 0; w < g.size(); ++w)
      if (g.adjacent(v, w) && !seen[w]) {
        seen[w] = true;
        stack.push_back(w);
      }
  }
  return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
}

struct HyperbolicityProfile {
  std::size_t n_cliques_per_vertex = 0;
  Rational delta_contact{3};
  Rational delta_crossing{0};
  std::size_t clique_number = 0;
  std::optional<BigInt> qm_delta;                 // 5 * clique(Gamma) when hyperbolic
  std::optional<BigInt> denom_bound_hyperbolic;   // N^{8 ceil(delta)}
  std::optional<BigInt> denom_bound_gp;           // |V|^{40 clique(Gamma)}
  std::optional<unsigned long> denom_bound_gp_exponent;
};

inline Rational crossing_delta(std::size_t cliques_per_vertex) {
  return Rational(3) + Rational(static_cast<long long>(cliques_per_vertex), 2);
}

inline HyperbolicityProfile hyperbolicity_profile(const DefGraph& g) {
  HyperbolicityProfile p;
  p.n_cliques_per_vertex = g.size();
  p.delta_crossing = crossing_delta(g.size());
  p.clique_number = clique_number(g);
  const unsigned long exp40 = 40ul * p.clique_number;
  p.denom_bound_gp = ipow(BigInt(g.size()), exp40);
  p.denom_bound_gp_exponent = exp40;
  if (!has_induced_c4(g)) {
    BigInt delta = 5 * BigInt(p.clique_number);
    p.qm_delta = delta;
    p.denom_bound_hyperbolic =
        ipow(BigInt(g.size()), 8ul * static_cast<unsigned long>(delta));
  }
  return p;
}

}  // namespace qmtl
