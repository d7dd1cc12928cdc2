#pragma once

// Slow reference computations. Nothing here reuses the hyperplane keys, the
// omega subgraph or the down-set enumerator of the main path.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "qmtl/hypermetric.hpp"

namespace qmtl::oracle {

/// Omega distance by scanning geodesics from tail(A) to tail(B): on each
/// geodesic, collect the hyperplanes of the cliques met along it (semantic
/// dedup), decide relations by the geodesic-scan predicates, and search.
/// The smallest value over all geodesics is returned; empty if no chain.
template <QMBackend B>
std::optional<std::size_t> bfs_reference_distance(const Hyperplanes<B>& H, const OrientedEdge<typename B::Vertex>& a,
                                                  const OrientedEdge<typename B::Vertex>& b, OmegaMode mode,
                                                  std::size_t cap = 10000) {
  using V = typename B::Vertex;
  using E = OrientedEdge<V>;
  const auto& X = H.backend();
  if (H.same_hyperplane(a, b)) return 0;

  std::map<std::pair<std::string, std::string>, bool> memo;
  auto related = [&](const E& e, const E& f) {
    auto k = std::make_pair(X.edge_str(e.tail, e.head), X.edge_str(f.tail, f.head));
    if (k.second < k.first) std::swap(k.first, k.second);
    auto it = memo.find(k);
    if (it != memo.end()) return it->second;
    bool r = mode == OmegaMode::crossing ? H.transverse_scan(e, f, cap) : H.carrier_min_pair_scan(e, f, cap).dist == 0;
    memo.emplace(k, r);
    return r;
  };

  std::optional<std::size_t> best;
  X.for_each_geodesic(a.tail, b.tail, cap, [&](const std::vector<V>& path) {
    std::vector<E> nodes{a, b};
    for (const auto& z : path)
      for (const auto& m : X.clique_menu(z)) {
        E e{z, m};
        bool known = false;
        for (const auto& n : nodes)
          if (H.same_hyperplane(e, n)) {
            known = true;
            break;
          }
        if (!known) nodes.push_back(e);
      }
    std::vector<long long> dist(nodes.size(), -1);
    std::deque<std::size_t> q{0};
    dist[0] = 0;
    while (!q.empty() && dist[1] < 0) {
      std::size_t v = q.front();
      q.pop_front();
      for (std::size_t w = 0; w < nodes.size(); ++w)
        if (dist[w] < 0 && related(nodes[v], nodes[w])) {
          dist[w] = dist[v] + 1;
          q.push_back(w);
        }
    }
    if (dist[1] >= 0 && (!best || static_cast<std::size_t>(dist[1]) < *best)) best = static_cast<std::size_t>(dist[1]);
    return !(best && *best <= 1);
  });
  return best;
}

/// Order ideals of the syllable dependence relation of g, by trying every
/// subset.
inline std::uint64_t downset_count(const Presentation& P, const NormalForm& g) {
  const std::size_t n = g.syl.size();
  if (n > 24) throw ContractViolation("downset_count: word too long for subset enumeration");
  // i must come before j when they share a vertex or do not commute
  std::vector<std::uint32_t> below(n, 0);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < j; ++i) {
      std::size_t u = g.syl[i].vertex, v = g.syl[j].vertex;
      if (u == v || !P.graph.adjacent(u, v)) below[j] |= (1u << i);
    }
  std::uint64_t count = 0;
  for (std::uint32_t s = 0; s < (1u << n); ++s) {
    bool ok = true;
    for (std::size_t j = 0; j < n && ok; ++j)
      if ((s >> j & 1u) && (below[j] & s) != below[j]) ok = false;
    count += ok;
  }
  return count;
}

template <class V>
struct MedianTriangle {
  V a1, a2, a3;
};

/// The triple in I(x1,x2) x I(x2,x3) x I(x1,x3) positions satisfying the
/// three geodesic decompositions with least perimeter. Throws if the
/// minimiser is not unique.
template <QMBackend B>
MedianTriangle<typename B::Vertex> median_triangle(const B& X, const typename B::Vertex& x1,
                                                   const typename B::Vertex& x2, const typename B::Vertex& x3) {
  using V = typename B::Vertex;
  auto meet = [&](const V& p, const V& q, const V& r) {
    std::vector<V> out;
    for (const auto& z : X.interval(p, q))
      if (X.distance(p, z) + X.distance(z, r) == X.distance(p, r)) out.push_back(z);
    return out;
  };
  auto c1 = meet(x1, x2, x3), c2 = meet(x2, x1, x3), c3 = meet(x3, x1, x2);
  const std::size_t d12 = X.distance(x1, x2), d13 = X.distance(x1, x3), d23 = X.distance(x2, x3);
  std::optional<MedianTriangle<V>> best;
  std::size_t best_p = 0, ties = 0;
  for (const auto& a1 : c1)
    for (const auto& a2 : c2) {
      std::size_t e12 = X.distance(a1, a2);
      if (X.distance(x1, a1) + e12 + X.distance(a2, x2) != d12) continue;
      for (const auto& a3 : c3) {
        std::size_t e13 = X.distance(a1, a3), e23 = X.distance(a2, a3);
        if (X.distance(x1, a1) + e13 + X.distance(a3, x3) != d13) continue;
        if (X.distance(x2, a2) + e23 + X.distance(a3, x3) != d23) continue;
        std::size_t p = e12 + e13 + e23;
        if (!best || p < best_p) {
          best = MedianTriangle<V>{a1, a2, a3};
          best_p = p;
          ties = 1;
        } else if (p == best_p) {
          ++ties;
        }
      }
    }
  if (!best) throw ContractViolation("median_triangle: no admissible triple");
  if (ties != 1) throw ContractViolation("median_triangle: minimiser is not unique");
  return *best;
}

/// Samples of d(J, g^n J) for n = 1..n_max with a slope read off the tail.
struct RatioSeries {
  std::vector<std::pair<long long, std::optional<std::size_t>>> samples;
  std::optional<Rational> slope;  // set when the tail is eventually periodic
  long long period = 0;
};

/// `dist(n)` returns d(J, g^n J). The slope is (d(n+p) - d(n)) / p for the
/// least period p <= 4 whose increments are constant over n in [from, n_max].
template <class F>
RatioSeries ratio_estimate(F&& dist, long long n_max, long long from = 8) {
  RatioSeries r;
  for (long long n = 1; n <= n_max; ++n) r.samples.emplace_back(n, dist(n));
  auto at = [&](long long n) { return r.samples[static_cast<std::size_t>(n - 1)].second; };
  from = std::max<long long>(1, std::min(from, n_max));
  for (long long p = 1; p <= 4 && !r.slope; ++p) {
    if (from + p > n_max) break;
    std::optional<long long> step;
    bool ok = true;
    for (long long n = from; n + p <= n_max && ok; ++n) {
      auto lo = at(n), hi = at(n + p);
      if (!lo || !hi) {
        ok = false;
        break;
      }
      long long s = static_cast<long long>(*hi) - static_cast<long long>(*lo);
      if (step && *step != s) ok = false;
      step = s;
    }
    if (ok && step) {
      r.slope = Rational(*step, p);
      r.period = p;
    }
  }
  return r;
}

/// Explicit finite piece of a staircase: columns x0..x1. Hyperplanes are
/// built as classes of edges under "opposite sides of a square" with a
/// union-find, relations are read off squares and shared endpoints.
class StaircaseWindow {
 public:
  StaircaseWindow(StaircaseParams p, long long x0, long long x1) : p_(p) {
    auto floor_at = [&](long long x) {
      long long q = x / p_.w;
      if (x % p_.w != 0 && x < 0) --q;
      return p_.h * q;
    };
    auto inside = [&](long long x, long long y) { return x >= x0 && x <= x1 && y >= floor_at(x) && y <= floor_at(x) + p_.n; };
    for (long long x = x0; x <= x1; ++x)
      for (long long y = floor_at(x); y <= floor_at(x) + p_.n; ++y) {
        if (inside(x + 1, y)) add_edge(x, y, x + 1, y);
        if (inside(x, y + 1)) add_edge(x, y, x, y + 1);
      }
    parent_.resize(edges_.size());
    for (std::size_t i = 0; i < parent_.size(); ++i) parent_[i] = i;
    for (long long x = x0; x <= x1; ++x)
      for (long long y = floor_at(x); y <= floor_at(x) + p_.n; ++y)
        if (inside(x + 1, y) && inside(x, y + 1) && inside(x + 1, y + 1)) {
          unite(edge_id(x, y, x + 1, y), edge_id(x, y + 1, x + 1, y + 1));
          unite(edge_id(x, y, x, y + 1), edge_id(x + 1, y, x + 1, y + 1));
          squares_.push_back({edge_id(x, y, x + 1, y), edge_id(x, y, x, y + 1)});
        }
    // compress classes
    std::map<std::size_t, std::size_t> cls;
    for (std::size_t i = 0; i < edges_.size(); ++i) {
      auto [it, fresh] = cls.emplace(find(i), cls.size());
      class_of_.push_back(it->second);
    }
    const std::size_t n = cls.size();
    cross_.assign(n, std::vector<bool>(n, false));
    touch_.assign(n, std::vector<bool>(n, false));
    for (auto [e, f] : squares_) {
      std::size_t a = class_of_[e], b = class_of_[f];
      cross_[a][b] = cross_[b][a] = true;
    }
    std::map<std::pair<long long, long long>, std::set<std::size_t>> at_vertex;
    for (std::size_t i = 0; i < edges_.size(); ++i) {
      const auto& [ax, ay, bx, by] = edges_[i];
      at_vertex[{ax, ay}].insert(class_of_[i]);
      at_vertex[{bx, by}].insert(class_of_[i]);
    }
    for (const auto& [v, s] : at_vertex)
      for (auto a : s)
        for (auto b : s)
          if (a != b) touch_[a][b] = true;
  }

  std::size_t hyperplane_count() const { return cross_.size(); }

  /// Class of the edge between two adjacent points.
  std::optional<std::size_t> hyperplane_of(long long ax, long long ay, long long bx, long long by) const {
    if (std::tie(bx, by) < std::tie(ax, ay)) {
      std::swap(ax, bx);
      std::swap(ay, by);
    }
    auto it = index_.find({ax, ay, bx, by});
    if (it == index_.end()) return std::nullopt;
    return class_of_[it->second];
  }

  std::optional<std::size_t> distance(std::size_t a, std::size_t b, OmegaMode mode) const {
    const auto& rel = mode == OmegaMode::crossing ? cross_ : touch_;
    std::vector<long long> d(rel.size(), -1);
    std::deque<std::size_t> q{a};
    d[a] = 0;
    while (!q.empty()) {
      std::size_t v = q.front();
      q.pop_front();
      for (std::size_t w = 0; w < rel.size(); ++w)
        if (rel[v][w] && d[w] < 0) {
          d[w] = d[v] + 1;
          q.push_back(w);
        }
    }
    if (d[b] < 0) return std::nullopt;
    return static_cast<std::size_t>(d[b]);
  }

  bool transverse(std::size_t a, std::size_t b) const { return cross_[a][b]; }
  bool in_contact(std::size_t a, std::size_t b) const { return touch_[a][b]; }

 private:
  using Key = std::tuple<long long, long long, long long, long long>;

  void add_edge(long long ax, long long ay, long long bx, long long by) {
    index_.emplace(Key{ax, ay, bx, by}, edges_.size());
    edges_.push_back({ax, ay, bx, by});
  }
  std::size_t edge_id(long long ax, long long ay, long long bx, long long by) const {
    return index_.at(Key{ax, ay, bx, by});
  }
  std::size_t find(std::size_t i) {
    while (parent_[i] != i) i = parent_[i] = parent_[parent_[i]];
    return i;
  }
  void unite(std::size_t a, std::size_t b) { parent_[find(a)] = find(b); }

  StaircaseParams p_;
  std::vector<Key> edges_;
  std::map<Key, std::size_t> index_;
  std::vector<std::size_t> parent_;
  std::vector<std::pair<std::size_t, std::size_t>> squares_;
  std::vector<std::size_t> class_of_;
  std::vector<std::vector<bool>> cross_, touch_;
};

}  // namespace qmtl::oracle
