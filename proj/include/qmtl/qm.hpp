#pragma once

#include <concepts>
#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qmtl/graph_product.hpp"
#include "qmtl/staircase.hpp"

namespace qmtl {

inline constexpr std::size_t kDefaultGeodesicCap = 1000000;

/// What the geometric layers need from a quasi-median graph: the interval and
/// clique-menu primitives, plus a way to name hyperplanes and move points.
template <class B>
concept QMBackend = requires(const B& b, const typename B::Vertex& x, const typename B::Iso& g,
                             std::size_t cap,
                             const std::function<bool(const std::vector<typename B::Vertex>&)>& fn) {
  { b.adjacent(x, x) } -> std::convertible_to<bool>;
  { b.edge_label(x, x) } -> std::convertible_to<int>;
  { b.distance(x, x) } -> std::convertible_to<std::size_t>;
  { b.interval(x, x) } -> std::same_as<std::vector<typename B::Vertex>>;
  { b.clique_menu(x) } -> std::same_as<std::vector<typename B::Vertex>>;
  { b.labelled_menu(x) } -> std::same_as<std::vector<std::pair<typename B::Vertex, int>>>;
  { b.geodesic(x, x) } -> std::same_as<std::vector<typename B::Vertex>>;
  b.for_each_geodesic(x, x, cap, fn);
  { b.proj_clique(x, x, x) } -> std::same_as<typename B::Vertex>;
  { b.hyperplane_key(x, x) } -> std::convertible_to<std::string>;
  { b.cliques_span_square(x, x, x) } -> std::convertible_to<bool>;
  { b.labels_may_cross(0, 0) } -> std::convertible_to<bool>;
  { b.cliques_per_vertex() } -> std::convertible_to<std::size_t>;
  { b.crossing_connected() } -> std::convertible_to<bool>;
  { b.apply(g, x) } -> std::same_as<typename B::Vertex>;
  { b.power(g, 1LL) } -> std::same_as<typename B::Iso>;
  { b.basepoint() } -> std::same_as<typename B::Vertex>;
  { b.vertex_str(x) } -> std::convertible_to<std::string>;
  { b.edge_str(x, x) } -> std::convertible_to<std::string>;
};

template <class V>
struct OrientedEdge {
  V tail;
  V head;
  friend bool operator==(const OrientedEdge&, const OrientedEdge&) = default;
};

template <QMBackend B>
OrientedEdge<typename B::Vertex> apply_edge(const B& b, const typename B::Iso& g,
                                            const OrientedEdge<typename B::Vertex>& e) {
  return {b.apply(g, e.tail), b.apply(g, e.head)};
}

/// Vertex sequence of an enumerated geodesic as a list of oriented edges.
template <class V>
std::vector<OrientedEdge<V>> path_edges(const std::vector<V>& path) {
  std::vector<OrientedEdge<V>> out;
  for (std::size_t i = 0; i + 1 < path.size(); ++i) out.push_back({path[i], path[i + 1]});
  return out;
}

/// Collects every geodesic from x to y (at most `cap`).
template <QMBackend B>
std::vector<std::vector<typename B::Vertex>> geodesics(const B& b, const typename B::Vertex& x,
                                                       const typename B::Vertex& y,
                                                       std::size_t cap = kDefaultGeodesicCap) {
  std::vector<std::vector<typename B::Vertex>> out;
  b.for_each_geodesic(x, y, cap, [&](const std::vector<typename B::Vertex>& p) {
    out.push_back(p);
    return true;
  });
  return out;
}

/// Projection onto a clique by definition: the vertex z of the clique with
/// d(x,z) + d(z,p) = d(x,p) and d(x,z) + d(z,q) = d(x,q). Needs finite cliques.
template <QMBackend B>
std::optional<typename B::Vertex> proj_clique_by_members(const B& b, const typename B::Vertex& x,
                                                         const typename B::Vertex& p,
                                                         const typename B::Vertex& q) {
  auto members = b.clique_members(p, q);
  if (!members) return std::nullopt;
  std::optional<typename B::Vertex> best;
  std::size_t best_d = std::numeric_limits<std::size_t>::max();
  for (const auto& z : *members) {
    std::size_t d = b.distance(x, z);
    if (d < best_d) {
      best_d = d;
      best = z;
    }
  }
  return best;
}

}  // namespace qmtl
