#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qmtl/qm.hpp"

namespace qmtl {

/// A hyperplane named by one of its edges. `key` is the backend's canonical
/// name, so two handles denote the same hyperplane iff their keys agree.
template <class V>
struct HyperplaneHandle {
  OrientedEdge<V> rep;
  int label = 0;
  std::string key;
};

template <class V>
struct CarrierPair {
  V x;   // in the first carrier
  V x2;  // in the second carrier
  std::size_t dist = 0;
};

/// Hyperplane calculus over a backend: equality, carriers, contact,
/// transversality, strong separation. Relation lookups are memoised behind a
/// mutex, so one instance can be shared by worker threads.
template <QMBackend B>
class Hyperplanes {
 public:
  using V = typename B::Vertex;
  using Edge = OrientedEdge<V>;
  using Hyp = HyperplaneHandle<V>;
  using Pair = CarrierPair<V>;

  explicit Hyperplanes(const B& b) : b_(b) {}

  const B& backend() const { return b_; }

  Hyp hyp(const V& p, const V& q) const { return {{p, q}, b_.edge_label(p, q), b_.hyperplane_key(p, q)}; }
  Hyp hyp(const Edge& e) const { return hyp(e.tail, e.head); }

  Hyp translate(const typename B::Iso& g, const Hyp& H) const {
    return hyp(b_.apply(g, H.rep.tail), b_.apply(g, H.rep.head));
  }

  static bool same(const Hyp& a, const Hyp& c) { return a.key == c.key; }

  /// Endpoints of e have distinct gates on the clique of e2.
  bool same_hyperplane(const Edge& e, const Edge& e2) const {
    return !(b_.proj_clique(e.tail, e2.tail, e2.head) == b_.proj_clique(e.head, e2.tail, e2.head));
  }

  /// Hyperplanes dual to the cliques through x, one per clique.
  std::vector<Hyp> menu_hyperplanes(const V& x) const {
    std::vector<Hyp> out;
    for (const auto& [m, label] : b_.labelled_menu(x)) out.push_back({{x, m}, label, b_.hyperplane_key(x, m)});
    return out;
  }

  /// Menu neighbour of x whose clique lies in H, if any.
  std::optional<V> carrier_menu_entry(const V& x, const Hyp& H) const {
    for (const auto& [m, label] : b_.labelled_menu(x))
      if (label == H.label && b_.hyperplane_key(x, m) == H.key) return m;
    return std::nullopt;
  }

  bool carrier_contains(const V& x, const Hyp& H) const { return carrier_menu_entry(x, H).has_value(); }

  /// Key-free membership test, straight from same_hyperplane.
  bool carrier_contains_semantic(const V& x, const Edge& e) const {
    for (const auto& m : b_.clique_menu(x))
      if (same_hyperplane({x, m}, e)) return true;
    return false;
  }

  /// Closest vertex of N(H) to z, given some t in N(H); it lies in I(z,t).
  V carrier_gate(const V& z, const Hyp& H, const V& t) const {
    for (const auto& v : b_.interval(z, t))
      if (carrier_contains(v, H)) return v;
    throw ContractViolation("carrier_gate: target is not in the carrier");
  }

  /// Pair of carrier vertices realising d(N(A), N(C)), by alternating gates.
  Pair carrier_min_pair(const Hyp& A, const Hyp& C) const {
    const V& p = A.rep.tail;
    const V& p2 = C.rep.tail;
    V q = carrier_gate(p, C, p2);
    V a = carrier_gate(q, A, p);
    V c = carrier_gate(a, C, q);
    return {a, c, b_.distance(a, c)};
  }

  /// Reference version: scan all geodesics between fixed carrier vertices.
  Pair carrier_min_pair_scan(const Edge& e, const Edge& e2, std::size_t cap = kDefaultGeodesicCap) const {
    std::optional<Pair> best;
    b_.for_each_geodesic(e.tail, e2.tail, cap, [&](const std::vector<V>& path) {
      std::vector<bool> inA(path.size()), inC(path.size());
      for (std::size_t i = 0; i < path.size(); ++i) {
        inA[i] = carrier_contains_semantic(path[i], e);
        inC[i] = carrier_contains_semantic(path[i], e2);
      }
      for (std::size_t i = 0; i < path.size(); ++i) {
        if (!inA[i]) continue;
        for (std::size_t j = i; j < path.size(); ++j)
          if (inC[j] && (!best || j - i < best->dist)) best = Pair{path[i], path[j], j - i};
      }
      return !(best && best->dist == 0);
    });
    if (!best) throw ContractViolation("carrier scan found no carrier vertices");
    return *best;
  }

  bool in_contact(const Hyp& A, const Hyp& C) const {
    if (same(A, C)) throw ContractViolation("in_contact called on a single hyperplane");
    return carrier_min_pair(A, C).dist == 0;
  }

  bool transverse(const Hyp& A, const Hyp& C) const {
    if (same(A, C)) throw ContractViolation("transverse called on a single hyperplane");
    if (!b_.labels_may_cross(A.label, C.label)) return false;
    auto k = memo_key(A, C);
    {
      std::lock_guard<std::mutex> lock(mu_);
      auto it = transverse_memo_.find(k);
      if (it != transverse_memo_.end()) return it->second;
    }
    bool result = false;
    Pair mp = carrier_min_pair(A, C);
    if (mp.dist == 0) {
      auto a = carrier_menu_entry(mp.x, A);
      auto c = carrier_menu_entry(mp.x, C);
      if (!a || !c) throw ContractViolation("carrier vertex without a menu entry");
      result = b_.cliques_span_square(mp.x, *a, *c);
    }
    std::lock_guard<std::mutex> lock(mu_);
    transverse_memo_.emplace(k, result);
    return result;
  }

  /// Reference version: from a common carrier vertex, look along geodesics
  /// for two consecutive edges, one in each hyperplane, spanning a square.
  bool transverse_scan(const Edge& e, const Edge& e2, std::size_t cap = kDefaultGeodesicCap) const {
    if (same_hyperplane(e, e2)) throw ContractViolation("transverse called on a single hyperplane");
    Pair mp = carrier_min_pair_scan(e, e2, cap);
    if (mp.dist != 0) return false;
    const V& x = mp.x;
    std::optional<V> a, c;
    for (const auto& m : b_.clique_menu(x)) {
      if (!a && same_hyperplane({x, m}, e)) a = m;
      if (!c && same_hyperplane({x, m}, e2)) c = m;
    }
    if (!a || !c) throw ContractViolation("carrier vertex without a menu entry");
    bool found = false;
    b_.for_each_geodesic(*a, *c, cap, [&](const std::vector<V>& path) {
      for (std::size_t i = 0; i + 2 < path.size() && !found; ++i) {
        Edge f{path[i], path[i + 1]}, g{path[i + 1], path[i + 2]};
        bool split = (same_hyperplane(f, e) && same_hyperplane(g, e2)) ||
                     (same_hyperplane(f, e2) && same_hyperplane(g, e));
        if (split && b_.distance(path[i], path[i + 2]) == 2 &&
            b_.interval(path[i], path[i + 2]).size() >= 4)
          found = true;
      }
      return !found;
    });
    return found;
  }

  /// Strict separation: not in contact, and no hyperplane transverse to both.
  bool strongly_separated(const Hyp& A, const Hyp& C) const {
    if (same(A, C)) return false;
    auto k = memo_key(A, C);
    {
      std::lock_guard<std::mutex> lock(mu_);
      auto it = ss_memo_.find(k);
      if (it != ss_memo_.end()) return it->second;
    }
    bool result = compute_ss(A, C);
    std::lock_guard<std::mutex> lock(mu_);
    ss_memo_.emplace(k, result);
    return result;
  }

  /// Hyperplanes dual to the edges of one fixed geodesic, in order.
  std::vector<Hyp> separators(const V& x, const V& y) const {
    std::vector<Hyp> out;
    auto path = b_.geodesic(x, y);
    for (std::size_t i = 0; i + 1 < path.size(); ++i) out.push_back(hyp(path[i], path[i + 1]));
    return out;
  }

  /// Longest chain of pairwise strongly separated hyperplanes separating the
  /// two carriers. Strong separation is transitive along the separator order,
  /// so checking consecutive chain members suffices.
  std::size_t ss_count(const Hyp& A, const Hyp& C) const {
    if (same(A, C)) return 0;
    Pair mp = carrier_min_pair(A, C);
    auto seps = separators(mp.x, mp.x2);
    std::vector<std::size_t> dp(seps.size(), 1);
    std::size_t best = 0;
    for (std::size_t i = 0; i < seps.size(); ++i) {
      for (std::size_t j = 0; j < i; ++j)
        if (dp[j] + 1 > dp[i] && strongly_separated(seps[j], seps[i])) dp[i] = dp[j] + 1;
      best = std::max(best, dp[i]);
    }
    return best;
  }

 private:
  static std::pair<std::string, std::string> memo_key(const Hyp& A, const Hyp& C) {
    return A.key < C.key ? std::make_pair(A.key, C.key) : std::make_pair(C.key, A.key);
  }

  bool compute_ss(const Hyp& A, const Hyp& C) const {
    if (transverse(A, C)) return false;
    Pair mp = carrier_min_pair(A, C);
    if (mp.dist == 0) return false;
    for (const auto& H : menu_hyperplanes(mp.x)) {
      if (same(H, A) || same(H, C)) continue;
      if (!b_.labels_may_cross(H.label, A.label) || !b_.labels_may_cross(H.label, C.label)) continue;
      if (transverse(H, A) && transverse(H, C)) return false;
    }
    return true;
  }

  const B& b_;
  mutable std::mutex mu_;
  mutable std::map<std::pair<std::string, std::string>, bool> transverse_memo_;
  mutable std::map<std::pair<std::string, std::string>, bool> ss_memo_;
};

}  // namespace qmtl
