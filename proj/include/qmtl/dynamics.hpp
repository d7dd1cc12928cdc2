#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "qmtl/hypermetric.hpp"

namespace qmtl {

enum class Verdict { elliptic, loxodromic };

inline std::string verdict_name(Verdict v) { return v == Verdict::elliptic ? "elliptic" : "loxodromic"; }

/// g^r skewers e and hyp(e), hyp(g^r e) are strongly separated; this forces
/// a pairwise strongly separated orbit, hence unbounded orbits in Omega X.
template <class V>
struct LoxoCertificate {
  OrientedEdge<V> edge;
  long long r = 0;
  long long m = 0;  // e lies on the chosen geodesic [o, g^m o]
};

template <class V>
struct Classification {
  Verdict verdict = Verdict::elliptic;
  std::optional<LoxoCertificate<V>> certificate;
  std::string method;  // "certificate", "bounded-orbit", "delta-test", "trivial"
};

template <class V>
struct AxisData {
  V base;                // on an axis of g^power
  long long power = 1;
  Rational tau_X;        // translation length of g in X
  OrientedEdge<V> ss_edge;
  long long ss_power = 1;  // L
  std::size_t hqc = 0;     // M >= HQC(g)
  bool hqc_exact = true;
};

struct DynamicsOptions {
  long long cert_max_power = 12;   // certificate search over [o, g^m o], m <= this
  long long growth_power = 16;     // bounded-orbit check compares m and 4m
  long long axis_max_power = 64;
  std::size_t hqc_node_limit = 2000000;
  Budget budget;
};

/// Largest n with two disjoint n-element families, every member of one
/// transverse to every member of the other. Returns nullopt once the search
/// visits more than `node_limit` states.
template <QMBackend B>
std::optional<std::size_t> hqc_exact(const Hyperplanes<B>& H, const std::vector<HyperplaneHandle<typename B::Vertex>>& hs,
                                     std::size_t node_limit = 2000000, const Budget& budget = {}) {
  const std::size_t n = hs.size();
  std::vector<boost::dynamic_bitset<>> nb(n, boost::dynamic_bitset<>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      if (Hyperplanes<B>::same(hs[i], hs[j])) throw ContractViolation("hqc_exact: repeated hyperplane");
      if (H.transverse(hs[i], hs[j])) nb[i].set(j), nb[j].set(i);
    }
  std::size_t best = 0, nodes = 0;
  bool aborted = false;
  boost::dynamic_bitset<> all(n);
  all.set();
  // grow the first family in increasing index order; the second family is
  // any subset of the common neighbourhood
  std::function<void(std::size_t, std::size_t, const boost::dynamic_bitset<>&)> grow =
      [&](std::size_t from, std::size_t size, const boost::dynamic_bitset<>& common) {
        if (aborted) return;
        if (++nodes > node_limit || (nodes % 4096 == 0 && budget.expired())) {
          aborted = true;
          return;
        }
        best = std::max(best, std::min(size, common.count()));
        for (std::size_t i = from; i < n; ++i) {
          if (size + (n - i) <= best) return;
          auto next = common & nb[i];
          if (next.count() <= best) continue;
          grow(i + 1, size + 1, next);
        }
      };
  grow(0, 0, all);
  if (aborted) return std::nullopt;
  return best;
}

/// Isometries of X seen through Omega X: skewering, classification, axes.
template <QMBackend B>
class Dynamics {
 public:
  using V = typename B::Vertex;
  using Iso = typename B::Iso;
  using Edge = OrientedEdge<V>;
  using Hyp = HyperplaneHandle<V>;

  Dynamics(const Omega<B>& W, DynamicsOptions opt = {}) : W_(W), H_(W.hyperplanes()), X_(H_.backend()), opt_(opt) {}

  const DynamicsOptions& options() const { return opt_; }

  bool skewers(const Iso& g, const Edge& e) const {
    V gx = X_.apply(g, e.tail), gy = X_.apply(g, e.head);
    if (X_.distance(e.head, gy) + X_.distance(gy, gx) == X_.distance(e.head, gx)) return false;
    // g.hyp(e) must sit in the sector of head(e); without this an involution
    // flipping the configuration away from that sector would pass
    if (!(X_.proj_clique(gx, e.tail, e.head) == e.head)) return false;
    Hyp J = H_.hyp(e), gJ = H_.hyp(gx, gy);
    if (Hyperplanes<B>::same(J, gJ)) return false;
    return !H_.transverse(J, gJ);
  }

  /// First hit of the strongly separated orbit search with m <= max_power.
  std::optional<LoxoCertificate<V>> find_certificate(const Iso& g, long long max_power) const {
    if (X_.is_identity(g)) return std::nullopt;
    const V o = X_.basepoint();
    for (long long m = 1; m <= max_power; ++m) {
      opt_.budget.check("certificate search");
      auto path = X_.geodesic(o, X_.apply(X_.power(g, m), o));
      for (long long r = 1; r <= m; ++r) {
        Iso gr = X_.power(g, r);
        for (std::size_t i = 0; i + 1 < path.size(); ++i) {
          Edge e{path[i], path[i + 1]};
          if (!skewers(gr, e)) continue;
          if (H_.strongly_separated(H_.hyp(e), H_.hyp(apply_edge(X_, gr, e)))) return LoxoCertificate<V>{e, r, m};
        }
      }
    }
    return std::nullopt;
  }

  Classification<V> classify(const Iso& g0, bool paper_faithful = false) const {
    Iso g = reduced(g0);
    if (X_.is_identity(g)) return {Verdict::elliptic, std::nullopt, "trivial"};
    if (paper_faithful) return delta_test(g);
    if (auto c = find_certificate(g, opt_.cert_max_power)) return {Verdict::loxodromic, c, "certificate"};
    // No certificate yet. Accept "elliptic" only when orbits in Omega X show
    // no growth; otherwise keep looking for a certificate, then give up.
    if (!orbit_grows(g)) return {Verdict::elliptic, std::nullopt, "bounded-orbit"};
    if (auto c = find_certificate(g, 4 * opt_.cert_max_power)) return {Verdict::loxodromic, c, "certificate"};
    throw BudgetExceeded("classification undetermined: orbit grows but no strongly separated certificate found");
  }

  bool is_strongly_contracting(const Iso& g) const { return classify(g).verdict == Verdict::loxodromic; }

  /// (x, n) with x on an axis of g^n.
  std::pair<V, long long> find_axis_vertex(const Iso& g) const {
    const V o = X_.basepoint();
    for (long long k = 1; k <= opt_.axis_max_power; ++k) {
      opt_.budget.check("axis search");
      Iso gk = X_.power(g, k);
      auto path = X_.geodesic(o, X_.apply(gk, o));
      for (std::size_t i = 0; i + 1 < path.size(); ++i) {
        Edge e{path[i], path[i + 1]};
        if (!skewers(gk, e)) continue;
        Hyp J = H_.hyp(e), gJ = H_.hyp(apply_edge(X_, gk, e));
        if (H_.strongly_separated(J, gJ)) return {H_.carrier_min_pair(J, gJ).x, 2 * k};
      }
    }
    throw BudgetExceeded("no axis vertex found up to the configured power");
  }

  AxisData<V> axis_data(const Iso& g) const {
    auto [x, n] = find_axis_vertex(g);
    AxisData<V> a;
    a.base = x;
    a.power = n;
    Iso gn = X_.power(g, n);
    auto path = X_.geodesic(x, X_.apply(gn, x));
    a.tau_X = Rational(static_cast<long long>(path.size() - 1), n);
    bool found = false;
    for (long long k = 1; k <= opt_.axis_max_power && !found; ++k) {
      opt_.budget.check("strong separation power search");
      Iso gkn = X_.power(g, k * n);
      for (std::size_t i = 0; i + 1 < path.size() && !found; ++i) {
        Edge e{path[i], path[i + 1]};
        if (H_.strongly_separated(H_.hyp(e), H_.hyp(apply_edge(X_, gkn, e)))) {
          a.ss_edge = e;
          a.ss_power = k * n;
          found = true;
        }
      }
    }
    if (!found) throw BudgetExceeded("no strongly separated translate along the axis");
    const long long L = a.ss_power;
    const V& xh = a.ss_edge.tail;
    auto seps = H_.separators(X_.apply(X_.power(g, -3 * L), xh), X_.apply(X_.power(g, 3 * L), xh));
    if (auto h = hqc_exact(H_, seps, opt_.hqc_node_limit, opt_.budget)) {
      a.hqc = *h;
    } else {
      Rational bound = 6 * L * a.tau_X;
      BigInt c = boost::multiprecision::numerator(bound) / boost::multiprecision::denominator(bound);
      if (Rational(c) < bound) ++c;
      a.hqc = static_cast<std::size_t>(c);
      a.hqc_exact = false;
    }
    return a;
  }

  /// Cyclically reduced conjugate (the identity conjugator when the backend
  /// has nothing to reduce).
  Iso reduced(const Iso& g) const { return X_.conjugate_reduce(g).first; }

  /// Elliptic/loxodromic by displacement along a geodesic, k = ceil(17 delta).
  Classification<V> delta_test(const Iso& g) const {
    const Rational delta = W_.mode() == OmegaMode::contact ? X_.profile().delta_contact : X_.profile().delta_crossing;
    const Rational k17 = 17 * delta;
    BigInt k = boost::multiprecision::numerator(k17) / boost::multiprecision::denominator(k17);
    if (Rational(k) < k17) ++k;
    const long long kk = static_cast<long long>(k);
    Hyp o = base_hyperplane();
    Iso gk = X_.power(g, kk);
    auto chain = W_.distance(o, H_.translate(gk, o)).chain;
    for (const auto& y : chain) {
      opt_.budget.check("delta elliptic test");
      auto d = W_.value(y, H_.translate(gk, y));
      if (d && Rational(static_cast<long long>(*d)) <= 32 * delta) return {Verdict::elliptic, std::nullopt, "delta-test"};
    }
    return {Verdict::loxodromic, std::nullopt, "delta-test"};
  }

  Hyp base_hyperplane() const {
    const V o = X_.basepoint();
    auto menu = X_.labelled_menu(o);
    if (menu.empty()) throw ContractViolation("basepoint has no cliques");
    return H_.hyp(o, menu.front().first);
  }

 private:
  // d(o, g^m o) at m and 4m; bounded orbits keep it below the orbit diameter
  bool orbit_grows(const Iso& g) const {
    Hyp o = base_hyperplane();
    const long long m = opt_.growth_power;
    auto d1 = W_.value(o, H_.translate(X_.power(g, m), o));
    auto d4 = W_.value(o, H_.translate(X_.power(g, 4 * m), o));
    if (!d1 || !d4) return false;
    return *d4 > *d1 + 2;
  }

  const Omega<B>& W_;
  const Hyperplanes<B>& H_;
  const B& X_;
  DynamicsOptions opt_;
};

}  // namespace qmtl
