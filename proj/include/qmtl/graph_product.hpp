#pragma once

#include <algorithm>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "qmtl/defgraph.hpp"
#include "qmtl/words.hpp"

namespace qmtl {

/// Cayley graph QM(Gamma, G) of a graph product with respect to the union of
/// the vertex groups. Vertices are normal forms; isometries are left
/// multiplications by normal forms.
class GraphProduct {
 public:
  using Vertex = NormalForm;
  using VertexHash = NormalFormHash;
  using Iso = NormalForm;

  explicit GraphProduct(Presentation P) : P_(std::move(P)), profile_(hyperbolicity_profile(P_.graph)) {}

  const Presentation& presentation() const { return P_; }
  const DefGraph& graph() const { return P_.graph; }
  const HyperbolicityProfile& profile() const { return profile_; }

  // --- metric ---------------------------------------------------------------

  NormalForm quotient(const Vertex& x, const Vertex& y) const { return nf_mul(P_, nf_inv(P_, x), y); }

  std::size_t distance(const Vertex& x, const Vertex& y) const { return quotient(x, y).length(); }

  bool adjacent(const Vertex& x, const Vertex& y) const { return distance(x, y) == 1; }

  int edge_label(const Vertex& p, const Vertex& q) const {
    NormalForm s = quotient(p, q);
    if (s.length() != 1) throw ContractViolation("edge_label on non-adjacent vertices");
    return static_cast<int>(s.syl[0].vertex);
  }

  std::string label_name(int label) const { return P_.graph.name(static_cast<std::size_t>(label)); }

  /// All vertices on geodesics from x to y, sorted by distance from x.
  std::vector<Vertex> interval(const Vertex& x, const Vertex& y) const {
    SyllablePoset po(P_, quotient(x, y));
    std::vector<std::pair<std::size_t, Vertex>> found;
    for_each_down_set(po, [&](const std::vector<bool>& in) {
      std::vector<Syllable> sub;
      for (std::size_t i = 0; i < in.size(); ++i)
        if (in[i]) sub.push_back(po.syllable(i));
      // a down-set is a reduced prefix, so its size is the distance from x
      found.emplace_back(sub.size(), nf_mul(P_, x, reduce(P_, sub)));
      return true;
    });
    std::stable_sort(found.begin(), found.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<Vertex> out;
    out.reserve(found.size());
    for (auto& f : found) out.push_back(std::move(f.second));
    return out;
  }

  /// One representative x * s_u per clique through x.
  std::vector<Vertex> clique_menu(const Vertex& x) const {
    std::vector<Vertex> out;
    for (std::size_t u = 0; u < P_.graph.size(); ++u)
      out.push_back(nf_mul(P_, x, NormalForm{{P_.groups.sample_nontrivial(u)}}));
    return out;
  }

  std::vector<std::pair<Vertex, int>> labelled_menu(const Vertex& x) const {
    std::vector<std::pair<Vertex, int>> out;
    for (std::size_t u = 0; u < P_.graph.size(); ++u)
      out.emplace_back(nf_mul(P_, x, NormalForm{{P_.groups.sample_nontrivial(u)}}), static_cast<int>(u));
    return out;
  }

  /// Enumerates geodesics as vertex sequences, one per linear extension.
  /// Throws BudgetExceeded past `cap` paths; fn returning false stops early.
  void for_each_geodesic(const Vertex& x, const Vertex& y, std::size_t cap,
                         const std::function<bool(const std::vector<Vertex>&)>& fn) const {
    SyllablePoset po(P_, quotient(x, y));
    std::size_t count = 0;
    for_each_linear_extension(po, [&](const std::vector<std::size_t>& order) {
      if (++count > cap) throw BudgetExceeded("geodesic enumeration cap exceeded");
      std::vector<Vertex> path{x};
      for (std::size_t i : order)
        path.push_back(nf_mul(P_, path.back(), NormalForm{{po.syllable(i)}}));
      return fn(path);
    });
  }

  /// The geodesic that reads x^-1 y in canonical order.
  std::vector<Vertex> geodesic(const Vertex& x, const Vertex& y) const {
    NormalForm w = quotient(x, y);
    std::vector<Vertex> path{x};
    for (const auto& s : w.syl) path.push_back(nf_mul(P_, path.back(), NormalForm{{s}}));
    return path;
  }

  /// Gate of x in the clique through the edge (p, q).
  Vertex proj_clique(const Vertex& x, const Vertex& p, const Vertex& q) const {
    const std::size_t u = static_cast<std::size_t>(edge_label(p, q));
    SyllablePoset po(P_, quotient(p, x));
    for (std::size_t i = 0; i < po.size(); ++i)
      if (po.syllable(i).vertex == u && po.is_minimal(i))
        return nf_mul(P_, p, NormalForm{{po.syllable(i)}});
    return p;
  }

  /// Label plus the shortest representative of the coset p<star(u)>. Two
  /// cliques labelled u lie in one hyperplane iff their cosets agree.
  std::string hyperplane_key(const Vertex& p, const Vertex& q) const {
    const std::size_t u = static_cast<std::size_t>(edge_label(p, q));
    // Strip the largest up-closed set of syllables lying in star(u); this is
    // what repeatedly deleting maximal star(u)-syllables ends with.
    const std::size_t n = p.syl.size();
    std::vector<bool> drop(n, false);
    for (std::size_t i = n; i-- > 0;) {
      if (!P_.graph.in_star(u, p.syl[i].vertex)) continue;
      bool ok = true;
      for (std::size_t j = i + 1; j < n && ok; ++j)
        if (!drop[j] && detail::dependent(P_, p.syl[i], p.syl[j])) ok = false;
      drop[i] = ok;
    }
    std::vector<Syllable> w;
    for (std::size_t i = 0; i < n; ++i)
      if (!drop[i]) w.push_back(p.syl[i]);
    return P_.graph.name(u) + "|" + format_word(P_, NormalForm{detail::canonical_order(P_, std::move(w))});
  }

  bool labels_may_cross(int a, int b) const {
    return a != b && P_.graph.adjacent(static_cast<std::size_t>(a), static_cast<std::size_t>(b));
  }

  /// Do the cliques through (x,a) and (x,b) span a square?
  bool cliques_span_square(const Vertex& x, const Vertex& a, const Vertex& b) const {
    return labels_may_cross(edge_label(x, a), edge_label(x, b));
  }

  /// Members of the clique through (p,q) when the vertex group is finite.
  std::optional<std::vector<Vertex>> clique_members(const Vertex& p, const Vertex& q) const {
    const std::size_t u = static_cast<std::size_t>(edge_label(p, q));
    const auto& G = P_.groups.at(u);
    auto order = G.finite_order();
    if (!order) return std::nullopt;
    std::vector<Vertex> out;
    for (std::size_t i = 0; i < *order; ++i) {
      BigInt v = G.kind() == GroupKind::finite_table ? BigInt(i) : G.from_exponent(BigInt(i));
      out.push_back(nf_mul(P_, p, reduce(P_, {Syllable{u, v}})));
    }
    return out;
  }

  std::size_t cliques_per_vertex() const { return P_.graph.size(); }
  bool crossing_connected() const { return qmtl::crossing_connected(P_.graph); }

  // --- isometries ------------------------------------------------------------

  Vertex basepoint() const { return NormalForm{}; }
  Iso iso_identity() const { return NormalForm{}; }
  Vertex apply(const Iso& g, const Vertex& x) const { return nf_mul(P_, g, x); }
  Iso compose(const Iso& g, const Iso& h) const { return nf_mul(P_, g, h); }
  Iso inverse(const Iso& g) const { return nf_inv(P_, g); }
  Iso power(const Iso& g, long long k) const { return nf_pow(P_, g, k); }
  bool is_identity(const Iso& g) const { return g.is_identity(); }

  /// Returns (h, c) with g = c h c^-1 and h cyclically reduced.
  std::pair<Iso, Iso> conjugate_reduce(const Iso& g) const {
    auto r = cyclic_reduce(P_, g);
    return {r.h, r.c};
  }

  // --- text ------------------------------------------------------------------

  std::string vertex_str(const Vertex& x) const { return format_word(P_, x); }
  std::string iso_str(const Iso& g) const { return format_word(P_, g); }

  std::string edge_str(const Vertex& p, const Vertex& q) const {
    NormalForm s = quotient(p, q);
    if (s.length() != 1) throw ContractViolation("edge_str on non-adjacent vertices");
    return format_word(P_, p) + "+" + format_syllable(P_, s.syl[0]);
  }

  Vertex parse_vertex(const std::string& s) const { return parse_word(P_, s); }
  Iso parse_iso(const std::string& s) const { return parse_word(P_, s); }

  std::pair<Vertex, Vertex> parse_edge(const std::string& s) const {
    auto plus = s.rfind('+');
    if (plus == std::string::npos) throw ConfigError("edge '" + s + "' needs the form word+token");
    Vertex p = parse_word(P_, s.substr(0, plus));
    NormalForm t = parse_word(P_, s.substr(plus + 1));
    if (t.length() != 1) throw ConfigError("edge '" + s + "' must end in a single nontrivial syllable");
    return {p, nf_mul(P_, p, t)};
  }

 private:
  Presentation P_;
  HyperbolicityProfile profile_;
};

}  // namespace qmtl
