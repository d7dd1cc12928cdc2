#pragma once

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <functional>
#include <queue>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "qmtl/defgraph.hpp"
#include "qmtl/groups.hpp"

namespace qmtl {

/// Defining graph plus vertex groups: everything needed to multiply words.
struct Presentation {
  DefGraph graph;
  GroupFamily groups;

  Presentation() = default;
  Presentation(DefGraph g, GroupFamily f) : graph(std::move(g)), groups(std::move(f)) {
    if (groups.size() != graph.size())
      throw ConfigError("every vertex of the defining graph needs a group");
  }
};

using Syllable = GroupElement;

/// Graphically reduced word in canonical order. Equality is structural.
struct NormalForm {
  std::vector<Syllable> syl;

  std::size_t length() const { return syl.size(); }
  bool is_identity() const { return syl.empty(); }

  friend bool operator==(const NormalForm&, const NormalForm&) = default;
  friend bool operator<(const NormalForm& a, const NormalForm& b) {
    if (a.syl.size() != b.syl.size()) return a.syl.size() < b.syl.size();
    return a.syl < b.syl;
  }
};

struct NormalFormHash {
  std::size_t operator()(const NormalForm& w) const {
    std::size_t h = w.syl.size();
    for (const auto& s : w.syl) h = hash_combine(hash_combine(h, s.vertex), hash_bigint(s.value));
    return h;
  }
};

namespace detail {

// Pushes s onto a graphically reduced word, keeping it reduced. We look back
// past syllables that commute with s; meeting the same vertex means merge.
inline void insert_syllable(const Presentation& P, std::vector<Syllable>& w, Syllable s) {
  if (P.groups.is_identity(s)) return;
  for (std::size_t k = w.size(); k-- > 0;) {
    if (w[k].vertex == s.vertex) {
      w[k] = P.groups.mul(w[k], s);
      if (P.groups.is_identity(w[k])) w.erase(w.begin() + static_cast<std::ptrdiff_t>(k));
      return;
    }
    if (!P.graph.adjacent(w[k].vertex, s.vertex)) break;
  }
  w.push_back(std::move(s));
}

inline bool dependent(const Presentation& P, const Syllable& a, const Syllable& b) {
  return a.vertex == b.vertex || !P.graph.adjacent(a.vertex, b.vertex);
}

// Greedy least-vertex linearisation of the dependence poset. Each syllable
// only needs edges from the latest earlier syllable at every vertex it
// depends on; the rest of the order follows transitively.
inline std::vector<Syllable> canonical_order(const Presentation& P, std::vector<Syllable> w) {
  const std::size_t n = w.size();
  if (n < 2) return w;
  const std::size_t nv = P.graph.size();
  std::vector<std::size_t> last(nv, n), pending(n, 0);
  std::vector<std::vector<std::size_t>> succ(n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t v = 0; v < nv; ++v)
      if (last[v] != n && (v == w[j].vertex || !P.graph.adjacent(v, w[j].vertex))) {
        succ[last[v]].push_back(j);
        ++pending[j];
      }
    last[w[j].vertex] = j;
  }
  using Item = std::pair<std::size_t, std::size_t>;  // (vertex, index)
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> ready;
  for (std::size_t i = 0; i < n; ++i)
    if (pending[i] == 0) ready.push({w[i].vertex, i});
  std::vector<Syllable> out;
  out.reserve(n);
  while (!ready.empty()) {
    std::size_t i = ready.top().second;
    ready.pop();
    for (std::size_t j : succ[i])
      if (--pending[j] == 0) ready.push({w[j].vertex, j});
    out.push_back(std::move(w[i]));
  }
  return out;
}

// Right-multiplies a word already in canonical order by one syllable and
// keeps it canonical: the new syllable goes after the last syllable it
// depends on, before the first later one with a larger vertex. Returns false
// if a syllable cancelled; the order then has to be recomputed.
inline bool push_canonical(const Presentation& P, std::vector<Syllable>& w, const Syllable& s) {
  if (P.groups.is_identity(s)) return true;
  std::size_t k = w.size();
  while (k > 0 && w[k - 1].vertex != s.vertex && P.graph.adjacent(w[k - 1].vertex, s.vertex)) --k;
  if (k > 0 && w[k - 1].vertex == s.vertex) {
    w[k - 1] = P.groups.mul(w[k - 1], s);
    if (!P.groups.is_identity(w[k - 1])) return true;
    w.erase(w.begin() + static_cast<std::ptrdiff_t>(k - 1));
    return false;
  }
  while (k < w.size() && w[k].vertex < s.vertex) ++k;
  w.insert(w.begin() + static_cast<std::ptrdiff_t>(k), s);
  return true;
}

}  // namespace detail

inline NormalForm reduce(const Presentation& P, const std::vector<Syllable>& raw) {
  std::vector<Syllable> w;
  bool canonical = true;
  for (const auto& s : raw) {
    if (s.vertex >= P.graph.size()) throw ConfigError("unknown vertex index in word");
    if (canonical)
      canonical = detail::push_canonical(P, w, s);
    else
      detail::insert_syllable(P, w, s);
  }
  if (canonical) return NormalForm{std::move(w)};
  return NormalForm{detail::canonical_order(P, std::move(w))};
}

inline NormalForm nf_mul(const Presentation& P, const NormalForm& x, const NormalForm& y) {
  if (y.is_identity()) return x;
  if (x.is_identity()) return y;
  std::vector<Syllable> w = x.syl;
  bool canonical = true;
  for (const auto& s : y.syl) {
    if (canonical)
      canonical = detail::push_canonical(P, w, s);
    else
      detail::insert_syllable(P, w, s);
  }
  if (canonical) return NormalForm{std::move(w)};
  return NormalForm{detail::canonical_order(P, std::move(w))};
}

inline NormalForm nf_inv(const Presentation& P, const NormalForm& x) {
  // the reversed inverse is reduced, so nothing cancels
  std::vector<Syllable> w;
  w.reserve(x.syl.size());
  for (auto it = x.syl.rbegin(); it != x.syl.rend(); ++it) detail::push_canonical(P, w, P.groups.inv(*it));
  return NormalForm{std::move(w)};
}

inline bool nf_eq(const NormalForm& x, const NormalForm& y) { return x == y; }

inline NormalForm nf_pow(const Presentation& P, NormalForm g, long long k) {
  if (k < 0) {
    g = nf_inv(P, g);
    k = -k;
  }
  NormalForm result;
  while (k > 0) {
    if (k & 1) result = nf_mul(P, result, g);
    k >>= 1;
    if (k) g = nf_mul(P, g, g);
  }
  return result;
}

/// Syllable dependence poset: i before j when i < j and the syllables share a
/// vertex or have non-adjacent vertices, closed transitively.
class SyllablePoset {
 public:
  SyllablePoset(const Presentation& P, const NormalForm& g) : syl_(g.syl) {
    const std::size_t n = syl_.size();
    dep_.assign(n, std::vector<bool>(n, false));
    below_.assign(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (detail::dependent(P, syl_[i], syl_[j])) dep_[i][j] = true;
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = j; i-- > 0;)
        if (dep_[i][j]) {
          below_[i][j] = true;
          for (std::size_t k = 0; k < i; ++k)
            if (below_[k][i]) below_[k][j] = true;
        }
  }

  std::size_t size() const { return syl_.size(); }
  const Syllable& syllable(std::size_t i) const { return syl_[i]; }
  const std::vector<Syllable>& syllables() const { return syl_; }

  // raw (non-transitive) dependence, i < j
  bool depends(std::size_t i, std::size_t j) const { return i < j && dep_[i][j]; }
  bool precedes(std::size_t i, std::size_t j) const { return i < j && below_[i][j]; }

  std::vector<std::pair<std::size_t, std::size_t>> relations() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t i = 0; i < size(); ++i)
      for (std::size_t j = i + 1; j < size(); ++j)
        if (below_[i][j]) out.emplace_back(i, j);
    return out;
  }

  bool is_minimal(std::size_t j) const {
    for (std::size_t i = 0; i < j; ++i)
      if (dep_[i][j]) return false;
    return true;
  }

  bool is_maximal(std::size_t i) const {
    for (std::size_t j = i + 1; j < size(); ++j)
      if (dep_[i][j]) return false;
    return true;
  }

 private:
  std::vector<Syllable> syl_;
  std::vector<std::vector<bool>> dep_;
  std::vector<std::vector<bool>> below_;
};

inline SyllablePoset syllable_poset(const Presentation& P, const NormalForm& g) {
  return SyllablePoset(P, g);
}

/// Calls fn(mask) once per order ideal, in a fixed include-before-exclude DFS
/// order. Returning false from fn stops the walk.
inline void for_each_down_set(const SyllablePoset& p,
                              const std::function<bool(const std::vector<bool>&)>& fn) {
  const std::size_t n = p.size();
  std::vector<bool> in(n, false);
  bool stop = false;
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (stop) return;
    if (i == n) {
      if (!fn(in)) stop = true;
      return;
    }
    bool can_take = true;
    for (std::size_t j = 0; j < i && can_take; ++j)
      if (p.depends(j, i) && !in[j]) can_take = false;
    if (can_take) {
      in[i] = true;
      rec(i + 1);
      in[i] = false;
    }
    rec(i + 1);
  };
  rec(0);
}

inline std::vector<std::vector<std::size_t>> down_sets(const SyllablePoset& p) {
  std::vector<std::vector<std::size_t>> out;
  for_each_down_set(p, [&](const std::vector<bool>& in) {
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < in.size(); ++i)
      if (in[i]) s.push_back(i);
    out.push_back(std::move(s));
    return true;
  });
  return out;
}

/// Calls fn(order) once per linear extension; available syllables are tried
/// in increasing index order. Returning false from fn stops the walk.
inline void for_each_linear_extension(const SyllablePoset& p,
                                      const std::function<bool(const std::vector<std::size_t>&)>& fn) {
  const std::size_t n = p.size();
  std::vector<std::size_t> pending(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (p.depends(i, j)) ++pending[j];
  std::vector<bool> used(n, false);
  std::vector<std::size_t> order;
  bool stop = false;
  std::function<void()> rec = [&]() {
    if (stop) return;
    if (order.size() == n) {
      if (!fn(order)) stop = true;
      return;
    }
    for (std::size_t i = 0; i < n && !stop; ++i) {
      if (used[i] || pending[i] != 0) continue;
      used[i] = true;
      order.push_back(i);
      for (std::size_t j = i + 1; j < n; ++j)
        if (p.depends(i, j)) --pending[j];
      rec();
      for (std::size_t j = i + 1; j < n; ++j)
        if (p.depends(i, j)) ++pending[j];
      order.pop_back();
      used[i] = false;
    }
  };
  rec();
}

inline std::vector<std::vector<std::size_t>> linear_extensions(const SyllablePoset& p) {
  std::vector<std::vector<std::size_t>> out;
  for_each_linear_extension(p, [&](const std::vector<std::size_t>& o) {
    out.push_back(o);
    return true;
  });
  return out;
}

struct CyclicReduction {
  NormalForm h;  // cyclically reduced
  NormalForm c;  // g = c h c^-1
};

/// Conjugates away a minimal syllable that shares its vertex with some maximal
/// syllable, until no such pair is left.
inline CyclicReduction cyclic_reduce(const Presentation& P, const NormalForm& g) {
  CyclicReduction r{g, NormalForm{}};
  for (;;) {
    SyllablePoset po(P, r.h);
    bool changed = false;
    for (std::size_t i = 0; i < po.size() && !changed; ++i) {
      if (!po.is_minimal(i)) continue;
      for (std::size_t j = 0; j < po.size(); ++j) {
        if (j == i || !po.is_maximal(j) || po.syllable(j).vertex != po.syllable(i).vertex) continue;
        NormalForm s{{po.syllable(i)}};
        // h = s h' s^-1 with h' = s^-1 h s
        r.h = nf_mul(P, nf_mul(P, nf_inv(P, s), r.h), s);
        r.c = nf_mul(P, r.c, s);
        changed = true;
        break;
      }
    }
    if (!changed) return r;
  }
}

// ---------------------------------------------------------------------------
// Text syntax: tokens v, v^k, v^-k, v:name separated by whitespace; "1" is the
// identity. A token made only of single-letter vertex names ("uv") is split.

inline Syllable parse_syllable(const Presentation& P, const std::string& tok) {
  auto colon = tok.find(':');
  if (colon != std::string::npos) {
    std::size_t v = P.graph.require(tok.substr(0, colon));
    return {v, P.groups.at(v).from_name(tok.substr(colon + 1))};
  }
  auto caret = tok.find('^');
  std::string name = tok.substr(0, caret);
  std::size_t v = P.graph.require(name);
  const auto& G = P.groups.at(v);
  if (caret == std::string::npos) {
    if (G.kind() == GroupKind::finite_table) return {v, G.sample_nontrivial()};
    return {v, G.from_exponent(1)};
  }
  std::string e = tok.substr(caret + 1);
  if (e.empty()) throw ConfigError("missing exponent in '" + tok + "'");
  std::size_t start = (e[0] == '-' || e[0] == '+') ? 1 : 0;
  if (start == e.size()) throw ConfigError("bad exponent in '" + tok + "'");
  for (std::size_t i = start; i < e.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(e[i])))
      throw ConfigError("bad exponent in '" + tok + "'");
  return {v, G.from_exponent(BigInt(e))};
}

inline std::vector<Syllable> parse_raw_word(const Presentation& P, const std::string& text) {
  std::istringstream in(text);
  std::string tok;
  std::vector<Syllable> raw;
  while (in >> tok) {
    if (tok == "1") continue;
    if (P.graph.find(tok) || tok.find_first_of("^:") != std::string::npos) {
      raw.push_back(parse_syllable(P, tok));
      continue;
    }
    bool splittable = tok.size() > 1;
    for (char c : tok) splittable = splittable && P.graph.find(std::string(1, c)).has_value();
    if (!splittable) throw ConfigError("unknown vertex '" + tok + "'");
    for (char c : tok) raw.push_back(parse_syllable(P, std::string(1, c)));
  }
  return raw;
}

inline NormalForm parse_word(const Presentation& P, const std::string& text) {
  return reduce(P, parse_raw_word(P, text));
}

inline std::string format_syllable(const Presentation& P, const Syllable& s) {
  const std::string& name = P.graph.name(s.vertex);
  const auto& G = P.groups.at(s.vertex);
  switch (G.kind()) {
    case GroupKind::finite_table:
      return name + ":" + G.element_name(static_cast<std::size_t>(s.value));
    case GroupKind::cyclic:
      if (G.order() == 2 || s.value == 1) return name;
      return name + "^" + s.value.str();
    case GroupKind::integers:
      if (s.value == 1) return name;
      return name + "^" + s.value.str();
  }
  return name;
}

inline std::string format_word(const Presentation& P, const NormalForm& w) {
  if (w.is_identity()) return "1";
  std::string out;
  for (const auto& s : w.syl) {
    if (!out.empty()) out += ' ';
    out += format_syllable(P, s);
  }
  return out;
}

}  // namespace qmtl
