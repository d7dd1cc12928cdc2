#pragma once

#include <algorithm>
#include <deque>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

#include "qmtl/hyperplanes.hpp"

namespace qmtl {

enum class OmegaMode { crossing, contact };

inline std::string mode_name(OmegaMode m) { return m == OmegaMode::crossing ? "crossing" : "contact"; }

inline OmegaMode parse_mode(const std::string& s) {
  if (s == "crossing") return OmegaMode::crossing;
  if (s == "contact") return OmegaMode::contact;
  throw ConfigError("mode must be 'crossing' or 'contact', got '" + s + "'");
}

template <class V>
struct OmegaDistance {
  std::optional<std::size_t> value;  // empty when no chain exists
  std::vector<HyperplaneHandle<V>> chain;

  bool finite() const { return value.has_value(); }
};

/// Memo of Omega distances keyed by mode and the two hyperplane keys. Safe
/// for concurrent use; can be written to and read back from a text file.
class DistanceCache {
 public:
  static constexpr const char* kHeader = "QMTLCACHE v1";

  std::optional<long long> get(OmegaMode m, const std::string& a, const std::string& b) const {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = map_.find(key(m, a, b));
    if (it == map_.end()) return std::nullopt;
    return it->second;
  }

  // value < 0 records "no chain"
  void put(OmegaMode m, const std::string& a, const std::string& b, long long value) {
    std::lock_guard<std::mutex> lock(mu_);
    map_[key(m, a, b)] = value;
  }

  std::size_t size() const {
    std::lock_guard<std::mutex> lock(mu_);
    return map_.size();
  }

  void load(const std::string& path) {
    std::ifstream in(path);
    if (!in) return;  // a missing cache is an empty cache
    std::string line;
    if (!std::getline(in, line) || line != kHeader) throw ConfigError("'" + path + "' is not a QMTLCACHE v1 file");
    std::lock_guard<std::mutex> lock(mu_);
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      std::vector<std::string> f;
      std::size_t start = 0;
      for (std::size_t pos; (pos = line.find('\t', start)) != std::string::npos; start = pos + 1)
        f.push_back(line.substr(start, pos - start));
      f.push_back(line.substr(start));
      if (f.size() != 4) throw ConfigError("malformed cache line in '" + path + "'");
      try {
        map_[key(parse_mode(f[0]), f[1], f[2])] = std::stoll(f[3]);
      } catch (const std::invalid_argument&) {
        throw ConfigError("malformed cache value in '" + path + "'");
      }
    }
  }

  void save(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write cache file '" + path + "'");
    out << kHeader << '\n';
    std::lock_guard<std::mutex> lock(mu_);
    for (const auto& [k, v] : map_)
      out << mode_name(std::get<0>(k)) << '\t' << std::get<1>(k) << '\t' << std::get<2>(k) << '\t' << v << '\n';
  }

 private:
  using Key = std::tuple<OmegaMode, std::string, std::string>;
  static Key key(OmegaMode m, const std::string& a, const std::string& b) {
    return a < b ? Key{m, a, b} : Key{m, b, a};
  }

  mutable std::mutex mu_;
  std::map<Key, long long> map_;
};

/// Induced subgraph of the crossing or contact graph on the hyperplanes whose
/// carriers meet a convex vertex set C. Relations are read off clique data at
/// the vertices of C: two such hyperplanes touch (or cross) iff they do so at
/// some vertex of C.
template <QMBackend B>
class OmegaSubgraph {
 public:
  using V = typename B::Vertex;
  using Hyp = HyperplaneHandle<V>;

  OmegaSubgraph(const Hyperplanes<B>& H, const std::vector<V>& C, OmegaMode mode) {
    const B& b = H.backend();
    for (const auto& z : C) {
      auto menu = b.labelled_menu(z);
      std::vector<std::size_t> ids;
      ids.reserve(menu.size());
      for (const auto& [m, label] : menu) {
        Hyp h{{z, m}, label, b.hyperplane_key(z, m)};
        auto [it, fresh] = index_.emplace(h.key, nodes_.size());
        if (fresh) {
          nodes_.push_back(std::move(h));
          adj_.emplace_back();
        }
        ids.push_back(it->second);
      }
      for (std::size_t i = 0; i < ids.size(); ++i)
        for (std::size_t j = i + 1; j < ids.size(); ++j) {
          if (ids[i] == ids[j]) continue;
          if (mode == OmegaMode::crossing && !b.cliques_span_square(z, menu[i].first, menu[j].first)) continue;
          adj_[ids[i]].push_back(ids[j]);
          adj_[ids[j]].push_back(ids[i]);
        }
    }
    for (auto& a : adj_) {
      std::sort(a.begin(), a.end());
      a.erase(std::unique(a.begin(), a.end()), a.end());
    }
  }

  std::size_t size() const { return nodes_.size(); }
  const Hyp& node(std::size_t i) const { return nodes_[i]; }
  const std::vector<std::size_t>& neighbours(std::size_t i) const { return adj_[i]; }

  std::optional<std::size_t> find(const std::string& key) const {
    auto it = index_.find(key);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  struct Search {
    std::vector<long long> dist;  // -1 when unreachable
    std::vector<std::size_t> parent;
  };

  Search bfs(std::size_t src) const {
    Search s{std::vector<long long>(size(), -1), std::vector<std::size_t>(size(), src)};
    std::deque<std::size_t> q{src};
    s.dist[src] = 0;
    while (!q.empty()) {
      std::size_t v = q.front();
      q.pop_front();
      for (std::size_t w : adj_[v])
        if (s.dist[w] < 0) {
          s.dist[w] = s.dist[v] + 1;
          s.parent[w] = v;
          q.push_back(w);
        }
    }
    return s;
  }

  std::vector<Hyp> chain(const Search& s, std::size_t src, std::size_t dst) const {
    std::vector<Hyp> out;
    if (s.dist[dst] < 0) return out;
    for (std::size_t v = dst;; v = s.parent[v]) {
      out.push_back(nodes_[v]);
      if (v == src) break;
    }
    std::reverse(out.begin(), out.end());
    return out;
  }

 private:
  std::vector<Hyp> nodes_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<std::vector<std::size_t>> adj_;
};

/// Distances in the crossing graph or the contact graph.
template <QMBackend B>
class Omega {
 public:
  using V = typename B::Vertex;
  using Hyp = HyperplaneHandle<V>;
  using Dist = OmegaDistance<V>;

  Omega(const Hyperplanes<B>& H, OmegaMode mode, DistanceCache* cache = nullptr)
      : H_(H), mode_(mode), cache_(cache) {
    if (mode_ == OmegaMode::crossing && !H_.backend().crossing_connected())
      throw ConfigError("crossing mode needs a graph without cut vertices (connected defining graph)");
  }

  OmegaMode mode() const { return mode_; }
  const Hyperplanes<B>& hyperplanes() const { return H_; }
  DistanceCache* cache() const { return cache_; }

  /// Exact distance with a witness chain: breadth-first search among the
  /// hyperplanes whose carriers meet the interval between a closest pair of
  /// carrier vertices.
  Dist distance(const Hyp& A, const Hyp& C) const {
    if (Hyperplanes<B>::same(A, C)) return {0, {A}};
    auto mp = H_.carrier_min_pair(A, C);
    OmegaSubgraph<B> G(H_, H_.backend().interval(mp.x, mp.x2), mode_);
    auto a = G.find(A.key), c = G.find(C.key);
    if (!a || !c) throw ContractViolation("carrier pair does not see its own hyperplanes");
    auto s = G.bfs(*a);
    Dist d;
    if (s.dist[*c] >= 0) {
      d.value = static_cast<std::size_t>(s.dist[*c]);
      d.chain = G.chain(s, *a, *c);
      d.chain.front() = A;
      d.chain.back() = C;
    }
    if (cache_) cache_->put(mode_, A.key, C.key, d.value ? static_cast<long long>(*d.value) : -1);
    return d;
  }

  /// Distance value only; consults the cache first.
  std::optional<std::size_t> value(const Hyp& A, const Hyp& C) const {
    if (Hyperplanes<B>::same(A, C)) return 0;
    if (cache_) {
      if (auto v = cache_->get(mode_, A.key, C.key)) {
        if (*v < 0) return std::nullopt;
        return static_cast<std::size_t>(*v);
      }
    }
    return distance(A, C).value;
  }

  /// d(A, g^k A)
  Dist displacement(const Hyp& A, const typename B::Iso& g, long long k) const {
    const B& b = H_.backend();
    return distance(A, H_.translate(b.power(g, k), A));
  }

  std::optional<std::size_t> displacement_value(const Hyp& A, const typename B::Iso& g, long long k) const {
    const B& b = H_.backend();
    return value(A, H_.translate(b.power(g, k), A));
  }

 private:
  const Hyperplanes<B>& H_;
  OmegaMode mode_;
  DistanceCache* cache_;
};

}  // namespace qmtl
