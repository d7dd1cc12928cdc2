#pragma once

#include <algorithm>
#include <array>
#include <cstdlib>
#include <deque>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "qmtl/defgraph.hpp"

namespace qmtl {

struct Point {
  long long x = 0;
  long long y = 0;
  friend bool operator==(const Point&, const Point&) = default;
  friend auto operator<=>(const Point&, const Point&) = default;
};

struct PointHash {
  std::size_t operator()(const Point& p) const {
    return hash_combine(std::hash<long long>{}(p.x), std::hash<long long>{}(p.y));
  }
};

struct Shift {
  long long dx = 0;
  long long dy = 0;
  friend bool operator==(const Shift&, const Shift&) = default;
};

struct StaircaseParams {
  long long n = 1;  // thickness
  long long w = 1;  // step width
  long long h = 1;  // step height
};

inline long long floor_div(long long a, long long b) {
  long long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

/// Induced subgraph of the square grid on {(x,y) : f(x) <= y <= f(x)+n},
/// f(x) = h * floor(x / w). A median graph, so every clique is an edge.
class Staircase {
 public:
  using Vertex = Point;
  using VertexHash = PointHash;
  using Iso = Shift;

  // label values
  static constexpr int kHorizontal = 0;
  static constexpr int kVertical = 1;

  explicit Staircase(StaircaseParams p) : p_(p) {
    if (p_.n < 1 || p_.w < 1 || p_.h < 1) throw ConfigError("staircase parameters must be positive");
    if (p_.n > 16 || p_.w > 16 || p_.h > 16) throw ConfigError("staircase parameters too large");
    check_window();
    connected_ = compute_crossing_connected();
    profile_.n_cliques_per_vertex = 4;
    profile_.delta_crossing = crossing_delta(4);
    profile_.clique_number = 2;
  }

  const StaircaseParams& params() const { return p_; }
  const HyperbolicityProfile& profile() const { return profile_; }

  long long floor_at(long long x) const { return p_.h * floor_div(x, p_.w); }
  bool in_region(const Point& q) const {
    long long f = floor_at(q.x);
    return q.y >= f && q.y <= f + p_.n;
  }

  std::size_t distance(const Point& a, const Point& b) const {
    return static_cast<std::size_t>(std::llabs(a.x - b.x) + std::llabs(a.y - b.y));
  }

  bool adjacent(const Point& a, const Point& b) const { return distance(a, b) == 1; }

  int edge_label(const Point& a, const Point& b) const {
    if (!adjacent(a, b)) throw ContractViolation("edge_label on non-adjacent vertices");
    return a.y == b.y ? kHorizontal : kVertical;
  }

  std::string label_name(int label) const { return label == kHorizontal ? "h" : "v"; }

  std::vector<Point> interval(const Point& a, const Point& b) const {
    std::vector<Point> out;
    for (long long x = std::min(a.x, b.x); x <= std::max(a.x, b.x); ++x)
      for (long long y = std::min(a.y, b.y); y <= std::max(a.y, b.y); ++y)
        if (in_region({x, y})) out.push_back({x, y});
    std::stable_sort(out.begin(), out.end(),
                     [&](const Point& u, const Point& v) { return distance(a, u) < distance(a, v); });
    return out;
  }

  std::vector<Point> clique_menu(const Point& a) const {
    std::vector<Point> out;
    for (auto [dx, dy] : kSteps) {
      Point q{a.x + dx, a.y + dy};
      if (in_region(q)) out.push_back(q);
    }
    return out;
  }

  std::vector<std::pair<Point, int>> labelled_menu(const Point& a) const {
    std::vector<std::pair<Point, int>> out;
    for (const auto& q : clique_menu(a)) out.emplace_back(q, q.y == a.y ? kHorizontal : kVertical);
    return out;
  }

  void for_each_geodesic(const Point& a, const Point& b, std::size_t cap,
                         const std::function<bool(const std::vector<Point>&)>& fn) const {
    const long long sx = b.x > a.x ? 1 : -1, sy = b.y > a.y ? 1 : -1;
    std::vector<Point> path{a};
    std::size_t count = 0;
    bool stop = false;
    std::function<void()> rec = [&]() {
      if (stop) return;
      const Point c = path.back();
      if (c == b) {
        if (++count > cap) throw BudgetExceeded("geodesic enumeration cap exceeded");
        if (!fn(path)) stop = true;
        return;
      }
      if (c.x != b.x && in_region({c.x + sx, c.y})) {
        path.push_back({c.x + sx, c.y});
        rec();
        path.pop_back();
      }
      if (!stop && c.y != b.y && in_region({c.x, c.y + sy})) {
        path.push_back({c.x, c.y + sy});
        rec();
        path.pop_back();
      }
    };
    rec();
  }

  // horizontal steps first whenever the region allows
  std::vector<Point> geodesic(const Point& a, const Point& b) const {
    const long long sx = b.x > a.x ? 1 : -1, sy = b.y > a.y ? 1 : -1;
    std::vector<Point> path{a};
    while (!(path.back() == b)) {
      Point c = path.back();
      if (c.x != b.x && in_region({c.x + sx, c.y}))
        path.push_back({c.x + sx, c.y});
      else if (c.y != b.y && in_region({c.x, c.y + sy}))
        path.push_back({c.x, c.y + sy});
      else
        throw ContractViolation("staircase region is not convex along this pair");
    }
    return path;
  }

  // Cliques are single edges: the gate is the nearer endpoint.
  Point proj_clique(const Point& x, const Point& a, const Point& b) const {
    return distance(x, a) <= distance(x, b) ? a : b;
  }

  std::string hyperplane_key(const Point& a, const Point& b) const {
    if (edge_label(a, b) == kHorizontal) return "V:" + std::to_string(std::min(a.x, b.x));
    return "H:" + std::to_string(std::min(a.y, b.y));
  }

  bool labels_may_cross(int a, int b) const { return a != b; }

  bool cliques_span_square(const Point& x, const Point& a, const Point& b) const {
    if (edge_label(x, a) == edge_label(x, b)) return false;
    return in_region({a.x + b.x - x.x, a.y + b.y - x.y});
  }

  std::optional<std::vector<Point>> clique_members(const Point& a, const Point& b) const {
    return std::vector<Point>{a, b};
  }

  std::size_t cliques_per_vertex() const { return 4; }
  bool crossing_connected() const { return connected_; }

  // --- isometries ------------------------------------------------------------

  Point basepoint() const { return {0, 0}; }
  Shift iso_identity() const { return {0, 0}; }

  void check_shift(const Shift& g) const {
    if (g.dx % p_.w != 0 || g.dy * p_.w != p_.h * g.dx)
      throw ConfigError("shift (" + std::to_string(g.dx) + "," + std::to_string(g.dy) +
                        ") does not preserve the staircase");
  }

  Point apply(const Shift& g, const Point& a) const { return {a.x + g.dx, a.y + g.dy}; }
  Shift compose(const Shift& g, const Shift& k) const { return {g.dx + k.dx, g.dy + k.dy}; }
  Shift inverse(const Shift& g) const { return {-g.dx, -g.dy}; }
  Shift power(const Shift& g, long long k) const { return {g.dx * k, g.dy * k}; }
  bool is_identity(const Shift& g) const { return g.dx == 0 && g.dy == 0; }
  std::pair<Shift, Shift> conjugate_reduce(const Shift& g) const { return {g, Shift{0, 0}}; }

  // --- text ------------------------------------------------------------------

  std::string vertex_str(const Point& a) const {
    return std::to_string(a.x) + "," + std::to_string(a.y);
  }

  std::string iso_str(const Shift& g) const {
    return "shift " + std::to_string(g.dx) + " " + std::to_string(g.dy);
  }

  std::string edge_str(const Point& a, const Point& b) const {
    static const char* names = "RLUD";
    for (int i = 0; i < 4; ++i)
      if (b.x - a.x == kSteps[i][0] && b.y - a.y == kSteps[i][1])
        return vertex_str(a) + "+" + names[i];
    throw ContractViolation("edge_str on non-adjacent vertices");
  }

  Point parse_vertex(const std::string& s) const {
    auto comma = s.find(',');
    if (comma == std::string::npos) throw ConfigError("staircase vertex '" + s + "' must be x,y");
    Point q;
    try {
      q = {std::stoll(s.substr(0, comma)), std::stoll(s.substr(comma + 1))};
    } catch (const std::exception&) {
      throw ConfigError("staircase vertex '" + s + "' must be x,y");
    }
    if (!in_region(q)) throw ConfigError("vertex " + s + " is outside the staircase");
    return q;
  }

  /// "shift dx dy", "dx dy" or "dx,dy"
  Shift parse_iso(const std::string& s) const {
    std::string t = s;
    if (t.rfind("shift", 0) == 0) t = t.substr(5);
    std::replace(t.begin(), t.end(), ',', ' ');
    std::istringstream in(t);
    Shift g;
    if (!(in >> g.dx >> g.dy)) throw ConfigError("isometry '" + s + "' must be 'shift dx dy'");
    std::string rest;
    if (in >> rest) throw ConfigError("isometry '" + s + "' has trailing text");
    check_shift(g);
    return g;
  }

  std::pair<Point, Point> parse_edge(const std::string& s) const {
    auto plus = s.rfind('+');
    if (plus == std::string::npos || plus + 2 != s.size())
      throw ConfigError("staircase edge '" + s + "' must be x,y+R|L|U|D");
    Point a = parse_vertex(s.substr(0, plus));
    const std::string dirs = "RLUD";
    auto d = dirs.find(s[plus + 1]);
    if (d == std::string::npos) throw ConfigError("bad direction in edge '" + s + "'");
    Point b{a.x + kSteps[d][0], a.y + kSteps[d][1]};
    if (!in_region(b)) throw ConfigError("edge '" + s + "' leaves the staircase");
    return {a, b};
  }

 private:
  static constexpr std::array<std::array<long long, 2>, 4> kSteps{{{1, 0}, {-1, 0}, {0, 1}, {0, -1}}};

  // BFS distances inside a window must be l1 (connected and convex).
  void check_window() const {
    std::vector<Point> pts;
    const long long x0 = -2 * p_.w, x1 = 4 * p_.w;
    for (long long x = x0; x <= x1; ++x)
      for (long long y = floor_at(x); y <= floor_at(x) + p_.n; ++y) pts.push_back({x, y});
    std::map<Point, std::size_t> index;
    for (std::size_t i = 0; i < pts.size(); ++i) index[pts[i]] = i;
    for (std::size_t s = 0; s < pts.size(); ++s) {
      std::vector<long long> dist(pts.size(), -1);
      std::deque<std::size_t> q{s};
      dist[s] = 0;
      while (!q.empty()) {
        std::size_t v = q.front();
        q.pop_front();
        for (auto [dx, dy] : kSteps) {
          auto it = index.find({pts[v].x + dx, pts[v].y + dy});
          if (it != index.end() && dist[it->second] < 0) {
            dist[it->second] = dist[v] + 1;
            q.push_back(it->second);
          }
        }
      }
      for (std::size_t t = 0; t < pts.size(); ++t)
        if (dist[t] != static_cast<long long>(distance(pts[s], pts[t])))
          throw ConfigError("staircase region is not l1-convex for these parameters");
    }
  }

  // No cut vertex iff every clique-link is connected; by periodicity one step
  // of columns suffices.
  bool compute_crossing_connected() const {
    for (long long x = 0; x < p_.w; ++x)
      for (long long y = floor_at(x); y <= floor_at(x) + p_.n; ++y) {
        Point c{x, y};
        auto nb = clique_menu(c);
        std::vector<bool> seen(nb.size(), false);
        std::vector<std::size_t> st{0};
        seen[0] = true;
        while (!st.empty()) {
          std::size_t i = st.back();
          st.pop_back();
          for (std::size_t j = 0; j < nb.size(); ++j)
            if (!seen[j] && cliques_span_square(c, nb[i], nb[j])) {
              seen[j] = true;
              st.push_back(j);
            }
        }
        for (bool b : seen)
          if (!b) return false;
      }
    return true;
  }

  StaircaseParams p_;
  HyperbolicityProfile profile_;
  bool connected_ = false;
};

}  // namespace qmtl
