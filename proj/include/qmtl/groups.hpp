#pragma once

#include <cstddef>
#include <compare>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qmtl/common.hpp"

namespace qmtl {

enum class GroupKind { cyclic, integers, finite_table };

/// Word-problem oracle for one vertex group. Elements are encoded as a single
/// big integer: a residue in [0, m) for cyclic(m), the integer itself for Z,
/// and the row index for a multiplication table.
class VertexGroupSpec {
 public:
  static VertexGroupSpec cyclic(unsigned long order) {
    if (order < 2) throw ConfigError("cyclic group order must be at least 2");
    VertexGroupSpec g;
    g.kind_ = GroupKind::cyclic;
    g.order_ = order;
    return g;
  }

  static VertexGroupSpec integers() {
    VertexGroupSpec g;
    g.kind_ = GroupKind::integers;
    return g;
  }

  /// Builds and validates a finite group from its table. `inverse` may be
  /// empty, in which case it is derived from `mul`.
  static VertexGroupSpec table(std::vector<std::string> names, std::size_t identity,
                               std::vector<std::vector<std::size_t>> mul,
                               std::vector<std::size_t> inverse = {}) {
    const std::size_t n = names.size();
    if (n < 2) throw ConfigError("table group must be nontrivial");
    if (identity >= n) throw ConfigError("table identity index out of range");
    if (mul.size() != n) throw ConfigError("multiplication table has wrong row count");
    for (const auto& row : mul) {
      if (row.size() != n) throw ConfigError("multiplication table has wrong row length");
      for (auto v : row)
        if (v >= n) throw ConfigError("multiplication table entry out of range");
    }
    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < n; ++i) {
      if (names[i].empty()) throw ConfigError("empty table element name");
      if (!index.emplace(names[i], i).second)
        throw ConfigError("duplicate table element '" + names[i] + "'");
    }
    for (std::size_t a = 0; a < n; ++a)
      if (mul[identity][a] != a || mul[a][identity] != a)
        throw ConfigError("table identity is not neutral");
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        for (std::size_t c = 0; c < n; ++c)
          if (mul[mul[a][b]][c] != mul[a][mul[b][c]])
            throw ConfigError("multiplication table is not associative");
    if (inverse.empty()) {
      inverse.assign(n, n);
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
          if (mul[a][b] == identity) inverse[a] = b;
    }
    if (inverse.size() != n) throw ConfigError("inverse table has wrong length");
    for (std::size_t a = 0; a < n; ++a) {
      if (inverse[a] >= n || mul[a][inverse[a]] != identity || mul[inverse[a]][a] != identity)
        throw ConfigError("table element '" + names[a] + "' has no valid inverse");
    }
    VertexGroupSpec g;
    g.kind_ = GroupKind::finite_table;
    g.names_ = std::move(names);
    g.index_ = std::move(index);
    g.identity_ = identity;
    g.mul_ = std::move(mul);
    g.inv_ = std::move(inverse);
    return g;
  }

  GroupKind kind() const { return kind_; }
  unsigned long order() const { return order_; }
  std::size_t table_size() const { return names_.size(); }
  const std::string& element_name(std::size_t i) const { return names_.at(i); }

  BigInt identity() const {
    return kind_ == GroupKind::finite_table ? BigInt(identity_) : BigInt(0);
  }

  bool is_identity(const BigInt& a) const { return a == identity(); }

  BigInt mul(const BigInt& a, const BigInt& b) const {
    switch (kind_) {
      case GroupKind::cyclic: {
        BigInt r = (a + b) % order_;
        return r;
      }
      case GroupKind::integers:
        return a + b;
      case GroupKind::finite_table:
        return BigInt(mul_[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]);
    }
    return a;
  }

  BigInt inv(const BigInt& a) const {
    switch (kind_) {
      case GroupKind::cyclic:
        return a == 0 ? BigInt(0) : BigInt(order_) - a;
      case GroupKind::integers:
        return -a;
      case GroupKind::finite_table:
        return BigInt(inv_[static_cast<std::size_t>(a)]);
    }
    return a;
  }

  /// Deterministic nontrivial element: the generator 1, or the first
  /// non-identity row of the table.
  BigInt sample_nontrivial() const {
    if (kind_ != GroupKind::finite_table) return BigInt(1);
    return BigInt(identity_ == 0 ? 1 : 0);
  }

  /// Maps an integer exponent to an element (cyclic and integer kinds only).
  BigInt from_exponent(const BigInt& k) const {
    switch (kind_) {
      case GroupKind::cyclic: {
        BigInt r = k % order_;
        if (r < 0) r += order_;
        return r;
      }
      case GroupKind::integers:
        return k;
      case GroupKind::finite_table:
        throw ConfigError("exponent syntax is not available for table groups");
    }
    return k;
  }

  BigInt from_name(const std::string& name) const {
    if (kind_ != GroupKind::finite_table)
      throw ConfigError("named elements are only available for table groups");
    auto it = index_.find(name);
    if (it == index_.end()) throw ConfigError("unknown table element '" + name + "'");
    return BigInt(it->second);
  }

  bool valid(const BigInt& a) const {
    switch (kind_) {
      case GroupKind::cyclic:
        return a >= 0 && a < order_;
      case GroupKind::integers:
        return true;
      case GroupKind::finite_table:
        return a >= 0 && a < names_.size();
    }
    return false;
  }

  /// Number of elements, or nullopt for Z.
  std::optional<std::size_t> finite_order() const {
    switch (kind_) {
      case GroupKind::cyclic:
        return static_cast<std::size_t>(order_);
      case GroupKind::integers:
        return std::nullopt;
      case GroupKind::finite_table:
        return names_.size();
    }
    return std::nullopt;
  }

  std::string describe() const {
    switch (kind_) {
      case GroupKind::cyclic:
        return "Z/" + std::to_string(order_);
      case GroupKind::integers:
        return "Z";
      case GroupKind::finite_table:
        return "table(" + std::to_string(names_.size()) + ")";
    }
    return "?";
  }

 private:
  VertexGroupSpec() = default;

  GroupKind kind_ = GroupKind::integers;
  unsigned long order_ = 0;
  std::vector<std::string> names_;
  std::map<std::string, std::size_t> index_;
  std::size_t identity_ = 0;
  std::vector<std::vector<std::size_t>> mul_;
  std::vector<std::size_t> inv_;
};

/// An element of the vertex group G_u. Inside a normal form it is a syllable
/// and is never the identity.
struct GroupElement {
  std::size_t vertex = 0;
  BigInt value;

  friend bool operator==(const GroupElement&, const GroupElement&) = default;
  friend auto operator<=>(const GroupElement& a, const GroupElement& b) {
    if (a.vertex != b.vertex) return a.vertex <=> b.vertex;
    if (a.value < b.value) return std::strong_ordering::less;
    if (b.value < a.value) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }
};

/// The family of vertex groups indexed by V(Gamma).
class GroupFamily {
 public:
  GroupFamily() = default;
  explicit GroupFamily(std::vector<VertexGroupSpec> groups) : groups_(std::move(groups)) {}

  std::size_t size() const { return groups_.size(); }
  const VertexGroupSpec& at(std::size_t u) const { return groups_.at(u); }

  GroupElement mul(const GroupElement& a, const GroupElement& b) const {
    if (a.vertex != b.vertex)
      throw ContractViolation("multiplying elements of different vertex groups");
    return {a.vertex, groups_[a.vertex].mul(a.value, b.value)};
  }

  GroupElement inv(const GroupElement& a) const {
    return {a.vertex, groups_[a.vertex].inv(a.value)};
  }

  bool is_identity(const GroupElement& a) const {
    return groups_[a.vertex].is_identity(a.value);
  }

  GroupElement sample_nontrivial(std::size_t u) const {
    return {u, groups_.at(u).sample_nontrivial()};
  }

 private:
  std::vector<VertexGroupSpec> groups_;
};

}  // namespace qmtl
