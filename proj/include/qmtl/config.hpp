#pragma once

#include <fstream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "qmtl/graph_product.hpp"
#include "qmtl/staircase.hpp"

namespace qmtl {

/// Either a graph product presentation or staircase parameters.
struct PresentationConfig {
  std::optional<Presentation> presentation;
  std::optional<StaircaseParams> staircase;
};

namespace detail {

using json = nlohmann::json;

inline std::size_t table_index(const json& v, const std::vector<std::string>& names, const std::string& where) {
  if (v.is_number_unsigned()) {
    auto i = v.get<std::size_t>();
    if (i >= names.size()) throw ConfigError(where + ": index out of range");
    return i;
  }
  if (v.is_string()) {
    auto s = v.get<std::string>();
    for (std::size_t i = 0; i < names.size(); ++i)
      if (names[i] == s) return i;
    throw ConfigError(where + ": unknown element '" + s + "'");
  }
  throw ConfigError(where + ": expected an element name or index");
}

inline VertexGroupSpec parse_group(const json& g, const std::string& v) {
  if (!g.is_object() || !g.contains("kind")) throw ConfigError("group of '" + v + "' needs a 'kind'");
  const std::string kind = g.at("kind").get<std::string>();
  if (kind == "cyclic") {
    if (!g.contains("order") || !g.at("order").is_number_integer())
      throw ConfigError("cyclic group of '" + v + "' needs an integer 'order'");
    long long m = g.at("order").get<long long>();
    if (m < 2) throw ConfigError("cyclic group of '" + v + "' must have order at least 2");
    return VertexGroupSpec::cyclic(static_cast<unsigned long>(m));
  }
  if (kind == "integers") return VertexGroupSpec::integers();
  if (kind == "table") {
    for (const char* k : {"elements", "identity", "mul"})
      if (!g.contains(k)) throw ConfigError(std::string("table group of '") + v + "' needs '" + k + "'");
    auto names = g.at("elements").get<std::vector<std::string>>();
    const std::string where = "table group of '" + v + "'";
    std::size_t id = table_index(g.at("identity"), names, where);
    const auto& rows = g.at("mul");
    if (!rows.is_array() || rows.size() != names.size()) throw ConfigError(where + ": 'mul' must have one row per element");
    std::vector<std::vector<std::size_t>> mul;
    for (const auto& row : rows) {
      if (!row.is_array() || row.size() != names.size()) throw ConfigError(where + ": 'mul' must be square");
      std::vector<std::size_t> r;
      for (const auto& x : row) r.push_back(table_index(x, names, where));
      mul.push_back(std::move(r));
    }
    std::vector<std::size_t> inv;
    if (g.contains("inv"))
      for (const auto& x : g.at("inv")) inv.push_back(table_index(x, names, where));
    return VertexGroupSpec::table(std::move(names), id, std::move(mul), std::move(inv));
  }
  throw ConfigError("unknown group kind '" + kind + "' for '" + v + "'");
}

}  // namespace detail

inline PresentationConfig parse_config(const nlohmann::json& j) {
  try {
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    PresentationConfig c;
    if (j.contains("staircase")) {
      if (j.contains("graph") || j.contains("groups"))
        throw ConfigError("'staircase' cannot be combined with 'graph' or 'groups'");
      const auto& s = j.at("staircase");
      StaircaseParams p;
      p.n = s.value("n", 1LL);
      p.w = s.value("w", 1LL);
      p.h = s.value("h", 1LL);
      c.staircase = p;
      return c;
    }
    if (!j.contains("graph") || !j.contains("groups")) throw ConfigError("config needs 'graph' and 'groups'");
    const auto& g = j.at("graph");
    auto names = g.at("vertices").get<std::vector<std::string>>();
    std::vector<std::pair<std::string, std::string>> edges;
    if (g.contains("edges"))
      for (const auto& e : g.at("edges")) {
        if (!e.is_array() || e.size() != 2) throw ConfigError("each edge must be a pair of vertex names");
        edges.emplace_back(e[0].get<std::string>(), e[1].get<std::string>());
      }
    DefGraph graph(names, edges);
    const auto& groups = j.at("groups");
    if (!groups.is_object()) throw ConfigError("'groups' must map vertex names to groups");
    for (const auto& [k, _] : groups.items())
      if (!graph.find(k)) throw ConfigError("group given for unknown vertex '" + k + "'");
    std::vector<VertexGroupSpec> fam;
    for (const auto& v : names) {
      if (!groups.contains(v)) throw ConfigError("vertex '" + v + "' has no group");
      fam.push_back(detail::parse_group(groups.at(v), v));
    }
    c.presentation = Presentation(std::move(graph), GroupFamily(std::move(fam)));
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("bad config: ") + e.what());
  }
}

inline PresentationConfig parse_config_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  return parse_config(j);
}

inline PresentationConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path + "'");
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse_config_text(text);
}

}  // namespace qmtl
