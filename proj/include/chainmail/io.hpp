#pragma once

// JSON interchange for posets, maps and the concrete sources, and DOT export
// of Hasse diagrams.

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "chainmail/category.hpp"
#include "chainmail/poset.hpp"
#include "chainmail/sources.hpp"

namespace chainmail {

using Json = nlohmann::json;

namespace detail {

template <class T>
T json_field(const Json& j, const char* key, const std::string& what) {
  if (!j.is_object() || !j.contains(key))
    throw Error(ErrorKind::parse_error, what + ": missing field \"" + key + "\"");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::parse_error, what + ": field \"" + key + "\": " + e.what());
  }
}

}  // namespace detail

// {"elements": [names], "covers": [[a, b], ...]}. Elements keep their listed
// order as indices; "covers" may be any generating relation.
inline Poset poset_from_json(const Json& j, const Budget& budget = {}) {
  auto names = detail::json_field<std::vector<std::string>>(j, "elements", "poset");
  auto pairs = detail::json_field<std::vector<std::pair<std::string, std::string>>>(j, "covers", "poset");
  require_within(names.size(), budget.poset_size, "poset");
  std::map<std::string, Element> index;
  for (Element i = 0; i < names.size(); ++i)
    if (!index.emplace(names[i], i).second)
      throw Error(ErrorKind::duplicate_label, "element \"" + names[i] + "\" is listed twice", {i});
  std::vector<OrderPair> rel;
  for (const auto& [a, b] : pairs) {
    auto ia = index.find(a), ib = index.find(b);
    if (ia == index.end() || ib == index.end())
      throw Error(ErrorKind::index_out_of_range, "cover [" + a + "," + b + "] names an unknown element");
    rel.emplace_back(ia->second, ib->second);
  }
  return validate_poset(names.size(), std::span<const OrderPair>(rel), RelationMode::covers, budget)
      .with_labels(std::move(names));
}

inline Json poset_to_json(const Poset& p) {
  std::vector<std::string> names;
  for (Element e = 0; e < p.size(); ++e) names.push_back(p.label(e));
  std::vector<std::pair<std::string, std::string>> covers;
  for (auto [a, b] : p.covers()) covers.emplace_back(p.label(a), p.label(b));
  std::sort(names.begin(), names.end());
  std::sort(covers.begin(), covers.end());
  Json out;
  out["elements"] = names;
  out["covers"] = Json::array();
  for (const auto& [a, b] : covers) out["covers"].push_back({a, b});
  return out;
}

inline Json element_names(const Poset& p, const ElementSet& s) {
  std::vector<std::string> names;
  s.for_each([&](Element e) { names.push_back(p.label(e)); });
  std::sort(names.begin(), names.end());
  return names;
}

inline Json map_to_json(const PosetMap& f) {
  Json table = Json::object();
  for (Element x = 0; x < f.table().size(); ++x) table[f.source().label(x)] = f.target().label(f(x));
  return {{"source", poset_to_json(f.source())},
          {"target", poset_to_json(f.target())},
          {"table", table},
          {"role", std::string(to_string(f.role()))}};
}

inline PosetMap map_from_json(const Json& j, const Budget& budget = {}) {
  Poset src = poset_from_json(detail::json_field<Json>(j, "source", "map"), budget);
  Poset dst = poset_from_json(detail::json_field<Json>(j, "target", "map"), budget);
  auto table = detail::json_field<std::map<std::string, std::string>>(j, "table", "map");
  auto role_name = detail::json_field<std::string>(j, "role", "map");
  auto role = parse_map_role(role_name);
  if (!role) throw Error(ErrorKind::parse_error, "map: unknown role \"" + role_name + "\"");
  MapTable t(src.size());
  for (Element x = 0; x < src.size(); ++x) {
    auto it = table.find(src.label(x));
    if (it == table.end())
      throw Error(ErrorKind::parse_error, "map: no image given for \"" + src.label(x) + "\"", {x});
    auto y = dst.find_label(it->second);
    if (!y) throw Error(ErrorKind::index_out_of_range, "map: unknown target element \"" + it->second + "\"", {x});
    t[x] = *y;
  }
  return validate_map(src, dst, std::move(t), *role);
}

inline Graph graph_from_json(const Json& j) {
  return {detail::json_field<std::size_t>(j, "vertices", "graph"),
          detail::json_field<std::vector<std::pair<std::size_t, std::size_t>>>(j, "edges", "graph")};
}

inline Hypergraph hypergraph_from_json(const Json& j) {
  return {detail::json_field<std::size_t>(j, "vertices", "hypergraph"),
          detail::json_field<std::vector<std::vector<std::size_t>>>(j, "hyperedges", "hypergraph")};
}

inline FiniteTopology topology_from_json(const Json& j) {
  return {detail::json_field<std::size_t>(j, "points", "topology"),
          detail::json_field<std::vector<std::vector<std::size_t>>>(j, "opens", "topology")};
}

inline ConnectivitySpace connectivity_space_from_json(const Json& j) {
  return {detail::json_field<std::size_t>(j, "points", "connectivity space"),
          detail::json_field<std::vector<std::vector<std::size_t>>>(j, "connected", "connectivity space")};
}

inline Json connectivity_space_to_json(const ConnectivitySpace& s) {
  return {{"points", s.points}, {"connected", s.connected}};
}

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::io_error, "cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::parse_error, path + ": " + e.what());
  }
}

namespace detail {
inline std::string dot_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}
}  // namespace detail

// Hasse diagram, bottom-up, one rank per height.
inline std::string to_dot(const Poset& p, const std::string& name = "poset") {
  std::ostringstream out;
  out << "digraph " << detail::dot_quote(name) << " {\n  rankdir=BT;\n  node [shape=circle];\n";
  for (Element e = 0; e < p.size(); ++e) out << "  n" << e << " [label=" << detail::dot_quote(p.label(e)) << "];\n";
  auto h = p.heights();
  std::size_t max_h = p.size() ? *std::max_element(h.begin(), h.end()) : 0;
  for (std::size_t r = 0; p.size() && r <= max_h; ++r) {
    out << "  { rank=same;";
    for (Element e = 0; e < p.size(); ++e)
      if (h[e] == r) out << " n" << e << ";";
    out << " }\n";
  }
  for (auto [a, b] : p.covers()) out << "  n" << a << " -> n" << b << ";\n";
  out << "}\n";
  return out.str();
}

}  // namespace chainmail
