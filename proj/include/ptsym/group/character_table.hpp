// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cstddef>
#include <fstream>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "ptsym/group/group_element.hpp"

namespace ptsym {

struct ConjugacyClass {
  std::string name;
  GroupElement representative;
  int size = 0;
};

struct Irrep {
  std::string label;
  int dimension = 1;
  std::vector<int> characters;  // one per class
};

/// Rows of a multidimensional irrep: row r is the joint eigenspace of the
/// commuting involutions with eigenvalues signs[r][k].
struct RowRule {
  std::string irrep;
  std::vector<GroupElement> involutions;
  std::vector<std::vector<int>> signs;
};

/**
 * Character table of a finite point group acting on 1-3 coordinates.
 *
 * Elements are generated by closure from the class representatives; every
 * element is assigned to its class by conjugation and the table is checked
 * (class sizes, Σ d² = |G|, row orthogonality) on construction.
 */
class CharacterTable {
 public:
  CharacterTable() = default;
  CharacterTable(std::string name, int dimension, std::vector<ConjugacyClass> classes, std::vector<Irrep> irreps,
                 std::vector<RowRule> rows = {})
      : name_(std::move(name)), dim_(dimension), classes_(std::move(classes)), irreps_(std::move(irreps)),
        rows_(std::move(rows)) {
    build_elements();
    validate();
  }

  const std::string& name() const { return name_; }
  int dimension() const { return dim_; }
  int order() const { return static_cast<int>(elements_.size()); }
  const std::vector<ConjugacyClass>& classes() const { return classes_; }
  const std::vector<Irrep>& irreps() const { return irreps_; }
  const std::vector<RowRule>& row_rules() const { return rows_; }
  const std::vector<GroupElement>& elements() const { return elements_; }
  int class_index(std::size_t element) const { return class_of_[element]; }

  bool has_irrep(const std::string& label) const {
    return std::any_of(irreps_.begin(), irreps_.end(), [&](const Irrep& r) { return r.label == label; });
  }
  const Irrep& irrep(const std::string& label) const {
    for (const auto& r : irreps_) {
      if (r.label == label) return r;
    }
    throw std::invalid_argument("irrep '" + label + "' not in group " + name_);
  }
  std::vector<std::string> irrep_labels() const {
    std::vector<std::string> out;
    for (const auto& r : irreps_) out.push_back(r.label);
    return out;
  }

  /// Row rule for a multidimensional irrep; null for one-dimensional ones.
  const RowRule* row_rule(const std::string& label) const {
    for (const auto& r : rows_) {
      if (r.irrep == label) return &r;
    }
    return nullptr;
  }

  /// Index of an element in elements(), or −1.
  int find(const GroupElement& g) const {
    auto it = index_.find(g.key());
    return it == index_.end() ? -1 : it->second;
  }
  bool contains(const GroupElement& g) const { return find(g) >= 0; }

  int character(const std::string& label, std::size_t element) const {
    return irrep(label).characters[static_cast<std::size_t>(class_of_[element])];
  }

  /// Text identity of the table, used to key caches.
  std::string fingerprint() const {
    std::string s = name_ + "#" + std::to_string(dim_);
    for (const auto& c : classes_) s += ";" + c.representative.key();
    for (const auto& r : irreps_) s += ";" + r.label;
    for (const auto& r : rows_) {
      s += ";" + r.irrep;
      for (const auto& g : r.involutions) s += ":" + g.key();
    }
    return s;
  }

 private:
  void build_elements() {
    if (classes_.empty()) throw std::invalid_argument("CharacterTable: no classes");
    auto add = [&](const GroupElement& g) {
      if (g.dimension() != dim_) throw std::invalid_argument("CharacterTable: element dimension mismatch");
      if (g.time_reversal()) throw std::invalid_argument("CharacterTable: point-group elements must be unitary");
      if (index_.emplace(g.key(), static_cast<int>(elements_.size())).second) elements_.push_back(g);
    };
    add(GroupElement::identity(dim_));
    for (const auto& c : classes_) add(c.representative);
    for (std::size_t i = 0; i < elements_.size(); ++i) {
      for (std::size_t j = 0; j <= i; ++j) {
        add(compose(elements_[i], elements_[j]));
        add(compose(elements_[j], elements_[i]));
      }
      if (elements_.size() > 1000) throw std::invalid_argument("CharacterTable: closure exceeds 1000 elements");
    }
    class_of_.assign(elements_.size(), -1);
    for (std::size_t c = 0; c < classes_.size(); ++c) {
      const int rep = find(classes_[c].representative);
      std::set<int> members;
      for (const auto& h : elements_) members.insert(find(compose(compose(h, elements_[static_cast<std::size_t>(rep)]), h.inverse())));
      if (static_cast<int>(members.size()) != classes_[c].size) {
        throw std::invalid_argument("CharacterTable: class " + classes_[c].name + " has size " +
                                    std::to_string(members.size()) + ", declared " + std::to_string(classes_[c].size));
      }
      for (int m : members) {
        if (class_of_[static_cast<std::size_t>(m)] >= 0) {
          throw std::invalid_argument("CharacterTable: classes " + classes_[c].name + " overlap");
        }
        class_of_[static_cast<std::size_t>(m)] = static_cast<int>(c);
      }
    }
    if (std::find(class_of_.begin(), class_of_.end(), -1) != class_of_.end()) {
      throw std::invalid_argument("CharacterTable: class list does not cover the group");
    }
  }

  void validate() const {
    const int n = order();
    int sum_sq = 0;
    for (const auto& r : irreps_) {
      if (r.characters.size() != classes_.size()) throw std::invalid_argument("CharacterTable: character row length");
      const int e = r.characters[static_cast<std::size_t>(class_of_[0])];
      if (e != r.dimension) throw std::invalid_argument("CharacterTable: χ(E) differs from dimension for " + r.label);
      sum_sq += r.dimension * r.dimension;
    }
    if (sum_sq != n) throw std::invalid_argument("CharacterTable: Σ d² differs from the group order");
    for (std::size_t a = 0; a < irreps_.size(); ++a) {
      for (std::size_t b = 0; b < irreps_.size(); ++b) {
        long s = 0;
        for (std::size_t c = 0; c < classes_.size(); ++c) {
          s += static_cast<long>(classes_[c].size) * irreps_[a].characters[c] * irreps_[b].characters[c];
        }
        if (s != (a == b ? n : 0)) throw std::invalid_argument("CharacterTable: character rows not orthogonal");
      }
    }
    for (const auto& r : rows_) {
      const Irrep& ir = irrep(r.irrep);
      if (static_cast<int>(r.signs.size()) != ir.dimension) throw std::invalid_argument("RowRule: one sign pattern per row");
      for (const auto& g : r.involutions) {
        if (!contains(g)) throw std::invalid_argument("RowRule: involution not in group");
        if (!(compose(g, g) == GroupElement::identity(dim_))) throw std::invalid_argument("RowRule: element is not an involution");
      }
      for (const auto& s : r.signs) {
        if (s.size() != r.involutions.size()) throw std::invalid_argument("RowRule: sign pattern length");
      }
    }
    for (const auto& ir : irreps_) {
      if (ir.dimension > 1 && row_rule(ir.label) == nullptr) {
        throw std::invalid_argument("CharacterTable: missing row rule for " + ir.label);
      }
    }
  }

  std::string name_;
  int dim_ = 0;
  std::vector<ConjugacyClass> classes_;
  std::vector<Irrep> irreps_;
  std::vector<RowRule> rows_;
  std::vector<GroupElement> elements_;
  std::vector<int> class_of_;
  std::map<std::string, int> index_;
};

namespace tables {

inline GroupElement el(const std::vector<std::vector<std::string>>& rows, std::string name) {
  return GroupElement::from_rows(rows, false, std::move(name));
}

/// C₂ in the plane about the given axis: 'z' (x,y)→(−x,−y), 'x' (x,y)→(x,−y), 'y' (x,y)→(−x,y).
inline CharacterTable c2(char axis = 'z') {
  GroupElement g;
  std::string suffix;
  switch (axis) {
    case 'z':
      g = el({{"-1", "0"}, {"0", "-1"}}, "C2");
      break;
    case 'x':
      g = el({{"1", "0"}, {"0", "-1"}}, "C2(x)");
      suffix = "(x)";
      break;
    case 'y':
      g = el({{"-1", "0"}, {"0", "1"}}, "C2(y)");
      suffix = "(y)";
      break;
    default:
      throw std::invalid_argument("c2: axis must be x, y or z");
  }
  return CharacterTable("C2" + suffix, 2, {{"E", GroupElement::identity(2), 1}, {g.name(), g, 1}},
                        {{"A", 1, {1, 1}}, {"B", 1, {1, -1}}});
}

inline CharacterTable c2v() {
  return CharacterTable("C2v", 2,
                        {{"E", GroupElement::identity(2), 1},
                         {"C2", el({{"-1", "0"}, {"0", "-1"}}, "C2"), 1},
                         {"sigma_v1", el({{"0", "1"}, {"1", "0"}}, "sigma_v1"), 1},
                         {"sigma_v2", el({{"0", "-1"}, {"-1", "0"}}, "sigma_v2"), 1}},
                        {{"A1", 1, {1, 1, 1, 1}}, {"A2", 1, {1, 1, -1, -1}}, {"B1", 1, {1, -1, 1, -1}},
                         {"B2", 1, {1, -1, -1, 1}}});
}

inline CharacterTable c3v() {
  const GroupElement sigma = el({{"1", "0"}, {"0", "-1"}}, "sigma_v");
  return CharacterTable("C3v", 2,
                        {{"E", GroupElement::identity(2), 1},
                         {"C3", el({{"-1/2", "-1/2*sqrt3"}, {"1/2*sqrt3", "-1/2"}}, "C3"), 2},
                         {"sigma_v", sigma, 3}},
                        {{"A1", 1, {1, 1, 1}}, {"A2", 1, {1, 1, -1}}, {"E", 2, {2, -1, 0}}},
                        {{"E", {sigma}, {{1}, {-1}}}});
}

inline CharacterTable c4v() {
  const GroupElement sigma = el({{"1", "0"}, {"0", "-1"}}, "sigma_v");
  return CharacterTable("C4v", 2,
                        {{"E", GroupElement::identity(2), 1},
                         {"C4", el({{"0", "-1"}, {"1", "0"}}, "C4"), 2},
                         {"C2", el({{"-1", "0"}, {"0", "-1"}}, "C2"), 1},
                         {"sigma_v", sigma, 2},
                         {"sigma_d", el({{"0", "1"}, {"1", "0"}}, "sigma_d"), 2}},
                        {{"A1", 1, {1, 1, 1, 1, 1}},
                         {"A2", 1, {1, 1, 1, -1, -1}},
                         {"B1", 1, {1, -1, 1, 1, -1}},
                         {"B2", 1, {1, -1, 1, -1, 1}},
                         {"E", 2, {2, 0, -2, 0, 0}}},
                        {{"E", {sigma}, {{1}, {-1}}}});
}

/// Signed coordinate permutations with an even number of sign flips (order 24, isomorphic to Td);
/// these are exactly the orthogonal maps that keep xyz and x²+y²+z² invariant.
inline CharacterTable td() {
  const GroupElement c2z = el({{"-1", "0", "0"}, {"0", "-1", "0"}, {"0", "0", "1"}}, "C2(z)");
  const GroupElement c2x = el({{"1", "0", "0"}, {"0", "-1", "0"}, {"0", "0", "-1"}}, "C2(x)");
  const GroupElement sd = el({{"0", "1", "0"}, {"1", "0", "0"}, {"0", "0", "1"}}, "sigma_d");
  const std::vector<std::vector<int>> t_rows{{-1, 1}, {-1, -1}, {1, -1}};
  return CharacterTable("Td", 3,
                        {{"E", GroupElement::identity(3), 1},
                         {"C3", el({{"0", "1", "0"}, {"0", "0", "1"}, {"1", "0", "0"}}, "C3"), 8},
                         {"C2", c2z, 3},
                         {"S4", el({{"0", "1", "0"}, {"-1", "0", "0"}, {"0", "0", "-1"}}, "S4"), 6},
                         {"sigma_d", sd, 6}},
                        {{"A1", 1, {1, 1, 1, 1, 1}},
                         {"A2", 1, {1, 1, 1, -1, -1}},
                         {"E", 2, {2, -1, 2, 0, 0}},
                         {"T1", 3, {3, 0, -1, 1, -1}},
                         {"T2", 3, {3, 0, -1, -1, 1}}},
                        {{"E", {sd}, {{1}, {-1}}}, {"T1", {c2z, c2x}, t_rows}, {"T2", {c2z, c2x}, t_rows}});
}

/// Built-in table by name: C2, C2(x), C2(y), C2v, C3v, C4v, Td.
inline CharacterTable builtin(const std::string& name) {
  if (name == "C2") return c2('z');
  if (name == "C2(x)") return c2('x');
  if (name == "C2(y)") return c2('y');
  if (name == "C2v") return c2v();
  if (name == "C3v") return c3v();
  if (name == "C4v") return c4v();
  if (name == "Td") return td();
  throw std::invalid_argument("unknown built-in group: " + name);
}

}  // namespace tables

/*
 * JSON schema of a character table:
 * {
 *   "name": "C3v", "dimension": 2,
 *   "classes": [{"name": "C3", "size": 2, "matrix": [["-1/2", "-1/2*sqrt3"], ["1/2*sqrt3", "-1/2"]]}, ...],
 *   "irreps": [{"label": "E", "dimension": 2, "characters": [2, -1, 0]}, ...],
 *   "rows": [{"irrep": "E", "involutions": [[["1","0"],["0","-1"]]], "signs": [[1], [-1]]}]
 * }
 * Matrix entries use the exact scalar text form (rationals times sqrt2, sqrt3).
 */
inline nlohmann::json element_matrix_json(const GroupElement& g) {
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i < g.dimension(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int j = 0; j < g.dimension(); ++j) row.push_back(to_string(g.entry(i, j)));
    rows.push_back(row);
  }
  return rows;
}

inline GroupElement element_from_json(const nlohmann::json& rows, std::string name = {}) {
  return GroupElement::from_rows(rows.get<std::vector<std::vector<std::string>>>(), false, std::move(name));
}

inline nlohmann::json to_json(const CharacterTable& t) {
  nlohmann::json j;
  j["name"] = t.name();
  j["dimension"] = t.dimension();
  j["classes"] = nlohmann::json::array();
  for (const auto& c : t.classes()) {
    j["classes"].push_back({{"name", c.name}, {"size", c.size}, {"matrix", element_matrix_json(c.representative)}});
  }
  j["irreps"] = nlohmann::json::array();
  for (const auto& r : t.irreps()) {
    j["irreps"].push_back({{"label", r.label}, {"dimension", r.dimension}, {"characters", r.characters}});
  }
  j["rows"] = nlohmann::json::array();
  for (const auto& r : t.row_rules()) {
    nlohmann::json inv = nlohmann::json::array();
    for (const auto& g : r.involutions) inv.push_back(element_matrix_json(g));
    j["rows"].push_back({{"irrep", r.irrep}, {"involutions", inv}, {"signs", r.signs}});
  }
  return j;
}

inline CharacterTable table_from_json(const nlohmann::json& j) {
  std::vector<ConjugacyClass> classes;
  for (const auto& c : j.at("classes")) {
    const auto name = c.at("name").get<std::string>();
    classes.push_back({name, element_from_json(c.at("matrix"), name), c.at("size").get<int>()});
  }
  std::vector<Irrep> irreps;
  for (const auto& r : j.at("irreps")) {
    irreps.push_back({r.at("label").get<std::string>(), r.at("dimension").get<int>(),
                      r.at("characters").get<std::vector<int>>()});
  }
  std::vector<RowRule> rows;
  if (j.contains("rows")) {
    for (const auto& r : j.at("rows")) {
      RowRule rule;
      rule.irrep = r.at("irrep").get<std::string>();
      for (const auto& m : r.at("involutions")) rule.involutions.push_back(element_from_json(m));
      rule.signs = r.at("signs").get<std::vector<std::vector<int>>>();
      rows.push_back(std::move(rule));
    }
  }
  return CharacterTable(j.at("name").get<std::string>(), j.at("dimension").get<int>(), std::move(classes),
                        std::move(irreps), std::move(rows));
}

inline CharacterTable load_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open character table file: " + path);
  return table_from_json(nlohmann::json::parse(in));
}

inline void save_table(const CharacterTable& t, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write character table file: " + path);
  out << to_json(t).dump(2) << '\n';
}

}  // namespace ptsym
