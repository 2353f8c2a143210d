#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "instance.hpp"
#include "propagator.hpp"
#include "relations.hpp"

namespace seqbin {

using Json = nlohmann::ordered_json;

// Malformed instance input; the message names the offending field.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline const Json& require(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw InputError(where + ": missing \"" + key + "\"");
  return j.at(key);
}

inline int as_int(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) throw InputError(where + ": expected an integer");
  return j.get<int>();
}

inline std::vector<int> as_int_list(const Json& j, const std::string& where) {
  if (!j.is_array()) throw InputError(where + ": expected an array of integers");
  std::vector<int> out;
  for (std::size_t k = 0; k < j.size(); ++k) out.push_back(as_int(j[k], where + "[" + std::to_string(k) + "]"));
  return out;
}

}  // namespace detail

inline BinaryRelation relation_from_json(const Json& j, Value d, const std::string& where = "relation") {
  if (!j.is_object()) throw InputError(where + ": expected an object");
  if (j.contains("table")) {
    const Json& t = j.at("table");
    if (!t.is_array()) throw InputError(where + ".table: expected an array of pairs");
    std::vector<std::pair<Value, Value>> pairs;
    for (std::size_t k = 0; k < t.size(); ++k) {
      const std::string at = where + ".table[" + std::to_string(k) + "]";
      std::vector<int> p = detail::as_int_list(t[k], at);
      if (p.size() != 2) throw InputError(at + ": expected [j, k]");
      pairs.emplace_back(p[0], p[1]);
    }
    try {
      return BinaryRelation::from_pairs(d, pairs);
    } catch (const std::invalid_argument& e) {
      throw InputError(where + ": " + e.what());
    }
  }
  const Json& name = detail::require(j, "name", where);
  if (!name.is_string()) throw InputError(where + ".name: expected a string");
  auto kind = relation_kind_from_name(name.get<std::string>());
  if (!kind) throw InputError(where + ".name: unknown relation \"" + name.get<std::string>() + "\"");
  int cst = 0;
  if (*kind == RelationKind::AbsGt) cst = detail::as_int(detail::require(j, "cst", where), where + ".cst");
  return BinaryRelation::builtin(*kind, d, cst);
}

inline Json relation_to_json(const BinaryRelation& r) {
  Json j = Json::object();
  if (r.kind() == RelationKind::Table) {
    Json t = Json::array();
    for (auto [a, b] : r.pairs()) t.push_back({a, b});
    j["table"] = std::move(t);
    return j;
  }
  j["name"] = to_string(r.kind());
  if (r.kind() == RelationKind::AbsGt) j["cst"] = r.cst();
  return j;
}

inline Instance instance_from_json(const Json& j) {
  if (!j.is_object()) throw InputError("instance: expected an object");
  Instance inst;
  inst.n = detail::as_int(detail::require(j, "variables", "instance"), "variables");
  inst.d = detail::as_int(detail::require(j, "value_max", "instance"), "value_max");
  if (inst.n < 1) throw InputError("variables: must be at least 1");
  if (inst.d < 0) throw InputError("value_max: must be non-negative");
  const Json& doms = detail::require(j, "domains", "instance");
  if (!doms.is_array()) throw InputError("domains: expected an array");
  for (std::size_t k = 0; k < doms.size(); ++k) {
    inst.domains.push_back(normalize_domain(detail::as_int_list(doms[k], "domains[" + std::to_string(k) + "]")));
  }
  inst.n_domain = normalize_domain(detail::as_int_list(detail::require(j, "N", "instance"), "N"));

  auto read_list = [&](const char* single, const char* list) {
    std::vector<BinaryRelation> out;
    if (j.contains(single) && j.contains(list)) {
      throw InputError(std::string("instance: give either \"") + single + "\" or \"" + list + "\"");
    }
    if (j.contains(single)) {
      out.push_back(relation_from_json(j.at(single), inst.d, single));
    } else if (j.contains(list)) {
      const Json& l = j.at(list);
      if (!l.is_array()) throw InputError(std::string(list) + ": expected an array");
      for (std::size_t k = 0; k < l.size(); ++k) {
        out.push_back(relation_from_json(l[k], inst.d, std::string(list) + "[" + std::to_string(k) + "]"));
      }
    } else {
      throw InputError(std::string("instance: missing \"") + single + "\"");
    }
    return out;
  };
  inst.b_list = read_list("B", "B_list");
  inst.c_list = read_list("C", "C_list");
  if (j.contains("pi")) {
    try {
      inst.pi = Ordering(detail::as_int_list(j.at("pi"), "pi"));
    } catch (const std::invalid_argument& e) {
      throw InputError(std::string("pi: ") + e.what());
    }
  } else {
    inst.pi = Ordering::identity(inst.d);
  }
  try {
    inst.validate();
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  return inst;
}

inline Json instance_to_json(const Instance& inst) {
  Json j = Json::object();
  j["variables"] = inst.n;
  j["value_max"] = inst.d;
  j["domains"] = inst.domains;
  j["N"] = inst.n_domain;
  auto put = [&](const char* single, const char* list, const std::vector<BinaryRelation>& rels) {
    if (rels.size() == 1) {
      j[single] = relation_to_json(rels[0]);
    } else {
      Json l = Json::array();
      for (const auto& r : rels) l.push_back(relation_to_json(r));
      j[list] = std::move(l);
    }
  };
  put("B", "B_list", inst.b_list);
  put("C", "C_list", inst.c_list);
  if (!inst.pi.is_identity()) j["pi"] = inst.pi.perm();
  return j;
}

// One top-level key per line, values compact. parse . serialize is the
// identity on files written this way.
inline std::string to_canonical_text(const Json& j) {
  std::string out = "{\n";
  std::size_t k = 0;
  for (auto it = j.begin(); it != j.end(); ++it, ++k) {
    out += "  " + Json(it.key()).dump() + ": " + it.value().dump();
    out += (k + 1 < j.size()) ? ",\n" : "\n";
  }
  return out + "}\n";
}

inline std::string serialize_instance(const Instance& inst) { return to_canonical_text(instance_to_json(inst)); }

inline Instance parse_instance(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
  return instance_from_json(j);
}

inline Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return parse_instance(ss.str());
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

inline Json result_to_json(const PropagationResult& r) {
  Json j = Json::object();
  j["status"] = to_string(r.status);
  j["mode"] = to_string(r.mode);
  j["iterations"] = r.iterations;
  j["fallback_count"] = r.fallback_count;
  j["domains"] = r.domains;
  j["N"] = r.n_domain;
  Json rem = Json::array();
  for (auto [i, v] : r.removed) rem.push_back({i, v});
  j["removed"] = std::move(rem);
  if (r.failed()) j["failed_var"] = r.failed_var;
  return j;
}

}  // namespace seqbin
