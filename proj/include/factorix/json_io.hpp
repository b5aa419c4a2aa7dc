#pragma once

// JSON shapes for groups, instances, elements and predictions.
//
//   instance: {"group":[2], "components":[{"units":[2], "k":1, "levels":[["0"]],
//              "iota_p":[1], "iota_units":[[1]]}]}
//   element:  {"free":{"1":2}, "parts":[{"valuation":1, "unit":[1]}]}
//
// Group element literals are arrays of residues ([1,0]), comma strings
// ("1,0"), or a bare integer for groups with one cyclic factor.

#include <cstdint>
#include <cstdio>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "factorix/abelian.hpp"
#include "factorix/error.hpp"
#include "factorix/factorization.hpp"
#include "factorix/predict.hpp"
#include "factorix/primary.hpp"
#include "factorix/tblock.hpp"

namespace factorix {

using json = nlohmann::json;

namespace detail {

inline std::string join_path(const std::string& base, const std::string& key) {
  return base.empty() ? key : base + "." + key;
}
inline std::string index_path(const std::string& base, std::size_t i) { return base + "[" + std::to_string(i) + "]"; }

inline const json& require_field(const json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object()) throw ValidationError(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw ValidationError(join_path(path, key), "missing field");
  return *it;
}

inline int require_int(const json& v, const std::string& path) {
  if (!v.is_number_integer()) throw ValidationError(path, "expected an integer");
  return v.get<int>();
}

}  // namespace detail

inline FiniteAbelianGroup parse_group(const json& j, const std::string& path = "group") {
  if (!j.is_array()) throw ValidationError(path, "expected an array of cyclic orders");
  std::vector<int> moduli;
  for (std::size_t i = 0; i < j.size(); ++i) {
    int n = detail::require_int(j[i], detail::index_path(path, i));
    if (n < 1) throw ValidationError(detail::index_path(path, i), "cyclic order must be >= 1");
    moduli.push_back(n);
  }
  try {
    return FiniteAbelianGroup(std::move(moduli));
  } catch (const ResourceError&) {
    throw;
  } catch (const std::exception& e) {
    throw ValidationError(path, e.what());
  }
}

inline GroupElement parse_group_element(const json& j, const FiniteAbelianGroup& G, const std::string& path) {
  std::vector<long long> values;
  if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) values.push_back(detail::require_int(j[i], detail::index_path(path, i)));
  } else if (j.is_number_integer()) {
    values.push_back(j.get<long long>());
  } else if (j.is_string()) {
    const auto text = j.get<std::string>();
    std::stringstream ss(text);
    std::string piece;
    while (std::getline(ss, piece, ',')) {
      try {
        std::size_t used = 0;
        values.push_back(std::stoll(piece, &used));
        if (piece.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(piece);
      } catch (const std::exception&) {
        throw ValidationError(path, "malformed element literal \"" + text + "\"");
      }
    }
  } else {
    throw ValidationError(path, "expected an element literal (array, string or integer)");
  }
  // the identity of a group with no cyclic factors may be written 0
  if (G.num_factors() == 0 && values.size() == 1 && values[0] == 0) values.clear();
  if (values.size() != G.num_factors())
    throw ValidationError(path, "element has " + std::to_string(values.size()) + " residues, " + G.str() + " needs " +
                                    std::to_string(G.num_factors()));
  for (std::size_t i = 0; i < values.size(); ++i)
    if (values[i] < 0 || values[i] >= G.moduli()[i])
      throw ValidationError(path, "residue " + std::to_string(values[i]) + " out of range for C" +
                                      std::to_string(G.moduli()[i]));
  return G.element(values);
}

inline json group_element_json(const GroupElement& g) { return json(g.residues); }

inline PrimaryMonoidSpec parse_primary(const json& j, const std::string& path) {
  auto units = parse_group(detail::require_field(j, "units", path), detail::join_path(path, "units"));
  int k = detail::require_int(detail::require_field(j, "k", path), detail::join_path(path, "k"));
  const auto& lv = detail::require_field(j, "levels", path);
  const auto lpath = detail::join_path(path, "levels");
  if (!lv.is_array()) throw ValidationError(lpath, "expected an array of level sets");
  std::vector<std::set<GroupElement>> levels;
  for (std::size_t i = 0; i < lv.size(); ++i) {
    const auto here = detail::index_path(lpath, i);
    if (!lv[i].is_array()) throw ValidationError(here, "expected an array of element literals");
    std::set<GroupElement> level;
    for (std::size_t m = 0; m < lv[i].size(); ++m)
      level.insert(parse_group_element(lv[i][m], units, detail::index_path(here, m)));
    levels.push_back(std::move(level));
  }
  try {
    return PrimaryMonoidSpec(units, k, levels);
  } catch (const ValidationError& e) {
    throw ValidationError(detail::join_path(path, e.path()), std::string(e.what()).substr(e.path().size() + 2));
  }
}

inline json primary_json(const PrimaryMonoidSpec& spec) {
  json levels = json::array();
  for (int i = 0; i < spec.exponent(); ++i) {
    json level = json::array();
    for (const auto& u : spec.level_elements(i)) level.push_back(u.str());
    levels.push_back(level);
  }
  return {{"units", spec.units().moduli()}, {"k", spec.exponent()}, {"levels", levels}};
}

inline InstanceSpec parse_instance(const json& j) {
  auto G = parse_group(detail::require_field(j, "group", ""), "group");
  std::vector<ComponentSpec> comps;
  if (j.contains("components")) {
    const auto& cs = j["components"];
    if (!cs.is_array()) throw ValidationError("components", "expected an array");
    for (std::size_t i = 0; i < cs.size(); ++i) {
      const auto path = detail::index_path("components", i);
      auto primary = parse_primary(cs[i], path);
      auto iota_p = parse_group_element(detail::require_field(cs[i], "iota_p", path), G, path + ".iota_p");
      const auto& iu = detail::require_field(cs[i], "iota_units", path);
      if (!iu.is_array()) throw ValidationError(path + ".iota_units", "expected an array of element literals");
      std::vector<GroupElement> images;
      for (std::size_t m = 0; m < iu.size(); ++m)
        images.push_back(parse_group_element(iu[m], G, detail::index_path(path + ".iota_units", m)));
      comps.push_back({std::move(primary), std::move(iota_p), std::move(images)});
    }
  }
  return InstanceSpec(std::move(G), std::move(comps));
}

inline InstanceSpec parse_instance_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError("", std::string("invalid JSON: ") + e.what());
  }
  return parse_instance(j);
}

/// Canonical form: keys sorted (nlohmann's default), levels as sorted
/// element strings.
inline json instance_json(const InstanceSpec& inst) {
  json comps = json::array();
  for (const auto& c : inst.components()) {
    json cj = primary_json(c.primary);
    cj["iota_p"] = group_element_json(c.iota_p);
    json images = json::array();
    for (const auto& g : c.iota_units) images.push_back(group_element_json(g));
    cj["iota_units"] = images;
    comps.push_back(cj);
  }
  return {{"group", inst.group().moduli()}, {"components", comps}};
}

/// FNV-1a 64 of the canonical JSON, as 16 hex digits.
inline std::string instance_digest(const InstanceSpec& inst) {
  const auto text = instance_json(inst).dump();
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

inline BElement parse_element(const json& j, const InstanceSpec& inst, const std::string& path = "element") {
  const auto& G = inst.group();
  BElement a = inst.identity();
  if (!j.is_object()) throw ValidationError(path, "expected an object with \"free\" and \"parts\"");
  if (j.contains("free")) {
    const auto& f = j["free"];
    const auto fpath = path + ".free";
    if (f.is_object()) {
      for (const auto& [key, mult] : f.items()) {
        auto g = parse_group_element(json(key), G, fpath + "." + key);
        int m = detail::require_int(mult, fpath + "." + key);
        if (m < 0) throw ValidationError(fpath + "." + key, "negative multiplicity");
        a.free[G.index_of(g)] += m;
      }
    } else if (f.is_array()) {
      for (std::size_t i = 0; i < f.size(); ++i) a.free[G.index_of(parse_group_element(f[i], G, detail::index_path(fpath, i)))]++;
    } else {
      throw ValidationError(fpath, "expected an object {letter: multiplicity} or an array of letters");
    }
  }
  if (j.contains("parts")) {
    const auto& ps = j["parts"];
    const auto ppath = path + ".parts";
    if (!ps.is_array() || ps.size() != inst.num_components())
      throw ValidationError(ppath, "expected an array with one entry per component (" +
                                       std::to_string(inst.num_components()) + ")");
    for (std::size_t i = 0; i < ps.size(); ++i) {
      const auto here = detail::index_path(ppath, i);
      const auto& V = inst.primary(i).units();
      int v = detail::require_int(detail::require_field(ps[i], "valuation", here), here + ".valuation");
      GroupElement u = V.zero();
      if (ps[i].contains("unit")) u = parse_group_element(ps[i]["unit"], V, here + ".unit");
      if (!inst.primary(i).contains(v, u))
        throw ValidationError(here, "p^" + std::to_string(v) + " (" + u.str() + ") is not a member of the component");
      a.parts[i] = {v, V.index_of(u)};
    }
  }
  if (block_class(inst, a) != 0) throw ValidationError(path, "element is not a block (class sum is nonzero)");
  return a;
}

inline BElement parse_element_text(const std::string& text, const InstanceSpec& inst) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError("element", std::string("invalid JSON: ") + e.what());
  }
  return parse_element(j, inst);
}

inline json element_json(const InstanceSpec& inst, const BElement& a) {
  json free = json::object();
  for (std::size_t x = 0; x < a.free.size(); ++x)
    if (a.free[x] > 0) free[inst.group().at(x).str()] = a.free[x];
  json parts = json::array();
  for (std::size_t i = 0; i < a.parts.size(); ++i)
    parts.push_back({{"valuation", a.parts[i].valuation},
                     {"unit", group_element_json(inst.primary(i).units().at(a.parts[i].unit))}});
  return {{"free", free}, {"parts", parts}};
}

inline json int_set_json(const std::set<int>& s) { return json(std::vector<int>(s.begin(), s.end())); }

inline json prediction_json(const Prediction& p) {
  auto int_field = [](const IntPrediction& f) -> json {
    if (!f.known()) return nullptr;
    json out{{"value", f.str()}, {"provenance", f.provenance}};
    if (f.lo) out["lo"] = *f.lo;
    if (f.hi) out["hi"] = *f.hi;
    return out;
  };
  json out;
  out["half_factorial"] = {{"value", to_string(p.half_factorial)}, {"provenance", p.half_factorial_provenance}};
  out["c"] = int_field(p.c);
  out["cmon"] = int_field(p.cmon);
  out["rho"] = p.rho.known() ? json{{"value", p.rho.str()}, {"provenance", p.rho.provenance}} : json(nullptr);
  out["delta"] = p.delta.known() ? json{{"value", p.delta.str()}, {"provenance", p.delta.provenance}} : json(nullptr);
  if (p.t_is_2_iff_hf) out["t_is_2_iff_hf"] = {{"value", true}, {"provenance", p.t_provenance}};
  auto idx_json = [](const std::set<std::size_t>& s) {
    json a = json::array();
    for (auto i : s) a.push_back(i);
    return a;
  };
  if (p.I) out["I"] = idx_json(*p.I);
  if (p.J) out["J"] = idx_json(*p.J);
  if (p.k) out["k"] = *p.k;
  if (p.I_matches_k) out["I_matches_k"] = *p.I_matches_k;
  return out;
}

}  // namespace factorix
