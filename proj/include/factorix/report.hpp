#pragma once

// JSON rows for reports and a small multi-format writer (json, jsonl, csv,
// pretty) shared by the command-line tool and the tests.

#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "factorix/json_io.hpp"
#include "factorix/verify.hpp"

namespace factorix {

enum class OutputFormat { Json, Jsonl, Csv, Pretty };

inline OutputFormat parse_format(const std::string& s) {
  if (s == "json") return OutputFormat::Json;
  if (s == "jsonl") return OutputFormat::Jsonl;
  if (s == "csv") return OutputFormat::Csv;
  if (s == "pretty") return OutputFormat::Pretty;
  throw ValidationError("--format", "expected one of json, jsonl, csv, pretty");
}

/// A report: metadata shared by all rows (digest, cap, ...) plus rows.
struct Report {
  json meta = json::object();
  std::vector<json> rows;
};

/// Atom literals of a factorization, repeated by multiplicity.
inline json factorization_json(const InstanceSpec& inst, const std::vector<BElement>& atom_table,
                               const Factorization& z) {
  json out = json::array();
  for (auto u : z.atoms()) out.push_back(inst.element_str(atom_table.at(u)));
  return out;
}

/// One row per element: `{"element", "L", "delta", "rho", "c", "cmon"}`.
inline json element_row(const InstanceSpec& inst, Factorizer<BlockMonoid>& f, const BElement& a,
                        bool with_factorizations) {
  auto r = analyze_element(f, a, false);
  json row;
  row["element"] = element_json(inst, a);
  if (with_factorizations) {
    json Z = json::array();
    for (const auto& z : r.factorizations) Z.push_back(factorization_json(inst, f.atoms(), z));
    row["Z"] = Z;
  }
  row["L"] = int_set_json(r.lengths);
  row["delta"] = int_set_json(r.delta);
  row["rho"] = r.rho.str();
  row["c"] = r.catenary;
  row["cmon"] = r.monotone_catenary;
  return row;
}

inline json invariants_json(const InstanceSpec& inst, const BruteInvariants& b) {
  json out;
  out["certified_up_to_degree"] = b.cap;
  out["include_zero"] = b.include_zero;
  out["atoms"] = b.atom_count;
  out["elements"] = b.inv.elements;
  out["half_factorial"] = b.inv.half_factorial;
  out["c"] = b.inv.catenary;
  out["cmon"] = b.inv.monotone_catenary;
  out["t"] = b.inv.tame ? json(*b.inv.tame) : json(nullptr);
  out["rho"] = b.inv.rho.str();
  out["delta"] = int_set_json(b.inv.delta);
  out["min_delta"] = b.inv.min_delta() ? json(*b.inv.min_delta()) : json(nullptr);
  out["rho_relative"] = b.rho_relative.str();
  auto witness = [&](const std::optional<BElement>& w) { return w ? json(inst.element_str(*w)) : json(nullptr); };
  out["witness"] = {{"c", witness(b.inv.witness_catenary)},
                    {"cmon", witness(b.inv.witness_monotone)},
                    {"t", witness(b.inv.witness_tame)},
                    {"rho", witness(b.inv.witness_rho)}};
  return out;
}

inline json report_json(const VerificationReport& r) {
  json out;
  out["scenario"] = r.scenario;
  out["label"] = r.label;
  out["digest"] = r.digest;
  out["cap"] = r.cap;
  json fields = json::array();
  for (const auto& f : r.fields)
    fields.push_back({{"name", f.name},
                      {"predicted", f.predicted},
                      {"brute", f.brute},
                      {"verdict", to_string(f.verdict)},
                      {"note", f.note}});
  out["fields"] = fields;
  json bounds = json::array();
  for (const auto& b : r.bounds) bounds.push_back({{"name", b.name}, {"lhs", b.lhs}, {"rhs", b.rhs}, {"holds", b.holds}});
  out["bounds"] = bounds;
  out["findings"] = r.findings;
  out["witness"] = r.witness ? json(*r.witness) : json(nullptr);
  out["violation"] = r.has_violation() || !r.bounds_hold();
  out["seconds"] = r.seconds;
  return out;
}

namespace detail {

inline std::string scalar_text(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "";
  return v.dump();
}

inline std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

inline void pretty_value(std::ostream& os, const json& v, int indent) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  if (v.is_object()) {
    for (const auto& [k, x] : v.items()) {
      if (x.is_object() || (x.is_array() && !x.empty() && x.front().is_structured())) {
        os << pad << k << ":\n";
        pretty_value(os, x, indent + 2);
      } else {
        os << pad << k << ": " << scalar_text(x) << "\n";
      }
    }
  } else if (v.is_array()) {
    for (const auto& x : v) {
      if (x.is_structured()) {
        os << pad << "-\n";
        pretty_value(os, x, indent + 2);
      } else {
        os << pad << "- " << scalar_text(x) << "\n";
      }
    }
  } else {
    os << pad << scalar_text(v) << "\n";
  }
}

}  // namespace detail

/// json: one document `{meta..., "rows": [...]}`; jsonl: each row with the
/// metadata merged in; csv: metadata columns first, then row keys in first
/// appearance order; pretty: indented text.
inline void write_report(std::ostream& os, const Report& rep, OutputFormat fmt) {
  auto merged = [&](const json& row) {
    json out = rep.meta;
    for (const auto& [k, v] : row.items()) out[k] = v;
    return out;
  };
  switch (fmt) {
    case OutputFormat::Json: {
      json doc = rep.meta;
      doc["rows"] = rep.rows;
      os << doc.dump(2) << "\n";
      break;
    }
    case OutputFormat::Jsonl:
      for (const auto& row : rep.rows) os << merged(row).dump() << "\n";
      break;
    case OutputFormat::Csv: {
      std::vector<std::string> cols;
      std::set<std::string> seen;
      for (const auto& [k, v] : rep.meta.items())
        if (seen.insert(k).second) cols.push_back(k);
      for (const auto& row : rep.rows)
        for (const auto& [k, v] : row.items())
          if (seen.insert(k).second) cols.push_back(k);
      for (std::size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << detail::csv_cell(cols[i]);
      os << "\n";
      for (const auto& row : rep.rows) {
        auto m = merged(row);
        for (std::size_t i = 0; i < cols.size(); ++i)
          os << (i ? "," : "") << (m.contains(cols[i]) ? detail::csv_cell(detail::scalar_text(m[cols[i]])) : "");
        os << "\n";
      }
      break;
    }
    case OutputFormat::Pretty:
      detail::pretty_value(os, rep.meta, 0);
      for (const auto& row : rep.rows) {
        os << "--\n";
        detail::pretty_value(os, row, 2);
      }
      break;
  }
}

}  // namespace factorix
