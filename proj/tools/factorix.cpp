#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "factorix/factorix.hpp"

using namespace factorix;

namespace {

struct Options {
  std::string instance_path;
  std::string element;
  std::string group;
  std::string suite = "default";
  std::string scenarios = "abcdef";
  std::string format = "pretty";
  std::string out = "-";
  int cap = kDefaultDegreeCap;
  bool include_zero = false;
  bool per_element = false;
  bool no_tame = false;
  bool serial = false;
};

InstanceSpec load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("instance", "cannot read file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_instance_text(ss.str());
}

json instance_meta(const InstanceSpec& inst, const std::string& command) {
  return {{"command", command}, {"digest", instance_digest(inst)}, {"group", inst.group().str()}};
}

Report cmd_atoms(const Options& o) {
  auto inst = load_instance(o.instance_path);
  Report rep;
  rep.meta = instance_meta(inst, "atoms");
  auto generic = atoms_generic(inst);
  std::string agreement;
  try {
    agreement = atoms_closed_form(inst) == generic ? "agree" : "DISAGREE";
  } catch (const UnsupportedInstance& e) {
    agreement = std::string("not applicable (") + e.what() + ")";
  }
  rep.meta["count"] = generic.size();
  rep.meta["closed_form"] = agreement;
  for (std::size_t u = 0; u < generic.size(); ++u)
    rep.rows.push_back({{"id", "a" + std::to_string(u)},
                        {"atom", inst.element_str(generic[u])},
                        {"degree", generic[u].degree()},
                        {"element", element_json(inst, generic[u])}});
  return rep;
}

Report cmd_factorize(const Options& o) {
  auto inst = load_instance(o.instance_path);
  auto a = parse_element_text(o.element, inst);
  Factorizer<BlockMonoid> f(BlockMonoid(inst), atoms_generic(inst));
  Report rep;
  rep.meta = instance_meta(inst, "factorize");
  rep.rows.push_back(element_row(inst, f, a, true));
  return rep;
}

Report cmd_invariants(const Options& o) {
  auto inst = load_instance(o.instance_path);
  auto b = brute_invariants(inst, o.cap, o.include_zero, !o.no_tame);
  Report rep;
  rep.meta = instance_meta(inst, "invariants");
  rep.meta["cap"] = o.cap;
  rep.meta["label"] = "certified up to degree " + std::to_string(o.cap);
  if (!o.per_element) {
    rep.rows.push_back(invariants_json(inst, b));
    return rep;
  }
  const auto summary = invariants_json(inst, b);
  for (const auto& [k, v] : summary.items()) rep.meta["monoid_" + k] = v;
  Factorizer<BlockMonoid> f(BlockMonoid(inst), atoms_generic(inst));
  for (const auto& a : enumerate_B(inst, o.cap, o.include_zero))
    if (a.degree() > 0) rep.rows.push_back(element_row(inst, f, a, false));
  return rep;
}

Report cmd_predict(const Options& o) {
  auto inst = load_instance(o.instance_path);
  Report rep;
  rep.meta = instance_meta(inst, "predict");
  rep.rows.push_back(prediction_json(predict(inst)));
  return rep;
}

Report cmd_davenport(const Options& o) {
  json j;
  try {
    j = json::parse(o.group);
  } catch (const json::parse_error& e) {
    throw ValidationError("group", std::string("invalid JSON: ") + e.what());
  }
  auto G = parse_group(j);
  Report rep;
  rep.meta = {{"command", "davenport"}, {"group", G.str()}};
  rep.rows.push_back({{"D", davenport_constant(G)}});
  return rep;
}

Report cmd_verify(const Options& o, bool& violation) {
  if (o.suite != "default") throw ValidationError("--suite", "unknown suite \"" + o.suite + "\"");
  SuiteConfig cfg;
  cfg.cap = o.cap;
  cfg.parallel = !o.serial;
  cfg.scenarios.clear();
  for (char c : o.scenarios) {
    if (c < 'a' || c > 'f') throw ValidationError("--scenarios", "letters a-f expected");
    cfg.scenarios.insert(c);
  }
  Report rep;
  rep.meta = {{"command", "verify"}, {"suite", o.suite}, {"cap", o.cap}};
  std::size_t bad = 0;
  for (const auto& r : run_suite(cfg)) {
    auto row = report_json(r);
    if (row["violation"].get<bool>()) ++bad;
    rep.rows.push_back(std::move(row));
  }
  rep.meta["reports"] = rep.rows.size();
  rep.meta["violations"] = bad;
  violation = bad > 0;
  return rep;
}

void emit(const Report& rep, const Options& o) {
  const auto fmt = parse_format(o.format);
  if (o.out == "-") {
    write_report(std::cout, rep, fmt);
    return;
  }
  std::ofstream out(o.out);
  if (!out) throw ValidationError("--out", "cannot write " + o.out);
  write_report(out, rep, fmt);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Factorization invariants of T-block monoids"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&o](CLI::App* sub) {
    sub->add_option("--format", o.format, "json | jsonl | csv | pretty")
        ->check(CLI::IsMember({"json", "jsonl", "csv", "pretty"}));
    sub->add_option("--out", o.out, "output file, - for stdout");
  };
  auto add_cap = [&o](CLI::App* sub) {
    sub->add_option("--cap", o.cap, "degree cap")->check(CLI::Range(1, 1 << 20));
    sub->add_flag("--include-zero", o.include_zero, "keep elements divisible by the prime 0");
  };

  auto* atoms_cmd = app.add_subcommand("atoms", "atom table, with closed-form agreement for |G| = 2");
  atoms_cmd->add_option("instance", o.instance_path)->required();
  add_common(atoms_cmd);

  auto* fact_cmd = app.add_subcommand("factorize", "Z(a), L(a), delta(a), rho(a), c(a), cmon(a)");
  fact_cmd->add_option("instance", o.instance_path)->required();
  fact_cmd->add_option("element", o.element, "element as JSON {\"free\": ..., \"parts\": ...}")->required();
  add_common(fact_cmd);

  auto* inv_cmd = app.add_subcommand("invariants", "monoid invariants over all elements up to the cap");
  inv_cmd->add_option("instance", o.instance_path)->required();
  inv_cmd->add_flag("--per-element", o.per_element, "one row per element");
  inv_cmd->add_flag("--no-tame", o.no_tame, "skip the tame degree");
  add_cap(inv_cmd);
  add_common(inv_cmd);

  auto* pred_cmd = app.add_subcommand("predict", "closed-form predictions with provenance");
  pred_cmd->add_option("instance", o.instance_path)->required();
  add_common(pred_cmd);

  auto* ver_cmd = app.add_subcommand("verify", "run the verification suite");
  ver_cmd->add_option("--suite", o.suite, "suite name");
  ver_cmd->add_option("--scenarios", o.scenarios, "subset of abcdef");
  ver_cmd->add_flag("--serial", o.serial, "run scenarios on one thread");
  add_cap(ver_cmd);
  add_common(ver_cmd);

  auto* dav_cmd = app.add_subcommand("davenport", "Davenport constant of a group literal such as [3,3]");
  dav_cmd->add_option("group", o.group)->required();
  add_common(dav_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    bool violation = false;
    Report rep;
    if (*atoms_cmd) rep = cmd_atoms(o);
    else if (*fact_cmd) rep = cmd_factorize(o);
    else if (*inv_cmd) rep = cmd_invariants(o);
    else if (*pred_cmd) rep = cmd_predict(o);
    else if (*ver_cmd) rep = cmd_verify(o, violation);
    else rep = cmd_davenport(o);
    emit(rep, o);
    return violation ? 1 : 0;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const StructuralError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const UnsupportedInstance& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ResourceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  }
}
