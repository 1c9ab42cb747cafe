#pragma once
// Command-line driver: subcommands over problem documents, each printing a
// human-readable report followed by a JSON block between sentinel lines.
// Exit codes: 0 verified/succeeded, 1 verified-false/obstructed, 2 usage or format error.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "infalg/io.hpp"

namespace infalg {

inline constexpr const char* report_begin = "-----BEGIN INFALG REPORT-----";
inline constexpr const char* report_end = "-----END INFALG REPORT-----";

enum ExitCode { exit_ok = 0, exit_false = 1, exit_usage = 2 };

struct CliOptions {
  std::string command;
  std::string file;
  int arity_cap = 4;
  bool arity_cap_given = false;
  int order = 3;
  bool order_given = false;
  std::optional<FieldConfig> field;
  Convention convention = Convention::product;
  std::string left = "phi", right = "psi";
  std::optional<int> slot_arity, slot_parity;
};

/// Thrown for inputs that parse but cannot be used by the chosen command.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace cli_detail {

template <Field K>
std::string format_value(const SparseVec<K>& v, const GradedSpace& sp) {
  if (v.empty()) return "0";
  std::string s;
  for (const auto& [i, c] : v) {
    std::string cs = c.str();
    bool neg = !cs.empty() && cs[0] == '-';
    if (neg) cs = cs.substr(1);
    if (s.empty()) s += neg ? "-" : "";
    else s += neg ? " - " : " + ";
    if (cs != "1") s += cs + "*";
    s += sp.name(i);
  }
  return s;
}

inline std::string format_args(const std::vector<int>& args, const GradedSpace& sp, Flavor f) {
  std::string s;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i) s += f == Flavor::exterior ? " ∧ " : ", ";
    s += sp.name(args[i]);
  }
  return s;
}

template <Field K>
void print_cochain(std::ostream& os, const std::string& label, const Cochain<K>& c, const std::string& indent = "  ") {
  const auto& sp = *c.space();
  if (c.is_zero()) {
    os << indent << label << " = 0\n";
    return;
  }
  for (const auto& [args, v] : c.table())
    os << indent << label << "(" << format_args(args, sp, c.flavor()) << ") = " << format_value(v, sp) << "\n";
}

template <Field K>
void print_family(std::ostream& os, const std::string& label, const CochainFamily<K>& f, const std::string& indent = "  ") {
  auto p = f.pruned();
  if (p.components().empty()) {
    os << indent << label << " = 0\n";
    return;
  }
  for (const auto& [k, c] : p.components()) print_cochain(os, label + "_" + std::to_string(k), c, indent);
}

template <Field K>
json witness_json(const Witness<K>& w, const GradedSpace& sp) {
  json a = json::array();
  for (int x : w.args) a.push_back(sp.name(x));
  return {{"arity", w.arity}, {"args", a}, {"output", sp.name(w.output)}, {"coefficient", w.coefficient.str()}};
}

inline json slot_json(const Slot& s) { return {{"parity", s.parity.value()}, {"arity", s.arity}}; }

inline json slots_json(const std::vector<Slot>& v) {
  json out = json::array();
  for (const auto& s : v) out.push_back(slot_json(s));
  return out;
}

template <Field K>
const StructureMap<K>& require_structure(const ProblemDocument<K>& doc) {
  if (!doc.flavor) throw UsageError("the document has no flavor and no structure map");
  return doc.structure;
}

template <Field K>
int cap_of(const ProblemDocument<K>& doc, const CliOptions& o) {
  return o.arity_cap_given ? o.arity_cap : doc.arity_cap.value_or(o.arity_cap);
}

template <Field K>
int order_of(const ProblemDocument<K>& doc, const CliOptions& o) {
  return o.order_given ? o.order : doc.order.value_or(o.order);
}

// ---- commands ----

template <Field K>
int cmd_check(const ProblemDocument<K>& doc, const CliOptions& o, std::ostream& os, json& rep) {
  const auto& d = require_structure(doc);
  const int cap = cap_of(doc, o);
  if (!is_odd_structure(d)) throw UsageError("every structure component must be odd in the good grading (parity = arity mod 2)");
  auto r = check_structure(d, cap);
  auto direct = check_structure_direct(d, cap);
  const bool agree = r.passed == direct.passed && r.failing_arities == direct.failing_arities;
  const auto& sp = *d.space();
  rep["arity_cap"] = cap;
  rep["passed"] = r.passed;
  rep["failing_arities"] = r.failing_arities;
  rep["direct_relations_agree"] = agree;
  if (r.passed) {
    rep["verdict"] = "verified";
    os << "{d,d}=0 verified for n≤" << cap << "\n";
  } else {
    rep["verdict"] = "failed";
    rep["witness"] = witness_json(*r.witness, sp);
    os << "{d,d}≠0: fails in arities";
    for (int n : r.failing_arities) os << " " << n;
    const auto& w = *r.witness;
    os << "\n  witness: {d,d}(" << format_args(w.args, sp, d.flavor()) << ") has coefficient " << w.coefficient.str()
       << " on " << sp.name(w.output) << "\n";
    if (direct.witness) rep["direct_witness"] = witness_json(*direct.witness, sp);
  }
  os << (agree ? "direct evaluation of the structure relations agrees\n"
               : "WARNING: direct evaluation of the structure relations disagrees\n");
  if (!agree) return exit_false;
  return r.passed ? exit_ok : exit_false;
}

template <Field K>
int cmd_bracket(const ProblemDocument<K>& doc, const CliOptions& o, std::ostream& os, json& rep) {
  auto get = [&](const std::string& n) -> const Cochain<K>& {
    auto it = doc.cochains.find(n);
    if (it == doc.cochains.end()) throw UsageError("the document has no cochain named '" + n + "' under \"cochains\"");
    return it->second;
  };
  const auto &phi = get(o.left), &psi = get(o.right);
  auto plain = bracket(phi, psi);
  auto mod = modified_bracket(phi, psi);
  rep["left"] = o.left;
  rep["right"] = o.right;
  rep["bracket"] = to_json(plain);
  rep["modified_bracket"] = to_json(mod);
  os << "[" << o.left << "," << o.right << "]: arity " << plain.arity() << ", parity " << plain.parity().value() << "\n";
  print_cochain(os, "[" + o.left + "," + o.right + "]", plain);
  os << "{" << o.left << "," << o.right << "}:\n";
  print_cochain(os, "{" + o.left + "," + o.right + "}", mod);
  return exit_ok;
}

template <Field K>
int cmd_cohomology(const ProblemDocument<K>& doc, const CliOptions& o, std::ostream& os, json& rep) {
  const auto& d = require_structure(doc);
  if (!is_odd_structure(d)) throw UsageError("every structure component must be odd in the good grading");
  const int cap = cap_of(doc, o);
  if (!check_structure(d, cap).passed) throw UsageError("the structure map fails {d,d}=0; run check first");
  if (o.slot_arity && (*o.slot_arity < 1 || *o.slot_arity > cap)) throw UsageError("--arity must lie in 1..arity cap");
  rep["arity_cap"] = cap;
  json slots = json::array();
  for (int k = 1; k <= cap; ++k)
    for (int p = 0; p <= 1; ++p) {
      if (o.slot_arity && *o.slot_arity != k) continue;
      if (o.slot_parity && *o.slot_parity != p) continue;
      Slot s{Parity(p), k};
      auto h = cohomology(d, s, cap);
      json reps = json::array();
      for (const auto& r : h.representatives) reps.push_back(to_json(r));
      slots.push_back({{"slot", slot_json(s)}, {"dim", h.dim()}, {"cocycle_dim", h.cocycle_dim},
                       {"boundary_unreliable", h.boundary_unreliable()}, {"representatives", reps}});
      os << "H(" << to_string(s) << ") has dimension " << h.dim() << " (cocycles " << h.cocycle_dim << ")"
         << (h.boundary_unreliable() ? "  [coboundaries depend on the arity cap]" : "") << "\n";
      for (std::size_t i = 0; i < h.representatives.size(); ++i)
        print_family(os, "c" + std::to_string(i + 1), h.representatives[i], "    ");
    }
  rep["slots"] = slots;
  return exit_ok;
}

template <Field K>
json series_json(const DeformationSeries<K>& s) {
  json g = json::array(), b = json::array();
  for (const auto& x : s.gamma) g.push_back(to_json(x.pruned()));
  for (const auto& x : s.beta) b.push_back(to_json(x.pruned()));
  return {{"order", s.order}, {"gamma", g}, {"beta", b}, {"unreliable", slots_json(s.unreliable)}};
}

template <Field K>
const Cochain<K>& only_component(const CochainFamily<K>& f, int arity, Parity parity, const char* what, Cochain<K>& zero) {
  for (const auto& [k, c] : f.components())
    if (k != arity && !c.is_zero()) throw UsageError(std::string(what) + " must be a single arity-" + std::to_string(arity) + " cochain in lie mode");
  if (const auto* c = f.find(arity)) return *c;
  zero = Cochain<K>(f.space(), f.flavor(), arity, parity);
  return zero;
}

template <Field K>
int cmd_deform(const ProblemDocument<K>& doc, const CliOptions& o, std::ostream& os, json& rep) {
  if (doc.kind != DocumentKind::deformation) throw UsageError("deform needs a deformation document");
  const auto& d = doc.structure;
  const int cap = cap_of(doc, o), order = order_of(doc, o);
  rep["mode"] = to_string(doc.mode);
  rep["order"] = order;
  rep["arity_cap"] = cap;
  DeformationOutcome<K> out;
  try {
    if (doc.mode == DeformMode::lie) {
      Cochain<K> zg, zb;
      const auto& g1 = only_component(doc.gamma1, 2, Parity(0), "gamma1", zg);
      const auto& b1 = only_component(doc.beta1, 2, Parity(1), "beta1", zb);
      out = prolong_lie(d, g1, b1, order);
    } else if (doc.mode == DeformMode::infinity) {
      out = prolong_infinity(d, doc.gamma1, doc.beta1, order, cap);
    } else {
      std::map<int, Cochain<K>> phi, psi;
      for (const auto& [k, c] : doc.gamma1.components()) phi.emplace(k, c);
      for (const auto& [k, c] : doc.beta1.components()) psi.emplace(k, c);
      out = prolong_restricted(d, phi, psi, order, cap);
    }
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const auto& sp = *d.space();
  (void)sp;
  if (out.succeeded()) {
    const auto& s = *out.series;
    rep["verdict"] = "succeeded";
    rep["series"] = series_json(s);
    os << "deformation extends to order " << order << " (" << to_string(doc.mode) << " mode, arity cap " << cap << ")\n";
    for (int p = 1; p <= s.order; ++p) {
      print_family(os, "gamma" + std::to_string(p), s.gamma[p]);
      print_family(os, "beta" + std::to_string(p), s.beta[p]);
    }
    if (!s.unreliable.empty()) {
      os << "  note: solutions in these slots depend on the arity cap:";
      for (const auto& x : s.unreliable) os << " [" << to_string(x) << "]";
      os << "\n";
    }
    return exit_ok;
  }
  const auto& ob = *out.obstruction;
  json coords = json::array(), basis = json::array();
  for (const auto& c : ob.class_coordinates) coords.push_back(c.str());
  for (const auto& b : ob.class_basis) basis.push_back(to_json(b));
  json oj{{"order", ob.order}, {"target", to_string(ob.target)}, {"rhs", to_json(ob.rhs.pruned())},
          {"class_coordinates", coords}, {"class_basis", basis}, {"message", ob.message},
          {"internal_error", ob.internal_error}};
  if (ob.arity) oj["arity"] = *ob.arity;
  rep["verdict"] = "obstructed";
  rep["obstruction"] = oj;
  os << "obstructed at order " << ob.order << " (" << to_string(ob.target) << (ob.arity ? ", arity " + std::to_string(*ob.arity) : "")
     << "): " << ob.message << "\n";
  print_family(os, "rhs", ob.rhs);
  os << "  class coordinates:";
  for (const auto& c : ob.class_coordinates) os << " " << c.str();
  os << "\n";
  for (std::size_t i = 0; i < ob.class_basis.size(); ++i) print_family(os, "c" + std::to_string(i + 1), ob.class_basis[i], "    ");
  return exit_false;
}

template <Field K>
int cmd_massey(const ProblemDocument<K>& doc, const CliOptions& o, std::ostream& os, json& rep) {
  if (doc.kind != DocumentKind::massey) throw UsageError("massey needs a massey document");
  const int cap = cap_of(doc, o);
  MasseyProblem<K> pb{*doc.coalgebra, doc.structure, cap, {}, doc.b};
  if (doc.a) {
    pb.a = *doc.a;
  } else {
    for (const auto& e : pb.F.basis())
      if (e.in_f0 && doc.alpha.count(e.name)) pb.a.emplace(e.name, doc.alpha.at(e.name));
  }
  auto bad = alpha_degree_violations(pb.F, doc.alpha);
  if (!bad.empty()) throw UsageError("alpha has the wrong degree at '" + bad.front() + "'");
  MasseyVerdict<K> v;
  try {
    v = massey_verify(pb, doc.alpha, o.convention);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  rep["convention"] = to_string(o.convention);
  rep["arity_cap"] = cap;
  rep["holds"] = v.holds;
  rep["statement"] = v.statement;
  rep["diagnostics"] = v.diagnostics;
  if (v.first_failure) rep["first_failure"] = *v.first_failure;
  rep["verdict"] = v.holds ? "verified" : "failed";
  os << v.statement << " (" << to_string(o.convention) << " convention, arity cap " << cap << ")\n";
  for (const auto& m : v.diagnostics) os << "  " << m << "\n";
  return v.holds ? exit_ok : exit_false;
}

template <Field K>
int cmd_base_verify(const ProblemDocument<K>& doc, const CliOptions& o, std::ostream& os, json& rep) {
  if (doc.kind != DocumentKind::base) throw UsageError("base-verify needs a base document");
  const auto& S = *doc.base;
  auto br = S.check();
  if (!br.passed()) throw UsageError("the base algebra is invalid: " + br.violations.front());
  const int cap = cap_of(doc, o);
  Prop1Report r;
  try {
    r = verify_prop1(doc.structure, S, doc.alpha, cap);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const bool termwise = r.identity(prop1::structure_identity).holds && r.identity(prop1::mc_identity).holds &&
                        r.identity(prop1::unit_part).holds;
  rep["arity_cap"] = cap;
  rep["codifferential"] = r.codifferential;
  rep["maurer_cartan"] = r.maurer_cartan;
  rep["equivalent"] = r.equivalent;
  rep["termwise_identities_hold"] = termwise;
  if (r.first_disagreeing_slot)
    rep["first_disagreeing_slot"] = {{"element", r.first_disagreeing_slot->first}, {"arity", r.first_disagreeing_slot->second}};
  json ids = json::array();
  for (const auto& id : r.identities) {
    json x{{"name", id.name}, {"holds", id.holds}, {"checked", id.checked}};
    if (id.first_failure) {
      const auto& f = *id.first_failure;
      json a = json::array();
      for (int v : f.args) a.push_back(doc.space->name(v));
      x["first_failure"] = {{"element", f.element}, {"arity", f.arity}, {"args", a},
                            {"output", f.output >= 0 ? doc.space->name(f.output) : ""}, {"lhs", f.lhs}, {"rhs", f.rhs}};
    }
    ids.push_back(x);
  }
  rep["identities"] = ids;
  const bool ok = r.equivalent && termwise;
  rep["verdict"] = ok ? "verified" : "failed";
  os << "structure over V⊗S is a codifferential: " << (r.codifferential ? "yes" : "no") << "\n";
  os << "alpha satisfies the Maurer-Cartan equation: " << (r.maurer_cartan ? "yes" : "no") << "\n";
  os << "the two conditions agree on every slot: " << (r.equivalent ? "yes" : "no") << "\n";
  for (const auto& id : r.identities) {
    os << "  " << (id.holds ? "holds " : "FAILS ") << id.name << " (" << id.checked << " tuples)";
    if (id.first_failure) {
      const auto& f = *id.first_failure;
      os << "; first failure at " << f.element << ", args (" << format_args(f.args, *doc.space, doc.structure.flavor())
         << "), output " << (f.output >= 0 ? doc.space->name(f.output) : "?") << ": " << f.lhs << " vs " << f.rhs;
    }
    os << "\n";
  }
  return ok ? exit_ok : exit_false;
}

template <Field K>
int dispatch(const json& j, const CliOptions& o, std::ostream& os, json& rep) {
  auto doc = parse_document_json<K>(j);
  rep["document_kind"] = to_string(doc.kind);
  if (o.command == "check") return cmd_check(doc, o, os, rep);
  if (o.command == "bracket") return cmd_bracket(doc, o, os, rep);
  if (o.command == "cohomology") return cmd_cohomology(doc, o, os, rep);
  if (o.command == "deform") return cmd_deform(doc, o, os, rep);
  if (o.command == "massey") return cmd_massey(doc, o, os, rep);
  if (o.command == "base-verify") return cmd_base_verify(doc, o, os, rep);
  throw UsageError("unknown command '" + o.command + "'");
}

inline void emit_block(std::ostream& os, const json& rep) {
  os << report_begin << "\n" << rep.dump(2) << "\n" << report_end << "\n";
}

}  // namespace cli_detail

/// Runs one command on an options record (the document is read from o.file).
inline int run_options(const CliOptions& o, std::ostream& os, std::ostream& err) {
  json rep{{"command", o.command}, {"file", o.file}};
  auto fail = [&](const std::string& kind, const std::string& where, const std::string& msg) {
    err << "error: " << msg << "\n";
    rep["exit_code"] = int(exit_usage);
    rep["error"] = {{"kind", kind}, {"where", where}, {"message", msg}};
    cli_detail::emit_block(os, rep);
    return int(exit_usage);
  };
  std::ifstream in(o.file, std::ios::binary);
  if (!in) return fail("io", o.file, "cannot read '" + o.file + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    auto j = parse_json_text(ss.str());
    FieldConfig field = o.field ? *o.field : peek_field(j).value_or(FieldConfig{});
    rep["field"] = field.str();
    int code;
    if (field.rational()) {
      code = cli_detail::dispatch<Rational>(j, o, os, rep);
    } else {
      ModP::Scope scope(field.p);
      code = cli_detail::dispatch<ModP>(j, o, os, rep);
    }
    rep["exit_code"] = code;
    cli_detail::emit_block(os, rep);
    return code;
  } catch (const DocumentError& e) {
    const char* k = e.kind() == DocumentError::Kind::syntax   ? "syntax"
                    : e.kind() == DocumentError::Kind::schema ? "schema"
                                                              : "reference";
    return fail(k, e.where(), e.what());
  } catch (const UsageError& e) {
    return fail("usage", "", e.what());
  } catch (const std::domain_error& e) {
    return fail("arithmetic", "", e.what());
  }
}

/// Parses argv (argv[0] is the program name) and runs the command.
inline int run_command(const std::vector<std::string>& args, std::ostream& os = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Exact computations with A-infinity and L-infinity algebras"};
  app.require_subcommand(1);
  CliOptions o;
  std::string field, convention = "product";

  auto common = [&](CLI::App* sub) {
    sub->add_option("file", o.file, "problem document (JSON)")->required();
    sub->add_option("--arity-cap", o.arity_cap, "largest arity considered (default 4)")->check(CLI::PositiveNumber);
    sub->add_option("--field", field, "q (default) or fp:<prime>; overrides the document");
  };
  auto* check = app.add_subcommand("check", "verify {d,d} = 0 up to the arity cap");
  common(check);
  auto* br = app.add_subcommand("bracket", "bracket two named cochains of a document");
  common(br);
  br->add_option("--left", o.left, "name of the left cochain (default phi)");
  br->add_option("--right", o.right, "name of the right cochain (default psi)");
  auto* coh = app.add_subcommand("cohomology", "cohomology of the structure by slot");
  common(coh);
  coh->add_option("--arity", o.slot_arity, "only this arity");
  coh->add_option("--parity", o.slot_parity, "only this internal parity")->check(CLI::Range(0, 1));
  auto* def = app.add_subcommand("deform", "prolong a first-order deformation");
  common(def);
  def->add_option("--order", o.order, "target order (default 3)")->check(CLI::PositiveNumber);
  auto* ms = app.add_subcommand("massey", "verify a Massey F-product");
  common(ms);
  ms->add_option("--convention", convention, "product (default) or mc")->check(CLI::IsMember({"product", "mc"}));
  auto* bv = app.add_subcommand("base-verify", "compare the codifferential and Maurer-Cartan conditions over a base");
  common(bv);

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  if (argv.empty()) argv.push_back("infalg");
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, os, err);
    return code == 0 ? int(exit_ok) : int(exit_usage);
  }
  for (auto* s : app.get_subcommands()) {
    o.command = s->get_name();
    o.arity_cap_given = s->count("--arity-cap") > 0;
    if (s->get_option_no_throw("--order")) o.order_given = s->count("--order") > 0;
  }
  o.convention = convention == "mc" ? Convention::mc : Convention::product;
  if (!field.empty()) {
    try {
      o.field = FieldConfig::parse(field);
    } catch (const std::invalid_argument& e) {
      err << "error: " << e.what() << "\n";
      return exit_usage;
    }
  }
  return run_options(o, os, err);
}

}  // namespace infalg
