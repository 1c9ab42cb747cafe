#pragma once
// JSON problem documents: parsing with located errors, and deterministic
// serialization that parses back to the same document.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "infalg/base.hpp"
#include "infalg/coalgebra.hpp"
#include "infalg/massey.hpp"

namespace infalg {

using json = nlohmann::json;

enum class DocumentKind { space, structure, deformation, massey, base };
enum class DeformMode { lie, infinity, restricted };

inline const std::map<std::string, DocumentKind>& document_kinds() {
  static const std::map<std::string, DocumentKind> m{{"space", DocumentKind::space},
                                                     {"structure", DocumentKind::structure},
                                                     {"deformation", DocumentKind::deformation},
                                                     {"massey", DocumentKind::massey},
                                                     {"base", DocumentKind::base}};
  return m;
}

inline std::string to_string(DocumentKind k) {
  for (const auto& [n, v] : document_kinds())
    if (v == k) return n;
  return "?";
}

inline std::string to_string(DeformMode m) {
  return m == DeformMode::lie ? "lie" : m == DeformMode::infinity ? "infinity" : "restricted";
}

class DocumentError : public std::runtime_error {
 public:
  enum class Kind { syntax, schema, reference };

  DocumentError(Kind kind, std::string where, const std::string& msg)
      : std::runtime_error(label(kind) + " at " + where + ": " + msg), kind_(kind), where_(std::move(where)) {}

  [[nodiscard]] Kind kind() const { return kind_; }
  /// "line L, column C" for syntax errors, a JSON pointer otherwise.
  [[nodiscard]] const std::string& where() const { return where_; }

 private:
  static std::string label(Kind k) {
    return k == Kind::syntax ? "syntax error" : k == Kind::schema ? "schema error" : "unresolved reference";
  }
  Kind kind_;
  std::string where_;
};

/// "q" (rationals) or "fp:p".
struct FieldConfig {
  std::uint64_t p = 0;  // 0 means Q

  [[nodiscard]] bool rational() const { return p == 0; }
  [[nodiscard]] std::string str() const { return p == 0 ? "q" : "fp:" + std::to_string(p); }

  static FieldConfig parse(const std::string& s) {
    if (s == "q") return {};
    if (s.rfind("fp:", 0) == 0 && s.size() > 3 && s.find_first_not_of("0123456789", 3) == std::string::npos) {
      auto p = std::stoull(s.substr(3));
      if (p >= 2 && ModP::is_prime(p) && p < (1ull << 31)) return {p};
    }
    throw std::invalid_argument("field must be \"q\" or \"fp:<prime>\", got \"" + s + "\"");
  }
  friend bool operator==(const FieldConfig&, const FieldConfig&) = default;
};

/// How the coalgebra of a Massey document was given.
struct CoalgebraSource {
  std::string builtin;  // "lie", "restricted", or empty for an explicit table
  int N = 0, Q = 0;
  friend bool operator==(const CoalgebraSource&, const CoalgebraSource&) = default;
};

template <Field K>
struct ProblemDocument {
  DocumentKind kind = DocumentKind::space;
  std::optional<FieldConfig> field;
  std::optional<int> arity_cap, order;
  SpacePtr space;
  std::optional<Flavor> flavor;
  StructureMap<K> structure;
  std::map<std::string, Cochain<K>> cochains;

  // deformation
  DeformMode mode = DeformMode::lie;
  CochainFamily<K> gamma1, beta1;

  // massey
  std::optional<FilteredCoalgebra<K>> coalgebra;
  CoalgebraSource coalgebra_source;
  AlphaMap<K> alpha;  // also used by base documents, keyed by m_i
  std::optional<AlphaMap<K>> a, b;

  // base
  std::optional<BaseAlgebra<K>> base;
  std::vector<BaseGenerator> base_generators;  // empty when given as a product table
};

namespace io_detail {

inline std::string join_path(const std::string& p, const std::string& key) { return p + "/" + key; }
inline std::string join_path(const std::string& p, std::size_t i) { return p + "/" + std::to_string(i); }

[[noreturn]] inline void schema(const std::string& path, const std::string& msg) {
  throw DocumentError(DocumentError::Kind::schema, path.empty() ? "/" : path, msg);
}
[[noreturn]] inline void unresolved(const std::string& path, const std::string& msg) {
  throw DocumentError(DocumentError::Kind::reference, path.empty() ? "/" : path, msg);
}

inline const json& member(const json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object()) schema(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) schema(join_path(path, key), "required field is missing");
  return *it;
}

inline const json* optional_member(const json& obj, const std::string& key) {
  auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

inline void allow_keys(const json& obj, std::initializer_list<const char*> keys, const std::string& path) {
  if (!obj.is_object()) schema(path, "expected an object");
  for (const auto& [k, v] : obj.items()) {
    bool ok = false;
    for (const char* a : keys) ok = ok || k == a;
    if (!ok) schema(join_path(path, k), "unknown field");
  }
}

inline std::string get_string(const json& j, const std::string& path) {
  if (!j.is_string()) schema(path, "expected a string");
  return j.get<std::string>();
}

inline int get_int(const json& j, const std::string& path) {
  if (!j.is_number_integer()) schema(path, "expected an integer");
  return j.get<int>();
}

inline bool get_bool(const json& j, const std::string& path) {
  if (!j.is_boolean()) schema(path, "expected true or false");
  return j.get<bool>();
}

inline Parity get_parity(const json& j, const std::string& path) {
  int v = get_int(j, path);
  if (v != 0 && v != 1) schema(path, "parity must be 0 or 1");
  return Parity(v);
}

inline const json& get_array(const json& j, const std::string& path) {
  if (!j.is_array()) schema(path, "expected an array");
  return j;
}

template <Field K>
K get_scalar(const json& j, const std::string& path) {
  try {
    if (j.is_number_integer()) return K::parse(std::to_string(j.get<long long>()));
    if (j.is_string()) return K::parse(j.get<std::string>());
  } catch (const std::exception& e) {
    schema(path, std::string("bad scalar: ") + e.what());
  }
  schema(path, "scalars are strings \"p/q\" or integers");
}

inline std::vector<BasisElement> parse_basis(const json& arr, const std::string& path) {
  std::vector<BasisElement> out;
  std::map<std::string, std::size_t> seen;
  for (std::size_t i = 0; i < get_array(arr, path).size(); ++i) {
    const auto p = join_path(path, i);
    allow_keys(arr[i], {"name", "parity"}, p);
    auto n = get_string(member(arr[i], "name", p), join_path(p, "name"));
    if (n.empty()) schema(join_path(p, "name"), "empty name");
    if (!seen.emplace(n, i).second)
      schema(join_path(p, "name"), "duplicate basis name '" + n + "' (first at " + join_path(path, seen[n]) + ")");
    out.push_back({n, get_parity(member(arr[i], "parity", p), join_path(p, "parity"))});
  }
  return out;
}

inline int resolve(const GradedSpace& sp, const json& j, const std::string& path) {
  auto n = get_string(j, path);
  auto i = sp.find(n);
  if (!i) unresolved(path, "unknown basis element '" + n + "'");
  return *i;
}

/// Reads {arity, parity?, table: [{args, value}]}. Without "parity" the parity is
/// read off the first nonzero entry, else `fallback` (when given).
template <Field K>
Cochain<K> parse_cochain(const json& j, const SpacePtr& sp, Flavor flavor, const std::string& path,
                         std::optional<Parity> fallback) {
  allow_keys(j, {"arity", "parity", "table"}, path);
  const int arity = get_int(member(j, "arity", path), join_path(path, "arity"));
  if (arity < 1) schema(join_path(path, "arity"), "arity must be >= 1");
  const auto tpath = join_path(path, "table");
  const json& table = j.contains("table") ? get_array(j["table"], tpath) : json::array();

  struct Entry {
    std::vector<int> args;
    SparseVec<K> value;
    std::string path;
  };
  std::vector<Entry> entries;
  for (std::size_t r = 0; r < table.size(); ++r) {
    const auto rp = join_path(tpath, r);
    allow_keys(table[r], {"args", "value"}, rp);
    const auto& args = get_array(member(table[r], "args", rp), join_path(rp, "args"));
    if (static_cast<int>(args.size()) != arity)
      schema(join_path(rp, "args"), "expected " + std::to_string(arity) + " arguments, got " + std::to_string(args.size()));
    Entry e;
    e.path = rp;
    for (std::size_t a = 0; a < args.size(); ++a) e.args.push_back(resolve(*sp, args[a], join_path(join_path(rp, "args"), a)));
    const auto vp = join_path(rp, "value");
    const auto& val = member(table[r], "value", rp);
    if (!val.is_object()) schema(vp, "expected an object {name: scalar}");
    for (const auto& [n, c] : val.items()) {
      auto o = sp->find(n);
      if (!o) unresolved(join_path(vp, n), "unknown basis element '" + n + "'");
      add_to(e.value, *o, get_scalar<K>(c, join_path(vp, n)));
    }
    entries.push_back(std::move(e));
  }

  std::optional<Parity> parity;
  if (j.contains("parity")) parity = get_parity(j["parity"], join_path(path, "parity"));
  for (const auto& e : entries)
    if (!parity && !e.value.empty()) parity = sp->parity(e.value.begin()->first) + sp->parity_of(e.args);
  if (!parity) parity = fallback;
  if (!parity) schema(join_path(path, "parity"), "parity is required for an empty cochain");

  Cochain<K> c(sp, flavor, arity, *parity);
  std::map<std::vector<int>, std::pair<SparseVec<K>, std::string>> seen;
  for (const auto& e : entries) {
    std::vector<int> key = e.args;
    SparseVec<K> v = e.value;
    if (flavor == Flavor::exterior) {
      auto w = canonicalize_exterior(*sp, e.args);
      if (!w) {
        if (!v.empty()) schema(e.path, "nonzero value on a tuple that vanishes in the exterior power");
        continue;
      }
      key = w->tuple;
      if (w->sign < 0) v = scaled(v, K(-1));
    }
    for (const auto& [o, x] : v)
      if (sp->parity(o) != *parity + sp->parity_of(e.args))
        schema(join_path(e.path, "value"), "output '" + sp->name(o) + "' breaks the homogeneity of the cochain");
    auto [it, fresh] = seen.emplace(key, std::make_pair(v, e.path));
    if (!fresh) {
      if (it->second.first != v) schema(e.path, "inconsistent duplicate of the entry at " + it->second.second);
      continue;
    }
    c.add(key, v);
  }
  return c;
}

template <Field K>
CochainFamily<K> parse_family(const json& j, const SpacePtr& sp, Flavor flavor, const std::string& path,
                              const std::function<std::optional<Parity>(int)>& fallback) {
  CochainFamily<K> f(sp, flavor);
  std::map<int, std::string> seen;
  for (std::size_t i = 0; i < get_array(j, path).size(); ++i) {
    const auto p = join_path(path, i);
    int k = j[i].is_object() && j[i].contains("arity") ? get_int(j[i]["arity"], join_path(p, "arity")) : 0;
    auto c = parse_cochain<K>(j[i], sp, flavor, p, fallback(k));
    if (!seen.emplace(c.arity(), p).second) schema(p, "second component of arity " + std::to_string(c.arity()));
    f.set(std::move(c));
  }
  return f;
}

template <Field K>
AlphaMap<K> parse_alpha(const json& j, const SpacePtr& sp, Flavor flavor, const std::string& path,
                        const std::function<bool(const std::string&)>& known,
                        const std::function<std::optional<Parity>(const std::string&, int)>& fallback) {
  if (!j.is_object()) schema(path, "expected an object {element: [cochains]}");
  AlphaMap<K> out;
  for (const auto& [n, v] : j.items()) {
    if (!known(n)) unresolved(join_path(path, n), "unknown element '" + n + "'");
    out.emplace(n, parse_family<K>(v, sp, flavor, join_path(path, n), [&](int k) { return fallback(n, k); }));
  }
  return out;
}

template <Field K>
FilteredCoalgebra<K> parse_coalgebra(const json& j, const std::string& path, CoalgebraSource& src) {
  if (!j.is_object()) schema(path, "expected an object");
  if (j.contains("builtin")) {
    allow_keys(j, {"builtin", "N", "Q"}, path);
    src.builtin = get_string(j["builtin"], join_path(path, "builtin"));
    src.N = get_int(member(j, "N", path), join_path(path, "N"));
    if (src.N < 1) schema(join_path(path, "N"), "N must be >= 1");
    if (src.builtin == "lie") {
      if (j.contains("Q")) schema(join_path(path, "Q"), "Q applies to the restricted coalgebra only");
      return build_F_lie<K>(src.N);
    }
    if (src.builtin == "restricted") {
      src.Q = get_int(member(j, "Q", path), join_path(path, "Q"));
      if (src.Q < 2) schema(join_path(path, "Q"), "Q must be >= 2");
      return build_F_restricted<K>(src.N, src.Q);
    }
    schema(join_path(path, "builtin"), "expected \"lie\" or \"restricted\"");
  }
  allow_keys(j, {"basis", "coproduct"}, path);
  std::vector<CoalgebraElement> basis;
  std::map<std::string, std::size_t> seen;
  const auto bp = join_path(path, "basis");
  const auto& arr = get_array(member(j, "basis", path), bp);
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const auto p = join_path(bp, i);
    allow_keys(arr[i], {"name", "internal", "external", "f0", "f1"}, p);
    CoalgebraElement e;
    e.name = get_string(member(arr[i], "name", p), join_path(p, "name"));
    if (!seen.emplace(e.name, i).second) schema(join_path(p, "name"), "duplicate basis name '" + e.name + "'");
    e.bidegree = {get_parity(member(arr[i], "internal", p), join_path(p, "internal")),
                  get_int(member(arr[i], "external", p), join_path(p, "external"))};
    e.in_f0 = arr[i].contains("f0") && get_bool(arr[i]["f0"], join_path(p, "f0"));
    e.in_f1 = !arr[i].contains("f1") || get_bool(arr[i]["f1"], join_path(p, "f1"));
    basis.push_back(e);
  }
  FilteredCoalgebra<K> F(basis);
  if (const json* cp = optional_member(j, "coproduct")) {
    const auto pp = join_path(path, "coproduct");
    for (std::size_t i = 0; i < get_array(*cp, pp).size(); ++i) {
      const auto p = join_path(pp, i);
      allow_keys((*cp)[i], {"of", "left", "right", "coeff"}, p);
      auto name = [&](const char* key) {
        auto n = get_string(member((*cp)[i], key, p), join_path(p, key));
        auto x = F.find(n);
        if (!x) unresolved(join_path(p, key), "unknown coalgebra element '" + n + "'");
        return *x;
      };
      int x = name("of"), l = name("left"), r = name("right");
      F.add_coproduct(x, l, r, get_scalar<K>(member((*cp)[i], "coeff", p), join_path(p, "coeff")));
    }
  }
  return F;
}

template <Field K>
BaseAlgebra<K> parse_base(const json& j, const std::string& path, std::vector<BaseGenerator>& gens) {
  if (!j.is_object()) schema(path, "expected an object");
  if (j.contains("generators")) {
    allow_keys(j, {"generators"}, path);
    const auto gp = join_path(path, "generators");
    std::map<std::string, std::size_t> seen;
    const auto& arr = get_array(j["generators"], gp);
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const auto p = join_path(gp, i);
      allow_keys(arr[i], {"name", "parity", "nilpotency"}, p);
      BaseGenerator g;
      g.name = get_string(member(arr[i], "name", p), join_path(p, "name"));
      if (g.name.empty() || g.name.find_first_of("*^") != std::string::npos)
        schema(join_path(p, "name"), "generator names must be nonempty without '*' or '^'");
      if (!seen.emplace(g.name, i).second) schema(join_path(p, "name"), "duplicate generator name '" + g.name + "'");
      g.parity = get_parity(member(arr[i], "parity", p), join_path(p, "parity"));
      g.nilpotency = get_int(member(arr[i], "nilpotency", p), join_path(p, "nilpotency"));
      if (g.nilpotency < 2) schema(join_path(p, "nilpotency"), "nilpotency must be >= 2");
      gens.push_back(g);
    }
    if (gens.empty()) schema(gp, "at least one generator is required");
    return monomial_base<K>(gens);
  }
  allow_keys(j, {"basis", "products"}, path);
  auto basis = parse_basis(member(j, "basis", path), join_path(path, "basis"));
  BaseAlgebra<K> S(basis);
  if (const json* pr = optional_member(j, "products")) {
    const auto pp = join_path(path, "products");
    std::set<std::pair<int, int>> seen;
    for (std::size_t i = 0; i < get_array(*pr, pp).size(); ++i) {
      const auto p = join_path(pp, i);
      allow_keys((*pr)[i], {"left", "right", "value"}, p);
      auto idx = [&](const std::string& n, const std::string& where) {
        auto x = S.m().find(n);
        if (!x) unresolved(where, "unknown base element '" + n + "'");
        return *x;
      };
      int l = idx(get_string(member((*pr)[i], "left", p), join_path(p, "left")), join_path(p, "left"));
      int r = idx(get_string(member((*pr)[i], "right", p), join_path(p, "right")), join_path(p, "right"));
      if (!seen.emplace(l, r).second) schema(p, "duplicate product entry");
      const auto vp = join_path(p, "value");
      const auto& val = member((*pr)[i], "value", p);
      if (!val.is_object()) schema(vp, "expected an object {name: scalar}");
      for (const auto& [n, c] : val.items()) S.add_product(l, r, idx(n, join_path(vp, n)), get_scalar<K>(c, join_path(vp, n)));
    }
  }
  return S;
}

inline std::string line_col(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

}  // namespace io_detail

inline json parse_json_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::string msg = e.what();
    auto semi = msg.find("; ");
    if (semi != std::string::npos) msg = msg.substr(semi + 2);
    // byte is one past the offending character
    throw DocumentError(DocumentError::Kind::syntax, io_detail::line_col(text, e.byte == 0 ? 0 : e.byte - 1), msg);
  }
}

/// The "field" entry of a document, if any, without building the document.
inline std::optional<FieldConfig> peek_field(const json& j) {
  if (!j.is_object() || !j.contains("field")) return std::nullopt;
  try {
    return FieldConfig::parse(io_detail::get_string(j["field"], "/field"));
  } catch (const std::invalid_argument& e) {
    io_detail::schema("/field", e.what());
  }
}

template <Field K>
ProblemDocument<K> parse_document_json(const json& j) {
  using namespace io_detail;
  if (!j.is_object()) schema("", "a document is a JSON object");
  allow_keys(j, {"kind", "field", "caps", "basis", "flavor", "structure", "cochains", "mode", "gamma1", "beta1",
                 "coalgebra", "alpha", "a", "b", "base"},
             "");
  ProblemDocument<K> doc;
  if (const json* k = optional_member(j, "kind")) {
    auto n = get_string(*k, "/kind");
    auto it = document_kinds().find(n);
    if (it == document_kinds().end()) schema("/kind", "unknown document kind '" + n + "'");
    doc.kind = it->second;
  }
  doc.field = peek_field(j);
  if (const json* c = optional_member(j, "caps")) {
    allow_keys(*c, {"arity", "order"}, "/caps");
    if (c->contains("arity")) {
      doc.arity_cap = get_int((*c)["arity"], "/caps/arity");
      if (*doc.arity_cap < 1) schema("/caps/arity", "arity cap must be >= 1");
    }
    if (c->contains("order")) {
      doc.order = get_int((*c)["order"], "/caps/order");
      if (*doc.order < 1) schema("/caps/order", "order must be >= 1");
    }
  }
  doc.space = make_space(parse_basis(member(j, "basis", ""), "/basis"));
  const auto& sp = doc.space;

  if (const json* f = optional_member(j, "flavor")) {
    auto n = get_string(*f, "/flavor");
    if (n == "tensor") doc.flavor = Flavor::tensor;
    else if (n == "exterior") doc.flavor = Flavor::exterior;
    else schema("/flavor", "expected \"tensor\" or \"exterior\"");
  }
  const bool needs_structure = doc.kind != DocumentKind::space;
  if (needs_structure && !doc.flavor) schema("/flavor", "required field is missing");
  auto require_flavor = [&](const char* key) {
    if (!doc.flavor) schema(std::string("/") + key, "requires \"flavor\"");
    return *doc.flavor;
  };
  auto only_for = [&](const char* key, std::initializer_list<DocumentKind> kinds) {
    if (!j.contains(key)) return false;
    for (auto k : kinds)
      if (k == doc.kind) return true;
    schema(std::string("/") + key, "not allowed in a " + to_string(doc.kind) + " document");
  };

  if (j.contains("structure")) {
    Flavor f = require_flavor("structure");
    doc.structure = parse_family<K>(j["structure"], sp, f, "/structure", [](int k) { return std::optional<Parity>(Parity(k)); });
  } else if (needs_structure) {
    schema("/structure", "required field is missing");
  } else if (doc.flavor) {
    doc.structure = StructureMap<K>(sp, *doc.flavor);
  }
  if (const json* c = optional_member(j, "cochains")) {
    Flavor f = require_flavor("cochains");
    if (!c->is_object()) schema("/cochains", "expected an object {name: cochain}");
    for (const auto& [n, v] : c->items()) doc.cochains.emplace(n, parse_cochain<K>(v, sp, f, "/cochains/" + n, std::nullopt));
  }

  if (only_for("mode", {DocumentKind::deformation})) {
    auto n = get_string(j["mode"], "/mode");
    if (n == "lie") doc.mode = DeformMode::lie;
    else if (n == "infinity") doc.mode = DeformMode::infinity;
    else if (n == "restricted") doc.mode = DeformMode::restricted;
    else schema("/mode", "expected \"lie\", \"infinity\" or \"restricted\"");
  }
  if (doc.kind == DocumentKind::deformation) {
    Flavor f = *doc.flavor;
    doc.gamma1 = CochainFamily<K>(sp, f);
    doc.beta1 = CochainFamily<K>(sp, f);
    // gamma_1 is odd in the good grading, beta_1 even; the restricted mode puts
    // internal parity q on phi_{1,q} and q-1 on psi_{1,q}
    auto gpar = [&](int k) -> std::optional<Parity> {
      return doc.mode == DeformMode::lie ? Parity(0) : Parity(k);
    };
    auto bpar = [&](int k) -> std::optional<Parity> {
      return doc.mode == DeformMode::lie ? Parity(1) : Parity(k + 1);
    };
    doc.gamma1 = parse_family<K>(member(j, "gamma1", ""), sp, f, "/gamma1", gpar);
    if (j.contains("beta1")) doc.beta1 = parse_family<K>(j["beta1"], sp, f, "/beta1", bpar);
  } else {
    only_for("gamma1", {DocumentKind::deformation});
    only_for("beta1", {DocumentKind::deformation});
  }

  only_for("coalgebra", {DocumentKind::massey});
  only_for("a", {DocumentKind::massey});
  only_for("b", {DocumentKind::massey});
  only_for("alpha", {DocumentKind::massey, DocumentKind::base});
  only_for("base", {DocumentKind::base});
  if (doc.kind == DocumentKind::massey) {
    Flavor f = *doc.flavor;
    doc.coalgebra = parse_coalgebra<K>(member(j, "coalgebra", ""), "/coalgebra", doc.coalgebra_source);
    const auto& F = *doc.coalgebra;
    auto known = [&](const std::string& n) { return F.find(n).has_value(); };
    // alpha(x) has good parity |x| + 1; a(x) and b(x) the parity of alpha(x) and mu(alpha⊗alpha)Delta x
    auto par = [&](Parity shift) {
      return [&F, shift](const std::string& n, int k) -> std::optional<Parity> {
        return F.good_parity(F.index(n)) + shift + Parity(k - 1);
      };
    };
    doc.alpha = parse_alpha<K>(member(j, "alpha", ""), sp, f, "/alpha", known, par(Parity(1)));
    if (j.contains("a")) doc.a = parse_alpha<K>(j["a"], sp, f, "/a", known, par(Parity(1)));
    if (j.contains("b")) doc.b = parse_alpha<K>(j["b"], sp, f, "/b", known, par(Parity(0)));
  }
  if (doc.kind == DocumentKind::base) {
    Flavor f = *doc.flavor;
    doc.base = parse_base<K>(member(j, "base", ""), "/base", doc.base_generators);
    const auto& S = *doc.base;
    auto known = [&](const std::string& n) { return S.m().find(n).has_value(); };
    // alpha(m_i) has good parity |m_i| + 1
    auto par = [&S](const std::string& n, int k) -> std::optional<Parity> {
      return S.parity(S.index(n)) + Parity(1) + Parity(k - 1);
    };
    doc.alpha = parse_alpha<K>(member(j, "alpha", ""), sp, f, "/alpha", known, par);
  }
  return doc;
}

template <Field K>
ProblemDocument<K> parse_document(const std::string& text) {
  return parse_document_json<K>(parse_json_text(text));
}

// ---- serialization ----

template <Field K>
json to_json(const Cochain<K>& c) {
  const auto& sp = *c.space();
  json table = json::array();
  for (const auto& [args, v] : c.table()) {
    json a = json::array(), val = json::object();
    for (int x : args) a.push_back(sp.name(x));
    for (const auto& [o, x] : v) val[sp.name(o)] = x.str();
    table.push_back({{"args", a}, {"value", val}});
  }
  return {{"arity", c.arity()}, {"parity", c.parity().value()}, {"table", table}};
}

template <Field K>
json to_json(const CochainFamily<K>& f) {
  json out = json::array();
  for (const auto& [k, c] : f.components()) out.push_back(to_json(c));
  return out;
}

template <Field K>
json to_json(const AlphaMap<K>& a) {
  json out = json::object();
  for (const auto& [n, f] : a) out[n] = to_json(f);
  return out;
}

template <Field K>
json to_json(const SparseVec<K>& v, const GradedSpace& sp) {
  json out = json::object();
  for (const auto& [i, c] : v) out[sp.name(i)] = c.str();
  return out;
}

inline json basis_json(const GradedSpace& sp) {
  json out = json::array();
  for (const auto& e : sp.basis()) out.push_back({{"name", e.name}, {"parity", e.parity.value()}});
  return out;
}

template <Field K>
json serialize_document(const ProblemDocument<K>& doc) {
  json j;
  j["kind"] = to_string(doc.kind);
  if (doc.field) j["field"] = doc.field->str();
  if (doc.arity_cap) j["caps"]["arity"] = *doc.arity_cap;
  if (doc.order) j["caps"]["order"] = *doc.order;
  j["basis"] = basis_json(*doc.space);
  if (doc.flavor) {
    j["flavor"] = to_string(*doc.flavor);
    if (doc.kind != DocumentKind::space || !doc.structure.components().empty()) j["structure"] = to_json(doc.structure);
  }
  if (!doc.cochains.empty()) {
    json c = json::object();
    for (const auto& [n, x] : doc.cochains) c[n] = to_json(x);
    j["cochains"] = c;
  }
  if (doc.kind == DocumentKind::deformation) {
    j["mode"] = to_string(doc.mode);
    j["gamma1"] = to_json(doc.gamma1);
    if (!doc.beta1.components().empty()) j["beta1"] = to_json(doc.beta1);
  }
  if (doc.kind == DocumentKind::massey) {
    const auto& src = doc.coalgebra_source;
    if (!src.builtin.empty()) {
      j["coalgebra"] = {{"builtin", src.builtin}, {"N", src.N}};
      if (src.builtin == "restricted") j["coalgebra"]["Q"] = src.Q;
    } else {
      const auto& F = *doc.coalgebra;
      json b = json::array(), cp = json::array();
      for (const auto& e : F.basis())
        b.push_back({{"name", e.name}, {"internal", e.bidegree.internal.value()}, {"external", e.bidegree.external},
                     {"f0", e.in_f0}, {"f1", e.in_f1}});
      for (int x = 0; x < F.dim(); ++x)
        for (const auto& [uv, c] : F.coproduct(x))
          cp.push_back({{"of", F.name(x)}, {"left", F.name(uv.first)}, {"right", F.name(uv.second)}, {"coeff", c.str()}});
      j["coalgebra"] = {{"basis", b}, {"coproduct", cp}};
    }
    j["alpha"] = to_json(doc.alpha);
    if (doc.a) j["a"] = to_json(*doc.a);
    if (doc.b) j["b"] = to_json(*doc.b);
  }
  if (doc.kind == DocumentKind::base) {
    const auto& S = *doc.base;
    if (!doc.base_generators.empty()) {
      json g = json::array();
      for (const auto& x : doc.base_generators)
        g.push_back({{"name", x.name}, {"parity", x.parity.value()}, {"nilpotency", x.nilpotency}});
      j["base"] = {{"generators", g}};
    } else {
      json pr = json::array();
      for (const auto& [ij, v] : S.constants())
        if (!v.empty())
          pr.push_back({{"left", S.name(ij.first)}, {"right", S.name(ij.second)}, {"value", to_json(v, S.m())}});
      j["base"] = {{"basis", basis_json(S.m())}, {"products", pr}};
    }
    j["alpha"] = to_json(doc.alpha);
  }
  return j;
}

template <Field K>
std::string serialize_document_text(const ProblemDocument<K>& doc) {
  return serialize_document(doc).dump(2) + "\n";
}

/// Structural equality of two documents (zero components ignored).
template <Field K>
bool same_document(const ProblemDocument<K>& x, const ProblemDocument<K>& y) {
  auto same_coalgebra = [](const FilteredCoalgebra<K>& a, const FilteredCoalgebra<K>& b) {
    if (a.dim() != b.dim()) return false;
    for (int i = 0; i < a.dim(); ++i) {
      const auto &p = a.element(i), &q = b.element(i);
      if (p.name != q.name || p.bidegree != q.bidegree || p.in_f0 != q.in_f0 || p.in_f1 != q.in_f1) return false;
      if (a.coproduct(i) != b.coproduct(i)) return false;
    }
    return true;
  };
  auto same_base = [](const BaseAlgebra<K>& a, const BaseAlgebra<K>& b) {
    if (!(a.m() == b.m())) return false;
    auto strip = [](const BaseAlgebra<K>& s) {
      std::map<std::pair<int, int>, SparseVec<K>> out;
      for (const auto& [k, v] : s.constants())
        if (!v.empty()) out.emplace(k, v);
      return out;
    };
    return strip(a) == strip(b);
  };
  auto opt_eq = [](const auto& p, const auto& q, auto eq) { return p.has_value() == q.has_value() && (!p || eq(*p, *q)); };
  auto eq = [](const auto& p, const auto& q) { return p == q; };
  return x.kind == y.kind && x.field == y.field && x.arity_cap == y.arity_cap && x.order == y.order &&
         *x.space == *y.space && x.flavor == y.flavor && x.structure == y.structure && x.cochains == y.cochains &&
         (x.kind != DocumentKind::deformation ||
          (x.mode == y.mode && x.gamma1 == y.gamma1 && x.beta1 == y.beta1)) &&
         opt_eq(x.coalgebra, y.coalgebra, same_coalgebra) && x.coalgebra_source == y.coalgebra_source &&
         x.alpha == y.alpha && opt_eq(x.a, y.a, eq) && opt_eq(x.b, y.b, eq) && opt_eq(x.base, y.base, same_base);
}

}  // namespace infalg
