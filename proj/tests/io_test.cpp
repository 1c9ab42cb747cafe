#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "fixtures.hpp"
#include "infalg/io.hpp"

using namespace infalg;
using Q = Rational;
namespace fx = infalg::testing;

namespace {

std::string read_sample(const std::string& name) {
  std::ifstream in(std::string(INFALG_SAMPLES_DIR) + "/" + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

DocumentError error_of(const std::string& text) {
  try {
    parse_document<Q>(text);
  } catch (const DocumentError& e) {
    return e;
  }
  ADD_FAILURE() << "no error for: " << text;
  return DocumentError(DocumentError::Kind::schema, "", "");
}

void expect_round_trip(const std::string& text) {
  auto doc = parse_document<Q>(text);
  auto out = serialize_document_text(doc);
  auto again = parse_document<Q>(out);
  EXPECT_TRUE(same_document(doc, again)) << out;
  EXPECT_EQ(serialize_document_text(again), out);
}

}  // namespace

TEST(ParseDocument, MinimalSpace) {
  auto doc = parse_document<Q>(R"({"basis": [{"name": "x", "parity": 0}]})");
  EXPECT_EQ(doc.kind, DocumentKind::space);
  ASSERT_EQ(doc.space->dim(), 1);
  EXPECT_EQ(doc.space->name(0), "x");
  EXPECT_EQ(doc.space->parity(0), Parity(0));
}

TEST(ParseDocument, DualNumbersPassCheck) {
  auto doc = parse_document<Q>(read_sample("dual_numbers.json"));
  EXPECT_EQ(doc.structure, fx::dual_numbers<Q>());
  EXPECT_TRUE(check_structure(doc.structure, 4).passed);
}

TEST(ParseDocument, DuplicateBasisName) {
  auto e = error_of(R"({"basis": [{"name": "x", "parity": 0}, {"name": "x", "parity": 1}]})");
  EXPECT_EQ(e.kind(), DocumentError::Kind::schema);
  EXPECT_EQ(e.where(), "/basis/1/name");
}

TEST(ParseDocument, SyntaxErrorHasLineAndColumn) {
  auto e = error_of("{\n  \"basis\": [\n    {\"name\": \"x\" \"parity\": 0}\n  ]\n}");
  EXPECT_EQ(e.kind(), DocumentError::Kind::syntax);
  EXPECT_EQ(e.where(), "line 3, column 25");  // last character of the unexpected token
}

TEST(ParseDocument, UnresolvedReference) {
  auto e = error_of(R"({"kind": "structure", "flavor": "tensor", "basis": [{"name": "x", "parity": 0}],
    "structure": [{"arity": 2, "table": [{"args": ["x", "y"], "value": {"x": "1"}}]}]})");
  EXPECT_EQ(e.kind(), DocumentError::Kind::reference);
  EXPECT_EQ(e.where(), "/structure/0/table/0/args/1");
}

TEST(ParseDocument, SchemaViolations) {
  EXPECT_EQ(error_of(R"({"basis": [{"name": "x", "parity": 2}]})").where(), "/basis/0/parity");
  EXPECT_EQ(error_of(R"({"basis": [{"name": "x", "parity": 0}], "extra": 1})").where(), "/extra");
  EXPECT_EQ(error_of(R"({"kind": "structure", "basis": []})").where(), "/flavor");
  EXPECT_EQ(error_of(R"({"kind": "nope", "basis": []})").where(), "/kind");
  EXPECT_EQ(error_of(R"({"field": "fp:4", "basis": []})").where(), "/field");
  // floats are ambiguous scalars
  EXPECT_EQ(error_of(R"({"flavor": "tensor", "basis": [{"name": "x", "parity": 0}],
    "cochains": {"c": {"arity": 1, "table": [{"args": ["x"], "value": {"x": 0.5}}]}}})")
                .where(),
            "/cochains/c/table/0/value/x");
  // output of the wrong parity
  EXPECT_EQ(error_of(R"({"flavor": "tensor", "basis": [{"name": "x", "parity": 0}, {"name": "u", "parity": 1}],
    "cochains": {"c": {"arity": 1, "table": [{"args": ["x"], "value": {"x": "1", "u": "1"}}]}}})")
                .where(),
            "/cochains/c/table/0/value");
}

TEST(ParseDocument, ExteriorCanonicalization) {
  const std::string head = R"({"flavor": "exterior", "basis": [{"name": "x", "parity": 0}, {"name": "y", "parity": 0}, {"name": "u", "parity": 1}], "cochains": {"c": )";
  // [y,x] = -x is stored as [x,y] = x
  auto doc = parse_document<Q>(head + R"({"arity": 2, "table": [{"args": ["y", "x"], "value": {"x": "-1"}}]}}})");
  const auto& c = doc.cochains.at("c");
  EXPECT_EQ(c.eval_basis({0, 1}), (SparseVec<Q>{{0, Q(1)}}));
  // consistent duplicates are accepted
  auto ok = parse_document<Q>(head + R"({"arity": 2, "table": [{"args": ["y", "x"], "value": {"x": "-1"}},
    {"args": ["x", "y"], "value": {"x": "1"}}]}}})");
  EXPECT_EQ(ok.cochains.at("c"), c);
  // odd elements commute in the exterior power
  auto odd = parse_document<Q>(head + R"({"arity": 2, "table": [{"args": ["u", "x"], "value": {"u": "3"}},
    {"args": ["x", "u"], "value": {"u": "-3"}}]}}})");
  EXPECT_EQ(odd.cochains.at("c").eval_basis({0, 2}), (SparseVec<Q>{{2, Q(-3)}}));
  auto e = error_of(head + R"({"arity": 2, "table": [{"args": ["y", "x"], "value": {"x": "-1"}},
    {"args": ["x", "y"], "value": {"x": "2"}}]}}})");
  EXPECT_EQ(e.where(), "/cochains/c/table/1");
  EXPECT_EQ(error_of(head + R"({"arity": 2, "table": [{"args": ["x", "x"], "value": {"x": "1"}}]}}})").where(),
            "/cochains/c/table/0");
  // u∧u survives: u is odd
  auto uu = parse_document<Q>(head + R"({"arity": 2, "table": [{"args": ["u", "u"], "value": {"x": "1"}}]}}})");
  EXPECT_EQ(uu.cochains.at("c").eval_basis({2, 2}), (SparseVec<Q>{{0, Q(1)}}));
}

TEST(ParseDocument, TensorDuplicates) {
  const std::string head = R"({"flavor": "tensor", "basis": [{"name": "x", "parity": 0}], "cochains": {"c": )";
  EXPECT_NO_THROW(parse_document<Q>(head + R"({"arity": 1, "table": [{"args": ["x"], "value": {"x": "1"}}, {"args": ["x"], "value": {"x": "1"}}]}}})"));
  EXPECT_EQ(error_of(head + R"({"arity": 1, "table": [{"args": ["x"], "value": {"x": "1"}}, {"args": ["x"], "value": {"x": "2"}}]}}})").where(),
            "/cochains/c/table/1");
}

TEST(ParseDocument, FieldAndCaps) {
  const std::string text = R"({"field": "fp:5", "caps": {"arity": 3, "order": 2}, "flavor": "tensor",
    "basis": [{"name": "x", "parity": 0}], "cochains": {"c": {"arity": 1, "table": [{"args": ["x"], "value": {"x": "1/3"}}]}}})";
  ModP::Scope scope(5);
  auto doc = parse_document<ModP>(text);
  EXPECT_EQ(doc.field->p, 5u);
  EXPECT_EQ(*doc.arity_cap, 3);
  EXPECT_EQ(*doc.order, 2);
  EXPECT_EQ(doc.cochains.at("c").eval_basis({0}).at(0), ModP(2));  // 1/3 = 2 mod 5
}

TEST(ParseDocument, MasseyDefaults) {
  auto doc = parse_document<Q>(read_sample("massey_abelian.json"));
  ASSERT_TRUE(doc.coalgebra);
  EXPECT_EQ(doc.coalgebra->dim(), 6);
  // empty families of alpha get the parity forced by the degree
  EXPECT_TRUE(alpha_degree_violations(*doc.coalgebra, doc.alpha).empty());
  auto e = error_of(R"({"kind": "massey", "flavor": "exterior", "basis": [], "structure": [],
    "coalgebra": {"builtin": "lie", "N": 1}, "alpha": {"e7": []}})");
  EXPECT_EQ(e.kind(), DocumentError::Kind::reference);
  EXPECT_EQ(e.where(), "/alpha/e7");
}

TEST(RoundTrip, Samples) {
  for (const char* s : {"lie2.json", "dual_numbers.json", "broken_jacobi.json", "deform_abelian.json",
                        "deform_obstructed.json", "massey_abelian.json", "base_dual.json", "bracket_pair.json"}) {
    SCOPED_TRACE(s);
    expect_round_trip(read_sample(s));
  }
}

TEST(RoundTrip, ExplicitTablesAndOptionalParts) {
  // explicit coalgebra with a and b
  expect_round_trip(R"({"kind": "massey", "flavor": "tensor", "field": "q", "caps": {"arity": 3},
    "basis": [{"name": "v", "parity": 1}], "structure": [{"arity": 1, "parity": 1}],
    "coalgebra": {"basis": [{"name": "p", "internal": 0, "external": 0, "f0": true},
                            {"name": "s", "internal": 0, "external": 0, "f1": false}],
                  "coproduct": [{"of": "s", "left": "p", "right": "p", "coeff": "-1/2"}]},
    "alpha": {"p": [{"arity": 1, "table": [{"args": ["v"], "value": {"v": "7/3"}}]}]},
    "a": {"p": []}, "b": {"s": []}})");
  // explicit base table
  expect_round_trip(R"({"kind": "base", "flavor": "tensor", "basis": [{"name": "v", "parity": 0}], "structure": [],
    "base": {"basis": [{"name": "t", "parity": 0}, {"name": "s", "parity": 0}],
             "products": [{"left": "t", "right": "t", "value": {"s": "1"}}]},
    "alpha": {"t": [{"arity": 2, "table": [{"args": ["v", "v"], "value": {"v": "1"}}]}]}})");
  // restricted deformation with beta
  expect_round_trip(R"({"kind": "deformation", "mode": "restricted", "flavor": "exterior",
    "basis": [{"name": "x", "parity": 0}, {"name": "u", "parity": 1}], "structure": [],
    "gamma1": [{"arity": 2, "table": [{"args": ["u", "u"], "value": {"x": "1"}}]}],
    "beta1": [{"arity": 1, "table": [{"args": ["x"], "value": {"x": "1"}}]}]})");
  expect_round_trip(R"({"kind": "massey", "flavor": "exterior", "basis": [], "structure": [],
    "coalgebra": {"builtin": "restricted", "N": 2, "Q": 3}, "alpha": {}})");
}

TEST(RoundTrip, RandomStructures) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    auto sp = fx::space_with({0, 1, 1});
    Flavor f = trial % 2 ? Flavor::exterior : Flavor::tensor;
    ProblemDocument<Q> doc;
    doc.kind = DocumentKind::structure;
    doc.space = sp;
    doc.flavor = f;
    doc.structure = StructureMap<Q>(sp, f);
    for (int k = 1; k <= 3; ++k) doc.structure.set(fx::random_cochain<Q>(rng, sp, f, k, Parity(k), 0.5, 3));
    auto text = serialize_document_text(doc);
    auto back = parse_document<Q>(text);
    EXPECT_TRUE(same_document(doc, back)) << text;
  }
}
