#include <gtest/gtest.h>

#include <algorithm>

#include "support.hpp"

using namespace beliefc;

namespace {

const char* kSignature = R"(
sort agent, time, mood, relation
sort map_item
subsort landmark map_item
subsort route_section map_item
pred vivid(map_item)
pred mapped(map_item)
pred desc(map_item, relation, map_item)
pred p()
pred q()
const fred, doris, a, b: agent
const now: time
const left_of: relation
const swamp_1: landmark
const section_1: route_section
agents fred doris
space 5, 6, 20
order 5 < 20
)";

Spec with_axioms(const std::string& axioms) { return parse_spec(std::string(kSignature) + axioms); }

std::vector<Violation::Kind> kinds(const std::vector<Violation>& vs) {
  std::vector<Violation::Kind> out;
  for (const auto& v : vs) out.push_back(v.kind);
  return out;
}

bool has_kind(const std::vector<Violation>& vs, Violation::Kind k) {
  return std::any_of(vs.begin(), vs.end(), [&](const Violation& v) { return v.kind == k; });
}

}  // namespace

TEST(ParseSpec, MapTaskAxiomsInLabelOrderOfDeclaration) {
  auto spec = testsupport::maptask_spec();
  ASSERT_EQ(spec.axioms.size(), 6u);
  EXPECT_EQ(spec.axioms[0].label, "mpcv");
  EXPECT_EQ(spec.axioms[5].label, "igknow");
  EXPECT_EQ(spec.signature.self_agent, "fred");
  EXPECT_EQ(spec.signature.partner_agent, "doris");
}

TEST(ParseSpec, SingleAxiomMatchesHandBuiltFormula) {
  auto spec = with_axioms("axiom mpcv: forall X:map_item . mk(mapped(X) => vivid(X))\n");
  ASSERT_EQ(spec.axioms.size(), 1u);
  Term x = Term::var("X", "map_item");
  Formula expected = Formula::quantified(
      Formula::Kind::ForAll, "X", "map_item",
      Formula::mk(Formula::binary(Formula::Kind::Implies, Formula::atomic(Atom{"mapped", {x}}),
                                  Formula::atomic(Atom{"vivid", {x}}))));
  EXPECT_EQ(render(spec.axioms[0].formula), render(expected));
}

TEST(ParseSpec, SignatureOnlyDocumentHasNoAxioms) { EXPECT_TRUE(with_axioms("").axioms.empty()); }

TEST(ParseSpec, InlineAnnotationsAreUniversallyClosed) {
  auto spec = with_axioms("axiom share: forall W:landmark . mdef[20](bel(X:agent, Z:time, bel(Y:agent, Z, mapped(W))))\n");
  ASSERT_EQ(spec.axioms.size(), 1u);
  EXPECT_TRUE(free_vars(spec.axioms[0].formula).empty());
  EXPECT_TRUE(sort_check(spec).empty());
  EXPECT_TRUE(check_restrictions(spec).empty());
}

TEST(ParseSpec, SyntaxErrorsCarryPosition) {
  try {
    with_axioms("axiom bad: mk(mapped(swamp_1) =>)\n");
    FAIL() << "expected a syntax error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), "SyntaxError");
    EXPECT_NE(std::string(e.what()).find(':'), std::string::npos);
  }
}

TEST(ParseSpec, DuplicateDeclarationsAreRejected) {
  try {
    with_axioms("pred vivid(map_item)\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), "DuplicateDeclaration");
  }
}

TEST(ParseSpec, CyclicSpaceOrderIsRejected) {
  EXPECT_THROW(with_axioms("order 20 < 5\n"), Error);
}

TEST(ParseSpec, SpaceOrderDirection) {
  auto spec = with_axioms("");
  EXPECT_TRUE(spec.space_order.stronger_than(20, 5));
  EXPECT_FALSE(spec.space_order.stronger_than(5, 20));
  EXPECT_FALSE(spec.space_order.comparable(5, 6));
}

TEST(ParseSpec, RenderRoundTripIsStable) {
  auto first = testsupport::maptask_spec();
  std::string once = render_spec(first);
  auto second = parse_spec(once);
  EXPECT_EQ(render_spec(second), once);
  ASSERT_EQ(second.axioms.size(), first.axioms.size());
  for (std::size_t i = 0; i < first.axioms.size(); ++i)
    EXPECT_EQ(render(second.axioms[i].formula), render(first.axioms[i].formula));
}

TEST(ParseSpec, OuterExistentialIsSkolemized) {
  auto spec = with_axioms("axiom some: exists X:landmark . mk(mapped(X))\n");
  ASSERT_EQ(spec.axioms.size(), 1u);
  EXPECT_EQ(render(spec.axioms[0].formula).find("exists"), std::string::npos);
  EXPECT_TRUE(spec.signature.sort_of(Term::constant("sk_some_X")).has_value());
}

TEST(Restrictions, MapTaskPasses) {
  auto spec = testsupport::maptask_spec();
  EXPECT_TRUE(check_restrictions(spec).empty());
  EXPECT_TRUE(sort_check(spec).empty());
}

TEST(Restrictions, CrossAgentImplication) {
  auto vs = check_restrictions(with_axioms("axiom x: mk(bel(a, now, p) => bel(b, now, q))\n"));
  ASSERT_EQ(vs.size(), 1u);
  EXPECT_EQ(vs[0].kind, Violation::Kind::CrossAgentBeliefImplication);
  EXPECT_EQ(vs[0].axiom_label, "x");
}

TEST(Restrictions, SameContentAcrossAgentsIsAllowed) {
  EXPECT_TRUE(check_restrictions(with_axioms("axiom x: mk(bel(a, now, p) => bel(b, now, p))\n")).empty());
}

TEST(Restrictions, DefInsideModal) {
  auto vs = check_restrictions(with_axioms("axiom d: bel(a, now, def[5](p))\n"));
  EXPECT_EQ(kinds(vs), std::vector<Violation::Kind>{Violation::Kind::DefInsideModal});
}

TEST(Restrictions, ExistentialUnderUniversal) {
  auto vs = check_restrictions(with_axioms("axiom e: forall X:map_item . mk(mapped(X) => exists Y:landmark . desc(X, left_of, Y))\n"));
  EXPECT_TRUE(has_kind(vs, Violation::Kind::ExistentialUnderUniversal));
}

TEST(Restrictions, DiagnosticFormat) {
  auto vs = check_restrictions(with_axioms("axiom d: bel(a, now, def[5](p))\n"));
  ASSERT_FALSE(vs.empty());
  EXPECT_EQ(render(vs[0]).rfind("d:DefInsideModal:", 0), 0u);
}

TEST(Restrictions, OrderIndependent) {
  const std::string a = "axiom x: mk(bel(a, now, p) => bel(b, now, q))\n";
  const std::string d = "axiom d: bel(a, now, def[5](p))\n";
  auto one = check_restrictions(with_axioms(a + d));
  auto two = check_restrictions(with_axioms(d + a));
  auto key = [](std::vector<Violation> vs) {
    std::vector<std::string> out;
    for (const auto& v : vs) out.push_back(render(v));
    std::sort(out.begin(), out.end());
    return out;
  };
  EXPECT_EQ(key(one), key(two));
}

TEST(SortCheck, SubsortArgumentIsAccepted) {
  EXPECT_TRUE(sort_check(with_axioms("axiom m: mk(mapped(swamp_1))\n")).empty());
}

TEST(SortCheck, ArityMismatch) {
  auto vs = sort_check(with_axioms("axiom m: mk(desc(section_1, left_of))\n"));
  EXPECT_TRUE(has_kind(vs, Violation::Kind::ArityMismatch));
}

TEST(SortCheck, WrongSortIsReported) {
  auto vs = sort_check(with_axioms("axiom m: mk(vivid(doris))\n"));
  EXPECT_TRUE(has_kind(vs, Violation::Kind::UnsortedVariable));
}

TEST(SortCheck, UndeclaredSpace) {
  auto vs = sort_check(with_axioms("axiom m: def[7](mapped(swamp_1))\n"));
  EXPECT_FALSE(vs.empty());
}
