#include <gtest/gtest.h>

#include "support.hpp"

using namespace beliefc;

namespace {

Runtime fresh() { return Runtime(compile(testsupport::maptask_spec(), "fred")); }

std::string run(const std::string& script) {
  auto rt = fresh();
  return rt.run_script(parse_uql(script)).text;
}

}  // namespace

TEST(UqlParse, StatementKinds) {
  auto s = parse_uql("# comment\nupdate obj(mapped(swamp_1))\nquery ~rmb(vivid(section_1))\nexpect bel(mapped(section_1)) out\ndump\n");
  ASSERT_EQ(s.size(), 4u);
  EXPECT_EQ(s[0].kind, UqlStatement::Kind::Update);
  EXPECT_EQ(s[1].kind, UqlStatement::Kind::Query);
  EXPECT_FALSE(s[1].literal.positive);
  EXPECT_EQ(s[1].literal.prefix, Prefix::Rmb);
  EXPECT_EQ(s[2].kind, UqlStatement::Kind::Expect);
  EXPECT_FALSE(s[2].expect_holds);
  EXPECT_EQ(s[3].kind, UqlStatement::Kind::Dump);
  EXPECT_EQ(s[1].line, 3);
}

TEST(UqlParse, QuantifiersAndVariablesAreRejected) {
  for (const char* bad : {"update forall X:landmark . obj(mapped(X))", "update obj(mapped(X:landmark))"}) {
    try {
      parse_uql(bad);
      FAIL() << bad;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), "QuantifiedUpdate") << bad;
    }
  }
}

TEST(UqlParse, NestedModalitiesAreRejected) {
  EXPECT_THROW(parse_uql("update bel(rmb(mapped(swamp_1)))"), Error);
  EXPECT_THROW(parse_uql("update mapped(swamp_1)"), Error);
}

TEST(Update, PremiseMakesSwampVivid) {
  auto rt = fresh();
  rt.apply_update(testsupport::lit("obj(mapped(swamp_1))"));
  auto a = rt.answer_query(testsupport::lit("obj(vivid(swamp_1))"));
  EXPECT_EQ(a.kind, QueryAnswer::Kind::Yes);
  EXPECT_EQ(a.support, "{}");
}

TEST(Update, RepeatedPremiseIsIdempotent) {
  auto rt = fresh();
  rt.apply_update(testsupport::lit("obj(mapped(swamp_1))"));
  std::string before = rt.atms().dump();
  auto stats = rt.apply_update(testsupport::lit("obj(mapped(swamp_1))"));
  EXPECT_EQ(stats.firings, 0);
  EXPECT_EQ(rt.atms().dump(), before);
}

TEST(Update, IllSortedLiteralIsRejected) {
  auto rt = fresh();
  EXPECT_THROW(rt.apply_update(testsupport::lit("obj(vivid(doris))")), Error);
  EXPECT_THROW(rt.apply_update(testsupport::lit("obj(mapped(atlantis))")), Error);
  EXPECT_NE(run("update obj(vivid(doris))\n").find("error IllSortedLiteral"), std::string::npos);
}

TEST(Update, NegativeUpdateGetsTimestamp) {
  auto rt = fresh();
  rt.apply_update(testsupport::lit("~rmb(vivid(section_1))"));
  auto a = rt.answer_query(testsupport::lit("~rmb(vivid(section_1))"));
  EXPECT_EQ(a.kind, QueryAnswer::Kind::Yes);
  EXPECT_EQ(a.support, "{ts_1}");
}

TEST(Query, NeverMentionedIsNo) {
  auto rt = fresh();
  EXPECT_EQ(Runtime::render(rt.answer_query(testsupport::lit("obj(vivid(swamp_1))"))), "no");
}

TEST(Query, IsSideEffectFree) {
  auto rt = fresh();
  rt.apply_update(testsupport::lit("obj(say(doris, assert, desc(section_1, left_of, palm_beach_1)))"));
  std::string before = rt.atms().dump();
  auto trace_before = rt.engine().trace_log().size();
  for (const char* q : {"rmb(vivid(section_1))", "~bel(vivid(swamp_1))", "obj(vivid(palm_beach_1))", "bel(mapped(swamp_1))"})
    rt.answer_query(testsupport::lit(q));
  rt.run_script(parse_uql("query rmb(vivid(swamp_1))\nexpect bel(vivid(section_1)) holds\n"));
  EXPECT_EQ(rt.atms().dump(), before);
  EXPECT_EQ(rt.engine().trace_log().size(), trace_before);
}

TEST(Script, EmptyScriptEmptyTranscript) {
  auto rt = fresh();
  auto t = rt.run_script({});
  EXPECT_EQ(t.text, "");
  EXPECT_EQ(t.failures, 0);
}

TEST(Script, FailingExpectIsCountedAndExecutionContinues) {
  auto rt = fresh();
  auto t = rt.run_script(parse_uql("expect obj(vivid(swamp_1)) holds\nupdate obj(mapped(swamp_1))\nexpect obj(vivid(swamp_1)) holds\n"));
  EXPECT_EQ(t.failures, 1);
  EXPECT_EQ(t.expects, 2);
  EXPECT_NE(t.text.find("  FAIL (no)"), std::string::npos);
  EXPECT_NE(t.text.find("  PASS (yes {})"), std::string::npos);
}

TEST(Script, ScenarioMatchesGolden) {
  auto script = testsupport::read_file(testsupport::data_path("maptask_scenario.uql"));
  auto golden = testsupport::read_file(testsupport::golden_path("maptask_scenario.txt"));
  auto rt = fresh();
  auto t = rt.run_script(parse_uql(script));
  EXPECT_EQ(t.text, golden);
  EXPECT_EQ(t.failures, 0);
}

TEST(Script, ScenarioCheckpoints) {
  auto rt = fresh();
  using testsupport::lit;
  rt.apply_update(lit("obj(mapped(swamp_1))"));
  EXPECT_EQ(Runtime::render(rt.answer_query(lit("obj(vivid(swamp_1))"))), "yes {}");
  rt.apply_update(lit("obj(say(doris, assert, desc(section_1, left_of, palm_beach_1)))"));
  EXPECT_EQ(Runtime::render(rt.answer_query(lit("bel(vivid(section_1))"))), "yes {}");
  EXPECT_EQ(Runtime::render(rt.answer_query(lit("rmb(vivid(section_1))"))), "yes {def20_2}");
  rt.apply_update(lit("~rmb(vivid(section_1))"));
  EXPECT_EQ(rt.answer_query(lit("rmb(vivid(section_1))")).kind, QueryAnswer::Kind::No);
  EXPECT_EQ(rt.atms().holds(lit("rmb(mapped(palm_beach_1))")).status, HoldStatus::Retracted);
  rt.apply_update(lit("obj(say(doris, assert, desc(palm_beach_1, above, swamp_1)))"));
  EXPECT_EQ(rt.answer_query(lit("rmb(vivid(section_1))")).kind, QueryAnswer::Kind::Yes);
}

TEST(Script, ReplayIsByteIdentical) {
  auto script = testsupport::read_file(testsupport::data_path("maptask_scenario.uql"));
  EXPECT_EQ(run(script), run(script));
}
