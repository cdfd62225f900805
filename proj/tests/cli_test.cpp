#include <gtest/gtest.h>

#include "commands.hpp"
#include "test_util.hpp"

namespace galforms::cli {
namespace {

RunConfig config(std::uint32_t p, std::uint32_t s, std::uint32_t n) {
  RunConfig c;
  c.params = {p, s, n};
  return c;
}

Json parse(const CommandResult& r) { return Json::parse(r.output); }

TEST(CliForm, ConstantRankExample) {
  const auto r = guarded([] { return cmd_form(config(2, 1, 9), "v", 3); });
  ASSERT_EQ(r.exit_code, kExitOk) << r.diagnostics;
  const auto j = parse(r);
  EXPECT_EQ(j["rank"]["rank"], 6);
  EXPECT_EQ(j["rank"]["predicted"], 6);
  EXPECT_EQ(j["rank"]["branch"], "odd-constant");
  EXPECT_EQ(j["form"]["entries"].size(), 9u);
  EXPECT_EQ(j["form"]["provenance"]["i"], 3);
}

TEST(CliForm, ZeroAndErrors) {
  const auto zero = guarded([] { return cmd_form(config(2, 1, 4), "0", 1); });
  EXPECT_EQ(zero.exit_code, kExitOk);
  EXPECT_EQ(parse(zero)["rank"]["branch"], "zero-form");
  EXPECT_EQ(parse(zero)["rank"]["rank"], 0);
  EXPECT_EQ(guarded([] { return cmd_form(config(2, 1, 4), "v", 0); }).exit_code, kExitPrecondition);
  EXPECT_EQ(guarded([] { return cmd_form(config(2, 1, 4), "v^^", 1); }).exit_code, kExitParse);
  EXPECT_EQ(guarded([] { return cmd_form(config(4, 1, 4), "v", 1); }).exit_code, kExitPrecondition);
  EXPECT_EQ(guarded([] { return cmd_form(config(2, 1, 4), "[[1],[0]]", 1); }).exit_code, kExitParse);
}

TEST(CliForm, Plain) {
  auto c = config(2, 1, 3);
  c.plain = true;
  const auto r = cmd_form(c, "v", 1);
  EXPECT_EQ(r.output, "0 1 0\n1 0 0\n0 0 0\nrank 2\npredicted 2 odd-constant\n");
}

TEST(CliCensus, Examples) {
  const auto r7 = guarded([] { return cmd_census(config(2, 1, 7), "alt", {1, 2}); });
  ASSERT_EQ(r7.exit_code, kExitOk);
  EXPECT_EQ(parse(r7)["min_rank"], 4);

  const auto r9 = guarded([] { return cmd_census(config(2, 1, 9), "alt", {3}); });
  ASSERT_EQ(r9.exit_code, kExitOk);
  EXPECT_EQ(parse(r9)["ranks"].dump(), R"({"6":511})");

  auto c8 = config(2, 1, 8);
  c8.mode = "random";
  c8.seed = 1;
  c8.samples = 10000;
  const auto r8 = guarded([&] { return cmd_census(c8, "alt", {1, 2}); });
  ASSERT_EQ(r8.exit_code, kExitOk);
  EXPECT_GE(parse(r8)["min_rank"].get<int>(), 4);
  EXPECT_EQ(parse(r8)["inspected"], 10000);

  const auto bil = guarded([] { return cmd_census(config(2, 1, 4), "bil", {1, 2}); });
  ASSERT_EQ(bil.exit_code, kExitOk);
  EXPECT_EQ(parse(bil)["min_rank"], 3);
  EXPECT_EQ(parse(bil)["bound"], 3);
}

TEST(CliCensus, Errors) {
  auto c = config(2, 1, 7);
  c.budget = 100;
  EXPECT_EQ(guarded([&] { return cmd_census(c, "alt", {1, 2}); }).exit_code, kExitPrecondition);
  EXPECT_EQ(guarded([] { return cmd_census(config(2, 1, 7), "sym", {1}); }).exit_code, kExitParse);
  EXPECT_EQ(guarded([] { return cmd_census(config(2, 1, 7), "alt", {}); }).exit_code, kExitPrecondition);
  auto bad_mode = config(2, 1, 7);
  bad_mode.mode = "fast";
  EXPECT_EQ(guarded([&] { return cmd_census(bad_mode, "alt", {1}); }).exit_code, kExitParse);
}

TEST(CliCensus, Deterministic) {
  auto c = config(2, 1, 8);
  c.mode = "random";
  c.samples = 3000;
  c.seed = 99;
  const auto a = cmd_census(c, "alt", {1, 2});
  const auto b = cmd_census(c, "alt", {1, 2});
  c.workers = 4;
  const auto d = cmd_census(c, "alt", {1, 2});
  EXPECT_EQ(a.output, b.output);
  EXPECT_EQ(a.output, d.output);
}

TEST(CliVerify, SmallTowers) {
  for (auto params : {TowerParams{2, 1, 5}, TowerParams{2, 1, 4}, TowerParams{2, 2, 3}}) {
    const auto r = guarded([&] { return cmd_verify(config(params.p, params.s, params.n)); });
    EXPECT_EQ(r.exit_code, kExitOk) << r.output;
    const auto j = parse(r);
    EXPECT_TRUE(j["passed"].get<bool>());
    for (const auto& c : j["checks"]) EXPECT_TRUE(c["passed"].get<bool>()) << c["name"] << ": " << c["detail"];
  }
  const auto j4 = parse(cmd_verify(config(2, 1, 4)));
  bool saw_kernel = false;
  for (const auto& c : j4["checks"]) saw_kernel = saw_kernel || c["name"] == "phi-epimorphism";
  EXPECT_TRUE(saw_kernel);
}

TEST(CliVerify, DowngradesWithNotice) {
  auto c = config(2, 1, 6);
  c.budget = 100;
  const auto r = cmd_verify(c);
  EXPECT_EQ(r.exit_code, kExitOk) << r.output;
  EXPECT_NE(r.diagnostics.find("notice: rank-formula"), std::string::npos);
}

TEST(CliExport, OddBlocks) {
  const auto r = guarded([] { return cmd_export(config(2, 1, 5), {"bases"}); });
  ASSERT_EQ(r.exit_code, kExitOk);
  const auto j = parse(r);
  ASSERT_EQ(j["blocks"].size(), 2u);
  for (const auto& b : j["blocks"]) {
    ASSERT_EQ(b["matrices"].size(), 5u);
    for (const auto& m : b["matrices"]) {
      ASSERT_EQ(m.size(), 5u);
      for (std::size_t d = 0; d < 5; ++d) EXPECT_EQ(m[d][d].dump(), "[0]");
    }
  }
}

TEST(CliExport, EvenBlocks) {
  const auto j = parse(cmd_export(config(2, 1, 4), {"bases"}));
  ASSERT_EQ(j["blocks"].size(), 2u);
  EXPECT_EQ(j["blocks"][0]["kind"], "alt-B-involution");
  EXPECT_EQ(j["blocks"][0]["matrices"].size(), 2u);
  EXPECT_EQ(j["blocks"][1]["kind"], "alt-A");
  EXPECT_EQ(j["blocks"][1]["matrices"].size(), 4u);
}

TEST(CliExport, Errors) {
  EXPECT_EQ(guarded([] { return cmd_export(config(2, 1, 4), {}); }).exit_code, kExitPrecondition);
  EXPECT_EQ(guarded([] { return cmd_export(config(2, 1, 4), {"everything"}); }).exit_code, kExitParse);
}

TEST(CliExport, ImportRoundTrip) {
  for (auto params : {TowerParams{2, 1, 5}, TowerParams{2, 1, 6}, TowerParams{2, 2, 3}}) {
    const auto t = make_tower(params);
    const auto c = config(params.p, params.s, params.n);
    const auto blocks = build_export(t, c, {"bases", "witnesses"});
    const auto from_json = export_from_json(t, Json::parse(export_to_json(*t, blocks).dump()));
    const auto from_plain = export_from_plain(t, export_to_plain(*t, blocks));
    ASSERT_EQ(from_json.size(), blocks.size());
    ASSERT_EQ(from_plain.size(), blocks.size());
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      EXPECT_EQ(from_json[b].matrices, blocks[b].matrices);
      EXPECT_EQ(from_plain[b].matrices, blocks[b].matrices);
      EXPECT_EQ(from_plain[b].name, blocks[b].name);
      EXPECT_EQ(from_plain[b].kind, blocks[b].kind);
      EXPECT_EQ(from_plain[b].indices, blocks[b].indices);
      EXPECT_EQ(from_plain[b].ranks, blocks[b].ranks);
    }
  }
}

TEST(CliExport, WitnessesHaveTheirRank) {
  const auto t = make_tower({2, 1, 7});
  for (const auto& b : build_export(t, config(2, 1, 7), {"witnesses"})) {
    ASSERT_EQ(b.ranks.size(), b.matrices.size());
    for (std::size_t m = 0; m < b.matrices.size(); ++m) {
      EXPECT_TRUE(b.matrices[m].is_alternating());
      EXPECT_EQ(rank(b.matrices[m]).rank, b.ranks[m]);
    }
  }
}

TEST(CliExport, ImportRejectsOtherTower) {
  const auto t = make_tower({2, 1, 5});
  const auto text = export_to_plain(*t, build_export(t, config(2, 1, 5), {"bases"}));
  EXPECT_THROW(export_from_plain(make_tower({2, 1, 7}), text), ContextMismatch);
  EXPECT_THROW(export_from_plain(t, "block alt-A 1 1 A1\n"), ParseError);
}

TEST(CliDependence, MooreAndAnnihilator) {
  const auto m = guarded([] { return cmd_moore(config(2, 1, 3), "1;v;v+1"); });
  ASSERT_EQ(m.exit_code, kExitOk);
  EXPECT_TRUE(parse(m)["dependent_via_moore"].get<bool>());
  EXPECT_TRUE(parse(m)["dependent_via_elim"].get<bool>());
  const auto ind = parse(cmd_moore(config(2, 1, 2), "1;v"));
  EXPECT_FALSE(ind["dependent_via_moore"].get<bool>());
  EXPECT_EQ(ind["determinant"].dump(), "[[1],[0]]");

  const auto a = guarded([] { return cmd_annihilator(config(2, 1, 5), "v;v^2"); });
  ASSERT_EQ(a.exit_code, kExitOk);
  EXPECT_TRUE(parse(a)["kernel_equals_span"].get<bool>());
  EXPECT_EQ(parse(a)["degree"], 2);
  EXPECT_EQ(guarded([] { return cmd_annihilator(config(2, 1, 5), "v;v"); }).exit_code, kExitPrecondition);
  EXPECT_EQ(guarded([] { return cmd_moore(config(2, 1, 3), "1;1;1;1"); }).exit_code, kExitPrecondition);
}

}  // namespace
}  // namespace galforms::cli
