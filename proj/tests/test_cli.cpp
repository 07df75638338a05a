#include "rumid/cli.hpp"
#include "rumid/json_io.hpp"

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code = 0;
  std::string out, err;
  json doc() const { return json::parse(out); }
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  Result r;
  r.code = rumid::cli::run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("rumid_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "_" +
                                        ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string file(const std::string& name, const std::string& text) {
    const fs::path p = dir_ / name;
    std::ofstream(p) << text;
    return p.string();
  }
  std::string file(const std::string& name, const char* text) { return file(name, std::string(text)); }
  std::string file(const std::string& name, const json& j) { return file(name, j.dump()); }

  fs::path dir_;
};

const json kVoter = json::parse(R"({"alternatives": ["a","b","c","d"],
  "mass": {"abcd": "1/4", "badc": "1/4", "abdc": "3/8", "bacd": "1/8"}})");

}  // namespace

TEST_F(Cli, PhiRationalizeRoundTrip) {
  const Result rule = run({"phi", file("v.json", kVoter)});
  ASSERT_EQ(rule.code, rumid::cli::kExitOk) << rule.out;
  EXPECT_EQ(rule.doc()["probabilities"]["ab"]["a"], "5/8");
  const Result rat = run({"rationalize", file("rule.json", rule.out)});
  ASSERT_EQ(rat.code, 0);
  EXPECT_TRUE(rat.doc()["rationalizable"].get<bool>());
  const Result again = run({"phi", file("w.json", rat.doc()["witness"])});
  EXPECT_EQ(again.doc(), rule.doc());
}

TEST_F(Cli, EquivalenceOfAFileWithItself) {
  const std::string v = file("v.json", kVoter);
  const Result r = run({"equiv", v, v});
  ASSERT_EQ(r.code, 0);
  EXPECT_TRUE(r.doc()["equivalent"].get<bool>());
  json other = kVoter;
  other["mass"] = {{"abcd", "1"}};
  EXPECT_FALSE(run({"equiv", v, file("o.json", other)}).doc()["equivalent"].get<bool>());
}

TEST_F(Cli, VoterBoundsUnderBothMethods) {
  const std::string q = file("q.json", json{{"base", kVoter}, {"functional", {{"abdc", "1"}}}});
  for (const char* method : {"ryser", "simplex"}) {
    const Result r = run({"bounds", "--method", method, q});
    ASSERT_EQ(r.code, 0) << r.out;
    const json d = r.doc();
    EXPECT_EQ(d["min"], "1/4");
    EXPECT_EQ(d["max"], "5/8");
    EXPECT_EQ(d["argmax"]["mass"], json({{"abdc", "5/8"}, {"bacd", "3/8"}}));
    EXPECT_EQ(d["argmin"]["mass"], json({{"abcd", "3/8"}, {"badc", "3/8"}, {"abdc", "1/4"}}));
  }
  EXPECT_EQ(run({"bounds", "--method", "magic", q}).code, rumid::cli::kExitMalformed);
}

TEST_F(Cli, SwapProgressiveGolden) {
  const std::string rule = file("rule.json", run({"phi", file("v.json", kVoter)}).out);
  const Result r = run({"swap-progressive", rule, file("o.json", R"({"order": ["a","b","d","c"]})")});
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(r.doc()["mass"], json({{"abdc", "5/8"}, {"bacd", "3/8"}}));
}

TEST_F(Cli, ExitCodes) {
  using namespace rumid::cli;
  // malformed JSON and schema violations
  Result r = run({"phi", file("bad.json", "{")});
  EXPECT_EQ(r.code, kExitMalformed);
  EXPECT_EQ(r.doc()["error"]["reason"], "invalid-input");
  json wrong = kVoter;
  wrong["mass"]["abcd"] = "one quarter";
  EXPECT_EQ(run({"phi", file("w.json", wrong)}).code, kExitMalformed);
  wrong = kVoter;
  wrong["mass"]["abce"] = "1/4";
  EXPECT_EQ(run({"phi", file("w2.json", wrong)}).code, kExitMalformed);
  EXPECT_EQ(run({"phi", (dir_ / "missing.json").string()}).code, kExitMalformed);
  EXPECT_EQ(run({"no-such-command"}).code, kExitMalformed);
  EXPECT_EQ(run({"phi"}).code, kExitMalformed);

  // a rule that is not rationalizable: reported by rationalize, refused by
  // commands that need a rationalization
  const json rule = json::parse(R"({"alternatives": ["a","b","c"], "probabilities": {
      "a": {"a": "1"}, "b": {"b": "1"}, "c": {"c": "1"},
      "ab": {"a": "1", "b": "0"}, "ac": {"a": "1", "c": "0"}, "bc": {"b": "1", "c": "0"},
      "abc": {"a": "0", "b": "1", "c": "0"}}})");
  const std::string rf = file("r.json", rule);
  r = run({"rationalize", rf});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_FALSE(r.doc()["rationalizable"].get<bool>());
  EXPECT_FALSE(r.doc()["negative"].empty());
  r = run({"swap-progressive", rf, file("o.json", R"({"order": ["a","b","c"]})")});
  EXPECT_EQ(r.code, kExitDomain);
  EXPECT_EQ(r.doc()["error"]["reason"], "domain-rejection");

  // size guards
  json big = {{"alternatives", {"a", "b", "c", "d", "e", "f", "g", "h", "i"}}, {"mass", {{"abcdefghi", "1"}}}};
  const std::string bf = file("big.json", big);
  r = run({"phi", bf});
  EXPECT_EQ(r.code, kExitDomain);
  EXPECT_EQ(r.doc()["error"]["reason"], "cap-exceeded");
  r = run({"--cap", "9", "phi", bf});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.err.find("warning"), std::string::npos);
}

TEST_F(Cli, InfeasibleSupport) {
  const std::string q =
      file("q.json", json{{"base", kVoter}, {"functional", {{"abdc", "1"}}}, {"support", {"abcd", "badc"}}});
  const Result r = run({"bounds", q});
  EXPECT_EQ(r.code, rumid::cli::kExitDomain);
  EXPECT_EQ(r.doc()["error"]["reason"], "infeasible-support");
}

TEST_F(Cli, SchemasAreJson) {
  for (const auto& name : rumid::json_io::schema_names()) {
    const Result r = run({"--schema", name});
    ASSERT_EQ(r.code, 0) << name;
    EXPECT_EQ(r.doc()["title"], name);
  }
  EXPECT_EQ(run({"--schema", "nope"}).code, rumid::cli::kExitMalformed);
}

TEST_F(Cli, OutputIsDeterministic) {
  const std::string q = file("q.json", json{{"base", kVoter}, {"functional", {{"abdc", "1"}, {"bacd", "-2"}}}});
  const Result a = run({"bounds", q}), b = run({"bounds", q});
  EXPECT_EQ(a.out, b.out);
  const std::string s = file("s.json", R"({"alternatives": ["a","b","c","d"]})");
  EXPECT_EQ(run({"ryser-basis", s}).out, run({"ryser-basis", s}).out);
  EXPECT_EQ(run({"ryser-basis", s}).doc()["dimension"], 6);
}

TEST_F(Cli, SupportAndExtremeCommands) {
  const Result id = run({"support-id", file("s.json", R"({"alternatives": ["a","b","c","d"],
      "support": ["dcba","dcab","dbca","cdab","cadb"]})")});
  ASSERT_EQ(id.code, 0) << id.out;
  EXPECT_TRUE(id.doc()["identifying"].get<bool>());
  json doc = kVoter;
  const Result ex = run({"extreme", file("v.json", doc)});
  ASSERT_EQ(ex.code, 0) << ex.out;
  EXPECT_FALSE(ex.doc()["extreme"].get<bool>());
}

TEST_F(Cli, ParamCheckReportsLuceAsClean) {
  const Result r = run({"param-check", file("m.json", R"({"model": "luce", "n": 2})"),
                        file("c.json", R"({"grid": [{"lo": 0.5, "hi": 2, "count": 3}, {"lo": 0.5, "hi": 2, "count": 3}]})")});
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(r.doc()["verdict"], "no-violation-found");
  EXPECT_EQ(run({"param-check", file("m2.json", R"({"model": "probit", "n": 2})")}).code, rumid::cli::kExitMalformed);
}
