#include <gtest/gtest.h>

#include <sys/wait.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>

#include "shpcli/commands.hpp"

namespace shp::cli {
namespace {

namespace fs = std::filesystem;

std::string message_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

class TempDir {
 public:
  explicit TempDir(const std::string& tag)
      : path_(fs::temp_directory_path() /
              ("shpcli_" + tag + "_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()))) {
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

int run_binary(const std::string& args) {
  const int status = std::system((std::string(SHPCLI_PATH) + " " + args + " > /dev/null 2>&1").c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

TEST(Words, ListWithCatalanFlags) {
  const auto out = cmd_words(Json{{"h", 4}, {"mode", "list"}}, {});
  const auto& words = out.report["words"];
  ASSERT_EQ(words.size(), 3u);
  EXPECT_EQ(words[0]["word"], "aabb");
  EXPECT_EQ(words[0]["catalan"], true);
  EXPECT_EQ(words[1]["word"], "abab");
  EXPECT_EQ(words[1]["catalan"], false);
  EXPECT_EQ(words[2]["word"], "abba");
  EXPECT_EQ(words[2]["catalan"], true);
  EXPECT_TRUE(out.checks.empty());
}

TEST(Words, Counts) {
  const auto out = cmd_words(Json{{"h", 6}, {"mode", "count"}}, {});
  EXPECT_EQ(out.report["total"], 15);
  EXPECT_EQ(out.report["catalan"], 5);
  EXPECT_FALSE(out.report.contains("words"));
  const auto parts = cmd_words(Json{{"h", 4}, {"pair_matched", false}, {"mode", "count"}}, {});
  EXPECT_EQ(parts.report["total"], 15);
}

TEST(Words, OddLengthNamesKeyAndValue) {
  const auto msg = message_of([] { cmd_words(Json{{"h", 3}}, {}); });
  EXPECT_NE(msg.find("'h'"), std::string::npos);
  EXPECT_NE(msg.find("3"), std::string::npos);
}

TEST(Config, ErrorsNameTheOffendingEntry) {
  auto msg = message_of([] { cmd_moments(Json{{"link_x", "toeplits"}}, {}); });
  EXPECT_NE(msg.find("link_x"), std::string::npos);
  EXPECT_NE(msg.find("toeplits"), std::string::npos);
  msg = message_of([] { cmd_moments(Json{{"dist", "cauchy"}}, {}); });
  EXPECT_NE(msg.find("cauchy"), std::string::npos);
  msg = message_of([] { cmd_moments(Json{{"n", "big"}}, {}); });
  EXPECT_NE(msg.find("'n' = \"big\""), std::string::npos);
  msg = message_of([] { cmd_pw(Json{{"wrod", "abab"}}, {}); });
  EXPECT_NE(msg.find("wrod"), std::string::npos);
  msg = message_of([] { cmd_verify_table2(Json{{"rows", 7}}, {}); });
  EXPECT_NE(msg.find("rows"), std::string::npos);
  msg = message_of([] { cmd_check(Json{{"relation", "equivalent"}}, {}); });
  EXPECT_NE(msg.find("equivalent"), std::string::npos);
  EXPECT_THROW(run_command("plot", Json::object(), {}), ConfigError);
}

TEST(Config, HashIsStableAndSensitive) {
  const Json a = {{"n", 10}, {"link_x", "toeplitz"}};
  EXPECT_EQ(config_hash(a), config_hash(Json::parse(a.dump())));
  EXPECT_NE(config_hash(a), config_hash(Json{{"n", 11}, {"link_x", "toeplitz"}}));
  EXPECT_EQ(config_hash(a).size(), 16u);
}

TEST(Pw, ToeplitzAbab) {
  const auto out = cmd_pw(Json{{"link_x", "toeplitz"}, {"word", "abab"}}, {});
  ASSERT_EQ(out.report.size(), 1u);
  const auto& r = out.report[0];
  EXPECT_NEAR(r["p_estimate"].get<double>(), 2.0 / 3.0, 0.02);
  EXPECT_EQ(r["counts"][0], 400);
  EXPECT_TRUE(r["linkY"].is_null());
  EXPECT_FALSE(r.contains("word2"));
  for (const char* key : {"linkX", "n_ladder", "residual", "expected", "pass"}) {
    EXPECT_TRUE(r.contains(key)) << key;
  }
}

TEST(Pw, WignerAbabVanishes) {
  const auto out =
      cmd_pw(Json{{"link_x", "wigner"}, {"word", "abab"}, {"expected", 0.0}, {"tol", 0.02}}, {});
  ASSERT_EQ(out.checks.size(), 1u);
  EXPECT_TRUE(out.all_pass());
  EXPECT_LE(out.report[0]["p_estimate"].get<double>(), 0.02);
}

TEST(Pw, JointToeplitzHankel) {
  const auto out = cmd_pw(Json{{"link_x", "toeplitz"},
                               {"link_y", "hankel"},
                               {"word", "abab"},
                               {"word2", "abba"},
                               {"ladder", {8, 16, 32}},
                               {"expected", 0.0},
                               {"tol", 0.03}},
                          {});
  EXPECT_TRUE(out.all_pass());
  EXPECT_EQ(out.report[0]["word2"], "abba");
  EXPECT_EQ(out.report[0]["counts"][0], 88);
}

TEST(Pw, WholeTableForJointLinks) {
  const auto out =
      cmd_pw(Json{{"link_x", "toeplitz"}, {"link_y", "hankel"}, {"h", 4}, {"ladder", {6, 8, 10}}}, {});
  EXPECT_EQ(out.report.size(), 9u);
}

TEST(Moments, TargetsFollowTheLimitLaw) {
  const auto semi = cmd_moments(
      Json{{"link_x", "toeplitz"}, {"link_y", "hankel"}, {"n", 60}, {"trials", 3}, {"check", false}}, {});
  const auto& rec = semi.report["moments"];
  ASSERT_EQ(rec.size(), 6u);
  EXPECT_EQ(rec[1]["target"], 1.0);
  EXPECT_EQ(rec[3]["target"], 2.0);
  EXPECT_EQ(rec[5]["target"], 5.0);
  for (const char* key : {"h", "mean", "variance", "stderr", "n", "trials", "seed", "target", "z"}) {
    EXPECT_TRUE(rec[0].contains(key)) << key;
  }
  EXPECT_TRUE(semi.checks.empty());

  const auto toe = cmd_moments(
      Json{{"link_x", "toeplitz"}, {"link_y", "symcirc"}, {"n", 40}, {"trials", 2}, {"h_max", 4}}, {});
  EXPECT_NEAR(toe.report["moments"][3]["target"].get<double>(), 8.0 / 3.0, 0.04);
  EXPECT_EQ(toe.report["limit"], "toeplitz");

  const auto han = cmd_moments(
      Json{{"link_x", "hankel"}, {"link_y", "revcirc"}, {"n", 40}, {"trials", 2}, {"h_max", 4}}, {});
  EXPECT_EQ(han.report["limit"], "hankel");
  EXPECT_NEAR(han.report["moments"][3]["target"].get<double>(), 2.0, 0.02);

  const auto unknown = cmd_moments(
      Json{{"link_x", "toeplitz"}, {"link_y", "toeplitz"}, {"n", 20}, {"trials", 2}, {"h_max", 2}}, {});
  EXPECT_TRUE(unknown.report["moments"][1]["target"].is_null());
}

TEST(Moments, SeedOverrideIsRecorded) {
  RunOptions opts;
  opts.seed = 77;
  const auto out = cmd_moments(Json{{"n", 10}, {"trials", 2}, {"master_seed", 5}, {"check", false}}, opts);
  EXPECT_EQ(out.config["master_seed"], 77);
  EXPECT_EQ(out.report["moments"][0]["seed"], 77);
}

TEST(LimitLaw, TableOfProducts) {
  const auto W = LinkFunction::wigner();
  const auto T = LinkFunction::toeplitz();
  const auto H = LinkFunction::hankel();
  const auto SC = LinkFunction::symmetric_circulant();
  const auto RC = LinkFunction::reverse_circulant();
  const auto DH = LinkFunction::doubly_symmetric_hankel();
  for (const auto& y : builtin_links()) EXPECT_EQ(limit_law(W, y), LimitLaw::Semicircle);
  for (const auto& x : {T, SC}) {
    for (const auto& y : {H, RC, DH}) {
      EXPECT_EQ(limit_law(x, y), LimitLaw::Semicircle);
      EXPECT_EQ(limit_law(y, x), LimitLaw::Semicircle);
    }
  }
  EXPECT_EQ(limit_law(SC, T), LimitLaw::Toeplitz);
  EXPECT_EQ(limit_law(H, DH), LimitLaw::Hankel);
  EXPECT_EQ(limit_law(DH, RC), LimitLaw::ReverseCirculant);
  EXPECT_EQ(limit_law(T, T), LimitLaw::Unknown);
  EXPECT_EQ(limit_law(compose(Transform::square(), T), H), LimitLaw::Unknown);
}

TEST(Spectrum, DegenerateTwoByTwo) {
  const auto out = cmd_spectrum(Json{{"n", 2}, {"trials", 1}}, {});
  EXPECT_TRUE(out.report["ks"].is_number());
  const auto it = std::find_if(out.files.begin(), out.files.end(),
                               [](const auto& f) { return f.first == "eigenvalues.csv"; });
  ASSERT_NE(it, out.files.end());
  EXPECT_EQ(std::count(it->second.begin(), it->second.end(), '\n'), 3);
}

TEST(Spectrum, ToeplitzHankelAtFigureScale) {
  const auto out = cmd_spectrum(Json{{"link_x", "toeplitz"},
                                     {"link_y", "hankel"},
                                     {"dist", "gaussian"},
                                     {"n", 1000},
                                     {"ks_tol", 0.05}},
                                {});
  EXPECT_TRUE(out.all_pass());
  EXPECT_GT(out.report["min"].get<double>(), -2.3);
  EXPECT_LT(out.report["max"].get<double>(), 2.3);
  EXPECT_LE(out.report["ks"].get<double>(), 0.05);
  EXPECT_EQ(out.report["ks_reference"], "semicircle");
}

TEST(Spectrum, KsToleranceNeedsAReference) {
  const auto msg = message_of([] {
    cmd_spectrum(Json{{"link_x", "hankel"}, {"link_y", "revcirc"}, {"n", 4}, {"ks_tol", 0.1}}, {});
  });
  EXPECT_NE(msg.find("ks_tol"), std::string::npos);
}

TEST(Check, Relations) {
  auto out = cmd_check(Json{{"relation", "implies"}, {"link_x", "toeplitz"}, {"link_y", "revcirc"},
                            {"expect", false}},
                       {});
  EXPECT_TRUE(out.all_pass());
  EXPECT_EQ(out.checks.size(), 3u);
  out = cmd_check(Json{{"relation", "invariance"},
                       {"link_x", "wigner"},
                       {"transform", "coprimepower(2,3)"},
                       {"h", {2, 4}},
                       {"n", {6}}},
                  {});
  EXPECT_TRUE(out.all_pass());
  EXPECT_EQ(out.checks.size(), 4u);
  out = cmd_check(Json{{"relation", "leadsto"}, {"link_x", "toeplitz"}, {"link_y", "toeplitz"}}, {});
  EXPECT_FALSE(out.all_pass());
  const auto msg = message_of([] {
    cmd_check(Json{{"relation", "invariance"}, {"transform", "coprimepower(2,4)"}}, {});
  });
  EXPECT_NE(msg.find("coprimepower(2,4)"), std::string::npos);
}

TEST(VerifyTable2, SmallRowRuns) {
  const auto out = cmd_verify_table2(
      Json{{"rows", {5}}, {"n", 60}, {"trials", 4}, {"invariance_h", {2, 4}}, {"invariance_n", {6}}}, {});
  ASSERT_EQ(out.report["rows"].size(), 1u);
  EXPECT_EQ(out.report["rows"][0]["row"], 5);
  EXPECT_EQ(out.report["rows"][0]["products"][0]["limit"], "revcirc");
  EXPECT_FALSE(out.checks.empty());
}

TEST(Binary, ExitCodesAndManifest) {
  TempDir dir("exit");
  const auto cfg = dir.path() / "pw.json";
  std::ofstream(cfg) << R"({"link_x": "toeplitz", "word": "abab", "expected": 0.6667, "tol": 0.02})";
  const auto out = dir.path() / "ok";
  EXPECT_EQ(run_binary("pw --config " + cfg.string() + " --out " + out.string()), 0);
  const Json manifest = Json::parse(slurp(out / "manifest.json"));
  EXPECT_EQ(manifest["command"], "pw");
  EXPECT_EQ(manifest["pass"], true);
  EXPECT_EQ(manifest["config_hash"], config_hash(manifest["config"]));
  EXPECT_EQ(manifest["files"][0], "pw.json");
  EXPECT_TRUE(fs::exists(out / "pw.json"));
  EXPECT_FALSE(fs::exists(out / "manifest.json.tmp"));

  std::ofstream(cfg) << R"({"link_x": "toeplitz", "word": "abab", "expected": 1.0, "tol": 0.02})";
  EXPECT_EQ(run_binary("pw --config " + cfg.string() + " --out " + (dir.path() / "bad").string()), 1);
  std::ofstream(cfg) << R"({"link_x": "circulant"})";
  EXPECT_EQ(run_binary("pw --config " + cfg.string() + " --out " + (dir.path() / "x").string()), 2);
  std::ofstream(cfg) << R"({"link_x": )";
  EXPECT_EQ(run_binary("pw --config " + cfg.string()), 2);
  EXPECT_NE(run_binary("frobnicate"), 0);
}

TEST(Binary, ThreadCountLeavesOutputsUnchanged) {
  TempDir dir("threads");
  const auto cfg = dir.path() / "m.json";
  std::ofstream(cfg) << R"({"link_x": "symcirc", "link_y": "dsymhankel", "n": 80, "trials": 6, "h_max": 8, "check": false})";
  const auto a = dir.path() / "a";
  const auto b = dir.path() / "b";
  ASSERT_EQ(run_binary("moments --config " + cfg.string() + " --seed 9 --threads 1 --out " + a.string()), 0);
  ASSERT_EQ(run_binary("moments --threads 3 --config " + cfg.string() + " --seed 9 --out " + b.string()), 0);
  EXPECT_EQ(slurp(a / "moments.json"), slurp(b / "moments.json"));
  const Json ma = Json::parse(slurp(a / "manifest.json"));
  const Json mb = Json::parse(slurp(b / "manifest.json"));
  EXPECT_EQ(ma["config_hash"], mb["config_hash"]);
  EXPECT_EQ(ma["config"]["master_seed"], 9);
}

}  // namespace
}  // namespace shp::cli
