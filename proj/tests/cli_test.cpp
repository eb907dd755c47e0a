#include "cli.hpp"

#include <gtest/gtest.h>
#include <unistd.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "vector_file.hpp"

namespace {

using spherecdf::cli::run;

struct Invocation {
  int code;
  std::string out;
  std::string err;
};

Invocation invoke(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) parts.push_back(cur);
  return parts;
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  for (const auto& line : split(text, '\n')) {
    if (!line.empty() && line[0] != '#') rows.push_back(split(line, ','));
  }
  return rows;
}

class TempFile {
 public:
  explicit TempFile(const std::string& contents) {
    static int counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            ("spherecdf_cli_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    std::ofstream(path_) << contents;
  }
  ~TempFile() { std::filesystem::remove(path_); }
  std::string path() const { return path_.string(); }

 private:
  std::filesystem::path path_;
};

TEST(CliExit, NoSubcommandIsUsageError) {
  const auto r = invoke({});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("Usage"), std::string::npos);
}

TEST(CliExit, HelpSucceeds) { EXPECT_EQ(invoke({"--help"}).code, 0); }

TEST(CliExit, UnknownFlagRejected) {
  EXPECT_EQ(invoke({"bound-eval", "--n", "10", "--epsilon", "0.1", "--t", "0.1", "--bogus", "1"}).code,
            2);
}

TEST(CliBoundEval, MatchesDirectEvaluation) {
  const auto r = invoke({"bound-eval", "--n", "100", "--epsilon", "0.1", "--t", "0.2"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = csv_rows(r.out);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')),
            "bound,n,epsilon,t,threshold,dkw_term,gplus_term,gminus_term,total");
  EXPECT_EQ(rows[1][0], "theorem");
  EXPECT_EQ(rows[2][0], "corollary");
  // Reference totals from an arbitrary-precision evaluation.
  EXPECT_NEAR(std::stod(rows[1][8]), 0.37287806906503471, 1e-11);
  EXPECT_NEAR(std::stod(rows[2][8]), 0.85876903009288257, 1e-11);
  // Threshold column reproduces epsilon + t/2 for the corollary row.
  EXPECT_NEAR(std::stod(rows[2][4]), 0.2, 1e-12);
}

TEST(CliBoundEval, RejectsOutOfDomain) {
  const auto r = invoke({"bound-eval", "--n", "100", "--epsilon", "0.1", "--t", "1.0"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("--t"), std::string::npos);
  EXPECT_TRUE(r.out.empty());
  EXPECT_EQ(invoke({"bound-eval", "--n", "0", "--epsilon", "0.1", "--t", "0.1"}).code, 2);
  EXPECT_EQ(invoke({"bound-eval", "--n", "10", "--epsilon", "-1", "--t", "0.1"}).code, 2);
  EXPECT_EQ(invoke({"bound-eval", "--n", "abc", "--epsilon", "0.1", "--t", "0.1"}).code, 2);
}

TEST(CliBoundEval, JsonEnvelope) {
  const auto r = invoke({"--json", "bound-eval", "--n", "100", "--epsilon", "0.1", "--t", "0.2"});
  ASSERT_EQ(r.code, 0);
  for (const char* key : {"\"command\": \"bound-eval\"", "\"inputs\"", "\"results\"", "\"seed\": 0",
                          "\"version\": \"0.1.0\"", "\"gplus_term\""}) {
    EXPECT_NE(r.out.find(key), std::string::npos) << key;
  }
  // A trailing --format after the subcommand is honoured as well.
  const auto r2 = invoke({"bound-eval", "--n", "100", "--epsilon", "0.1", "--t", "0.2", "--format", "json"});
  EXPECT_EQ(r2.out, r.out);
}

TEST(CliBoundOptimize, ProducesFeasibleSplit) {
  const auto r = invoke({"bound-optimize", "--n", "10000", "--delta", "0.05"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = csv_rows(r.out);
  ASSERT_EQ(rows.size(), 2u);
  const double eps = std::stod(rows[1][3]);
  const double t = std::stod(rows[1][4]);
  EXPECT_GT(eps, 0.0);
  EXPECT_GT(t, 0.0);
  EXPECT_LT(std::stod(rows[1][5]), 1e-3);
  EXPECT_EQ(invoke({"bound-optimize", "--n", "100", "--delta", "0"}).code, 2);
  EXPECT_EQ(invoke({"bound-optimize", "--n", "100", "--delta", "0.1", "--mode", "x"}).code, 2);
}

TEST(CliGamma, ColumnsAndInvariants) {
  const auto r = invoke({"gamma", "--t-min", "0", "--t-max", "0.99", "--steps", "12"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')),
            "t,gamma,gamma_oracle,half_t,g_plus,g_minus,g_minus_lb,g_plus_lb");
  const auto rows = csv_rows(r.out);
  ASSERT_EQ(rows.size(), 13u);
  EXPECT_EQ(rows[1][0], "0");
  for (std::size_t c = 1; c < rows[1].size(); ++c) EXPECT_EQ(std::stod(rows[1][c]), 0.0);
  EXPECT_EQ(rows.back()[0], "0.99");
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double t = std::stod(rows[i][0]);
    const double gamma = std::stod(rows[i][1]);
    EXPECT_NEAR(gamma, std::stod(rows[i][2]), 1e-7);
    EXPECT_LE(gamma, std::stod(rows[i][3]) + 1e-12);
    EXPECT_GE(std::stod(rows[i][5]), std::stod(rows[i][6]) - 1e-11);
    EXPECT_GE(std::stod(rows[i][4]), std::stod(rows[i][7]) - 1e-11);
    // Derived columns round-trip at the printed precision.
    EXPECT_NEAR(std::stod(rows[i][3]), t / 2, 1e-12);
    EXPECT_NEAR(std::stod(rows[i][7]), 0.375 * t, 1e-12);
  }
}

TEST(CliGamma, RejectsBadRange) {
  EXPECT_EQ(invoke({"gamma", "--t-min", "0.5", "--t-max", "0.4"}).code, 2);
  EXPECT_EQ(invoke({"gamma", "--t-max", "1"}).code, 2);
  EXPECT_EQ(invoke({"gamma", "--steps", "1"}).code, 2);
  EXPECT_EQ(invoke({"gamma", "--t-min", "-0.1"}).code, 2);
}

TEST(CliSimulate, DominatedAndDeterministic) {
  const std::vector<std::string> args = {"simulate", "--kind", "lambda", "--n", "50",
                                         "--trials", "2000", "--seed", "7", "--t", "0.2"};
  const auto a = invoke(args);
  const auto b = invoke(args);
  ASSERT_EQ(a.code, 0) << a.out << a.err;
  EXPECT_EQ(a.out, b.out);
  const auto rows = csv_rows(a.out);
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_EQ(rows[0][4], "seed");
  EXPECT_EQ(rows[1][4], "7");
  EXPECT_EQ(rows[1][1], "two_sided");
  EXPECT_EQ(std::stoll(rows[1][8]), std::stoll(rows[2][8]) + std::stoll(rows[3][8]));

  auto threads = args;
  threads.insert(threads.end(), {"--threads", "3"});
  EXPECT_EQ(invoke(threads).out, a.out);
}

TEST(CliSimulate, KindsRun) {
  EXPECT_EQ(invoke({"simulate", "--kind", "theorem", "--n", "50", "--trials", "500"}).code, 0);
  EXPECT_EQ(invoke({"simulate", "--kind", "dkw", "--n", "50", "--trials", "500"}).code, 0);
  const auto chi = invoke({"--json", "simulate", "--kind", "chisq", "--n", "50", "--trials", "500"});
  EXPECT_EQ(chi.code, 0);
  EXPECT_NE(chi.out.find("\"event\": \"upper\""), std::string::npos);
  EXPECT_NE(chi.out.find("\"epsilon\": null"), std::string::npos);
}

TEST(CliSimulate, ValidatesFlags) {
  EXPECT_EQ(invoke({"simulate", "--trials", "10"}).code, 2);
  EXPECT_EQ(invoke({"simulate", "--kind", "nope"}).code, 2);
  EXPECT_EQ(invoke({"simulate", "--t", "1.5"}).code, 2);
  EXPECT_EQ(invoke({"simulate", "--confidence", "1"}).code, 2);
  EXPECT_EQ(invoke({"simulate", "--kind", "chisq", "--x", "0"}).code, 2);
}

TEST(CliVerify, DefaultPassesAndToleranceZeroFails) {
  const auto ok = invoke({"verify", "--grid-steps", "100"});
  EXPECT_EQ(ok.code, 0) << ok.out;
  EXPECT_EQ(invoke({"verify", "--grid-steps", "100", "--tolerance", "0"}).code, 1);
  EXPECT_EQ(invoke({"verify", "--grid-steps", "10"}).code, 2);
}

TEST(CliVerify, AppendixScopeOnly) {
  const auto r = invoke({"verify", "--scope", "appendix", "--grid-steps", "100"});
  ASSERT_EQ(r.code, 0);
  const auto rows = csv_rows(r.out);
  ASSERT_GT(rows.size(), 1u);
  for (std::size_t i = 1; i < rows.size(); ++i) EXPECT_EQ(rows[i][1], "appendix") << rows[i][0];
}

TEST(CliVerify, HumanFormatOneLinePerCheck) {
  const auto csv = invoke({"verify", "--scope", "lemmas", "--grid-steps", "100"});
  const auto human = invoke({"--format", "human", "verify", "--scope", "lemmas", "--grid-steps", "100"});
  EXPECT_EQ(human.code, 0);
  // Human output: title, header, one line per check, summary.
  EXPECT_EQ(split(human.out, '\n').size(), csv_rows(csv.out).size() + 2);
}

TEST(CliUniformity, SphereRowsAccepted) {
  std::string text = "# three points on the sphere in R^4\n";
  text += "0.5,0.5,0.5,0.5\n";
  text += "1 0 0 0\n";
  text += "0.5 -0.5\t0.5 -0.5\n\n";
  TempFile f(text);
  const auto r = invoke({"test-uniformity", "--input", f.path()});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = csv_rows(r.out);
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"row", "n", "norm", "ks_statistic", "p_bound",
                                               "reject", "off_sphere"}));
  EXPECT_EQ(rows[1][6], "false");
  EXPECT_NE(r.out.find("# rows=3,rejected=0,alpha=0.05"), std::string::npos);
}

TEST(CliUniformity, OffSphereFlaggedAndNormalized) {
  TempFile f("1,1,1,1\n");
  const auto norm = csv_rows(invoke({"test-uniformity", "--input", f.path()}).out);
  const auto raw = csv_rows(invoke({"test-uniformity", "--input", f.path(), "--no-normalize"}).out);
  EXPECT_EQ(norm[1][6], "true");
  EXPECT_EQ(norm[1][2], "2");
  EXPECT_NE(norm[1][3], raw[1][3]);
}

TEST(CliUniformity, BadInputsExitTwo) {
  TempFile empty("# only a comment\n\n");
  TempFile ragged("1,2,3\n1,2\n");
  TempFile nonfinite("1,nan,0\n");
  TempFile text("1,x,0\n");
  for (const auto* file : {&empty, &ragged, &nonfinite, &text}) {
    const auto r = invoke({"test-uniformity", "--input", file->path()});
    EXPECT_EQ(r.code, 2) << file->path();
    EXPECT_FALSE(r.err.empty());
  }
  EXPECT_EQ(invoke({"test-uniformity", "--input", "/nonexistent/file"}).code, 2);
  TempFile ok("1,0\n");
  EXPECT_EQ(invoke({"test-uniformity", "--input", ok.path(), "--alpha", "1"}).code, 2);
}

TEST(VectorFile, ParsesMixedSeparators) {
  std::istringstream in("# header\n+1.5, -2e-3\t3\n\n4 5 6\n");
  const auto f = spherecdf::cli::read_vector_file(in);
  ASSERT_EQ(f.rows.size(), 2u);
  EXPECT_EQ(f.rows[0], (std::vector<double>{1.5, -2e-3, 3.0}));
  EXPECT_EQ(f.rows[1], (std::vector<double>{4.0, 5.0, 6.0}));
}

TEST(VectorFile, ReportsLineNumber) {
  std::istringstream in("1 2\n3 4\n5\n");
  try {
    spherecdf::cli::read_vector_file(in);
    FAIL();
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
  }
}

}  // namespace
