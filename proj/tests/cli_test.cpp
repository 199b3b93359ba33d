#include <gtest/gtest.h>

#include <sstream>

#include "qkfib/cli.hpp"

using namespace qkfib;

namespace {

struct CliRun {
  int code;
  std::string out, err;
};

CliRun run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST(Term, SpecExamples) {
  EXPECT_EQ(run({"term", "--q", "3", "--k", "2", "--n", "6"}).out, "360\n");
  EXPECT_EQ(run({"term", "--q", "3", "--k", "2", "--n", "0"}).out, "0\n");
  const CliRun fast = run({"term", "--q", "4", "--k", "5", "--n", "9", "--method", "fast"});
  EXPECT_EQ(fast.code, 0);
  EXPECT_EQ(fast.out, "107562\n");
}

TEST(Term, AllMethodsAgree) {
  for (const char* m : {"def", "shortcut", "fast", "theorem3"})
    EXPECT_EQ(run({"term", "--q", "4", "--k", "3", "--n", "8", "--method", m}).out, "24671\n") << m;
  const CliRun binet = run({"term", "--q", "4", "--k", "3", "--n", "8", "--method", "binet"});
  EXPECT_EQ(binet.code, 0);
  EXPECT_EQ(binet.out.substr(0, binet.out.find('\n')), "24671");
  EXPECT_NE(binet.out.find("residual "), std::string::npos);
}

TEST(Term, BinetEscalatesForLargeIndex) {
  const CliRun r = run({"term", "--q", "3", "--k", "2", "--n", "400", "--method", "binet", "--bits", "64"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), term_definition({3, 2}, 400).get_str());
}

TEST(Term, UsageErrors) {
  const CliRun below = run({"term", "--q", "3", "--k", "2", "--n", "-1"});
  EXPECT_EQ(below.code, 2);
  EXPECT_NE(below.err.find("n >= 2-k"), std::string::npos) << below.err;
  EXPECT_EQ(run({"term", "--q", "0", "--k", "2", "--n", "3"}).code, 2);
  EXPECT_EQ(run({"term", "--q", "3", "--k", "1", "--n", "3"}).code, 2);
  EXPECT_EQ(run({"term", "--q", "3", "--k", "2"}).code, 2);
  EXPECT_EQ(run({"term", "--q", "3", "--k", "2", "--n", "x"}).code, 2);
  EXPECT_EQ(run({"term", "--q", "3", "--k", "2", "--n", "3", "--method", "magic"}).code, 2);
  EXPECT_EQ(run({"term", "--q", "2", "--k", "2", "--n", "3", "--method", "theorem3"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Table, Q3ReproducesPublishedRows) {
  const CliRun r = run({"table", "--q", "3", "--k-min", "2", "--k-max", "5", "--n-max", "9", "--format", "csv"});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(r.err.empty());
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line, "q,k,n,value");
  const char* expected[4][9] = {{"1", "3", "10", "33", "109", "360", "1189", "3927", "12970"},
                                {"1", "3", "10", "34", "115", "389", "1316", "4452", "15061"},
                                {"1", "3", "10", "34", "116", "395", "1345", "4580", "15596"},
                                {"1", "3", "10", "34", "116", "396", "1351", "4609", "15724"}};
  for (int k = 2; k <= 5; ++k)
    for (int n = 1; n <= 9; ++n) {
      ASSERT_TRUE(std::getline(lines, line));
      EXPECT_EQ(line, "3," + std::to_string(k) + "," + std::to_string(n) + "," + expected[k - 2][n - 1]);
    }
  EXPECT_FALSE(std::getline(lines, line));
}

TEST(Table, ErratumNoteOnStderr) {
  const CliRun r = run({"table", "--q", "4", "--k-min", "5", "--k-max", "5", "--n-max", "9"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.substr(r.out.rfind("4,5,9")), "4,5,9,107562\n");
  EXPECT_EQ(r.out.find("132565"), std::string::npos);
  EXPECT_NE(r.err.find("107562"), std::string::npos);
  EXPECT_NE(r.err.find("132565"), std::string::npos);
  // No note when the cell is not in the grid.
  EXPECT_TRUE(run({"table", "--q", "4", "--k-min", "2", "--k-max", "4", "--n-max", "9"}).err.empty());
}

TEST(Table, SeedRowAndFormats) {
  EXPECT_EQ(run({"table", "--q", "3", "--k-min", "2", "--k-max", "2", "--n-max", "1"}).out, "q,k,n,value\n3,2,1,1\n");
  const CliRun md = run({"table", "--q", "3", "--k-min", "2", "--k-max", "2", "--n-max", "2", "--format", "markdown"});
  EXPECT_EQ(md.out, "| q | k | n | value |\n|---|---|---|---|\n| 3 | 2 | 1 | 1 |\n| 3 | 2 | 2 | 3 |\n");
  const CliRun js = run({"table", "--q", "3", "--k-min", "2", "--k-max", "2", "--n-max", "2", "--format", "json"});
  const auto j = nlohmann::json::parse(js.out);
  ASSERT_EQ(j.size(), 2u);
  EXPECT_EQ(j[1]["value"], "3");
  EXPECT_EQ(j[1]["n"], 2);
  const CliRun neg = run({"table", "--q", "3", "--k-min", "3", "--k-max", "3", "--n-min", "-1", "--n-max", "1"});
  EXPECT_EQ(neg.out, "q,k,n,value\n3,3,-1,0\n3,3,0,0\n3,3,1,1\n");
}

TEST(Table, InvalidRanges) {
  EXPECT_EQ(run({"table", "--q", "3", "--k-min", "5", "--k-max", "2", "--n-max", "9"}).code, 2);
  EXPECT_EQ(run({"table", "--q", "3", "--k-min", "2", "--k-max", "3", "--n-min", "5", "--n-max", "4"}).code, 2);
  EXPECT_EQ(run({"table", "--q", "3", "--k-min", "2", "--k-max", "3", "--n-min", "-5", "--n-max", "4"}).code, 2);
  EXPECT_EQ(run({"table", "--q", "3", "--k-min", "1", "--k-max", "3", "--n-max", "4"}).code, 2);
}

TEST(Table, ByteStable) {
  const std::vector<std::string> args{"table", "--q", "4", "--k-min", "2", "--k-max", "6", "--n-max", "40"};
  EXPECT_EQ(run(args).out, run(args).out);
}

TEST(Root, EnclosesGamma) {
  const CliRun r = run({"root", "--q", "3", "--k", "2", "--bits", "64"});
  EXPECT_EQ(r.code, 0);
  ASSERT_EQ(r.out.front(), '[');
  const std::size_t comma = r.out.find(", ");
  const double a = std::stod(r.out.substr(1, comma - 1));
  const double b = std::stod(r.out.substr(comma + 2));
  EXPECT_LE(a, 3.302775637731995);
  EXPECT_GE(b, 3.302775637731994);
  EXPECT_TRUE(r.out.rfind("3.302775637", 1) == 1);
  EXPECT_EQ(run({"root", "--q", "3", "--k", "1"}).code, 2);
}

TEST(Series, SpecExample) {
  EXPECT_EQ(run({"series", "--q", "4", "--k", "3", "--count", "6"}).out, "0\n1\n4\n17\n73\n313\n");
  EXPECT_EQ(run({"series", "--q", "4", "--k", "3", "--count", "0"}).out, "");
}

TEST(Verify, ExitCodes) {
  const CliRun identities = run({"verify", "--law", "identities", "--q", "1", "--k-max", "4", "--n-max", "30"});
  EXPECT_EQ(identities.code, 0) << identities.out;
  EXPECT_EQ(run({"verify", "--law", "lemma1", "--q", "2"}).code, 2);
  EXPECT_EQ(run({"verify", "--law", "nonsense"}).code, 2);
  // Heuristic decay check fails at k = 7.
  EXPECT_EQ(run({"verify", "--law", "decay", "--q", "3", "--k-min", "7", "--k-max", "7"}).code, 1);
  EXPECT_EQ(run({"verify", "--law", "decay", "--q", "3", "--k-min", "3", "--k-max", "3"}).code, 0);
  // Precision cap 16 x 16 bits cannot settle reconstruction at n = 400.
  EXPECT_EQ(run({"verify", "--law", "reconstruction", "--q", "3", "--k-max", "2", "--n-max", "400", "--bits", "16"}).code,
            1);
}

TEST(Verify, AllOnQ3Grid) {
  const CliRun r = run({"verify", "--law", "all", "--q", "3", "--k-max", "8", "--n-max", "300"});
  EXPECT_EQ(r.code, 0) << r.out;
  for (const char* id : {"identity-theorem2", "identity-theorem3", "series-oracle", "lemma1-monotone", "lemma1-sandwich",
                         "lemma2-sandwich", "root-confinement", "error-bound", "growth-bounds", "reconstruction"})
    EXPECT_NE(r.out.find(std::string(id) + ": pass"), std::string::npos) << id;
  EXPECT_EQ(r.out.find("error-decay"), std::string::npos);
}

TEST(Verify, JsonSchemaAndDeterminism) {
  const std::vector<std::string> args{"verify", "--law", "lemma2", "--q", "4", "--k-max", "5", "--format", "json"};
  const CliRun r = run(args);
  EXPECT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  ASSERT_EQ(j.size(), 1u);
  for (const char* key : {"law_id", "grid", "verdict", "witnesses", "bits_used"}) EXPECT_TRUE(j[0].contains(key)) << key;
  EXPECT_EQ(j[0]["law_id"], "lemma2-sandwich");
  EXPECT_EQ(j[0]["grid"]["q_min"], 4);
  EXPECT_EQ(j[0]["grid"]["k_max"], 5);
  EXPECT_EQ(run(args).out, r.out);
}

TEST(Bench, CsvShape) {
  const CliRun r = run({"bench", "--q", "3", "--k", "2", "--n", "2000", "--reps", "1"});
  EXPECT_EQ(r.code, 0);
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line, "strategy,q,k,n,reps,median_seconds,min_seconds");
  for (const char* s : {"def", "shortcut", "fast"}) {
    ASSERT_TRUE(std::getline(lines, line));
    EXPECT_EQ(line.rfind(std::string(s) + ",3,2,2000,1,", 0), 0u) << line;
  }
  EXPECT_EQ(run({"bench", "--q", "3", "--k", "2", "--n", "0"}).code, 2);
}
