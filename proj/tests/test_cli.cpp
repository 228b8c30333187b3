#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "segre/io.hpp"
#include "support/fixtures.hpp"
#include "support/process.hpp"

using namespace segre;
using namespace segre::testing;

namespace {

const std::string kLeft = data_arg("a1_left.json");
const std::string kRight = data_arg("a1_right.json");

std::string temp_file(const std::string& name, const std::string& text) {
  auto path = std::filesystem::temp_directory_path() / ("segre_cli_" + name);
  std::ofstream(path) << text;
  return path.string();
}

}  // namespace

TEST(Cli, Glue) {
  auto r = run("glue " + kLeft + " x3 " + kRight + " y3");
  ASSERT_EQ(r.exit_code, 0);
  auto g = glue(example_left(), "x3", example_right(), "y3");
  EXPECT_EQ(r.out, render_glued(g));
  EXPECT_EQ(parse_seed(r.out), g.seed);
}

TEST(Cli, Mutate) {
  auto r = run("mutate " + kLeft + " x1");
  ASSERT_EQ(r.exit_code, 0);
  EXPECT_EQ(parse_seed(r.out), mutate_seed(example_left(), "x1"));
  EXPECT_EQ(run("mutate " + kLeft + " x3").exit_code, 3);
  EXPECT_EQ(run("mutate " + kLeft + " nope").exit_code, 1);
}

TEST(Cli, Theorem) {
  auto r = run("verify theorem " + kLeft + " x3 " + kRight + " y3 --depth 6");
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_NE(r.out.find("theorem: success"), std::string::npos) << r.out;
  auto naive = run("verify theorem " + kLeft + " x3 " + kRight +
                   " y3 --force-degree 2 --map naive");
  EXPECT_EQ(naive.exit_code, 4);
  EXPECT_NE(naive.out.find("theorem: failure"), std::string::npos) << naive.out;
  auto json = run("--json verify theorem " + kLeft + " x3 " + kRight + " y3");
  ASSERT_EQ(json.exit_code, 0);
  EXPECT_EQ(Json::parse(json.out)["status"], "success");
}

TEST(Cli, CorollaryAndCorrespondence) {
  auto c = run("verify corollary " + kLeft + " x3 " + kRight + " y3");
  EXPECT_EQ(c.exit_code, 0);
  EXPECT_NE(c.out.find("corollary: success"), std::string::npos) << c.out;
  auto j = run("--json verify corollary " + kLeft + " x3 " + kRight + " y3");
  EXPECT_EQ(Json::parse(j.out)["kappa"]["glued"], 7);
  auto k = run("verify correspondence " + kLeft + " x3 " + kRight + " y3");
  EXPECT_EQ(k.exit_code, 0);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run("glue /nonexistent.json x3 " + kRight + " y3").exit_code, 2);
  auto broken = temp_file("broken.json", "{\"variables\": [");
  EXPECT_EQ(run("glue " + broken + " x3 " + kRight + " y3").exit_code, 2);
  auto invalid = temp_file("invalid.json", R"({"variables": [
    {"name": "x1", "frozen": false, "degree": 1},
    {"name": "x2", "frozen": true, "degree": 1},
    {"name": "x3", "frozen": true, "degree": 2}],
    "arrows": [{"from": "x2", "to": "x1"}, {"from": "x1", "to": "x3"}]})");
  EXPECT_EQ(run("glue " + invalid + " x3 " + kRight + " y3").exit_code, 3);
  auto doubled = temp_file("doubled.json", render_seed(scale_grading(example_right(), 2)));
  EXPECT_EQ(run("glue " + kLeft + " x3 " + doubled + " y3").exit_code, 3);
  auto m = run("enumerate " + data_arg("markov.json") + " --max-nodes 50");
  EXPECT_EQ(m.exit_code, 5);
  EXPECT_NE(m.out.find("status: truncated"), std::string::npos) << m.out;
  EXPECT_EQ(run("enumerate " + data_arg("a2.json")).exit_code, 0);
}

TEST(Cli, OutputIsByteIdenticalAcrossRuns) {
  for (const std::string args :
       {"--json enumerate " + data_arg("a2.json") + " --graph",
        "--json verify corollary " + kLeft + " x3 " + kRight + " y3",
        "--json enumerate " + data_arg("markov.json") + " --max-nodes 60 --threads 3 --graph"}) {
    auto a = run(args);
    auto b = run(args);
    EXPECT_FALSE(a.out.empty());
    EXPECT_EQ(a.out, b.out) << args;
  }
}
