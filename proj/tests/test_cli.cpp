#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

const fs::path kDir = fs::path(testing::TempDir()) / "sqgfront_cli";

std::string write_config(const std::string& name, const std::string& text) {
  fs::create_directories(kDir);
  const fs::path p = kDir / name;
  std::ofstream(p) << text;
  return p.string();
}

int run(const std::string& sub, const std::string& config, const std::string& out) {
  const std::string cmd = std::string(SQGFRONT_CLI) + " " + sub + " --config " + config + " --out " + out +
                          " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream ss(text);
  for (std::string l; std::getline(ss, l);) out.push_back(l);
  return out;
}

const char* kSmall = "[solver]\nN = 16\nt_end = 0.1\n[initial]\ngenerator = exp_cos\namp = 0.05\n";

}  // namespace

TEST(Cli, ZeroDataRun) {
  const std::string cfg = write_config("zero.ini", "[solver]\nN = 16\nt_end = 0.1\n[initial]\ngenerator = zero\n");
  const std::string out = (kDir / "zero.csv").string();
  ASSERT_EQ(run("run", cfg, out), 0);
  const auto rows = lines(slurp(out));
  ASSERT_GE(rows.size(), 3u);
  EXPECT_EQ(rows[0], "t,E_s,hs_norm,opnorm,margin,w1inf,flags");
  for (std::size_t i = 1; i < rows.size(); ++i) EXPECT_NE(rows[i].find(",0,0,0,2,0,0"), std::string::npos) << rows[i];
}

TEST(Cli, PositivityBreachExitsTwo) {
  const std::string cfg = write_config(
      "big.ini", "[solver]\nN = 16\nt_end = 0.1\n[initial]\ngenerator = single_mode\nk = 2\namp = 5.0\n");
  const std::string out = (kDir / "big.csv").string();
  ASSERT_EQ(run("run", cfg, out), 2);
  const auto rows = lines(slurp(out));
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[1].substr(rows[1].rfind(',') + 1), "1");
}

TEST(Cli, Deterministic) {
  const std::string cfg = write_config("small.ini", kSmall);
  const std::string a = (kDir / "a.csv").string(), b = (kDir / "b.csv").string();
  ASSERT_EQ(run("run", cfg, a), 0);
  ASSERT_EQ(run("run", cfg, b), 0);
  EXPECT_EQ(slurp(a), slurp(b));
  EXPECT_GT(lines(slurp(a)).size(), 2u);
}

TEST(Cli, MalformedConfig) {
  const std::string out = (kDir / "bad.csv").string();
  EXPECT_EQ(run("run", write_config("bad1.ini", "[solver]\nN = many\n"), out), 1);
  EXPECT_EQ(run("run", write_config("bad2.ini", "[solver]\nwidth = 3\n"), out), 1);
  EXPECT_EQ(run("run", (kDir / "missing.ini").string(), out), 1);
  EXPECT_EQ(run("frobnicate", write_config("ok.ini", kSmall), out), 1);
}

TEST(Cli, ExperimentCommands) {
  const std::string cfg = write_config(
      "exp.ini", std::string(kSmall) +
                     "[experiment]\nk_list = 16, 32\nperturbations = 1e-4, 1e-5\nn_ref = 512\n"
                     "bona_smith_n = 16, 32, 64\n");
  const std::string out = (kDir / "exp.csv").string();

  ASSERT_EQ(run("identities", cfg, out), 0);
  EXPECT_EQ(lines(slurp(out)).size(), 9u);

  ASSERT_EQ(run("convergence", cfg, out), 0);
  auto rows = lines(slurp(out));
  EXPECT_EQ(rows[0], "kind,from,to,diff_h2,ratio,status");
  EXPECT_EQ(rows.size(), 5u);

  ASSERT_EQ(run("stability", cfg, out), 0);
  rows = lines(slurp(out));
  EXPECT_EQ(rows[0], "perturbation,t,distance,M");
  EXPECT_EQ(rows.back().find("nan"), std::string::npos);

  ASSERT_EQ(run("bona-smith", cfg, out), 0);
  EXPECT_EQ(lines(slurp(out)).size(), 4u);
}

TEST(Cli, TrivialExperimentData) {
  const std::string cfg =
      write_config("trivial.ini", "[solver]\nN = 16\nt_end = 0.1\n[experiment]\nk_list = 16, 32\nn_ref = 128\n"
                                  "bona_smith_n = 16, 32\nidentity_amp = 0\n");
  const std::string out = (kDir / "trivial.csv").string();
  for (const char* sub : {"identities", "convergence", "stability", "bona-smith"}) EXPECT_EQ(run(sub, cfg, out), 0) << sub;
}

TEST(Cli, BlowUpExitsThree) {
  const std::string cfg = write_config(
      "blow.ini",
      "[solver]\nN = 128\ndt = 0.05\nt_end = 5000\nintegrator = rk4\nnonlinear = false\nenergy_jump = 1e300\n"
      "max_halvings = 0\ndelta_pos = 0\n[monitor]\ncadence = 100000\n[initial]\ngenerator = exp_cos\namp = 0.05\n");
  const std::string out = (kDir / "blow.csv").string();
  ASSERT_EQ(run("run", cfg, out), 3);
  const auto rows = lines(slurp(out));
  EXPECT_EQ(rows.back().substr(rows.back().rfind(',') + 1), "2");
}
