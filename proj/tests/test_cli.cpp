#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "json.hpp"
#include "quiltlab/cli.hpp"

using namespace quiltlab;

namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string fixture_path(const std::string& name) { return std::string(QUILTLAB_FIXTURE_DIR) + "/" + name; }

std::string temp_path(const std::string& name) {
  return (std::filesystem::path(testing::TempDir()) / ("quiltlab_cli_" + name)).string();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write(const std::string& path, const std::string& text) {
  std::ofstream(path, std::ios::binary) << text;
}

/// Exit status of the installed binary.
int binary_status(const std::string& args) {
  const std::string cmd = std::string(QUILTLAB_BINARY) + " " + args + " >/dev/null 2>&1";
  const int raw = std::system(cmd.c_str());
  return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
}

class EnvSeed {
 public:
  explicit EnvSeed(const char* value) { setenv("QUILTLAB_SEED", value, 1); }
  ~EnvSeed() { unsetenv("QUILTLAB_SEED"); }
};

}  // namespace

TEST(Cli, MeanderVerifyReport) {
  const CliRun r = run({"meander", "verify", "--size", "3"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_EQ(r.out, "8 meanders, 6 θ-classes, factorization OK\n");
}

TEST(Cli, MeanderCountMethodsAgree) {
  for (const char* method : {"pair", "serial", "transfer"}) {
    const CliRun r = run({"meander", "count", "--size", "5", "--method", method});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["count"].get<int>(), 262);
    EXPECT_EQ(j["provenance"]["version"], "0.1.0");
    EXPECT_TRUE(j["provenance"].contains("seed"));
  }
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({"meander", "verify", "--size", "0"}).code, kExitUsage);
  EXPECT_EQ(run({"meander", "verify", "--size", "3", "--bogus"}).code, kExitUsage);
  EXPECT_EQ(run({"meander", "verify"}).code, kExitUsage);
  EXPECT_EQ(run({}).code, kExitUsage);
  EXPECT_EQ(run({"frobnicate"}).code, kExitUsage);
  EXPECT_EQ(run({"mating", "simulate", "--gamma", "2.5"}).code, kExitUsage);
  EXPECT_EQ(run({"quilt", "validate", "--in", "/nonexistent/file"}).code, kExitUsage);
  EXPECT_EQ(run({"verify-all", "--inject-fault", "meander"}).code, kExitUsage);
  EXPECT_EQ(run({"--help"}).code, kExitOk);
}

TEST(Cli, ArgvFuzzNeverCrashes) {
  const std::vector<std::string> words = {"meander", "count", "verify", "--size", "3", "-1", "x", "--seed",
                                          "quilt",   "fields", "--grid", "--out", "mating", "simulate", "--", "9"};
  std::mt19937 rng(2);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<std::string> args;
    const int len = static_cast<int>(rng() % 5);
    for (int i = 0; i < len; ++i) args.push_back(words[rng() % words.size()]);
    const CliRun r = run(args);
    EXPECT_TRUE(r.code == kExitOk || r.code == kExitVerificationFailure || r.code == kExitUsage);
    if (r.code == kExitUsage) {
      EXPECT_FALSE(r.err.empty());
    }
  }
}

TEST(Cli, ProcessExitCodes) {
  EXPECT_EQ(binary_status("meander verify --size 3"), 0);
  EXPECT_EQ(binary_status("meander verify --size 0"), 2);
  EXPECT_EQ(binary_status("--unknown-flag"), 2);
  EXPECT_EQ(binary_status("quilt determinant --inject-fault --in " + fixture_path("template_n2.tmpl")), 1);
  EXPECT_EQ(binary_status("verify-all --budget 0"), 0);
}

TEST(Cli, DeterminantAndFault) {
  const CliRun ok = run({"quilt", "determinant", "--in", fixture_path("template_n21.tmpl")});
  ASSERT_EQ(ok.code, kExitOk) << ok.err;
  const auto j = nlohmann::json::parse(ok.out);
  EXPECT_NEAR(std::abs(j["determinant"].get<double>()), 1.0, 1e-9);
  EXPECT_EQ(j["left_edges"].get<int>(), 43);
  const CliRun bad = run({"quilt", "determinant", "--inject-fault", "--in", fixture_path("template_n2.tmpl")});
  EXPECT_EQ(bad.code, kExitVerificationFailure);
}

TEST(Cli, QuiltValidate) {
  const CliRun r = run({"quilt", "validate", "--in", fixture_path("template_n21.tmpl")});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find("n 21\n"), std::string::npos);
  EXPECT_NE(r.out.find("valid\n"), std::string::npos);
}

TEST(Cli, BijectionAndWinding) {
  const CliRun b = run({"quilt", "verify-bijection", "--in", fixture_path("two_hole_a.tmpl"), "--budgets", "1,1"});
  EXPECT_EQ(b.code, kExitOk) << b.err;
  EXPECT_NE(b.out.find("bijection OK"), std::string::npos);
  EXPECT_EQ(run({"quilt", "verify-bijection", "--in", fixture_path("two_hole_a.tmpl"), "--budgets", "1"}).code,
            kExitUsage);
  const CliRun w = run({"quilt", "winding-labels", "--in", fixture_path("two_hole_b.tmpl"), "--budget", "1"});
  EXPECT_EQ(w.code, kExitOk) << w.err;
  EXPECT_TRUE(nlohmann::json::parse(w.out)["agree"].get<bool>());
}

TEST(Cli, VerifyAllZeroBudget) {
  const CliRun r = run({"verify-all", "--budget", "0"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find("[skipped]"), std::string::npos);
  EXPECT_EQ(r.out.find("[PASS]"), std::string::npos);
  const CliRun j = run({"verify-all", "--budget", "0", "--format", "json"});
  EXPECT_EQ(j.code, kExitOk);
  EXPECT_EQ(nlohmann::json::parse(j.out)["checks"].size(), 10u);
}

TEST(Cli, SimulateIsByteIdentical) {
  const std::vector<std::string> args = {"mating", "simulate", "--gamma", "1", "--eps", "0.1", "--seed", "7"};
  const CliRun a = run(args);
  const CliRun b = run(args);
  ASSERT_EQ(a.code, kExitOk) << a.err;
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(nlohmann::json::parse(a.out)["provenance"]["seed"].get<int>(), 7);
  const std::string path = temp_path("sim.json");
  auto with_out = args;
  with_out.insert(with_out.end(), {"--out", path});
  EXPECT_EQ(run(with_out).code, kExitOk);
  EXPECT_EQ(slurp(path), a.out);
}

TEST(Cli, EnvironmentSeedOverridesFlag) {
  const std::vector<std::string> args = {"mating", "simulate", "--gamma", "1", "--eps", "0.1", "--seed", "7"};
  const CliRun flag9 = run({"mating", "simulate", "--gamma", "1", "--eps", "0.1", "--seed", "9"});
  CliRun env;
  {
    EnvSeed guard("9");
    env = run(args);
  }
  EXPECT_EQ(env.out, flag9.out);
  {
    EnvSeed guard("nine");
    EXPECT_EQ(run(args).code, kExitUsage);
  }
}

TEST(Cli, CurvatureCommand) {
  const std::string path = temp_path("square.csv");
  write(path, "x,y\n0,0\n1,0\n1,1\n0,1\n");
  const CliRun r = run({"curvature", "--in", path, "--closed"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_NEAR(j["turning_over_2pi"].get<double>(), 1.0, 1e-12);
  EXPECT_EQ(j["hopf"]["sign"].get<int>(), 1);
  write(path, "0,0\n1,1\n1,0\n0,1\n");
  const CliRun bowtie = run({"curvature", "--in", path, "--closed"});
  EXPECT_FALSE(nlohmann::json::parse(bowtie.out)["simple"].get<bool>());
}

TEST(Cli, FieldsCommands) {
  const CliRun rot = run({"fields", "rotate", "--n", "2", "--charges", "-2,1", "--angle", "0.7853981633974483", "--grid",
                       "6", "--samples", "4000", "--seed", "3"});
  EXPECT_EQ(rot.code, kExitOk) << rot.err;
  const auto j = nlohmann::json::parse(rot.out);
  EXPECT_NEAR(j["charge_sum_after"].get<double>(), -1.0, 1e-12);
  const std::string graph = temp_path("k4.edges");
  write(graph, "0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n");
  const CliRun k = run({"fields", "kirchhoff", "--graph", graph});
  EXPECT_EQ(k.code, kExitOk);
  EXPECT_EQ(nlohmann::json::parse(k.out)["spanning_trees"].get<int>(), 16);
  const CliRun p = run({"fields", "partition-identity", "--grid", "4"});
  EXPECT_EQ(p.code, kExitOk);
  EXPECT_EQ(nlohmann::json::parse(p.out)["determinant"].get<double>(), 192.0);
  EXPECT_EQ(run({"fields", "partition-identity"}).code, kExitUsage);
  write(graph, "0 1\n2 3\n");
  EXPECT_EQ(run({"fields", "kirchhoff", "--graph", graph}).code, kExitUsage);
}

TEST(Cli, ArtifactsRoundTrip) {
  const CliRun classes = run({"meander", "classes", "--size", "4"});
  ASSERT_EQ(classes.code, kExitOk);
  EXPECT_EQ(nlohmann::ordered_json::parse(classes.out).dump(2) + "\n", classes.out);
  const CliRun cal = run({"mating", "calibrate", "--gamma", "1", "--steps", "5000", "--seed", "4"});
  EXPECT_NE(cal.out.find("gamma,entry,empirical,target,deviation,pass\n"), std::string::npos);
  const CliRun report = run({"verify-all", "--budget", "0", "--format", "json"});
  EXPECT_EQ(nlohmann::ordered_json::parse(report.out).dump(2) + "\n", report.out);
}
