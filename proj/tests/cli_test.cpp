#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdio>
#include <sstream>

#include "fansy/cli.hpp"

using namespace fansy;

namespace {

struct Outcome {
  int code = -1;
  std::string out, err;
  Json json() const { return Json::parse(out); }
};

Outcome run_in_process(std::vector<std::string> args) {
  args.insert(args.begin(), "fansy");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  Outcome o;
  o.code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  o.out = out.str();
  o.err = err.str();
  return o;
}

Outcome run_binary(const std::string& args) {
  Outcome o;
  std::string cmd = std::string(FANSY_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return o;
  char buf[4096];
  std::size_t k;
  while ((k = fread(buf, 1, sizeof buf, p)) > 0) o.out.append(buf, k);
  int status = pclose(p);
  o.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return o;
}

std::string sample(const std::string& name) { return std::string(FANSY_SAMPLES_DIR) + "/" + name; }

}  // namespace

TEST(Cli, FansyBothMethodsAgree) {
  Outcome o = run_binary("fansy --n 4 --method both");
  ASSERT_EQ(o.code, 0);
  Json j = o.json();
  EXPECT_TRUE(j["equal"].get<bool>());
  EXPECT_EQ(j["closed"]["labels"].size(), 3u);
  EXPECT_EQ(j["closed"]["cells"].size(), 6u);
  EXPECT_EQ(j["bijection"].size(), 6u);
}

TEST(Cli, FansyClosedOnly) {
  Outcome o = run_in_process({"fansy", "--n", "5", "--method", "closed"});
  ASSERT_EQ(o.code, 0);
  Json j = o.json();
  EXPECT_FALSE(j.contains("recipe"));
  EXPECT_EQ(j["closed"]["labels"].size(), 10u);
}

TEST(Cli, TailFan) {
  Outcome o = run_in_process({"tailfan", "--k", "2", "--n", "4"});
  ASSERT_EQ(o.code, 0);
  Json j = o.json();
  EXPECT_TRUE(j["complete"].get<bool>());
  EXPECT_EQ(j["fan"]["maximal_cones"].size(), 6u);
}

TEST(Cli, PpDivisorOfExampleWeights) {
  Outcome o = run_in_process({"ppdivisor", "--weights", sample("weights_2_1.json"), "--rays", sample("line_rays.json")});
  ASSERT_EQ(o.code, 0) << o.err;
  Json j = o.json();
  EXPECT_EQ(j["divisor"]["terms"].size(), 2u);
  // σ = cone((1,0),(-1,2))
  Json want = Json::array({Json::array({"-1", "2"}), Json::array({"1", "0"})});
  EXPECT_EQ(j["divisor"]["tail"]["generators"], want);
}

TEST(Cli, Setup) {
  Outcome o = run_in_process({"setup", "--weights", sample("plucker_weights_4.json")});
  ASSERT_EQ(o.code, 0) << o.err;
  Json j = o.json();
  EXPECT_TRUE(j.contains("pi"));
}

TEST(Cli, Projectivize) {
  Outcome o = run_in_process({"projectivize", "--weights", sample("weights_3_1.json")});
  ASSERT_EQ(o.code, 0) << o.err;
  EXPECT_TRUE(o.json()["structure"]["pass"].get<bool>());
}

TEST(Cli, VerifyPasses) {
  Outcome o = run_binary("verify --n 4");
  EXPECT_EQ(o.code, 0);
  EXPECT_TRUE(o.json()["pass"].get<bool>());
}

TEST(Cli, LocalCheck) {
  Outcome o = run_in_process({"localcheck", "--n", "4"});
  ASSERT_EQ(o.code, 0);
  Json j = o.json();
  EXPECT_EQ(j["images"].size(), 3u);
}

TEST(Cli, Subdivision) {
  Outcome o = run_in_process({"subdivision", "--weights", sample("plucker_weights_4.json"), "--c", "1,0"});
  ASSERT_EQ(o.code, 0) << o.err;
  EXPECT_TRUE(o.json()["structure"]["pass"].get<bool>());
}

TEST(Cli, BadInputs) {
  EXPECT_EQ(run_binary("fansy --n 9").code, 2);
  EXPECT_EQ(run_binary("fansy --n 4 --method sideways").code, 2);
  EXPECT_EQ(run_binary("bogus").code, 2);
  EXPECT_EQ(run_in_process({"ppdivisor", "--weights", sample("missing.json")}).code, 2);
  EXPECT_EQ(run_in_process({"subdivision", "--weights", sample("plucker_weights_4.json"), "--c", "1"}).code, 2);
  EXPECT_EQ(run_in_process({"tailfan", "--k", "0", "--n", "4"}).code, 2);
}

TEST(Cli, Deterministic) {
  Outcome a = run_binary("fansy --n 5 --method both");
  Outcome b = run_binary("fansy --n 5 --method both");
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
}
