#include "test_main.hpp"

#include <json.hpp>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "ccc/cli.hpp"
#include "ccc/skeleton.hpp"

using namespace ccc;
using cli::RunConfig;

namespace {

const char* kP2 = R"({"rank":2,"max_cones":[[[1,0],[0,1]],[[0,1],[-1,-1]],[[-1,-1],[1,0]]]})";
const char* kP1 = R"({"rank":1,"max_cones":[[[1]],[[-1]]]})";
const char* kMu3 = R"({"rank":1,"max_cones":[[[1]]],"beta":[[3]]})";

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(RunConfig cfg) {
  std::ostringstream out, err;
  int code = cli::run(cfg, out, err);
  return {code, out.str(), err.str()};
}

RunConfig make(const std::string& sub) {
  RunConfig c;
  c.subcommand = sub;
  return c;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::size_t count(const std::string& s, const std::string& needle) {
  std::size_t c = 0;
  for (std::size_t p = s.find(needle); p != std::string::npos; p = s.find(needle, p + 1)) ++c;
  return c;
}

int tool(const std::string& args) {
  const std::string cmd = std::string(CCC_TOOL_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("fan-info reports") {
  auto c = make("fan-info");
  c.inline_json = kP2;
  auto r = run(c);
  CHECK(r.code == cli::kPass);
  CHECK(r.out.rfind("7 cones, smooth, nerve: 3 vertices / 3 edges / 1 triangle\n", 0) == 0);

  c.inline_json = R"({"rank":2,"max_cones":[]})";
  r = run(c);
  CHECK(r.code == cli::kPass);
  CHECK(r.out.rfind("1 cone, smooth, nerve: 1 vertex\n", 0) == 0);

  c.inline_json = R"({"rank":2,"max_cones":[[[1,0],[0,1]],[[1,1],[0,1]]]})";
  r = run(c);
  CHECK(r.code == cli::kInputError);
  CHECK(r.err.find("overlap") != std::string::npos);

  c.inline_json = "{\"rank\":2,\n\"max_cones\":[[[1,0]],]}";
  r = run(c);
  CHECK(r.code == cli::kInputError);
  CHECK(r.err.find("line 2") != std::string::npos);

  c.inline_json = kP2;
  c.format = "json";
  r = run(c);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["cones"] == 7);
  CHECK(j["nerve"] == nlohmann::json({3, 3, 1}));
  // The embedded fan re-parses to the same fan.
  CHECK(fans::stacky_from_json(j["fan"]).fan == fans::stacky_from_json(nlohmann::json::parse(kP2)).fan);
}

TEST_CASE("skeleton output and round trip") {
  auto c = make("skeleton");
  c.inline_json = kP1;
  auto r = run(c);
  REQUIRE(r.code == cli::kPass);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["components"].size() == 3);
  auto sf = fans::stacky_from_json(nlohmann::json::parse(kP1));
  CHECK(skeleton::components_from_json(j) == skeleton::fltz_components(sf));

  c.inline_json = kMu3;
  c.format = "svg";
  r = run(c);
  CHECK(r.code == cli::kPass);
  CHECK(count(r.out, "class=\"character\"") + count(r.out, "class=\"zero-section\"") >= 3);

  c.inline_json = kP2;
  r = run(c);
  CHECK(r.code == cli::kPass);
  CHECK(r.out.find("<svg") != std::string::npos);
  c.format = "json";
  CHECK(nlohmann::json::parse(run(c).out)["components"].size() == 7);
}

TEST_CASE("hom on both sides") {
  auto c = make("hom");
  c.n = 2;
  c.from = "0";
  c.to = "1";
  c.format = "json";
  auto j = nlohmann::json::parse(run(c).out);
  CHECK(j["ext"] == nlohmann::json({3, 0, 0}));

  c.side = "con";
  c.from = "1";
  c.to = "2";
  j = nlohmann::json::parse(run(c).out);
  CHECK(j["ext"] == nlohmann::json({3, 0, 0}));

  c.side = "coh";
  c.inline_json = R"({"rank":1,"max_cones":[[[1]]],"beta":[[4]]})";
  c.from = "1";
  c.to = "3";
  c.bound = 8;
  j = nlohmann::json::parse(run(c).out);
  CHECK(j["dims"] == nlohmann::json({0, 0, 1, 0, 0, 0, 1, 0, 0}));

  c.from = "x";
  CHECK(run(c).code == cli::kInputError);
  c.inline_json.clear();
  c.side = "con";
  c.from = "4";
  CHECK(run(c).code == cli::kInputError);
}

TEST_CASE("verify exit codes") {
  auto c = make("verify");
  for (const char* w : {"ccc", "chambers", "monodromy", "generation", "kappa"}) {
    c.what = w;
    c.n = 2;
    auto r = run(c);
    CAPTURE(w);
    CHECK(r.code == cli::kPass);
    CHECK(r.out.find(": PASS") != std::string::npos);
  }
  c.what = "kappa";
  c.n = 5;
  CHECK(run(c).code == cli::kPass);
  c.inline_json = R"({"rank":2,"max_cones":[[[1,0],[0,1]]],"beta":[[1,1],[-1,1]]})";
  c.format = "json";
  auto j = nlohmann::json::parse(run(c).out);
  CHECK(j["passed"] == true);
  c.what = "nothing";
  CHECK(run(c).code == cli::kInputError);
}

TEST_CASE("quiver output") {
  auto c = make("quiver");
  c.n = 2;
  c.pic = "L,M";
  c.format = "json";
  auto r = run(c);
  REQUIRE(r.code == cli::kPass);
  auto q = skeleton::quiver_from_json(nlohmann::json::parse(r.out));
  CHECK(q.vertices.size() == 7);
  CHECK(q.edges.size() == 9);
  CHECK(skeleton::to_json(q) == nlohmann::json::parse(r.out));
  std::multiset<std::string> labels;
  for (const auto& v : q.vertices) labels.insert(v.label.to_string(q.generator_names));
  CHECK(labels == std::multiset<std::string>{"1", "L", "M", "1", "M", "L^-1 M", "1"});

  c.format = "dot";
  r = run(c);
  CHECK(count(r.out, "->") == 9);

  c.n = 1;
  c.pic = "L";
  c.template_labels = true;
  c.format = "text";
  r = run(c);
  CHECK(r.out == "b -> a : f\nbL -> a : g\n");

  c.n = 2;
  c.pic.clear();
  c.template_labels = false;
  r = run(c);
  CHECK(r.out.rfind("7 vertices, 9 edges\n", 0) == 0);

  c.pic = "L";
  CHECK(run(c).code == cli::kInputError);
  c.pic = "L,2x";
  CHECK(run(c).code == cli::kInputError);
}

TEST_CASE("pic parsing") {
  auto [pic, names] = cli::parse_pic("L, M", 2);
  CHECK(names == std::vector<std::string>{"L", "M"});
  CHECK(pic[1] == picsym::PicMonomial::generator(2, 1));
  auto [same, one] = cli::parse_pic("L,L", 2);
  CHECK(one.size() == 1);
  CHECK(same[0] == same[1]);
  auto [units, none] = cli::parse_pic("1,1", 2);
  CHECK(none.empty());
  CHECK(units[0].is_unit());
}

TEST_CASE("atomic output files") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / ("ccc_cli_test_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  auto c = make("quiver");
  c.n = 2;
  c.output_path = (dir / "q.dot").string();
  auto r = run(c);
  CHECK(r.code == cli::kPass);
  CHECK(r.out.empty());
  CHECK(count(slurp(dir / "q.dot"), "->") == 9);
  std::size_t files = 0;
  for (const auto& e : fs::directory_iterator(dir)) {
    (void)e;
    ++files;
  }
  CHECK(files == 1);
  c.output_path = (dir / "missing" / "q.dot").string();
  CHECK(run(c).code == cli::kInputError);
  fs::remove_all(dir);
}

TEST_CASE("config validation") {
  auto c = make("hom");
  c.bound = 0;
  CHECK(run(c).code == cli::kInputError);
  c = make("fan-info");
  CHECK(run(c).code == cli::kInputError);
  c = make("quiver");
  c.format = "png";
  CHECK(run(c).code == cli::kInputError);
}

TEST_CASE("binary exit codes") {
  CHECK(tool("verify chambers --n 3") == 0);
  CHECK(tool("verify kappa --n 5") == 0);
  CHECK(tool("fan-info --fan '{\"rank\":2,\"max_cones\":[[[1,0],[0,1]],[[1,1],[0,1]]]}'") == 2);
  CHECK(tool("fan-info --fan '{'") == 2);
  CHECK(tool("quiver --n 2 --pic L,M --dot") == 0);
  CHECK(tool("verify") == 2);
  CHECK(tool("--help") == 0);
}
