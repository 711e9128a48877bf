#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "doctest.h"
#include "json.hpp"

namespace {

struct Outcome {
  int code;
  std::string text;
};

Outcome run(std::vector<std::string> args) {
  args.insert(args.begin(), "k3");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  const int code = k3::cli::run(static_cast<int>(argv.size()), argv.data(), out);
  return {code, out.str()};
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("agm fixed point") {
    const auto r = run({"agm", "d4", "--c", "1,1,1,1"});
    CHECK(r.code == 0);
    const auto j = nlohmann::json::parse(r.text);
    CHECK(j["result"]["limit"] == 1.0);
    CHECK(j["pass"] == true);
  }

  TEST_CASE("eval fs at the origin") {
    const auto r = run({"eval", "fs", "--z", "0,0,0,0"});
    CHECK(r.code == 0);
    const auto j = nlohmann::json::parse(r.text);
    CHECK(j["result"]["value"]["re"] == 1.0);
    CHECK(j["result"]["value"]["im"] == 0.0);
  }

  TEST_CASE("schema and determinism") {
    const std::vector<std::string> args{"verify", "agm-borchardt", "--c", "8,4,2,1"};
    const auto a = run(args), b = run(args);
    CHECK(a.code == 0);
    CHECK(a.text == b.text);
    const auto j = nlohmann::json::parse(a.text);
    for (const char* key : {"op", "input", "result", "diagnostics", "pass"}) CHECK(j.contains(key));
  }

  TEST_CASE("csv output") {
    const auto r = run({"--format", "csv", "verify", "gauss", "--x", "0.3"});
    CHECK(r.code == 0);
    CHECK(r.text.rfind("op,kind,key,value_re,value_im,ref_re,ref_im,abs,rel,tol,pass", 0) == 0);
  }

  TEST_CASE("exit codes") {
    CHECK(run({"verify", "nonsense"}).code == 2);
    CHECK(run({"--precision", "8", "eval", "fs", "--z", "0,0,0,0"}).code == 2);
    const auto bad = run({"periods", "--z", "0.05,0.02,0.03,0.04"});
    CHECK(bad.code == 3);
    CHECK(nlohmann::json::parse(bad.text)["error"]["code"] == "CoordsOutOfDomain");
    // A tolerance no implementation can meet turns a pass into a failure.
    CHECK(run({"--tol", "gauss=0", "verify", "gauss", "--x", "0.8"}).code == 1);
  }

  TEST_CASE("sweep is reproducible and covers every op") {
    const std::vector<std::string> args{"sweep", "verify-all", "--seed", "5", "--n", "1"};
    const auto a = run(args), b = run(args);
    CHECK(a.text == b.text);
    CHECK(a.code == 0);
    std::istringstream lines(a.text);
    std::string line;
    int count = 0;
    while (std::getline(lines, line)) ++count;
    CHECK(count >= 18);
  }
}
