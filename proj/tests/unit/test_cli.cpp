#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "support/fixtures.hpp"

using nlohmann::json;

namespace {

struct Run {
  int code = -1;
  std::string out;
  std::string err;
};

Run run(const std::string& args) {
  const auto err_path = std::filesystem::temp_directory_path() / "qctx_cli_test_stderr.txt";
  const std::string cmd = std::string(QCTX_CLI_PATH) + " " + args + " 2>" + err_path.string();
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream in(err_path);
  std::stringstream ss;
  ss << in.rdbuf();
  r.err = ss.str();
  return r;
}

std::string data(const std::string& name) { return fx::data_path(name); }

}  // namespace

TEST_CASE("build-poset") {
  const auto two = run("build-poset --rays " + data("dim2.json"));
  CHECK(two.code == 0);
  const auto doc = json::parse(two.out);
  CHECK(doc["contexts"].size() == 3);
  CHECK(doc["dim"] == 2);

  const auto ks = run("build-poset --close --rays " + data("ks18.json"));
  CHECK(ks.code == 0);
  CHECK(json::parse(ks.out)["contexts"].size() >= 10);

  const auto empty = run("build-poset --rays " + data("empty.json"));
  CHECK(empty.code == 0);
  CHECK(json::parse(empty.out)["contexts"].size() == 1);

  const auto bad = run("build-poset --rays " + data("bad_basis.json"));
  CHECK(bad.code == 2);
  CHECK(bad.err.find("basis 4") != std::string::npos);
  CHECK(json::parse(bad.err).contains("error"));
}

TEST_CASE("a written poset reads back") {
  const auto path = std::filesystem::temp_directory_path() / "qctx_cli_test_poset.json";
  CHECK(run("build-poset --close --rays " + data("ks18.json") + " --out " + path.string()).code == 0);
  const auto again = run("build-poset --poset " + path.string());
  CHECK(again.code == 0);
  const auto a = json::parse(again.out);
  const auto b = qctx::read_json_file(path);
  CHECK(a["contexts"] == b["contexts"]);
  CHECK(a["order"] == b["order"]);
  CHECK(run("ks-check --no-close --poset " + path.string()).code == 0);
}

TEST_CASE("valuate") {
  const auto ok = run("valuate --poset " + data("diag3_poset.json") + " --state basis-0 --r 1");
  CHECK(ok.code == 0);
  const auto bad = run("valuate --poset " + data("diag3_poset.json") + " --state diag:0.4,0.4,0.2 --r 0.3");
  CHECK(bad.code == 1);
  const auto doc = json::parse(bad.out);
  bool found = false;
  for (const auto& p : doc["axioms"]) {
    if (p["name"] == "exclusivity") {
      found = true;
      CHECK(p["holds"] == false);
      CHECK(p["witness"]["p"] == json::array({0}));
      CHECK(p["witness"]["q"] == json::array({1}));
    }
  }
  CHECK(found);
  CHECK(run("valuate --no-exclusivity --poset " + data("diag3_poset.json") + " --state diag:0.4,0.4,0.2 --r 0.3")
            .code == 0);
  CHECK(run("valuate --backend float --poset " + data("diag3_poset.json") + " --state maximally-mixed").code == 0);
  CHECK(run("valuate --poset " + data("diag3_poset.json") + " --state basis-7").code == 2);
  CHECK(run("valuate --poset " + data("diag3_poset.json") + " --state basis-0 --r 1.5").code == 2);
  CHECK(run("valuate --poset " + data("diag3_poset.json") + " --state diag:0.5,0.5").code == 2);
}

TEST_CASE("intervals") {
  const auto failing = run("intervals --poset " + data("diag3_poset.json") + " --state diag:0.5,0.3,0.2 --r 0.6");
  CHECK(failing.code == 1);
  const auto doc = json::parse(failing.out);
  CHECK(doc["global_element"]["matching"]["holds"] == false);
  CHECK(run("intervals --poset " + data("diag3_poset.json") + " --state basis-1").code == 0);
}

TEST_CASE("ks-check") {
  const auto ks = run("ks-check --rays " + data("ks18.json"));
  CHECK(ks.code == 0);
  const auto doc = json::parse(ks.out);
  CHECK(doc["section"].is_null());
  CHECK(doc["nodes_explored"].get<std::uint64_t>() > 0);
  CHECK(doc["elapsed_ms"].is_null());
  CHECK(json::parse(run("ks-check --timing --rays " + data("ks18.json")).out)["elapsed_ms"].is_number());

  const auto two = run("ks-check --rays " + data("dim2.json"));
  CHECK(two.code == 0);
  CHECK_FALSE(json::parse(two.out)["section"].is_null());
  CHECK(run("ks-check --rays missing.json").code == 2);
}

TEST_CASE("verify-axioms and report") {
  const auto path = std::filesystem::temp_directory_path() / "qctx_cli_test_axioms.json";
  const auto v = run("verify-axioms --samples 3 --seed 5 --out " + path.string());
  CHECK(v.code == 0);
  const auto r = run("report --in " + path.string());
  CHECK(r.code == 0);
  CHECK(r.out.find("PASS") != std::string::npos);
  CHECK(r.out.find("FAIL") == std::string::npos);
  CHECK(run("report --in " + data("nothing.json")).code == 2);
}

TEST_CASE("unknown options and commands are usage errors") {
  CHECK(run("valuate --bogus").code == 2);
  CHECK(run("frobnicate").code == 2);
  CHECK(run("valuate --poset " + data("diag3_poset.json") + " --state basis-0 --backend quantum").code == 2);
}

TEST_CASE("repeated runs are byte-identical") {
  for (const std::string& args :
       {"build-poset --close --rays " + data("ks18.json"),
        "valuate --poset " + data("diag3_poset.json") + " --state diag:0.4,0.4,0.2 --r 0.3",
        "intervals --poset " + data("diag3_poset.json") + " --state diag:0.5,0.3,0.2 --r 0.6",
        "ks-check --rays " + data("ks18.json"), std::string("verify-axioms --samples 2 --seed 11")}) {
    const auto a = run(args);
    const auto b = run(args);
    CHECK(a.code == b.code);
    CHECK(a.out == b.out);
    CHECK_FALSE(a.out.empty());
  }
}
