#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct Run {
  int code = -1;
  std::string out;
};

Run sofic(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + (env.empty() ? "" : " ") + "'" SOFIC_CLI_PATH "' " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

fs::path tmp(const std::string& name) {
  const fs::path dir(SOFIC_TEST_TMP);
  fs::create_directories(dir);
  return dir / name;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void spit(const fs::path& p, const std::string& text) { std::ofstream(p, std::ios::binary) << text; }

TEST_CASE("certify z then verify passes") {
  const auto cert = tmp("z100.json");
  REQUIRE(sofic("certify --family z --folner 100 --radius 2 -o " + cert.string()).code == 0);
  const Run v = sofic("verify --eps 1e-9 --delta 1 " + cert.string());
  CHECK(v.code == 0);
  const json report = json::parse(v.out);
  CHECK(report["passed"] == true);
  CHECK(report["defect"]["exact"] == "0");
  CHECK(report["separation"]["exact"] == "1");
}

TEST_CASE("tampered certificate fails with a worst pair") {
  const auto cert = tmp("z10.json");
  REQUIRE(sofic("certify --family z --folner 10 --radius 2 -o " + cert.string()).code == 0);
  json doc = json::parse(slurp(cert));
  std::swap(doc["map"]["a"][0], doc["map"]["a"][1]);
  const auto bad = tmp("z10_bad.json");
  spit(bad, doc.dump());
  const Run v = sofic("verify --eps 1e-9 --delta 1 " + bad.string());
  CHECK(v.code == 1);
  const json report = json::parse(v.out);
  CHECK(report["passed"] == false);
  CHECK(report["defect"].contains("worst_pair"));
  CHECK(report["defect"]["worst_pair"]["g"] == "a");
}

TEST_CASE("malformed input and usage errors exit 2") {
  const auto junk = tmp("junk.json");
  spit(junk, "{\"schema\": ");
  CHECK(sofic("verify --eps 1e-9 --delta 1 " + junk.string()).code == 2);
  const auto wrong = tmp("wrong_schema.json");
  spit(wrong, R"({"schema":"other/v9"})");
  CHECK(sofic("verify --eps 1e-9 --delta 1 " + wrong.string()).code == 2);
  CHECK(sofic("verify --eps 1e-9 --delta 1 " + tmp("missing.json").string()).code == 2);
  CHECK(sofic("frobnicate").code == 2);
  CHECK(sofic("").code == 2);
  CHECK(sofic("certify --family nope --folner 3").code == 2);
  CHECK(sofic("certify --family z --folner 3 -o /nonexistent/dir/x.json").code == 2);
}

TEST_CASE("batch verification merges reports in argument order") {
  const auto good = tmp("batch_good.json");
  REQUIRE(sofic("certify --family heisenberg --folner 4 --radius 1 -o " + good.string()).code == 0);
  const auto bad = tmp("z10_bad.json");
  const std::string files = good.string() + " " + bad.string() + " " + good.string();
  const Run one = sofic("verify --jobs 1 " + files);
  const Run many = sofic("verify --jobs 3 " + files);
  CHECK(one.code == 1);
  CHECK(many.code == 1);
  CHECK(one.out == many.out);
  const json merged = json::parse(many.out);
  REQUIRE(merged["reports"].size() == 3);
  CHECK(merged["reports"][0]["passed"] == true);
  CHECK(merged["reports"][1]["passed"] == false);
  CHECK(merged["reports"][2]["passed"] == true);
}

TEST_CASE("demo sinfty") {
  const Run r = sofic("demo sinfty --k 3");
  CHECK(r.code == 0);
  CHECK(r.out.find("0.1875") != std::string::npos);
  CHECK(r.out.find("0.5625") != std::string::npos);
  const json doc = json::parse(sofic("demo sinfty --k 3 --json").out);
  CHECK(doc["dx"] == "3/16");
  CHECK(doc["dconj"] == "9/16");
}

TEST_CASE("identical arguments give byte-identical artifacts") {
  const std::string certs[] = {"--family z --folner 20 --radius 3", "--family z2 --folner 5 --radius 2",
                               "--family heisenberg --folner 4 --radius 2", "--family free --radius 1",
                               "--family z --modulus 7 --radius 3"};
  for (const auto& args : certs) {
    const auto a = tmp("det_a.json");
    const auto b = tmp("det_b.json");
    REQUIRE(sofic("certify " + args + " -o " + a.string()).code == 0);
    REQUIRE(sofic("certify " + args + " -o " + b.string()).code == 0);
    CHECK(slurp(a) == slurp(b));
    CHECK(sofic("certify " + args).out == slurp(a));
  }
  CHECK(sofic("demo amplify --seed 11 --rank 3").out == sofic("demo amplify --seed 11 --rank 3").out);
  CHECK(sofic("demo amplify --seed 11 --rank 3").out != sofic("demo amplify --seed 12 --rank 3").out);
  CHECK(sofic("paradox --radius 3 --matching-k 2").out == sofic("paradox --radius 3 --matching-k 2").out);
}

TEST_CASE("every emitted certificate re-verifies with its recorded parameters") {
  const std::string certs[] = {"--family z --folner 30 --radius 2", "--family z2 --folner 6 --radius 2",
                               "--family heisenberg --folner 3 --radius 2", "--family free --radius 2",
                               "--family z --modulus 11 --radius 4", "--family zd --rank 3 --folner 3 --radius 1"};
  for (const auto& args : certs) {
    const auto c = tmp("recorded.json");
    REQUIRE(sofic("certify " + args + " -o " + c.string()).code == 0);
    const json doc = json::parse(slurp(c));
    CHECK(doc["provenance"].get<std::string>().find("verify: eps=") != std::string::npos);
    CHECK(sofic("verify " + c.string()).code == 0);
    const auto u = tmp("recorded_u.json");
    REQUIRE(sofic("to-unitary " + c.string() + " -o " + u.string()).code == 0);
    CHECK(sofic("verify " + u.string()).code == 0);
  }
  const auto big = tmp("big.json");
  REQUIRE(sofic("certify --family heisenberg --folner 6 --radius 2 -o " + big.string()).code == 0);
  CHECK(sofic("verify " + big.string()).code == 0);
  CHECK(sofic("to-unitary " + big.string()).code == 2);
  const auto small = tmp("small.json");
  REQUIRE(sofic("certify --family z --modulus 9 --radius 3 -o " + small.string()).code == 0);
  const auto amp = tmp("small_amp.json");
  REQUIRE(sofic("amplify --times 1 " + small.string() + " -o " + amp.string()).code == 0);
  CHECK(sofic("verify " + amp.string()).code == 0);
}

TEST_CASE("finite table certificates") {
  // Z/2 x Z/2 with generators 1 and 2.
  const auto table = tmp("klein.json");
  spit(table, R"({"order":4,"identity":0,"table":[[0,1,2,3],[1,0,3,2],[2,3,0,1],[3,2,1,0]],"generators":[1,2],"names":["a","b"]})");
  const auto c = tmp("klein_cert.json");
  REQUIRE(sofic("certify --family finite --table " + table.string() + " --radius 2 -o " + c.string()).code == 0);
  const Run v = sofic("verify --eps 1e-9 --delta 1 " + c.string());
  CHECK(v.code == 0);
  const auto broken = tmp("broken_table.json");
  spit(broken, R"({"order":2,"identity":0,"table":[[0,1],[0,1]]})");
  CHECK(sofic("certify --family finite --table " + broken.string()).code == 2);
}

TEST_CASE("amplify respects the rank cap") {
  const auto c = tmp("free1.json");
  REQUIRE(sofic("certify --family free --radius 1 -o " + c.string()).code == 0);
  CHECK(sofic("amplify --times 1 " + c.string()).code == 2);
  const Run r = sofic("amplify --times 1 " + c.string(), "SOFIC_RANK_CAP=576");
  CHECK(r.code == 0);
  const json report = json::parse(r.out);
  CHECK(report["outputRank"] == 576);
  CHECK(report["maxError"].get<double>() < 1e-9);
}

TEST_CASE("graph round trip and local match fraction") {
  const auto c = tmp("z100g.json");
  REQUIRE(sofic("certify --family z --folner 100 --radius 2 -o " + c.string()).code == 0);
  const auto g = tmp("g.json");
  const auto dot = tmp("g.dot");
  REQUIRE(sofic("graph " + c.string() + " -o " + g.string()).code == 0);
  REQUIRE(sofic("graph " + c.string() + " -o " + dot.string()).code == 0);
  CHECK(slurp(dot).rfind("digraph", 0) == 0);
  const json m = json::parse(sofic("match-fraction " + g.string() + " --family z --radius 3").out);
  CHECK(m["fraction"] == "1");
  CHECK(m["total"] == 100);
  const auto back = tmp("back.json");
  REQUIRE(sofic("from-graph " + g.string() + " --family z --radius 2 -o " + back.string()).code == 0);
  CHECK(json::parse(slurp(back))["map"] == json::parse(slurp(c))["map"]);
  CHECK(sofic("match-fraction " + g.string() + " --family free --radius 2").code == 2);
}

TEST_CASE("hall and paradox exit codes") {
  const auto ok = tmp("hall_ok.json");
  spit(ok, R"({"left":1,"right":2,"adjacency":[[0,1]]})");
  const Run feasible = sofic("hall " + ok.string());
  CHECK(feasible.code == 0);
  CHECK(json::parse(feasible.out)["feasible"] == true);
  const auto bad = tmp("hall_bad.json");
  spit(bad, R"({"left":2,"right":3,"adjacency":[[0,1],[1,2]]})");
  const Run infeasible = sofic("hall " + bad.string());
  CHECK(infeasible.code == 1);
  CHECK(json::parse(infeasible.out)["witness"] == json::array({0, 1}));
  const auto range = tmp("hall_range.json");
  spit(range, R"({"left":1,"right":2,"adjacency":[[5]]})");
  CHECK(sofic("hall " + range.string()).code == 2);

  const Run p = sofic("paradox --radius 3 --matching-k 2");
  CHECK(p.code == 0);
  const json doc = json::parse(p.out);
  CHECK(doc["decomposition"]["ok"] == true);
  CHECK(doc["matching"]["feasible"] == true);
}

TEST_CASE("ball and folner reports") {
  const json b = json::parse(sofic("ball --family free --radius 3").out);
  CHECK(b["size"] == 53);
  CHECK(b["sphereSizes"] == json::array({1, 4, 12, 36}));
  const json z2 = json::parse(sofic("ball --family z2 --radius 4").out);
  CHECK(z2["size"] == 41);
  const json f = json::parse(sofic("folner --family z -L 10").out);
  CHECK(f["defect"] == "1/5");
  const json free = json::parse(sofic("folner --family free -L 2").out);
  CHECK(free["defect"] == "18/17");
}

}  // namespace
