#include "cli.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

using recordlab::cli::run;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result call(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("documented invocations") {
  Result v = call({"constants", "--which", "vtilde", "--d", "2"});
  CHECK(v.code == 0);
  CHECK(v.out.find("0.6846889280") != std::string::npos);
  Result e = call({"exact", "--model", "simplex", "--d", "2", "--stat", "chain", "--n", "3"});
  CHECK(e.code == 0);
  CHECK(e.out.find("23/18") != std::string::npos);
  Result h = call({"run", "--help"});
  CHECK(h.code == 0);
  CHECK(h.out.find("--reps") != std::string::npos);
  CHECK(call({"--version"}).out.find("1.0.0") != std::string::npos);
}

TEST_CASE("usage errors exit 2") {
  CHECK(call({"simulate", "--bogus"}).code == 2);
  CHECK(call({}).code == 2);
  CHECK(call({"teleport"}).code == 2);
  CHECK(call({"simulate", "--model", "ball"}).code == 2);
  CHECK(call({"simulate", "--seed", "12x"}).code == 2);
  CHECK(call({"exact", "--stat", "pareto"}).code == 2);
  CHECK(call({"figure", "other"}).code == 2);
  CHECK(call({"constants", "--which", "w"}).code == 2);
  CHECK(call({"constants", "--d", "1"}).code == 2);
  CHECK(call({"validate", "--only", "12"}).code == 2);
}

TEST_CASE("config header") {
  Result c = call({"exact", "--d", "2", "--n", "3", "--out", "csv", "--seed", "0x10"});
  CHECK(c.out.rfind("# program=recordlab version=1.0.0 command=exact", 0) == 0);
  CHECK(c.out.find("seed=16") != std::string::npos);
  Result j = call({"simulate", "--d", "2", "--n", "50", "--reps", "100", "--seed", "7"});
  REQUIRE(j.code == 0);
  auto doc = nlohmann::json::parse(j.out);
  CHECK(doc["config"]["seed"] == 7);
  CHECK(doc["config"]["version"] == "1.0.0");
  CHECK(doc["rows"].size() == 4);
}

TEST_CASE("identical invocations give identical bytes") {
  std::vector<std::string> args{"simulate", "--model", "cube", "--d", "3", "--n", "100", "--n", "400", "--reps", "200"};
  Result a = call(args), b = call(args);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  args.push_back("--threads");
  args.push_back("2");
  CHECK(call(args).out.substr(a.out.find("\"reps_done\"")) == a.out.substr(a.out.find("\"reps_done\"")));
}

TEST_CASE("subcommand outputs") {
  Result t = call({"constants", "--which", "v,vtilde,K", "--dmax", "4"});
  CHECK(t.code == 0);
  CHECK(t.out.find("d,v,v_err,v_10,vtilde,vtilde_err,vtilde_10,K,K_err,K_10\n") != std::string::npos);
  CHECK(t.out.find("\n4,3.977972744219") != std::string::npos);
  Result z = call({"zeros", "--dmax", "6"});
  CHECK(z.code == 0);
  CHECK(z.out.find("d,re,im\n2,-1.5,0\n") != std::string::npos);
  Result f = call({"figure", "dom-rec"});
  CHECK(f.code == 0);
  CHECK(f.out.find("\n2,1.23370055013617,") != std::string::npos);
  Result a = call({"asymptotic", "--d", "2", "--n", "10000"});
  CHECK(a.code == 0);
  auto doc = nlohmann::json::parse(a.out);
  CHECK(doc["rows"][0]["mean"].get<double>() == doctest::Approx(344.703214144226));
  Result s = call({"asymptotic", "--summary", "--d", "3"});
  CHECK(nlohmann::json::parse(s.out)["rows"].size() == 8);
  Result k = call({"exact", "--model", "cube", "--d", "2", "--kernel", "--n", "4", "--out", "csv"});
  CHECK(k.out.find("3,0.0625,1/16") != std::string::npos);
  Result dm = call({"exact", "--stat", "dominating", "--model", "cube", "--n", "3"});
  CHECK(dm.out.find("49/36") != std::string::npos);
}

TEST_CASE("thread count from the environment") {
  setenv("RECORDLAB_THREADS", "abc", 1);
  CHECK(call({"simulate", "--n", "20", "--reps", "10"}).code == 2);
  setenv("RECORDLAB_THREADS", "1", 1);
  CHECK(call({"simulate", "--n", "20", "--reps", "10"}).code == 0);
  unsetenv("RECORDLAB_THREADS");
}

TEST_CASE("validate subset") {
  Result v = call({"validate", "--only", "2", "6"});
  CHECK(v.code == 0);
  CHECK(v.out.find("criterion  2 PASS") != std::string::npos);
  CHECK(v.out.find("criterion  6 PASS") != std::string::npos);
}
