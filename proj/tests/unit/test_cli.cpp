#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "cli.hpp"
#include "doctest.h"
#include "hurwitz_cache.hpp"
#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using sslforms::HurwitzTable;
namespace cli = sslforms::cli;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

Result run_nocache(std::vector<std::string> args) {
  args.push_back("--no-cache");
  return run(std::move(args));
}

fs::path fresh_dir(const std::string& tag) {
  std::random_device rd;
  const fs::path dir = fs::temp_directory_path() / ("sslforms-test-" + tag + "-" + std::to_string(rd()));
  fs::remove_all(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("ssp") {
  auto r = run_nocache({"ssp", "--p", "5"});
  CHECK(r.code == cli::kOk);
  CHECK(r.out.find("S_5 = x, S~_5 = 1") != std::string::npos);

  r = run_nocache({"ssp", "--p", "29"});
  CHECK(r.code == cli::kOk);
  CHECK(r.out.find("S_29 = x*(x+4)*(x+27)") != std::string::npos);

  r = run_nocache({"ssp", "--p", "37", "--method", "oracle", "--families"});
  CHECK(r.code == cli::kOk);
  CHECK(r.out.find("(x+29)*(x^2+31*x+31)") != std::string::npos);

  CHECK(run_nocache({"ssp", "--p", "4"}).code == cli::kInvalidInput);
  CHECK(run_nocache({"ssp", "--p", "1009", "--method", "oracle"}).code == cli::kInvalidInput);
  CHECK(run_nocache({"ssp", "--p", "1009", "--method", "deligne"}).code == cli::kOk);
  CHECK(run_nocache({"ssp", "--p", "7", "--method", "neither"}).code == cli::kInvalidInput);
}

TEST_CASE("trace") {
  auto r = run_nocache({"trace", "--k", "24", "--n", "1", "--exact"});
  CHECK(r.code == cli::kOk);
  CHECK(r.out.find('2') != std::string::npos);

  r = run_nocache({"trace", "--k", "2196", "--n", "2", "--mod", "13", "--format", "json"});
  REQUIRE(r.code == cli::kOk);
  CHECK(json::parse(r.out)["payload"]["value"] == 2);

  r = run_nocache({"trace", "--k", "2196", "--n", "2", "--format", "json"});
  REQUIRE(r.code == cli::kOk);
  const std::string v = json::parse(r.out)["payload"]["value"];
  CHECK(v.size() == 329);
  CHECK(v.starts_with("930885"));
  CHECK(v.ends_with("406856"));

  CHECK(run_nocache({"trace", "--k", "13", "--n", "1"}).code == cli::kInvalidInput);
  CHECK(run_nocache({"trace", "--k", "24", "--n", "0"}).code == cli::kInvalidInput);
  CHECK(run_nocache({"trace", "--k", "24", "--n", "2", "--mod", "12"}).code == cli::kInvalidInput);
  CHECK(run_nocache({"trace", "--k", "24", "--n", "2", "--mod", "13", "--exact"}).code == cli::kInvalidInput);
}

TEST_CASE("divpoly") {
  auto r = run_nocache({"divpoly", "--form", "traceform", "--k", "2196", "--p", "13"});
  CHECK(r.code == cli::kOk);
  CHECK(r.out.find("(x+8)^182") != std::string::npos);
  CHECK(r.out.find("guaranteed 182, observed 182") != std::string::npos);

  r = run_nocache({"divpoly", "--form", "hatform", "--k", "724", "--p", "19", "--format", "json"});
  REQUIRE(r.code == cli::kOk);
  const auto doc = json::parse(r.out);
  CHECK(doc["payload"]["guaranteed"] == 20);
  CHECK(doc["payload"]["observed"] == 48);

  r = run_nocache({"divpoly", "--form", "traceform", "--k", "12", "--p", "5", "--format", "json"});
  REQUIRE(r.code == cli::kOk);
  CHECK(json::parse(r.out)["payload"]["F"]["coefficients"] == json::array({1}));

  CHECK(run_nocache({"divpoly", "--form", "traceform", "--k", "4", "--p", "5"}).code == cli::kOk);
  CHECK(run_nocache({"divpoly", "--form", "hatform", "--k", "722", "--p", "19"}).code == cli::kInvalidInput);
  CHECK(run_nocache({"divpoly", "--form", "traceform", "--k", "13", "--p", "5"}).code == cli::kInvalidInput);
}

TEST_CASE("verify and scan") {
  auto r = run_nocache({"verify", "--theorem", "2.1", "--p", "5", "--case", "iii", "--format", "json"});
  REQUIRE(r.code == cli::kOk);
  const auto doc = json::parse(r.out);
  CHECK(doc["payload"]["pass"] == true);
  bool found = false;
  for (const auto& c : doc["payload"]["claims"]) found = found || (c["k1"] == 24 && c["k2"] == 28);
  CHECK(found);

  CHECK(run_nocache({"verify", "--theorem", "4.3", "--p", "17", "--k", "582"}).code == cli::kOk);
  CHECK(run_nocache({"verify", "--theorem", "4.2", "--p", "13", "--k", "2196"}).code == cli::kOk);
  CHECK(run_nocache({"verify", "--theorem", "2.2", "--p", "19", "--k", "4", "--m", "2"}).code == cli::kOk);
  CHECK(run_nocache({"verify", "--theorem", "2.4", "--p", "7"}).code == cli::kOk);
  CHECK(run_nocache({"verify", "--theorem", "2.1", "--p", "23", "--case", "i", "--k1", "28", "--c", "1"}).code ==
        cli::kOk);
  CHECK(run_nocache({"verify", "--theorem", "2.1", "--p", "13", "--case", "iii"}).code == cli::kInvalidInput);
  CHECK(run_nocache({"verify", "--theorem", "9.9", "--p", "13"}).code == cli::kInvalidInput);

  r = run_nocache({"scan", "--p", "13", "--kmax", "300", "--format", "json"});
  CHECK(r.code == cli::kOk);
  CHECK(json::parse(r.out)["payload"]["unpredicted"] == 0);
}

TEST_CASE("argument handling") {
  CHECK(run({"--help"}).code == cli::kOk);
  CHECK(run({}).code == cli::kInvalidInput);
  CHECK(run({"ssp"}).code == cli::kInvalidInput);
  CHECK(run({"ssp", "--p", "5", "--bogus"}).code == cli::kInvalidInput);
  CHECK(run({"ssp", "--p", "5", "--format", "xml"}).code == cli::kInvalidInput);
}

TEST_CASE("json output") {
  const std::vector<std::vector<std::string>> invocations = {
      {"ssp", "--p", "37"},
      {"trace", "--k", "28", "--n", "7", "--mod", "5"},
      {"divpoly", "--form", "traceform", "--k", "76", "--p", "5"},
      {"verify", "--theorem", "2.1", "--p", "5", "--case", "ii", "--cmax", "3"},
      {"scan", "--p", "5", "--kmax", "80"},
  };
  for (auto args : invocations) {
    args.insert(args.end(), {"--format", "json", "--no-cache"});
    const auto a = run(args);
    const auto b = run(args);
    CAPTURE(args[0]);
    REQUIRE(a.code == cli::kOk);
    const auto da = json::parse(a.out);
    CHECK(da.dump(2) + "\n" == a.out);
    CHECK(da["command"] == args[0]);
    CHECK(da["exit_code"] == 0);
    CHECK(da.contains("timing"));
    CHECK(da.contains("cache"));
    CHECK(da["payload"].dump() == json::parse(b.out)["payload"].dump());
  }
}

TEST_CASE("hurwitz cache file format") {
  const HurwitzTable t(40);
  const std::string text = cli::format_cache(t);
  CHECK(text.starts_with("hurwitz12,v1,max_n=40\n0,-1\n1,0\n2,0\n3,4\n4,6\n"));
  CHECK(cli::parse_cache(text).values() == t.values());

  CHECK_THROWS_AS(cli::parse_cache("garbage\n"), std::runtime_error);
  CHECK_THROWS_AS(cli::parse_cache("hurwitz12,v1,max_n=2\n0,-1\n1,0\n2,0"), std::runtime_error);
  CHECK_THROWS_AS(cli::parse_cache("hurwitz12,v1,max_n=2\n0,-1\n2,0\n1,0\n"), std::runtime_error);
  CHECK_THROWS_AS(cli::parse_cache("hurwitz12,v1,max_n=3\n0,-1\n1,0\n2,0\n"), std::runtime_error);
  CHECK_THROWS_AS(cli::parse_cache("hurwitz12,v1,max_n=1\n0,-1\n1,5\n"), std::runtime_error);
  CHECK_THROWS_AS(cli::parse_cache("hurwitz12,v1,max_n=1\n0,-1\n1,x\n"), std::runtime_error);
}

TEST_CASE("hurwitz cache on disk") {
  const fs::path dir = fresh_dir("cache");
  const fs::path file = dir / cli::kCacheFileName;

  SUBCASE("first run creates the file") {
    const auto r = run({"divpoly", "--form", "traceform", "--k", "2196", "--p", "13", "--cache-dir", dir.string(),
                        "--format", "json"});
    REQUIRE(r.code == cli::kOk);
    REQUIRE(fs::exists(file));
    const auto table = cli::parse_cache(slurp(file));
    CHECK(table.max_n() >= 4 * 183);
    const auto doc = json::parse(r.out);
    CHECK(doc["cache"]["enabled"] == true);

    const auto again = run({"divpoly", "--form", "traceform", "--k", "2196", "--p", "13", "--cache-dir", dir.string(),
                            "--format", "json"});
    CHECK(json::parse(again.out)["cache"]["hit"] == true);
    CHECK(json::parse(again.out)["payload"] == doc["payload"]);
    const auto before = slurp(file);
    CHECK(run({"trace", "--k", "24", "--n", "2", "--cache-dir", dir.string()}).code == cli::kOk);
    CHECK(slurp(file) == before);
  }

  SUBCASE("corrupt header is replaced with a warning") {
    fs::create_directories(dir);
    {
      std::ofstream out(file, std::ios::binary);
      out << "not a cache\n0,-1\n";
    }
    const auto r = run({"divpoly", "--form", "traceform", "--k", "28", "--p", "5", "--cache-dir", dir.string()});
    CHECK(r.code == cli::kOk);
    CHECK(r.err.find("warning") != std::string::npos);
    CHECK_NOTHROW(cli::parse_cache(slurp(file)));
  }

  SUBCASE("no-cache leaves the directory alone") {
    const auto r = run({"divpoly", "--form", "traceform", "--k", "28", "--p", "5", "--cache-dir", dir.string(),
                        "--no-cache", "--format", "json"});
    CHECK(r.code == cli::kOk);
    CHECK_FALSE(fs::exists(dir));
    CHECK(json::parse(r.out)["cache"]["enabled"] == false);
  }

  SUBCASE("environment variable supplies the default directory") {
    ::setenv(cli::kCacheDirEnv, dir.string().c_str(), 1);
    CHECK(cli::default_cache_dir() == dir);
    CHECK(run({"trace", "--k", "24", "--n", "3", "--mod", "5"}).code == cli::kOk);
    CHECK(fs::exists(file));
    ::unsetenv(cli::kCacheDirEnv);
  }

  fs::remove_all(dir);
}
