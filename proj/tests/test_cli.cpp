#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "permgen/cli.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "permgen");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = permgen::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path write_file(const std::string& name, const std::string& text) {
  const fs::path dir = fs::temp_directory_path() / "permgen_cli_test";
  fs::create_directories(dir);
  const fs::path p = dir / name;
  std::ofstream(p) << text;
  return p;
}

}  // namespace

TEST_CASE("analyze reports the effect of an addition") {
  const fs::path f = write_file("triangle.csv", "x,y\n0,0\n0,1\n1,0\n");
  const Result r = invoke({"analyze", f.string(), "--add", "1,1"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["permissible"]["empty"] == true);
  CHECK(j["addition"]["case"] == "NotGenerable");
  CHECK(j["addition"]["before"]["empty"] == true);
  const auto v = j["addition"]["after"]["vertices"];
  REQUIRE(v.size() == 1);
  CHECK(v[0][0].get<double>() == doctest::Approx(0.5));
  CHECK(v[0][1].get<double>() == doctest::Approx(0.5));
  CHECK(j["addition"]["strictly_expanded"] == true);
}

TEST_CASE("analyze attributes a violation to both works") {
  const fs::path f = write_file("pair.csv", "0\n1\n");
  const Result r = invoke({"analyze", f.string(), "--query", "0.5"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["permissible"]["empty"] == true);
  CHECK(j["query"]["classification"] == "Violation");
  CHECK(j["query"]["infringed_indices"] == nlohmann::json::array({0, 1}));

  const Result far = invoke({"analyze", f.string(), "--query", "40"});
  CHECK(nlohmann::json::parse(far.out)["query"]["classification"] == "NotGenerable");
}

TEST_CASE("analyze grid counts and collections") {
  const fs::path f = write_file("four.csv", "0\n1\n2\n3\n");
  const Result r = invoke({"analyze", f.string(), "--grid", "7", "--collection", "[[0,1],[3]]"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["grid"]["permissible"].get<int>() + j["grid"]["violation"].get<int>() +
            j["grid"]["not_generable"].get<int>() ==
        7);
  CHECK(j["groupwise"]["permissible"]["vertices"] == nlohmann::json::parse("[[2.0]]"));
}

TEST_CASE("simulate writes reproducible csv") {
  const Result a = invoke({"simulate", "gauss:d=2", "conv", "--nmax", "60", "--checkpoints", "20,60", "--seeds", "3"});
  const Result b = invoke({"simulate", "--dist", "gauss:d=2", "--nmax", "60", "--checkpoints", "20,60", "--seeds", "3"});
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.rfind("seed,n,vol_generable", 0) == 0);

  const Result single = invoke({"simulate", "gauss:d=2", "--nmax", "1", "--seeds", "1"});
  REQUIRE(single.code == 0);
  CHECK(single.out.find("0,1,0,0,0,1,0\n") != std::string::npos);
}

TEST_CASE("exit codes") {
  CHECK(invoke({"props", "--trials", "0"}).code == permgen::cli::kInputError);
  CHECK(invoke({"props", "nonsense"}).code == permgen::cli::kInputError);
  CHECK(invoke({"props", "appendixA", "--trials", "3"}).code == permgen::cli::kOk);
  CHECK(invoke({"bogus"}).code == permgen::cli::kInputError);
  CHECK(invoke({"--help"}).code == permgen::cli::kOk);
  CHECK(invoke({"analyze", "/nonexistent/file.csv"}).code == permgen::cli::kInputError);

  const fs::path f = write_file("dup.csv", "0,0\n0,0\n");
  const Result dup = invoke({"analyze", f.string()});
  CHECK(dup.code == permgen::cli::kInputError);
  CHECK(dup.err.find("row 2 duplicates row 1") != std::string::npos);

  const fs::path ok = write_file("ok.csv", "0,0\n1,1\n");
  CHECK(invoke({"analyze", ok.string(), "--generator", "hull"}).code == permgen::cli::kConfigError);
  CHECK(invoke({"simulate", "gauss:d=2", "splice", "--nmax", "5"}).code == permgen::cli::kInputError);
}
