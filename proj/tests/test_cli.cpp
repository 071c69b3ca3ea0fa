#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "zeta/cli.hpp"

using Json = nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = zeta::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& content) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << content;
  return path.string();
}

}  // namespace

TEST_CASE("lpoly from counts with every method") {
  const auto r = run({"lpoly", "from-counts", "--q", "2", "--counts", "5", "--method", "all"});
  REQUIRE(r.code == zeta::cli::kExitOk);
  const auto j = Json::parse(r.out);
  CHECK(j["coeffs"] == Json::array({"1", "2", "2"}));
  CHECK(j["h"] == "5");
  CHECK(j["methods_agree"] == true);
  CHECK(j["methods"].size() == 3);
}

TEST_CASE("lpoly from traces reports the product check") {
  const auto r = run({"lpoly", "from-traces", "--q", "9", "--traces", "6,-5,1", "--method", "all"});
  REQUIRE(r.code == 0);
  const auto j = Json::parse(r.out);
  CHECK(j["g"] == 3);
  CHECK(j["coeffs"].size() == 7);
  CHECK(j["coeffs"][6] == "729");
  CHECK(j["oracle_agree"] == true);
}

TEST_CASE("classnumber") {
  auto r = run({"classnumber", "--q", "2", "--counts", "3"});
  REQUIRE(r.code == 0);
  CHECK(Json::parse(r.out)["h"] == "3");
  r = run({"classnumber", "--q", "7", "--traces", "5,-2"});
  REQUIRE(r.code == 0);
  const auto j = Json::parse(r.out);
  CHECK(j["h"] == j["h_formula"]);
  CHECK(j["routes_agree"] == true);
}

TEST_CASE("compositions") {
  auto r = run({"compositions", "--n", "1"});
  REQUIRE(r.code == 0);
  const auto j = Json::parse(r.out);
  REQUIRE(j.size() == 1);
  CHECK(j[0]["parts"] == Json::array({1}));
  r = run({"compositions", "--n", "3", "--format", "csv"});
  CHECK(r.out == "index,parts\n0,3\n1,1+2\n2,2+1\n3,1+1+1\n");
  CHECK(Json::parse(run({"compositions", "--n", "0"}).out).size() == 1);
  CHECK(run({"compositions", "--n", "31"}).code == zeta::cli::kExitInvalid);
}

TEST_CASE("defect2 analyze") {
  const auto r = run({"defect2", "analyze", "--g", "4", "--theta", "both"});
  REQUIRE(r.code == 0);
  const auto j = Json::parse(r.out);
  REQUIRE(j["rows"].size() == 4);
  CHECK(j["rows"][3]["delta"]["pi4"] == 4);
  CHECK(j["rows"][3]["checks"]["prop45"] == true);
  CHECK(j["rows"][3]["checks"]["prop46"] == true);
  CHECK(j["rows"][3]["checks"]["thm47"] == true);
  CHECK(j["rows"][0]["a_3pi4"] == "6");
  const auto big = Json::parse(run({"defect2", "analyze", "--g", "8", "--max-n", "3"}).out);
  CHECK(big["rows"][2]["checks"]["thm47"] == "conjecture");
  CHECK(run({"defect2", "analyze", "--g", "4", "--format", "table"}).out.find("delta") != std::string::npos);
  CHECK(run({"defect2", "analyze", "--g", "30"}).code == zeta::cli::kExitInvalid);
  CHECK(run({"defect2", "analyze", "--g", "4", "--max-n", "5"}).code == zeta::cli::kExitInvalid);
}

TEST_CASE("pper from a file") {
  const auto path = temp_file("zeta_pper_test.json", R"({"order": 3, "rows": [["1/2"], [3, "2/3"], [-1, 5, "7/4"]]})");
  const auto r = run({"pper", "--file", path});
  REQUIRE(r.code == 0);
  const auto j = Json::parse(r.out);
  CHECK(j["agree"] == true);
  CHECK(j["pper_compositions"] == j["pper_last_row"]);
  // 7/12 + 35/8 + 7/2 - 35/4
  CHECK(j["pper_compositions"] == "-7/24");
  const auto bad = temp_file("zeta_pper_bad.json", R"({"order": 2, "rows": [[1], [1]]})");
  const auto e = run({"pper", "--file", bad});
  CHECK(e.code == zeta::cli::kExitInvalid);
  CHECK(e.err.find("--file") != std::string::npos);
  CHECK(run({"pper", "--file", "/nonexistent/file.json"}).code == zeta::cli::kExitInvalid);
}

TEST_CASE("validation failures name the parameter") {
  auto r = run({"lpoly", "from-counts", "--q", "6", "--counts", "5"});
  CHECK(r.code == zeta::cli::kExitInvalid);
  CHECK(r.err.find("--q") != std::string::npos);
  CHECK(run({"lpoly", "from-counts", "--q", "6", "--counts", "5", "--no-validate"}).code == 0);
  r = run({"lpoly", "from-traces", "--q", "2", "--traces", "3"});
  CHECK(r.code == zeta::cli::kExitInvalid);
  CHECK(r.err.find("--traces") != std::string::npos);
  r = run({"lpoly", "from-counts", "--q", "2", "--counts", "x"});
  CHECK(r.code == zeta::cli::kExitInvalid);
  CHECK(r.err.find("--counts") != std::string::npos);
  CHECK(run({"lpoly", "from-counts", "--q", "2", "--counts", "5", "--threads", "0"}).code == zeta::cli::kExitInvalid);
  CHECK(run({"lpoly", "from-counts", "--q", "2"}).code == zeta::cli::kExitInvalid);
  CHECK(run({"classnumber", "--q", "2", "--counts", "5", "--traces", "1"}).code == zeta::cli::kExitInvalid);
}

TEST_CASE("inconsistent data exits with the computation state") {
  const auto r = run({"lpoly", "from-counts", "--q", "2", "--counts", "4,1", "--method", "all"});
  CHECK(r.code == zeta::cli::kExitInconsistent);
  const auto j = Json::parse(r.out);
  CHECK(j.contains("error"));
  CHECK(j["state"]["q"] == "2");
}

TEST_CASE("weil bound warning") {
  const auto r = run({"lpoly", "from-counts", "--q", "2", "--counts", "7"});
  CHECK(r.err.find("warning") != std::string::npos);
}

TEST_CASE("usage and help") {
  auto r = run({"frobnicate"});
  CHECK(r.code == zeta::cli::kExitUsage);
  CHECK(r.err.find("usage:") != std::string::npos);
  CHECK(run({}).code == zeta::cli::kExitUsage);
  CHECK(run({"lpoly", "from-nothing"}).code == zeta::cli::kExitUsage);
  CHECK(run({"--help"}).code == 0);
  CHECK(run({"lpoly", "from-counts", "--help"}).code == 0);
}

TEST_CASE("output is byte-identical across runs") {
  const std::vector<std::string> a{"defect2", "analyze", "--g", "6", "--threads", "3"};
  const auto first = run(a).out;
  CHECK(run(a).out == first);
  CHECK(run({"defect2", "analyze", "--g", "6", "--threads", "1"}).out == first);
  const std::vector<std::string> b{"lpoly", "from-traces", "--q", "4", "--traces", "1,2,3", "--format", "csv"};
  CHECK(run(b).out == run(b).out);
}
