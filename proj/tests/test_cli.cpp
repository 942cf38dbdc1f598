#include "doctest.h"

#include "cli.hpp"

#include "json.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = procell::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("procell_cli_test_" + name);
}

void write(const std::filesystem::path& p, const std::string& text) { std::ofstream(p) << text; }

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("verify") {
  auto r = run({"verify", "--builtin", "tl", "--n", "3", "--delta", "2"});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "result: PASS"));
  r = run({"verify", "--builtin", "poly", "--truncate", "4"});
  CHECK(r.code == 0);
  r = run({"verify", "--builtin", "tl", "--n", "4", "--delta", "3", "--field", "gf:5", "--jobs", "3"});
  CHECK(r.code == 0);
  r = run({"verify", "--builtin", "poly"});
  CHECK(r.code == 2);
}

TEST_CASE("classify") {
  auto r = run({"classify", "--builtin", "tl", "--n", "3", "--delta", "1"});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "dims L = (1,1)"));
  r = run({"classify", "--builtin", "tl", "--n", "3", "--delta", "2"});
  CHECK(contains(r.out, "dims L = (1,2)"));
  r = run({"classify", "--builtin", "poly", "--truncate", "5", "--json"});
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["schema"] == 1);
  CHECK(j["lambda0"] == nlohmann::json::array({"0"}));
  CHECK(j["rows"][0]["dim_simple"] == 1);
}

TEST_CASE("gram") {
  const auto r = run({"gram", "--builtin", "tl", "--n", "3", "--delta", "1", "--cell", "1", "--json"});
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["forms"][0]["phi"] == nlohmann::json::parse(R"([["1","1"],["1","1"]])"));
  CHECK(j["forms"][0]["rank"] == 1);
  CHECK(run({"gram", "--builtin", "tl", "--n", "3", "--cell", "7"}).code == 2);
}

TEST_CASE("quotient") {
  const auto out = temp_file("quotient.json");
  auto r = run({"quotient", "--builtin", "poly", "--gens", "2", "--output", out.string()});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "dimension: 3"));
  CHECK(contains(r.out, "result: PASS"));
  auto v = run({"verify", "--file", out.string()});
  CHECK(v.code == 0);
  std::filesystem::remove(out);

  r = run({"quotient", "--builtin", "tl", "--n", "3", "--gens", "3", "--json"});
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["datum"]["poset"]["elements"].size() == 1);
  CHECK(j["dimension"] == 1);

  r = run({"quotient", "--builtin", "poly", "--gens"});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "zero algebra"));
  CHECK(run({"quotient", "--builtin", "poly"}).code == 2);
}

TEST_CASE("smooth") {
  auto r = run({"smooth", "--builtin", "poly", "--bound", "6"});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "smooth simples: {0}"));
  r = run({"smooth", "--builtin", "poly", "--bound", "0", "--json"});
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["simples"].size() == 1);
  CHECK(j["simples"][0]["cell"] == "0");
  CHECK(j["agrees"] == true);

  r = run({"smooth", "--builtin", "tower", "--n", "3", "--bound", "(2,1)"});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "(2,1)"));
  CHECK(contains(r.out, "0 violations"));
  CHECK(contains(r.out, "no Gram data"));

  r = run({"smooth", "--builtin", "tl", "--n", "4", "--delta", "0", "--json"});
  CHECK(r.code == 0);
  CHECK(nlohmann::json::parse(r.out)["finite_lambda0"] == nlohmann::json::array({"4", "2"}));
  CHECK(run({"smooth", "--builtin", "poly"}).code == 2);
}

TEST_CASE("complete-mul") {
  auto r = run({"complete-mul", "--builtin", "poly", "geometric", "1 - x", "--bound", "5"});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "coefficients: (1,0,0,0,0,0)"));
  r = run({"complete-mul", "--builtin", "poly", "unit", "geometric", "--bound", "3"});
  CHECK(contains(r.out, "coefficients: (1,1,1,1)"));
  r = run({"complete-mul", "--builtin", "poly", "geometric", "zero", "--bound", "3"});
  CHECK(contains(r.out, "coefficients: (0,0,0,0)"));
  r = run({"complete-mul", "--builtin", "poly", "delta", "x^2", "--bound", "3", "--json"});
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["coefficients"][2]["coefficient"] == "1");
  r = run({"complete-mul", "--builtin", "tl", "--n", "2", "--delta", "3", "0:0:0=1", "0:0:0=1"});
  CHECK(contains(r.out, "coefficients: (0,3)"));
  r = run({"complete-mul", "--builtin", "poly", "nosuch", "x", "--bound", "2"});
  CHECK(r.code == 2);
  CHECK(contains(r.err, "unknown generator"));
  CHECK(run({"complete-mul", "--builtin", "poly", "x", "--bound", "2"}).code == 2);
}

TEST_CASE("export round trip and corrupted tables") {
  const auto path = temp_file("tl3.json");
  auto r = run({"export", "--builtin", "tl", "--n", "3", "--delta", "2", "--output", path.string()});
  CHECK(r.code == 0);
  const auto a = run({"classify", "--builtin", "tl", "--n", "3", "--delta", "2", "--json"});
  const auto b = run({"classify", "--file", path.string(), "--json"});
  CHECK(nlohmann::json::parse(a.out)["rows"] == nlohmann::json::parse(b.out)["rows"]);
  const auto va = run({"verify", "--builtin", "tl", "--n", "3", "--delta", "2", "--json"});
  const auto vb = run({"verify", "--file", path.string(), "--json"});
  CHECK(nlohmann::json::parse(va.out)["report"] == nlohmann::json::parse(vb.out)["report"]);

  auto doc = nlohmann::json::parse(slurp(path));
  // C^3 * C^1_{0,0}: send it to C^1_{1,0} instead, which breaks the cell axiom
  for (auto& e : doc["table"])
    if (e[0].get<int>() == 0 && e[1].get<int>() == 1) e[2] = nlohmann::json::parse(R"([[3, "1"]])");
  const auto bad = temp_file("bad.json");
  write(bad, doc.dump());
  r = run({"verify", "--file", bad.string(), "--json"});
  CHECK(r.code == 1);
  bool cell_failed = false;
  const auto report = nlohmann::json::parse(r.out);
  for (const auto& c : report["report"]["checks"])
    if (c["name"] == "cell") cell_failed = c["passed"] == false && !c["witness"].get<std::string>().empty();
  CHECK(cell_failed);
  CHECK(run({"classify", "--file", bad.string()}).code == 1);

  write(bad, "{\n \"field\": \"q\",\n \"poset\": [1,,]\n}");
  r = run({"verify", "--file", bad.string()});
  CHECK(r.code == 2);
  CHECK(contains(r.err, "line 3"));
  CHECK(run({"verify", "--file", temp_file("missing.json").string()}).code == 2);
  std::filesystem::remove(bad);
  std::filesystem::remove(path);
}

TEST_CASE("usage errors and determinism") {
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"verify", "--builtin", "nope"}).code == 2);
  CHECK(run({"verify", "--builtin", "tl", "--n", "9"}).code == 2);
  CHECK(run({"verify", "--builtin", "tl", "--field", "gf:4"}).code == 2);
  CHECK(run({"verify", "--builtin", "tower"}).code == 2);
  CHECK(run({"--help"}).code == 0);
  const std::vector<std::string> args{"classify", "--builtin", "tl", "--n", "4", "--delta", "1", "--json", "--jobs", "2"};
  CHECK(run(args).out == run(args).out);
  const std::vector<std::string> text{"smooth", "--builtin", "tower", "--n", "3", "--bound", "(2,2)"};
  CHECK(run(text).out == run(text).out);
}
