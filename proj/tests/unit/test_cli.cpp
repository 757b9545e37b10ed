#include <doctest.h>

#include <array>
#include <cstdio>
#include <string>
#include <sys/wait.h>

#include <nlohmann/json.hpp>

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& binary, const std::string& args) {
  Run r;
  const std::string cmd = "\"" + binary + "\" " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

Run cli(const std::string& args) { return run(COARSEGRP_CLI_PATH, args); }

nlohmann::json result(const Run& r) { return nlohmann::json::parse(r.out).at("result"); }

}  // namespace

TEST_CASE("check-hom") {
  const auto r = cli(R"(check-hom --source "Z" --target "Z" --matrix "[[2]]" --ideals finitary,finitary)");
  REQUIRE(r.code == 0);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["schema_version"] == 1);
  CHECK(doc["command"] == "check-hom");
  CHECK(doc["result"]["flags"]["coarse_equivalence"] == true);
  const auto e = cli(R"(check-hom --endo "endo{head: [], tail: scale(2)}")");
  REQUIRE(e.code == 0);
  CHECK(result(e)["flags"]["coarse_equivalence"] == false);
  CHECK(result(e)["escape_certificate"].is_string());
}

TEST_CASE("qh-defect and qh-section") {
  const auto r = cli(R"(qh-defect --map "abs" --radii 100,200)");
  REQUIRE(r.code == 0);
  CHECK(result(r)["verdict"] == "REJECTED");
  CHECK(result(r)["windows"].back()["max_witness"].is_object());
  const auto s = cli(R"(qh-section --map "largest-even-below" --radii 50)");
  REQUIRE(s.code == 0);
  CHECK(result(s)["status"] == "OK");
}

TEST_CASE("other verbs") {
  CHECK(result(cli(R"(analyze-group --group "Z^2 + Z/6")"))["r0"] == 2);
  CHECK(result(cli(R"(classify --g "Z^2 + Z/6" --h "Z^2 + Z/35")"))["verdict"] == "COARSELY_EQUIVALENT");
  const auto sq = cli(R"(span-compose --first "span{apex: Z, left: [[2]] -> Z, right: [[1]] -> Z}" --second "span{apex: Z, left: [[2]] -> Z, right: [[1]] -> Z}")");
  REQUIRE(sq.code == 0);
  CHECK(result(sq)["rational_form"][0][0] == "1/4");
  const auto eq = cli(R"(span-equal --first "span{apex: Z, left: [[2]] -> Z, right: [[1]] -> Z}" --second "span{apex: Z, left: [[1]] -> Z, right: [[1]] -> Z}")");
  CHECK(result(eq)["verdict"] == "NOT_EQUIVALENT");
  const auto ore = cli(R"(ore --x Z --y Z --z Z --w "[[2]]" --f "[[3]]")");
  REQUIRE(ore.code == 0);
  CHECK(result(ore)["apex"] == "Z");
  const auto cover = cli("asdim-witness --dim 2 --radius 2 --window 60");
  REQUIRE(cover.code == 0);
  CHECK(result(cover)["valid"] == true);
  const auto small = cli(R"(smallset --set "periodic{m:1, residues:[], except:[+1,+5]}")");
  CHECK(result(small)["small"] == true);
}

TEST_CASE("text format") {
  const auto r = cli(R"(--format text analyze-group --group "Z/8")");
  REQUIRE(r.code == 0);
  CHECK(r.out.find("result.r0 = 0") != std::string::npos);
}

TEST_CASE("exit codes") {
  CHECK(cli("").code == 2);
  CHECK(cli("no-such-verb").code == 2);
  CHECK(cli(R"(analyze-group --group "Q")").code == 2);
  CHECK(cli(R"(check-hom --source "Z/2" --target "Z" --matrix "[[1]]")").code == 3);
  CHECK(cli(R"(qh-defect --map abs --radii 10 --ideal discrete)").code == 2);
  CHECK(cli(R"(span-compose --first "span{apex: Z, left: [[0]] -> Z, right: [[1]] -> Z}" --second "span{apex: Z, left: [[1]] -> Z, right: [[1]] -> Z}")").code == 3);
  CHECK(cli("asdim-witness --dim 3 --radius 1 --window 5").code == 3);
}

TEST_CASE("audit") {
  const auto a = cli("audit --seed 42");
  const auto b = cli("--seed 42 audit");
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(result(a)["passed"] == true);
  CHECK(cli("audit --seed 7").code == 0);
  const auto fault = run(COARSEGRP_FAULT_CLI_PATH, "audit --seed 42");
  CHECK(fault.code == 4);
  CHECK(result(fault)["violation_count"].get<int>() > 0);
}
