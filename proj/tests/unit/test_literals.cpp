#include <doctest.h>

#include <fstream>

#include "coarsegrp/audit.hpp"
#include "coarsegrp/errors.hpp"
#include "coarsegrp/literals.hpp"
#include "coarsegrp/serialize.hpp"

using namespace cg;
using namespace cg::literals;

TEST_CASE("groups") {
  CHECK(parse_group("Z^2 + Z/4 + Z/6").to_string() == "Z^2 + Z/2 + Z/12");
  CHECK(parse_group("0").is_trivial());
  CHECK(parse_group("Z").free_rank() == 1);
  CHECK(parse_group(" Z/3+Z/3 ").torsion().size() == 2);
  CHECK_THROWS_AS(parse_group("Q"), ParseError);
  CHECK_THROWS_AS(parse_group("Z/"), ParseError);
  CHECK_THROWS_AS(parse_group("Z/0"), DomainError);
  CHECK_THROWS_AS(parse_group("Z + "), ParseError);
}

TEST_CASE("matrices and homs") {
  CHECK(parse_matrix("[[1,2],[3,4]]") == intlat::IntMatrix{{1, 2}, {3, 4}});
  CHECK_THROWS_AS(parse_matrix("[[1,2],[3]]"), ParseError);
  CHECK_THROWS_AS(parse_matrix("[[1,2]"), ParseError);
  const auto z = parse_group("Z");
  CHECK(parse_hom(z, z, "[[2]]").matrix() == intlat::IntMatrix{{2}});
  CHECK(parse_hom(z, parse_group("Z^2"), "[]").matrix().is_zero());
  CHECK_THROWS_AS(parse_hom(parse_group("Z/2"), z, "[[1]]"), DomainError);
  CHECK(parse_matrix("[[123456789012345678901234567890]]")(0, 0) == intlat::Integer("123456789012345678901234567890"));
}

TEST_CASE("ideals") {
  const auto g = parse_group("Z^2");
  CHECK(parse_ideal("finitary", g).kind() == coarse::IdealKind::Finitary);
  CHECK(parse_ideal("bounded", g).kind() == coarse::IdealKind::Bounded);
  CHECK(parse_ideal("discrete", g).kind() == coarse::IdealKind::Discrete);
  CHECK(parse_ideal("linear([[1,0]])", g).kind() == coarse::IdealKind::Linear);
  CHECK_THROWS_AS(parse_ideal("finite-rank", g), DomainError);
  CHECK_THROWS_AS(parse_ideal("huge", g), ParseError);
  CHECK(split_top_level("linear([[1,0],[0,1]]),finitary") ==
        std::vector<std::string>{"linear([[1,0],[0,1]])", "finitary"});
}

TEST_CASE("maps") {
  CHECK(parse_map("floor(1/2)")({intlat::Integer(-3)})[0] == -2);
  CHECK(parse_map("floor(1/2, offset=1/2)")({intlat::Integer(1)})[0] == 1);
  CHECK(parse_map("largest-even-below")({intlat::Integer(4)})[0] == 2);
  CHECK(parse_map("abs")({intlat::Integer(-4)})[0] == 4);
  CHECK(parse_map("hom [[1,2]]")({intlat::Integer(1), intlat::Integer(1)})[0] == 3);
  CHECK(parse_map("hom [[1]] -> Z/3")({intlat::Integer(4)})[0] == 1);
  CHECK(parse_map("compose(hom [[3]], floor(1/2))")({intlat::Integer(5)})[0] == 6);
  CHECK_THROWS_AS(parse_map("sqrt"), ParseError);
  CHECK_THROWS_AS(parse_map("floor(1/0)"), DomainError);
  const auto f = parse_map("compose(hom [[3]], floor(1/2))");
  CHECK(parse_map(f.to_string()).to_string() == f.to_string());
}

TEST_CASE("table maps from JSON") {
  const std::string path = "table_literal_test.json";
  {
    std::ofstream out(path);
    out << R"J({"source_rank": 1, "target": "Z", "entries": [{"x": [0], "y": [17]}], "fallback": "floor(1/2)", "label": "poked"})J";
  }
  const auto f = parse_map("table@" + path);
  CHECK(f({intlat::Integer(0)})[0] == 17);
  CHECK(f({intlat::Integer(5)})[0] == 2);
  CHECK_THROWS_AS(parse_map("table@does-not-exist.json"), ParseError);
}

TEST_CASE("spans, endos and periodic sets") {
  const auto s = parse_span("span{apex: Z, left: [[2]] -> Z, right: [[1]] -> Z}");
  CHECK(s.apex().free_rank() == 1);
  CHECK(parse_span(s.to_string()).to_string() == s.to_string());
  CHECK_THROWS_AS(parse_span("span{apex: Z, left: [[0]] -> Z, right: [[1]] -> Z}"), DomainError);
  CHECK_THROWS_AS(parse_span("span{apex: Z}"), ParseError);

  const auto e = parse_endo("endo{head: [[1,0],[0,2]], tail: scaled-shift(3, -1)}");
  CHECK(e.tail().scale == 3);
  CHECK(e.tail().shift == -1);
  CHECK(parse_endo("endo{head: [], tail: shift(2)}").tail().shift == 2);
  CHECK_THROWS_AS(parse_endo("endo{head: [], tail: rotate}"), ParseError);

  const auto p = parse_periodic("periodic{m:1, residues:[], except:[+1,+5]}");
  CHECK(p.contains(5));
  CHECK_FALSE(p.contains(2));
  CHECK_THROWS_AS(parse_periodic("periodic{m: 0, residues: [], except: []}"), DomainError);
  CHECK(parse_long_list("10, 20,30") == std::vector<long>{10, 20, 30});
  CHECK(parse_point_set("[[1,0],[-1,0]]").size() == 2);
  CHECK(parse_point_set("[-1,0,1]") == std::vector<geom::Point>{{-1}, {0}, {1}});
}

TEST_CASE("serialization envelope") {
  const auto doc = serialize::envelope("smallset", serialize::to_json(parse_periodic("periodic{m: 2, residues: [0], except: []}")));
  CHECK(doc["schema_version"] == serialize::kSchemaVersion);
  CHECK(doc["command"] == "smallset");
  CHECK(doc["result"]["large"] == true);
  const auto text = serialize::dump_text(doc);
  CHECK(text.find("result.small = false") != std::string::npos);
  CHECK(serialize::to_json(intlat::ExtNat::infinite()) == "ALEPH0");
  CHECK(serialize::to_json(intlat::Integer("99999999999999999999999")) == "99999999999999999999999");
}

TEST_CASE("audit is deterministic and clean") {
  audit::AuditOptions o;
  o.cases = 10;
  const auto a = serialize::dump(serialize::to_json(audit::run_audit(o)));
  const auto b = serialize::dump(serialize::to_json(audit::run_audit(o)));
  CHECK(a == b);
  CHECK(audit::run_audit(o).violation_count() == 0);
  o.inject_fault = true;
  CHECK(audit::run_audit(o).violation_count() > 0);
}
