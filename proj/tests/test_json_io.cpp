#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "hyperchab/json_io.hpp"

using namespace hyperchab;

TEST_CASE("p-adic numbers round trip") {
  std::mt19937_64 rng(81);
  std::uniform_int_distribution<long> num(-100000, 100000), den(1, 999);
  for (int i = 0; i < 200; ++i) {
    const long p = i % 2 == 0 ? 3 : 7;
    const PAdic x = PAdic::from_rational(mpq_class(num(rng), den(rng)), p, 12);
    const PAdic y = padic_from_json(to_json(x), p);
    CHECK(y.agrees_with(x));
    CHECK(y.precision() == x.precision());
  }
  const Json z = to_json(PAdic::zero(5, 4));
  CHECK(z.at("val").is_null());
  CHECK(padic_from_json(z, 5).is_zero());
}

TEST_CASE("rationals accept integers and fraction strings") {
  CHECK(rational_from_json(Json(7)) == 7);
  CHECK(rational_from_json(Json("-3/6")) == mpq_class(-1, 2));
  CHECK_THROWS_AS(rational_from_json(Json("x")), Error);
}

TEST_CASE("Laurent polynomials round trip") {
  const Json in = Json::parse(R"({"terms": {"-2": "1/3", "0": 5, "3": -2}})");
  const LaurentPoly f = laurent_from_json(in, 3, 15);
  CHECK(f.coeff(-2).valuation() == -1);
  const LaurentPoly g = laurent_from_json(to_json(f), 3, 15);
  CHECK(g.agrees_with(f));
}

TEST_CASE("curves from roots, coefficients and matrices") {
  const auto a = curve_from_json(Json::parse(R"({"p": 3, "roots": [0, 3, 9, 1, 2, 4, 5, 7]})"));
  CHECK(a.genus() == 3);
  const auto b = curve_from_json(Json::parse(R"({"p": 7, "f": [1, 0, 0, 0, 0, 0, 0, 1], "precision": 12})"));
  CHECK(b.degree() == 7);
  const auto c = curve_from_json(Json::parse(
      R"({"p": 5, "roots": [0, 1, 2, 3, 4], "valuation_matrix": [[null, "1/2", 0, 0, 0], ["1/2", null, 0, 0, 0],
          [0, 0, null, 0, 0], [0, 0, 0, null, 0], [0, 0, 0, 0, null]]})"));
  REQUIRE(c.valuation_matrix.has_value());
  CHECK((*c.valuation_matrix)[0][1] == mpq_class(1, 2));
  CHECK_THROWS_AS(curve_from_json(Json::parse(R"({"roots": [0, 1]})")), Error);
}

TEST_CASE("graphs round trip") {
  std::mt19937_64 rng(82);
  for (int i = 0; i < 50; ++i) {
    const ArithGraph G = random_arith_graph(rng, 8);
    const ArithGraph H = graph_from_json(to_json(G));
    CHECK(to_json(H) == to_json(G));
    CHECK(validate(H).g == validate(G).g);
  }
  CHECK_THROWS_AS(graph_from_json(Json::parse(R"({"vertices": [{"m": 1, "pa": 2, "w": 2}], "edges": [[0, 3]]})")),
                  Error);
}

TEST_CASE("reports carry the schema version") {
  const Json r = make_report("bounds", to_json(make_bound_report(3, 1, 3, 1, 3, 0, 0)));
  CHECK(r.at("schema_version") == kSchemaVersion);
  CHECK(r.at("command") == "bounds");
  CHECK(r.at("result").dump().find("67") != std::string::npos);
  CHECK(bound_report_table(make_bound_report(3, 1, 3, 1, 3, 0, 0)).find("67") != std::string::npos);
}

TEST_CASE("decomposition output is deterministic") {
  const auto C = HyperellipticCurve::from_roots(3, 1, {0, 3, 9, 1, 2, 4, 5, 7});
  const std::string first = to_json(decompose(C)).dump();
  const std::string second = to_json(decompose(C)).dump();
  CHECK(first == second);
  CHECK(Json::parse(first).at("annuli").size() == 4);
}
