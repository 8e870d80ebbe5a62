#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "hyperchab/arith_graph.hpp"
#include "hyperchab/error.hpp"

using namespace hyperchab;

namespace {

Errc code_of(const ArithGraph& G) {
  try {
    validate(G);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected validation to fail");
  return Errc::InvalidInput;
}

ArithGraph chain_graph() {
  ArithGraph G;
  const auto a = G.add_vertex(1, 2, 3);
  const auto x = G.add_vertex(1, 0, 0);
  const auto y = G.add_vertex(1, 0, 0);
  const auto b = G.add_vertex(1, 2, 3);
  G.add_edge(a, x);
  G.add_edge(x, y);
  G.add_edge(y, b);
  return G;
}

// B{1, 2, 4} with a (-2)-curve tangent to it.
ArithGraph tangency_graph() {
  ArithGraph G;
  const auto b = G.add_vertex(1, 2, 4);
  const auto x = G.add_vertex(1, 0, 0);
  G.add_edge(x, b, 2);
  return G;
}

// A and B meet each other and a (-2)-curve at one common point.
ArithGraph triple_point_graph() {
  ArithGraph G;
  const auto a = G.add_vertex(1, 1, 2);
  const auto b = G.add_vertex(1, 1, 2);
  G.add_edge(a, b);
  const auto x = G.add_vertex(1, 0, 0);
  G.vertices[x].case3_point_ids = {0};
  G.add_edge(x, a);
  G.add_edge(x, b);
  return G;
}

long weighted_w(const ArithGraph& G) {
  long s = 0;
  for (const auto& v : G.vertices) s += v.m * v.w;
  return s;
}

}  // namespace

TEST_CASE("good reduction") {
  for (long g = 2; g <= 6; ++g) {
    ArithGraph G;
    G.add_vertex(1, g, 2 * g - 2);
    const auto inv = validate(G);
    CHECK(inv.g == g);
    CHECK(inv.t_prime == 0);
    const auto rep = check_specialfiber_bounds(G);
    CHECK(rep.fiber.N == 1);
    CHECK(rep.fiber.chains.empty());
    CHECK(rep.fiber.a1_count() == 0);
  }
}

TEST_CASE("two genus-one components") {
  ArithGraph G;
  G.add_edge(G.add_vertex(1, 1, 1), G.add_vertex(1, 1, 1));
  const auto inv = validate(G);
  CHECK(inv.g == 2);
  CHECK(inv.t_prime == 0);
  CHECK(inv.p_sum == 2);
  CHECK(G.self_intersection(0) == -1);
}

TEST_CASE("a chain of two (-2)-curves") {
  const ArithGraph G = chain_graph();
  const auto inv = validate(G);
  CHECK(inv.g == 4);
  CHECK(inv.t_prime == 0);
  const auto f = classify(G);
  REQUIRE(f.chains.size() == 1);
  CHECK(f.chains.front().size() == 2);
  CHECK(f.a1_count() == 0);
  const auto rep = check_specialfiber_bounds(G);
  CHECK(rep.fiber.N == 2);
  CHECK(rep.chain_limit == 1);
  CHECK(rep.u_is_proxy);
  CHECK(rep.u == 4 - 0 - 4);
}

TEST_CASE("A1 component cases") {
  const auto f4 = classify(tangency_graph());
  CHECK(f4.case4.size() == 1);
  CHECK(f4.chains.empty());

  ArithGraph G;
  const auto y = G.add_vertex(2, 0, 0);
  const auto a = G.add_vertex(1, 1, 2);
  G.add_edge(y, a);
  for (int k = 0; k < 3; ++k) G.add_edge(y, G.add_vertex(1, 0, 0));
  // y: 1 + 3 = 4 = 2 * (0 + 2); a: 2 = (2 + 2) - 2.
  CHECK(validate(G).g == 2);
  const auto f2 = classify(G);
  CHECK(f2.case2.size() == 3);

  const auto f3 = classify(triple_point_graph());
  CHECK(f3.case3.size() == 1);
}

TEST_CASE("validation failures") {
  CHECK(code_of(ArithGraph{}) == Errc::InvalidInput);

  ArithGraph bad_mult;
  bad_mult.add_vertex(0, 2, 2);
  CHECK(code_of(bad_mult) == Errc::InvalidInput);

  ArithGraph loop;
  loop.add_vertex(1, 2, 2);
  loop.edges.push_back({0, 0, 1});
  CHECK(code_of(loop) == Errc::InvalidInput);

  ArithGraph split;
  split.add_vertex(1, 2, 2);
  split.add_vertex(1, 2, 2);
  CHECK(code_of(split) == Errc::Disconnected);

  ArithGraph wrong = chain_graph();
  wrong.vertices[1].w = 1;
  CHECK(code_of(wrong) == Errc::RelationViolated);

  ArithGraph elliptic;
  elliptic.add_vertex(1, 1, 0);
  CHECK(code_of(elliptic) == Errc::RelationViolated);
}

TEST_CASE("(-2)-curves of multiplicity one have weighted degree two") {
  std::mt19937_64 rng(61);
  for (int i = 0; i < 300; ++i) {
    const ArithGraph G = random_arith_graph(rng, 8);
    REQUIRE_NOTHROW(validate(G));
    for (std::size_t v = 0; v < G.vertices.size(); ++v)
      if (G.vertices[v].minus_two_curve()) CHECK(G.weighted_degree(v) == 2);
  }
}

TEST_CASE("generated graphs satisfy the special fiber bounds") {
  std::mt19937_64 rng(62);
  for (int i = 0; i < 500; ++i) {
    const ArithGraph G = random_arith_graph(rng, 10);
    const auto inv = validate(G);
    CHECK(inv.g >= 2);
    CHECK(inv.g <= 10);
    const auto rep = evaluate_specialfiber_bounds(G);
    CHECK(rep.all_ok());
    // Every (-2)-curve of multiplicity one lands in exactly one class.
    long classified = rep.fiber.a1_count();
    for (const auto& c : rep.fiber.chains) classified += static_cast<long>(c.size());
    long minus_two = 0;
    for (const auto& v : G.vertices) minus_two += v.minus_two_curve() ? 1 : 0;
    CHECK(classified == minus_two);
  }
}

TEST_CASE("local modification of a tangency") {
  const ArithGraph G = tangency_graph();
  const ArithGraph H = local_modification(G);
  CHECK(validate(H).g == validate(G).g);
  CHECK(weighted_w(H) == weighted_w(G));
  long hubs = 0;
  for (const auto& v : H.vertices) hubs += v.m == 2 && v.pa == 0 ? 1 : 0;
  CHECK(hubs == 1);
  CHECK(classify(G).a1_count() == 1);
  CHECK(classify(H).a1_count() == 3);
}

TEST_CASE("local modification of a triple point") {
  const ArithGraph G = triple_point_graph();
  const ArithGraph H = local_modification(G);
  CHECK(validate(H).g == validate(G).g);
  CHECK(classify(G).a1_count() == 1);
  CHECK(classify(H).a1_count() == 2);
  CHECK(check_specialfiber_bounds(G).all_ok());
}

TEST_CASE("local modification without targets") {
  try {
    local_modification(chain_graph());
    FAIL("expected NothingToRewrite");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NothingToRewrite);
  }
}

TEST_CASE("local modification preserves the relations on generated graphs") {
  std::mt19937_64 rng(63);
  long rewritten = 0;
  for (int i = 0; i < 400; ++i) {
    const ArithGraph G = random_arith_graph(rng, 10);
    const auto f = classify(G);
    if (f.case3.empty() && f.case4.empty()) continue;
    const ArithGraph H = local_modification(G);
    CHECK(validate(H).g == validate(G).g);
    CHECK(weighted_w(H) == weighted_w(G));
    CHECK(classify(H).a1_count() > f.a1_count());
    ++rewritten;
  }
  CHECK(rewritten >= 20);
}

TEST_CASE("an explicit u below the count is reported") {
  const ArithGraph G = tangency_graph();
  const auto rep = evaluate_specialfiber_bounds(G, 0);
  CHECK_FALSE(rep.u_is_proxy);
  CHECK_FALSE(rep.a1_ok);
  CHECK_THROWS_AS(check_specialfiber_bounds(G, 0), Error);
}
