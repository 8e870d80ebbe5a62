#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "hyperchab/series.hpp"

using namespace hyperchab;

namespace {

LaurentPoly ints(long p, std::map<long, mpz_class> c, long prec = 40) { return LaurentPoly::from_integers(p, c, prec); }

// Expands lead * prod (z - r_i) with integer roots.
std::map<long, mpz_class> expand(const std::vector<mpz_class>& roots, const mpz_class& lead = 1) {
  std::vector<mpz_class> poly{lead};
  for (const auto& r : roots) {
    std::vector<mpz_class> next(poly.size() + 1, 0);
    for (std::size_t i = 0; i < poly.size(); ++i) {
      next[i + 1] += poly[i];
      next[i] -= poly[i] * r;
    }
    poly = next;
  }
  std::map<long, mpz_class> out;
  for (std::size_t i = 0; i < poly.size(); ++i)
    if (poly[i] != 0) out[static_cast<long>(i)] = poly[i];
  return out;
}

}  // namespace

TEST_CASE("Newton polygon vertices") {
  const auto A = newton_polygon(ints(3, {{0, -3}, {1, 1}}));
  REQUIRE(A.vertices.size() == 2);
  CHECK(A.vertices[0] == std::pair<long, mpq_class>{0, 1});
  CHECK(A.vertices[1] == std::pair<long, mpq_class>{1, 0});

  const auto B = newton_polygon(ints(3, {{0, 27}, {1, -12}, {2, 1}}));
  REQUIRE(B.vertices.size() == 3);
  CHECK(B.vertices[0].second == 3);
  CHECK(B.vertices[1].second == 1);
  CHECK(B.vertices[2].second == 0);

  const auto C = newton_polygon(ints(3, {{0, 1}}));
  CHECK(C.vertices.size() == 1);
  CHECK_FALSE(C.provisional);

  CHECK_THROWS_AS(newton_polygon(LaurentPoly(3)), Error);
}

TEST_CASE("hull slopes increase strictly") {
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<long> coeff(-2000, 2000), deg(1, 8);
  for (int i = 0; i < 300; ++i) {
    std::map<long, mpz_class> c;
    const long d = deg(rng);
    for (long n = 0; n <= d; ++n) {
      const long x = coeff(rng);
      if (x != 0) c[n - 2] = x;
    }
    if (c.empty()) continue;
    const auto s = newton_polygon(ints(3, c)).slopes();
    for (std::size_t k = 1; k < s.size(); ++k) CHECK(s[k - 1] < s[k]);
  }
}

TEST_CASE("zero counts in valuation ranges") {
  CHECK(count_zeros(ints(3, {{0, -3}, {1, 1}}), 0, 2) == 1);
  CHECK(count_zeros(ints(3, {{0, -27}, {2, 1}}), 1, 2) == 2);
  // t^-1 + t has roots of valuation 0.
  CHECK(count_zeros(ints(5, {{-1, 1}, {1, 1}}), 1, 2) == 0);
  CHECK(count_zeros(ints(5, {{-1, 1}, {1, 1}}), -1, 1) == 2);
  SUBCASE("closed and infinite ends") {
    const LaurentPoly f = ints(3, expand({3, 9, 1}));
    CHECK(count_zeros(f, 1, 2, false, false) == 0);
    CHECK(count_zeros(f, 1, 2, true, false) == 1);
    CHECK(count_zeros(f, 1, 2, true, true) == 2);
    CHECK(count_zeros(f, RangeSpec{std::nullopt, mpq_class(1), false, false}) == 1);
    CHECK(count_zeros(f, RangeSpec{mpq_class(0), std::nullopt, false, false}) == 2);
  }
}

TEST_CASE("zero counts match planted valuations") {
  std::mt19937_64 rng(22);
  std::uniform_int_distribution<long> deg(1, 6), val(0, 4), unit(1, 50), end(-1, 5);
  for (int i = 0; i < 400; ++i) {
    std::vector<mpz_class> roots;
    std::vector<long> vals;
    const long d = deg(rng);
    for (long k = 0; k < d; ++k) {
      long u = unit(rng);
      while (u % 3 == 0) ++u;
      vals.push_back(val(rng));
      roots.push_back(ppow(3, vals.back()) * u);
    }
    const LaurentPoly f = ints(3, expand(roots, 2));
    long lo = end(rng), hi = end(rng);
    if (lo > hi) std::swap(lo, hi);
    const bool lc = rng() % 2 == 0, hc = rng() % 2 == 0;
    long planted = 0;
    for (long v : vals) planted += ((lc ? v >= lo : v > lo) && (hc ? v <= hi : v < hi)) ? 1 : 0;
    const RangeSpec range{mpq_class(lo), mpq_class(hi), lc, hc};
    CHECK(count_zeros(f, range) == planted);
    CHECK(count_zeros_from_hull(newton_polygon(f), range) == planted);
  }
}

TEST_CASE("counts are unchanged by truncations of a unit one-series") {
  // 1 + 3z + ... + (3z)^k has all of its roots at valuation -1.
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<long> coeff(-500, 500);
  const RangeSpec range{mpq_class(-1, 2), std::nullopt, false, false};
  for (int i = 0; i < 100; ++i) {
    std::map<long, mpz_class> c;
    for (long n = 0; n <= 4; ++n) c[n] = coeff(rng) * 9 + (n == 4 ? 1 : 0);
    const LaurentPoly f = ints(3, c);
    for (long terms = 2; terms <= 5; ++terms) {
      std::map<long, mpz_class> h;
      for (long k = 0; k < terms; ++k) h[k] = ppow(3, k);
      CHECK(count_zeros(f * ints(3, h), range) == count_zeros(f, range));
    }
  }
}

TEST_CASE("uncertain coefficients make the count provisional") {
  LaurentPoly f(3, 5);
  f.set(0, PAdic::from_integer(1, 3, 5));
  f.set(1, PAdic::zero(3, 0));
  f.set(2, PAdic::from_integer(3, 3, 5));
  const auto poly = newton_polygon(f);
  CHECK(poly.provisional);
  CHECK_THROWS_AS(count_zeros(f, 0, 2), Error);
  LaurentPoly g(3, 5);
  g.set(0, PAdic::from_integer(1, 3, 5));
  g.set(1, PAdic::zero(3, 4));
  g.set(2, PAdic::from_integer(3, 3, 5));
  CHECK(count_zeros(g, RangeSpec{std::nullopt, std::nullopt, false, false}) == 2);
}

TEST_CASE("LaurentData counts on its domain") {
  LaurentData d{ints(3, {{-1, 9}, {1, 1}}), 0, 2};
  CHECK(d.count_zeros_on_domain() == 2);
}

TEST_CASE("delta and its relatives") {
  CHECK(delta(3, 1, 2) == 2);
  CHECK(delta(5, 1, 0) == 0);
  CHECK(delta(3, 1, 4) == 4);
  CHECK_THROWS_AS(delta(3, 2, 1), Error);
  CHECK(delta2_bound(0) == 1);
  CHECK(delta2_bound(2) == 2);
  CHECK(delta2_bound(4) == 3);
  CHECK(Delta(1, 2, 3, 1) == 2);
  CHECK(Delta(3, 2, 3, 1) == 2);
  CHECK(Delta(2, 0, 5, 1) == 0);
  CHECK_THROWS_AS(Delta(2, 2, 3, 2), Error);
  CHECK(zero_bound_disk(0, 3, 1) == 1);
  CHECK(zero_bound_disk(2, 3, 1) == 5);
  CHECK(zero_bound_disk(1, 5, 1) == 2);
}

TEST_CASE("Delta agrees with brute force over compositions") {
  for (long p : {5L, 7L})
    for (long e = 1; e < p - 1; ++e)
      for (long r = 0; r <= 8; ++r) {
        long best = 0;
        for (long a = 0; a <= r; ++a)
          for (long b = 0; a + b <= r; ++b)
            for (long c = 0; a + b + c <= r; ++c) best = std::max(best, delta(p, e, a) + delta(p, e, b) + delta(p, e, c));
        CHECK(Delta(3, r, p, e) == best);
      }
}

TEST_CASE("formal integration") {
  const auto F = formal_integrate(ints(3, {{2, 3}, {-1, 5}, {0, 7}}));
  CHECK(F.residue.agrees_with(PAdic::from_integer(5, 3)));
  CHECK(F.ell.agrees_with(ints(3, {{3, 1}, {1, 7}})));
  const auto G = formal_integrate(ints(3, {{-2, 1}}));
  CHECK(G.residue.is_zero());
  CHECK(G.ell.agrees_with(ints(3, {{-1, -1}})));
  const auto Z = formal_integrate(LaurentPoly(3));
  CHECK(Z.ell.empty());
  CHECK(Z.residue.is_zero());
}

TEST_CASE("dividing by multiples of p lowers the precision") {
  const auto F = formal_integrate(ints(3, {{2, 1}}, 10));
  CHECK(F.ell.coeff(3).valuation() == -1);
  CHECK(F.ell.coeff(3).precision() <= 9);
}

TEST_CASE("Laurent polynomial arithmetic") {
  const LaurentPoly a = ints(5, {{-1, 2}, {0, 1}});
  const LaurentPoly b = ints(5, {{1, 3}});
  CHECK((a * b).agrees_with(ints(5, {{0, 6}, {1, 3}})));
  CHECK_FALSE((a - a).has_definite_term());
  CHECK(a.shifted(2).min_exponent() == 1);
  CHECK(a.derivative().agrees_with(ints(5, {{-2, -2}})));
  CHECK(a.evaluate(PAdic::from_integer(5, 5)).agrees_with(PAdic::from_rational(mpq_class(7, 5), 5)));
}
