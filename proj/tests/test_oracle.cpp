#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>
#include <random>
#include <set>

#include "hyperchab/oracle.hpp"

using namespace hyperchab;

namespace {

bool rational_square(const mpq_class& v) {
  return v >= 0 && mpz_perfect_square_p(v.get_num_mpz_t()) && mpz_perfect_square_p(v.get_den_mpz_t());
}

// Affine points by direct substitution, with no sieving.
long naive_affine_count(const std::vector<mpq_class>& f, long H) {
  long count = 0;
  for (long b = 1; b <= H; ++b)
    for (long a = -H; a <= H; ++a) {
      if (std::gcd(a, b) != 1) continue;
      const mpq_class x(a, b);
      mpq_class v = 0;
      for (auto it = f.rbegin(); it != f.rend(); ++it) v = v * x + *it;
      if (v == 0)
        count += 1;
      else if (rational_square(v))
        count += 2;
    }
  return count;
}

}  // namespace

TEST_CASE("x^7 + 1") {
  const std::vector<mpq_class> f{1, 0, 0, 0, 0, 0, 0, 1};
  const auto res = search_rational_points(f, 10);
  std::set<std::pair<mpq_class, mpq_class>> pts(res.affine.begin(), res.affine.end());
  CHECK(pts.count({0, 1}) == 1);
  CHECK(pts.count({0, -1}) == 1);
  CHECK(pts.count({-1, 0}) == 1);
  CHECK(res.points_at_infinity == 1);
  CHECK(res.total() >= 4);
  CHECK(res.total() <= 67);
}

TEST_CASE("x^6 + 1 has two points at infinity") {
  const auto res = search_rational_points({1, 0, 0, 0, 0, 0, 1}, 5);
  CHECK(res.points_at_infinity == 2);
  std::set<std::pair<mpq_class, mpq_class>> pts(res.affine.begin(), res.affine.end());
  CHECK(pts.count({0, 1}) == 1);
  CHECK(pts.count({0, -1}) == 1);
  CHECK(search_rational_points({1, 0, 0, 0, 0, 0, 2}, 5).points_at_infinity == 0);
}

TEST_CASE("no small solutions") {
  // -(x^6 + 1) is negative everywhere and its leading coefficient is not a square.
  const auto res = search_rational_points({-1, 0, 0, 0, 0, 0, -1}, 20);
  CHECK(res.affine.empty());
  CHECK(res.points_at_infinity == 0);
}

TEST_CASE("point search agrees with naive substitution") {
  std::mt19937_64 rng(71);
  std::uniform_int_distribution<long> coeff(-4, 4), deg(5, 7), num(1, 3);
  for (int i = 0; i < 25; ++i) {
    std::vector<mpq_class> f;
    const long d = deg(rng);
    for (long k = 0; k <= d; ++k) f.emplace_back(coeff(rng), k == 0 ? num(rng) : 1);
    if (f.back() == 0) f.back() = 1;
    for (auto& c : f) c.canonicalize();
    const auto res = search_rational_points(f, 12);
    CHECK(static_cast<long>(res.affine.size()) == naive_affine_count(f, 12));
    const auto serial = search_rational_points_serial(f, 12);
    CHECK(serial.affine == res.affine);
    CHECK(serial.points_at_infinity == res.points_at_infinity);
    std::set<std::pair<mpq_class, mpq_class>> pts(res.affine.begin(), res.affine.end());
    for (const auto& [x, y] : res.affine) CHECK(pts.count({x, -y}) == 1);
  }
}

TEST_CASE("p-adic zero enumeration") {
  CHECK(enumerate_padic_zeros({{0, -3}, {1, 1}}, 3, 0, 2, 6) == 1);
  CHECK(enumerate_padic_zeros({{0, 27}, {1, -12}, {2, 1}}, 3, 0, 3, 6) == 2);
  CHECK(enumerate_padic_zeros({{0, -3}, {2, 1}}, 3, 0, 2, 6) == 0);
  CHECK(enumerate_padic_zeros({{0, -6}, {1, 1}}, 5, -1, 1, 5) == 1);
  CHECK_THROWS_AS(enumerate_padic_zeros({{0, 1}, {1, -2}, {2, 1}}, 3, -1, 1, 6), Error);
}

TEST_CASE("zero enumeration matches planted simple roots") {
  std::mt19937_64 rng(72);
  std::uniform_int_distribution<long> val(0, 2), unit(1, 40);
  for (int i = 0; i < 40; ++i) {
    const long p = i % 2 == 0 ? 3 : 5;
    // One root per valuation keeps the derivative at each root nearly a unit, so the
    // scan depth suffices to certify it.
    std::set<long> classes;
    std::vector<mpz_class> roots;
    std::vector<long> vals;
    for (int k = 0; k < 3; ++k) {
      long u = unit(rng);
      while (u % p == 0) ++u;
      const long v = val(rng);
      if (!classes.insert(v).second) continue;
      vals.push_back(v);
      roots.push_back(ppow(p, v) * u);
    }
    std::vector<mpz_class> poly{1};
    for (const auto& r : roots) {
      std::vector<mpz_class> next(poly.size() + 1, 0);
      for (std::size_t j = 0; j < poly.size(); ++j) {
        next[j + 1] += poly[j];
        next[j] -= poly[j] * r;
      }
      poly = next;
    }
    std::map<long, mpq_class> c;
    for (std::size_t j = 0; j < poly.size(); ++j)
      if (poly[j] != 0) c[static_cast<long>(j)] = mpq_class(poly[j]);
    const long lo = -1, hi = 3;
    long planted = 0;
    for (long v : vals) planted += v > lo && v < hi ? 1 : 0;
    CHECK(enumerate_padic_zeros(c, p, lo, hi, 7) == planted);
    CHECK(enumerate_padic_zeros_serial(c, p, lo, hi, 7) == planted);
  }
}

TEST_CASE("cover checks") {
  const auto C = HyperellipticCurve::from_roots(7, 1, {0, 1, 2, 3, 4, 5});
  const auto D = decompose(C);
  const auto rep = cover_report(D, 2);
  CHECK(rep.exact());
  CHECK(rep.points_checked == 49 + 6 + 1);
  const auto serial = cover_report_serial(D, 2);
  CHECK(serial.hits == rep.hits);

  SUBCASE("a deleted region leaves a gap") {
    // The pair {0, 125} gives an annulus wide enough to hold points of valuation 1 and 2.
    auto holed = decompose(HyperellipticCurve::from_roots(5, 1, {0, 125, 1, 2, 3, 4}));
    const auto before = cover_report(holed, 3);
    REQUIRE(before.exact());
    bool erased = false;
    for (std::size_t i = 0; i < holed.regions.size() && !erased; ++i)
      if (holed.regions[i].is_annulus && before.hits[i] > 0) {
        holed.regions.erase(holed.regions.begin() + static_cast<long>(i));
        erased = true;
      }
    REQUIRE(erased);
    CHECK_FALSE(cover_report(holed, 3).exact());
    try {
      verify_decomposition_cover(holed, 3);
      FAIL("expected CoverageGap");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::CoverageGap);
    }
  }

  SUBCASE("a duplicated region is a double cover") {
    auto doubled = D;
    doubled.regions.push_back(doubled.regions.front());
    try {
      verify_decomposition_cover(doubled, 2);
      FAIL("expected DoubleCover");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::DoubleCover);
    }
  }
}
