#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "hyperchab/integration.hpp"
#include "hyperchab/oracle.hpp"

using namespace hyperchab;

namespace {

PAdic n3(long x, long prec = 20) { return PAdic::from_integer(x, 3, prec); }

LaurentPoly poly3(std::map<long, mpz_class> c) { return LaurentPoly::from_integers(3, c, 20); }

AnnulusIntegrand make(const LaurentPoly& ell, long c, long lo, long hi, std::optional<PAdic> a = std::nullopt) {
  return AnnulusIntegrand{ell, n3(c), std::move(a), lo, hi};
}

}  // namespace

TEST_CASE("disk integrals") {
  CHECK(integrate_disk(poly3({{1, 1}}), n3(3), n3(9)).agrees_with(n3(6)));
  CHECK(integrate_disk(poly3({{1, 1}, {4, 2}}), n3(3), n3(3)).is_zero());
  CHECK(integrate_disk(poly3({{2, 1}}), n3(3), n3(6)).agrees_with(n3(27)));
  CHECK_THROWS_AS(integrate_disk(poly3({{1, 1}}), n3(1), n3(3)), Error);
  CHECK_THROWS_AS(integrate_disk(poly3({{-1, 1}}), n3(3), n3(9)), Error);
}

TEST_CASE("annulus integrals") {
  SUBCASE("dz/z between xi and p*xi vanishes") {
    const auto I = make(LaurentPoly(3), 1, 0, 10);
    for (long x : {3L, 6L, 12L, 15L, 9L * 7})
      CHECK(integrate_annulus(I, n3(x), n3(3 * x)).is_zero());
  }
  SUBCASE("without a residue term it is the difference of ell") {
    const LaurentPoly ell = poly3({{-2, 5}, {1, 1}, {3, 2}});
    const auto I = make(ell, 0, 0, 4);
    const PAdic a = n3(3), b = n3(18);
    CHECK(integrate_annulus(I, a, b).agrees_with(ell.evaluate(b) - ell.evaluate(a)));
  }
  SUBCASE("ell = z and c = 1 from 1 to 4 gives 3 + log0(4)") {
    const auto I = make(poly3({{1, 1}}), 1, -1, 1);
    CHECK(integrate_annulus(I, n3(1), n3(4)).agrees_with(n3(3) + log0(n3(4))));
  }
  SUBCASE("points outside the open annulus are refused") {
    const auto I = make(poly3({{1, 1}}), 1, 0, 2);
    CHECK_THROWS_AS(integrate_annulus(I, n3(1), n3(3)), Error);
    CHECK_THROWS_AS(integrate_annulus(I, n3(3), n3(9)), Error);
  }
}

TEST_CASE("abelian correction") {
  const LaurentPoly ell = poly3({{-1, 2}, {2, 1}});
  const auto plain = make(ell, 1, 0, 6);
  CHECK_THROWS_AS(abelian_integral_annulus(plain, n3(3), n3(9)), Error);
  const auto with_one = make(ell, 1, 0, 6, n3(1));
  const PAdic I0 = integrate_annulus(plain, n3(3), n3(27));
  CHECK(abelian_integral_annulus(with_one, n3(3), n3(27)).agrees_with(I0 + n3(2)));
  CHECK(abelian_integral_annulus(with_one, n3(3), n3(6)).agrees_with(integrate_annulus(plain, n3(3), n3(6))));
  const auto with_zero = make(ell, 1, 0, 6, PAdic::zero(3));
  CHECK(abelian_integral_annulus(with_zero, n3(9), n3(3)).agrees_with(integrate_annulus(plain, n3(9), n3(3))));
}

TEST_CASE("from_differential splits off the residue") {
  const auto I = AnnulusIntegrand::from_differential(poly3({{-1, 4}, {0, 1}, {-3, 3}}), 0, 2);
  CHECK(I.c.agrees_with(n3(4)));
  CHECK(I.ell.agrees_with(poly3({{1, 1}}) + LaurentPoly::monomial(PAdic::from_rational(mpq_class(-3, 2), 3), -2)));
}

TEST_CASE("path additivity on random annulus integrands") {
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<long> coeff(-300, 300), val(1, 5);
  for (int i = 0; i < 200; ++i) {
    std::map<long, mpz_class> c;
    for (long n = -4; n <= 4; ++n) c[n] = coeff(rng);
    const auto I = AnnulusIntegrand::from_differential(poly3(c), 0, 6);
    auto pt = [&] {
      long u = coeff(rng);
      if (u % 3 == 0) ++u;
      return PAdic::from_integer(ppow(3, val(rng)) * u, 3);
    };
    const PAdic a = pt(), b = pt(), d = pt();
    CHECK((integrate_annulus(I, a, b) + integrate_annulus(I, b, d)).agrees_with(integrate_annulus(I, a, d)));
  }
}

TEST_CASE("lambda zero counts") {
  CHECK_THROWS_AS(lambda_zero_count_annulus({LaurentData{poly3({{-2, 1}, {0, 1}}), 0, 1}}, 3, 1, 0), Error);
  CHECK_THROWS_AS(lambda_zero_count_annulus({LaurentData{poly3({{0, 1}, {2, 1}}), 0, 1}}, 3, 1, 2), Error);

  SUBCASE("t^-2 + t on (0, 1)") {
    const auto res = lambda_zero_count_annulus({LaurentData{poly3({{-2, 1}, {1, 1}}), 0, 1}}, 3, 1, 2);
    CHECK(res.bound == 8);
    CHECK(res.count <= res.bound);
    // lambda = -1/t + t^2/2 vanishes where t^3 = 2, at valuation 0.
    CHECK(res.count == 0);
  }

  SUBCASE("planted rational zeros agree with exhaustive enumeration") {
    // lambda = t - 36/t has the zeros +-6 at valuation 1.
    const auto res = lambda_zero_count_annulus({LaurentData{poly3({{0, 1}, {-2, 36}}), 0, 2}}, 3, 1, 1);
    CHECK(res.bound == 4);
    CHECK(res.count == 2);
    CHECK(enumerate_padic_zeros({{-1, -36}, {1, 1}}, 3, 0, 2, 8) == 2);
  }

  SUBCASE("zeros over C_p that are not in Q_p") {
    // lambda = t - 18/t: t^2 = 18 has no root in Q_3.
    const auto res = lambda_zero_count_annulus({LaurentData{poly3({{0, 1}, {-2, 18}}), 0, 2}}, 3, 1, 1);
    CHECK(res.count == 2);
    CHECK(enumerate_padic_zeros({{-1, -18}, {1, 1}}, 3, 0, 2, 8) == 0);
  }

  SUBCASE("the smallest count among admissible elements is reported") {
    std::vector<LaurentData> V{LaurentData{poly3({{0, 1}, {-2, 36}}), 0, 2}, LaurentData{poly3({{-2, 1}, {1, 1}}), 0, 2}};
    const auto res = lambda_zero_count_annulus(V, 3, 1, 2);
    CHECK(res.chosen == 1);
    CHECK(res.count == 0);
  }
}

TEST_CASE("counts never exceed the closed-form bound") {
  std::mt19937_64 rng(32);
  std::uniform_int_distribution<long> coeff(-100, 100), rank(1, 4), lo(-2, 1), width(1, 3);
  for (int i = 0; i < 300; ++i) {
    const long r = rank(rng);
    const long p = i % 2 == 0 ? 3 : 5;
    const long n1 = -2 - static_cast<long>(rng() % static_cast<unsigned long>(2 * r - 1));
    const long n2 = n1 + 2 * r;
    std::map<long, mpz_class> c;
    c[n1] = coeff(rng) * p + 1;
    c[n2] = coeff(rng) * p + 1;
    for (long n = n1 + 1; n < n2; ++n)
      if (n != -1) c[n] = coeff(rng);
    const long a = lo(rng);
    LaurentData d{LaurentPoly::from_integers(p, c, 30), a, a + width(rng)};
    const auto res = lambda_zero_count_annulus({d}, p, 1, r);
    CHECK(res.count <= res.bound);
  }
}
