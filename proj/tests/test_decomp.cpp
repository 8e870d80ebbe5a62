#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "hyperchab/decomp.hpp"
#include "hyperchab/oracle.hpp"

using namespace hyperchab;

namespace {

Decomposition decompose_roots(long p, std::vector<mpq_class> roots, mpq_class lead = 1) {
  return decompose(HyperellipticCurve::from_roots(p, lead, roots));
}

long count_kind(const Decomposition& D, AnnulusKind kind) {
  long n = 0;
  for (const auto& A : D.annuli) n += A.kind == kind ? 1 : 0;
  return n;
}

// Whether x^2 = a has a solution modulo p^k, by exhaustive search.
bool square_mod(const mpz_class& a, long p, long k) {
  const long m = ppow(p, k).get_si();
  const long target = mpz_class(((a % m) + m) % m).get_si();
  for (long x = 0; x < m; ++x)
    if ((x * x) % m == target) return true;
  return false;
}

AnnulusDescriptor descriptor(AnnulusKind kind, long nu, long g) {
  AnnulusDescriptor A;
  A.kind = kind;
  A.nu = nu;
  A.genus = g;
  A.gamma = PAdic::from_integer(1, 5);
  A.alpha = PAdic::from_integer(1, 5);
  A.a_const = PAdic::from_integer(3, 5);
  return A;
}

std::vector<PAdic> monomial(long k) {
  std::vector<PAdic> u(static_cast<std::size_t>(k) + 1, PAdic::zero(5));
  u.back() = PAdic::from_integer(1, 5);
  return u;
}

}  // namespace

TEST_CASE("a curve without clusters has no annuli") {
  const auto D = decompose_roots(7, {0, 1, 2, 3, 4, 5});
  CHECK(D.annuli.empty());
  CHECK(D.t_estimate == 0);
  // One residue disk per point of P^1(F_7).
  CHECK(D.disk_region_count() == 8);
  const CoverReport rep = cover_report(D, 2);
  CHECK(rep.exact());
  for (long h : rep.hits) CHECK(h > 0);
}

TEST_CASE("the p = 3 octic") {
  const auto D = decompose_roots(3, {0, 3, 9, 1, 2, 4, 5, 7});
  // {0,3,9} and {1,4,7} are odd clusters; {0,9} and {2,5} are pairs.
  CHECK(count_kind(D, AnnulusKind::Odd) == 2);
  CHECK(count_kind(D, AnnulusKind::Weierstrass) == 2);
  for (const auto& A : D.annuli)
    if (A.kind == AnnulusKind::Odd) CHECK(A.nu == 1);
  CHECK(verify_decomposition_cover(D, 4).exact());
}

TEST_CASE("one odd and one Weierstrass annulus at p = 7") {
  const auto D = decompose_roots(7, {0, 7, 49, 1, 2, 3, 4, 5});
  REQUIRE(D.annuli.size() == 2);
  CHECK(count_kind(D, AnnulusKind::Odd) == 1);
  CHECK(count_kind(D, AnnulusKind::Weierstrass) == 1);
  const auto& odd = D.annuli[0].kind == AnnulusKind::Odd ? D.annuli[0] : D.annuli[1];
  CHECK(odd.nu == 1);
  CHECK(odd.n1 == -2);
  CHECK(odd.n2 == 2);
}

TEST_CASE("even annulus with a square gamma") {
  const auto D = decompose_roots(7, {0, 7, 14, 21, 1, 2, 3, 5});
  REQUIRE(count_kind(D, AnnulusKind::Even) == 1);
  const auto& A = D.annuli.front();
  CHECK(A.nu == 2);
  CHECK(A.split);
  REQUIRE(A.gamma.has_value());
  REQUIRE(A.alpha.has_value());
  CHECK((*A.alpha * *A.alpha).agrees_with(*A.gamma));
  CHECK(square_mod(A.gamma->to_rational().get_num(), 7, 3));
  CHECK(A.alpha->unit_residue() <= 3);
}

TEST_CASE("even annulus with a non-square gamma is flagged") {
  const auto D = decompose_roots(7, {0, 7, 14, 21, 1, 2, 3, 4});
  REQUIRE(count_kind(D, AnnulusKind::Even) == 1);
  const auto& A = D.annuli.front();
  CHECK_FALSE(A.split);
  CHECK_FALSE(A.alpha.has_value());
  CHECK_FALSE(square_mod(A.gamma->to_rational().get_num() / ppow(7, A.gamma->valuation()), 7, 1));
  REQUIRE_FALSE(A.notes.empty());
  CHECK(A.notes.front().find("GammaNotSquare") != std::string::npos);
}

TEST_CASE("odd degree: infinity is a branch point") {
  const auto D = decompose_roots(5, {0, 5, 25, 1, 2});
  CHECK(D.genus == 2);
  CHECK(verify_decomposition_cover(D, 3).exact());
  long infinity_regions = 0;
  for (const auto& r : D.regions) infinity_regions += r.contains_infinity ? 1 : 0;
  CHECK(infinity_regions == 1);
}

TEST_CASE("p = 2 is refused") {
  CHECK_THROWS_AS(decompose_roots(2, {0, 1, 3, 5, 7}), Error);
}

TEST_CASE("random split curves: regions and annuli") {
  std::mt19937_64 rng(51);
  for (int i = 0; i < 60; ++i) {
    const long p = std::array<long, 3>{3, 5, 7}[static_cast<std::size_t>(i % 3)];
    std::uniform_int_distribution<long> deg(5, 8), val(0, 2), unit(0, 60), lead(1, 6);
    std::set<mpq_class> rs;
    const long d = deg(rng);
    while (static_cast<long>(rs.size()) < d) rs.insert(mpq_class(ppow(p, val(rng)) * unit(rng)));
    const auto D = decompose_roots(p, std::vector<mpq_class>(rs.begin(), rs.end()), lead(rng));
    INFO("curve " << i);
    CHECK(static_cast<long>(D.annuli.size()) <= 2 * D.genus - 1);
    CHECK(D.t_estimate >= 0);
    CHECK(D.t_estimate <= D.genus);
    for (const auto& r : D.regions) {
      if (r.is_annulus && r.origin.find("two-point") == std::string::npos) CHECK(r.branch_points == 0);
      if (!r.is_annulus) CHECK(r.branch_points <= 1);
    }
    CHECK(cover_report(D, p == 3 ? 3 : 2).exact());
    for (const auto& A : D.annuli) {
      const auto w = core_annulus_window(A.kind, A.nu, D.genus);
      CHECK(w.second - w.first <= 2 * D.genus - 2);
      if (A.kind == AnnulusKind::Odd) {
        CHECK(A.nu >= 1);
        CHECK(A.nu <= D.genus - 1);
      }
    }
  }
}

TEST_CASE("pullback examples") {
  SUBCASE("even, nu = 2, alpha = 1, u = 1") {
    const auto d = pullback_differential(descriptor(AnnulusKind::Even, 2, 3), monomial(0));
    REQUIRE(d.u.terms().size() == 1);
    CHECK(d.u.coeff(-2).agrees_with(PAdic::from_rational(mpq_class(1, 2), 5)));
  }
  SUBCASE("Weierstrass, alpha = 1, u = x") {
    const auto d = pullback_differential(descriptor(AnnulusKind::Weierstrass, 1, 3), monomial(1));
    REQUIRE(d.u.terms().size() == 2);
    CHECK(d.u.coeff(0).agrees_with(PAdic::from_rational(mpq_class(1, 2), 5)));
    CHECK(d.u.coeff(-2).agrees_with(PAdic::from_rational(mpq_class(3, 2), 5)));
  }
  SUBCASE("odd, nu = 1, gamma = 1, u = 1") {
    const auto d = pullback_differential(descriptor(AnnulusKind::Odd, 1, 3), monomial(0));
    REQUIRE(d.u.terms().size() == 1);
    CHECK(d.u.coeff(-2).agrees_with(PAdic::from_integer(1, 5)));
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(pullback_differential(descriptor(AnnulusKind::Odd, 1, 3), monomial(3)), Error);
    auto A = descriptor(AnnulusKind::Even, 2, 3);
    A.alpha.reset();
    CHECK_THROWS_AS(pullback_differential(A, monomial(0)), Error);
    auto B = descriptor(AnnulusKind::Odd, 1, 3);
    B.gamma.reset();
    CHECK_THROWS_AS(pullback_differential(B, monomial(0)), Error);
  }
}

TEST_CASE("odd pullbacks have even exponents only") {
  std::mt19937_64 rng(52);
  std::uniform_int_distribution<long> coeff(-20, 20);
  for (long g = 2; g <= 8; ++g)
    for (long nu = 1; nu < g; ++nu) {
      std::vector<PAdic> u;
      for (long k = 0; k < g; ++k) u.push_back(PAdic::from_integer(coeff(rng), 5));
      const auto d = pullback_differential(descriptor(AnnulusKind::Odd, nu, g), u);
      for (const auto& term : d.u.terms()) CHECK(term.first % 2 == 0);
    }
}

TEST_CASE("Weierstrass pullback matches direct expansion") {
  // u(t + a/t) / (2t) expanded with binomial coefficients computed here.
  const long g = 5;
  const mpq_class a = 3;
  std::mt19937_64 rng(53);
  std::uniform_int_distribution<long> coeff(-9, 9);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<long> c(g);
    std::vector<PAdic> u;
    for (auto& x : c) {
      x = coeff(rng);
      u.push_back(PAdic::from_integer(x, 5));
    }
    std::map<long, mpq_class> expected;
    for (long k = 0; k < g; ++k) {
      mpz_class binom = 1;
      for (long j = 0; j <= k; ++j) {
        mpq_class apow = 1;
        for (long s = 0; s < j; ++s) apow *= a;
        expected[k - 2 * j - 1] += mpq_class(c[static_cast<std::size_t>(k)]) * mpq_class(binom) * apow / 2;
        binom = binom * (k - j) / (j + 1);
      }
    }
    const auto d = pullback_differential(descriptor(AnnulusKind::Weierstrass, 1, g), u);
    for (const auto& [n, value] : expected) CHECK(d.u.coeff(n).agrees_with(PAdic::from_rational(value, 5)));
  }
}

TEST_CASE("core windows") {
  CHECK(core_annulus_window(AnnulusKind::Odd, 1, 3) == std::pair<long, long>{-2, 2});
  CHECK(core_annulus_window(AnnulusKind::Even, 2, 3) == std::pair<long, long>{-2, 0});
  CHECK(core_annulus_window(AnnulusKind::Weierstrass, 1, 3) == std::pair<long, long>{-3, 1});
}

TEST_CASE("windows for subspaces") {
  const auto top = good_window_subspace(descriptor(AnnulusKind::Even, 2, 4), 4, 4);
  CHECK(top.n2 - top.n1 == 2);
  CHECK(top.n1 < -1);
  CHECK(top.n2 > -1);
  const auto odd = good_window_subspace(descriptor(AnnulusKind::Odd, 2, 5), 5, 2);
  CHECK(odd.n2 - odd.n1 == 6);
  CHECK(odd.k_lo <= 2);
  CHECK(odd.k_hi >= 2);
  const auto w = good_window_subspace(descriptor(AnnulusKind::Weierstrass, 1, 4), 4, 1);
  CHECK(w.k_lo == 0);
  CHECK(w.k_hi == 3);
  CHECK(w.n1 == -4);
  CHECK(w.n2 == 2);
  CHECK_THROWS_AS(good_window_subspace(descriptor(AnnulusKind::Odd, 1, 3), 3, 0), Error);
}

TEST_CASE("valuation-matrix mode yields the tree and kinds only") {
  auto C = HyperellipticCurve::from_roots(5, 1, {0, 5, 25, 1, 2, 3, 4, 6});
  std::vector<std::vector<mpq_class>> M(8, std::vector<mpq_class>(8, 0));
  M[0][1] = M[1][0] = mpq_class(1, 2);
  M[0][2] = M[2][0] = mpq_class(1, 2);
  M[1][2] = M[2][1] = mpq_class(1, 2);
  M[3][4] = M[4][3] = mpq_class(3, 2);
  C.valuation_matrix = M;
  const auto D = decompose(C);
  CHECK_FALSE(D.concrete);
  CHECK(count_kind(D, AnnulusKind::Odd) == 1);
  CHECK(count_kind(D, AnnulusKind::Weierstrass) == 1);
  CHECK_THROWS_AS(cover_report(D, 2), Error);
}
