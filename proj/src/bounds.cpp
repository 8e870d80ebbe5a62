#include "hyperchab/bounds.hpp"

#include <algorithm>

#include "hyperchab/error.hpp"
#include "hyperchab/padic.hpp"
#include "hyperchab/series.hpp"

namespace hyperchab {

namespace {

void require_tame(long p, long e) {
  if (!is_prime(p)) fail(Errc::InvalidInput, "p must be prime");
  if (e < 1) fail(Errc::InvalidInput, "e must be >= 1");
  if (p <= e + 1) fail(Errc::UnsupportedRegime, "this bound requires p > e + 1");
}

void require_rank(long g, long r) {
  if (r < 0) fail(Errc::InvalidInput, "rank must be nonnegative");
  if (r > g - 3) fail(Errc::RankTooLarge, "the bound requires r <= g - 3");
}

void require_t(long g, long t) {
  if (g < 2) fail(Errc::InvalidInput, "genus must be >= 2");
  if (t < 0 || t > g) fail(Errc::InvalidInput, "toric rank must satisfy 0 <= t <= g");
}

}  // namespace

long disk_count_bound(long q, long g, long t) {
  require_t(g, t);
  return (5 * q + 2) * (g - 1) - 3 * q * (t - 1);
}

long annulus_count_bound(long g, long t) {
  require_t(g, t);
  return 2 * g - 3 + t;
}

long B_A(long p, long e, long r) {
  require_tame(p, e);
  if (r < 1) fail(Errc::InvalidInput, "B_A requires r >= 1");
  return 2 * r + delta(p, e, 2 * r);
}

long points_on_disks_bound(long N_D, long r, long p, long e) {
  require_tame(p, e);
  return N_D + 2 * r + delta(p, e, 2 * r);
}

long points_on_annuli_bound(long g, long t, long p, long e, long r) {
  require_tame(p, e);
  require_rank(g, r);
  return annulus_count_bound(g, t) * B_A(p, e, r + 2);
}

LocalBound N_local(long p, long e, long q, long g, long r) {
  require_tame(p, e);
  if (p % 2 == 0) fail(Errc::OddPrimeRequired, "N_local requires odd p");
  if (g < 3) fail(Errc::InvalidInput, "N_local requires g >= 3");
  require_rank(g, r);
  const long shift = p - e - 1;
  const long annulus_term = 2 * r + 4 + e * ((2 * (r + 2)) / shift);
  LocalBound out;
  out.value = (5 * q + 2) * (g - 1) + 3 * q + 2 * r + e * ((2 * r) / shift) + (2 * g - 3) * annulus_term +
              g * std::max(0L, annulus_term - 3 * q);
  const mpq_class mu(p - 1, shift);
  out.majorant_fine = mpq_class(g - 1) * (2 + 2 * q + 4 * mu * (r + 3)) +
                      mpq_class(g) * std::max<mpq_class>(mpq_class(3 * q) - 4 * mu, 2 * mu * r);
  out.majorant_coarse = mpq_class(g) * (2 + 5 * q + 6 * mu * (r + 2));
  if (!(out.value <= out.majorant_fine && out.majorant_fine <= out.majorant_coarse))
    fail(Errc::BoundViolated, "closed form exceeds its stated majorants");
  return out;
}

long N_local_by_maximization(long p, long e, long q, long g, long r) {
  require_rank(g, r);
  long best = 0;
  for (long t = 0; t <= g; ++t) {
    const long disks = points_on_disks_bound(disk_count_bound(q, g, t), r, p, e);
    const long annuli = points_on_annuli_bound(g, t, p, e, r);
    best = std::max(best, disks + annuli);
  }
  return best;
}

RationalBound R_rational(long d, long g, long r) {
  if (d < 1) fail(Errc::InvalidInput, "d must be >= 1");
  if (g < 3) fail(Errc::InvalidInput, "R requires g >= 3");
  require_rank(g, r);
  RationalBound out;
  if (d == 1) {
    out.value = 8 * (r + 4) * (g - 1) + std::max(1L, 4 * r) * g;
    out.note = "closed form for number fields of degree 1";
  } else {
    out.note = "unevaluated: only the order of magnitude g(p^d + d(r+1)) is available for d > 1";
  }
  return out;
}

long torsion_bound(long g) {
  if (g < 3) fail(Errc::InvalidInput, "torsion bound requires g >= 3");
  return 33 * (g - 1) + 1;
}

long improved_bound(long g, long r) {
  if (r < 1 || r > g - 3) fail(Errc::RankOutOfRange, "improved bound requires 1 <= r <= g - 3");
  return 8 * r * g + 33 * (g - 1) - 1;
}

RhologBounds rholog_bounds(long g) {
  if (g < 2) fail(Errc::InvalidInput, "genus must be >= 2");
  RhologBounds b;
  b.annulus = 48 * (g - 1) + 31;
  b.core_disks = 20 * g - 18;
  b.core_annuli = 3 * g - 3;
  b.disk_part = 5 * b.core_disks + 6 * g - 6;
  b.laurent_image = 3 * (2 * g - 2) + 3;
  b.total = 144 * (g - 1) * (g - 1) + 199 * (g - 1) + 10;
  if (b.disk_part + b.core_annuli * b.annulus != b.total)
    fail(Errc::BoundViolated, "assembled image bound disagrees with the closed form");
  return b;
}

mpz_class density_coefficient(long g) {
  const mpz_class h = g - 1;
  return 288 * h * h + 398 * h + 22;
}

mpq_class density_lower_bound(long g) {
  if (g < 2) fail(Errc::InvalidInput, "genus must be >= 2");
  const mpz_class coefficient = density_coefficient(g);
  if (coefficient != 2 * mpz_class(rholog_bounds(g).total) + 2)
    fail(Errc::BoundViolated, "density coefficient is not 2 * total + 2");
  mpq_class out = 1 - mpq_class(coefficient, ppow(2, g));
  out.canonicalize();
  return out;
}

UnlikelyN min_unlikely_n(long dim_B, long g, long r) {
  if (g < 2 || dim_B < 0 || r < 0) fail(Errc::InvalidInput, "need g >= 2, dim_B >= 0, r >= 0");
  const mpq_class threshold = mpq_class(dim_B + g, g - 1) + mpq_class(g * r, g - 1);
  mpz_class fl;
  mpz_fdiv_q(fl.get_mpz_t(), threshold.get_num_mpz_t(), threshold.get_den_mpz_t());
  UnlikelyN out;
  out.n = fl.get_si() + 1;
  out.shortcut = 5 + 2 * r;
  out.shortcut_sufficient = mpq_class(out.shortcut) > threshold;
  return out;
}

AsymptoticEnvelope asymptotic_R(long d, long g, long r) {
  if (d < 1) fail(Errc::InvalidInput, "d must be >= 1");
  AsymptoticEnvelope out;
  out.prime = d + 2;
  while (!is_prime(out.prime)) ++out.prime;
  out.value = mpz_class(g) * (ppow(out.prime, d) + mpz_class(d) * (r + 1));
  return out;
}

BoundReport make_bound_report(long p, long e, long q, long d, long g, long r, long t) {
  BoundReport rep;
  rep.p = p;
  rep.e = e;
  rep.q = q;
  rep.d = d;
  rep.g = g;
  rep.r = r;
  rep.t = t;
  FieldParams params(p, e, q);
  rep.disk_count = disk_count_bound(q, g, t);
  rep.annulus_count = annulus_count_bound(g, t);
  const bool tame = params.tame();
  if (tame && r >= 1) rep.B_A_value = B_A(p, e, r);
  if (tame) rep.points_on_disks = points_on_disks_bound(rep.disk_count, r, p, e);
  if (tame && r <= g - 3) rep.points_on_annuli = points_on_annuli_bound(g, t, p, e, r);
  if (tame && p % 2 == 1 && g >= 3 && r <= g - 3) {
    rep.N_local_value = N_local(p, e, q, g, r);
    rep.N_local_maximized = N_local_by_maximization(p, e, q, g, r);
    if (*rep.N_local_maximized != rep.N_local_value->value)
      fail(Errc::BoundViolated, "maximization over t disagrees with the closed form");
  }
  if (g >= 3 && r <= g - 3) rep.R_rational_value = R_rational(d, g, r);
  if (g >= 3) rep.torsion = torsion_bound(g);
  if (r >= 1 && r <= g - 3) rep.improved = improved_bound(g, r);
  rep.rholog = rholog_bounds(g);
  rep.density_lower = density_lower_bound(g);
  rep.unlikely = min_unlikely_n(3 * g - 3, g, r);
  rep.envelope = asymptotic_R(d, g, r);
  return rep;
}

}  // namespace hyperchab
