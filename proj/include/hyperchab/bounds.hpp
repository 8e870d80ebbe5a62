#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>

namespace hyperchab {

long disk_count_bound(long q, long g, long t);
long annulus_count_bound(long g, long t);
/// 2r + e*floor(2r/(p-e-1)).
long B_A(long p, long e, long r);
long points_on_disks_bound(long N_D, long r, long p, long e);
/// (2g-3+t) * B_A(p, e, r+2); throws RankTooLarge when r > g-3.
long points_on_annuli_bound(long g, long t, long p, long e, long r);

struct LocalBound {
  long value = 0;
  /// (g-1)(2+2q+4mu(r+3)) + g*max(3q-4mu, 2mu*r) with mu = (p-1)/(p-e-1).
  mpq_class majorant_fine;
  /// g(2+5q+6mu(r+2)).
  mpq_class majorant_coarse;
};

/// The closed form for N(k, g, r); checks value <= majorant_fine <= majorant_coarse.
LocalBound N_local(long p, long e, long q, long g, long r);
/// Maximum over 0 <= t <= g of the disk plus annulus point bounds.
long N_local_by_maximization(long p, long e, long q, long g, long r);

struct RationalBound {
  std::optional<long> value;
  std::string note;
};

/// Closed form for d = 1; for d > 1 no value, only a note.
RationalBound R_rational(long d, long g, long r);
long torsion_bound(long g);
/// 8rg + 33(g-1) - 1 for 1 <= r <= g-3.
long improved_bound(long g, long r);

struct RhologBounds {
  long annulus = 0;
  long core_disks = 0;
  long core_annuli = 0;
  long disk_part = 0;
  long laurent_image = 0;
  long total = 0;
};

RhologBounds rholog_bounds(long g);
/// 1 - (288(g-1)^2 + 398(g-1) + 22) / 2^g.
mpq_class density_lower_bound(long g);
mpz_class density_coefficient(long g);

struct UnlikelyN {
  long n = 0;
  /// Whether the shortcut n = 5 + 2r satisfies the strict inequality (for dim_B = 3g-3).
  bool shortcut_sufficient = true;
  long shortcut = 0;
};

UnlikelyN min_unlikely_n(long dim_B, long g, long r);

struct AsymptoticEnvelope {
  long prime = 0;
  mpz_class value;
};

/// g(p^d + d(r+1)) with p the smallest prime above d+1; an order-of-magnitude envelope.
AsymptoticEnvelope asymptotic_R(long d, long g, long r);

struct BoundReport {
  long p = 3, e = 1, q = 3, d = 1, g = 3, r = 0, t = 0;
  long disk_count = 0;
  long annulus_count = 0;
  std::optional<long> B_A_value;
  std::optional<long> points_on_disks;
  std::optional<long> points_on_annuli;
  std::optional<LocalBound> N_local_value;
  std::optional<long> N_local_maximized;
  RationalBound R_rational_value;
  std::optional<long> torsion;
  std::optional<long> improved;
  RhologBounds rholog;
  mpq_class density_lower;
  UnlikelyN unlikely;
  AsymptoticEnvelope envelope;
};

/// Evaluates every bound that applies to the inputs; inapplicable entries stay empty.
BoundReport make_bound_report(long p, long e, long q, long d, long g, long r, long t);

}  // namespace hyperchab
