#pragma once

#include <gmpxx.h>

#include <optional>
#include <vector>

#include "hyperchab/padic.hpp"
#include "hyperchab/series.hpp"

namespace hyperchab {

/// An integrand on the annulus lo < v(z) < hi written as d(ell) + c dz/z, with an
/// optional externally supplied abelian correction constant.
struct AnnulusIntegrand {
  LaurentPoly ell;
  PAdic c;
  std::optional<PAdic> a;
  mpq_class lo;
  mpq_class hi;

  /// Build from the Laurent part of a differential u(z) dz.
  static AnnulusIntegrand from_differential(const LaurentPoly& u, const mpq_class& lo,
                                            const mpq_class& hi,
                                            std::optional<PAdic> a = std::nullopt);

  bool contains(const PAdic& z) const;
};

/// ell(xi1) - ell(xi0) for ell with nonnegative exponents and v(xi) > 0.
PAdic integrate_disk(const LaurentPoly& ell, const PAdic& xi0, const PAdic& xi1);

/// (ell + c Log0)(xi1) - (ell + c Log0)(xi0).
PAdic integrate_annulus(const AnnulusIntegrand& I, const PAdic& xi0, const PAdic& xi1);

/// integrate_annulus plus a * (v(xi1) - v(xi0)).
PAdic abelian_integral_annulus(const AnnulusIntegrand& I, const PAdic& xi0, const PAdic& xi1);

struct LambdaZeroCount {
  long bound = 0;
  long count = 0;
  /// Index into the input list of the element attaining the count.
  std::size_t chosen = 0;
};

/// Closed-form bound 2r + delta(p, e, 2r) next to the Newton-polygon count of zeros
/// of the antiderivative of the best admissible element of V on its domain.
LambdaZeroCount lambda_zero_count_annulus(const std::vector<LaurentData>& V, long p, long e, long r);

}  // namespace hyperchab
