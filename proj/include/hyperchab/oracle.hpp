#pragma once

#include <gmpxx.h>

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "hyperchab/curve.hpp"
#include "hyperchab/decomp.hpp"

namespace hyperchab {

struct PointSearchResult {
  /// Affine points (x, y), sorted, closed under y -> -y.
  std::vector<std::pair<mpq_class, mpq_class>> affine;
  long points_at_infinity = 0;

  long total() const { return static_cast<long>(affine.size()) + points_at_infinity; }
};

/// All (x, y) in Q^2 with x = a/b in lowest terms, |a|, |b| <= H and y^2 = f(x), plus the
/// points at infinity. f has rational coefficients in ascending degree.
PointSearchResult search_rational_points(const std::vector<mpq_class>& f, long H);
PointSearchResult search_rational_points_serial(const std::vector<mpq_class>& f, long H);

/// Number of distinct roots in Q_p of sum c_n z^n with valuation strictly between lo and hi,
/// each certified by Hensel's lemma while scanning z = p^m u, u mod p^(N-m).
long enumerate_padic_zeros(const std::map<long, mpq_class>& coeffs, long p, long lo, long hi, long N);
long enumerate_padic_zeros_serial(const std::map<long, mpq_class>& coeffs, long p, long lo, long hi, long N);

struct CoverReport {
  long points_checked = 0;
  /// Sample points covered by no region or by several, rendered as text.
  std::vector<std::string> gaps;
  std::vector<std::string> overlaps;
  /// Sample points falling in each region.
  std::vector<long> hits;

  bool exact() const { return gaps.empty() && overlaps.empty(); }
};

/// Tests the representatives x in Z/p^N, 1/y for y in pZ/p^N nonzero, and infinity
/// against the regions of the decomposition.
CoverReport cover_report(const Decomposition& D, long N);
CoverReport cover_report_serial(const Decomposition& D, long N);
/// Throws CoverageGap or DoubleCover unless the cover is exact.
CoverReport verify_decomposition_cover(const Decomposition& D, long N);

}  // namespace hyperchab
