#pragma once

#include <gmpxx.h>

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hyperchab/padic.hpp"

namespace hyperchab {

/// A finite sum of terms a_n z^n over Q_p, n ranging over all integers.
///
/// Absent exponents are exact zeros. A stored coefficient may be O(p^N): such a
/// term is "uncertain" and enters Newton polygons only as a lower bound.
class LaurentPoly {
 public:
  explicit LaurentPoly(long p = 3, long precision = kDefaultPrecision) : p_(p), prec_(precision) {}

  static LaurentPoly monomial(const PAdic& c, long n);
  /// Integer coefficients {n -> a_n} at the given precision.
  static LaurentPoly from_integers(long p, const std::map<long, mpz_class>& coeffs,
                                   long precision = kDefaultPrecision);

  long prime() const { return p_; }
  long default_precision() const { return prec_; }

  /// Sets a_n. Exact zeros (rational 0 with infinite precision) are not representable,
  /// so callers remove terms with erase().
  void set(long n, const PAdic& c);
  void erase(long n) { terms_.erase(n); }
  /// a_n, or O(p^default_precision) if absent.
  PAdic coeff(long n) const;
  bool has_term(long n) const { return terms_.count(n) != 0; }

  const std::map<long, PAdic>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  /// True if some stored coefficient has a nonzero known digit.
  bool has_definite_term() const;
  /// Extreme exponents among stored terms; requires !empty().
  long min_exponent() const;
  long max_exponent() const;

  LaurentPoly operator-() const;
  friend LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b);
  friend LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b);
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
  LaurentPoly scaled(const mpq_class& factor) const;
  LaurentPoly times(const PAdic& c) const;
  /// Multiply by z^k.
  LaurentPoly shifted(long k) const;
  LaurentPoly derivative() const;

  /// Value at a nonzero point.
  PAdic evaluate(const PAdic& z) const;

  /// Coefficientwise agreement to the smaller precision, treating absent terms as zero.
  bool agrees_with(const LaurentPoly& other) const;

  std::string to_string() const;

 private:
  long p_;
  long prec_;
  std::map<long, PAdic> terms_;
};

/// Lower convex hull of the points (n, v(a_n)).
struct NewtonPolygon {
  std::vector<std::pair<long, mpq_class>> vertices;
  /// Uncertain coefficients as (n, lower bound on v(a_n)).
  std::vector<std::pair<long, long>> uncertain;
  /// An uncertain point lies on or below the hull, or outside its exponent range.
  bool provisional = false;

  /// Segment slopes, left to right.
  std::vector<mpq_class> slopes() const;
};

NewtonPolygon newton_polygon(const LaurentPoly& f);

/// An endpoint of a valuation range; nullopt stands for -inf (lower) or +inf (upper).
using ValuationBound = std::optional<mpq_class>;

struct RangeSpec {
  ValuationBound lo;
  ValuationBound hi;
  bool lo_closed = false;
  bool hi_closed = false;
};

/// Number of zeros in C_p, with multiplicity, whose valuation lies in the range.
/// Throws ProvisionalPolygon when an uncertain coefficient could change the answer.
long count_zeros(const LaurentPoly& f, const RangeSpec& range);
long count_zeros(const LaurentPoly& f, const mpq_class& lo, const mpq_class& hi,
                 bool lo_closed = false, bool hi_closed = false);

/// The same count read off the hull segments: sum of lengths of segments with
/// slope -rho for rho in the range. Ignores uncertain points.
long count_zeros_from_hull(const NewtonPolygon& polygon, const RangeSpec& range);

/// A Laurent polynomial u standing for u(t) * h(t) with h a unit series that has
/// no zeros on the annulus lo < v(t) < hi.
struct LaurentData {
  LaurentPoly u;
  mpq_class lo;
  mpq_class hi;

  long count_zeros_on_domain() const;
};

/// e * floor(n / (p - e - 1)); requires p > e + 1.
long delta(long p, long e, long n);
/// 1 + n/2, the p = 2 estimate.
mpq_class delta2_bound(long n);
/// max sum_{j<=s} delta(p,e,m_j) over m_j >= 0 with sum m_j <= r.
long Delta(long s, long r, long p, long e);
/// 1 + n + delta(p, e, n).
long zero_bound_disk(long n_omega, long p, long e);

struct FormalIntegral {
  LaurentPoly ell;
  PAdic residue;
};

/// f = d(ell)/dz + residue / z with ell free of a constant term.
FormalIntegral formal_integrate(const LaurentPoly& f);

}  // namespace hyperchab
