#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <limits>
#include <string>
#include <utility>

#include "hyperchab/error.hpp"

namespace hyperchab {

/// Parameters of the p-adic field k: residue characteristic p, ramification
/// index e and residue field size q = p^f. Only Q_p is represented concretely;
/// e and q enter through the bound formulas.
struct FieldParams {
  long p = 3;
  long e = 1;
  long q = 3;

  FieldParams() = default;
  FieldParams(long p_, long e_, long q_);

  /// Residue degree f with q = p^f.
  long residue_degree() const;
  /// True when p > e + 1, the regime in which the closed-form corrections apply.
  bool tame() const { return p > e + 1; }
};

bool is_prime(long n);

/// p^k as a GMP integer (k >= 0).
mpz_class ppow(long p, long k);

/// p-adic valuation of a nonzero integer / rational.
long valuation(const mpz_class& x, long p);
long valuation(const mpq_class& x, long p);

inline constexpr long kDefaultPrecision = 20;

/// An element of Q_p known modulo p^N (absolute precision N).
///
/// A nonzero element is p^val * unit with unit in [1, p^(N - val)) and p not
/// dividing unit. An element whose known digits are all zero has
/// val == kInfiniteValuation and represents O(p^N).
class PAdic {
 public:
  static constexpr long kInfiniteValuation = std::numeric_limits<long>::max();

  PAdic() = default;

  static PAdic zero(long p, long prec = kDefaultPrecision);
  static PAdic from_integer(const mpz_class& x, long p, long prec = kDefaultPrecision);
  static PAdic from_rational(const mpq_class& x, long p, long prec = kDefaultPrecision);
  /// p^val * unit, reduced to absolute precision prec. unit need not be reduced
  /// but must be prime to p.
  static PAdic from_parts(long p, long val, const mpz_class& unit, long prec);

  long prime() const { return p_; }
  long valuation() const { return val_; }
  const mpz_class& unit() const { return unit_; }
  long precision() const { return prec_; }
  /// Number of known digits after the leading one; zero for O(p^N).
  long relative_precision() const { return is_zero() ? 0 : prec_ - val_; }
  bool is_zero() const { return val_ == kInfiniteValuation; }

  /// The unit's residue mod p (0 for zero elements).
  long unit_residue() const;

  /// Exact rational p^val * unit (0 for zero elements).
  mpq_class to_rational() const;

  /// Drop precision to min(precision(), prec).
  PAdic reduced(long prec) const;

  /// Multiply by an exact rational; precision is relative to the exact factor.
  PAdic scaled(const mpq_class& factor) const;

  PAdic operator-() const;
  PAdic& operator+=(const PAdic& rhs) { return *this = *this + rhs; }
  PAdic& operator-=(const PAdic& rhs) { return *this = *this - rhs; }
  PAdic& operator*=(const PAdic& rhs) { return *this = *this * rhs; }

  friend PAdic operator+(const PAdic& a, const PAdic& b);
  friend PAdic operator-(const PAdic& a, const PAdic& b);
  friend PAdic operator*(const PAdic& a, const PAdic& b);
  /// Throws DivisionByIndistinguishableZero when b is O(p^N).
  friend PAdic operator/(const PAdic& a, const PAdic& b);

  /// Integer power; negative exponents invert.
  PAdic pow(long n) const;

  /// a and b agree to the smaller of their precisions.
  bool agrees_with(const PAdic& other) const { return (*this - other).is_zero(); }

  std::string to_string() const;

 private:
  PAdic(long p, long val, mpz_class unit, long prec)
      : p_(p), val_(val), unit_(std::move(unit)), prec_(prec) {}

  long p_ = 2;
  long val_ = kInfiniteValuation;
  mpz_class unit_ = 0;
  long prec_ = 0;
};

/// Square root with the root whose unit residue lies in {1, ..., (p-1)/2}.
PAdic sqrt(const PAdic& a);

/// Whether a has a square root in Q_p (p odd: parity + Legendre symbol;
/// p = 2: even valuation and unit = 1 mod 8).
bool is_square(const PAdic& a);

/// x = p^m * zeta * u with zeta a root of unity and u = 1 mod p (mod 4 if p = 2).
struct TeichmullerParts {
  long m = 0;
  PAdic zeta;
  PAdic u;

  long zeta_residue() const { return zeta.unit_residue(); }
};

TeichmullerParts teichmuller_decompose(const PAdic& x);

/// The branch of the p-adic logarithm with log0(p) = 0, vanishing on roots of
/// unity. The result is known to the relative precision of x.
PAdic log0(const PAdic& x);

}  // namespace hyperchab
