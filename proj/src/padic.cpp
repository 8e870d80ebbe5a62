#include "hyperchab/padic.hpp"

#include <algorithm>
#include <sstream>

namespace hyperchab {

namespace {

mpz_class mod_positive(const mpz_class& x, const mpz_class& m) {
  mpz_class r;
  mpz_mod(r.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
  return r;
}

mpz_class inverse_mod(const mpz_class& x, const mpz_class& m) {
  mpz_class r;
  if (mpz_invert(r.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t()) == 0)
    fail(Errc::InvalidInput, "inverse_mod: argument not invertible");
  return r;
}

void require_same_prime(const PAdic& a, const PAdic& b) {
  if (a.prime() != b.prime())
    fail(Errc::InvalidInput, "p-adic operands over different primes");
}

long floor_log(long n, long p) {
  long k = 0;
  for (long x = n; x >= p; x /= p) ++k;
  return k;
}

// Tonelli-Shanks for an odd prime p and a quadratic residue a mod p.
mpz_class sqrt_mod_prime(const mpz_class& a_in, long p) {
  const mpz_class P = p;
  mpz_class a = mod_positive(a_in, P);
  if (a == 0) return 0;
  mpz_class q = p - 1;
  long s = 0;
  while (mpz_even_p(q.get_mpz_t())) {
    q /= 2;
    ++s;
  }
  mpz_class z = 2;
  while (mpz_legendre(z.get_mpz_t(), P.get_mpz_t()) != -1) ++z;
  mpz_class c, x, t, b;
  mpz_powm(c.get_mpz_t(), z.get_mpz_t(), q.get_mpz_t(), P.get_mpz_t());
  mpz_class e = (q + 1) / 2;
  mpz_powm(x.get_mpz_t(), a.get_mpz_t(), e.get_mpz_t(), P.get_mpz_t());
  mpz_powm(t.get_mpz_t(), a.get_mpz_t(), q.get_mpz_t(), P.get_mpz_t());
  long m = s;
  while (t != 1) {
    long i = 0;
    mpz_class tt = t;
    while (tt != 1) {
      tt = mod_positive(tt * tt, P);
      ++i;
    }
    b = c;
    for (long j = 0; j < m - i - 1; ++j) b = mod_positive(b * b, P);
    x = mod_positive(x * b, P);
    c = mod_positive(b * b, P);
    t = mod_positive(t * c, P);
    m = i;
  }
  return x;
}

}  // namespace

FieldParams::FieldParams(long p_, long e_, long q_) : p(p_), e(e_), q(q_) {
  if (!is_prime(p)) fail(Errc::InvalidInput, "p must be prime");
  if (e < 1) fail(Errc::InvalidInput, "ramification index must be >= 1");
  residue_degree();
}

long FieldParams::residue_degree() const {
  long f = 0;
  long x = q;
  while (x > 1 && x % p == 0) {
    x /= p;
    ++f;
  }
  if (x != 1 || f < 1) fail(Errc::InvalidInput, "q must be a positive power of p");
  return f;
}

bool is_prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

mpz_class ppow(long p, long k) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(p),
                static_cast<unsigned long>(std::max(0L, k)));
  return r;
}

long valuation(const mpz_class& x, long p) {
  if (x == 0) return PAdic::kInfiniteValuation;
  const mpz_class P = p;
  mpz_class t = x;
  return static_cast<long>(mpz_remove(t.get_mpz_t(), t.get_mpz_t(), P.get_mpz_t()));
}

long valuation(const mpq_class& x, long p) {
  if (x == 0) return PAdic::kInfiniteValuation;
  return valuation(mpz_class(x.get_num()), p) - valuation(mpz_class(x.get_den()), p);
}

PAdic PAdic::zero(long p, long prec) { return PAdic(p, kInfiniteValuation, 0, prec); }

PAdic PAdic::from_integer(const mpz_class& x, long p, long prec) {
  return from_parts(p, 0, x, prec);
}

PAdic PAdic::from_rational(const mpq_class& x, long p, long prec) {
  if (x == 0) return zero(p, prec);
  const mpz_class P = p;
  mpz_class num = x.get_num();
  mpz_class den = x.get_den();
  long a = static_cast<long>(mpz_remove(num.get_mpz_t(), num.get_mpz_t(), P.get_mpz_t()));
  long b = static_cast<long>(mpz_remove(den.get_mpz_t(), den.get_mpz_t(), P.get_mpz_t()));
  long v = a - b;
  if (v >= prec) return zero(p, prec);
  mpz_class mod = ppow(p, prec - v);
  return PAdic(p, v, mod_positive(num * inverse_mod(den, mod), mod), prec);
}

PAdic PAdic::from_parts(long p, long val, const mpz_class& unit, long prec) {
  if (unit == 0) return zero(p, prec);
  const mpz_class P = p;
  mpz_class u = unit;
  long w = static_cast<long>(mpz_remove(u.get_mpz_t(), u.get_mpz_t(), P.get_mpz_t()));
  long v = val + w;
  if (v >= prec) return zero(p, prec);
  return PAdic(p, v, mod_positive(u, ppow(p, prec - v)), prec);
}

long PAdic::unit_residue() const {
  if (is_zero()) return 0;
  return static_cast<long>(mpz_fdiv_ui(unit_.get_mpz_t(), static_cast<unsigned long>(p_)));
}

mpq_class PAdic::to_rational() const {
  if (is_zero()) return 0;
  mpq_class r(unit_);
  if (val_ >= 0)
    r *= mpq_class(ppow(p_, val_));
  else
    r /= mpq_class(ppow(p_, -val_));
  r.canonicalize();
  return r;
}

PAdic PAdic::reduced(long prec) const {
  if (prec >= prec_) return *this;
  if (is_zero()) return zero(p_, prec);
  return from_parts(p_, val_, unit_, prec);
}

PAdic PAdic::scaled(const mpq_class& factor) const {
  if (factor == 0) return zero(p_, prec_);
  long vf = hyperchab::valuation(factor, p_);
  if (is_zero()) return zero(p_, prec_ + vf);
  mpz_class num = factor.get_num();
  mpz_class den = factor.get_den();
  const mpz_class P = p_;
  mpz_remove(num.get_mpz_t(), num.get_mpz_t(), P.get_mpz_t());
  mpz_remove(den.get_mpz_t(), den.get_mpz_t(), P.get_mpz_t());
  long rel = prec_ - val_;
  mpz_class mod = ppow(p_, rel);
  mpz_class u = mod_positive(unit_ * num * inverse_mod(den, mod), mod);
  return PAdic(p_, val_ + vf, u, val_ + vf + rel);
}

PAdic PAdic::operator-() const {
  if (is_zero()) return *this;
  mpz_class mod = ppow(p_, prec_ - val_);
  return PAdic(p_, val_, mod_positive(-unit_, mod), prec_);
}

PAdic operator+(const PAdic& a, const PAdic& b) {
  require_same_prime(a, b);
  const long p = a.p_;
  const long prec = std::min(a.prec_, b.prec_);
  if (a.is_zero()) return b.reduced(prec);
  if (b.is_zero()) return a.reduced(prec);
  const long v = std::min(a.val_, b.val_);
  if (v >= prec) return PAdic::zero(p, prec);
  mpz_class s = a.unit_ * ppow(p, a.val_ - v) + b.unit_ * ppow(p, b.val_ - v);
  s = mod_positive(s, ppow(p, prec - v));
  return PAdic::from_parts(p, v, s, prec);
}

PAdic operator-(const PAdic& a, const PAdic& b) { return a + (-b); }

PAdic operator*(const PAdic& a, const PAdic& b) {
  require_same_prime(a, b);
  const long p = a.p_;
  if (a.is_zero() && b.is_zero()) return PAdic::zero(p, a.prec_ + b.prec_);
  if (a.is_zero()) return PAdic::zero(p, a.prec_ + b.val_);
  if (b.is_zero()) return PAdic::zero(p, b.prec_ + a.val_);
  const long val = a.val_ + b.val_;
  const long rel = std::min(a.prec_ - a.val_, b.prec_ - b.val_);
  mpz_class mod = ppow(p, rel);
  return PAdic(p, val, mod_positive(a.unit_ * b.unit_, mod), val + rel);
}

PAdic operator/(const PAdic& a, const PAdic& b) {
  require_same_prime(a, b);
  if (b.is_zero())
    fail(Errc::DivisionByIndistinguishableZero,
         "division by an element indistinguishable from zero (" + b.to_string() + ")");
  const long p = a.p_;
  if (a.is_zero()) return PAdic::zero(p, a.prec_ - b.val_);
  const long val = a.val_ - b.val_;
  const long rel = std::min(a.prec_ - a.val_, b.prec_ - b.val_);
  mpz_class mod = ppow(p, rel);
  return PAdic(p, val, mod_positive(a.unit_ * inverse_mod(b.unit_, mod), mod), val + rel);
}

PAdic PAdic::pow(long n) const {
  if (n == 0) {
    if (is_zero()) fail(Errc::ZeroArgument, "0^0");
    return from_integer(1, p_, prec_ - val_);
  }
  if (n < 0) {
    return from_integer(1, p_, prec_ - val_) / pow(-n);
  }
  PAdic result = from_integer(1, p_, prec_ - val_);
  PAdic base = *this;
  bool first = true;
  for (long k = n; k > 0; k >>= 1) {
    if (k & 1) {
      result = first ? base : result * base;
      first = false;
    }
    if (k > 1) base = base * base;
  }
  return result;
}

std::string PAdic::to_string() const {
  std::ostringstream os;
  if (is_zero()) {
    os << "O(" << p_ << "^" << prec_ << ")";
    return os.str();
  }
  os << p_ << "^" << val_ << " * " << unit_.get_str() << " + O(" << p_ << "^" << prec_ << ")";
  return os.str();
}

bool is_square(const PAdic& a) {
  if (a.is_zero()) return true;
  if (a.valuation() % 2 != 0) return false;
  const long p = a.prime();
  if (p == 2) {
    if (a.relative_precision() < 3)
      fail(Errc::PrecisionInsufficient, "need 3 known digits to decide 2-adic squares");
    return mpz_fdiv_ui(a.unit().get_mpz_t(), 8) == 1;
  }
  const mpz_class P = p;
  return mpz_legendre(a.unit().get_mpz_t(), P.get_mpz_t()) == 1;
}

PAdic sqrt(const PAdic& a) {
  const long p = a.prime();
  if (p == 2) fail(Errc::OddPrimeRequired, "sqrt is implemented for odd p only");
  if (a.is_zero()) {
    long prec = a.precision() >= 0 ? a.precision() / 2 : -((-a.precision() + 1) / 2);
    return PAdic::zero(p, prec);
  }
  if (a.valuation() % 2 != 0) fail(Errc::NotASquare, "odd valuation");
  const mpz_class P = p;
  if (mpz_legendre(a.unit().get_mpz_t(), P.get_mpz_t()) != 1)
    fail(Errc::NotASquare, "unit is a quadratic non-residue");
  mpz_class x = sqrt_mod_prime(a.unit(), p);
  if (x > (p - 1) / 2) x = p - x;
  const long rel = a.relative_precision();
  long k = 1;
  while (k < rel) {
    k = std::min(2 * k, rel);
    mpz_class mod = ppow(p, k);
    mpz_class fx = x * x - a.unit();
    x = mod_positive(x - fx * inverse_mod(mod_positive(2 * x, mod), mod), mod);
  }
  const long half = a.valuation() / 2;
  return PAdic::from_parts(p, half, x, half + rel);
}

TeichmullerParts teichmuller_decompose(const PAdic& x) {
  if (x.is_zero()) fail(Errc::ZeroArgument, "teichmuller_decompose of zero");
  const long p = x.prime();
  const long rel = x.relative_precision();
  const mpz_class mod = ppow(p, rel);
  mpz_class z;
  if (p == 2) {
    z = (rel < 2 || mpz_fdiv_ui(x.unit().get_mpz_t(), 4) == 1) ? mpz_class(1) : mod - 1;
  } else {
    z = x.unit_residue();
    const mpz_class P = p;
    // Each Frobenius step z -> z^p gains one correct digit of the limit.
    for (long i = 0; i < rel; ++i) mpz_powm(z.get_mpz_t(), z.get_mpz_t(), P.get_mpz_t(), mod.get_mpz_t());
  }
  TeichmullerParts parts;
  parts.m = x.valuation();
  parts.zeta = PAdic::from_parts(p, 0, z, rel);
  parts.u = PAdic::from_parts(p, 0, mod_positive(x.unit() * inverse_mod(z, mod), mod), rel);
  return parts;
}

PAdic log0(const PAdic& x) {
  if (x.is_zero()) fail(Errc::ZeroArgument, "log0 of zero");
  const long p = x.prime();
  const TeichmullerParts parts = teichmuller_decompose(x);
  const long rel = x.relative_precision();
  const mpz_class mod = ppow(p, rel);
  const mpz_class t = mod_positive(parts.u.unit() - 1, mod);
  if (t == 0) return PAdic::zero(p, rel);
  const long w = valuation(t, p);

  // Term n has valuation >= n*w - v_p(n) >= n*w - floor(log_p n), which is
  // nondecreasing in n; stop at the first n where it reaches rel.
  long n_max = 0;
  while ((n_max + 1) * w - floor_log(n_max + 1, p) < rel) ++n_max;
  const long slack = floor_log(std::max(1L, n_max), p);
  const mpz_class big_mod = ppow(p, rel + slack);

  mpz_class power = 1;
  mpz_class sum = 0;
  for (long n = 1; n <= n_max; ++n) {
    power = mod_positive(power * t, big_mod);
    long k = 0;
    long n_unit = n;
    while (n_unit % p == 0) {
      n_unit /= p;
      ++k;
    }
    mpz_class term = power / ppow(p, k);
    term = mod_positive(term * inverse_mod(mpz_class(n_unit), mod), mod);
    if (n % 2 == 0)
      sum -= term;
    else
      sum += term;
  }
  return PAdic::from_parts(p, 0, mod_positive(sum, mod), rel);
}

}  // namespace hyperchab
