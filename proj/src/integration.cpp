#include "hyperchab/integration.hpp"

#include <limits>
#include <string>

namespace hyperchab {

namespace {

void require_in_domain(const AnnulusIntegrand& I, const PAdic& z) {
  if (!I.contains(z))
    fail(Errc::OutsideDomain, "point " + z.to_string() + " is outside the annulus (" + I.lo.get_str() +
                                  ", " + I.hi.get_str() + ")");
}

PAdic primitive_at(const AnnulusIntegrand& I, const PAdic& z) {
  PAdic value = I.ell.evaluate(z);
  if (I.c.is_zero() && I.c.precision() >= value.precision()) return value;
  return value + I.c * log0(z);
}

}  // namespace

AnnulusIntegrand AnnulusIntegrand::from_differential(const LaurentPoly& u, const mpq_class& lo,
                                                     const mpq_class& hi, std::optional<PAdic> a) {
  if (!(lo < hi)) fail(Errc::InvalidInput, "annulus requires lo < hi");
  FormalIntegral fi = formal_integrate(u);
  return AnnulusIntegrand{fi.ell, fi.residue, std::move(a), lo, hi};
}

bool AnnulusIntegrand::contains(const PAdic& z) const {
  if (z.is_zero()) return false;
  mpq_class v(z.valuation());
  return lo < v && v < hi;
}

PAdic integrate_disk(const LaurentPoly& ell, const PAdic& xi0, const PAdic& xi1) {
  if (!ell.empty() && ell.min_exponent() < 0)
    fail(Errc::InvalidInput, "disk antiderivative must have nonnegative exponents");
  for (const PAdic* xi : {&xi0, &xi1})
    if (!xi->is_zero() && xi->valuation() <= 0)
      fail(Errc::OutsideDomain, "point " + xi->to_string() + " is outside the open unit disk");
  return ell.evaluate(xi1) - ell.evaluate(xi0);
}

PAdic integrate_annulus(const AnnulusIntegrand& I, const PAdic& xi0, const PAdic& xi1) {
  require_in_domain(I, xi0);
  require_in_domain(I, xi1);
  return primitive_at(I, xi1) - primitive_at(I, xi0);
}

PAdic abelian_integral_annulus(const AnnulusIntegrand& I, const PAdic& xi0, const PAdic& xi1) {
  if (!I.a) fail(Errc::MissingAbelianConstant, "the abelian correction constant was not supplied");
  PAdic base = integrate_annulus(I, xi0, xi1);
  const long dv = xi1.valuation() - xi0.valuation();
  if (dv == 0) return base;
  return base + I.a->scaled(mpq_class(dv));
}

LambdaZeroCount lambda_zero_count_annulus(const std::vector<LaurentData>& V, long p, long e, long r) {
  if (p % 2 == 0) fail(Errc::OddPrimeRequired, "the annulus bound needs odd p");
  if (p <= e + 1) fail(Errc::UnsupportedRegime, "the annulus bound needs p > e + 1");
  if (r < 1) fail(Errc::WindowViolation, "r = 0 leaves no admissible exponent window");
  LambdaZeroCount out;
  out.bound = 2 * r + delta(p, e, 2 * r);
  bool found = false;
  for (std::size_t i = 0; i < V.size(); ++i) {
    const LaurentPoly& u = V[i].u;
    if (!u.has_definite_term()) continue;
    const long n1 = u.min_exponent();
    const long n2 = u.max_exponent();
    if (!(n1 < -1 && -1 < n2 && n2 - n1 <= 2 * r)) continue;
    if (!u.coeff(-1).is_zero()) continue;
    LaurentPoly lambda = formal_integrate(u).ell;
    long count = count_zeros(lambda, V[i].lo, V[i].hi);
    if (!found || count < out.count) {
      out.count = count;
      out.chosen = i;
      found = true;
    }
  }
  if (!found) fail(Errc::WindowViolation, "no element has exponents n1 < -1 < n2 with n2 - n1 <= 2r");
  return out;
}

}  // namespace hyperchab
