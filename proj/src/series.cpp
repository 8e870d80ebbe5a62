#include "hyperchab/series.hpp"

#include <algorithm>
#include <sstream>

namespace hyperchab {

LaurentPoly LaurentPoly::monomial(const PAdic& c, long n) {
  LaurentPoly f(c.prime(), c.precision());
  f.set(n, c);
  return f;
}

LaurentPoly LaurentPoly::from_integers(long p, const std::map<long, mpz_class>& coeffs,
                                       long precision) {
  LaurentPoly f(p, precision);
  for (const auto& [n, a] : coeffs)
    if (a != 0) f.set(n, PAdic::from_integer(a, p, precision));
  return f;
}

void LaurentPoly::set(long n, const PAdic& c) {
  if (c.prime() != p_) fail(Errc::InvalidInput, "coefficient over the wrong prime");
  terms_.insert_or_assign(n, c);
}

PAdic LaurentPoly::coeff(long n) const {
  auto it = terms_.find(n);
  return it == terms_.end() ? PAdic::zero(p_, prec_) : it->second;
}

bool LaurentPoly::has_definite_term() const {
  return std::any_of(terms_.begin(), terms_.end(), [](const auto& kv) { return !kv.second.is_zero(); });
}

long LaurentPoly::min_exponent() const {
  if (terms_.empty()) fail(Errc::InvalidInput, "min_exponent of the zero polynomial");
  return terms_.begin()->first;
}

long LaurentPoly::max_exponent() const {
  if (terms_.empty()) fail(Errc::InvalidInput, "max_exponent of the zero polynomial");
  return terms_.rbegin()->first;
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly r(p_, prec_);
  for (const auto& [n, c] : terms_) r.terms_.emplace(n, -c);
  return r;
}

LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.p_ != b.p_) fail(Errc::InvalidInput, "Laurent polynomials over different primes");
  LaurentPoly r(a.p_, std::min(a.prec_, b.prec_));
  r.terms_ = a.terms_;
  for (const auto& [n, c] : b.terms_) {
    auto it = r.terms_.find(n);
    if (it == r.terms_.end())
      r.terms_.emplace(n, c);
    else
      it->second = it->second + c;
  }
  return r;
}

LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b) { return a + (-b); }

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.p_ != b.p_) fail(Errc::InvalidInput, "Laurent polynomials over different primes");
  LaurentPoly r(a.p_, std::min(a.prec_, b.prec_));
  for (const auto& [n, x] : a.terms_) {
    for (const auto& [m, y] : b.terms_) {
      PAdic prod = x * y;
      auto it = r.terms_.find(n + m);
      if (it == r.terms_.end())
        r.terms_.emplace(n + m, prod);
      else
        it->second = it->second + prod;
    }
  }
  return r;
}

LaurentPoly LaurentPoly::scaled(const mpq_class& factor) const {
  LaurentPoly r(p_, prec_);
  if (factor == 0) return r;
  for (const auto& [n, c] : terms_) r.terms_.emplace(n, c.scaled(factor));
  return r;
}

LaurentPoly LaurentPoly::times(const PAdic& c) const {
  LaurentPoly r(p_, std::min(prec_, c.precision()));
  for (const auto& [n, x] : terms_) r.terms_.emplace(n, x * c);
  return r;
}

LaurentPoly LaurentPoly::shifted(long k) const {
  LaurentPoly r(p_, prec_);
  for (const auto& [n, c] : terms_) r.terms_.emplace(n + k, c);
  return r;
}

LaurentPoly LaurentPoly::derivative() const {
  LaurentPoly r(p_, prec_);
  for (const auto& [n, c] : terms_)
    if (n != 0) r.terms_.emplace(n - 1, c.scaled(mpq_class(n)));
  return r;
}

PAdic LaurentPoly::evaluate(const PAdic& z) const {
  if (z.is_zero() && !terms_.empty() && terms_.begin()->first < 0)
    fail(Errc::DivisionByIndistinguishableZero, "evaluating negative powers at zero");
  std::optional<PAdic> sum;
  for (const auto& [n, c] : terms_) {
    PAdic term = n == 0 ? c : c * z.pow(n);
    sum = sum ? *sum + term : term;
  }
  return sum ? *sum : PAdic::zero(p_, prec_);
}

bool LaurentPoly::agrees_with(const LaurentPoly& other) const {
  for (const auto& [n, c] : terms_) {
    auto it = other.terms_.find(n);
    if (it == other.terms_.end()) {
      if (!c.is_zero()) return false;
    } else if (!c.agrees_with(it->second)) {
      return false;
    }
  }
  for (const auto& [n, c] : other.terms_)
    if (!terms_.count(n) && !c.is_zero()) return false;
  return true;
}

std::string LaurentPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [n, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.to_string() << ")*z^" << n;
  }
  return os.str();
}

std::vector<mpq_class> NewtonPolygon::slopes() const {
  std::vector<mpq_class> out;
  for (size_t i = 1; i < vertices.size(); ++i)
    out.push_back((vertices[i].second - vertices[i - 1].second) /
                  mpq_class(vertices[i].first - vertices[i - 1].first));
  return out;
}

namespace {

struct Points {
  std::vector<std::pair<long, mpq_class>> definite;
  std::vector<std::pair<long, long>> uncertain;
};

Points collect_points(const LaurentPoly& f) {
  Points pts;
  for (const auto& [n, c] : f.terms()) {
    if (c.is_zero())
      pts.uncertain.emplace_back(n, c.precision());
    else
      pts.definite.emplace_back(n, mpq_class(c.valuation()));
  }
  if (pts.definite.empty())
    fail(Errc::AllCoefficientsIndistinguishableFromZero,
         "every coefficient is zero at its precision");
  return pts;
}

// (b - a) x (c - a) <= 0 means b is not strictly below the segment a-c.
bool not_below(const std::pair<long, mpq_class>& a, const std::pair<long, mpq_class>& b,
               const std::pair<long, mpq_class>& c) {
  mpq_class cross = mpq_class(b.first - a.first) * (c.second - a.second) -
                    (b.second - a.second) * mpq_class(c.first - a.first);
  return cross <= 0;
}

struct Minimizers {
  long i_min;
  long i_max;
};

Minimizers minimizers_at(const Points& pts, const mpq_class& rho) {
  std::optional<mpq_class> best;
  Minimizers m{0, 0};
  for (const auto& [n, v] : pts.definite) {
    mpq_class value = v + rho * n;
    if (!best || value < *best) {
      best = value;
      m = {n, n};
    } else if (value == *best) {
      m.i_max = n;
    }
  }
  for (const auto& [n, bound] : pts.uncertain) {
    mpq_class value = mpq_class(bound) + rho * n;
    if (value < *best || (value == *best && (n < m.i_min || n > m.i_max))) {
      std::ostringstream os;
      os << "coefficient of z^" << n << " is O(p^" << bound << ") and could change the count at valuation "
         << rho.get_str();
      fail(Errc::ProvisionalPolygon, os.str());
    }
  }
  return m;
}

}  // namespace

NewtonPolygon newton_polygon(const LaurentPoly& f) {
  Points pts = collect_points(f);
  NewtonPolygon poly;
  for (const auto& pt : pts.definite) {
    while (poly.vertices.size() >= 2 &&
           not_below(poly.vertices[poly.vertices.size() - 2], poly.vertices.back(), pt))
      poly.vertices.pop_back();
    poly.vertices.push_back(pt);
  }
  poly.uncertain = pts.uncertain;
  const long x_lo = poly.vertices.front().first;
  const long x_hi = poly.vertices.back().first;
  for (const auto& [n, bound] : poly.uncertain) {
    if (n < x_lo || n > x_hi) {
      poly.provisional = true;
      continue;
    }
    for (size_t i = 1; i < poly.vertices.size(); ++i) {
      const auto& a = poly.vertices[i - 1];
      const auto& b = poly.vertices[i];
      if (n < a.first || n > b.first) continue;
      mpq_class hull_at = a.second + (b.second - a.second) * mpq_class(n - a.first, b.first - a.first);
      if (mpq_class(bound) <= hull_at) poly.provisional = true;
      break;
    }
    if (poly.vertices.size() == 1 && mpq_class(bound) <= poly.vertices.front().second)
      poly.provisional = true;
  }
  return poly;
}

long count_zeros(const LaurentPoly& f, const RangeSpec& range) {
  const Points pts = collect_points(f);
  const long n_min = pts.definite.front().first;
  const long n_max = pts.definite.back().first;

  if (range.lo && range.hi) {
    if (*range.lo > *range.hi) return 0;
    if (*range.lo == *range.hi && !(range.lo_closed && range.hi_closed)) return 0;
  }

  long upper_index;
  if (range.lo) {
    Minimizers m = minimizers_at(pts, *range.lo);
    upper_index = range.lo_closed ? m.i_max : m.i_min;
  } else {
    for (const auto& [n, bound] : pts.uncertain)
      if (n > n_max) fail(Errc::ProvisionalPolygon, "uncertain leading coefficient");
    upper_index = n_max;
  }
  long lower_index;
  if (range.hi) {
    Minimizers m = minimizers_at(pts, *range.hi);
    lower_index = range.hi_closed ? m.i_min : m.i_max;
  } else {
    for (const auto& [n, bound] : pts.uncertain)
      if (n < n_min) fail(Errc::ProvisionalPolygon, "uncertain trailing coefficient");
    lower_index = n_min;
  }
  return std::max(0L, upper_index - lower_index);
}

long count_zeros(const LaurentPoly& f, const mpq_class& lo, const mpq_class& hi, bool lo_closed,
                 bool hi_closed) {
  return count_zeros(f, RangeSpec{lo, hi, lo_closed, hi_closed});
}

long count_zeros_from_hull(const NewtonPolygon& polygon, const RangeSpec& range) {
  long total = 0;
  for (size_t i = 1; i < polygon.vertices.size(); ++i) {
    const auto& a = polygon.vertices[i - 1];
    const auto& b = polygon.vertices[i];
    mpq_class rho = -(b.second - a.second) / mpq_class(b.first - a.first);
    bool above_lo = !range.lo || rho > *range.lo || (range.lo_closed && rho == *range.lo);
    bool below_hi = !range.hi || rho < *range.hi || (range.hi_closed && rho == *range.hi);
    if (above_lo && below_hi) total += b.first - a.first;
  }
  return total;
}

long LaurentData::count_zeros_on_domain() const { return count_zeros(u, lo, hi); }

long delta(long p, long e, long n) {
  if (p <= e + 1) fail(Errc::UnsupportedRegime, "delta requires p > e + 1");
  if (n < 0) fail(Errc::InvalidInput, "delta requires n >= 0");
  return e * (n / (p - e - 1));
}

mpq_class delta2_bound(long n) {
  if (n < 0) fail(Errc::InvalidInput, "delta2_bound requires n >= 0");
  mpq_class r = 1 + mpq_class(n, 2);
  r.canonicalize();
  return r;
}

long Delta(long s, long r, long p, long e) {
  if (p <= e + 1) fail(Errc::UnsupportedRegime, "Delta requires p > e + 1");
  if (s < 1 || r < 0) fail(Errc::InvalidInput, "Delta requires s >= 1 and r >= 0");
  std::vector<long> best(static_cast<size_t>(r) + 1, 0);
  for (long block = 1; block <= s; ++block) {
    std::vector<long> next(best.size(), 0);
    for (long total = 0; total <= r; ++total)
      for (long m = 0; m <= total; ++m)
        next[total] = std::max(next[total], delta(p, e, m) + best[total - m]);
    best = std::move(next);
  }
  return best[r];
}

long zero_bound_disk(long n_omega, long p, long e) { return 1 + n_omega + delta(p, e, n_omega); }

FormalIntegral formal_integrate(const LaurentPoly& f) {
  FormalIntegral out{LaurentPoly(f.prime(), f.default_precision()),
                     PAdic::zero(f.prime(), f.default_precision())};
  for (const auto& [n, c] : f.terms()) {
    if (n == -1)
      out.residue = c;
    else
      out.ell.set(n + 1, c.scaled(mpq_class(1, n + 1)));
  }
  return out;
}

}  // namespace hyperchab
