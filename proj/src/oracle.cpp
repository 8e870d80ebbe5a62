#include "hyperchab/oracle.hpp"

#include <omp.h>

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <set>

#include "hyperchab/error.hpp"

namespace hyperchab {

namespace {

// Integer form D * b^(2g+2) * f(a/b) as coefficients of a^i b^(k-i), with D clearing denominators.
struct HomogeneousForm {
  std::vector<mpz_class> coeffs;
  long k = 0;
  long half = 0;
  mpz_class D;
};

HomogeneousForm homogenize(const std::vector<mpq_class>& f) {
  if (f.size() < 2 || f.back() == 0) fail(Errc::InvalidInput, "f must have positive degree");
  HomogeneousForm h;
  const long deg = static_cast<long>(f.size()) - 1;
  h.k = deg + (deg % 2);
  h.half = h.k / 2;
  h.D = 1;
  for (const auto& c : f) mpz_lcm(h.D.get_mpz_t(), h.D.get_mpz_t(), c.get_den_mpz_t());
  for (const auto& c : f) h.coeffs.push_back(mpz_class(c * h.D) * h.D);
  return h;
}

constexpr std::array<long, 4> kSieveModuli{64, 63, 65, 11};

struct Sieve {
  std::array<std::vector<bool>, 4> square;
  std::array<std::vector<long>, 4> coeff_mod;
};

Sieve make_sieve(const HomogeneousForm& h) {
  Sieve s;
  for (std::size_t j = 0; j < kSieveModuli.size(); ++j) {
    const long m = kSieveModuli[j];
    s.square[j].assign(static_cast<std::size_t>(m), false);
    for (long x = 0; x < m; ++x) s.square[j][static_cast<std::size_t>((x * x) % m)] = true;
    for (const auto& c : h.coeffs) s.coeff_mod[j].push_back(static_cast<long>(mpz_fdiv_ui(c.get_mpz_t(), m)));
  }
  return s;
}

// Candidate points with denominator b; appends (a, b, sqrt) triples.
void scan_denominator(const HomogeneousForm& h, const Sieve& s, long H, long b,
                      std::vector<std::pair<mpq_class, mpq_class>>& out) {
  // For fixed b the value mod m depends only on a mod m.
  std::array<std::vector<bool>, 4> pass;
  for (std::size_t j = 0; j < kSieveModuli.size(); ++j) {
    const long m = kSieveModuli[j];
    std::vector<long> cb(s.coeff_mod[j].size());
    long bp = 1;
    for (long i = h.k; i >= 0; --i) {
      if (static_cast<std::size_t>(i) < cb.size()) cb[static_cast<std::size_t>(i)] = (s.coeff_mod[j][static_cast<std::size_t>(i)] * bp) % m;
      bp = (bp * (b % m)) % m;
    }
    pass[j].assign(static_cast<std::size_t>(m), false);
    for (long a = 0; a < m; ++a) {
      long acc = 0;
      for (long i = static_cast<long>(cb.size()) - 1; i >= 0; --i) acc = (acc * a + cb[static_cast<std::size_t>(i)]) % m;
      pass[j][static_cast<std::size_t>(a)] = s.square[j][static_cast<std::size_t>(acc)];
    }
  }
  mpz_class value, root, bpow;
  std::vector<mpz_class> bpowers(static_cast<std::size_t>(h.k) + 1);
  bpowers[0] = 1;
  for (long i = 1; i <= h.k; ++i) bpowers[static_cast<std::size_t>(i)] = bpowers[static_cast<std::size_t>(i) - 1] * b;
  for (long a = -H; a <= H; ++a) {
    bool ok = true;
    for (std::size_t j = 0; j < kSieveModuli.size() && ok; ++j) {
      const long m = kSieveModuli[j];
      long r = a % m;
      if (r < 0) r += m;
      ok = pass[j][static_cast<std::size_t>(r)];
    }
    if (!ok) continue;
    value = 0;
    for (long i = static_cast<long>(h.coeffs.size()) - 1; i >= 0; --i)
      value = value * a + h.coeffs[static_cast<std::size_t>(i)] * bpowers[static_cast<std::size_t>(h.k - i)];
    // value = D^2 * b^k * f(a/b) written as a polynomial in a with the b-powers folded in.
    if (value < 0 || mpz_perfect_square_p(value.get_mpz_t()) == 0) continue;
    if (std::gcd(a < 0 ? -a : a, b) != 1) continue;
    mpz_sqrt(root.get_mpz_t(), value.get_mpz_t());
    mpq_class x(a, b);
    x.canonicalize();
    mpq_class y(root, h.D * bpowers[static_cast<std::size_t>(h.half)]);
    y.canonicalize();
    out.emplace_back(x, y);
    if (y != 0) out.emplace_back(x, -y);
  }
}

bool rational_square(const mpq_class& q) {
  return q > 0 && mpz_perfect_square_p(q.get_num_mpz_t()) && mpz_perfect_square_p(q.get_den_mpz_t());
}

PointSearchResult finish(std::vector<std::pair<mpq_class, mpq_class>> pts, const std::vector<mpq_class>& f) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  PointSearchResult r;
  r.affine = std::move(pts);
  const long deg = static_cast<long>(f.size()) - 1;
  r.points_at_infinity = deg % 2 == 1 ? 1 : (rational_square(f.back()) ? 2 : 0);
  return r;
}

}  // namespace

PointSearchResult search_rational_points(const std::vector<mpq_class>& f, long H) {
  if (H < 1) fail(Errc::InvalidInput, "height bound must be >= 1");
  const HomogeneousForm h = homogenize(f);
  const Sieve s = make_sieve(h);
  std::vector<std::pair<mpq_class, mpq_class>> all;
#pragma omp parallel
  {
    std::vector<std::pair<mpq_class, mpq_class>> local;
#pragma omp for schedule(dynamic, 16) nowait
    for (long b = 1; b <= H; ++b) scan_denominator(h, s, H, b, local);
#pragma omp critical
    all.insert(all.end(), local.begin(), local.end());
  }
  return finish(std::move(all), f);
}

PointSearchResult search_rational_points_serial(const std::vector<mpq_class>& f, long H) {
  if (H < 1) fail(Errc::InvalidInput, "height bound must be >= 1");
  const HomogeneousForm h = homogenize(f);
  const Sieve s = make_sieve(h);
  std::vector<std::pair<mpq_class, mpq_class>> all;
  for (long b = 1; b <= H; ++b) scan_denominator(h, s, H, b, all);
  return finish(std::move(all), f);
}

namespace {

struct ShiftedPoly {
  std::vector<mpz_class> coeffs;
  std::vector<mpz_class> deriv;
};

// Primitive integer polynomial H(u) proportional to sum c_n (p^m u)^n.
ShiftedPoly shifted_poly(const std::map<long, mpq_class>& coeffs, long p, long m) {
  const long lo = coeffs.begin()->first;
  const long hi = coeffs.rbegin()->first;
  std::vector<mpq_class> q(static_cast<std::size_t>(hi - lo) + 1, 0);
  for (const auto& [n, c] : coeffs) {
    mpq_class scale = m * n >= 0 ? mpq_class(ppow(p, m * n)) : mpq_class(1) / mpq_class(ppow(p, -m * n));
    q[static_cast<std::size_t>(n - lo)] = c * scale;
  }
  mpz_class den = 1;
  for (const auto& c : q) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
  ShiftedPoly s;
  mpz_class content = 0;
  for (const auto& c : q) {
    s.coeffs.push_back(mpz_class(c * den));
    mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), s.coeffs.back().get_mpz_t());
  }
  for (auto& c : s.coeffs) c /= content;
  for (std::size_t i = 1; i < s.coeffs.size(); ++i) s.deriv.push_back(s.coeffs[i] * static_cast<unsigned long>(i));
  return s;
}

long val_or(const mpz_class& x, long p, long cap) {
  if (x == 0) return cap;
  return std::min(cap, valuation(x, p));
}

mpz_class eval(const std::vector<mpz_class>& c, const mpz_class& u) {
  mpz_class acc = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * u + *it;
  return acc;
}

using RootKey = std::pair<long, std::pair<long, mpz_class>>;

void scan_units(const ShiftedPoly& s, long p, long m, long K, long start, long stop, std::set<RootKey>& keys) {
  const long cap = 4 * K + 4;
  for (long u = start; u < stop; ++u) {
    if (u % p == 0) continue;
    const mpz_class U = u;
    const long vH = val_or(eval(s.coeffs, U), p, cap);
    if (vH == 0) continue;
    const long vD = val_or(eval(s.deriv, U), p, cap);
    if (vH > 2 * vD) {
      const long k0 = vD + 1;
      keys.insert({m, {k0, U % ppow(p, k0)}});
    } else if (vH >= K) {
      fail(Errc::CertificationFailed, "a root near u = " + std::to_string(u) + " at valuation " + std::to_string(m) +
                                           " cannot be certified at this precision");
    }
  }
}

long scan_window(const std::map<long, mpq_class>& coeffs, long p, long lo, long hi, long N, bool parallel) {
  if (coeffs.empty()) fail(Errc::InvalidInput, "zero polynomial");
  std::map<long, mpq_class> clean;
  for (const auto& [n, c] : coeffs)
    if (c != 0) clean.emplace(n, c);
  if (clean.empty()) fail(Errc::InvalidInput, "zero polynomial");
  std::set<RootKey> keys;
  for (long m = lo + 1; m < hi; ++m) {
    const long K = N - m;
    if (K < 1) fail(Errc::InvalidInput, "precision N must exceed every valuation in the window");
    const ShiftedPoly s = shifted_poly(clean, p, m);
    const long total = ppow(p, K).get_si();
    if (!parallel) {
      scan_units(s, p, m, K, 1, total, keys);
      continue;
    }
    const long chunk = std::max(1L, total / 256);
    bool failed = false;
    std::string message;
#pragma omp parallel
    {
      std::set<RootKey> local;
#pragma omp for schedule(dynamic, 1) nowait
      for (long start = 1; start < total; start += chunk) {
        try {
          scan_units(s, p, m, K, start, std::min(total, start + chunk), local);
        } catch (const Error& e) {
#pragma omp critical
          {
            failed = true;
            message = e.what();
          }
        }
      }
#pragma omp critical
      keys.insert(local.begin(), local.end());
    }
    if (failed) fail(Errc::CertificationFailed, message);
  }
  return static_cast<long>(keys.size());
}

}  // namespace

long enumerate_padic_zeros(const std::map<long, mpq_class>& coeffs, long p, long lo, long hi, long N) {
  return scan_window(coeffs, p, lo, hi, N, true);
}

long enumerate_padic_zeros_serial(const std::map<long, mpq_class>& coeffs, long p, long lo, long hi, long N) {
  return scan_window(coeffs, p, lo, hi, N, false);
}

namespace {

struct SamplePoint {
  bool infinity = false;
  mpq_class x;
};

std::vector<SamplePoint> cover_samples(long p, long N) {
  std::vector<SamplePoint> pts;
  const long total = ppow(p, N).get_si();
  for (long x = 0; x < total; ++x) pts.push_back({false, mpq_class(x)});
  for (long y = p; y < total; y += p) pts.push_back({false, mpq_class(1, y)});
  pts.push_back({true, 0});
  return pts;
}

std::vector<long> regions_hit(const Decomposition& D, const SamplePoint& s, long precision) {
  std::vector<long> hit;
  for (std::size_t i = 0; i < D.regions.size(); ++i) {
    const Region& r = D.regions[i];
    const bool in = s.infinity ? r.contains_infinity : r.contains(PAdic::from_rational(s.x, D.p, precision));
    if (in) hit.push_back(static_cast<long>(i));
  }
  return hit;
}

std::string describe(const SamplePoint& s) { return s.infinity ? std::string("infinity") : s.x.get_str(); }

CoverReport run_cover(const Decomposition& D, long N, bool parallel) {
  if (!D.concrete) fail(Errc::NonSplitInput, "cover verification needs explicit branch points");
  if (N < 1) fail(Errc::InvalidInput, "N must be >= 1");
  long precision = N + 1;
  for (const auto& r : D.regions)
    for (const auto& c : r.constraints) precision = std::max(precision, c.center.precision());
  const std::vector<SamplePoint> pts = cover_samples(D.p, N);
  std::vector<std::vector<long>> hits(pts.size());
  const long count = static_cast<long>(pts.size());
  if (parallel) {
#pragma omp parallel for schedule(dynamic, 8)
    for (long i = 0; i < count; ++i) hits[static_cast<std::size_t>(i)] = regions_hit(D, pts[static_cast<std::size_t>(i)], precision);
  } else {
    for (long i = 0; i < count; ++i) hits[static_cast<std::size_t>(i)] = regions_hit(D, pts[static_cast<std::size_t>(i)], precision);
  }
  CoverReport rep;
  rep.points_checked = count;
  rep.hits.assign(D.regions.size(), 0);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (long r : hits[i]) ++rep.hits[static_cast<std::size_t>(r)];
    if (hits[i].empty()) rep.gaps.push_back(describe(pts[i]));
    if (hits[i].size() > 1) rep.overlaps.push_back(describe(pts[i]));
  }
  return rep;
}

}  // namespace

CoverReport cover_report(const Decomposition& D, long N) { return run_cover(D, N, true); }

CoverReport cover_report_serial(const Decomposition& D, long N) { return run_cover(D, N, false); }

CoverReport verify_decomposition_cover(const Decomposition& D, long N) {
  CoverReport rep = cover_report(D, N);
  if (!rep.gaps.empty())
    fail(Errc::CoverageGap, std::to_string(rep.gaps.size()) + " sample points lie in no region, first " + rep.gaps.front());
  if (!rep.overlaps.empty())
    fail(Errc::DoubleCover,
         std::to_string(rep.overlaps.size()) + " sample points lie in several regions, first " + rep.overlaps.front());
  return rep;
}

}  // namespace hyperchab
