#include "hyperchab/curve.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace hyperchab {

namespace {

using QPoly = std::vector<mpq_class>;
using ZPoly = std::vector<mpz_class>;

void trim(QPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

QPoly poly_mod(QPoly a, const QPoly& b) {
  trim(a);
  while (a.size() >= b.size() && !a.empty()) {
    mpq_class factor = a.back() / b.back();
    const std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= factor * b[i];
    trim(a);
  }
  return a;
}

std::size_t gcd_degree(QPoly a, QPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    QPoly r = poly_mod(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return a.empty() ? 0 : a.size() - 1;
}

QPoly derivative(const QPoly& a) {
  QPoly d;
  for (std::size_t i = 1; i < a.size(); ++i) d.push_back(a[i] * static_cast<long>(i));
  return d;
}

ZPoly primitive_integer_poly(const QPoly& f, long p) {
  mpz_class den = 1;
  for (const auto& c : f) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
  ZPoly out;
  for (const auto& c : f) out.push_back(mpz_class(c * den));
  mpz_class content = 0;
  for (const auto& c : out) mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), c.get_mpz_t());
  const long v = valuation(content, p);
  const mpz_class pv = ppow(p, v);
  for (auto& c : out) c /= pv;
  return out;
}

mpz_class eval_mod(const ZPoly& g, const mpz_class& y, const mpz_class& mod) {
  mpz_class acc = 0;
  for (auto it = g.rbegin(); it != g.rend(); ++it) acc = (acc * y + *it) % mod;
  if (acc < 0) acc += mod;
  return acc;
}

ZPoly zderivative(const ZPoly& g) {
  ZPoly d;
  for (std::size_t i = 1; i < g.size(); ++i) d.push_back(g[i] * static_cast<unsigned long>(i));
  return d;
}

// g(r + p*z), divided by the largest power of p dividing all coefficients.
ZPoly shift_and_reduce(const ZPoly& g, const mpz_class& r, long p) {
  ZPoly acc;
  for (auto it = g.rbegin(); it != g.rend(); ++it) {
    ZPoly next(acc.size() + 1, 0);
    for (std::size_t i = 0; i < acc.size(); ++i) {
      next[i] += acc[i] * r;
      next[i + 1] += acc[i] * p;
    }
    next[0] += *it;
    acc = std::move(next);
  }
  mpz_class content = 0;
  for (const auto& c : acc) mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), c.get_mpz_t());
  if (content == 0) return acc;
  const mpz_class pv = ppow(p, valuation(content, p));
  for (auto& c : acc) c /= pv;
  return acc;
}

mpz_class hensel_lift(const ZPoly& g, mpz_class y, long p, long target) {
  const ZPoly dg = zderivative(g);
  long k = 1;
  while (k < target) {
    k = std::min(2 * k, target);
    const mpz_class mod = ppow(p, k);
    mpz_class inv;
    mpz_invert(inv.get_mpz_t(), eval_mod(dg, y, mod).get_mpz_t(), mod.get_mpz_t());
    y = (y - eval_mod(g, y, mod) * inv) % mod;
    if (y < 0) y += mod;
  }
  return y;
}

// Roots x = base + p^level * y of the original polynomial, where g(y) is the
// shifted polynomial. Roots are returned modulo p^precision.
void search_roots(const ZPoly& g, const mpz_class& base, long level, long p, long precision,
                  bool only_zero_residue, std::vector<mpz_class>& out) {
  const mpz_class P = p;
  const ZPoly dg = zderivative(g);
  for (long r = 0; r < (only_zero_residue ? 1 : p); ++r) {
    if (eval_mod(g, r, P) != 0) continue;
    const mpz_class here = base + ppow(p, level) * r;
    if (eval_mod(dg, r, P) != 0) {
      mpz_class y = hensel_lift(g, r, p, precision);
      mpz_class x = (base + ppow(p, level) * y) % ppow(p, precision);
      out.push_back(x);
      continue;
    }
    if (level + 1 >= precision)
      fail(Errc::PrecisionInsufficient, "roots of f cannot be separated at the working precision");
    search_roots(shift_and_reduce(g, r, p), here, level + 1, p, precision, false, out);
  }
}

void check_matrix(const std::vector<std::vector<mpq_class>>& m) {
  const std::size_t n = m.size();
  for (const auto& row : m)
    if (row.size() != n) fail(Errc::InvalidInput, "valuation matrix must be square");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j && m[i][j] != m[j][i]) fail(Errc::InvalidInput, "valuation matrix must be symmetric");
      for (std::size_t k = 0; k < n; ++k)
        if (i != j && j != k && i != k && m[i][k] < std::min(m[i][j], m[j][k]))
          fail(Errc::InvalidInput, "valuation matrix violates the ultrametric inequality");
    }
}

}  // namespace

HyperellipticCurve HyperellipticCurve::from_coefficients(long p, std::vector<mpq_class> f, long precision) {
  if (!is_prime(p)) fail(Errc::InvalidInput, "p must be prime");
  trim(f);
  HyperellipticCurve c;
  c.p = p;
  c.precision = precision;
  c.f = std::move(f);
  if (c.degree() < 5) fail(Errc::InvalidInput, "f must have degree at least 5 (genus >= 2)");
  if (gcd_degree(c.f, derivative(c.f)) != 0) fail(Errc::InvalidInput, "f is not squarefree");
  return c;
}

HyperellipticCurve HyperellipticCurve::from_roots(long p, const mpq_class& lead, const std::vector<mpq_class>& roots,
                                                  long precision) {
  if (lead == 0) fail(Errc::InvalidInput, "leading coefficient must be nonzero");
  QPoly f{lead};
  for (const auto& r : roots) {
    QPoly next(f.size() + 1, 0);
    for (std::size_t i = 0; i < f.size(); ++i) {
      next[i] -= f[i] * r;
      next[i + 1] += f[i];
    }
    f = std::move(next);
  }
  HyperellipticCurve c = from_coefficients(p, f, precision);
  c.exact_roots = roots;
  return c;
}

mpq_class HyperellipticCurve::evaluate(const mpq_class& x) const {
  mpq_class acc = 0;
  for (auto it = f.rbegin(); it != f.rend(); ++it) acc = acc * x + *it;
  return acc;
}

std::vector<PAdic> find_split_roots(const HyperellipticCurve& curve) {
  const long p = curve.p;
  const long N = curve.precision;
  std::vector<PAdic> roots;
  if (curve.exact_roots) {
    for (const auto& r : *curve.exact_roots) roots.push_back(PAdic::from_rational(r, p, N));
  } else {
    const ZPoly F = primitive_integer_poly(curve.f, p);
    std::vector<mpz_class> integral;
    search_roots(F, 0, 0, p, N, false, integral);
    for (const auto& x : integral) roots.push_back(PAdic::from_integer(x, p, N));

    ZPoly reversed(F.rbegin(), F.rend());
    std::vector<mpz_class> small;
    search_roots(reversed, 0, 0, p, N, true, small);
    for (const auto& y : small)
      if (y != 0) roots.push_back(PAdic::from_integer(1, p, N) / PAdic::from_integer(y, p, N));
    if (static_cast<long>(roots.size()) < curve.degree())
      fail(Errc::NonSplitInput, "f does not split into linear factors over Q_p");
    std::sort(roots.begin(), roots.end(),
              [](const PAdic& a, const PAdic& b) { return a.to_rational() < b.to_rational(); });
  }
  return roots;
}

BranchData branch_data(const HyperellipticCurve& curve) {
  BranchData d;
  d.p = curve.p;
  d.genus = curve.genus();
  d.infinity_is_branch = curve.odd_degree();
  d.lead = PAdic::from_rational(curve.lead(), curve.p, curve.precision);
  d.lead_valuation = valuation(curve.lead(), curve.p);
  if (curve.valuation_matrix) {
    check_matrix(*curve.valuation_matrix);
    if (static_cast<long>(curve.valuation_matrix->size()) != curve.degree())
      fail(Errc::InvalidInput, "valuation matrix size must equal deg f");
    d.valuations = *curve.valuation_matrix;
    return d;
  }
  d.roots = find_split_roots(curve);
  const std::size_t n = d.roots.size();
  d.valuations.assign(n, std::vector<mpq_class>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      PAdic diff = d.roots[i] - d.roots[j];
      if (diff.is_zero())
        fail(Errc::PrecisionInsufficient, "two roots agree to the working precision");
      d.valuations[i][j] = d.valuations[j][i] = diff.valuation();
    }
  return d;
}

BranchData mobius_normalize(const BranchData& data, std::size_t opposite, long K) {
  const std::size_t n = data.size();
  if (opposite >= n) fail(Errc::InvalidInput, "normalization center must be a finite branch point");
  std::vector<mpq_class> dist(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (i == opposite) {
      dist[i] = K;
      continue;
    }
    if (data.valuations[i][opposite] >= K) fail(Errc::InvalidInput, "normalization offset too small");
    dist[i] = data.valuations[i][opposite];
  }
  BranchData out;
  out.p = data.p;
  out.genus = data.genus;
  out.infinity_is_branch = false;
  const std::size_t m = n + (data.infinity_is_branch ? 1 : 0);
  out.valuations.assign(m, std::vector<mpq_class>(m, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) out.valuations[i][j] = data.valuations[i][j] - dist[i] - dist[j];
  if (data.infinity_is_branch)
    for (std::size_t j = 0; j < n; ++j) out.valuations[n][j] = out.valuations[j][n] = -dist[j];

  mpq_class lead_shift = 0;
  for (const auto& w : dist) lead_shift += w;
  out.lead_valuation = data.lead_valuation + lead_shift;

  if (data.has_roots()) {
    const long p = data.p;
    const long prec = data.roots[opposite].precision();
    const PAdic c = data.roots[opposite] + PAdic::from_parts(p, K, 1, prec);
    std::optional<PAdic> lead = data.lead;
    for (const auto& theta : data.roots) {
      PAdic diff = theta - c;
      out.roots.push_back(PAdic::from_integer(1, p, prec) / diff);
      if (lead) lead = *lead * (-diff);
    }
    if (data.infinity_is_branch) out.roots.push_back(PAdic::zero(p, prec));
    out.lead = lead;
  }
  return out;
}

std::optional<std::size_t> ClusterTree::find(const std::vector<std::size_t>& members) const {
  std::vector<std::size_t> sorted = members;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < nodes.size(); ++i)
    if (nodes[i].members == sorted) return i;
  return std::nullopt;
}

std::vector<std::size_t> ClusterTree::proper() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < nodes.size(); ++i)
    if (!nodes[i].leaf) out.push_back(i);
  return out;
}

ClusterTree build_cluster_tree(const BranchData& data) {
  const std::size_t n = data.size();
  if (n < 2) fail(Errc::InvalidInput, "need at least two finite branch points");
  std::vector<Cluster> raw;

  std::function<std::size_t(std::vector<std::size_t>, long)> build = [&](std::vector<std::size_t> members,
                                                                        long parent) -> std::size_t {
    const std::size_t id = raw.size();
    raw.push_back(Cluster{});
    raw[id].members = members;
    raw[id].parent = parent;
    if (members.size() == 1) {
      raw[id].leaf = true;
      return id;
    }
    mpq_class depth = data.valuations[members[0]][members[1]];
    for (std::size_t a = 0; a < members.size(); ++a)
      for (std::size_t b = a + 1; b < members.size(); ++b)
        depth = std::min(depth, data.valuations[members[a]][members[b]]);
    raw[id].depth = depth;

    std::vector<std::size_t> label(members.size());
    std::iota(label.begin(), label.end(), 0);
    std::function<std::size_t(std::size_t)> root = [&](std::size_t x) {
      return label[x] == x ? x : label[x] = root(label[x]);
    };
    for (std::size_t a = 0; a < members.size(); ++a)
      for (std::size_t b = a + 1; b < members.size(); ++b)
        if (data.valuations[members[a]][members[b]] > depth) label[root(b)] = root(a);
    std::vector<std::vector<std::size_t>> classes;
    std::vector<long> class_of(members.size(), -1);
    for (std::size_t a = 0; a < members.size(); ++a) {
      const std::size_t r = root(a);
      if (class_of[r] < 0) {
        class_of[r] = static_cast<long>(classes.size());
        classes.emplace_back();
      }
      classes[static_cast<std::size_t>(class_of[r])].push_back(members[a]);
    }
    for (auto& cls : classes) {
      const std::size_t child = build(cls, static_cast<long>(id));
      raw[id].children.push_back(child);
    }
    return id;
  };

  std::vector<std::size_t> all(n);
  std::iota(all.begin(), all.end(), 0);
  build(all, -1);

  std::vector<std::size_t> order(raw.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (raw[a].leaf != raw[b].leaf) return !raw[a].leaf;
    if (!raw[a].leaf && raw[a].depth != raw[b].depth) return raw[a].depth < raw[b].depth;
    if (raw[a].least() != raw[b].least()) return raw[a].least() < raw[b].least();
    return raw[a].size() > raw[b].size();
  });
  std::vector<std::size_t> position(raw.size());
  for (std::size_t i = 0; i < order.size(); ++i) position[order[i]] = i;

  ClusterTree tree;
  for (std::size_t old : order) {
    Cluster c = raw[old];
    if (c.parent >= 0) c.parent = static_cast<long>(position[static_cast<std::size_t>(c.parent)]);
    for (auto& ch : c.children) ch = position[ch];
    std::sort(c.children.begin(), c.children.end(),
              [&](std::size_t a, std::size_t b) { return raw[order[a]].least() < raw[order[b]].least(); });
    tree.nodes.push_back(std::move(c));
  }
  return tree;
}

ClusterTree build_cluster_tree(const HyperellipticCurve& curve) { return build_cluster_tree(branch_data(curve)); }

}  // namespace hyperchab
