#include "hyperchab/decomp.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace hyperchab {

std::string to_string(AnnulusKind kind) {
  switch (kind) {
    case AnnulusKind::Odd: return "odd";
    case AnnulusKind::Even: return "even";
    case AnnulusKind::Weierstrass: return "weierstrass";
  }
  return "unknown";
}

bool Region::contains(const PAdic& x) const {
  for (const auto& c : constraints) {
    const PAdic diff = x - c.center;
    if (diff.is_zero()) {
      if (c.hi) return false;
      continue;
    }
    const mpq_class v(diff.valuation());
    if (c.lo && !(*c.lo < v)) return false;
    if (c.hi && !(v < *c.hi)) return false;
  }
  return true;
}

long Decomposition::disk_region_count() const {
  return static_cast<long>(std::count_if(regions.begin(), regions.end(), [](const Region& r) { return !r.is_annulus; }));
}

long Decomposition::curve_disk_count() const {
  long total = 0;
  for (const auto& r : regions)
    if (!r.is_annulus) total += r.preimages;
  return total;
}

long Decomposition::curve_annulus_count() const {
  long total = 0;
  for (const auto& r : regions)
    if (r.is_annulus) total += r.preimages;
  return total;
}

std::pair<long, long> core_annulus_window(AnnulusKind kind, long nu, long g) {
  switch (kind) {
    case AnnulusKind::Odd: return {-2 * nu, 2 * g - 2 - 2 * nu};
    case AnnulusKind::Even: return {-nu, g - 1 - nu};
    case AnnulusKind::Weierstrass: return {-g, g - 2};
  }
  return {0, 0};
}

namespace {

enum class EdgeShape { Plain, WeierstrassDirect, WeierstrassComplement, Merged, SkippedOuter };

struct Edge {
  EdgeShape shape;
  std::size_t node;
  std::size_t other = 0;
};

mpq_class max_finite_valuation(const BranchData& data) {
  mpq_class best = data.valuations.size() > 1 ? data.valuations[0][1] : mpq_class(0);
  for (std::size_t i = 0; i < data.size(); ++i)
    for (std::size_t j = i + 1; j < data.size(); ++j) best = std::max(best, data.valuations[i][j]);
  return best;
}

mpq_class power_of(long p, long k) {
  return k >= 0 ? mpq_class(ppow(p, k)) : mpq_class(1) / mpq_class(ppow(p, -k));
}

long integer_depth(const mpq_class& d) {
  if (d.get_den() != 1) fail(Errc::InvalidInput, "fractional cluster depth in split mode");
  return mpz_class(d.get_num()).get_si();
}

PAdic lead_times_product(const BranchData& data, const PAdic& at, const std::vector<std::size_t>& skip) {
  PAdic acc = *data.lead;
  for (std::size_t i = 0; i < data.roots.size(); ++i) {
    if (std::find(skip.begin(), skip.end(), i) != skip.end()) continue;
    acc = acc * (at - data.roots[i]);
  }
  return acc;
}

struct AnnulusJob {
  AnnulusKind kind;
  std::vector<std::size_t> interior;
  bool normalize;
  std::size_t opposite;
};

AnnulusDescriptor build_annulus(const BranchData& original, const AnnulusJob& job) {
  AnnulusDescriptor A;
  A.kind = job.kind;
  A.genus = original.genus;
  A.interior = job.interior;

  BranchData data = original;
  if (job.normalize) {
    const mpq_class top_valuation = max_finite_valuation(original);
    mpz_class floor_valuation;
    mpz_fdiv_q(floor_valuation.get_mpz_t(), top_valuation.get_num_mpz_t(), top_valuation.get_den_mpz_t());
    const long K = floor_valuation.get_si() + 1;
    data = mobius_normalize(original, job.opposite, K);
    A.normalized_by_inversion = true;
    if (original.has_roots()) A.coordinate_center = original.roots[job.opposite] + PAdic::from_parts(original.p, K, 1, original.roots[job.opposite].precision());
  }
  const ClusterTree tree = build_cluster_tree(data);
  const auto found = tree.find(job.interior);
  if (!found || tree.nodes[*found].parent < 0)
    fail(Errc::InvalidInput, "interior branch points do not form a proper cluster after normalization");
  const Cluster& T = tree.nodes[*found];
  const Cluster& P = tree.nodes[static_cast<std::size_t>(T.parent)];
  const mpq_class dT = T.depth;
  const mpq_class dP = P.depth;
  const std::size_t c0 = T.least();
  const std::vector<std::size_t>& inside = T.members;

  mpq_class v_gamma = data.lead_valuation;
  for (std::size_t i = 0; i < data.size(); ++i)
    if (std::find(inside.begin(), inside.end(), i) == inside.end()) v_gamma += data.valuations[c0][i];

  if (job.kind == AnnulusKind::Odd || job.kind == AnnulusKind::Even) {
    const bool odd = job.kind == AnnulusKind::Odd;
    A.nu = odd ? static_cast<long>(inside.size() - 1) / 2 : static_cast<long>(inside.size()) / 2;
    if (odd) {
      A.lo = (dP - v_gamma) / 2;
      A.hi = (dT - v_gamma) / 2;
    } else {
      A.lo = dP;
      A.hi = dT;
    }
    if (data.has_roots()) {
      const PAdic& center = data.roots[c0];
      PAdic gamma = lead_times_product(data, center, inside);
      A.gamma = gamma;
      if (!odd) {
        if (is_square(gamma)) {
          A.alpha = sqrt(gamma);
        } else {
          A.split = false;
          A.notes.push_back(std::string(to_string(Errc::GammaNotSquare)) + ": the two preimage annuli are not defined over Q_p");
        }
      }
      if (!A.coordinate_center) A.coordinate_center = center;
    }
  } else {
    A.nu = 1;
    A.lo = 0;
    A.hi = 2 * (dT - dP);
    mpq_class vg = v_gamma + 2 * dP;
    if (vg.get_den() == 1 && mpz_odd_p(vg.get_num_mpz_t())) {
      A.odd_gamma_valuation = true;
      A.split = false;
      A.notes.push_back("gamma has odd valuation: the annulus carries a multiplicity-2 component and no Q_p-points");
    }
    if (data.has_roots()) {
      const long p = data.p;
      const long d_parent = integer_depth(dP);
      const PAdic& t1 = data.roots[inside[0]];
      const PAdic& t2 = data.roots[inside[1]];
      const PAdic m = (t1 + t2).scaled(mpq_class(1, 2));
      const PAdic quarter = (t1 - t2).scaled(mpq_class(1, 4));
      A.a_const = (quarter * quarter).scaled(power_of(p, -2 * d_parent));
      PAdic gamma = lead_times_product(data, m, inside).scaled(power_of(p, 2 * d_parent));
      A.gamma = gamma;
      if (!A.odd_gamma_valuation) {
        if (is_square(gamma)) {
          A.alpha = sqrt(gamma);
        } else {
          A.split = false;
          A.notes.push_back(std::string(to_string(Errc::GammaNotSquare)) + ": the annulus is not split over Q_p");
        }
      }
      if (!A.coordinate_center) A.coordinate_center = m;
    }
  }
  const auto [n1, n2] = core_annulus_window(job.kind, A.nu, A.genus);
  A.n1 = n1;
  A.n2 = n2;
  return A;
}

std::vector<std::size_t> complement_of(const std::vector<std::size_t>& s, std::size_t total) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < total; ++i)
    if (std::find(s.begin(), s.end(), i) == s.end()) out.push_back(i);
  return out;
}

}  // namespace

Decomposition decompose(const HyperellipticCurve& curve) {
  if (curve.p == 2) fail(Errc::OddPrimeRequired, "decomposition is implemented for odd p");
  const BranchData data = branch_data(curve);
  Decomposition D;
  D.p = curve.p;
  D.genus = data.genus;
  D.tree = build_cluster_tree(data);
  D.concrete = data.has_roots();
  const ClusterTree& tree = D.tree;
  const long B = data.branch_count();
  const std::size_t n = data.size();
  const std::size_t all_branch = n + (data.infinity_is_branch ? 1 : 0);
  const Cluster& top = tree.nodes[0];

  bool merged = false;
  if (!data.infinity_is_branch && top.children.size() == 2) {
    merged = !tree.nodes[top.children[0]].leaf && !tree.nodes[top.children[1]].leaf;
  }

  std::vector<Edge> edges;
  std::set<std::size_t> owned;
  auto own_ancestors = [&](std::size_t s) {
    for (long a = tree.nodes[s].parent; a >= 0; a = tree.nodes[static_cast<std::size_t>(a)].parent)
      owned.insert(static_cast<std::size_t>(a));
  };
  for (std::size_t s : tree.proper()) {
    if (s == 0) continue;
    const Cluster& c = tree.nodes[s];
    const long a = static_cast<long>(c.size());
    const long b = B - a;
    if (merged && c.parent == 0) continue;
    if (a == 2) owned.insert(s);
    if (b <= 1) {
      // A child holding all but two branch points produces a Weierstrass region that
      // already contains this cluster's outer disk.
      const bool inner_complement = std::any_of(c.children.begin(), c.children.end(), [&](std::size_t ch) {
        return !tree.nodes[ch].leaf && static_cast<long>(tree.nodes[ch].size()) == B - 2;
      });
      if (!inner_complement) edges.push_back({EdgeShape::SkippedOuter, s});
      own_ancestors(s);
    } else if (a == 2) {
      edges.push_back({EdgeShape::WeierstrassDirect, s});
    } else if (b == 2) {
      edges.push_back({EdgeShape::WeierstrassComplement, s});
      own_ancestors(s);
    } else {
      edges.push_back({EdgeShape::Plain, s});
    }
  }
  if (merged) {
    owned.insert(0);
    std::size_t s1 = top.children[0];
    std::size_t s2 = top.children[1];
    if (tree.nodes[s1].size() == 2) {
      owned.insert(s1);
      edges.push_back({EdgeShape::WeierstrassComplement, s2});
    } else if (tree.nodes[s2].size() == 2) {
      owned.insert(s2);
      edges.push_back({EdgeShape::WeierstrassComplement, s1});
    } else {
      edges.push_back({EdgeShape::Merged, s1, s2});
    }
  }

  const long prec = curve.precision;
  auto center_of = [&](std::size_t node) { return data.roots[tree.nodes[node].least()]; };

  for (const Edge& e : edges) {
    const Cluster& c = tree.nodes[e.node];
    Region region;
    AnnulusJob job{AnnulusKind::Odd, c.members, false, 0};
    switch (e.shape) {
      case EdgeShape::SkippedOuter: {
        if (D.concrete) {
          region.constraints.push_back({center_of(e.node), std::nullopt, c.depth});
          region.contains_infinity = true;
          region.branch_points = B - static_cast<long>(c.size());
          region.preimages = 1;
          region.origin = "outer disk beyond a cluster of all but one branch point";
          D.regions.push_back(region);
        }
        continue;
      }
      case EdgeShape::Plain:
        job.kind = c.size() % 2 == 1 ? AnnulusKind::Odd : AnnulusKind::Even;
        if (D.concrete) {
          const Cluster& parent = tree.nodes[static_cast<std::size_t>(c.parent)];
          region.constraints.push_back({center_of(e.node), parent.depth, c.depth});
        }
        region.origin = "annulus between a cluster and its parent";
        break;
      case EdgeShape::WeierstrassDirect:
        job.kind = AnnulusKind::Weierstrass;
        if (D.concrete) {
          const Cluster& parent = tree.nodes[static_cast<std::size_t>(c.parent)];
          region.constraints.push_back({center_of(e.node), parent.depth, std::nullopt});
        }
        region.origin = "disk around a two-point cluster";
        break;
      case EdgeShape::WeierstrassComplement:
        job.kind = AnnulusKind::Weierstrass;
        job.interior = complement_of(c.members, all_branch);
        job.normalize = true;
        job.opposite = c.least();
        if (D.concrete) region.constraints.push_back({center_of(e.node), std::nullopt, c.depth});
        region.contains_infinity = true;
        region.origin = "disk outside a cluster of all but two branch points";
        break;
      case EdgeShape::Merged: {
        const Cluster& other = tree.nodes[e.other];
        job.kind = c.size() % 2 == 1 ? AnnulusKind::Odd : AnnulusKind::Even;
        job.normalize = true;
        job.opposite = other.least();
        if (D.concrete) {
          region.constraints.push_back({center_of(e.node), std::nullopt, c.depth});
          region.constraints.push_back({center_of(e.other), std::nullopt, other.depth});
        }
        region.contains_infinity = true;
        region.origin = "annulus joining the two halves of the top cluster";
        break;
      }
    }
    AnnulusDescriptor A = build_annulus(data, job);
    region.is_annulus = true;
    region.annulus = static_cast<long>(D.annuli.size());
    region.preimages = A.kind == AnnulusKind::Odd ? 1 : (A.split ? (A.kind == AnnulusKind::Even ? 2 : 1) : 0);
    A.region = static_cast<long>(D.regions.size());
    D.regions.push_back(region);
    D.annuli.push_back(std::move(A));
  }

  long vertices = 0;
  for (std::size_t s : tree.proper()) {
    if (owned.count(s)) continue;
    const Cluster& c = tree.nodes[s];
    const bool is_top = s == 0;
    if (is_top && !data.infinity_is_branch && c.children.size() < 3) continue;
    bool all_even = (B - static_cast<long>(c.size())) % 2 == 0;
    for (std::size_t ch : c.children) all_even = all_even && tree.nodes[ch].size() % 2 == 0;
    vertices += all_even ? 2 : 1;
    if (!D.concrete) continue;

    const long p = data.p;
    const long d = integer_depth(c.depth);
    const PAdic base = center_of(s);
    std::map<long, std::size_t> child_in_class;
    for (std::size_t ch : c.children) {
      const PAdic diff = data.roots[tree.nodes[ch].least()] - base;
      const long cls = (diff.is_zero() || diff.valuation() > d) ? 0 : diff.unit_residue();
      child_in_class[cls] = ch;
    }
    for (long r = 0; r < p; ++r) {
      auto it = child_in_class.find(r);
      if (it != child_in_class.end() && !tree.nodes[it->second].leaf) continue;
      Region disk;
      const PAdic center = r == 0 ? base : base + PAdic::from_parts(p, d, r, prec);
      disk.constraints.push_back({center, mpq_class(d), std::nullopt});
      disk.branch_points = it != child_in_class.end() ? 1 : 0;
      if (disk.branch_points > 0)
        disk.preimages = 1;
      else
        disk.preimages = is_square(lead_times_product(data, center, {})) ? 2 : 0;
      disk.origin = "residue disk at a cluster";
      D.regions.push_back(disk);
    }
    if (is_top) {
      Region outer;
      outer.constraints.push_back({base, std::nullopt, c.depth});
      outer.contains_infinity = true;
      outer.branch_points = data.infinity_is_branch ? 1 : 0;
      outer.preimages = data.infinity_is_branch ? 1 : (is_square(*data.lead) ? 2 : 0);
      outer.origin = "disk around infinity";
      D.regions.push_back(outer);
    }
  }

  long edge_count = 0;
  for (const auto& A : D.annuli) edge_count += A.kind == AnnulusKind::Even ? 2 : 1;
  D.t_estimate = std::clamp(edge_count - vertices + 1, 0L, D.genus);
  return D;
}

LaurentData pullback_differential(const AnnulusDescriptor& A, const std::vector<PAdic>& u_tilde) {
  long degree = static_cast<long>(u_tilde.size()) - 1;
  while (degree >= 0 && u_tilde[static_cast<std::size_t>(degree)].is_zero()) --degree;
  if (degree > A.genus - 1)
    fail(Errc::DegreeTooLarge, "u_tilde must have degree at most g - 1");
  if (A.kind == AnnulusKind::Odd && !A.gamma) fail(Errc::MissingGamma, "odd annulus without gamma");
  if (A.kind != AnnulusKind::Odd && !A.alpha) fail(Errc::MissingAlpha, "annulus without a square root of gamma");
  if (A.kind == AnnulusKind::Weierstrass && !A.a_const)
    fail(Errc::MissingGamma, "Weierstrass annulus without its constant a");

  const long p = A.kind == AnnulusKind::Odd ? A.gamma->prime() : A.alpha->prime();
  const long prec = A.kind == AnnulusKind::Odd ? A.gamma->precision() : A.alpha->precision();
  LaurentPoly u(p, prec);
  auto add = [&](long exponent, const PAdic& c) {
    u = u + LaurentPoly::monomial(c, exponent);
  };
  for (long k = 0; k <= degree; ++k) {
    const PAdic& coeff = u_tilde[static_cast<std::size_t>(k)];
    if (coeff.is_zero()) continue;
    switch (A.kind) {
      case AnnulusKind::Odd:
        add(2 * k - 2 * A.nu, k == A.nu ? coeff : coeff * A.gamma->pow(k - A.nu));
        break;
      case AnnulusKind::Even:
        add(k - A.nu, coeff / A.alpha->scaled(2));
        break;
      case AnnulusKind::Weierstrass: {
        const PAdic base = coeff / A.alpha->scaled(2);
        mpz_class binom = 1;
        for (long j = 0; j <= k; ++j) {
          PAdic term = base.scaled(mpq_class(binom));
          if (j > 0) term = term * A.a_const->pow(j);
          add(k - 2 * j - 1, term);
          binom = binom * (k - j) / (j + 1);
        }
        break;
      }
    }
  }
  return LaurentData{u, A.lo, A.hi};
}

WindowSubspace good_window_subspace(const AnnulusDescriptor& A, long g, long m) {
  if (m < 1 || m > g) fail(Errc::InvalidInput, "good_window_subspace requires 1 <= m <= g");
  const long L = g - m;
  WindowSubspace w;
  long lowest;
  if (A.kind == AnnulusKind::Weierstrass) {
    w.k_lo = 0;
    w.k_hi = L;
    lowest = -L - 1;
  } else {
    w.k_lo = std::max(0L, A.nu - L);
    w.k_hi = w.k_lo + L;
    lowest = A.kind == AnnulusKind::Odd ? 2 * (w.k_lo - A.nu) : w.k_lo - A.nu;
  }
  w.n1 = std::min(-2L, lowest);
  w.n2 = w.n1 + std::max(2 * L, 2L);
  return w;
}

}  // namespace hyperchab
