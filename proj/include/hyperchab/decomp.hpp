#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hyperchab/curve.hpp"
#include "hyperchab/padic.hpp"
#include "hyperchab/series.hpp"

namespace hyperchab {

enum class AnnulusKind { Odd, Even, Weierstrass };

std::string to_string(AnnulusKind kind);

/// lo < v(x - center) < hi, with nullopt standing for an infinite bound.
struct RegionConstraint {
  PAdic center;
  ValuationBound lo;
  ValuationBound hi;
};

/// A piece of P^1(Q_p): the points satisfying every constraint, plus infinity if flagged.
struct Region {
  std::vector<RegionConstraint> constraints;
  bool contains_infinity = false;
  bool is_annulus = false;
  /// Index into Decomposition::annuli for annulus-type regions.
  long annulus = -1;
  long branch_points = 0;
  /// Number of Q_p-rational disks or annuli of the curve lying over this region.
  long preimages = 0;
  std::string origin;

  bool contains(const PAdic& x) const;
};

/// A classified annulus of the curve. All constants live in normalized coordinates in
/// which the interior branch points form a finite cluster; x -> coordinate_center + 1/X
/// is applied first when normalized_by_inversion is set.
struct AnnulusDescriptor {
  AnnulusKind kind = AnnulusKind::Odd;
  long genus = 0;
  /// Branch point indices on the interior side (infinity is index deg f for odd degree).
  std::vector<std::size_t> interior;
  long nu = 0;
  std::optional<PAdic> gamma;
  std::optional<PAdic> alpha;
  /// Weierstrass case: the parameter t + a/t, branch points at X = +-2 sqrt(a).
  std::optional<PAdic> a_const;
  /// Valuation interval of the parameter t.
  mpq_class lo;
  mpq_class hi;
  /// Exponent window of all pulled-back regular differentials.
  long n1 = 0;
  long n2 = 0;
  bool split = true;
  bool odd_gamma_valuation = false;
  bool normalized_by_inversion = false;
  std::optional<PAdic> coordinate_center;
  long region = -1;
  std::vector<std::string> notes;
};

struct Decomposition {
  long p = 3;
  long genus = 0;
  ClusterTree tree;
  std::vector<Region> regions;
  std::vector<AnnulusDescriptor> annuli;
  long t_estimate = 0;
  /// False in valuation-matrix mode, where regions and constants are not available.
  bool concrete = true;

  long disk_region_count() const;
  long curve_disk_count() const;
  long curve_annulus_count() const;
};

/// Requires odd p.
Decomposition decompose(const HyperellipticCurve& curve);

/// The Laurent part u of the pullback of u_tilde(X) dX / Y to the annulus, with the
/// annulus domain attached. u_tilde holds coefficients in ascending degree.
LaurentData pullback_differential(const AnnulusDescriptor& A, const std::vector<PAdic>& u_tilde);

struct WindowSubspace {
  long n1 = 0;
  long n2 = 0;
  /// u_tilde monomials x^k with k_lo <= k <= k_hi.
  long k_lo = 0;
  long k_hi = 0;
};

WindowSubspace good_window_subspace(const AnnulusDescriptor& A, long g, long m);

/// Exponent window (n-, n+) of pullbacks of all regular differentials by annulus kind.
std::pair<long, long> core_annulus_window(AnnulusKind kind, long nu, long g);

}  // namespace hyperchab
