#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hyperchab/padic.hpp"
#include "hyperchab/series.hpp"

namespace hyperchab {

/// y^2 = f(x) over Q_p with f squarefree of degree 2g+1 or 2g+2.
struct HyperellipticCurve {
  long p = 3;
  long precision = kDefaultPrecision;
  /// Coefficients in ascending degree.
  std::vector<mpq_class> f;
  /// Known rational roots; when absent the roots are found p-adically.
  std::optional<std::vector<mpq_class>> exact_roots;
  /// Pairwise valuations of the finite branch points, for curves that do not split over Q_p.
  std::optional<std::vector<std::vector<mpq_class>>> valuation_matrix;

  static HyperellipticCurve from_coefficients(long p, std::vector<mpq_class> f,
                                              long precision = kDefaultPrecision);
  static HyperellipticCurve from_roots(long p, const mpq_class& lead, const std::vector<mpq_class>& roots,
                                       long precision = kDefaultPrecision);

  long degree() const { return static_cast<long>(f.size()) - 1; }
  long genus() const { return (degree() - 1) / 2; }
  bool odd_degree() const { return degree() % 2 == 1; }
  const mpq_class& lead() const { return f.back(); }
  mpq_class evaluate(const mpq_class& x) const;
};

/// All roots of f in Q_p to the curve's precision: the exact roots in their given order, or the
/// roots found p-adically sorted by their rational representatives.
/// Throws NonSplitInput if f has fewer than deg f roots in Q_p.
std::vector<PAdic> find_split_roots(const HyperellipticCurve& curve);

/// Finite branch points with their pairwise valuations. Index size() stands for the
/// point at infinity when it is a branch point.
struct BranchData {
  long p = 3;
  long genus = 0;
  bool infinity_is_branch = false;
  mpq_class lead_valuation = 0;
  std::optional<PAdic> lead;
  /// Empty when only the valuation matrix is known.
  std::vector<PAdic> roots;
  std::vector<std::vector<mpq_class>> valuations;

  std::size_t size() const { return valuations.size(); }
  bool has_roots() const { return !roots.empty(); }
  long branch_count() const { return 2 * genus + 2; }
  std::size_t infinity_index() const { return size(); }
};

BranchData branch_data(const HyperellipticCurve& curve);

/// Change of coordinates x = c + 1/X with c = root[opposite] + p^K. The old index i keeps
/// index i; a branch point at infinity becomes the new root X = 0 at index size().
BranchData mobius_normalize(const BranchData& data, std::size_t opposite, long K);

struct Cluster {
  /// Sorted indices of the branch points in the cluster.
  std::vector<std::size_t> members;
  /// Minimal pairwise valuation; meaningless for leaves.
  mpq_class depth;
  bool leaf = false;
  long parent = -1;
  std::vector<std::size_t> children;

  std::size_t size() const { return members.size(); }
  std::size_t least() const { return members.front(); }
};

/// Nested clusters of finite branch points. Node 0 is the root holding all of them;
/// nodes are ordered by (depth, least member) with leaves after proper clusters.
struct ClusterTree {
  std::vector<Cluster> nodes;

  /// Node index of the cluster with exactly these members, if any.
  std::optional<std::size_t> find(const std::vector<std::size_t>& members) const;
  /// Proper (non-leaf) clusters.
  std::vector<std::size_t> proper() const;
};

ClusterTree build_cluster_tree(const BranchData& data);
ClusterTree build_cluster_tree(const HyperellipticCurve& curve);

}  // namespace hyperchab
