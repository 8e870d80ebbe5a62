#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace hyperchab {

struct GraphVertex {
  long m = 1;
  long pa = 0;
  long w = 0;
  /// Marks a component meeting two others at one common point (case 3).
  std::vector<long> case3_point_ids;

  bool case3() const { return !case3_point_ids.empty(); }
  bool minus_two_curve() const { return m == 1 && pa == 0 && w == 0; }
};

struct GraphEdge {
  std::size_t a = 0;
  std::size_t b = 0;
  long mult = 1;
};

/// Vertex/edge model of a special fiber. Parallel edges are separate intersection points.
struct ArithGraph {
  std::vector<GraphVertex> vertices;
  std::vector<GraphEdge> edges;

  std::size_t add_vertex(long m, long pa, long w);
  void add_edge(std::size_t a, std::size_t b, long mult = 1);

  /// Sum over neighbours of m(neighbour) times intersection multiplicity.
  long weighted_degree(std::size_t v) const;
  /// Gamma^2 = -(1/m) * weighted_degree.
  mpq_class self_intersection(std::size_t v) const;
  long edge_multiplicity_total() const;
};

struct GraphInvariants {
  long g = 0;
  long t_prime = 0;
  long p_sum = 0;
};

/// Connectivity, the per-vertex relation and the global genus relation.
GraphInvariants validate(const ArithGraph& G);

struct FiberClassification {
  long g = 0;
  long N = 0;
  long t_prime = 0;
  long p_sum = 0;
  std::vector<std::vector<std::size_t>> chains;
  std::vector<std::size_t> case2;
  std::vector<std::size_t> case3;
  std::vector<std::size_t> case4;

  long a1_count() const { return static_cast<long>(case2.size() + case3.size() + case4.size()); }
};

FiberClassification classify(const ArithGraph& G);

struct SpecialFiberReport {
  FiberClassification fiber;
  long u = 0;
  bool u_is_proxy = true;
  long N_limit = 0;
  long chain_limit = 0;
  long a1_limit = 0;
  bool N_ok = false;
  bool chains_ok = false;
  bool a1_ok = false;

  bool all_ok() const { return N_ok && chains_ok && a1_ok; }
};

/// Evaluates the three special-fiber bounds without throwing.
SpecialFiberReport evaluate_specialfiber_bounds(const ArithGraph& G, std::optional<long> u = std::nullopt);
/// As above, throwing BoundViolated when a bound fails.
SpecialFiberReport check_specialfiber_bounds(const ArithGraph& G, std::optional<long> u = std::nullopt);

/// Replaces every case-3 and case-4 component by a multiplicity-2 hub with leaves.
ArithGraph local_modification(const ArithGraph& G);

/// Random valid fiber of genus at most max_genus, grown from a smooth fiber by
/// relation-preserving moves.
ArithGraph random_arith_graph(std::mt19937_64& rng, long max_genus);

}  // namespace hyperchab
