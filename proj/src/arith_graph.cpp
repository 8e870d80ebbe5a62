#include "hyperchab/arith_graph.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "hyperchab/error.hpp"

namespace hyperchab {

std::size_t ArithGraph::add_vertex(long m, long pa, long w) {
  vertices.push_back(GraphVertex{m, pa, w, {}});
  return vertices.size() - 1;
}

void ArithGraph::add_edge(std::size_t a, std::size_t b, long mult) { edges.push_back(GraphEdge{a, b, mult}); }

long ArithGraph::weighted_degree(std::size_t v) const {
  long total = 0;
  for (const auto& e : edges) {
    if (e.a == v) total += vertices[e.b].m * e.mult;
    if (e.b == v) total += vertices[e.a].m * e.mult;
  }
  return total;
}

mpq_class ArithGraph::self_intersection(std::size_t v) const {
  mpq_class r(-weighted_degree(v), vertices[v].m);
  r.canonicalize();
  return r;
}

long ArithGraph::edge_multiplicity_total() const {
  long total = 0;
  for (const auto& e : edges) total += e.mult;
  return total;
}

namespace {

std::vector<std::vector<std::size_t>> adjacency(const ArithGraph& G) {
  std::vector<std::vector<std::size_t>> adj(G.vertices.size());
  for (const auto& e : G.edges) {
    adj[e.a].push_back(e.b);
    adj[e.b].push_back(e.a);
  }
  return adj;
}

std::vector<std::size_t> component_labels(const std::vector<std::vector<std::size_t>>& adj,
                                          const std::vector<bool>& allowed) {
  std::vector<std::size_t> label(adj.size(), SIZE_MAX);
  std::size_t next = 0;
  for (std::size_t s = 0; s < adj.size(); ++s) {
    if (!allowed[s] || label[s] != SIZE_MAX) continue;
    std::vector<std::size_t> stack{s};
    label[s] = next;
    while (!stack.empty()) {
      std::size_t v = stack.back();
      stack.pop_back();
      for (std::size_t w : adj[v])
        if (allowed[w] && label[w] == SIZE_MAX) {
          label[w] = next;
          stack.push_back(w);
        }
    }
    ++next;
  }
  return label;
}

}  // namespace

GraphInvariants validate(const ArithGraph& G) {
  if (G.vertices.empty()) fail(Errc::InvalidInput, "graph has no vertices");
  for (std::size_t i = 0; i < G.vertices.size(); ++i) {
    const auto& v = G.vertices[i];
    if (v.m < 1 || v.pa < 0 || v.w < 0)
      fail(Errc::InvalidInput, "vertex " + std::to_string(i) + " needs m >= 1, pa >= 0, w >= 0");
  }
  for (const auto& e : G.edges) {
    if (e.a >= G.vertices.size() || e.b >= G.vertices.size())
      fail(Errc::InvalidInput, "edge endpoint out of range");
    if (e.a == e.b) fail(Errc::InvalidInput, "self-edges are not allowed");
    if (e.mult < 1) fail(Errc::InvalidInput, "edge multiplicity must be positive");
  }
  const auto labels = component_labels(adjacency(G), std::vector<bool>(G.vertices.size(), true));
  if (std::any_of(labels.begin(), labels.end(), [](std::size_t l) { return l != 0; }))
    fail(Errc::Disconnected, "graph is not connected");

  long weighted_w = 0;
  GraphInvariants inv;
  for (std::size_t i = 0; i < G.vertices.size(); ++i) {
    const auto& v = G.vertices[i];
    const long lhs = G.weighted_degree(i);
    const long rhs = v.m * (v.w + 2) - 2 * v.m * v.pa;
    if (lhs != rhs)
      fail(Errc::RelationViolated, "vertex " + std::to_string(i) + ": weighted degree " + std::to_string(lhs) +
                                       " != m(w+2) - 2m*pa = " + std::to_string(rhs));
    weighted_w += v.m * v.w;
    inv.p_sum += v.pa;
  }
  if (weighted_w % 2 != 0) fail(Errc::NonIntegralGenus, "sum of m*w is odd");
  inv.g = 1 + weighted_w / 2;
  if (inv.g < 2) fail(Errc::RelationViolated, "sum of m*w = 2g-2 gives genus below 2");
  inv.t_prime = G.edge_multiplicity_total() - static_cast<long>(G.vertices.size()) + 1;
  return inv;
}

FiberClassification classify(const ArithGraph& G) {
  const GraphInvariants inv = validate(G);
  FiberClassification out;
  out.g = inv.g;
  out.t_prime = inv.t_prime;
  out.p_sum = inv.p_sum;
  const std::size_t n = G.vertices.size();
  std::vector<bool> chain_member(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& v = G.vertices[i];
    if (v.w > 0) ++out.N;
    if (!v.minus_two_curve()) continue;
    if (G.weighted_degree(i) != 2)
      fail(Errc::UnclassifiableVertex, "vertex " + std::to_string(i) + " is a (-2)-curve of weighted degree != 2");
    bool meets_double = false;
    bool tangent = false;
    for (const auto& e : G.edges) {
      if (e.a != i && e.b != i) continue;
      const std::size_t other = e.a == i ? e.b : e.a;
      if (G.vertices[other].m == 2) meets_double = true;
      if (e.mult == 2 && G.vertices[other].m == 1) tangent = true;
    }
    if (meets_double)
      out.case2.push_back(i);
    else if (tangent)
      out.case4.push_back(i);
    else if (v.case3())
      out.case3.push_back(i);
    else
      chain_member[i] = true;
  }
  const auto labels = component_labels(adjacency(G), chain_member);
  std::size_t count = 0;
  for (std::size_t i = 0; i < n; ++i)
    if (chain_member[i]) count = std::max(count, labels[i] + 1);
  out.chains.assign(count, {});
  for (std::size_t i = 0; i < n; ++i)
    if (chain_member[i]) out.chains[labels[i]].push_back(i);
  return out;
}

namespace {

long proxy_u(const ArithGraph& G, const FiberClassification& fiber) {
  if (fiber.case3.empty() && fiber.case4.empty()) return fiber.g - fiber.t_prime - fiber.p_sum;
  const GraphInvariants inv = validate(local_modification(G));
  return inv.g - inv.t_prime - inv.p_sum;
}

}  // namespace

SpecialFiberReport evaluate_specialfiber_bounds(const ArithGraph& G, std::optional<long> u) {
  SpecialFiberReport r;
  r.fiber = classify(G);
  r.u_is_proxy = !u.has_value();
  r.u = u ? *u : proxy_u(G, r.fiber);
  r.N_limit = 2 * r.fiber.g - 2;
  r.chain_limit = r.fiber.N - 1 + r.fiber.t_prime;
  r.a1_limit = 3 * r.u;
  r.N_ok = r.fiber.N <= r.N_limit;
  r.chains_ok = static_cast<long>(r.fiber.chains.size()) <= r.chain_limit;
  r.a1_ok = r.fiber.a1_count() <= r.a1_limit;
  return r;
}

SpecialFiberReport check_specialfiber_bounds(const ArithGraph& G, std::optional<long> u) {
  SpecialFiberReport r = evaluate_specialfiber_bounds(G, u);
  if (!r.N_ok)
    fail(Errc::BoundViolated, "N = " + std::to_string(r.fiber.N) + " exceeds 2g-2 = " + std::to_string(r.N_limit));
  if (!r.chains_ok)
    fail(Errc::BoundViolated, std::to_string(r.fiber.chains.size()) + " chains exceed N-1+t' = " +
                                  std::to_string(r.chain_limit));
  if (!r.a1_ok)
    fail(Errc::BoundViolated, std::to_string(r.fiber.a1_count()) + " A1-components exceed 3u = " +
                                  std::to_string(r.a1_limit));
  return r;
}

ArithGraph local_modification(const ArithGraph& G) {
  const FiberClassification fiber = classify(G);
  if (fiber.case3.empty() && fiber.case4.empty())
    fail(Errc::NothingToRewrite, "no case-3 or case-4 components");

  ArithGraph out;
  std::vector<std::size_t> remap(G.vertices.size(), SIZE_MAX);
  std::set<std::size_t> removed(fiber.case3.begin(), fiber.case3.end());
  removed.insert(fiber.case4.begin(), fiber.case4.end());
  for (std::size_t i = 0; i < G.vertices.size(); ++i) {
    if (removed.count(i)) continue;
    remap[i] = out.vertices.size();
    GraphVertex v = G.vertices[i];
    out.vertices.push_back(v);
  }
  std::vector<GraphEdge> kept;
  for (const auto& e : G.edges)
    if (!removed.count(e.a) && !removed.count(e.b)) kept.push_back(e);

  for (std::size_t x : fiber.case4) {
    std::size_t neighbour = SIZE_MAX;
    for (const auto& e : G.edges)
      if (e.a == x || e.b == x) neighbour = e.a == x ? e.b : e.a;
    const std::size_t hub = out.add_vertex(2, 0, 0);
    out.add_edge(hub, remap[neighbour]);
    for (int k = 0; k < 3; ++k) out.add_edge(hub, out.add_vertex(1, 0, 0));
  }
  for (std::size_t x : fiber.case3) {
    std::vector<std::size_t> nbrs;
    for (const auto& e : G.edges)
      if (e.a == x || e.b == x) nbrs.push_back(e.a == x ? e.b : e.a);
    if (nbrs.size() != 2 || nbrs[0] == nbrs[1])
      fail(Errc::InvalidInput, "case-3 component must meet two distinct components");
    auto it = std::find_if(kept.begin(), kept.end(), [&](const GraphEdge& e) {
      return e.mult == 1 && ((e.a == nbrs[0] && e.b == nbrs[1]) || (e.a == nbrs[1] && e.b == nbrs[0]));
    });
    if (it == kept.end())
      fail(Errc::InvalidInput, "case-3 component's neighbours do not meet at the common point");
    kept.erase(it);
    const std::size_t hub = out.add_vertex(2, 0, 0);
    out.add_edge(hub, remap[nbrs[0]]);
    out.add_edge(hub, remap[nbrs[1]]);
    for (int k = 0; k < 2; ++k) out.add_edge(hub, out.add_vertex(1, 0, 0));
  }
  for (const auto& e : kept) out.add_edge(remap[e.a], remap[e.b], e.mult);
  return out;
}

namespace {

long uniform(std::mt19937_64& rng, long lo, long hi) {
  return std::uniform_int_distribution<long>(lo, hi)(rng);
}

bool protected_vertex(const ArithGraph& G, std::size_t v) {
  const auto& x = G.vertices[v];
  if (x.case3() || x.m != 1) return true;
  for (const auto& e : G.edges)
    if ((e.a == v || e.b == v) && (e.mult != 1 || G.vertices[e.a == v ? e.b : e.a].m != 1)) return true;
  return false;
}

void split_vertex(ArithGraph& G, std::mt19937_64& rng, bool banana) {
  std::vector<std::size_t> candidates;
  for (std::size_t i = 0; i < G.vertices.size(); ++i)
    if (!protected_vertex(G, i) && G.vertices[i].pa >= 1) candidates.push_back(i);
  if (candidates.empty()) return;
  const std::size_t v = candidates[static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(candidates.size()) - 1))];
  const long pa_total = G.vertices[v].pa - (banana ? 1 : 0);
  for (int attempt = 0; attempt < 8; ++attempt) {
    const long pa1 = uniform(rng, 0, pa_total);
    const long pa2 = pa_total - pa1;
    std::vector<std::size_t> incident;
    for (std::size_t k = 0; k < G.edges.size(); ++k)
      if (G.edges[k].a == v || G.edges[k].b == v) incident.push_back(k);
    std::vector<bool> to_second(incident.size());
    long s1 = 0, s2 = 0;
    for (std::size_t k = 0; k < incident.size(); ++k) {
      to_second[k] = uniform(rng, 0, 1) == 1;
      (to_second[k] ? s2 : s1) += 1;
    }
    const long links = banana ? 2 : 1;
    const long w1 = s1 + links - 2 + 2 * pa1;
    const long w2 = s2 + links - 2 + 2 * pa2;
    if (w1 < 0 || w2 < 0) continue;
    G.vertices[v].pa = pa1;
    G.vertices[v].w = w1;
    const std::size_t u = G.add_vertex(1, pa2, w2);
    for (std::size_t k = 0; k < incident.size(); ++k) {
      if (!to_second[k]) continue;
      GraphEdge& e = G.edges[incident[k]];
      (e.a == v ? e.a : e.b) = u;
    }
    for (long k = 0; k < links; ++k) G.add_edge(v, u);
    return;
  }
}

void insert_chain_vertex(ArithGraph& G, std::mt19937_64& rng) {
  std::vector<std::size_t> candidates;
  for (std::size_t k = 0; k < G.edges.size(); ++k) {
    const auto& e = G.edges[k];
    if (e.mult == 1 && !protected_vertex(G, e.a) && !protected_vertex(G, e.b)) candidates.push_back(k);
  }
  if (candidates.empty()) return;
  const std::size_t k = candidates[static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(candidates.size()) - 1))];
  const std::size_t x = G.add_vertex(1, 0, 0);
  const std::size_t b = G.edges[k].b;
  G.edges[k].b = x;
  G.add_edge(x, b);
}

std::size_t pick_with_genus(ArithGraph& G, std::mt19937_64& rng) {
  std::vector<std::size_t> candidates;
  for (std::size_t i = 0; i < G.vertices.size(); ++i)
    if (G.vertices[i].m == 1 && G.vertices[i].pa >= 1 && !G.vertices[i].case3()) candidates.push_back(i);
  if (candidates.empty()) return SIZE_MAX;
  return candidates[static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(candidates.size()) - 1))];
}

}  // namespace

ArithGraph random_arith_graph(std::mt19937_64& rng, long max_genus) {
  if (max_genus < 2) fail(Errc::InvalidInput, "max_genus must be at least 2");
  long g = uniform(rng, 2, max_genus);
  ArithGraph G;
  G.add_vertex(1, g, 2 * g - 2);

  const long growth = uniform(rng, 0, 8);
  for (long step = 0; step < growth; ++step) {
    switch (uniform(rng, 0, 2)) {
      case 0: split_vertex(G, rng, false); break;
      case 1: split_vertex(G, rng, true); break;
      default: insert_chain_vertex(G, rng); break;
    }
  }

  const long decorations = uniform(rng, 0, 3);
  std::set<std::size_t> used_edges;
  for (long step = 0; step < decorations; ++step) {
    const long move = uniform(rng, 0, 3);
    if (move == 0 || (move == 1 && g >= max_genus)) {
      const std::size_t b = pick_with_genus(G, rng);
      if (b == SIZE_MAX) continue;
      G.vertices[b].pa -= 1;
      const std::size_t hub = G.add_vertex(2, 0, 0);
      G.add_edge(b, hub);
      for (int k = 0; k < 3; ++k) G.add_edge(hub, G.add_vertex(1, 0, 0));
    } else if (move == 1) {
      const std::size_t b = pick_with_genus(G, rng);
      if (b == SIZE_MAX) continue;
      G.vertices[b].pa -= 1;
      const std::size_t hub = G.add_vertex(2, 0, 1);
      G.add_edge(b, hub);
      for (int k = 0; k < 5; ++k) G.add_edge(hub, G.add_vertex(1, 0, 0));
      ++g;
    } else if (move == 2) {
      const std::size_t b = pick_with_genus(G, rng);
      if (b == SIZE_MAX) continue;
      G.vertices[b].pa -= 1;
      G.add_edge(G.add_vertex(1, 0, 0), b, 2);
    } else {
      if (g >= max_genus) continue;
      std::vector<std::size_t> candidates;
      for (std::size_t k = 0; k < G.edges.size(); ++k) {
        const auto& e = G.edges[k];
        if (e.mult == 1 && !used_edges.count(k) && G.vertices[e.a].m == 1 && G.vertices[e.b].m == 1 &&
            !G.vertices[e.a].minus_two_curve() && !G.vertices[e.b].minus_two_curve() &&
            !G.vertices[e.a].case3() && !G.vertices[e.b].case3())
          candidates.push_back(k);
      }
      if (candidates.empty()) continue;
      const std::size_t k =
          candidates[static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(candidates.size()) - 1))];
      used_edges.insert(k);
      const std::size_t a = G.edges[k].a;
      const std::size_t b = G.edges[k].b;
      const std::size_t x = G.add_vertex(1, 0, 0);
      G.vertices[x].case3_point_ids = {static_cast<long>(k)};
      G.add_edge(x, a);
      G.add_edge(x, b);
      G.vertices[a].w += 1;
      G.vertices[b].w += 1;
      ++g;
    }
  }
  return G;
}

}  // namespace hyperchab
