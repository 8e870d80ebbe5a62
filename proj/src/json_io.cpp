#include "hyperchab/json_io.hpp"

#include <iomanip>
#include <sstream>

#include "hyperchab/error.hpp"

namespace hyperchab {

namespace {

Json rational_json(const mpq_class& q) { return q.get_str(); }

Json bound_json(const ValuationBound& b) { return b ? Json(b->get_str()) : Json(nullptr); }

template <typename T>
Json optional_json(const std::optional<T>& x) {
  return x ? Json(*x) : Json(nullptr);
}

Json optional_padic(const std::optional<PAdic>& x) { return x ? to_json(*x) : Json(nullptr); }

long require_long(const Json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number_integer())
    fail(Errc::InvalidInput, std::string("missing integer field '") + key + "'");
  return j.at(key).get<long>();
}

}  // namespace

mpq_class rational_from_json(const Json& j) {
  try {
    if (j.is_number_integer()) return mpq_class(j.get<long>());
    if (j.is_string()) {
      mpq_class q(j.get<std::string>());
      if (q.get_den() == 0) fail(Errc::InvalidInput, "zero denominator");
      q.canonicalize();
      return q;
    }
  } catch (const std::invalid_argument&) {
  }
  fail(Errc::InvalidInput, "expected a rational number as an integer or \"a/b\" string, got " + j.dump());
}

Json to_json(const PAdic& x) {
  Json j;
  j["val"] = x.is_zero() ? Json(nullptr) : Json(x.valuation());
  j["unit"] = x.is_zero() ? std::string("0") : x.unit().get_str();
  j["prec"] = x.precision();
  return j;
}

PAdic padic_from_json(const Json& j, long p) {
  if (!j.is_object()) fail(Errc::InvalidInput, "p-adic value must be an object");
  const long prec = require_long(j, "prec");
  if (!j.contains("val") || j.at("val").is_null()) return PAdic::zero(p, prec);
  const long val = require_long(j, "val");
  const mpz_class unit(j.at("unit").get<std::string>());
  return PAdic::from_parts(p, val, unit, prec);
}

Json to_json(const LaurentPoly& f) {
  Json terms = Json::object();
  for (const auto& [n, c] : f.terms()) terms[std::to_string(n)] = to_json(c);
  return Json{{"p", f.prime()}, {"terms", terms}};
}

LaurentPoly laurent_from_json(const Json& j, long p, long precision) {
  if (!j.contains("terms") || !j.at("terms").is_object()) fail(Errc::InvalidInput, "Laurent polynomial needs 'terms'");
  LaurentPoly f(p, precision);
  for (const auto& [key, value] : j.at("terms").items()) {
    const long n = std::stol(key);
    if (value.is_object())
      f.set(n, padic_from_json(value, p));
    else
      f.set(n, PAdic::from_rational(rational_from_json(value), p, precision));
  }
  return f;
}

Json to_json(const NewtonPolygon& polygon) {
  Json vertices = Json::array();
  for (const auto& [n, v] : polygon.vertices) vertices.push_back({n, v.get_str()});
  Json uncertain = Json::array();
  for (const auto& [n, v] : polygon.uncertain) uncertain.push_back({n, v});
  Json slopes = Json::array();
  for (const auto& s : polygon.slopes()) slopes.push_back(s.get_str());
  return Json{{"vertices", vertices}, {"uncertain", uncertain}, {"slopes", slopes}, {"provisional", polygon.provisional}};
}

Json to_json(const LaurentData& data) {
  return Json{{"u", to_json(data.u)}, {"lo", rational_json(data.lo)}, {"hi", rational_json(data.hi)}};
}

Json to_json(const AnnulusIntegrand& integrand) {
  return Json{{"ell", to_json(integrand.ell)},
              {"c", to_json(integrand.c)},
              {"a", optional_padic(integrand.a)},
              {"lo", rational_json(integrand.lo)},
              {"hi", rational_json(integrand.hi)}};
}

HyperellipticCurve curve_from_json(const Json& j) {
  if (!j.is_object()) fail(Errc::InvalidInput, "curve file must hold a JSON object");
  const long p = require_long(j, "p");
  const long precision = j.contains("precision") ? require_long(j, "precision") : kDefaultPrecision;
  HyperellipticCurve curve;
  if (j.contains("roots")) {
    std::vector<mpq_class> roots;
    for (const auto& r : j.at("roots")) roots.push_back(rational_from_json(r));
    const mpq_class lead = j.contains("lead") ? rational_from_json(j.at("lead")) : mpq_class(1);
    curve = HyperellipticCurve::from_roots(p, lead, roots, precision);
  } else {
    if (!j.contains("f") || !j.at("f").is_array()) fail(Errc::InvalidInput, "curve needs 'f' or 'roots'");
    std::vector<mpq_class> f;
    for (const auto& c : j.at("f")) f.push_back(rational_from_json(c));
    curve = HyperellipticCurve::from_coefficients(p, f, precision);
  }
  if (j.contains("valuation_matrix") && !j.at("valuation_matrix").is_null()) {
    std::vector<std::vector<mpq_class>> M;
    for (const auto& row : j.at("valuation_matrix")) {
      std::vector<mpq_class> r;
      for (const auto& x : row) r.push_back(x.is_null() ? mpq_class(0) : rational_from_json(x));
      M.push_back(std::move(r));
    }
    curve.valuation_matrix = std::move(M);
  }
  return curve;
}

Json to_json(const ClusterTree& tree) {
  Json nodes = Json::array();
  for (const auto& c : tree.nodes) {
    if (c.leaf) continue;
    nodes.push_back({{"members", c.members},
                     {"depth", c.depth.get_str()},
                     {"parent", c.parent},
                     {"children", c.children}});
  }
  return nodes;
}

Json to_json(const AnnulusDescriptor& A) {
  return Json{{"kind", to_string(A.kind)},
              {"genus", A.genus},
              {"interior", A.interior},
              {"nu", A.nu},
              {"gamma", optional_padic(A.gamma)},
              {"alpha", optional_padic(A.alpha)},
              {"a", optional_padic(A.a_const)},
              {"lo", rational_json(A.lo)},
              {"hi", rational_json(A.hi)},
              {"window", {A.n1, A.n2}},
              {"split", A.split},
              {"odd_gamma_valuation", A.odd_gamma_valuation},
              {"normalized_by_inversion", A.normalized_by_inversion},
              {"coordinate_center", optional_padic(A.coordinate_center)},
              {"region", A.region},
              {"notes", A.notes}};
}

Json to_json(const Decomposition& D) {
  Json regions = Json::array();
  for (const auto& r : D.regions) {
    Json constraints = Json::array();
    for (const auto& c : r.constraints)
      constraints.push_back({{"center", to_json(c.center)}, {"lo", bound_json(c.lo)}, {"hi", bound_json(c.hi)}});
    regions.push_back({{"type", r.is_annulus ? "annulus" : "disk"},
                       {"constraints", constraints},
                       {"contains_infinity", r.contains_infinity},
                       {"annulus", r.annulus},
                       {"branch_points", r.branch_points},
                       {"preimages", r.preimages},
                       {"origin", r.origin}});
  }
  Json annuli = Json::array();
  for (const auto& A : D.annuli) annuli.push_back(to_json(A));
  return Json{{"p", D.p},
              {"genus", D.genus},
              {"concrete", D.concrete},
              {"clusters", to_json(D.tree)},
              {"regions", regions},
              {"annuli", annuli},
              {"disk_regions", D.disk_region_count()},
              {"curve_disks", D.curve_disk_count()},
              {"curve_annuli", D.curve_annulus_count()},
              {"t_estimate", D.t_estimate}};
}

ArithGraph graph_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("vertices") || !j.contains("edges"))
    fail(Errc::InvalidInput, "graph file needs 'vertices' and 'edges'");
  ArithGraph G;
  for (const auto& v : j.at("vertices")) {
    const std::size_t id = G.add_vertex(require_long(v, "m"), require_long(v, "pa"), require_long(v, "w"));
    if (v.contains("case3_point_ids") && !v.at("case3_point_ids").is_null())
      G.vertices[id].case3_point_ids = v.at("case3_point_ids").get<std::vector<long>>();
  }
  for (const auto& e : j.at("edges")) {
    if (!e.is_array() || e.size() < 2 || e.size() > 3) fail(Errc::InvalidInput, "edge must be [i, j] or [i, j, mult]");
    const long a = e.at(0).get<long>();
    const long b = e.at(1).get<long>();
    const long n = static_cast<long>(G.vertices.size());
    if (a < 0 || b < 0 || a >= n || b >= n) fail(Errc::InvalidInput, "edge endpoint out of range");
    G.add_edge(static_cast<std::size_t>(a), static_cast<std::size_t>(b), e.size() == 3 ? e.at(2).get<long>() : 1);
  }
  return G;
}

Json to_json(const ArithGraph& G) {
  Json vertices = Json::array();
  for (const auto& v : G.vertices) {
    Json jv{{"m", v.m}, {"pa", v.pa}, {"w", v.w}};
    if (v.case3()) jv["case3_point_ids"] = v.case3_point_ids;
    vertices.push_back(jv);
  }
  Json edges = Json::array();
  for (const auto& e : G.edges) edges.push_back({e.a, e.b, e.mult});
  return Json{{"vertices", vertices}, {"edges", edges}};
}

Json to_json(const FiberClassification& f) {
  return Json{{"g", f.g},       {"N", f.N},         {"t_prime", f.t_prime},  {"p_sum", f.p_sum},
              {"chains", f.chains}, {"chain_count", f.chains.size()}, {"case2", f.case2}, {"case3", f.case3},
              {"case4", f.case4}, {"a1_count", f.a1_count()}};
}

Json to_json(const SpecialFiberReport& r) {
  return Json{{"fiber", to_json(r.fiber)},
              {"u", r.u},
              {"u_is_proxy", r.u_is_proxy},
              {"limits", {{"N", r.N_limit}, {"chains", r.chain_limit}, {"a1", r.a1_limit}}},
              {"ok", {{"N", r.N_ok}, {"chains", r.chains_ok}, {"a1", r.a1_ok}}},
              {"all_ok", r.all_ok()}};
}

Json to_json(const BoundReport& r) {
  Json j{{"inputs", {{"p", r.p}, {"e", r.e}, {"q", r.q}, {"d", r.d}, {"g", r.g}, {"r", r.r}, {"t", r.t}}},
         {"disk_count", r.disk_count},
         {"annulus_count", r.annulus_count},
         {"B_A", optional_json(r.B_A_value)},
         {"points_on_disks", optional_json(r.points_on_disks)},
         {"points_on_annuli", optional_json(r.points_on_annuli)}};
  if (r.N_local_value) {
    j["N_local"] = r.N_local_value->value;
    j["N_local_majorant_fine"] = r.N_local_value->majorant_fine.get_str();
    j["N_local_majorant_coarse"] = r.N_local_value->majorant_coarse.get_str();
  } else {
    j["N_local"] = nullptr;
  }
  j["N_local_maximized"] = optional_json(r.N_local_maximized);
  j["R_rational"] = {{"value", optional_json(r.R_rational_value.value)}, {"note", r.R_rational_value.note}};
  j["torsion_bound"] = optional_json(r.torsion);
  j["improved_bound"] = optional_json(r.improved);
  j["rholog"] = {{"annulus", r.rholog.annulus},         {"core_disks", r.rholog.core_disks},
                 {"core_annuli", r.rholog.core_annuli}, {"disk_part", r.rholog.disk_part},
                 {"laurent_image", r.rholog.laurent_image}, {"total", r.rholog.total}};
  j["density_lower_bound"] = r.density_lower.get_str();
  j["min_unlikely_n"] = {{"n", r.unlikely.n}, {"shortcut", r.unlikely.shortcut},
                         {"shortcut_sufficient", r.unlikely.shortcut_sufficient}};
  j["asymptotic_envelope"] = {{"prime", r.envelope.prime}, {"value", r.envelope.value.get_str()}};
  return j;
}

std::string bound_report_table(const BoundReport& r) {
  std::vector<std::pair<std::string, std::string>> rows;
  auto opt = [](const std::optional<long>& x) { return x ? std::to_string(*x) : std::string("n/a"); };
  rows.emplace_back("disk count", std::to_string(r.disk_count));
  rows.emplace_back("annulus count", std::to_string(r.annulus_count));
  rows.emplace_back("B_A", opt(r.B_A_value));
  rows.emplace_back("points on disks", opt(r.points_on_disks));
  rows.emplace_back("points on annuli", opt(r.points_on_annuli));
  rows.emplace_back("N_local", r.N_local_value ? std::to_string(r.N_local_value->value) : "n/a");
  rows.emplace_back("N_local (maximized)", opt(r.N_local_maximized));
  rows.emplace_back("R_rational", opt(r.R_rational_value.value));
  rows.emplace_back("torsion bound", opt(r.torsion));
  rows.emplace_back("improved bound", opt(r.improved));
  rows.emplace_back("rholog total", std::to_string(r.rholog.total));
  rows.emplace_back("density lower bound", r.density_lower.get_str());
  rows.emplace_back("min unlikely n", std::to_string(r.unlikely.n));
  rows.emplace_back("asymptotic envelope", r.envelope.value.get_str());
  std::size_t width = 0;
  for (const auto& row : rows) width = std::max(width, row.first.size());
  std::ostringstream out;
  for (const auto& [k, v] : rows) out << std::left << std::setw(static_cast<int>(width) + 2) << k << v << '\n';
  return out.str();
}

Json to_json(const PointSearchResult& result) {
  Json pts = Json::array();
  for (const auto& [x, y] : result.affine) pts.push_back({x.get_str(), y.get_str()});
  return Json{{"affine", pts},
              {"affine_count", result.affine.size()},
              {"points_at_infinity", result.points_at_infinity},
              {"total", result.total()}};
}

Json to_json(const CoverReport& report) {
  return Json{{"points_checked", report.points_checked},
              {"hits", report.hits},
              {"gaps", report.gaps},
              {"overlaps", report.overlaps},
              {"exact", report.exact()}};
}

Json make_report(const std::string& command, Json payload) {
  return Json{{"schema_version", kSchemaVersion}, {"command", command}, {"result", std::move(payload)}};
}

}  // namespace hyperchab
