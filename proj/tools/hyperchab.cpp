#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "hyperchab/acceptance.hpp"
#include "hyperchab/error.hpp"
#include "hyperchab/json_io.hpp"

using namespace hyperchab;

namespace {

struct Options {
  long p = 3;
  long e = 1;
  long q = 0;
  long g = 3;
  long r = 0;
  long t = 0;
  long d = 1;
  long precision = kDefaultPrecision;
  long height = 100;
  long depth = 3;
  long annulus = 0;
  long u = -1;
  std::string out;
  std::string input;
  std::string lo = "-inf";
  std::string hi = "inf";
  bool lo_closed = false;
  bool hi_closed = false;
  bool table = false;
  std::string coeffs;
  std::string from;
  std::string to;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open input file '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    fail(Errc::InvalidInput, std::string("malformed JSON in '") + path + "': " + e.what());
  }
}

ValuationBound parse_bound(const std::string& s) {
  if (s == "inf" || s == "+inf" || s == "-inf") return std::nullopt;
  return rational_from_json(Json(s));
}

std::vector<mpq_class> parse_rationals(const std::string& csv) {
  std::vector<mpq_class> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(rational_from_json(Json(item)));
  return out;
}

void emit(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text << '\n';
    return;
  }
  std::ofstream f(o.out);
  if (!f) throw UsageError("cannot write output file '" + o.out + "'");
  f << text << '\n';
}

void emit_report(const Options& o, const std::string& command, Json payload) {
  emit(o, make_report(command, std::move(payload)).dump(2));
}

long p_from(const Json& j, const Options& o) { return j.contains("p") ? j.at("p").get<long>() : o.p; }

int run_bounds(const Options& o) {
  const BoundReport rep = make_bound_report(o.p, o.e, o.q > 0 ? o.q : o.p, o.d, o.g, o.r, o.t);
  if (o.table)
    emit(o, bound_report_table(rep));
  else
    emit_report(o, "bounds", to_json(rep));
  return 0;
}

int run_decompose(const Options& o) {
  const HyperellipticCurve curve = curve_from_json(read_json_file(o.input));
  emit_report(o, "decompose", to_json(decompose(curve)));
  return 0;
}

int run_pullback(const Options& o) {
  const HyperellipticCurve curve = curve_from_json(read_json_file(o.input));
  const Decomposition D = decompose(curve);
  if (o.annulus < 0 || o.annulus >= static_cast<long>(D.annuli.size()))
    fail(Errc::InvalidInput, "annulus index out of range; the curve has " + std::to_string(D.annuli.size()));
  std::vector<PAdic> u;
  for (const auto& c : parse_rationals(o.coeffs)) u.push_back(PAdic::from_rational(c, curve.p, curve.precision));
  if (u.empty()) fail(Errc::InvalidInput, "--coeffs must list the differential's coefficients");
  const AnnulusDescriptor& A = D.annuli[static_cast<std::size_t>(o.annulus)];
  Json payload{{"annulus", to_json(A)}, {"pullback", to_json(pullback_differential(A, u))}};
  emit_report(o, "pullback", payload);
  return 0;
}

RangeSpec range_from(const Options& o) {
  return RangeSpec{parse_bound(o.lo), parse_bound(o.hi), o.lo_closed, o.hi_closed};
}

int run_count_zeros(const Options& o) {
  const Json j = read_json_file(o.input);
  const LaurentPoly f = laurent_from_json(j, p_from(j, o), o.precision);
  const RangeSpec range = range_from(o);
  const NewtonPolygon polygon = newton_polygon(f);
  Json payload{{"polygon", to_json(polygon)}, {"count", count_zeros(f, range)}};
  emit_report(o, "count-zeros", payload);
  return 0;
}

int run_integrate(const Options& o) {
  const Json j = read_json_file(o.input);
  const long p = p_from(j, o);
  const LaurentPoly u = laurent_from_json(j.at("u"), p, o.precision);
  auto point = [&](const std::string& flag, const char* key) {
    if (!flag.empty()) return PAdic::from_rational(rational_from_json(Json(flag)), p, o.precision);
    if (!j.contains(key)) fail(Errc::InvalidInput, std::string("missing endpoint '") + key + "'");
    const Json& x = j.at(key);
    return x.is_object() ? padic_from_json(x, p) : PAdic::from_rational(rational_from_json(x), p, o.precision);
  };
  const PAdic x0 = point(o.from, "from");
  const PAdic x1 = point(o.to, "to");
  const std::string kind = j.value("kind", std::string("annulus"));
  Json payload;
  if (kind == "disk") {
    const FormalIntegral F = formal_integrate(u);
    if (!F.residue.is_zero()) fail(Errc::InvalidInput, "a disk integrand cannot have a z^-1 term");
    payload = {{"kind", "disk"}, {"value", to_json(integrate_disk(F.ell, x0, x1))}};
  } else {
    std::optional<PAdic> a;
    if (j.contains("a") && !j.at("a").is_null())
      a = j.at("a").is_object() ? padic_from_json(j.at("a"), p)
                                : PAdic::from_rational(rational_from_json(j.at("a")), p, o.precision);
    const auto I = AnnulusIntegrand::from_differential(u, rational_from_json(j.at("lo")), rational_from_json(j.at("hi")), a);
    payload = {{"kind", "annulus"},
               {"integrand", to_json(I)},
               {"value", to_json(a ? abelian_integral_annulus(I, x0, x1) : integrate_annulus(I, x0, x1))}};
  }
  emit_report(o, "integrate", payload);
  return 0;
}

int run_graph_check(const Options& o) {
  const ArithGraph G = graph_from_json(read_json_file(o.input));
  const GraphInvariants inv = validate(G);
  const std::optional<long> u = o.u >= 0 ? std::optional<long>(o.u) : std::nullopt;
  const SpecialFiberReport rep = evaluate_specialfiber_bounds(G, u);
  Json payload{{"g", inv.g}, {"t_prime", inv.t_prime}, {"chain_count", rep.fiber.chains.size()}, {"report", to_json(rep)}};
  emit_report(o, "graph-check", payload);
  return rep.all_ok() ? 0 : 1;
}

std::vector<mpq_class> polynomial_input(const Options& o) {
  if (!o.coeffs.empty()) return parse_rationals(o.coeffs);
  if (o.input.empty()) throw UsageError("give a curve file or --coeffs");
  const Json j = read_json_file(o.input);
  if (j.contains("roots")) return curve_from_json(j).f;
  std::vector<mpq_class> f;
  for (const auto& c : j.at("f")) f.push_back(rational_from_json(c));
  return f;
}

int run_search_points(const Options& o) {
  const PointSearchResult res = search_rational_points(polynomial_input(o), o.height);
  Json payload = to_json(res);
  payload["height"] = o.height;
  emit_report(o, "search-points", payload);
  return 0;
}

int run_verify_cover(const Options& o) {
  const HyperellipticCurve curve = curve_from_json(read_json_file(o.input));
  const CoverReport rep = cover_report(decompose(curve), o.depth);
  Json payload = to_json(rep);
  payload["depth"] = o.depth;
  emit_report(o, "verify-cover", payload);
  if (!rep.gaps.empty()) fail(Errc::CoverageGap, std::to_string(rep.gaps.size()) + " uncovered sample points");
  if (!rep.overlaps.empty()) fail(Errc::DoubleCover, std::to_string(rep.overlaps.size()) + " doubly covered sample points");
  return 0;
}

int run_verify_zeros(const Options& o) {
  const Json j = read_json_file(o.input);
  const long p = p_from(j, o);
  std::map<long, mpq_class> exact;
  for (const auto& [key, value] : j.at("terms").items()) exact[std::stol(key)] = rational_from_json(value);
  const auto lo = parse_bound(o.lo);
  const auto hi = parse_bound(o.hi);
  if (!lo || !hi || lo->get_den() != 1 || hi->get_den() != 1)
    fail(Errc::InvalidInput, "verify-zeros needs finite integer window endpoints");
  LaurentPoly f(p, o.precision);
  for (const auto& [n, c] : exact) f.set(n, PAdic::from_rational(c, p, o.precision));
  const long newton = count_zeros(f, RangeSpec{lo, hi, false, false});
  const long oracle = enumerate_padic_zeros(exact, p, lo->get_num().get_si(), hi->get_num().get_si(), o.depth);
  Json payload{{"newton_count_Cp", newton},
               {"oracle_count_Qp", oracle},
               {"consistent", oracle <= newton},
               {"equal", oracle == newton}};
  emit_report(o, "verify-zeros", payload);
  if (oracle > newton) fail(Errc::BoundViolated, "more certified Q_p zeros than the Newton polygon allows");
  return 0;
}

int run_selftest(const Options& o) {
  std::ostringstream text;
  bool all = true;
  for (int id = 1; id <= kCriterionCount; ++id) {
    const CriterionResult r = run_criterion(id);
    all = all && r.passed;
    text << format_result(r) << '\n';
  }
  text << (all ? "all criteria passed" : "some criteria FAILED");
  emit(o, text.str());
  return all ? 0 : 1;
}

void error_json(const std::string& code, const std::string& message) {
  std::cerr << Json{{"schema_version", kSchemaVersion}, {"error", code}, {"message", message}}.dump() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"p-adic tools for bounding rational points on hyperelliptic curves"};
  app.require_subcommand(1);
  Options o;

  auto common = [&o](CLI::App* sub) {
    sub->add_option("--p", o.p, "prime");
    sub->add_option("--precision", o.precision, "absolute p-adic precision");
    sub->add_option("--out", o.out, "write the report to FILE");
  };
  auto input = [&o](CLI::App* sub, bool required) {
    auto* opt = sub->add_option("input", o.input, "input JSON file");
    if (required) opt->required();
  };
  auto window = [&o](CLI::App* sub) {
    sub->add_option("--lo", o.lo, "lower valuation bound, or -inf");
    sub->add_option("--hi", o.hi, "upper valuation bound, or inf");
  };

  std::map<std::string, std::function<int(const Options&)>> handlers;

  auto* bounds = app.add_subcommand("bounds", "evaluate the point-count bounds");
  common(bounds);
  bounds->add_option("--e", o.e, "ramification index");
  bounds->add_option("--q", o.q, "residue field size (defaults to p)");
  bounds->add_option("--g", o.g, "genus");
  bounds->add_option("--r", o.r, "Mordell-Weil rank (asserted)");
  bounds->add_option("--t", o.t, "toric rank");
  bounds->add_option("--d", o.d, "degree of the number field");
  bounds->add_flag("--table", o.table, "print an aligned text table instead of JSON");
  handlers["bounds"] = run_bounds;

  auto* dec = app.add_subcommand("decompose", "disk and annulus decomposition of a split curve");
  common(dec);
  input(dec, true);
  handlers["decompose"] = run_decompose;

  auto* pull = app.add_subcommand("pullback", "pull a differential back to one annulus");
  common(pull);
  input(pull, true);
  pull->add_option("--annulus", o.annulus, "annulus index in the decomposition");
  pull->add_option("--coeffs", o.coeffs, "comma-separated coefficients of the differential, ascending")->required();
  handlers["pullback"] = run_pullback;

  auto* cz = app.add_subcommand("count-zeros", "Newton polygon zero count in a valuation range");
  common(cz);
  input(cz, true);
  window(cz);
  cz->add_flag("--lo-closed", o.lo_closed, "include the lower endpoint");
  cz->add_flag("--hi-closed", o.hi_closed, "include the upper endpoint");
  handlers["count-zeros"] = run_count_zeros;

  auto* integ = app.add_subcommand("integrate", "integrate a Laurent differential on a disk or annulus");
  common(integ);
  input(integ, true);
  integ->add_option("--from", o.from, "start point (rational)");
  integ->add_option("--to", o.to, "end point (rational)");
  handlers["integrate"] = run_integrate;

  auto* gc = app.add_subcommand("graph-check", "validate a special-fiber graph and check its bounds");
  common(gc);
  input(gc, true);
  gc->add_option("--u", o.u, "number of components used in the A1 bound (default: computed proxy)");
  handlers["graph-check"] = run_graph_check;

  auto* sp = app.add_subcommand("search-points", "rational points of bounded height");
  common(sp);
  input(sp, false);
  sp->add_option("--height", o.height, "height bound H");
  sp->add_option("--coeffs", o.coeffs, "comma-separated coefficients of f, ascending");
  handlers["search-points"] = run_search_points;

  auto* vc = app.add_subcommand("verify-cover", "check that the decomposition covers P^1 exactly once");
  common(vc);
  input(vc, true);
  vc->add_option("--depth", o.depth, "sample x modulo p^depth");
  handlers["verify-cover"] = run_verify_cover;

  auto* vz = app.add_subcommand("verify-zeros", "Newton count against exhaustive Q_p enumeration");
  common(vz);
  input(vz, true);
  window(vz);
  vz->add_option("--depth", o.depth, "enumeration precision N");
  handlers["verify-zeros"] = run_verify_zeros;

  auto* st = app.add_subcommand("selftest", "run the acceptance suite");
  st->add_option("--out", o.out, "write the matrix to FILE");
  handlers["selftest"] = run_selftest;

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  try {
    return handlers.at(name)(o);
  } catch (const UsageError& e) {
    error_json("UsageError", e.what());
    return 2;
  } catch (const Error& e) {
    error_json(to_string(e.code()), e.what());
    return 1;
  } catch (const std::exception& e) {
    error_json("InvalidInput", e.what());
    return 1;
  }
}
