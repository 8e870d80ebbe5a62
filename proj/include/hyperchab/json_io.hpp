#pragma once

#include <string>

#include <json.hpp>

#include "hyperchab/arith_graph.hpp"
#include "hyperchab/bounds.hpp"
#include "hyperchab/curve.hpp"
#include "hyperchab/decomp.hpp"
#include "hyperchab/integration.hpp"
#include "hyperchab/oracle.hpp"
#include "hyperchab/padic.hpp"
#include "hyperchab/series.hpp"

namespace hyperchab {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "hyperchab-report/1";

Json to_json(const PAdic& x);
PAdic padic_from_json(const Json& j, long p);

Json to_json(const LaurentPoly& f);
LaurentPoly laurent_from_json(const Json& j, long p, long precision);

Json to_json(const NewtonPolygon& polygon);
Json to_json(const LaurentData& data);
Json to_json(const AnnulusIntegrand& integrand);

/// {"p", "f": [rational strings], "precision", "roots"?, "valuation_matrix"?}.
HyperellipticCurve curve_from_json(const Json& j);

Json to_json(const ClusterTree& tree);
Json to_json(const AnnulusDescriptor& annulus);
Json to_json(const Decomposition& D);

/// {"vertices": [{"m", "pa", "w", "case3_point_ids"?}], "edges": [[i, j, mult]]}.
ArithGraph graph_from_json(const Json& j);
Json to_json(const ArithGraph& G);
Json to_json(const FiberClassification& fiber);
Json to_json(const SpecialFiberReport& report);

Json to_json(const BoundReport& report);
/// Two-column aligned text rendering of a bound report.
std::string bound_report_table(const BoundReport& report);

Json to_json(const PointSearchResult& result);
Json to_json(const CoverReport& report);

/// Wraps a payload with the schema version and the subcommand name.
Json make_report(const std::string& command, Json payload);

mpq_class rational_from_json(const Json& j);

}  // namespace hyperchab
