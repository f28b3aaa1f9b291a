#pragma once

// JSON encodings shared by the CLI and the tests.  Keys come out sorted
// (nlohmann's default object is an ordered map), so output is byte-stable.

#include <json.hpp>

#include "mplumb/arrangements.hpp"
#include "mplumb/atinfinity.hpp"
#include "mplumb/error.hpp"
#include "mplumb/gwring.hpp"
#include "mplumb/matrix.hpp"
#include "mplumb/mumford.hpp"
#include "mplumb/plumbing.hpp"
#include "mplumb/smithlift.hpp"

namespace mplumb {

using json = nlohmann::json;

/// Machine integers when they fit, decimal strings otherwise.
json to_json(const Integer& n);
json to_json(const Rational& q);
json to_json(const GwElement& a);
json to_json(const IntMatrix& m);
json to_json(const GwMatrix& m);
json to_json(const FieldTag& f);
json to_json(const Atom& a);
json to_json(const MotiveExpression& e);
json to_json(const PlumbingGraph& g);
json to_json(const GraphChecks& c);
json to_json(const IntSnf& r);
json to_json(const GwSnf& r);
json to_json(const Obstruction& o);
json to_json(const LinkResult& r);
json to_json(const DuValComparison& c);
json to_json(const HomologyGroup& h);
json to_json(const HomologyAtInfinity& h);
json to_json(const std::vector<RzTerm>& terms);
json to_json(const ChainComplexZ& c);
json to_json(const Error& e);

Integer integer_from_json(const json& j);
GwElement gw_from_json(const json& j);
FieldTag field_from_json(const json& j);
PlumbingGraph graph_from_json(const json& j);

}  // namespace mplumb
