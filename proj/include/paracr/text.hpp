#pragma once

// Polynomial text syntax and JSON encoding.
//
//   poly   := term (('+' | '-') term)*      (a leading sign is allowed)
//   term   := [coef] factor*
//   factor := var ('^' nat)?
//   coef   := int ('/' posint)?
//
// Whitespace is ignored, juxtaposition multiplies, '#' starts a comment
// that runs to the end of the line.

#include <set>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "paracr/automorphisms.hpp"
#include "paracr/cm_operator.hpp"
#include "paracr/jet.hpp"
#include "paracr/point_map.hpp"

namespace paracr {

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& msg, int line, int column);
    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_, column_;
};

/// The result is exact in grading g; callers truncate.
WeightedPoly parsePoly(const std::string& text, const std::set<Var>& allowed,
                       const Grading& g = Grading::regular());

/// Grading selector: "regular", "total", or "singular:k".
Grading parseGrading(const std::string& text);

using Json = nlohmann::json;

Json toJson(const Rational& q);
Json toJson(Monomial m);
/// {"grading", "order" (null when exact), "terms": [{"coef", "exps"}], "text"}
Json toJson(const WeightedPoly& p);
Json toJson(const PointMap& m);
Json toJson(const VFieldJet& v);

WeightedPoly polyFromJson(const Json& j);

}  // namespace paracr
