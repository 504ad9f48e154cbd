#pragma once

// JSON documents for the command-line front end. Rationals are "p/q"
// strings (plain integers are accepted on input), Gaussian rationals are
// {"re","im"} objects, series are {"order_min","coeffs","trunc"} with trunc
// left out for exact series, and matrices are arrays of rows.

#include <stdexcept>
#include <string>

#include "json.hpp"
#include "wildhodge/betti.hpp"
#include "wildhodge/connection.hpp"
#include "wildhodge/metric.hpp"
#include "wildhodge/nahc.hpp"
#include "wildhodge/stokes.hpp"

namespace wildhodge::io {

using Json = nlohmann::ordered_json;

inline constexpr const char* kFormat = "wildhodge/1";

/// Anything wrong with an input document: syntax, shape or value.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses a file; syntax errors carry "line L, column C (byte B)".
Json read_document(const std::string& path);
Json parse_document(const std::string& text, const std::string& origin = "<input>");
/// A fresh object with the format tag and the command name.
Json report(const std::string& command);

Json to_json(const Rational& q);
Json to_json(const GaussRat& z);
Json to_json(const LaurentSeries& s);
Json to_json(const Matrix& m);
Json to_json(const LaurentMatrix& m);
Json to_json(const Weight& w);
Json to_json(const Character& c);
Json to_json(const ParabolicSpec& p);
Json to_json(const Root& r);
Json to_json(const IrregularType& q);
Json to_json(const ExactAngle& a);
Json to_json(const StokesDiagram& d);
Json to_json(const HalfPeriods& h);
Json to_json(const TPoly& p);
Json to_json(const StokesRep& rho);

Rational rational_from(const Json& j);
GaussRat gauss_from(const Json& j);
LaurentSeries series_from(const Json& j);
Matrix matrix_from(const Json& j);
LaurentMatrix laurent_matrix_from(const Json& j);
/// An array, or an object with a "weight" array.
Weight weight_from(const Json& j);
/// An array of diagonal series, or an object with a "Q" / "diagonal" array.
IrregularType irregular_type_from(const Json& j);

/// {"B": LaurentMatrix}
MeroConnection connection_from(const Json& j);
/// {"beta", "residue", optional "Q"}
DeRhamLocal de_rham_from(const Json& j);
/// {"n", "handles": [{"A","B"}], "punctures": [{"Q" (optional), "C", "h", "S"}]}
StokesRep stokes_rep_from(const Json& j);
/// {"weights": [[...], ...]} or a bare array, one weight per puncture.
std::vector<Weight> weights_from(const Json& j);
/// {"beta", "s", "Y"} with optional "X", "H" overriding the completed triple
/// and optional "s_bar", "Q".
MetricData metric_data_from(const Json& j);

}  // namespace wildhodge::io
