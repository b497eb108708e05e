#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "dilatron/contraction_tuple.hpp"
#include "dilatron/cpmap.hpp"
#include "dilatron/dilation_single.hpp"
#include "dilatron/polynomial.hpp"
#include "dilatron/spectral_cubature.hpp"

namespace dilatron::io {

using Json = nlohmann::json;

// Parsers validate structure, dimensions and finiteness before any math
// runs and throw DilationError(InvalidInput) with a field path such as
// "ops[1].data[0][2]".

Json complex_to_json(Complex z);
Complex complex_from_json(const Json& j, const std::string& path);

Json matrix_to_json(const CMatrix& m);
CMatrix matrix_from_json(const Json& j, const std::string& path = "matrix");

Json tuple_to_json(const ContractionTuple& t);
/// Accepts {"ops": [...]} or a bare CMatrix (a one-operator tuple).
std::vector<CMatrix> tuple_ops_from_json(const Json& j, const std::string& path = "tuple");

Json dilation_to_json(const NDilation& d);
NDilation dilation_from_json(const Json& j, const std::string& path = "dilation");

Json poly_to_json(const MultiPoly& p);
MultiPoly poly_from_json(const Json& j, const std::string& path = "poly");

Json point_to_json(const TorusPoint& w);
/// Accepts {"point": [[re, im], …]} or the bare array.
std::vector<Complex> point_from_json(const Json& j, const std::string& path = "point");

Json cubature_to_json(const CubatureRule& r);
CubatureRule cubature_from_json(const Json& j, const std::string& path = "rule");

Json certificate_to_json(const VNCertificate& c);
VNCertificate certificate_from_json(const Json& j, const std::string& path = "cert");

Json cpmap_to_json(const CPMap& phi);
CPMap cpmap_from_json(const Json& j, const std::string& path = "map");

Json read_file(const std::string& path);
void write_file(const std::string& path, const Json& j);

/// Canonical text form: sorted keys, two-space indent, trailing newline.
std::string dump(const Json& j);

}  // namespace dilatron::io
