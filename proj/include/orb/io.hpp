#pragma once

#include <string>

#include "json.hpp"
#include "orb/euler.hpp"
#include "orb/frob.hpp"
#include "orb/fusion.hpp"
#include "orb/mesh.hpp"
#include "orb/report.hpp"
#include "orb/scalar.hpp"

namespace orb::io {

using json = nlohmann::json;

// Throws ParseError with "source:line:column" on malformed text.
json parse_json(const std::string& text, const std::string& source = "<input>");
json read_json_file(const std::string& path);
// Compact, order-stable layout for data files.
std::string format_json(const json& j);
void write_json_file(const std::string& path, const json& j);

// Scalars: "p/q" strings, integers, decimal strings (exact), JSON floats,
// or [re, im] pairs (float). Exact values are written as "p/q" strings,
// floats as [re, im].
Scalar scalar_from_json(const json& j);
json to_json(const Scalar& s);

// {dim, vertices: {id: height}, simplices, signs, boundary: {name: facets}}.
// Missing signs are computed; a missing boundary is detected.
Triangulation triangulation_from_json(const json& j);
json to_json(const Triangulation& t);

// The triangulation format plus strata: [{dim, label, simplices}].
StratifiedComplex stratified_from_json(const json& j);
json to_json(const StratifiedComplex& x);

// {psi: {"1": scalar, "2": scalar, ...}}.
EulerWeights weights_from_json(const json& j);
json to_json(const EulerWeights& w);

// {dim, mu (n x n x n nested), eta, eps, optional delta, optional basis}.
FrobeniusData algebra_from_json(const json& j);
json to_json(const FrobeniusData& a);

// {labels, unit, dual, N: [[a,b,c]...], F: [[a,b,c,d,e,f,value]...],
// optional Fbar in the same form, d, phi}. Labels may be given by index or
// by name. Without Fbar the blockwise inverse of F is used.
FusionData category_from_json(const json& j);
json to_json(const FusionData& c);

json to_json(const CheckRecord& r);
json to_json(const Report& r);
Report report_from_json(const json& j);

}  // namespace orb::io
