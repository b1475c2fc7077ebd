#pragma once

// JSON literals for polynomials and curves, plus the profile, partition and
// certificate documents written by the command-line tool.
//
//   polynomial: { "vars": n+1, "terms": [ { "exp": [e0, ..., en], "re": a, "im": b } ] }
//   curve:      { "components": [ { "terms": [ { "p": [c0, ...], "q": [0, a1, ...] } ] } ],
//                 "radius": R }   with complex numbers as [re, im] (a bare number is real)
//
// Parse errors are std::invalid_argument whose message starts with the path of
// the offending field, e.g. "terms[2].exp: ...".

#include <string>
#include <vector>

#include "nevanlab/borel.hpp"
#include "nevanlab/curve.hpp"
#include "nevanlab/geometry.hpp"
#include "nevanlab/nevanlinna.hpp"
#include "nevanlab/poly.hpp"

namespace nevanlab::io {

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

AffinePolynomial affine_from_json(const std::string& text);
// Fails unless every term has the same total degree.
HomogeneousPolynomial homogeneous_from_json(const std::string& text);
// A JSON array of polynomial literals.
std::vector<HomogeneousPolynomial> homogeneous_list_from_json(const std::string& text);
std::string to_json(const HomogeneousPolynomial& p);
std::string to_json(const AffinePolynomial& p);

ProjectiveCurve curve_from_json(const std::string& text, ProjectiveCurve::Check check = ProjectiveCurve::Check::reduced);
std::string to_json(const ProjectiveCurve& f);

// header r,T,N_trunc,prox,residual
std::string profile_csv(const NevanlinnaProfile& p);
std::string profile_json(const NevanlinnaProfile& p);
NevanlinnaProfile profile_from_json(const std::string& text);

std::string partition_json(const BorelPartition& part, const BorelReport& rep);

std::string certificate_json(const SmoothnessCertificate& c, const std::string& object);
std::string certificate_json(const GeneralPosition& g, const std::string& object);
std::string genus_json(const GenusReport& g);

}  // namespace nevanlab::io
