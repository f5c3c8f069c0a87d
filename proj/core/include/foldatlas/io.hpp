#ifndef FOLDATLAS_IO_HPP
#define FOLDATLAS_IO_HPP

#include <string>

#include <foldatlas/vendor/json.hpp>

#include <foldatlas/surface.hpp>
#include <foldatlas/versality.hpp>

namespace foldatlas {

using json = nlohmann::ordered_json;

// {"vars": n, "order": k, "terms": [{"exp": [..], "coef": "p/q"}, ...]}
json jet_to_json(const Jet& j);
Jet jet_from_json(const json& doc);

// Surface-spec document: {"order": m, "coefficients": [{"i":..,"j":..,"a":"p/q"},..]}
// with "a" in the factorial normalization a_ij. Monge form enforced, duplicate
// (i,j) rejected.
SurfaceGerm surface_from_spec_json(const json& doc);
json surface_to_spec_json(const SurfaceGerm& s);

SurfaceGerm load_surface_spec(const std::string& path);

json witness_to_json(const Witness& w);
json class_to_json(const SingularityClass& c);
json versality_report_to_json(const VersalityReport& r);
json main_theorem_report_to_json(const MainTheoremReport& r);
json umbilic_report_to_json(const UmbilicReport& r);
json geometric_report_to_json(const GeometricReport& r);
json tangent_matrix_to_json(const TangentSpaceMatrix& m);

// temp file + rename, so readers never observe a partial file
void write_text_atomic(const std::string& path, const std::string& content);

} // namespace foldatlas

#endif
