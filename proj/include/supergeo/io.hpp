#pragma once

#include <json.hpp>
#include <string>

#include "supergeo/algebra.hpp"
#include "supergeo/catalog.hpp"
#include "supergeo/chart.hpp"
#include "supergeo/invariants.hpp"

namespace supergeo {

using Json = nlohmann::json;

/// {"name", "labels", "parities", "c": [[i,j,k,v], ...], "blocks": [n,m],
///  "realization": [matrix, ...], "quotient_by_identity"}; the last three only
/// when a realization exists.
Json algebra_to_json(const LieSuperalgebra& a);
LieSuperalgebra algebra_from_json(const Json& j);

/// {"n", "m", "even_names", "odd_names", "positive": [axes with x > 0],
///  "metric": [[entry]]}, entry = [{"odd": [α...], "poly": [{"exp": [...], "c": v}]}].
/// Only polynomial coefficients can be written.
Json metric_to_json(const GradedMetric& g);
GradedMetric metric_from_json(const Json& j);

Json matrix_to_json(const Eigen::MatrixXd& m);
Eigen::MatrixXd matrix_from_json(const Json& j);

Json form_report_to_json(const FormReport& r);
Json report_to_json(const CatalogReport& r);

Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

}  // namespace supergeo
