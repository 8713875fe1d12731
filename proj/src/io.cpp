#include "supergeo/io.hpp"

#include <fstream>

#include "supergeo/errors.hpp"

namespace supergeo {

using Eigen::MatrixXd;

Json matrix_to_json(const MatrixXd& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

MatrixXd matrix_from_json(const Json& j) {
  if (!j.is_array()) throw InvalidArgument("matrix must be an array of rows");
  const auto r = static_cast<int>(j.size());
  const int c = r ? static_cast<int>(j[0].size()) : 0;
  MatrixXd m(r, c);
  for (int i = 0; i < r; ++i) {
    if (static_cast<int>(j[static_cast<std::size_t>(i)].size()) != c) throw InvalidArgument("ragged matrix");
    for (int k = 0; k < c; ++k) m(i, k) = j[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)].get<double>();
  }
  return m;
}

Json algebra_to_json(const LieSuperalgebra& a) {
  Json j;
  j["name"] = a.name();
  j["labels"] = a.labels();
  j["parities"] = a.parities();
  Json c = Json::array();
  for (const auto& [i, jj, k, v] : a.constants()) c.push_back({i, jj, k, v});
  j["c"] = std::move(c);
  if (a.has_realization()) {
    const Realization& r = *a.realization();
    j["blocks"] = {r.n, r.m};
    Json mats = Json::array();
    for (const auto& m : r.matrices) mats.push_back(matrix_to_json(m));
    j["realization"] = std::move(mats);
    j["quotient_by_identity"] = r.quotient_by_identity;
  }
  return j;
}

LieSuperalgebra algebra_from_json(const Json& j) {
  try {
    const auto parities = j.at("parities").get<std::vector<int>>();
    std::vector<std::string> labels;
    if (j.contains("labels")) {
      labels = j["labels"].get<std::vector<std::string>>();
    } else {
      for (std::size_t i = 0; i < parities.size(); ++i) labels.push_back("e" + std::to_string(i + 1));
    }
    std::vector<StructureConstant> constants;
    for (const auto& t : j.at("c")) {
      if (t.size() != 4) throw InvalidArgument("structure constant entries are [i, j, k, value]");
      constants.emplace_back(t[0].get<int>(), t[1].get<int>(), t[2].get<int>(), t[3].get<double>());
    }
    std::optional<Realization> real;
    if (j.contains("realization") && !j["realization"].is_null()) {
      Realization r;
      const auto blocks = j.at("blocks").get<std::vector<int>>();
      if (blocks.size() != 2) throw InvalidArgument("blocks must be [n, m]");
      r.n = blocks[0];
      r.m = blocks[1];
      for (const auto& mj : j["realization"]) r.matrices.push_back(matrix_from_json(mj));
      r.quotient_by_identity = j.value("quotient_by_identity", false);
      real = std::move(r);
    }
    return LieSuperalgebra::from_constants(j.value("name", std::string("algebra")), std::move(labels), parities,
                                           constants, std::move(real));
  } catch (const Json::exception& e) {
    throw InvalidArgument(std::string("malformed algebra JSON: ") + e.what());
  }
}

Json metric_to_json(const GradedMetric& g) {
  const Chart& ch = g.chart();
  Json j;
  j["n"] = ch.n;
  j["m"] = ch.m;
  j["even_names"] = ch.even_names;
  j["odd_names"] = ch.odd_names;
  if (ch.domain) throw InvalidArgument("chart domain conditions beyond positive axes cannot be serialised");
  if (!ch.positive.empty()) j["positive"] = ch.positive;
  Json rows = Json::array();
  for (int a = 0; a < g.dim(); ++a) {
    Json row = Json::array();
    for (int b = 0; b < g.dim(); ++b) {
      Json entry = Json::array();
      for (const auto& [set, coef] : g.entry(a, b).terms()) {
        if (!coef.is_polynomial()) throw InvalidArgument("only polynomial metric coefficients can be serialised");
        Json poly = Json::array();
        for (const auto& [e, c] : coef.polynomial().terms()) poly.push_back({{"exp", e}, {"c", c}});
        entry.push_back({{"odd", set.indices()}, {"poly", std::move(poly)}});
      }
      row.push_back(std::move(entry));
    }
    rows.push_back(std::move(row));
  }
  j["metric"] = std::move(rows);
  return j;
}

GradedMetric metric_from_json(const Json& j) {
  try {
    const int n = j.at("n").get<int>(), m = j.at("m").get<int>();
    Chart ch = Chart::standard(n, m);
    if (j.contains("even_names")) ch.even_names = j["even_names"].get<std::vector<std::string>>();
    if (j.contains("odd_names")) ch.odd_names = j["odd_names"].get<std::vector<std::string>>();
    if (static_cast<int>(ch.even_names.size()) != n || static_cast<int>(ch.odd_names.size()) != m)
      throw InvalidArgument("coordinate names do not match n|m");
    if (j.contains("positive")) {
      const auto axes = j["positive"].get<std::vector<int>>();
      for (int ax : axes)
        if (ax < 0 || ax >= n) throw InvalidArgument("positive axis out of range");
      ch.positive = axes;
    }
    const int d = n + m;
    const Json& rows = j.at("metric");
    if (static_cast<int>(rows.size()) != d) throw DimensionMismatch("metric must be (n+m) x (n+m)");
    std::vector<std::vector<Superfunction>> e(static_cast<std::size_t>(d));
    for (int a = 0; a < d; ++a) {
      const Json& row = rows[static_cast<std::size_t>(a)];
      if (static_cast<int>(row.size()) != d) throw DimensionMismatch("metric must be (n+m) x (n+m)");
      for (int b = 0; b < d; ++b) {
        Superfunction f(n, m);
        for (const auto& term : row[static_cast<std::size_t>(b)]) {
          const auto odd = term.value("odd", std::vector<int>{});
          Polynomial p(n);
          for (const auto& mono : term.at("poly")) {
            const auto exp = mono.at("exp").get<std::vector<int>>();
            if (static_cast<int>(exp.size()) != n) throw DimensionMismatch("exponent vector length must be n");
            p.add(exp, mono.at("c").get<double>());
          }
          f.add_term(OddIndexSet::from_indices(std::span<const int>(odd), m), p);
        }
        e[static_cast<std::size_t>(a)].push_back(std::move(f));
      }
    }
    return GradedMetric(std::move(ch), std::move(e));
  } catch (const Json::exception& ex) {
    throw InvalidArgument(std::string("malformed chart JSON: ") + ex.what());
  }
}

Json form_report_to_json(const FormReport& r) {
  return {{"symmetry_residual", r.symmetry_residual},
          {"parity_residual", r.parity_residual},
          {"min_singular_even", r.min_singular_even},
          {"min_singular_odd", r.min_singular_odd},
          {"rank_even", r.rank_even},
          {"rank_odd", r.rank_odd},
          {"graded_symmetric", r.graded_symmetric},
          {"even", r.even},
          {"nondegenerate", r.nondegenerate},
          {"scalar_superproduct", r.is_scalar_superproduct()}};
}

Json report_to_json(const CatalogReport& r) {
  Json stages = Json::array();
  for (const auto& s : r.stages)
    stages.push_back({{"name", s.name}, {"passed", s.passed}, {"residual", s.residual}, {"detail", s.detail}});
  return {{"family", r.family},
          {"params", r.params},
          {"algebra", r.algebra},
          {"expected_k", r.expected_k},
          {"k_dim", {r.k_even, r.k_odd}},
          {"p_dim", {r.p_even, r.p_odd}},
          {"expected_failures", r.expected_failures},
          {"passed", r.passed()},
          {"stages", std::move(stages)}};
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InvalidArgument("'" + path + "' is not valid JSON: " + e.what());
  }
}

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw InvalidArgument("cannot write '" + path + "'");
  out << j.dump(2) << '\n';
}

}  // namespace supergeo
