// Command-line front end: JSON reports on stdout, CSV time series on request.
// Exit codes: 0 all checks pass, 1 computational failure, 2 usage error.

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "supergeo/catalog.hpp"
#include "supergeo/errors.hpp"
#include "supergeo/families.hpp"
#include "supergeo/geodesic.hpp"
#include "supergeo/invariants.hpp"
#include "supergeo/involution.hpp"
#include "supergeo/io.hpp"

using namespace supergeo;
using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

// Bad input detected before computing anything.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<double> parse_list(const std::string& s, const std::string& flag) {
  std::vector<double> out;
  if (s.empty()) return out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError("--" + flag + ": cannot parse '" + item + "' as a number");
    }
  }
  return out;
}

VectorXd to_vector(const std::vector<double>& v) { return Eigen::Map<const VectorXd>(v.data(), static_cast<Eigen::Index>(v.size())); }

Params parse_params(const std::string& s) {
  Params p;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw UsageError("--params expects key=value pairs, got '" + item + "'");
    try {
      p[item.substr(0, eq)] = std::stod(item.substr(eq + 1));
    } catch (const std::exception&) {
      throw UsageError("--params: bad value in '" + item + "'");
    }
  }
  return p;
}

Json grassmann_json(const Grassmann& g) {
  Json out = Json::array();
  for (const auto& [mask, c] : g.terms()) out.push_back({{"odd", OddIndexSet::from_mask(mask).indices()}, {"c", c}});
  return out;
}

LieSuperalgebra load_algebra(const std::string& path) { return algebra_from_json(read_json_file(path)); }

/// Built-in names ("hyperbolic", "sphere", "flat:n,m") or a chart JSON file.
GradedMetric load_chart(const std::string& source) {
  if (source == "hyperbolic") return hyperbolic_metric();
  if (source == "sphere") return sphere_metric();
  if (source.rfind("flat:", 0) == 0) {
    const auto v = parse_list(source.substr(5), "chart");
    if (v.size() != 2) throw UsageError("flat chart is flat:n,m");
    return flat_metric(static_cast<int>(v[0]), static_cast<int>(v[1]));
  }
  return metric_from_json(read_json_file(source));
}

MatrixXd load_form(const std::string& source, const LieSuperalgebra& a) {
  if (source == "killing") return killing_form(a);
  if (source == "str") {
    if (!a.has_realization()) throw UsageError("str form needs an algebra with a matrix realization");
    return supertrace_form(a);
  }
  const Json j = read_json_file(source);
  MatrixXd f = matrix_from_json(j.is_object() ? j.at("form") : j);
  if (f.rows() != a.dim() || f.cols() != a.dim()) throw UsageError("form size does not match the algebra");
  return f;
}

void emit(const Json& j) { std::cout << j.dump(2) << '\n'; }

// Every subcommand returns its exit code.
struct Options {
  std::optional<double> tolerance;
  double tol(double fallback) const { return tolerance.value_or(fallback); }
};

int cmd_algebra(const Options& o, const std::string& family, const Params& p, const std::string& out) {
  const LieSuperalgebra a = construct_algebra(family, p);
  const double jac = check_jacobi(a);
  const bool ok = jac <= o.tol(1e-10);
  if (!out.empty()) write_json_file(out, algebra_to_json(a));
  emit({{"name", a.name()},
        {"dim", {a.even_dim(), a.odd_dim()}},
        {"jacobi_residual", jac},
        {"passed", ok},
        {"algebra", out.empty() ? algebra_to_json(a) : Json(out)}});
  return ok ? 0 : 1;
}

int cmd_killing(const Options& o, const std::string& in) {
  const LieSuperalgebra a = load_algebra(in);
  const MatrixXd b = killing_form(a);
  Json r{{"name", a.name()}, {"killing", matrix_to_json(b)}, {"max_abs", b.cwiseAbs().maxCoeff()}};
  const double tol = o.tol(1e-9);
  r["vanishes"] = b.cwiseAbs().maxCoeff() <= tol;
  if (a.has_realization()) {
    const MatrixXd s = supertrace_form(a);
    const double ss = (s.array() * s.array()).sum();
    const double factor = ss > 0 ? (b.array() * s.array()).sum() / ss : 0.0;
    const double residual = (b - factor * s).cwiseAbs().maxCoeff();
    r["str_form"] = matrix_to_json(s);
    r["factor"] = factor;
    r["residual"] = residual;
    r["proportional_to_str"] = residual <= tol;
  }
  r["form_report"] = form_report_to_json(analyze_form(a.parities(), b, tol));
  emit(r);
  return 0;
}

int cmd_invariance(const Options& o, const std::string& in, const std::string& form_spec, bool search) {
  const LieSuperalgebra a = load_algebra(in);
  const double tol = o.tol(1e-9);
  Json r{{"name", a.name()}};
  bool ok = true;
  if (!form_spec.empty()) {
    const MatrixXd f = load_form(form_spec, a);
    const double inv = check_ad_invariance(a, f);
    const FormReport fr = analyze_form(a.parities(), f, tol);
    r["ad_invariance_residual"] = inv;
    r["form_report"] = form_report_to_json(fr);
    ok = inv <= tol && fr.is_scalar_superproduct();
  }
  if (search) {
    const InvariantFormSearch s = search_invariant_superproduct(a, tol);
    r["search"] = {{"solution_dim", s.solution_dim}, {"nondegenerate_exists", s.nondegenerate_exists}};
    if (s.nondegenerate_exists) r["search"]["witness"] = matrix_to_json(s.witness);
    ok = ok && s.nondegenerate_exists;
  }
  r["passed"] = ok;
  emit(r);
  return ok ? 0 : 1;
}

int cmd_split(const Options& o, const std::string& in, const std::string& sigma_path) {
  const LieSuperalgebra a = load_algebra(in);
  const Json sj = read_json_file(sigma_path);
  const MatrixXd sigma = matrix_from_json(sj.is_object() ? sj.at("sigma") : sj);
  if (sigma.rows() != a.dim() || sigma.cols() != a.dim()) throw UsageError("sigma size does not match the algebra");
  const double tol = o.tol(1e-10);
  const InvolutionCheck ic = check_involution(a, sigma, tol);
  Json r{{"name", a.name()},
         {"involution",
          {{"valid", ic.valid},
           {"square_residual", ic.square_residual},
           {"parity_residual", ic.parity_residual},
           {"automorphism_residual", ic.automorphism_residual},
           {"message", ic.message}}}};
  if (!ic.valid) {
    r["passed"] = false;
    emit(r);
    return 1;
  }
  const SymmetricDecomposition d = eigensplit(a, Involution{sigma});
  r["k"] = {{"dim", {d.k_even(), d.k_odd()}}, {"basis", matrix_to_json(d.k)}};
  r["p"] = {{"dim", {d.p_even(), d.p_odd()}}, {"basis", matrix_to_json(d.p)}};
  r["residuals"] = {{"kk", d.kk_residual}, {"kp", d.kp_residual}, {"pp", d.pp_residual}};
  const bool ok = d.max_residual() <= tol;
  r["passed"] = ok;
  emit(r);
  return ok ? 0 : 1;
}

int cmd_extend(const Options& o, const std::string& in, const std::string& odd_path, const std::string& out) {
  const LieSuperalgebra a = load_algebra(in);
  const Json oj = read_json_file(odd_path);
  const MatrixXd odd = matrix_from_json(oj.is_object() ? oj.at("form") : oj);
  if (odd.rows() != a.odd_dim() || odd.cols() != a.odd_dim()) throw UsageError("odd form must be odd_dim x odd_dim");
  const double tol = o.tol(1e-9);
  try {
    const MatrixXd f = extend_odd_form(a, odd, tol);
    const double inv = check_ad_invariance(a, f);
    const FormReport fr = analyze_form(a.parities(), f, tol);
    if (!out.empty()) write_json_file(out, matrix_to_json(f));
    const bool ok = inv <= tol && fr.is_scalar_superproduct();
    emit({{"name", a.name()},
          {"form", matrix_to_json(f)},
          {"ad_invariance_residual", inv},
          {"form_report", form_report_to_json(fr)},
          {"passed", ok}});
    return ok ? 0 : 1;
  } catch (const HypothesisFailure& e) {
    emit({{"name", a.name()}, {"passed", false}, {"hypothesis_failure", e.what()}});
    return 1;
  }
}

struct CurveArgs {
  std::string chart;
  std::string p, v, w;
  double t_end = 1.0;
  double step = 1e-3;
};

GeodesicResult run_geodesic(const GradedMetric& g, const CurveArgs& c) {
  const auto p = parse_list(c.p, "p"), v = parse_list(c.v, "v");
  auto w = parse_list(c.w, "w");
  const int n = g.chart().n, m = g.chart().m;
  if (static_cast<int>(p.size()) != n || static_cast<int>(v.size()) != n)
    throw UsageError("--p and --v need " + std::to_string(n) + " entries");
  if (w.empty()) w.assign(static_cast<std::size_t>(m), 0.0);
  if (static_cast<int>(w.size()) != m) throw UsageError("--w needs " + std::to_string(m) + " entries");
  if (!(c.step > 0) || !std::isfinite(c.t_end)) throw UsageError("--step must be positive and --t-end finite");
  if (!g.chart().contains(p)) throw UsageError("--p lies outside the chart domain");
  return integrate_geodesic(g, to_vector(p), to_vector(v), to_vector(w), c.t_end, c.step);
}

int cmd_geodesic(const Options& o, const CurveArgs& c, const std::string& out) {
  const GradedMetric g = load_chart(c.chart);
  const GeodesicResult res = run_geodesic(g, c);
  const int n = g.chart().n, m = g.chart().m;
  if (!out.empty()) {
    std::ofstream f(out);
    if (!f) throw UsageError("cannot write '" + out + "'");
    f.precision(17);
    f << "t";
    for (int i = 0; i < n; ++i) f << ",g_" << g.chart().even_names[static_cast<std::size_t>(i)];
    for (int i = 0; i < n; ++i) f << ",v_" << g.chart().even_names[static_cast<std::size_t>(i)];
    for (int a = 0; a < m; ++a) f << ",h_" << g.chart().odd_names[static_cast<std::size_t>(a)];
    f << '\n';
    for (const auto& s : res.states) {
      f << s.t;
      for (int i = 0; i < n; ++i) f << ',' << s.g(i);
      for (int i = 0; i < n; ++i) f << ',' << s.v(i);
      for (int a = 0; a < m; ++a) f << ',' << s.h(a);
      f << '\n';
    }
  }
  const auto& last = res.states.back();
  const double tol = o.tol(1e-6);
  const bool ok = res.energy_drift <= tol;
  emit({{"steps", res.steps},
        {"step", res.step},
        {"end",
         {{"t", last.t},
          {"g", std::vector<double>(last.g.data(), last.g.data() + last.g.size())},
          {"v", std::vector<double>(last.v.data(), last.v.data() + last.v.size())},
          {"h", std::vector<double>(last.h.data(), last.h.data() + last.h.size())}}},
        {"energy_drift", res.energy_drift},
        {"equation_residual", res.equation_residual},
        {"passed", ok}});
  return ok ? 0 : 1;
}

int cmd_transport(const Options& o, const CurveArgs& c, const std::string& tau_even, const std::string& tau_odd,
                  const std::string& out) {
  const GradedMetric g = load_chart(c.chart);
  const int n = g.chart().n, m = g.chart().m;
  auto te = parse_list(tau_even, "tau-even"), to = parse_list(tau_odd, "tau-odd");
  if (te.empty()) te.assign(static_cast<std::size_t>(n), 0.0);
  if (to.empty()) to.assign(static_cast<std::size_t>(m), 0.0);
  if (static_cast<int>(te.size()) != n || static_cast<int>(to.size()) != m)
    throw UsageError("--tau-even needs n entries and --tau-odd m entries");
  const GeodesicResult res = run_geodesic(g, c);
  const TangentVector tau{to_vector(te), to_vector(to)};
  const ParallelFrame frame = parallel_transport(g, res.states, tau);
  const double drift = transport_inner_drift(g, res.states, frame, frame);
  if (!out.empty()) {
    std::ofstream f(out);
    if (!f) throw UsageError("cannot write '" + out + "'");
    f.precision(17);
    f << "t";
    for (int i = 0; i < n; ++i) f << ",f_" << i + 1;
    for (int a = 0; a < m; ++a) f << ",f_xi" << a + 1;
    for (int i = 0; i < n; ++i) f << ",gx_" << i + 1;
    for (int a = 0; a < m; ++a) f << ",gx_xi" << a + 1;
    f << '\n';
    for (const auto& s : frame.samples) {
      f << s.t;
      for (int i = 0; i < n; ++i) f << ',' << s.f_even(i);
      for (int a = 0; a < m; ++a) f << ',' << s.f_odd(a);
      for (int i = 0; i < n; ++i) f << ',' << s.g_even(i);
      for (int a = 0; a < m; ++a) f << ',' << s.g_odd(a);
      f << '\n';
    }
  }
  const auto& last = frame.samples.back();
  const bool ok = drift <= o.tol(1e-6);
  emit({{"samples", frame.samples.size()},
        {"end_even", std::vector<double>(last.f_even.data(), last.f_even.data() + last.f_even.size())},
        {"end_odd", std::vector<double>(last.f_odd.data(), last.f_odd.data() + last.f_odd.size())},
        {"inner_product_drift", drift},
        {"passed", ok}});
  return ok ? 0 : 1;
}

int cmd_curvature(const Options& o, const std::string& chart, const std::string& point, bool full) {
  const GradedMetric g = load_chart(chart);
  const auto p = parse_list(point, "p");
  if (static_cast<int>(p.size()) != g.chart().n) throw UsageError("--p needs n entries");
  if (!g.chart().contains(p)) throw UsageError("--p lies outside the chart domain");
  const double tol = o.tol(1e-9);
  const MetricReport mr = validate_metric(g, {p}, tol);
  Json r{{"metric_ok", mr.ok}};
  if (!mr.ok) {
    Json v = Json::array();
    for (const auto& x : mr.violations) v.push_back({{"kind", x.kind}, {"a", x.a}, {"b", x.b}, {"detail", x.detail}});
    r["violations"] = v;
    r["passed"] = false;
    emit(r);
    return 1;
  }
  const ChristoffelAtPoint gam = christoffel_at(g, p);
  const ConnectionResiduals cr = connection_residuals_at(g, p, gam);
  const CurvatureSymmetryResiduals cs = curvature_symmetry_residuals(g, p);
  const double parity = christoffel_parity_violation(g, gam);
  r["torsion"] = cr.torsion;
  r["metricity"] = cr.metricity;
  r["christoffel_parity_violation"] = parity;
  r["curvature_symmetries"] = {{"antisym_xy", cs.antisym_xy},
                               {"antisym_zw", cs.antisym_zw},
                               {"pair_swap", cs.pair_swap},
                               {"bianchi", cs.bianchi}};
  if (g.chart().n >= 2) r["sectional_curvature_01"] = sectional_curvature(g, p, 0, 1);
  if (full) {
    const int d = g.dim();
    Json gj = Json::array();
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b)
        for (int c = 0; c < d; ++c)
          if (!gam(a, b, c).is_zero()) gj.push_back({{"a", a}, {"b", b}, {"c", c}, {"value", grassmann_json(gam(a, b, c))}});
    r["christoffel"] = gj;
    const CurvatureAtPoint rr = curvature_at(g, p);
    Json rj = Json::array();
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b)
        for (int c = 0; c < d; ++c)
          for (int e = 0; e < d; ++e)
            if (!rr(a, b, c, e).is_zero())
              rj.push_back({{"a", a}, {"b", b}, {"c", c}, {"d", e}, {"value", grassmann_json(rr(a, b, c, e))}});
    r["curvature"] = rj;
  }
  const bool ok = cr.torsion <= tol && cr.metricity <= tol && cs.max() <= tol * 10 && parity == 0.0;
  r["passed"] = ok;
  emit(r);
  return ok ? 0 : 1;
}

int cmd_verify(const Options& o, const std::string& family, const std::string& params, bool all, bool json) {
  if (!all && family.empty()) throw UsageError("verify needs --family or --all");
  const double tol = o.tol(1e-9);
  std::vector<CatalogReport> reports;
  if (all) {
    for (const auto& ex : list_examples())
      for (const auto& p : desk_grid(ex.name)) reports.push_back(verify_example(ex.name, p, tol));
  } else {
    Params p = parse_params(params);
    if (p.empty()) {
      for (const auto& ex : list_examples())
        if (ex.name == family) p = ex.defaults;
    }
    reports.push_back(verify_example(family, p, tol));
  }
  bool ok = true;
  Json arr = Json::array();
  for (const auto& r : reports) {
    ok = ok && r.passed();
    arr.push_back(report_to_json(r));
  }
  if (json) {
    emit(all ? arr : arr[0]);
  } else {
    for (const auto& r : reports) {
      std::cout << (r.passed() ? "PASS " : "FAIL ") << r.family << ' ' << Json(r.params).dump() << '\n';
      for (const auto& s : r.stages)
        std::cout << "  " << (s.passed ? "ok   " : "FAIL ") << s.name << "  " << s.residual
                  << (s.detail.empty() ? "" : "  " + s.detail) << '\n';
    }
  }
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Graded Riemannian geometry and Lie superalgebra toolkit"};
  app.require_subcommand(1);
  Options opt;
  app.add_option("--tolerance", opt.tolerance, "residual threshold (default 1e-10 algebraic, 1e-6 ODE)")
      ->check(CLI::PositiveNumber);

  std::string family, params, in, out, form, sigma, odd, point, tau_even, tau_odd;
  int n = -1, m = -1;
  double s1 = NAN, s2 = NAN, s3 = NAN;
  bool search = false, all = false, json = false, full = false;
  CurveArgs curve;

  auto* alg = app.add_subcommand("algebra", "construct an algebra and write it as JSON");
  alg->add_option("--family", family, "gl, sl, psl, osp, sosp, u, d21")->required();
  alg->add_option("--n", n);
  alg->add_option("--m", m);
  alg->add_option("--s1", s1);
  alg->add_option("--s2", s2);
  alg->add_option("--s3", s3);
  alg->add_option("--out", out);

  auto* kil = app.add_subcommand("killing", "Killing form and its relation to the str-form");
  kil->add_option("--in", in)->required()->check(CLI::ExistingFile);

  auto* inv = app.add_subcommand("invariance", "ad-invariance of a form, or search for invariant superproducts");
  inv->add_option("--in", in)->required()->check(CLI::ExistingFile);
  inv->add_option("--form", form, "killing, str, or a JSON matrix file");
  inv->add_flag("--search", search, "exhaustive linear solve for invariant superproducts");

  auto* spl = app.add_subcommand("split", "validate an involution and split g = k + p");
  spl->add_option("--in", in)->required()->check(CLI::ExistingFile);
  spl->add_option("--sigma", sigma, "JSON matrix on basis coordinates")->required()->check(CLI::ExistingFile);

  auto* ext = app.add_subcommand("extend", "extend an invariant odd form to all of g");
  ext->add_option("--in", in)->required()->check(CLI::ExistingFile);
  ext->add_option("--odd-form", odd, "JSON matrix on the odd coordinates")->required()->check(CLI::ExistingFile);
  ext->add_option("--out", out);

  auto add_curve = [&](CLI::App* c) {
    c->add_option("--chart", curve.chart, "hyperbolic, sphere, flat:n,m or a chart JSON file")->required();
    c->add_option("--p", curve.p, "start point, comma separated")->required();
    c->add_option("--v", curve.v, "initial velocity")->required();
    c->add_option("--w", curve.w, "odd initial data h(0)");
    c->add_option("--t-end", curve.t_end);
    c->add_option("--step", curve.step);
    c->add_option("--out", out, "CSV time series");
  };
  auto* geo = app.add_subcommand("geodesic", "integrate a supergeodesic");
  add_curve(geo);
  auto* tra = app.add_subcommand("transport", "parallel transport along a supergeodesic");
  add_curve(tra);
  tra->add_option("--tau-even", tau_even);
  tra->add_option("--tau-odd", tau_odd);

  auto* cur = app.add_subcommand("curvature", "Christoffel symbols, curvature and their residuals at a point");
  cur->add_option("--chart", curve.chart)->required();
  cur->add_option("--p", point)->required();
  cur->add_flag("--full", full, "include all non-zero components");

  auto* ver = app.add_subcommand("verify", "run the symmetric-superspace catalog pipeline");
  ver->add_option("--family", family);
  ver->add_option("--params", params, "k=v,...");
  ver->add_flag("--all", all, "every family over its standard grid");
  ver->add_flag("--json", json);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*alg) {
      Params p;
      if (n >= 0) p["n"] = n;
      if (m >= 0) p["m"] = m;
      if (!std::isnan(s1)) p["s1"] = s1;
      if (!std::isnan(s2)) p["s2"] = s2;
      if (!std::isnan(s3)) p["s3"] = s3;
      return cmd_algebra(opt, family, p, out);
    }
    if (*kil) return cmd_killing(opt, in);
    if (*inv) {
      if (form.empty() && !search) throw UsageError("invariance needs --form or --search");
      return cmd_invariance(opt, in, form, search);
    }
    if (*spl) return cmd_split(opt, in, sigma);
    if (*ext) return cmd_extend(opt, in, odd, out);
    if (*geo) return cmd_geodesic(opt, curve, out);
    if (*tra) return cmd_transport(opt, curve, tau_even, tau_odd, out);
    if (*cur) return cmd_curvature(opt, curve.chart, point, full);
    if (*ver) return cmd_verify(opt, family, params, all, json);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const InvalidArgument& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return 2;
  } catch (const DimensionMismatch& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    emit({{"passed", false}, {"error", e.what()}});
    return 1;
  }
  return 2;
}
