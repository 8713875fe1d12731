#include <doctest.h>

#include <algorithm>

#include "supergeo/catalog.hpp"
#include "supergeo/errors.hpp"
#include "supergeo/families.hpp"

using namespace supergeo;

namespace {

bool stage_ok(const CatalogReport& r, const std::string& name) {
  const StageResult* s = r.stage(name);
  return s != nullptr && s->passed;
}

}  // namespace

TEST_CASE("catalog lists six families and one non-example") {
  const auto list = list_examples();
  CHECK(list.size() == 7);
  CHECK(std::count_if(list.begin(), list.end(), [](const ExampleSummary& e) { return e.non_example; }) == 1);
  for (const auto& e : list) {
    INFO(e.name);
    CHECK_FALSE(desk_grid(e.name).empty());
  }
  CHECK_THROWS_AS(desk_grid("nope"), InvalidArgument);
  auto has = [&](const std::string& n) {
    return std::any_of(list.begin(), list.end(), [&](const ExampleSummary& e) { return e.name == n; });
  };
  CHECK(has("sl-sosp"));
  CHECK(has("d21-so2-sosp22"));
  CHECK(has("r12-group"));
}

TEST_CASE("every family passes at its default parameters") {
  for (const auto& e : list_examples()) {
    const CatalogReport r = verify_example(e.name, e.defaults);
    INFO(e.name);
    CHECK(r.passed());
    CHECK(r.expected_failures.empty());
  }
}

TEST_CASE("SL(3|2)/SOSp(3|2)") {
  const CatalogReport r = verify_example("sl-sosp", {{"n", 3}, {"m", 1}});
  CHECK(r.passed());
  CHECK(r.k_even == 6);
  CHECK(r.k_odd == 6);
  CHECK(r.p_even == 6);
  CHECK(r.p_odd == 6);
  CHECK(stage_ok(r, "killing-multiple"));
  CHECK(stage_ok(r, "odd-pairing-identity"));
  CHECK(stage_ok(r, "identify-k"));
}

TEST_CASE("n = 2m: the str form on p is degenerate along u(1)") {
  const CatalogReport r = verify_example("sl-sosp", {{"n", 2}, {"m", 1}});
  CHECK_FALSE(r.passed());
  CHECK(r.expected_failures == std::vector<std::string>{"nondegenerate"});
  for (const auto& s : r.stages) {
    INFO(s.name);
    CHECK(s.passed == (s.name != "nondegenerate"));
  }
  CHECK(stage_ok(r, "u1-radical"));
}

TEST_CASE("PSL(2|2)/SOSp(2|2)") {
  const CatalogReport r = verify_example("psl-sosp", {{"m", 1}});
  CHECK(r.passed());
  CHECK(stage_ok(r, "killing-vanishes"));
}

TEST_CASE("SOSp(2n|2m)/U(n|m): str form is negative definite on p_0") {
  const CatalogReport r = verify_example("sosp-u", {{"n", 2}, {"m", 1}});
  CHECK(r.passed());
  CHECK(stage_ok(r, "even-negative-definite"));
}

TEST_CASE("d(2,1) with SO(2) x SOSp(2|2)") {
  const CatalogReport r = verify_example("d21-so2-sosp22", {{"s1", 1.0}, {"s2", 2.0}});
  CHECK(r.passed());
  CHECK(r.k_even == 5);
  CHECK(r.k_odd == 4);
  CHECK(r.p_even == 4);
  CHECK(r.p_odd == 4);
  CHECK(stage_ok(r, "extension-invariant"));
  CHECK(stage_ok(r, "k-perp-p"));
}

TEST_CASE("R^{1|2} non-example") {
  const CatalogReport r = verify_example("r12-group", {});
  CHECK(r.passed());
  CHECK(stage_ok(r, "no-ad-invariant-superproduct"));
  CHECK(stage_ok(r, "witness-scalar-superproduct"));
  CHECK(stage_ok(r, "witness-Ad-Gred-invariant"));
  CHECK(stage_ok(r, "witness-not-ad-invariant"));
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(verify_example("sl-sosp", {{"n", 0}, {"m", 1}}), InvalidArgument);
  CHECK_THROWS_AS(verify_example("sl-sosp", {{"n", 2}, {"m", 1}, {"q", 3}}), InvalidArgument);
  CHECK_THROWS_AS(verify_example("sl-sosp", {{"n", 2.5}, {"m", 1}}), InvalidArgument);
  CHECK_THROWS_AS(verify_example("d21-so2-sosp22", {{"s1", 1.0}, {"s2", -1.0}}), InvalidArgument);
  CHECK_THROWS_AS(verify_example("nope", {}), InvalidArgument);
}

TEST_CASE("full desk grid") {
  int count = 0;
  for (const auto& e : list_examples())
    for (const Params& p : desk_grid(e.name)) {
      const CatalogReport r = verify_example(e.name, p);
      INFO(e.name << ' ' << r.algebra);
      CHECK(r.passed());
      ++count;
    }
  CHECK(count == 53);
}

TEST_CASE("fingerprint distinguishes isomorphism types") {
  const Fingerprint a = fingerprint(osp(3, 1));
  CHECK(a.even_dim == 6);
  CHECK(a.odd_dim == 6);
  CHECK(a == fingerprint(osp(3, 1)));
  CHECK_FALSE(a == fingerprint(sl(2, 1)));
  CHECK(fingerprint(abelian(2, 2)).killing_rank == 0);
}

TEST_CASE("catalog involutions are automorphisms") {
  const LieSuperalgebra a = sl(4, 2);
  const Eigen::MatrixXd s =
      matrix_map_to_coordinates(a, [](const Eigen::MatrixXd& x) { return sl_sosp_sigma_matrix(x, 4, 1); });
  CHECK(check_involution(a, s).valid);
  const LieSuperalgebra o = osp(4, 1);
  const Eigen::MatrixXd t =
      matrix_map_to_coordinates(o, [](const Eigen::MatrixXd& x) { return sosp_u_sigma_matrix(x, 2, 1); });
  CHECK(check_involution(o, t).valid);
}
