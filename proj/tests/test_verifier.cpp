#include <cmath>

#include "support.hpp"
#include "umb/report.hpp"
#include "umb/verifier.hpp"

using namespace umb;
using umb::test::error_code_of;
using umb::test::vec;

namespace {

SuiteTarget target(const std::string& id) { return target_from_catalog(resolve(id, EntryKind::Immersion)); }

std::vector<Vec> mixed_points(const SuiteTarget& t, int count, std::uint64_t seed) {
  auto pts = random_points(t.immersion, count, seed);
  const auto e = resolve(t.id, EntryKind::Immersion);
  for (const Vec& u : e.umbilic_points)
    if (t.immersion.domain().contains(u)) pts.push_back(u);
  return pts;
}

bool characterization(const std::string& suite) { return suite.rfind("-characterization") != std::string::npos; }

// Verdict agrees with the catalog label: characterization suites report it
// explicitly, the others must pass outright.
bool agrees(const std::string& suite, const VerdictReport& r) {
  if (characterization(suite)) return r.ground_truth_agreement.value_or(false);
  return r.overall;
}

double res(const PointVerdict& v, const std::string& key) {
  const auto it = v.residuals.find(key);
  REQUIRE(it != v.residuals.end());
  return it->second;
}

}  // namespace

TEST_CASE("theorem2 suite examples") {
  SuiteOptions o;
  const auto sphere = verify_theorem2(target("sphere:1"), {vec({0.3, 0.2}), vec({-1.0, 0.4})}, o);
  CHECK(sphere.overall);
  for (const auto& v : sphere.per_point) {
    CHECK(res(v, "slice_H_spread") <= 1e-6);
    CHECK(v.notes.at("umbilic") == "true");
    CHECK(v.notes.at("forward") == "exercised");
  }

  const auto ell = verify_theorem2(target("ellipsoid:1,2,3"), {vec({0.8, -0.5})}, o);
  CHECK(ell.overall);
  CHECK(res(ell.per_point[0], "slice_H_spread") >= 1e-2);
  CHECK(ell.per_point[0].notes.at("slice_umbilic") == "false");
  CHECK(ell.per_point[0].notes.at("umbilic") == "false");
  CHECK(ell.per_point[0].notes.count("witness") == 1);
  CHECK(ell.per_point[0].notes.at("forward") == "not exercised");

  const auto hyp = verify_theorem2(target("hyperboloid-sheet:1"), {vec({0.5, -0.7})}, o);
  CHECK(hyp.overall);
  CHECK(res(hyp.per_point[0], "slice_H_deviation") <= 1e-6);
  CHECK(shape_report(target("hyperboloid-sheet:1").immersion, vec({0.5, -0.7})).mean_curvature.norm() ==
        doctest::Approx(1.0));
}

TEST_CASE("corollary3 suite examples") {
  SuiteOptions o;
  const auto sphere = verify_corollary3(target("sphere:2"), {vec({0.1, 0.6})}, o);
  CHECK(sphere.overall);
  CHECK(res(sphere.per_point[0], "slice_mean_0") == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(res(sphere.per_point[0], "slice_mean_1") == doctest::Approx(0.5).epsilon(1e-6));

  const auto par = verify_corollary3(target("elliptic-paraboloid:1,3"), {vec({0, 0})}, o);
  CHECK(par.overall);
  CHECK(res(par.per_point[0], "slice_mean_0") == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(res(par.per_point[0], "slice_mean_1") == doctest::Approx(6.0).epsilon(1e-6));
  CHECK(par.per_point[0].notes.at("umbilic") == "false");

  const auto prolate = verify_corollary3(target("ellipsoid:2,1,1"), {vec({1, 0})}, o);
  CHECK(prolate.overall);
  CHECK(res(prolate.per_point[0], "slice_mean_0") == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(res(prolate.per_point[0], "slice_mean_1") == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(prolate.per_point[0].notes.at("umbilic") == "true");
}

TEST_CASE("remark4 suite on the hyperbolic paraboloid") {
  SuiteOptions o;
  const auto r = verify_remark4(target("hyperbolic-paraboloid"), {vec({0, 0})}, o);
  CHECK(r.overall);
  const auto& v = r.per_point[0];
  CHECK(res(v, "asymptotic_slice_plus") <= 1e-6);
  CHECK(res(v, "asymptotic_slice_minus") <= 1e-6);
  CHECK(res(v, "mean_curvature") <= 1e-8);
  CHECK(res(v, "defect") == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(res(v, "principal_slice_0") == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(res(v, "principal_slice_1") == doctest::Approx(2.0).epsilon(1e-6));

  // Negative control: a sphere has no zero-curvature normal sections.
  CHECK(!verify_remark4(target("sphere:1"), {vec({0, 0})}, o).overall);
}

TEST_CASE("corollary5 suite examples") {
  SuiteOptions o;
  o.basis_angle = M_PI / 6;
  const auto par = verify_corollary5(target("elliptic-paraboloid:1,3"), {vec({0, 0})}, o);
  CHECK(par.overall);
  CHECK(res(par.per_point[0], "slice_mean_0") == doctest::Approx(3.0).epsilon(1e-6));
  CHECK(res(par.per_point[0], "slice_mean_1") == doctest::Approx(5.0).epsilon(1e-6));
  CHECK(res(par.per_point[0], "mean_curvature") == doctest::Approx(4.0));

  SuiteOptions random_bases;
  const auto saddle = verify_corollary5(target("hyperbolic-paraboloid"), {vec({0, 0})}, random_bases);
  CHECK(saddle.overall);
  CHECK(res(saddle.per_point[0], "mean_curvature") <= 1e-12);

  for (int s : {1, 2}) {
    SuiteOptions so;
    so.s = s;
    const auto sph = verify_corollary5(target("sphere:2,3"), random_points(target("sphere:2,3").immersion, 3, 1), so);
    CHECK(sph.overall);
    CHECK(res(sph.per_point[0], "mean_curvature") == doctest::Approx(0.5));
  }
}

TEST_CASE("mean of slice means equals H for 20 independent bases at every point") {
  SuiteOptions o;
  o.draws = 20;
  for (const auto& id : hypersurface_ids()) {
    CAPTURE(id);
    const auto t = target(id);
    const auto r = verify_corollary5(t, random_points(t.immersion, 20, 5), o);
    CHECK(r.overall);
    for (const auto& v : r.per_point) CHECK(res(v, "mean_of_means_residual") <= 1e-5);
  }
}

TEST_CASE("theorem8 suite examples") {
  SuiteOptions o;
  o.s = 2;
  o.draws = 4;
  const auto sphere = verify_theorem8(target("sphere:1,3"), {vec({0.2, -0.3, 0.5})}, o);
  CHECK(sphere.overall);
  CHECK(sphere.per_point[0].notes.at("umbilic") == "true");

  const auto ell = verify_theorem8(target("ellipsoid:1,1,1,2"), {vec({0.4, 0.3, -0.6})}, o);
  CHECK(ell.overall);
  CHECK(ell.per_point[0].notes.at("umbilic") == "false");
  CHECK(res(ell.per_point[0], "max_slice_defect") > 1e-3);

  SuiteOptions r9 = o;
  r9.fixed_basis_slices = true;
  const auto ell9 = verify_theorem8(target("ellipsoid:1,1,1,2"), {vec({0.4, 0.3, -0.6})}, r9);
  CHECK(ell9.overall);
  CHECK(ell9.per_point[0].notes.at("umbilic") == ell.per_point[0].notes.at("umbilic"));
  CHECK(ell9.per_point[0].notes.at("slices") == "fixed non-orthogonal basis subsets");

  SuiteOptions bad;
  bad.s = 1;
  CHECK(error_code_of([&] { verify_theorem8(target("sphere:1,3"), {vec({0, 0, 0})}, bad); }) == "InvalidArgument");
  CHECK(error_code_of([&] { verify_theorem8(target("sphere:1"), {vec({0, 0})}, o); }) == "InvalidArgument");
}

TEST_CASE("theorem10 suite examples") {
  SuiteOptions o;
  for (const std::string id : {"sphere:1,3", "ellipsoid:1,2,3,4", "hyperboloid-sheet:1,3"}) {
    CAPTURE(id);
    const auto t = target(id);
    const auto r = verify_theorem10(t, random_points(t.immersion, 2, 9), o);
    CHECK(r.overall);
    if (id == "ellipsoid:1,2,3,4")
      for (const auto& v : r.per_point) CHECK(res(v, "min_pair_max_defect") > 1e-3);
  }
}

TEST_CASE("sphere characterization") {
  SuiteOptions o;
  o.radius_mode = true;
  const auto sphere_t = target("sphere:1");
  const auto sphere = verify_characterization_sphere(sphere_t, grid_points(sphere_t.immersion, {5, 5}), o);
  CHECK(sphere.overall);
  CHECK(sphere.ground_truth_agreement == true);
  CHECK(sphere.points_tested == 25);
  for (const auto& v : sphere.per_point) {
    CHECK(res(v, "fit_residual") <= 1e-8);
    CHECK(res(v, "radius_deviation") <= 1e-6);
  }

  SuiteOptions plain;
  const auto ell_t = target("ellipsoid:1,2,3");
  const auto ell = verify_characterization_sphere(ell_t, grid_points(ell_t.immersion, {5, 5}), plain);
  CHECK(!ell.overall);
  CHECK(ell.ground_truth_agreement == true);

  const auto cyl_t = target("cylinder:1");
  const auto cyl = verify_characterization_sphere(cyl_t, grid_points(cyl_t.immersion, {5, 5}), plain);
  CHECK(!cyl.overall);
  CHECK(cyl.ground_truth_agreement == true);
  // Along the axis the normal section is a line.
  const Vec u = vec({0.3, 0.1});
  const auto f = frames(cyl_t.immersion, u);
  const Vec axis = std::abs(f.tangent.col(0)(2)) > 0.5 ? f.tangent.col(0) : f.tangent.col(1);
  auto line = run_slice(cyl_t.immersion, make_slice_spec(cyl_t.immersion, u, Mat(axis)));
  fit_slice_sphere(line);
  CHECK(line.fit_error == "DegenerateFit");

  // Discrimination margin between the sphere and the ellipsoid.
  const double margin = ell.summary.at("min_failing_residual") /
                        std::max(sphere.summary.at("max_passing_residual"), 1e-300);
  CHECK(margin >= 1e3);
}

TEST_CASE("hyperbolic characterization") {
  SuiteOptions o;
  o.radius_mode = true;
  const auto hyp_t = target("hyperboloid-sheet:1");
  const auto hyp = verify_characterization_hyperbolic(hyp_t, grid_points(hyp_t.immersion, {5, 5}), o);
  CHECK(hyp.overall);
  CHECK(hyp.ground_truth_agreement == true);
  for (const auto& v : hyp.per_point) {
    CHECK(res(v, "fit_residual") <= 1e-8);
    CHECK(res(v, "radius_deviation") <= 1e-6);
  }

  const auto graph_t = target("perturbed-hyperboloid:0.05");
  REQUIRE(graph_t.is_hyperbolic_space == false);
  const auto graph = verify_characterization_hyperbolic(graph_t, grid_points(graph_t.immersion, {5, 5}), SuiteOptions{});
  CHECK(!graph.overall);
  CHECK(graph.ground_truth_agreement == true);
  double worst = 0.0;
  for (const auto& v : graph.per_point) worst = std::max(worst, res(v, "fit_residual"));
  CHECK(worst > 1e-4);
}

TEST_CASE("suite verdicts agree with the catalog labels and survive tolerance x10") {
  for (const auto& suite : suite_ids()) {
    for (const auto& id : default_targets(suite)) {
      CAPTURE(suite);
      CAPTURE(id);
      const auto t = target(id);
      std::vector<Vec> pts;
      if (characterization(suite)) pts = grid_points(t.immersion, {3, 3});
      else if (suite == "remark4") pts = {t.immersion.domain().center()};
      else pts = mixed_points(t, suite == "theorem8" || suite == "theorem10" ? 2 : 4, 3);
      SuiteOptions o;
      o.draws = 4;
      const auto r = run_suite(suite, t, pts, o);
      CHECK(agrees(suite, r));
      bool all = true;
      for (const auto& v : r.per_point) {
        all = all && v.pass;
        for (const auto& [k, x] : v.residuals) CHECK(x >= 0.0);
      }
      CHECK(r.overall == all);

      o.tol *= 10;
      o.tol_fit *= 10;
      o.tol_radius *= 10;
      CHECK(agrees(suite, run_suite(suite, t, pts, o)));
    }
  }
}

TEST_CASE("both implication directions get exercised") {
  SuiteOptions o;
  o.draws = 4;
  const auto sphere = verify_theorem2(target("sphere:1"), {vec({0.2, 0.2})}, o);
  CHECK(sphere.summary.at("forward_exercised") == 1);
  CHECK(sphere.summary.at("converse_exercised") == 1);
  const auto ell_t = target("ellipsoid:1,2,3");
  const auto ell = verify_theorem2(ell_t, mixed_points(ell_t, 2, 1), o);
  CHECK(ell.overall);
  CHECK(ell.summary.at("forward_exercised") == 4);  // the four umbilics
  CHECK(ell.summary.at("converse_exercised") == 4);
}

TEST_CASE("reports are deterministic and independent of the execution mode") {
  const auto t = target("ellipsoid:1,2,3");
  const auto pts = random_points(t.immersion, 6, 42);
  SuiteOptions par, ser;
  ser.exec = Exec::Serial;
  for (const std::string suite : {"theorem2", "corollary5", "sphere-characterization"}) {
    CAPTURE(suite);
    const auto a = to_json(run_suite(suite, t, pts, par), false).dump();
    const auto b = to_json(run_suite(suite, t, pts, par), false).dump();
    const auto c = to_json(run_suite(suite, t, pts, ser), false).dump();
    CHECK(a == b);
    CHECK(a == c);
  }
  CHECK(random_points(t.immersion, 6, 42) == pts);
}

TEST_CASE("point helpers") {
  const auto im = resolve_immersion("hyperbolic-paraboloid");
  const auto g = grid_points(im, {2, 3});
  REQUIRE(g.size() == 6);
  CHECK((g[0] - vec({-0.5, -2.0 / 3})).norm() < 1e-14);
  for (const Vec& u : random_points(im, 50, 1)) CHECK(u.cwiseAbs().maxCoeff() <= 0.9);
  CHECK(error_code_of([] { run_suite("theorem99", target("sphere:1"), {}, {}); }) == "InvalidArgument");
}
