#include <cmath>

#include "support.hpp"
#include "umb/immersion.hpp"
#include "umb/verifier.hpp"

using namespace umb;
using umb::test::error_code_of;
using umb::test::vec;

namespace {

// Torus with its parameter plane rotated by `angle`.
Immersion rotated_torus(double angle) {
  const double c = std::cos(angle), s = std::sin(angle);
  auto map = SmoothMap::generic(2, 3, [c, s](const auto* w, auto* x) {
    using std::cos, std::sin;
    const auto u = c * w[0] - s * w[1];
    const auto v = s * w[0] + c * w[1];
    x[0] = (2.0 + 0.5 * cos(v)) * cos(u);
    x[1] = (2.0 + 0.5 * cos(v)) * sin(u);
    x[2] = 0.5 * sin(v);
  });
  Immersion im("rotated-torus", resolve_ambient("euclidean:3"), std::move(map), Box::cube(2, 10.0));
  im.set_orientation(OrientationRule::outward());
  return im;
}

Mat rotation(double a) {
  Mat r(2, 2);
  r << std::cos(a), -std::sin(a), std::sin(a), std::cos(a);
  return r;
}

}  // namespace

TEST_CASE("frames examples") {
  const auto plane = resolve_immersion("graph:0*x");
  const auto f = frames(plane, vec({0.3, -0.2}));
  CHECK((f.tangent - Mat::Identity(3, 2)).cwiseAbs().maxCoeff() < 1e-14);
  CHECK(std::abs(std::abs(f.normal(2, 0)) - 1.0) < 1e-14);

  const auto hyp = resolve_immersion("hyperboloid-sheet:1");
  const auto h = frames(hyp, vec({0, 0}));
  CHECK((h.p - vec({0, 0, 1})).norm() < 1e-14);
  CHECK((h.tangent - Mat::Identity(3, 2)).cwiseAbs().maxCoeff() < 1e-14);
  CHECK(h.normal_signs == std::vector<int>{-1});
  CHECK(h.normal(2, 0) == doctest::Approx(1.0));  // future directed

  // Unit sphere: the chart point u = (1, 0) is (1, 0, 0); the normal is inward.
  const auto sphere = resolve_immersion("sphere:1");
  const auto s = frames(sphere, vec({1, 0}));
  CHECK((s.p - vec({1, 0, 0})).norm() < 1e-14);
  CHECK((s.normal.col(0) - vec({-1, 0, 0})).norm() < 1e-12);
}

TEST_CASE("second fundamental form examples") {
  CHECK(second_fundamental_form(resolve_immersion("graph:0*x"), vec({0.1, 0.4}))[0].cwiseAbs().maxCoeff() < 1e-14);

  const auto sphere = resolve_immersion("sphere:1");
  const auto II = second_fundamental_form(sphere, vec({0.4, -1.1}));
  CHECK((II[0] - Mat::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-12);

  const auto saddle = resolve_immersion("hyperbolic-paraboloid");
  const auto S = second_fundamental_form(saddle, vec({0, 0}));
  CHECK(S[0](0, 0) == doctest::Approx(2.0));
  CHECK(S[0](1, 1) == doctest::Approx(-2.0));
  CHECK(std::abs(S[0](0, 1)) < 1e-14);
}

TEST_CASE("shape report examples") {
  const auto sphere = resolve_immersion("sphere:1");
  const auto r = shape_report(sphere, vec({0.7, 0.2}));
  CHECK(r.umbilicity_defect <= 1e-12);
  CHECK(r.mean_curvature_vector.norm() == doctest::Approx(1.0));
  CHECK(r.mean_curvature_vector.dot(r.p) < 0);  // points inward

  const auto saddle = shape_report(resolve_immersion("hyperbolic-paraboloid"), vec({0, 0}));
  CHECK(saddle.umbilicity_defect == doctest::Approx(2.0));
  CHECK(std::abs(saddle.mean_curvature(0)) <= 1e-14);

  // Prolate spheroid: at the end of the long axis a = 2 both curvatures are a/b^2 = 2.
  const auto prolate = resolve_immersion("ellipsoid:2,1,1");
  const auto pr = shape_report(prolate, vec({1, 0}));
  CHECK((pr.p - vec({2, 0, 0})).norm() < 1e-14);
  CHECK(pr.principal_curvatures(0) == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(pr.principal_curvatures(1) == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(pr.umbilicity_defect <= 1e-8);
  CHECK(pr.rung == DerivativeRung::Analytic);
}

TEST_CASE("is_umbilic examples") {
  CHECK(is_umbilic(resolve_immersion("sphere:1"), vec({0.2, 0.3}), 1e-6));
  CHECK(!is_umbilic(resolve_immersion("hyperbolic-paraboloid"), vec({0, 0}), 1e-6));
  CHECK(is_umbilic(resolve_immersion("hyperboloid-sheet:1"), vec({0.8, -1.2}), 1e-6));
  CHECK(default_umbilic_tol(DerivativeRung::Analytic) == 1e-6);
  CHECK(default_umbilic_tol(DerivativeRung::FiniteDifference) == 1e-4);
}

TEST_CASE("normal curvature examples") {
  const auto sphere = resolve_immersion("sphere:1");
  const Vec u = vec({0.3, 0.9});
  const auto f = frames(sphere, u);
  const Vec k = normal_curvature(sphere, u, (f.tangent.col(0) + f.tangent.col(1)) / std::sqrt(2.0));
  CHECK((k - f.normal.col(0)).norm() < 1e-12);

  // Euler's formula on z = x^2 + 3y^2: 2cos^2θ + 6sin^2θ, 3 at 30 degrees.
  const auto par = resolve_immersion("elliptic-paraboloid:1,3");
  for (double deg : {0.0, 30.0, 45.0, 90.0}) {
    const double th = deg * M_PI / 180.0;
    const Vec kv = normal_curvature(par, vec({0, 0}), vec({std::cos(th), std::sin(th), 0}));
    CHECK(kv(2) == doctest::Approx(2 * std::cos(th) * std::cos(th) + 6 * std::sin(th) * std::sin(th)));
    CHECK(std::abs(kv(0)) + std::abs(kv(1)) < 1e-14);
  }

  const auto saddle = resolve_immersion("hyperbolic-paraboloid");
  CHECK(normal_curvature(saddle, vec({0, 0}), vec({1, 1, 0}) / std::sqrt(2.0)).norm() <= 1e-8);
  CHECK(error_code_of([&] { normal_curvature(saddle, vec({0, 0}), vec({1, 1, 0})); }) == "NonUnitDirection");
  CHECK(error_code_of([&] { normal_curvature(saddle, vec({0, 0}), vec({0, 0, 1})); }) == "NonUnitDirection");
}

TEST_CASE("second form symmetry and trace identity on the catalog") {
  for (const auto& id : listed_immersion_ids()) {
    CAPTURE(id);
    const auto im = resolve_immersion(id);
    for (const Vec& u : random_points(im, 100, 5)) {
      const auto r = shape_report(im, u);
      double asym = 0.0;
      Vec trace = Vec::Zero(r.normal_frame.rows());
      for (std::size_t a = 0; a < r.second_form.size(); ++a) {
        asym = std::max(asym, (r.second_form[a] - r.second_form[a].transpose()).cwiseAbs().maxCoeff());
        trace += r.second_form[a].trace() / r.second_form[a].rows() * r.normal_frame.col(a);
      }
      CHECK(asym <= 1e-9);
      CHECK((r.mean_curvature_vector - trace).norm() <= 1e-12);
      if (r.second_form.size() == 1)
        CHECK(r.principal_curvatures.mean() == doctest::Approx(r.mean_curvature(0)).epsilon(1e-8));
    }
  }
}

TEST_CASE("principal curvatures agree with the closed-form oracles") {
  for (const auto& id : hypersurface_ids()) {
    CAPTURE(id);
    const auto e = resolve(id, EntryKind::Immersion);
    REQUIRE(e.closed_form_curvatures);
    for (const Vec& u : random_points(*e.immersion, 25, 13)) {
      const Vec k = shape_report(*e.immersion, u).principal_curvatures;
      CHECK((k - e.closed_form_curvatures(u)).cwiseAbs().maxCoeff() <= 1e-8);
    }
  }
}

TEST_CASE("shape data is invariant under rotation of the parameter plane") {
  const auto base = rotated_torus(0.0);
  for (double angle : {0.3, 1.1, 2.5}) {
    const auto rot = rotated_torus(angle);
    for (const Vec& w : random_points(rot, 10, 3)) {
      const Vec u = rotation(angle) * w;
      const auto a = shape_report(base, u), b = shape_report(rot, w);
      CHECK((a.p - b.p).norm() <= 1e-12);
      CHECK((a.principal_curvatures - b.principal_curvatures).cwiseAbs().maxCoeff() <= 1e-6);
      CHECK(std::abs(a.umbilicity_defect - b.umbilicity_defect) <= 1e-6);
    }
  }
}

TEST_CASE("Euler relation for surfaces") {
  std::mt19937_64 rng(19);
  std::uniform_real_distribution<double> angle(0.0, 2 * M_PI);
  for (const auto& id : hypersurface_ids()) {
    const auto im = resolve_immersion(id);
    if (im.param_dim() != 2) continue;
    CAPTURE(id);
    for (const Vec& u : random_points(im, 10, 4)) {
      const auto r = shape_report(im, u);
      const double th = angle(rng);
      const Vec e1 = r.principal_directions.col(0), e2 = r.principal_directions.col(1);
      const Vec v = std::cos(th) * e1 + std::sin(th) * e2;
      const Vec kv = normal_curvature(im, u, v);
      const Vec nu = r.normal_frame.col(0);
      const double component = r.normal_signs[0] * kv.dot(frames(im, u).metric * nu);
      const double euler = r.principal_curvatures(0) * std::cos(th) * std::cos(th) +
                           r.principal_curvatures(1) * std::sin(th) * std::sin(th);
      CHECK(component == doctest::Approx(euler).epsilon(1e-6).scale(1.0));
    }
  }
}

TEST_CASE("spacelike guard on catalog Minkowski immersions") {
  for (const std::string id :
       {"hyperboloid-sheet:1", "hyperboloid-sheet:1,3", "perturbed-hyperboloid:0.05"}) {
    CAPTURE(id);
    const auto im = resolve_immersion(id);
    for (const Vec& u : random_points(im, 100, 8)) {
      const auto f = frames(im, u);
      CHECK(Eigen::SelfAdjointEigenSolver<Mat>(f.induced_metric).eigenvalues().minCoeff() > 0);
    }
  }
}

TEST_CASE("derivative fallback rungs agree") {
  for (const std::string id : {"torus:2,0.5", "ellipsoid:1,2,3", "hyperboloid-sheet:1"}) {
    CAPTURE(id);
    const auto exact = resolve_immersion(id);
    for (auto rung : {DerivativeRung::AnalyticJacobianFD, DerivativeRung::FiniteDifference}) {
      auto im = resolve_immersion(id);
      im.force_rung(rung);
      CHECK(im.rung() == rung);
      for (const Vec& u : random_points(im, 5, 2)) {
        const auto a = shape_report(exact, u), b = shape_report(im, u);
        CHECK(b.rung == rung);
        CHECK((a.principal_curvatures - b.principal_curvatures).cwiseAbs().maxCoeff() <= 1e-4);
      }
    }
  }
}

TEST_CASE("immersion errors") {
  const auto folded = immersion_from_json_text(
      R"({"param_dim": 2, "ambient": "euclidean:3", "components": ["u", "u", "v*0"]})");
  CHECK(error_code_of([&] { frames(folded, vec({0.1, 0.2})); }) == "RankDeficient");

  const char* timelike_plane =
      R"({"param_dim": 2, "ambient": "minkowski:3", "components": ["u", "0", "v"]%s})";
  char buf[256];
  std::snprintf(buf, sizeof buf, timelike_plane, "");
  const auto tl = immersion_from_json_text(buf);
  CHECK(error_code_of([&] { frames(tl, vec({0.1, 0.2})); }) == "DegenerateInducedMetric");
  std::snprintf(buf, sizeof buf, timelike_plane, R"(, "allow_timelike": true)");
  const auto ok = immersion_from_json_text(buf);
  CHECK(second_fundamental_form(ok, vec({0.1, 0.2}))[0].cwiseAbs().maxCoeff() < 1e-14);

  const auto null_plane = immersion_from_json_text(
      R"({"param_dim": 2, "ambient": "minkowski:3", "components": ["u", "v", "v"], "allow_timelike": true})");
  CHECK(error_code_of([&] { frames(null_plane, vec({0.1, 0.2})); }) == "DegenerateInducedMetric");

}

TEST_CASE("immersions into curved ambients use the ambient connection") {
  // The equator of the stereographic unit sphere, |x| = 1, is a great circle.
  const auto equator = immersion_from_json_text(
      R"j({"param_dim": 1, "ambient": "sphere:1", "components": ["cos(u)", "sin(u)"], "domain": [[-4, 4]]})j");
  CHECK(std::abs(second_fundamental_form(equator, vec({0.7}))[0](0, 0)) <= 1e-10);
  // A latitude circle of radius 1/2 in the stereographic plane: spherical radius 2 atan(1/2),
  // geodesic curvature cot of that angle.
  const auto lat = immersion_from_json_text(
      R"j({"param_dim": 1, "ambient": "sphere:1", "components": ["0.5*cos(u)", "0.5*sin(u)"],
          "domain": [[-4, 4]]})j");
  const double rho = 2 * std::atan(0.5);
  CHECK(std::abs(second_fundamental_form(lat, vec({0.3}))[0](0, 0)) == doctest::Approx(1 / std::tan(rho)));
}
