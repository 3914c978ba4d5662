#include <cmath>

#include "oracles.hpp"
#include "support.hpp"
#include "umb/fit.hpp"
#include "umb/slicer.hpp"

using namespace umb;
using umb::test::error_code_of;
using umb::test::vec;

namespace {

// Tilted plane in R^3 spanned by these orthonormal vectors.
const Vec kA = vec({1, 1, 0}) / std::sqrt(2.0);
const Vec kB = vec({1, -1, 2}) / std::sqrt(6.0);

std::vector<Vec> ellipse(double a, double b, int n, double arc = 2 * M_PI) {
  std::vector<Vec> pts;
  for (int i = 0; i < n; ++i) {
    const double s = arc * i / n;
    pts.push_back(vec({0.5, -1, 2}) + a * std::cos(s) * kA + b * std::sin(s) * kB);
  }
  return pts;
}

std::vector<Vec> hyperbola_xt(double r, int n) {
  std::vector<Vec> pts;
  for (int i = 0; i < n; ++i) {
    const double s = -1.0 + 2.0 * i / (n - 1);
    pts.push_back(vec({r * std::sinh(s), r * std::cosh(s)}));
  }
  return pts;
}

}  // namespace

TEST_CASE("sphere fit of exact circles") {
  const auto fit = fit_sphere(ellipse(2, 2, 20));
  CHECK(fit.radius == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(fit.rms_residual <= 1e-10);
  CHECK(fit.hull_dimension == 2);
  CHECK((fit.center - vec({0.5, -1, 2})).norm() <= 1e-10);

  // A short arc still pins down the circle.
  const auto arc = fit_sphere(ellipse(2, 2, 12, 0.5));
  CHECK(arc.radius == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("sphere fit of a round 2-sphere point cloud") {
  std::vector<Vec> pts;
  std::mt19937_64 rng(4);
  for (int i = 0; i < 40; ++i) pts.push_back(vec({1, 2, 3}) + 1.5 * random_gaussian(3, rng).normalized());
  const auto fit = fit_sphere(pts);
  CHECK(fit.hull_dimension == 3);
  CHECK(fit.radius == doctest::Approx(1.5).epsilon(1e-12));
  CHECK(fit.rms_residual <= 1e-10);
}

TEST_CASE("ellipse residual matches the brute-force best circle") {
  const auto pts = ellipse(2, 1, 64);
  const double oracle = umb::test::best_circle_rms(umb::test::plane_coordinates(pts), 2.0);
  const auto fit = fit_sphere(pts);
  CHECK(oracle >= 1e-2);
  CHECK(fit.rms_residual >= 1e-2);
  CHECK(fit.rms_residual >= oracle * (1 - 1e-6));
  CHECK(fit.rms_residual <= oracle * 1.01);
}

TEST_CASE("hyperbolic fit of exact hyperbolas") {
  const auto fit = fit_hyperbolic(hyperbola_xt(1.0, 9));
  CHECK(fit.radius == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(fit.center.norm() <= 1e-10);
  CHECK(fit.rms_residual <= 1e-10);

  // Boosted and translated copy of H^2(2) in L^3.
  std::vector<Vec> pts;
  const double phi = 0.4;
  Mat boost = Mat::Identity(3, 3);
  boost(0, 0) = boost(2, 2) = std::cosh(phi);
  boost(0, 2) = boost(2, 0) = std::sinh(phi);
  for (double x = -1; x <= 1.01; x += 0.5)
    for (double y = -1; y <= 1.01; y += 0.5)
      pts.push_back(vec({3, -1, 0.5}) + boost * vec({x, y, std::sqrt(4 + x * x + y * y)}));
  const auto f3 = fit_hyperbolic(pts);
  CHECK(f3.hull_dimension == 3);
  CHECK(f3.radius == doctest::Approx(2.0).epsilon(1e-10));
  CHECK((f3.center - vec({3, -1, 0.5})).norm() <= 1e-9);
}

TEST_CASE("perturbed paraboloid slice is rejected by the hyperbolic fit") {
  const auto im = resolve_immersion("minkowski-graph:1+(x^2+y^2)/2+0.1*x^4");
  Mat d(3, 1);
  d << 1, 0, 0;
  TraceOptions opt;
  opt.radius = 0.8;
  opt.adaptive = false;
  auto r = run_slice(im, make_slice_spec(im, Vec::Zero(2), d), opt);
  fit_slice_hyperbolic(r);
  REQUIRE(r.fit_hyperbolic.has_value());

  std::vector<Vec> pts;
  for (const auto& s : r.samples) pts.push_back(s.p);
  std::vector<Eigen::Vector2d> xt;
  for (const auto& p : pts) xt.emplace_back(p(0), p(2));
  const double oracle = umb::test::best_hyperbola_rms(xt, Eigen::Vector2d(0, 0), 4.0);
  CHECK(oracle > 1e-4);
  CHECK(r.fit_hyperbolic->rms_residual > 1e-4);
  CHECK(r.fit_hyperbolic->rms_residual >= oracle * (1 - 1e-6));
}

TEST_CASE("fit errors") {
  std::vector<Vec> line;
  for (int i = 0; i < 8; ++i) line.push_back(vec({double(i), 2.0 * i, 0}));
  CHECK(error_code_of([&] { fit_sphere(line); }) == "DegenerateFit");
  CHECK(error_code_of([&] { fit_sphere(ellipse(1, 1, 4)); }) == "DegenerateFit");
  // A barely curved arc: radius far beyond 1e6.
  std::vector<Vec> flat_arc;
  for (int i = 0; i < 10; ++i) {
    const double s = 1e-8 * i;
    flat_arc.push_back(vec({1e7 * std::sin(s), 1e7 * (1 - std::cos(s)), 0}));
  }
  CHECK(error_code_of([&] { fit_sphere(flat_arc); }) == "DegenerateFit");

  // de Sitter-type hyperbola x^2 - t^2 = 1.
  std::vector<Vec> ds;
  for (int i = 0; i < 9; ++i) {
    const double s = -1.0 + 0.25 * i;
    ds.push_back(vec({std::cosh(s), std::sinh(s)}));
  }
  CHECK(error_code_of([&] { fit_hyperbolic(ds); }) == "WrongCausalType");
  CHECK(error_code_of([&] { fit_hyperbolic(hyperbola_xt(1.0, 4)); }) == "DegenerateFit");
}
