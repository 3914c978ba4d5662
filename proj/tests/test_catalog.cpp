#include <cmath>
#include <cstdio>
#include <fstream>

#include "support.hpp"
#include "umb/catalog.hpp"
#include "umb/verifier.hpp"

using namespace umb;
using umb::test::error_code_of;
using umb::test::uniform_in;
using umb::test::vec;

TEST_CASE("resolve examples") {
  const auto s = resolve("sphere:2", EntryKind::Immersion);
  CHECK(s.ground_truth == GroundTruth::UmbilicEverywhere);
  CHECK(s.model_radius == 2.0);
  CHECK(s.is_round_sphere);
  const Vec k = shape_report(*s.immersion, vec({0.3, 0.1})).principal_curvatures;
  CHECK(k(0) == doctest::Approx(0.5));
  CHECK(k(1) == doctest::Approx(0.5));

  const auto hp = resolve("hyperbolic-paraboloid", EntryKind::Immersion);
  CHECK(hp.ground_truth == GroundTruth::NowhereUmbilic);
  CHECK(std::abs(shape_report(*hp.immersion, vec({0, 0})).mean_curvature(0)) <= 1e-14);

  const auto hs = resolve("hyperboloid-sheet:1", EntryKind::Immersion);
  CHECK(hs.ground_truth == GroundTruth::UmbilicEverywhere);
  CHECK(hs.is_hyperbolic_space);
  CHECK(shape_report(*hs.immersion, vec({0.5, 0.5})).principal_curvatures(1) == doctest::Approx(1.0));
}

TEST_CASE("every listed id resolves") {
  for (const auto& id : listed_ambient_ids()) {
    CAPTURE(id);
    const auto e = resolve(id, EntryKind::Ambient);
    CHECK(e.ambient.has_value());
    CHECK(e.id == id);
  }
  for (const auto& id : listed_immersion_ids()) {
    CAPTURE(id);
    const auto e = resolve(id, EntryKind::Immersion);
    CHECK(e.immersion.has_value());
    CHECK((e.ground_truth != GroundTruth::Unknown || e.is_hyperbolic_space.has_value()));
  }
}

TEST_CASE("unknown and malformed ids") {
  try {
    resolve("sphre:1", EntryKind::Immersion);
    FAIL("expected UnknownCatalogId");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnknownCatalogId);
    CHECK(std::string(e.what()).find("sphere") != std::string::npos);
    CHECK(e.input() == "sphre:1");
  }
  CHECK(error_code_of([] { resolve("klein-bottle", EntryKind::Immersion); }) == "UnknownCatalogId");
  CHECK(error_code_of([] { resolve("sphere:-1", EntryKind::Immersion); }) == "MalformedParameters");
  CHECK(error_code_of([] { resolve("sphere:abc", EntryKind::Ambient); }) == "MalformedParameters");
  CHECK(error_code_of([] { resolve("torus:0.5,2", EntryKind::Immersion); }) == "MalformedParameters");
  CHECK(error_code_of([] { resolve("ellipsoid:1", EntryKind::Immersion); }) == "MalformedParameters");
  CHECK(error_code_of([] { resolve("euclidean:0", EntryKind::Ambient); }) == "MalformedParameters");
  CHECK(error_code_of([] { resolve("graph:x+", EntryKind::Immersion); }) == "ParseError");
}

TEST_CASE("ambient constant curvature labels match computed sectional curvature") {
  std::mt19937_64 rng(41);
  for (const auto& id : listed_ambient_ids()) {
    const auto e = resolve(id, EntryKind::Ambient);
    if (!e.constant_curvature) {
      CHECK(e.ground_truth == GroundTruth::Obstructed);
      continue;
    }
    CAPTURE(id);
    CHECK(e.ground_truth == GroundTruth::ConstantCurvature);
    for (int k = 0; k < 25; ++k) {
      const Vec x = uniform_in(e.ambient->sampling_box(), rng);
      const auto f = random_orthonormal_frame(e.ambient->metric(x), rng);
      const double K = sectional_curvature(*e.ambient, x, f.vectors.col(0), f.vectors.col(1));
      CHECK(K == doctest::Approx(*e.constant_curvature).epsilon(1e-6).scale(1.0));
    }
  }
}

TEST_CASE("ellipsoid umbilics sit where the classical formula puts them") {
  // For semi-axes a > b > c the umbilics are at x_a^2 = a^2 (a^2-b^2)/(a^2-c^2),
  // x_b = 0, x_c^2 = c^2 (b^2-c^2)/(a^2-c^2). Here a, b, c lie on axes 3, 2, 1.
  const auto e = resolve("ellipsoid:1,2,3", EntryKind::Immersion);
  CHECK(e.ground_truth == GroundTruth::UmbilicPoints);
  const double a = 3, b = 2, c = 1;
  const double xa = std::sqrt(a * a * (a * a - b * b) / (a * a - c * c));
  const double xc = std::sqrt(c * c * (b * b - c * c) / (a * a - c * c));
  CHECK(xa == doctest::Approx(3 * std::sqrt(5.0 / 8)));
  CHECK(xc == doctest::Approx(std::sqrt(3.0 / 8)));
  REQUIRE(e.umbilic_points.size() == 4);
  int found = 0;
  for (const Vec& u : e.umbilic_points) {
    const Vec p = e.immersion->point(u);
    CHECK(std::abs(p(1)) <= 1e-12);
    CHECK(std::abs(std::abs(p(0)) - xc) <= 1e-12);
    CHECK(std::abs(std::abs(p(2)) - xa) <= 1e-12);
    CHECK(shape_report(*e.immersion, u).umbilicity_defect <= 1e-8);
    found += e.umbilic_at(u) == true;
  }
  CHECK(found == 4);
  CHECK(e.umbilic_at(vec({0.3, 0.8})) == false);
}

TEST_CASE("elliptic paraboloid umbilics") {
  // z = a x^2 + b y^2 at (0, y): κ_x = 2a/w, κ_y = 2b/w^3 with w = sqrt(1 + 4b^2 y^2).
  const double a = 1, b = 3;
  const double y = std::sqrt((b / a - 1) / (4 * b * b));
  const auto e = resolve("elliptic-paraboloid:1,3", EntryKind::Immersion);
  REQUIRE(e.umbilic_points.size() == 2);
  for (const Vec& u : e.umbilic_points) {
    CHECK(std::abs(u(0)) <= 1e-14);
    CHECK(std::abs(u(1)) == doctest::Approx(y));
    CHECK(shape_report(*e.immersion, u).umbilicity_defect <= 1e-8);
  }
  CHECK(y == doctest::Approx(0.2357).epsilon(1e-4));
}

TEST_CASE("ground-truth labels agree with computed defects") {
  for (const auto& id : listed_immersion_ids()) {
    CAPTURE(id);
    const auto e = resolve(id, EntryKind::Immersion);
    for (const Vec& u : random_points(*e.immersion, 25, 21)) {
      const double d = shape_report(*e.immersion, u).umbilicity_defect;
      switch (e.ground_truth) {
        case GroundTruth::UmbilicEverywhere: CHECK(d <= 1e-8); break;
        case GroundTruth::NowhereUmbilic: CHECK(d > 1e-3); break;
        case GroundTruth::UmbilicPoints: {
          const auto truth = e.umbilic_at(u);
          REQUIRE(truth.has_value());
          CHECK(*truth == (d <= 1e-9));
          break;
        }
        default: break;
      }
    }
  }
}

TEST_CASE("perturbed hyperboloid") {
  const auto e = resolve("perturbed-hyperboloid:0.05", EntryKind::Immersion);
  CHECK(e.is_hyperbolic_space == false);
  // Second-order contact with H^2(1) along x = 0, so umbilic there; not elsewhere.
  CHECK(shape_report(*e.immersion, vec({0, 0.6})).umbilicity_defect <= 1e-10);
  CHECK(shape_report(*e.immersion, vec({0.7, 0.2})).umbilicity_defect > 1e-2);
  CHECK(error_code_of([] { resolve("perturbed-hyperboloid:0", EntryKind::Immersion); }) == "MalformedParameters");
}

TEST_CASE("surfaces on space forms") {
  const double rho = 1.0;
  const auto lat = resolve("s3-latitude:1", EntryKind::Immersion);
  REQUIRE(lat.immersion->quadric().has_value());
  const auto r = shape_report(*lat.immersion, vec({0.4, -0.2}));
  CHECK(r.second_form.size() == 1);
  CHECK(r.principal_curvatures(0) == doctest::Approx(1 / std::tan(rho)));
  CHECK(r.umbilicity_defect <= 1e-10);
  CHECK(std::abs(r.p.norm() - 1.0) <= 1e-12);

  const auto ct = resolve("clifford-torus", EntryKind::Immersion);
  for (const Vec& u : random_points(*ct.immersion, 10, 1)) {
    const auto c = shape_report(*ct.immersion, u);
    CHECK(c.principal_curvatures(0) == doctest::Approx(-1.0));
    CHECK(c.principal_curvatures(1) == doctest::Approx(1.0));
  }
}

TEST_CASE("custom files") {
  const std::string metric_path = "test_catalog_metric.json";
  const std::string surface_path = "test_catalog_surface.json";
  {
    std::ofstream(metric_path) << R"({"dimension": 3, "index": 1, "entries": [["1","0","0"],["0","1","0"],["0","0","-1"]],
                                      "flat": true})";
    std::ofstream(surface_path) << R"j({"param_dim": 2, "ambient": "euclidean:3",
        "components": ["u", "v", "u^2 + 3*v^2"], "domain": [[-1, 1], [-1, 1]], "orientation": "upward"})j";
  }
  const auto space = load_metric_file(metric_path);
  CHECK(space.flat());
  CHECK(space.signature().index == 1);
  const auto im = load_immersion_file(surface_path);
  const auto r = shape_report(im, vec({0, 0}));
  CHECK(r.principal_curvatures(0) == doctest::Approx(2.0));
  CHECK(r.principal_curvatures(1) == doctest::Approx(6.0));
  std::remove(metric_path.c_str());
  std::remove(surface_path.c_str());

  CHECK(error_code_of([] { load_metric_file("/nonexistent/metric.json"); }) == "IoError");
  CHECK(error_code_of([] {
          immersion_from_json_text(R"({"param_dim": 2, "ambient": "euclidean:3", "components": ["u", "v"]})");
        }) == "MalformedParameters");
  CHECK(error_code_of([] {
          immersion_from_json_text(
              R"({"param_dim": 2, "ambient": "euclidean:3", "components": ["u", "v", "w"]})");
        }) == "ParseError");
}
