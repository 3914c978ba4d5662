#include <cmath>
#include <limits>

#include "support.hpp"
#include "umb/report.hpp"

using namespace umb;
using umb::test::vec;

TEST_CASE("non-finite numbers serialize as strings") {
  CHECK(to_json(std::numeric_limits<double>::infinity()) == "inf");
  CHECK(to_json(-std::numeric_limits<double>::infinity()) == "-inf");
  CHECK(to_json(std::nan("")) == "nan");
  CHECK(to_json(1.5) == 1.5);
  CHECK(to_json(vec({1, 2})).dump() == "[1.0,2.0]");
}

TEST_CASE("documents carry the schema version first") {
  nlohmann::ordered_json payload;
  payload["x"] = 1;
  const auto d = document("thing", payload);
  CHECK(d.begin().key() == "schema_version");
  CHECK(d["schema_version"] == kSchemaVersion);
  CHECK(d["kind"] == "thing");
  CHECK(d["x"] == 1);
}

TEST_CASE("slice result rendering") {
  const auto im = resolve_immersion("sphere:1");
  Mat d(3, 1);
  d << 1, 0, 0;
  auto r = run_slice(im, make_slice_spec(im, vec({0, 0}), d));
  fit_slice_sphere(r);
  const auto j = to_json(r);
  for (const char* key : {"spec", "radius", "samples", "slice_II", "slice_H", "fit_sphere", "identity_residual",
                          "derivative_rung"})
    CHECK(j.contains(key));
  CHECK(j["samples"].size() == r.samples.size());
  CHECK(!to_json(r, false).contains("samples"));

  const std::string csv = slice_samples_csv(r);
  CHECK(csv.rfind("x0,x1,x2,t0,w0", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == static_cast<long>(r.samples.size()) + 1);
}

TEST_CASE("verdict rendering") {
  VerdictReport r;
  r.suite_id = "theorem2";
  r.surface_id = "sphere:1";
  r.runtime_ms = 17;
  PointVerdict v;
  v.parameter = vec({0.1, 0.2});
  v.residuals["defect"] = 0.0;
  v.pass = true;
  r.per_point.push_back(v);
  const auto j = to_json(r);
  CHECK(j["runtime_ms"] == 17);
  CHECK(!to_json(r, false).contains("runtime_ms"));
  CHECK(j["ground_truth_agreement"].is_null());
  CHECK(j["per_point"][0]["residuals"]["defect"] == 0.0);
  CHECK(verdict_csv(r).find("defect") != std::string::npos);
}
