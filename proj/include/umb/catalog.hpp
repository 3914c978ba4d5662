#pragma once

// Built-in ambients and immersions addressable by string id, with the
// ground-truth labels and closed-form oracles used by the test suites.
//
// Ambient ids:   euclidean:N  minkowski:N  sphere:r[,N]  hyperbolic:r[,N]
//                desitter:r[,N]  perturbed-minkowski:eps[,N]
// Surface ids:   sphere:r[,m]  ellipsoid:a1,...,ak  hyperbolic-paraboloid
//                elliptic-paraboloid:a,b  cylinder:r  torus:R,r
//                graph:<expr>  hyperboloid-sheet:r[,m]  minkowski-graph:<expr>
//                perturbed-hyperboloid:eps  s3-latitude:rho  clifford-torus
// Minkowski coordinates put time last: g = diag(1, ..., 1, -1).

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "umb/ambient.hpp"
#include "umb/immersion.hpp"

namespace umb {

enum class EntryKind { Ambient, Immersion };

enum class GroundTruth {
  UmbilicEverywhere,
  UmbilicPoints,
  NowhereUmbilic,
  Unknown,
  ConstantCurvature,
  Obstructed,
};

std::string_view ground_truth_name(GroundTruth g);

struct CatalogEntry {
  std::string id;
  EntryKind kind = EntryKind::Immersion;
  std::vector<double> parameters;
  GroundTruth ground_truth = GroundTruth::Unknown;

  std::optional<AmbientSpace> ambient;
  std::optional<Immersion> immersion;

  // Immersions: parameter points of the listed umbilics (UmbilicPoints).
  std::vector<Vec> umbilic_points;
  // Ambients: sectional curvature of a space form.
  std::optional<double> constant_curvature;
  // Hypersurfaces: principal curvatures (ascending, relative to the entry's
  // orientation) from a route independent of the parametric Hessian.
  std::function<Vec(const Vec& u)> closed_form_curvatures;
  // Immersions that are (or are known not to be) spheres / hyperbolic spaces.
  // Unset when unknown; hypersurfaces with a known umbilic label default to no.
  std::optional<double> model_radius;
  std::optional<bool> is_round_sphere;
  std::optional<bool> is_hyperbolic_space;

  // Ground truth at one parameter point; nullopt when unknown.
  std::optional<bool> umbilic_at(const Vec& u, double tol = 1e-9) const;
};

CatalogEntry resolve(const std::string& id, EntryKind kind);
inline AmbientSpace resolve_ambient(const std::string& id) { return *resolve(id, EntryKind::Ambient).ambient; }
inline Immersion resolve_immersion(const std::string& id) { return *resolve(id, EntryKind::Immersion).immersion; }

// Representative ids for listings and catalog-wide tests.
std::vector<std::string> listed_ambient_ids();
std::vector<std::string> listed_immersion_ids();
// Hypersurfaces with closed-form curvature and analytic derivatives.
std::vector<std::string> hypersurface_ids();

// Custom metric from JSON: {"dimension": N, "index": 0|1, "entries": [[...]],
// "box": [[lo, hi], ...]} with entries as expressions in x0..x{N-1}.
AmbientSpace load_metric_file(const std::string& path);
AmbientSpace metric_from_json_text(const std::string& text, const std::string& id = "custom-metric");

// Custom immersion from JSON: {"param_dim": m, "ambient": "<ambient id>",
// "components": [...], "domain": [[lo, hi], ...], "orientation": "..."} with
// components as expressions in u0..u{m-1} (u, v, w also accepted).
Immersion load_immersion_file(const std::string& path);
Immersion immersion_from_json_text(const std::string& text, const std::string& id = "custom-immersion");

}  // namespace umb
