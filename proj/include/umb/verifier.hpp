#pragma once

// Executable checks of the slice characterizations of umbilic points. Every
// suite evaluates both sides of an equivalence at a list of points and
// returns a VerdictReport. Implications are marked "exercised" only at points
// where their hypothesis holds; elsewhere the report keeps the falsifying
// witness instead.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "umb/catalog.hpp"
#include "umb/slicer.hpp"

namespace umb {

struct PointVerdict {
  Vec parameter;
  std::map<std::string, double> residuals;
  std::map<std::string, std::string> notes;
  bool pass = false;
};

struct VerdictReport {
  std::string suite_id;
  std::string surface_id;
  int points_tested = 0;
  std::vector<PointVerdict> per_point;
  bool overall = false;
  std::map<std::string, double> tolerances;
  std::uint64_t seed = 0;
  std::int64_t runtime_ms = 0;
  // Coverage counters and other aggregate facts.
  std::map<std::string, double> summary;
  // Agreement of the computed verdicts with the catalog label, when known.
  std::optional<bool> ground_truth_agreement;
};

// What a suite needs to know about the surface besides the immersion.
struct SuiteTarget {
  Immersion immersion;
  std::string id;
  std::function<std::optional<bool>(const Vec&)> umbilic_truth;
  std::optional<bool> is_round_sphere;      // known label for the sphere suite
  std::optional<bool> is_hyperbolic_space;  // known label for the hyperbolic suite
  std::optional<double> model_radius;
};

SuiteTarget target_from_catalog(const CatalogEntry& entry);
SuiteTarget target_from_immersion(const Immersion& im);

struct SuiteOptions {
  int s = -1;      // < 0: suite default
  int draws = 10;  // random subspaces / bases per point
  double tol = 1e-6;
  double tol_fit = 1e-8;     // characterization suites: fit residual
  double tol_radius = 1e-6;  // characterization suites, radius mode
  bool radius_mode = false;
  bool fixed_basis_slices = false;     // theorem8: subsets of a fixed non-orthogonal basis
  std::optional<double> basis_angle;   // corollary5, m = 2: fixed basis angle (radians)
  std::uint64_t seed = 42;
  Exec exec = Exec::Parallel;
  TraceOptions trace;
};

// Parameter points: an a x b x ... grid of cell centers, and uniform draws
// from the central 90% of the domain.
std::vector<Vec> grid_points(const Immersion& im, const std::vector<int>& counts);
std::vector<Vec> random_points(const Immersion& im, int count, std::uint64_t seed);

VerdictReport verify_theorem2(const SuiteTarget& t, const std::vector<Vec>& points, const SuiteOptions& o);
VerdictReport verify_corollary3(const SuiteTarget& t, const std::vector<Vec>& points, const SuiteOptions& o);
VerdictReport verify_remark4(const SuiteTarget& t, const std::vector<Vec>& points, const SuiteOptions& o);
VerdictReport verify_corollary5(const SuiteTarget& t, const std::vector<Vec>& points, const SuiteOptions& o);
VerdictReport verify_theorem8(const SuiteTarget& t, const std::vector<Vec>& points, const SuiteOptions& o);
VerdictReport verify_theorem10(const SuiteTarget& t, const std::vector<Vec>& points, const SuiteOptions& o);
VerdictReport verify_characterization_sphere(const SuiteTarget& t, const std::vector<Vec>& points,
                                             const SuiteOptions& o);
VerdictReport verify_characterization_hyperbolic(const SuiteTarget& t, const std::vector<Vec>& points,
                                                 const SuiteOptions& o);

// Suite ids as used on the command line.
const std::vector<std::string>& suite_ids();
VerdictReport run_suite(const std::string& suite, const SuiteTarget& t, const std::vector<Vec>& points,
                        const SuiteOptions& o);
// Catalog targets each suite runs on under `verify all`.
std::vector<std::string> default_targets(const std::string& suite);

}  // namespace umb
