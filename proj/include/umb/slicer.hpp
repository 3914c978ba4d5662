#pragma once

// Normal slices of an immersion: Π is an affine subspace through q that
// contains the normal space of Σ and s chosen tangent directions (or, for a
// surface realized on a sphere/hyperboloid, the central linear section
// through q). The intersection S = Π ∩ Σ is traced by Newton's method and
// its second fundamental form at q is measured from the samples alone.

#include <optional>
#include <string>
#include <vector>

#include "umb/fit.hpp"
#include "umb/immersion.hpp"

namespace umb {

enum class SliceMode { FlatAffine, QuadricCentralSection };
std::string_view slice_mode_name(SliceMode m);

struct SliceSpec {
  Vec q_param;
  Vec q;
  Mat tangent_directions;  // N x s, ḡ-orthonormal, tangent to Σ at q
  bool include_normals = true;
  SliceMode mode = SliceMode::FlatAffine;
};

// Picks the mode from the immersion and fills q.
SliceSpec make_slice_spec(const Immersion& im, const Vec& u, const Mat& directions);

struct Subspace {
  Vec origin;            // q
  Mat span;              // N x d, ḡ-orthonormal: tangent directions first, then transverse
  std::vector<int> signs;
  int s = 0;             // number of tangent directions
  Mat transverse;        // N x (d - s): Σ's normals (and q̂ in quadric mode, last)
  std::vector<int> transverse_signs;
  int normal_count = 0;  // leading transverse columns that are Σ's normals
  Mat annihilator;       // (N - d) x N, rows vanish on span
  Mat metric;            // ḡ (constant)
};

Subspace build_slice(const Immersion& im, const SliceSpec& spec);

struct SliceSample {
  Vec u;  // parameter point on Σ
  Vec p;  // ambient point
  Vec t;  // tangent Π-coordinates
  Vec w;  // transverse Π-coordinates
  double residual = 0.0;
};

struct SliceResult {
  SliceSpec spec;
  double radius = 0.0;
  int samples_per_dim = 0;
  std::vector<SliceSample> samples;
  int failed_targets = 0;
  int radius_halvings = 0;
  // Transverse frame of Π used for the w coordinates (copied from Subspace).
  Mat transverse;
  std::vector<int> transverse_signs;
  std::vector<int> tangent_signs;
  int normal_count = 0;
  // Measured from the samples: slice_II[α](i,j) along transverse direction α
  // (Σ's normals only), in the basis of tangent_directions.
  std::vector<Mat> slice_II;
  Vec slice_H;           // ambient mean-curvature vector of S at q
  Vec slice_H_components;
  double fit_condition = 0.0;
  int fit_degree = 0;
  double fit_residual = 0.0;        // max |w - polynomial| over the samples
  double fit_error_estimate = 0.0;  // Hessian change between degrees D and D-2
  std::optional<QuadricFit> fit_sphere;
  std::optional<QuadricFit> fit_hyperbolic;
  std::string fit_error;  // error code name when a fit was attempted and failed
  double identity_residual = -1.0;
  double weingarten_residual = -1.0;
  DerivativeRung rung = DerivativeRung::Analytic;
};

struct TraceOptions {
  double radius = -1.0;  // < 0: 0.5 min(1, 1/max|κ|)
  int samples_per_dim = 8;
  int max_halvings = 4;
  // run_slice only: halve the radius until the fit error estimate is below
  // fit_tol relative to the curvature scale.
  bool adaptive = true;
  int adaptive_halvings = 6;
  double fit_tol = 1e-7;
  Exec exec = Exec::Parallel;
};

double default_slice_radius(const Immersion& im, const Vec& u);

SliceResult trace_slice(const Immersion& im, const SliceSpec& spec, const TraceOptions& options = {});

// Least-squares polynomial fit of the transverse coordinates over the tangent
// ones; the Hessian at t = 0 gives the slice second form.
void slice_shape(SliceResult& result);

// max |slice_II - II_Σ restricted to the tangent directions|; also fills the
// residual against the shape operator in the hypersurface case.
double identity_check(const Immersion& im, SliceResult& result);

// Trace, measure and check in one go.
SliceResult run_slice(const Immersion& im, const SliceSpec& spec, const TraceOptions& options = {});

// Slice mean curvature along Σ's first normal: (1/s) tr slice_II[0].
double slice_mean_curvature(const SliceResult& r);

// Fits for the characterization suites.
void fit_slice_sphere(SliceResult& r);
void fit_slice_hyperbolic(SliceResult& r);

}  // namespace umb
