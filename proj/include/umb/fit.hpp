#pragma once

// Best-fit spheres and hyperbolic spaces through point clouds. Points are
// first projected to their affine hull, so a planar circle is fitted as a
// circle and not as a sphere through it.

#include <vector>

#include "umb/linalg.hpp"

namespace umb {

struct QuadricFit {
  Vec center;
  double radius = 0.0;
  double rms_residual = 0.0;
  int hull_dimension = 0;
};

// Algebraic (Kasa) fit of |p - c|^2 = r^2 followed by Gauss-Newton on the
// geometric residual |p - c| - r. Residual: rms of |p - c| - r.
QuadricFit fit_sphere(const std::vector<Vec>& points);

// Fit of <p - c, p - c> = -r^2 for the Lorentz form diag(1, ..., 1, -1).
// Residual: rms of |<p - c, p - c> + r^2|.
QuadricFit fit_hyperbolic(const std::vector<Vec>& points);

}  // namespace umb
