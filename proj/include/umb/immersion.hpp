#pragma once

// Parametrized immersions u ∈ R^m -> (ambient, ḡ) and their extrinsic data:
// frames, second fundamental form, mean curvature vector, shape operator,
// principal curvatures and the umbilicity defect.
//
// Second-form components are stored as coefficients along the orthonormal
// normal frame: II(e_i, e_j) = Σ_α II[α](i,j) ν_α, i.e.
// II[α](i,j) = ε_α ḡ(ν_α, ∇̄_{e_i} e_j) with ε_α = ḡ(ν_α, ν_α) = ±1.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "umb/ambient.hpp"

namespace umb {

enum class DerivativeRung { Analytic, AnalyticJacobianFD, FiniteDifference };
std::string_view rung_name(DerivativeRung r);

// Picks the sign of the unit normal of a hypersurface.
struct OrientationRule {
  std::string name = "standard";
  // Returns true if `normal` at ambient point `p` is acceptable as is.
  std::function<bool(const Vec& p, const Vec& normal)> accept;

  static OrientationRule standard();
  static OrientationRule inward();           // towards the origin
  static OrientationRule outward();
  static OrientationRule upward();           // last coordinate positive
  static OrientationRule future_directed();  // time (last) coordinate positive
};

// Σ lies on the quadric ⟨x,x⟩ = ±radius² of a flat ambient; extrinsic data
// is then taken relative to the quadric (sphere in R^{N+1} or hyperboloid in
// L^{N+1}) rather than the flat space.
struct QuadricModel {
  double radius = 1.0;
  bool lorentzian = false;
};

class Immersion {
 public:
  Immersion(std::string id, AmbientSpace ambient, SmoothMap map, Box domain);

  const std::string& id() const { return id_; }
  const AmbientSpace& ambient() const { return ambient_; }
  const SmoothMap& map() const { return map_; }
  const Box& domain() const { return domain_; }
  int param_dim() const { return map_.in_dim(); }
  int ambient_dim() const { return map_.out_dim(); }
  int codim() const { return ambient_dim() - param_dim() - (quadric_ ? 1 : 0); }

  const OrientationRule& orientation() const { return orientation_; }
  void set_orientation(OrientationRule rule) { orientation_ = std::move(rule); }

  bool allow_timelike() const { return allow_timelike_; }
  void set_allow_timelike(bool on) { allow_timelike_ = on; }

  const std::optional<QuadricModel>& quadric() const { return quadric_; }
  void set_quadric(QuadricModel q) { quadric_ = q; }

  // Optional analytic Jacobian (N x m) for maps without a jet evaluator.
  void set_jacobian(std::function<Mat(const Vec&)> jac) { jacobian_ = std::move(jac); }
  // Drop to a lower derivative rung (used to exercise the fallbacks).
  void force_rung(DerivativeRung r) { forced_ = r; }
  DerivativeRung rung() const;

  double fd_step() const { return fd_step_; }
  void set_fd_step(double h) { fd_step_ = h; }
  double fd_step_hessian() const { return fd_step_hessian_; }

  Vec point(const Vec& u) const { return map_(u); }
  Mat jacobian(const Vec& u) const;
  // Second partials of every ambient component: hess[c](i,j) = ∂_i ∂_j x^c.
  std::vector<Mat> hessians(const Vec& u) const;

 private:
  std::string id_;
  AmbientSpace ambient_;
  SmoothMap map_;
  Box domain_;
  OrientationRule orientation_ = OrientationRule::standard();
  bool allow_timelike_ = false;
  std::optional<QuadricModel> quadric_;
  std::function<Mat(const Vec&)> jacobian_;
  std::optional<DerivativeRung> forced_;
  double fd_step_ = 1e-5;
  double fd_step_hessian_ = 1e-4;
};

struct Frames {
  Vec p;
  Mat jacobian;          // N x m coordinate tangent vectors
  Mat tangent;           // N x m, ḡ-orthonormal
  Mat normal;            // N x n, ḡ-orthonormal
  std::vector<int> normal_signs;
  Mat metric;            // ḡ at p
  Mat induced_metric;    // m x m coordinate first fundamental form
  Mat coords_to_frame;   // C with tangent = jacobian * C
};

Frames frames(const Immersion& im, const Vec& u);

// Second-form components in the orthonormal frames (n matrices of m x m).
std::vector<Mat> second_fundamental_form(const Immersion& im, const Vec& u);
std::vector<Mat> second_fundamental_form(const Immersion& im, const Vec& u, const Frames& f);

struct ShapeReport {
  Vec u;
  Vec p;
  Mat tangent_frame;
  Mat normal_frame;
  std::vector<int> normal_signs;
  Mat first_form;             // identity in the orthonormal frame
  Mat first_form_coords;      // g_ij = ḡ(∂_i x, ∂_j x)
  std::vector<Mat> second_form;
  Vec mean_curvature_vector;  // ambient vector H
  Vec mean_curvature;         // components of H along the normal frame
  Mat shape_operator;         // n = 1 only, in the tangent frame
  Vec principal_curvatures;   // ascending
  Mat principal_directions;   // N x m ambient vectors
  double umbilicity_defect = 0.0;
  DerivativeRung rung = DerivativeRung::Analytic;
  std::string orientation;
};

ShapeReport shape_report(const Immersion& im, const Vec& u);

// max over unit X of |II(X,X) - H| for a second form given in an orthonormal
// frame. For a single normal this is max_i |κ_i - mean κ|; otherwise it is
// evaluated on the eigenvectors of each component plus a fixed 32-point
// design on the unit sphere.
double umbilicity_defect(const std::vector<Mat>& second_form);

// Mean-curvature components (1/m) tr II[α].
Vec mean_of(const std::vector<Mat>& second_form);

double default_umbilic_tol(DerivativeRung r);
bool is_umbilic(const Immersion& im, const Vec& u, double tol = -1.0);

// II(v, v) as an ambient vector, for a unit tangent vector v.
Vec normal_curvature(const Immersion& im, const Vec& u, const Vec& v);

}  // namespace umb
