#pragma once

// Ambient (pseudo-)Riemannian spaces given by a coordinate metric, and the
// curvature quantities derived from it.
//
// Curvature conventions:
//   R(X,Y)Z = ∇_X ∇_Y Z - ∇_Y ∇_X Z - ∇_[X,Y] Z
//   riemann_lowered(i,j,k,l) = g(R(∂_i,∂_j)∂_l, ∂_k)
//   K(u,v) = g(R(u,v)v,u) / (g(u,u)g(v,v) - g(u,v)^2)
// so that a round sphere of radius r has K = 1/r^2 and
// riemann_lowered = (1/r^2)(g_ik g_jl - g_il g_jk).

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "umb/linalg.hpp"
#include "umb/parallel.hpp"
#include "umb/smooth_map.hpp"

namespace umb {

struct MetricSignature {
  int dimension = 0;
  int index = 0;  // 0 Riemannian, 1 Lorentzian
};

enum class CausalCharacter { Spacelike, Timelike, Lightlike };

CausalCharacter classify(const Mat& metric, const Vec& v, double tol = 1e-12);

struct Box {
  Vec lo;
  Vec hi;

  static Box cube(int dim, double half_width);
  bool contains(const Vec& x) const;
  Vec center() const { return 0.5 * (lo + hi); }
};

// Dense N x N x N array, (a,b,c) row-major.
class Tensor3 {
 public:
  Tensor3() = default;
  explicit Tensor3(int n) : n_(n), data_(static_cast<size_t>(n) * n * n, 0.0) {}
  int size() const { return n_; }
  double& operator()(int a, int b, int c) { return data_[(static_cast<size_t>(a) * n_ + b) * n_ + c]; }
  double operator()(int a, int b, int c) const { return data_[(static_cast<size_t>(a) * n_ + b) * n_ + c]; }
  double max_abs() const;

 private:
  int n_ = 0;
  std::vector<double> data_;
};

class Tensor4 {
 public:
  Tensor4() = default;
  explicit Tensor4(int n) : n_(n), data_(static_cast<size_t>(n) * n * n * n, 0.0) {}
  int size() const { return n_; }
  double& operator()(int a, int b, int c, int d) {
    return data_[((static_cast<size_t>(a) * n_ + b) * n_ + c) * n_ + d];
  }
  double operator()(int a, int b, int c, int d) const {
    return data_[((static_cast<size_t>(a) * n_ + b) * n_ + c) * n_ + d];
  }
  double max_abs() const;

 private:
  int n_ = 0;
  std::vector<double> data_;
};

class AmbientSpace {
 public:
  // `metric` maps R^N to the N*N row-major entries of g.
  AmbientSpace(std::string id, MetricSignature signature, SmoothMap metric, Box domain, bool flat);

  const std::string& id() const { return id_; }
  const MetricSignature& signature() const { return signature_; }
  int dim() const { return signature_.dimension; }
  bool flat() const { return flat_; }
  const Box& domain() const { return domain_; }

  // Sampling region for random points (defaults to the domain).
  const Box& sampling_box() const { return sampling_box_; }
  void set_sampling_box(Box b) { sampling_box_ = std::move(b); }

  double fd_step() const { return fd_step_; }
  void set_fd_step(double h) { fd_step_ = h; }
  // Step for the outer difference of nested second derivatives.
  double fd_step_outer() const { return fd_step_outer_; }

  // Ignore the analytic evaluator and use central differences everywhere.
  void force_finite_differences(bool on) { force_fd_ = on; }
  bool analytic() const { return metric_.has_jet() && !force_fd_; }

  // g(x), checked for symmetry (1e-12) and for the declared signature.
  Mat metric(const Vec& x) const;
  // Unchecked evaluation, used inside finite-difference stencils.
  Mat metric_raw(const Vec& x) const;

  // dg[k](i,j) = ∂_k g_ij ; d2g[k][l](i,j) = ∂_k ∂_l g_ij (analytic only).
  void metric_derivatives(const Vec& x, std::vector<Mat>& dg, std::vector<std::vector<Mat>>* d2g) const;

 private:
  std::string id_;
  MetricSignature signature_;
  SmoothMap metric_;
  Box domain_;
  Box sampling_box_;
  bool flat_;
  bool force_fd_ = false;
  double fd_step_ = 1e-5;
  double fd_step_outer_ = 1e-3;
};

// Γ^k_ij stored as (k, i, j).
Tensor3 christoffel(const AmbientSpace& space, const Vec& x);

struct CurvatureSample {
  Vec point;
  Tensor3 christoffel;
  Tensor4 riemann_lowered;  // see header comment for the index convention
  Mat metric;
  bool analytic = true;
  std::map<std::string, double> scalar_summary;
};

CurvatureSample riemann(const AmbientSpace& space, const Vec& x);

// g(R(a,b)c, d) from a curvature sample.
double curvature_form(const CurvatureSample& s, const Vec& a, const Vec& b, const Vec& c, const Vec& d);

double sectional_curvature(const CurvatureSample& s, const Vec& u, const Vec& v);
double sectional_curvature(const AmbientSpace& space, const Vec& x, const Vec& u, const Vec& v);

struct GeodesicPoint {
  double t;
  Vec x;
  Vec v;
};

// Fixed-step classical RK4 for x'' + Γ(x', x') = 0.
std::vector<GeodesicPoint> geodesic(const AmbientSpace& space, const Vec& p, const Vec& v, double t_end,
                                    int steps);

Vec exp_map(const AmbientSpace& space, const Vec& p, const Vec& v, int steps = 256);

// exp_p of the grid points of B(0, radius) in span(basis), with `grid` samples
// per coefficient axis. Basis vectors are the columns.
std::vector<Vec> tg_patch(const AmbientSpace& space, const Vec& p, const Mat& basis, double radius, int grid,
                          int steps = 256, Exec exec = Exec::Parallel);

// ---------------------------------------------------------------------------
// Cartan audit: pointwise checks that a space behaves like a space form.

enum class TripleMode { Spacelike, Mixed };

struct KDifference {
  double lhs = 0.0;  // K(x,y) - K(x,z)
  double rhs = 0.0;  // c * g(R(x,y')z', x) with the rotated pair (y', z')
};

// x, y, z must be g-orthonormal. Spacelike mode needs all three spacelike;
// Mixed mode needs x, y spacelike and z timelike.
KDifference k_difference_identity(const CurvatureSample& s, const Vec& x, const Vec& y, const Vec& z,
                                  TripleMode mode);
KDifference k_difference_identity(const AmbientSpace& space, const Vec& point, const Vec& x, const Vec& y,
                                  const Vec& z, TripleMode mode);

// Random g-orthonormal frame at a point: a fixed orthonormal basis composed
// with a random rotation (and, in Lorentzian signature, a random boost of
// rapidity up to max_rapidity). Columns ordered spacelike first, timelike last.
OrthoFrame random_orthonormal_frame(const Mat& metric, std::mt19937_64& rng, double max_rapidity = 1.0);

enum class AuditVerdict { ConstantCurvatureCompatible, Obstructed };

struct CartanAuditOptions {
  int triples_per_point = 20;
  int planes_per_point = 20;
  double tol_codazzi = -1.0;  // < 0: 1e-6 analytic, 1e-3 finite differences
  double tol_spread = -1.0;
  int max_retries = 200;
  // Planes with |Q| below this fraction of |u|^2|v|^2 (frame coordinates)
  // count as near-null and are resampled.
  double plane_rel_tol = 1e-2;
  Exec exec = Exec::Parallel;
};

struct CartanPointResult {
  Vec point;
  double max_obstruction = 0.0;
  double k_min = 0.0;
  double k_max = 0.0;
  int resamples = 0;
};

struct CartanAuditReport {
  std::string metric_id;
  std::vector<CartanPointResult> per_point;
  double max_codazzi_obstruction = 0.0;
  double sectional_spread = 0.0;
  AuditVerdict verdict = AuditVerdict::ConstantCurvatureCompatible;
  double tol_codazzi = 0.0;
  double tol_spread = 0.0;
  int triples_per_point = 0;
  std::uint64_t seed = 0;
};

// `count` points drawn uniformly from the space's sampling box.
std::vector<Vec> sample_points(const AmbientSpace& space, int count, std::uint64_t seed);

CartanAuditReport cartan_audit(const AmbientSpace& space, const std::vector<Vec>& points,
                               const CartanAuditOptions& options, std::uint64_t seed);

std::string_view verdict_name(AuditVerdict v);

}  // namespace umb
