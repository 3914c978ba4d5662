#include "umb/ambient.hpp"

#include <algorithm>
#include <cmath>

#include "umb/error.hpp"

namespace umb {

CausalCharacter classify(const Mat& metric, const Vec& v, double tol) {
  const double q = v.dot(metric * v);
  if (q > tol) return CausalCharacter::Spacelike;
  if (q < -tol) return CausalCharacter::Timelike;
  return CausalCharacter::Lightlike;
}

Box Box::cube(int dim, double half_width) {
  return {Vec::Constant(dim, -half_width), Vec::Constant(dim, half_width)};
}

bool Box::contains(const Vec& x) const {
  for (int i = 0; i < x.size(); ++i)
    if (!(x(i) >= lo(i) && x(i) <= hi(i))) return false;
  return true;
}

double Tensor3::max_abs() const {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

double Tensor4::max_abs() const {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

AmbientSpace::AmbientSpace(std::string id, MetricSignature signature, SmoothMap metric, Box domain, bool flat)
    : id_(std::move(id)),
      signature_(signature),
      metric_(std::move(metric)),
      domain_(std::move(domain)),
      sampling_box_(domain_),
      flat_(flat) {
  if (signature_.dimension < 2) throw Error(ErrorCode::InvalidArgument, "ambient dimension must be >= 2", id_);
  if (signature_.index < 0 || signature_.index > 1)
    throw Error(ErrorCode::InvalidArgument, "metric index must be 0 or 1", id_);
  if (metric_.in_dim() != signature_.dimension || metric_.out_dim() != signature_.dimension * signature_.dimension)
    throw Error(ErrorCode::InvalidArgument, "metric evaluator has wrong shape", id_);
}

Mat AmbientSpace::metric_raw(const Vec& x) const {
  const int n = dim();
  const Vec flat = metric_(x);
  Mat g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = flat(i * n + j);
  return g;
}

Mat AmbientSpace::metric(const Vec& x) const {
  const Mat g = metric_raw(x);
  if ((g - g.transpose()).cwiseAbs().maxCoeff() > 1e-12)
    throw Error(ErrorCode::InvalidArgument, "metric is not symmetric", id_);
  if (!(std::abs(g.determinant()) >= 1e-12))
    throw Error(ErrorCode::SingularMetric, "metric determinant vanishes", id_);
  if (inertia_index(g) != signature_.index)
    throw Error(ErrorCode::SignatureMismatch, "metric signature does not match declared index", id_);
  return g;
}

void AmbientSpace::metric_derivatives(const Vec& x, std::vector<Mat>& dg,
                                      std::vector<std::vector<Mat>>* d2g) const {
  const int n = dim();
  dg.assign(n, Mat::Zero(n, n));
  if (analytic()) {
    const MapDerivatives d = metric_.derivatives(x);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) dg[k](i, j) = d.jacobian(i * n + j, k);
    if (d2g != nullptr) {
      d2g->assign(n, std::vector<Mat>(n, Mat::Zero(n, n)));
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          for (int k = 0; k < n; ++k)
            for (int l = 0; l < n; ++l) (*d2g)[k][l](i, j) = d.hessian[i * n + j](k, l);
    }
    return;
  }
  const double h = fd_step_;
  Vec xp = x, xm = x;
  for (int k = 0; k < n; ++k) {
    xp(k) = x(k) + h;
    xm(k) = x(k) - h;
    dg[k] = (metric_raw(xp) - metric_raw(xm)) / (2.0 * h);
    xp(k) = xm(k) = x(k);
  }
  if (d2g != nullptr) {
    const double h2 = fd_step_outer_;
    d2g->assign(n, std::vector<Mat>(n, Mat::Zero(n, n)));
    std::vector<Mat> dp, dm;
    for (int k = 0; k < n; ++k) {
      xp(k) = x(k) + h2;
      xm(k) = x(k) - h2;
      metric_derivatives(xp, dp, nullptr);
      metric_derivatives(xm, dm, nullptr);
      for (int l = 0; l < n; ++l) (*d2g)[k][l] = (dp[l] - dm[l]) / (2.0 * h2);
      xp(k) = xm(k) = x(k);
    }
  }
}

namespace {

Mat checked_inverse(const AmbientSpace& space, const Mat& g) {
  const double det = g.determinant();
  if (!(std::abs(det) >= 1e-12)) throw Error(ErrorCode::SingularMetric, "metric determinant vanishes", space.id());
  return g.inverse();
}

Tensor3 christoffel_from(const Mat& ginv, const std::vector<Mat>& dg) {
  const int n = static_cast<int>(ginv.rows());
  Tensor3 gamma(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      Vec s(n);
      for (int l = 0; l < n; ++l) s(l) = dg[i](j, l) + dg[j](i, l) - dg[l](i, j);
      const Vec up = 0.5 * ginv * s;
      for (int k = 0; k < n; ++k) {
        gamma(k, i, j) = up(k);
        gamma(k, j, i) = up(k);
      }
    }
  return gamma;
}

}  // namespace

Tensor3 christoffel(const AmbientSpace& space, const Vec& x) {
  const Mat g = space.metric(x);
  const Mat ginv = checked_inverse(space, g);
  std::vector<Mat> dg;
  space.metric_derivatives(x, dg, nullptr);
  return christoffel_from(ginv, dg);
}

CurvatureSample riemann(const AmbientSpace& space, const Vec& x) {
  const int n = space.dim();
  CurvatureSample s;
  s.point = x;
  s.metric = space.metric(x);
  s.analytic = space.analytic();
  const Mat ginv = checked_inverse(space, s.metric);

  std::vector<Mat> dg;
  std::vector<std::vector<Mat>> d2g;
  std::vector<Tensor3> dgamma(n, Tensor3(n));  // dgamma[m](k,i,j) = ∂_m Γ^k_ij

  if (s.analytic) {
    space.metric_derivatives(x, dg, &d2g);
    s.christoffel = christoffel_from(ginv, dg);
    for (int m = 0; m < n; ++m) {
      const Mat dginv = -ginv * dg[m] * ginv;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          Vec sv(n), dsv(n);
          for (int l = 0; l < n; ++l) {
            sv(l) = dg[i](j, l) + dg[j](i, l) - dg[l](i, j);
            dsv(l) = d2g[m][i](j, l) + d2g[m][j](i, l) - d2g[m][l](i, j);
          }
          const Vec v = 0.5 * (dginv * sv + ginv * dsv);
          for (int k = 0; k < n; ++k) dgamma[m](k, i, j) = v(k);
        }
    }
  } else {
    s.christoffel = christoffel(space, x);
    const double h2 = space.fd_step_outer();
    Vec xp = x, xm = x;
    for (int m = 0; m < n; ++m) {
      xp(m) = x(m) + h2;
      xm(m) = x(m) - h2;
      const Tensor3 gp = christoffel(space, xp);
      const Tensor3 gm = christoffel(space, xm);
      for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) dgamma[m](k, i, j) = (gp(k, i, j) - gm(k, i, j)) / (2.0 * h2);
      xp(m) = xm(m) = x(m);
    }
  }

  // R(∂_i,∂_j)∂_k = up(l,k,i,j) ∂_l
  const Tensor3& gam = s.christoffel;
  Tensor4 up(n);
  for (int l = 0; l < n; ++l)
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          double r = dgamma[i](l, j, k) - dgamma[j](l, i, k);
          for (int p = 0; p < n; ++p) r += gam(l, i, p) * gam(p, j, k) - gam(l, j, p) * gam(p, i, k);
          up(l, k, i, j) = r;
        }

  s.riemann_lowered = Tensor4(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          double r = 0.0;
          for (int p = 0; p < n; ++p) r += s.metric(k, p) * up(p, l, i, j);
          s.riemann_lowered(i, j, k, l) = r;
        }

  s.scalar_summary["max_abs_riemann"] = s.riemann_lowered.max_abs();
  s.scalar_summary["max_abs_christoffel"] = s.christoffel.max_abs();
  double scalar = 0.0;  // R = g^{ik} g^{jl} R_ijkl with the convention above
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) scalar += ginv(i, k) * ginv(j, l) * s.riemann_lowered(i, j, k, l);
  s.scalar_summary["scalar_curvature"] = scalar;
  return s;
}

double curvature_form(const CurvatureSample& s, const Vec& a, const Vec& b, const Vec& c, const Vec& d) {
  // g(R(a,b)c, d) = R_ijkl a^i b^j d^k c^l
  const int n = s.riemann_lowered.size();
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    if (a(i) == 0.0) continue;
    for (int j = 0; j < n; ++j) {
      if (b(j) == 0.0) continue;
      const double ab = a(i) * b(j);
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) sum += ab * d(k) * c(l) * s.riemann_lowered(i, j, k, l);
    }
  }
  return sum;
}

double sectional_curvature(const CurvatureSample& s, const Vec& u, const Vec& v) {
  const Mat& g = s.metric;
  const double q = u.dot(g * u) * v.dot(g * v) - std::pow(u.dot(g * v), 2);
  if (std::abs(q) < 1e-10) throw Error(ErrorCode::DegeneratePlane, "plane is degenerate (light-like)");
  return curvature_form(s, u, v, v, u) / q;
}

double sectional_curvature(const AmbientSpace& space, const Vec& x, const Vec& u, const Vec& v) {
  return sectional_curvature(riemann(space, x), u, v);
}

std::vector<GeodesicPoint> geodesic(const AmbientSpace& space, const Vec& p, const Vec& v, double t_end,
                                    int steps) {
  if (v.norm() == 0.0) throw Error(ErrorCode::InvalidArgument, "geodesic needs a nonzero initial velocity");
  if (steps < 16) throw Error(ErrorCode::InvalidArgument, "geodesic needs at least 16 steps");
  const int n = space.dim();
  const double dt = t_end / steps;

  auto accel = [&](const Vec& x, const Vec& vel) {
    if (!space.domain().contains(x)) throw Error(ErrorCode::LeftDomain, "geodesic left the coordinate box", space.id());
    Vec a = Vec::Zero(n);
    if (space.flat()) return a;
    const Tensor3 gam = christoffel(space, x);
    for (int k = 0; k < n; ++k) {
      double acc = 0.0;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) acc += gam(k, i, j) * vel(i) * vel(j);
      a(k) = -acc;
    }
    return a;
  };

  std::vector<GeodesicPoint> path;
  path.reserve(steps + 1);
  Vec x = p, vel = v;
  path.push_back({0.0, x, vel});
  for (int s = 0; s < steps; ++s) {
    const Vec k1x = vel, k1v = accel(x, vel);
    const Vec k2x = vel + 0.5 * dt * k1v, k2v = accel(x + 0.5 * dt * k1x, k2x);
    const Vec k3x = vel + 0.5 * dt * k2v, k3v = accel(x + 0.5 * dt * k2x, k3x);
    const Vec k4x = vel + dt * k3v, k4v = accel(x + dt * k3x, k4x);
    x += dt / 6.0 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x);
    vel += dt / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
    if (!space.domain().contains(x)) throw Error(ErrorCode::LeftDomain, "geodesic left the coordinate box", space.id());
    path.push_back({dt * (s + 1), x, vel});
  }
  return path;
}

Vec exp_map(const AmbientSpace& space, const Vec& p, const Vec& v, int steps) {
  if (v.norm() == 0.0) return p;
  return geodesic(space, p, v, 1.0, steps).back().x;
}

std::vector<Vec> tg_patch(const AmbientSpace& space, const Vec& p, const Mat& basis, double radius, int grid,
                          int steps, Exec exec) {
  const int k = static_cast<int>(basis.cols());
  if (k < 1 || grid < 2) throw Error(ErrorCode::InvalidArgument, "tg_patch needs a basis and grid >= 2");
  if (Eigen::FullPivLU<Mat>(basis).rank() < k)
    throw Error(ErrorCode::InvalidArgument, "tg_patch basis is linearly dependent");
  const Mat g = space.metric(p);
  const Mat gram = basis.transpose() * g * basis;
  const int neg = inertia_index(gram, 1e-10);
  if (neg < 0 || neg > 1) throw Error(ErrorCode::DegenerateSubspace, "restricted metric is degenerate", space.id());

  // coefficient grid in [-radius, radius]^k, clipped to the Euclidean ball
  std::vector<Vec> coeffs;
  std::vector<int> idx(k, 0);
  for (;;) {
    Vec c(k);
    for (int i = 0; i < k; ++i) c(i) = -radius + 2.0 * radius * idx[i] / (grid - 1);
    if (c.norm() <= radius * (1.0 + 1e-12)) coeffs.push_back(c);
    int d = 0;
    while (d < k && ++idx[d] == grid) idx[d++] = 0;
    if (d == k) break;
  }

  std::vector<Vec> out(coeffs.size());
  for_each_index(
      coeffs.size(), [&](size_t i) { out[i] = exp_map(space, p, basis * coeffs[i], steps); }, exec);
  return out;
}

// ---------------------------------------------------------------------------

KDifference k_difference_identity(const CurvatureSample& s, const Vec& x, const Vec& y, const Vec& z,
                                  TripleMode mode) {
  const Mat& g = s.metric;
  const double tol = 1e-8;
  const std::array<const Vec*, 3> t = {&x, &y, &z};
  for (int a = 0; a < 3; ++a)
    for (int b = a + 1; b < 3; ++b)
      if (std::abs(t[a]->dot(g * *t[b])) > tol)
        throw Error(ErrorCode::CausalCharacterMismatch, "triple is not orthogonal");
  const double nx = x.dot(g * x), ny = y.dot(g * y), nz = z.dot(g * z);
  const double want_z = mode == TripleMode::Spacelike ? 1.0 : -1.0;
  if (std::abs(nx - 1.0) > tol || std::abs(ny - 1.0) > tol || std::abs(nz - want_z) > tol)
    throw Error(ErrorCode::CausalCharacterMismatch,
                mode == TripleMode::Spacelike ? "spacelike mode needs three unit spacelike vectors"
                                              : "mixed mode needs unit spacelike x, y and unit timelike z");

  KDifference out;
  out.lhs = sectional_curvature(s, x, y) - sectional_curvature(s, x, z);
  if (mode == TripleMode::Spacelike) {
    const Vec yp = (y + z) / std::sqrt(2.0);
    const Vec zp = (y - z) / std::sqrt(2.0);
    out.rhs = 2.0 * curvature_form(s, x, yp, zp, x);
  } else {
    const Vec yp = std::sqrt(0.5) * y + std::sqrt(1.5) * z;
    const Vec zp = std::sqrt(1.5) * y + std::sqrt(0.5) * z;
    out.rhs = 2.0 / std::sqrt(3.0) * curvature_form(s, x, yp, zp, x);
  }
  return out;
}

KDifference k_difference_identity(const AmbientSpace& space, const Vec& point, const Vec& x, const Vec& y,
                                  const Vec& z, TripleMode mode) {
  return k_difference_identity(riemann(space, point), x, y, z, mode);
}

OrthoFrame random_orthonormal_frame(const Mat& metric, std::mt19937_64& rng, double max_rapidity) {
  const int n = static_cast<int>(metric.rows());
  OrthoFrame base = orthonormalize(Mat::Identity(n, n), metric);
  // reorder: spacelike columns first, timelike last
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return base.signs[a] > base.signs[b]; });
  OrthoFrame frame;
  frame.vectors.resize(n, n);
  for (int i = 0; i < n; ++i) {
    frame.vectors.col(i) = base.vectors.col(order[i]);
    frame.signs.push_back(base.signs[order[i]]);
  }
  const int spatial = static_cast<int>(std::count(frame.signs.begin(), frame.signs.end(), 1));

  // random rotation of the spacelike block
  const Mat rot = random_orthonormal(spatial, spatial, rng);
  Mat lorentz = Mat::Identity(n, n);
  lorentz.topLeftCorner(spatial, spatial) = rot;
  if (spatial < n) {
    // boost along a random spatial direction
    std::uniform_real_distribution<double> ud(-max_rapidity, max_rapidity);
    const double phi = ud(rng);
    Vec dir = random_gaussian(spatial, rng);
    dir.normalize();
    Mat boost = Mat::Identity(n, n);
    const double c = std::cosh(phi), sh = std::sinh(phi);
    boost.topLeftCorner(spatial, spatial) += (c - 1.0) * dir * dir.transpose();
    boost.block(0, spatial, spatial, 1) = sh * dir;
    boost.block(spatial, 0, 1, spatial) = sh * dir.transpose();
    boost(spatial, spatial) = c;
    lorentz = boost * lorentz;
  }
  frame.vectors = frame.vectors * lorentz;
  return frame;
}

std::vector<Vec> sample_points(const AmbientSpace& space, int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const Box& b = space.sampling_box();
  std::vector<Vec> pts;
  for (int c = 0; c < count; ++c) {
    Vec x(space.dim());
    for (int i = 0; i < space.dim(); ++i) x(i) = std::uniform_real_distribution<double>(b.lo(i), b.hi(i))(rng);
    pts.push_back(x);
  }
  return pts;
}

CartanAuditReport cartan_audit(const AmbientSpace& space, const std::vector<Vec>& points,
                               const CartanAuditOptions& options, std::uint64_t seed) {
  if (options.triples_per_point < 10) throw Error(ErrorCode::InvalidArgument, "cartan audit needs >= 10 triples per point");
  const int n = space.dim();
  if (n < 3) throw Error(ErrorCode::InvalidArgument, "cartan audit needs dimension >= 3", space.id());

  CartanAuditReport report;
  report.metric_id = space.id();
  report.seed = seed;
  report.triples_per_point = options.triples_per_point;
  const bool analytic = space.analytic();
  report.tol_codazzi = options.tol_codazzi >= 0 ? options.tol_codazzi : (analytic ? 1e-6 : 1e-3);
  report.tol_spread = options.tol_spread >= 0 ? options.tol_spread : (analytic ? 1e-6 : 1e-3);
  report.per_point.resize(points.size());

  const bool lorentzian = space.signature().index == 1;
  for_each_index(
      points.size(),
      [&](size_t pi) {
        std::mt19937_64 rng(seed + pi);
        const CurvatureSample s = riemann(space, points[pi]);
        CartanPointResult r;
        r.point = points[pi];
        r.k_min = std::numeric_limits<double>::infinity();
        r.k_max = -std::numeric_limits<double>::infinity();
        auto record_k = [&](double k) {
          r.k_min = std::min(r.k_min, k);
          r.k_max = std::max(r.k_max, k);
        };
        const int spatial = n - (lorentzian ? 1 : 0);
        for (int t = 0; t < options.triples_per_point; ++t) {
          const OrthoFrame f = random_orthonormal_frame(s.metric, rng);
          // alternate all-spacelike and mixed triples in Lorentzian signature
          const bool mixed = lorentzian && (t % 2 == 1 || spatial < 3);
          const Vec x = f.vectors.col(0), y = f.vectors.col(1);
          const Vec z = mixed ? Vec(f.vectors.col(n - 1)) : Vec(f.vectors.col(2));
          r.max_obstruction = std::max(r.max_obstruction, std::abs(curvature_form(s, x, y, z, x)));
          r.max_obstruction = std::max(r.max_obstruction, std::abs(curvature_form(s, y, z, x, y)));
          record_k(sectional_curvature(s, x, y));
          record_k(sectional_curvature(s, x, z));
        }
        const OrthoFrame base = random_orthonormal_frame(s.metric, rng, 0.0);
        for (int pl = 0; pl < options.planes_per_point; ++pl) {
          int tries = 0;
          for (;;) {
            if (++tries > options.max_retries)
              throw Error(ErrorCode::SamplingExhausted, "could not draw a nondegenerate plane", space.id());
            const Vec a = random_gaussian(n, rng), b = random_gaussian(n, rng);
            const Vec u = base.vectors * a, v = base.vectors * b;
            const double q = u.dot(s.metric * u) * v.dot(s.metric * v) - std::pow(u.dot(s.metric * v), 2);
            if (std::abs(q) < options.plane_rel_tol * a.squaredNorm() * b.squaredNorm()) {
              ++r.resamples;
              continue;
            }
            record_k(sectional_curvature(s, u, v));
            break;
          }
        }
        report.per_point[pi] = std::move(r);
      },
      options.exec);

  for (const auto& r : report.per_point) {
    report.max_codazzi_obstruction = std::max(report.max_codazzi_obstruction, r.max_obstruction);
    report.sectional_spread = std::max(report.sectional_spread, r.k_max - r.k_min);
  }
  const bool ok = report.max_codazzi_obstruction <= report.tol_codazzi && report.sectional_spread <= report.tol_spread;
  report.verdict = ok ? AuditVerdict::ConstantCurvatureCompatible : AuditVerdict::Obstructed;
  return report;
}

std::string_view verdict_name(AuditVerdict v) {
  return v == AuditVerdict::ConstantCurvatureCompatible ? "ConstantCurvatureCompatible" : "Obstructed";
}

}  // namespace umb
