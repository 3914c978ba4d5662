#include "umb/immersion.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>

#include "umb/error.hpp"

namespace umb {

std::string_view rung_name(DerivativeRung r) {
  switch (r) {
    case DerivativeRung::Analytic: return "analytic";
    case DerivativeRung::AnalyticJacobianFD: return "analytic-jacobian+fd";
    case DerivativeRung::FiniteDifference: return "finite-difference";
  }
  return "unknown";
}

OrientationRule OrientationRule::standard() { return {"standard", nullptr}; }
OrientationRule OrientationRule::inward() {
  return {"inward", [](const Vec& p, const Vec& nu) { return nu.dot(p) < 0.0; }};
}
OrientationRule OrientationRule::outward() {
  return {"outward", [](const Vec& p, const Vec& nu) { return nu.dot(p) > 0.0; }};
}
OrientationRule OrientationRule::upward() {
  return {"upward", [](const Vec&, const Vec& nu) { return nu(nu.size() - 1) > 0.0; }};
}
OrientationRule OrientationRule::future_directed() {
  return {"future-directed", [](const Vec&, const Vec& nu) { return nu(nu.size() - 1) > 0.0; }};
}

Immersion::Immersion(std::string id, AmbientSpace ambient, SmoothMap map, Box domain)
    : id_(std::move(id)), ambient_(std::move(ambient)), map_(std::move(map)), domain_(std::move(domain)) {
  if (map_.out_dim() != ambient_.dim())
    throw Error(ErrorCode::InvalidArgument, "immersion target dimension differs from the ambient", id_);
  if (map_.in_dim() < 1 || map_.in_dim() >= map_.out_dim())
    throw Error(ErrorCode::InvalidArgument, "immersion needs 1 <= m < N", id_);
}

DerivativeRung Immersion::rung() const {
  DerivativeRung best = DerivativeRung::FiniteDifference;
  if (jacobian_) best = DerivativeRung::AnalyticJacobianFD;
  if (map_.has_jet()) best = DerivativeRung::Analytic;
  if (forced_ && static_cast<int>(*forced_) > static_cast<int>(best)) best = *forced_;
  return best;
}

Mat Immersion::jacobian(const Vec& u) const {
  switch (rung()) {
    case DerivativeRung::Analytic: return map_.derivatives(u).jacobian;
    case DerivativeRung::AnalyticJacobianFD:
      if (jacobian_) return jacobian_(u);
      return map_.derivatives(u).jacobian;
    case DerivativeRung::FiniteDifference: return map_.fd_jacobian(u, fd_step_);
  }
  return {};
}

std::vector<Mat> Immersion::hessians(const Vec& u) const {
  const int m = param_dim(), n = ambient_dim();
  std::vector<Mat> hess(n, Mat::Zero(m, m));
  const DerivativeRung r = rung();
  if (r == DerivativeRung::Analytic) return map_.derivatives(u).hessian;
  const double h = fd_step_hessian_;
  if (r == DerivativeRung::AnalyticJacobianFD) {
    Vec up = u, um = u;
    for (int j = 0; j < m; ++j) {
      up(j) = u(j) + h;
      um(j) = u(j) - h;
      const Mat d = (jacobian(up) - jacobian(um)) / (2.0 * h);  // d(i, c-col) = ∂_j ∂_i x
      for (int c = 0; c < n; ++c)
        for (int i = 0; i < m; ++i) hess[c](i, j) = d(c, i);
      up(j) = um(j) = u(j);
    }
    for (auto& H : hess) H = 0.5 * (H + H.transpose());
    return hess;
  }
  const Vec x0 = point(u);
  for (int i = 0; i < m; ++i)
    for (int j = i; j < m; ++j) {
      Vec d;
      if (i == j) {
        Vec up = u, um = u;
        up(i) += h;
        um(i) -= h;
        d = (point(up) - 2.0 * x0 + point(um)) / (h * h);
      } else {
        Vec pp = u, pm = u, mp = u, mm = u;
        pp(i) += h, pp(j) += h;
        pm(i) += h, pm(j) -= h;
        mp(i) -= h, mp(j) += h;
        mm(i) -= h, mm(j) -= h;
        d = (point(pp) - point(pm) - point(mp) + point(mm)) / (4.0 * h * h);
      }
      for (int c = 0; c < n; ++c) hess[c](i, j) = hess[c](j, i) = d(c);
    }
  return hess;
}

Frames frames(const Immersion& im, const Vec& u) {
  const int m = im.param_dim();
  Frames f;
  f.p = im.point(u);
  f.jacobian = im.jacobian(u);
  f.metric = im.ambient().metric(f.p);

  Eigen::JacobiSVD<Mat> svd(f.jacobian);
  const auto& sv = svd.singularValues();
  if (!(sv(m - 1) > 1e-10 * std::max(1.0, sv(0))))
    throw Error(ErrorCode::RankDeficient, "Jacobian is rank deficient", im.id());

  f.induced_metric = f.jacobian.transpose() * f.metric * f.jacobian;
  const int neg = inertia_index(f.induced_metric, 1e-12);
  if (neg < 0) throw Error(ErrorCode::DegenerateInducedMetric, "induced metric is degenerate", im.id());
  if (neg > 0 && !im.allow_timelike())
    throw Error(ErrorCode::DegenerateInducedMetric, "induced metric is not positive definite", im.id());

  f.tangent = orthonormalize(f.jacobian, f.metric, neg > 0).vectors;
  f.coords_to_frame = f.jacobian.completeOrthogonalDecomposition().solve(f.tangent);

  Mat span = f.jacobian;
  if (im.quadric()) {
    span.conservativeResize(Eigen::NoChange, m + 1);
    span.col(m) = f.p;
  }
  OrthoFrame nf = orthogonal_complement(span, f.metric);
  f.normal = nf.vectors;
  f.normal_signs = nf.signs;
  if (f.normal.cols() == 1) {
    const Vec nu = f.normal.col(0);
    bool keep = true;
    if (im.orientation().accept) {
      keep = im.orientation().accept(f.p, nu);
    } else {
      Mat full(f.p.size(), m + 1);
      full << f.jacobian, nu;
      if (im.quadric()) {
        full.conservativeResize(Eigen::NoChange, m + 2);
        full.col(m + 1) = f.p;
      }
      if (full.cols() == full.rows()) keep = full.determinant() > 0.0;
    }
    if (!keep) f.normal.col(0) = -nu;
  }
  return f;
}

std::vector<Mat> second_fundamental_form(const Immersion& im, const Vec& u, const Frames& f) {
  const int m = im.param_dim(), N = im.ambient_dim();
  const std::vector<Mat> hess = im.hessians(u);
  // ∇̄_{∂_i} ∂_j = x_ij + Γ̄(x_i, x_j)
  std::vector<Vec> cov(m * m, Vec::Zero(N));
  Tensor3 gamma;
  const bool curved = !im.ambient().flat();
  if (curved) gamma = christoffel(im.ambient(), f.p);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      Vec v(N);
      for (int c = 0; c < N; ++c) v(c) = hess[c](i, j);
      if (curved) {
        for (int c = 0; c < N; ++c) {
          double corr = 0.0;
          for (int a = 0; a < N; ++a)
            for (int b = 0; b < N; ++b) corr += gamma(c, a, b) * f.jacobian(a, i) * f.jacobian(b, j);
          v(c) += corr;
        }
      }
      cov[i * m + j] = v;
    }
  const int n = static_cast<int>(f.normal.cols());
  std::vector<Mat> out(n, Mat::Zero(m, m));
  for (int a = 0; a < n; ++a) {
    const Vec gnu = f.metric * f.normal.col(a);
    Mat coords(m, m);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) coords(i, j) = f.normal_signs[a] * gnu.dot(cov[i * m + j]);
    coords = 0.5 * (coords + coords.transpose());
    out[a] = f.coords_to_frame.transpose() * coords * f.coords_to_frame;
  }
  return out;
}

std::vector<Mat> second_fundamental_form(const Immersion& im, const Vec& u) {
  return second_fundamental_form(im, u, frames(im, u));
}

Vec mean_of(const std::vector<Mat>& second_form) {
  Vec h(second_form.size());
  for (size_t a = 0; a < second_form.size(); ++a) h(a) = second_form[a].trace() / second_form[a].rows();
  return h;
}

namespace {

const std::vector<Vec>& sphere_design(int m) {
  // 32 fixed directions per dimension, generated once from a fixed seed
  static std::vector<std::vector<Vec>> cache(kMaxVars + 1);
  static std::once_flag flags[kMaxVars + 1];
  std::call_once(flags[m], [m] {
    std::mt19937_64 rng(0x5eed);
    for (int i = 0; i < 32; ++i) cache[m].push_back(random_gaussian(m, rng).normalized());
  });
  return cache[m];
}

}  // namespace

double umbilicity_defect(const std::vector<Mat>& second_form) {
  if (second_form.empty()) return 0.0;
  const int m = static_cast<int>(second_form[0].rows());
  const Vec h = mean_of(second_form);
  if (second_form.size() == 1) {
    Eigen::SelfAdjointEigenSolver<Mat> es(second_form[0]);
    const Vec k = es.eigenvalues();
    return std::max(k.maxCoeff() - h(0), h(0) - k.minCoeff());
  }
  std::vector<Vec> dirs;
  for (const Mat& b : second_form) {
    Eigen::SelfAdjointEigenSolver<Mat> es(b);
    for (int i = 0; i < m; ++i) dirs.emplace_back(es.eigenvectors().col(i));
  }
  if (m <= kMaxVars) {
    const auto& design = sphere_design(m);
    dirs.insert(dirs.end(), design.begin(), design.end());
  }
  double worst = 0.0;
  for (const Vec& x : dirs) {
    double sq = 0.0;
    for (size_t a = 0; a < second_form.size(); ++a) sq += std::pow(x.dot(second_form[a] * x) - h(a), 2);
    worst = std::max(worst, std::sqrt(sq));
  }
  return worst;
}

ShapeReport shape_report(const Immersion& im, const Vec& u) {
  const Frames f = frames(im, u);
  const int m = im.param_dim();
  ShapeReport r;
  r.u = u;
  r.p = f.p;
  r.tangent_frame = f.tangent;
  r.normal_frame = f.normal;
  r.normal_signs = f.normal_signs;
  r.first_form = Mat::Identity(m, m);
  r.first_form_coords = f.induced_metric;
  r.second_form = second_fundamental_form(im, u, f);
  r.mean_curvature = mean_of(r.second_form);
  r.mean_curvature_vector = f.normal * r.mean_curvature;
  r.rung = im.rung();
  r.orientation = f.normal.cols() == 1 ? im.orientation().name : "none";

  // principal data: the hypersurface shape operator, or for higher
  // codimension the one along H (first normal when H vanishes)
  Mat a;
  if (r.second_form.size() == 1) {
    a = r.second_form[0];
    r.shape_operator = a;
  } else {
    const double hn = r.mean_curvature.norm();
    a = Mat::Zero(m, m);
    if (hn > 1e-12) {
      for (size_t k = 0; k < r.second_form.size(); ++k) a += r.mean_curvature(k) / hn * r.second_form[k];
    } else {
      a = r.second_form[0];
    }
  }
  Eigen::SelfAdjointEigenSolver<Mat> es(a);
  r.principal_curvatures = es.eigenvalues();
  r.principal_directions = f.tangent * es.eigenvectors();
  r.umbilicity_defect = umbilicity_defect(r.second_form);
  return r;
}

double default_umbilic_tol(DerivativeRung r) { return r == DerivativeRung::Analytic ? 1e-6 : 1e-4; }

bool is_umbilic(const Immersion& im, const Vec& u, double tol) {
  if (tol < 0) tol = default_umbilic_tol(im.rung());
  return shape_report(im, u).umbilicity_defect <= tol;
}

Vec normal_curvature(const Immersion& im, const Vec& u, const Vec& v) {
  const Frames f = frames(im, u);
  const double nrm = v.dot(f.metric * v);
  if (std::abs(nrm - 1.0) > 1e-10) throw Error(ErrorCode::NonUnitDirection, "direction is not a unit vector", im.id());
  const Vec a = f.tangent.transpose() * f.metric * v;  // frame is orthonormal and spacelike
  if ((f.tangent * a - v).norm() > 1e-8 * std::max(1.0, v.norm()))
    throw Error(ErrorCode::NonUnitDirection, "direction is not tangent to the immersion", im.id());
  const std::vector<Mat> ii = second_fundamental_form(im, u, f);
  Vec out = Vec::Zero(f.p.size());
  for (size_t k = 0; k < ii.size(); ++k) out += a.dot(ii[k] * a) * f.normal.col(k);
  return out;
}

}  // namespace umb
