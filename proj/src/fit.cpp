#include "umb/fit.hpp"

#include <cmath>

#include "umb/error.hpp"

namespace umb {

namespace {

struct Hull {
  Vec origin;
  Mat basis;  // N x d, Euclidean orthonormal
  std::vector<Vec> coords;
};

Hull affine_hull(const std::vector<Vec>& points) {
  if (points.size() < 5) throw Error(ErrorCode::DegenerateFit, "need at least 5 points");
  const int n = static_cast<int>(points[0].size());
  Vec mean = Vec::Zero(n);
  for (const Vec& p : points) mean += p;
  mean /= static_cast<double>(points.size());
  Mat centered(n, static_cast<int>(points.size()));
  for (size_t i = 0; i < points.size(); ++i) centered.col(static_cast<int>(i)) = points[i] - mean;
  Eigen::JacobiSVD<Mat> svd(centered, Eigen::ComputeThinU);
  const Vec& sv = svd.singularValues();
  const double scale = std::max(sv(0), 1e-300);
  int d = 0;
  while (d < sv.size() && sv(d) > 1e-9 * scale) ++d;
  Hull h{mean, svd.matrixU().leftCols(d), {}};
  for (const Vec& p : points) h.coords.push_back(h.basis.transpose() * (p - mean));
  return h;
}

double rms(const Vec& r) { return std::sqrt(r.squaredNorm() / static_cast<double>(r.size())); }

}  // namespace

QuadricFit fit_sphere(const std::vector<Vec>& points) {
  const Hull h = affine_hull(points);
  const int d = static_cast<int>(h.basis.cols());
  if (d < 2) throw Error(ErrorCode::DegenerateFit, "points are collinear");
  const int k = static_cast<int>(h.coords.size());

  // |y|^2 = 2 c.y + e with e = r^2 - |c|^2
  Mat a(k, d + 1);
  Vec b(k);
  for (int i = 0; i < k; ++i) {
    a.row(i).head(d) = 2.0 * h.coords[i].transpose();
    a(i, d) = 1.0;
    b(i) = h.coords[i].squaredNorm();
  }
  const Vec sol = a.colPivHouseholderQr().solve(b);
  Vec c = sol.head(d);
  double r2 = sol(d) + c.squaredNorm();
  if (!(r2 > 0.0) || std::sqrt(r2) > 1e6) throw Error(ErrorCode::DegenerateFit, "radius estimate out of range");
  double r = std::sqrt(r2);

  for (int iter = 0; iter < 20; ++iter) {
    Mat jac(k, d + 1);
    Vec res(k);
    for (int i = 0; i < k; ++i) {
      const Vec diff = h.coords[i] - c;
      const double dist = diff.norm();
      res(i) = dist - r;
      jac.row(i).head(d) = -diff.transpose() / dist;
      jac(i, d) = -1.0;
    }
    const Vec step = jac.colPivHouseholderQr().solve(-res);
    c += step.head(d);
    r += step(d);
    if (step.norm() < 1e-15 * (1.0 + r)) break;
  }
  if (!(r > 0.0) || r > 1e6) throw Error(ErrorCode::DegenerateFit, "radius estimate out of range");

  Vec res(k);
  for (int i = 0; i < k; ++i) res(i) = (h.coords[i] - c).norm() - r;
  return {h.origin + h.basis * c, r, rms(res), d};
}

QuadricFit fit_hyperbolic(const std::vector<Vec>& points) {
  const Hull h = affine_hull(points);
  const int d = static_cast<int>(h.basis.cols());
  if (d < 2) throw Error(ErrorCode::DegenerateFit, "points are collinear");
  const int n = static_cast<int>(h.origin.size());
  Mat eta = Mat::Identity(n, n);
  eta(n - 1, n - 1) = -1.0;
  // Lorentz form pulled back to hull coordinates
  const Mat m = h.basis.transpose() * eta * h.basis;
  if (inertia_index(m, 1e-12) != 1)
    throw Error(ErrorCode::DegenerateFit, "affine hull is not a Lorentzian subspace");
  const int k = static_cast<int>(h.coords.size());

  // <y,y> = 2<c,y> + e with e = -<c,c> - r^2
  Mat a(k, d + 1);
  Vec b(k);
  for (int i = 0; i < k; ++i) {
    a.row(i).head(d) = 2.0 * (m * h.coords[i]).transpose();
    a(i, d) = 1.0;
    b(i) = h.coords[i].dot(m * h.coords[i]);
  }
  const Vec sol = a.colPivHouseholderQr().solve(b);
  Vec c = sol.head(d);
  double r2 = -sol(d) - c.dot(m * c);
  if (!(r2 > 0.0))
    throw Error(ErrorCode::WrongCausalType, "best-fit quadric is a de Sitter type sheet");
  double r = std::sqrt(r2);
  if (r > 1e6) throw Error(ErrorCode::DegenerateFit, "radius estimate out of range");

  // The sheet must hold all samples: y - c timelike with one time orientation.
  auto time_sign = [&](const Vec& y) { return (h.basis * (y - c))(n - 1) > 0 ? 1 : -1; };
  const int side = time_sign(h.coords[0]);
  for (const Vec& y : h.coords) {
    const Vec diff = y - c;
    if (diff.dot(m * diff) >= 0.0 || time_sign(y) != side)
      throw Error(ErrorCode::DegenerateFit, "samples do not lie on one hyperboloid sheet");
  }

  for (int iter = 0; iter < 20; ++iter) {
    Mat jac(k, d + 1);
    Vec res(k);
    for (int i = 0; i < k; ++i) {
      const Vec diff = h.coords[i] - c;
      const double tau = std::sqrt(-diff.dot(m * diff));
      res(i) = tau - r;
      jac.row(i).head(d) = (m * diff).transpose() / tau;
      jac(i, d) = -1.0;
    }
    const Vec step = jac.colPivHouseholderQr().solve(-res);
    c += step.head(d);
    r += step(d);
    if (step.norm() < 1e-15 * (1.0 + r)) break;
  }
  if (!(r > 0.0) || r > 1e6) throw Error(ErrorCode::DegenerateFit, "radius estimate out of range");

  Vec res(k);
  for (int i = 0; i < k; ++i) {
    const Vec diff = h.coords[i] - c;
    res(i) = std::abs(diff.dot(m * diff) + r * r);
  }
  return {h.origin + h.basis * c, r, rms(res), d};
}

}  // namespace umb
