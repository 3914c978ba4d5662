#pragma once

// Brute-force best-fit residuals for planar point sets, used to set and check
// the fit discrimination thresholds. Grid search over the center with the
// optimal radius solved in closed form, refined by zooming in.

#include <cmath>
#include <limits>
#include <vector>

#include "umb/linalg.hpp"

namespace umb::test {

// Planar coordinates of points lying in a 2-plane (Euclidean orthonormal basis
// of the plane through their mean).
inline std::vector<Eigen::Vector2d> plane_coordinates(const std::vector<Vec>& pts, Mat* basis_out = nullptr) {
  Vec mean = Vec::Zero(pts[0].size());
  for (const auto& p : pts) mean += p;
  mean /= double(pts.size());
  Mat a(pts[0].size(), pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) a.col(i) = pts[i] - mean;
  Eigen::JacobiSVD<Mat> svd(a, Eigen::ComputeThinU);
  const Mat basis = svd.matrixU().leftCols(2);
  if (basis_out) *basis_out = basis;
  std::vector<Eigen::Vector2d> out;
  for (const auto& p : pts) out.emplace_back(basis.transpose() * (p - mean));
  return out;
}

template <class Cost>
double zoom_search(Eigen::Vector2d center, double half_width, Cost cost) {
  double best = std::numeric_limits<double>::infinity();
  for (int round = 0; round < 40; ++round) {
    Eigen::Vector2d best_c = center;
    for (int i = -20; i <= 20; ++i)
      for (int j = -20; j <= 20; ++j) {
        const Eigen::Vector2d c = center + half_width / 20.0 * Eigen::Vector2d(i, j);
        const double v = cost(c);
        if (v < best) {
          best = v;
          best_c = c;
        }
      }
    center = best_c;
    half_width *= 0.25;
  }
  return best;
}

// min over circles of rms(|p - c| - r).
inline double best_circle_rms(const std::vector<Eigen::Vector2d>& pts, double search_half_width) {
  return zoom_search(Eigen::Vector2d::Zero(), search_half_width, [&](const Eigen::Vector2d& c) {
    double mean = 0.0;
    for (const auto& p : pts) mean += (p - c).norm();
    mean /= double(pts.size());
    double s = 0.0;
    for (const auto& p : pts) s += std::pow((p - c).norm() - mean, 2);
    return std::sqrt(s / double(pts.size()));
  });
}

// Points (x, t) in the Lorentz plane: min over centers and r of rms(|q + r^2|),
// q = (x-cx)^2 - (t-ct)^2, restricted to r^2 > 0.
inline double best_hyperbola_rms(const std::vector<Eigen::Vector2d>& pts, Eigen::Vector2d start,
                                 double search_half_width) {
  return zoom_search(start, search_half_width, [&](const Eigen::Vector2d& c) {
    std::vector<double> q;
    double mean = 0.0;
    for (const auto& p : pts) {
      const Eigen::Vector2d d = p - c;
      q.push_back(d(0) * d(0) - d(1) * d(1));
      mean += q.back();
    }
    mean /= double(q.size());
    if (mean >= 0) return std::numeric_limits<double>::infinity();
    double s = 0.0;
    for (double v : q) s += (v - mean) * (v - mean);
    return std::sqrt(s / double(q.size()));
  });
}

}  // namespace umb::test
