#include "umb/linalg.hpp"

#include <cmath>

#include "umb/error.hpp"

namespace umb {

OrthoFrame orthonormalize(const Mat& vectors, const Mat& metric, bool pivot) {
  const int k = static_cast<int>(vectors.cols());
  OrthoFrame out;
  out.vectors.resize(vectors.rows(), k);
  out.signs.reserve(k);
  std::vector<Vec> pending;
  for (int j = 0; j < k; ++j) pending.emplace_back(vectors.col(j));

  for (int step = 0; step < k; ++step) {
    // project the remaining candidates against what has been accepted
    for (auto& v : pending) {
      for (int i = 0; i < step; ++i) {
        const Vec e = out.vectors.col(i);
        v -= out.signs[i] * (e.dot(metric * v)) * e;
      }
    }
    int best = -1;
    double best_norm = -1.0;
    const int candidates = pivot ? static_cast<int>(pending.size()) : 1;
    for (int c = 0; c < candidates; ++c) {
      const double q = std::abs(pending[c].dot(metric * pending[c]));
      if (q > best_norm) {
        best_norm = q;
        best = c;
      }
    }
    if (best_norm < kNullNormTol)
      throw Error(ErrorCode::DegenerateSubspace, "vector set spans a degenerate subspace");
    Vec v = pending[best];
    pending.erase(pending.begin() + best);
    const double q = v.dot(metric * v);
    v /= std::sqrt(std::abs(q));
    // one reorthogonalization pass
    for (int i = 0; i < step; ++i) {
      const Vec e = out.vectors.col(i);
      v -= out.signs[i] * (e.dot(metric * v)) * e;
    }
    const double q2 = v.dot(metric * v);
    v /= std::sqrt(std::abs(q2));
    out.vectors.col(step) = v;
    out.signs.push_back(q2 > 0 ? 1 : -1);
  }
  return out;
}

OrthoFrame orthogonal_complement(const Mat& vectors, const Mat& metric) {
  // w is G-orthogonal to span(V) iff (G V)^T w = 0
  const Mat constraints = (metric * vectors).transpose();
  const Mat basis = null_space(constraints);
  return orthonormalize(basis, metric);
}

Mat null_space(const Mat& a, double rel_tol) {
  const int n = static_cast<int>(a.cols());
  if (a.rows() == 0) return Mat::Identity(n, n);
  Eigen::JacobiSVD<Mat> svd(a, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  const double smax = s.size() > 0 ? s(0) : 0.0;
  int rank = 0;
  for (int i = 0; i < s.size(); ++i)
    if (s(i) > rel_tol * std::max(1.0, smax)) ++rank;
  return svd.matrixV().rightCols(n - rank);
}

int inertia_index(const Mat& sym, double tol) {
  Eigen::SelfAdjointEigenSolver<Mat> es(sym, Eigen::EigenvaluesOnly);
  int neg = 0;
  for (int i = 0; i < es.eigenvalues().size(); ++i) {
    const double ev = es.eigenvalues()(i);
    if (std::abs(ev) < tol) return -1;
    if (ev < 0) ++neg;
  }
  return neg;
}

Vec random_gaussian(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> nd(0.0, 1.0);
  Vec v(n);
  for (int i = 0; i < n; ++i) v(i) = nd(rng);
  return v;
}

Mat random_orthonormal(int m, int k, std::mt19937_64& rng) {
  Mat a(m, k);
  for (int j = 0; j < k; ++j) a.col(j) = random_gaussian(m, rng);
  Eigen::HouseholderQR<Mat> qr(a);
  Mat q = qr.householderQ() * Mat::Identity(m, k);
  // fix signs so the distribution is Haar
  const Mat r = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
  for (int j = 0; j < k; ++j)
    if (r(j, j) < 0) q.col(j) = -q.col(j);
  return q;
}

}  // namespace umb
