#pragma once

#include <Eigen/Dense>
#include <random>
#include <vector>

namespace umb {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// Vectors whose squared norm falls below this after projection are rejected
// during orthonormalization in indefinite metrics.
inline constexpr double kNullNormTol = 1e-10;

// Result of Gram-Schmidt in a (possibly indefinite) metric G: columns are
// G-orthonormal, signs[i] = G(col_i, col_i) in {+1, -1}.
struct OrthoFrame {
  Mat vectors;
  std::vector<int> signs;
};

// Gram-Schmidt with causal-character pivoting: at each step the remaining
// candidate with the largest |G(v,v)| is taken, normalized by |G(v,v)|^{1/2}.
// Throws DegenerateSubspace when a candidate stays within kNullNormTol of the
// light cone.
// With pivot = false the input order is kept (classic Gram-Schmidt), which is
// what tangent frames use.
OrthoFrame orthonormalize(const Mat& vectors, const Mat& metric, bool pivot = true);

// G-orthonormal basis of the G-orthogonal complement of span(vectors).
OrthoFrame orthogonal_complement(const Mat& vectors, const Mat& metric);

// Euclidean orthonormal basis of the null space of A (columns).
Mat null_space(const Mat& a, double rel_tol = 1e-12);

// Number of negative eigenvalues of a symmetric matrix; -1 if any eigenvalue
// has magnitude below tol.
int inertia_index(const Mat& sym, double tol = 1e-12);

// Uniformly random orthonormal k-frame in R^m (columns).
Mat random_orthonormal(int m, int k, std::mt19937_64& rng);

Vec random_gaussian(int n, std::mt19937_64& rng);

}  // namespace umb
