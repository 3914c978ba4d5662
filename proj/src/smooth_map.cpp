#include "umb/smooth_map.hpp"

#include "umb/error.hpp"

namespace umb {

Vec SmoothMap::operator()(const Vec& x) const {
  Vec y(out_dim_);
  value_(x.data(), y.data());
  return y;
}

MapDerivatives SmoothMap::derivatives(const Vec& x) const {
  if (!jet_) throw Error(ErrorCode::InvalidArgument, "map has no jet evaluator");
  if (in_dim_ > kMaxVars) throw Error(ErrorCode::InvalidArgument, "too many variables for jet evaluation");
  std::vector<Jet> in(in_dim_), out(out_dim_);
  for (int i = 0; i < in_dim_; ++i) in[i] = Jet::variable(x(i), i, in_dim_);
  jet_(in.data(), out.data());

  MapDerivatives d;
  d.value.resize(out_dim_);
  d.jacobian = Mat::Zero(out_dim_, in_dim_);
  d.hessian.assign(out_dim_, Mat::Zero(in_dim_, in_dim_));
  for (int k = 0; k < out_dim_; ++k) {
    const Jet& j = out[k];
    d.value(k) = j.v;
    for (int a = 0; a < j.n; ++a) {
      d.jacobian(k, a) = j.grad(a);
      for (int b = 0; b < j.n; ++b) d.hessian[k](a, b) = j.hess(a, b);
    }
  }
  return d;
}

Mat SmoothMap::fd_jacobian(const Vec& x, double h) const {
  Mat jac(out_dim_, in_dim_);
  Vec xp = x, xm = x;
  for (int i = 0; i < in_dim_; ++i) {
    xp(i) = x(i) + h;
    xm(i) = x(i) - h;
    jac.col(i) = ((*this)(xp) - (*this)(xm)) / (2.0 * h);
    xp(i) = xm(i) = x(i);
  }
  return jac;
}

}  // namespace umb
