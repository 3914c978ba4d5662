#pragma once

#include <functional>
#include <vector>

#include "umb/jet.hpp"
#include "umb/linalg.hpp"

namespace umb {

// Value and exact derivatives of a map R^in -> R^out at one point.
struct MapDerivatives {
  Vec value;
  Mat jacobian;            // out x in
  std::vector<Mat> hessian;  // one in x in matrix per output component
};

// Type-erased smooth map R^in -> R^out. The jet evaluator is optional; when it
// is missing, callers fall back to finite differences.
class SmoothMap {
 public:
  using ValueFn = std::function<void(const double*, double*)>;
  using JetFn = std::function<void(const Jet*, Jet*)>;

  SmoothMap() = default;
  SmoothMap(int in_dim, int out_dim, ValueFn value, JetFn jet = {})
      : in_dim_(in_dim), out_dim_(out_dim), value_(std::move(value)), jet_(std::move(jet)) {}

  // Builds both evaluators from one generic callable f(const T* in, T* out).
  template <class F>
  static SmoothMap generic(int in_dim, int out_dim, F f) {
    return SmoothMap(
        in_dim, out_dim, [f](const double* x, double* y) { f(x, y); },
        [f](const Jet* x, Jet* y) { f(x, y); });
  }

  int in_dim() const { return in_dim_; }
  int out_dim() const { return out_dim_; }
  bool has_jet() const { return static_cast<bool>(jet_); }
  explicit operator bool() const { return static_cast<bool>(value_); }

  Vec operator()(const Vec& x) const;
  MapDerivatives derivatives(const Vec& x) const;

  // Central-difference Jacobian with step h (used when no jet is available).
  Mat fd_jacobian(const Vec& x, double h) const;

 private:
  int in_dim_ = 0;
  int out_dim_ = 0;
  ValueFn value_;
  JetFn jet_;
};

}  // namespace umb
