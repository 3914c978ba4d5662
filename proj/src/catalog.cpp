#include "umb/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <memory>
#include <numbers>
#include <sstream>

#include "json.hpp"

#include "umb/error.hpp"
#include "umb/expression.hpp"

namespace umb {

using json = nlohmann::json;

std::string_view ground_truth_name(GroundTruth g) {
  switch (g) {
    case GroundTruth::UmbilicEverywhere: return "umbilic-everywhere";
    case GroundTruth::UmbilicPoints: return "umbilic-points";
    case GroundTruth::NowhereUmbilic: return "nowhere-umbilic";
    case GroundTruth::Unknown: return "unknown";
    case GroundTruth::ConstantCurvature: return "constant-curvature";
    case GroundTruth::Obstructed: return "obstructed";
  }
  return "unknown";
}

std::optional<bool> CatalogEntry::umbilic_at(const Vec& u, double tol) const {
  switch (ground_truth) {
    case GroundTruth::UmbilicEverywhere: return true;
    case GroundTruth::NowhereUmbilic: return false;
    case GroundTruth::UmbilicPoints:
      for (const Vec& q : umbilic_points)
        if ((q - u).norm() <= tol * std::max(1.0, q.norm())) return true;
      return false;
    default: return std::nullopt;
  }
}

namespace {

// ---------------------------------------------------------------- helpers

struct ParsedId {
  std::string name;
  std::string rest;
};

ParsedId split_id(const std::string& id) {
  const auto colon = id.find(':');
  if (colon == std::string::npos) return {id, ""};
  return {id.substr(0, colon), id.substr(colon + 1)};
}

std::vector<double> parse_numbers(const std::string& id, const std::string& rest) {
  std::vector<double> out;
  if (rest.empty()) return out;
  std::stringstream ss(rest);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      size_t used = 0;
      const double v = std::stod(item, &used);
      if (used != item.size() || !std::isfinite(v)) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::exception&) {
      throw Error(ErrorCode::MalformedParameters, "cannot parse parameter '" + item + "'", id);
    }
  }
  return out;
}

void require(bool cond, const std::string& id, const std::string& what) {
  if (!cond) throw Error(ErrorCode::MalformedParameters, what, id);
}

int dimension_arg(const std::string& id, const std::vector<double>& p, size_t index, int fallback, int lo) {
  if (p.size() <= index) return fallback;
  const double d = p[index];
  require(d == std::floor(d) && d >= lo && d <= kMaxVars, id, "dimension out of range");
  return static_cast<int>(d);
}

// Metric R^N -> R^{N*N} as g = conformal(x) * eta with eta = diag(1,..,1,-1 if lorentzian).
template <class F>
SmoothMap conformal_metric(int n, bool lorentzian, F factor) {
  return SmoothMap::generic(n, n * n, [n, lorentzian, factor](const auto* x, auto* out) {
    using T = std::remove_cv_t<std::remove_reference_t<decltype(x[0])>>;
    const T f = factor(x);
    for (int i = 0; i < n * n; ++i) out[i] = T(0.0);
    for (int i = 0; i < n; ++i) out[i * n + i] = (lorentzian && i == n - 1) ? -f : f;
  });
}

AmbientSpace flat_space(const std::string& id, int n, bool lorentzian) {
  auto g = conformal_metric(n, lorentzian, [](const auto* x) {
    using T = std::remove_cv_t<std::remove_reference_t<decltype(x[0])>>;
    return T(1.0);
  });
  return AmbientSpace(id, {n, lorentzian ? 1 : 0}, std::move(g), Box::cube(n, 1e3), true);
}

// Principal curvatures of the level set F = 0 of a flat ambient at p, with
// the unit normal signed by `rule`. Independent of any parametrization.
Vec implicit_curvatures(const SmoothMap& f, const Mat& metric, const Vec& p, const OrientationRule& rule) {
  const MapDerivatives d = f.derivatives(p);
  const Vec grad = d.jacobian.row(0).transpose();
  const Mat& hess = d.hessian[0];
  const Mat ginv = metric.inverse();
  const Vec raw = ginv * grad;
  const double q = raw.dot(metric * raw);
  const double eps = q > 0 ? 1.0 : -1.0;
  const double len = std::sqrt(std::abs(q));
  Vec nu = raw / len;
  double sigma = 1.0;
  if (rule.accept && !rule.accept(p, nu)) sigma = -1.0;
  Mat nmat(p.size(), 1);
  nmat.col(0) = nu;
  const Mat t = orthogonal_complement(nmat, metric).vectors;
  const Mat b = -eps * sigma * (t.transpose() * hess * t) / len;
  return Eigen::SelfAdjointEigenSolver<Mat>(b).eigenvalues();
}

template <class F>
SmoothMap scalar_field(int n, F f) {
  return SmoothMap::generic(n, 1, [f](const auto* x, auto* out) { out[0] = f(x); });
}

// Stereographic chart of the unit sphere S^m from the north pole (last axis),
// scaled per axis: x_i = a_i * s_i(u).
SmoothMap scaled_stereographic(const std::vector<double>& axes) {
  const int k = static_cast<int>(axes.size());
  const int m = k - 1;
  return SmoothMap::generic(m, k, [axes, m](const auto* u, auto* out) {
    using T = std::remove_cv_t<std::remove_reference_t<decltype(u[0])>>;
    T s(0.0);
    for (int i = 0; i < m; ++i) s += u[i] * u[i];
    const T inv = T(1.0) / (s + 1.0);
    for (int i = 0; i < m; ++i) out[i] = axes[i] * (2.0 * u[i] * inv);
    out[m] = axes[m] * ((s - 1.0) * inv);
  });
}

std::optional<Vec> inverse_stereographic(const std::vector<double>& axes, const Vec& x) {
  const int k = static_cast<int>(axes.size());
  Vec y(k);
  for (int i = 0; i < k; ++i) y(i) = x(i) / axes[i];
  if (std::abs(1.0 - y(k - 1)) < 1e-12) return std::nullopt;  // north pole is outside the chart
  return Vec(y.head(k - 1) / (1.0 - y(k - 1)));
}

// Umbilic points of x^T D x = 1 with D = diag(1/a_i^2). The shape operator is
// proportional to D restricted to the tangent space, so by eigenvalue
// interlacing umbilics need all interior eigenvalues equal.
std::vector<Vec> ellipsoid_umbilics(const std::vector<double>& axes, bool* everywhere) {
  const int k = static_cast<int>(axes.size());
  std::vector<int> order(k);
  for (int i = 0; i < k; ++i) order[i] = i;
  std::vector<double> lam(k);
  for (int i = 0; i < k; ++i) lam[i] = 1.0 / (axes[i] * axes[i]);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return lam[a] < lam[b]; });
  const double lo = lam[order.front()], hi = lam[order.back()];
  *everywhere = false;
  if (hi - lo <= 1e-14 * hi) {
    *everywhere = true;
    return {};
  }
  const double mid = lam[order[1]];
  for (int i = 1; i + 1 < k; ++i)
    if (std::abs(lam[order[i]] - mid) > 1e-14 * hi) return {};
  std::vector<Vec> pts;
  const int e_lo = order.front(), e_hi = order.back();
  if (k == 2 || std::abs(mid - hi) <= 1e-14 * hi) {
    // ends of the axis with the smallest eigenvalue (longest axis)
    for (double s : {1.0, -1.0}) {
      Vec x = Vec::Zero(k);
      x(e_lo) = s * axes[e_lo];
      pts.push_back(x);
    }
    return pts;
  }
  if (std::abs(mid - lo) <= 1e-14 * hi) {
    for (double s : {1.0, -1.0}) {
      Vec x = Vec::Zero(k);
      x(e_hi) = s * axes[e_hi];
      pts.push_back(x);
    }
    return pts;
  }
  // w = (cos, sin) in the (e_lo, e_hi) plane with w^T D w = mid; the normal is
  // perpendicular to w there and x is proportional to D^{-1} n.
  const double c2 = (hi - mid) / (hi - lo);
  const double c = std::sqrt(c2), s = std::sqrt(1.0 - c2);
  for (double sc : {1.0, -1.0})
    for (double ss : {1.0, -1.0}) {
      const double n_lo = -ss * s, n_hi = sc * c;
      const double xl = n_lo / lo, xh = n_hi / hi;
      const double scale = 1.0 / std::sqrt(lo * xl * xl + hi * xh * xh);
      Vec x = Vec::Zero(k);
      x(e_lo) = scale * xl;
      x(e_hi) = scale * xh;
      pts.push_back(x);
    }
  return pts;
}

std::shared_ptr<std::vector<Expression>> parse_all(const std::vector<std::string>& texts,
                                                   const std::map<std::string, int>& vars) {
  auto out = std::make_shared<std::vector<Expression>>();
  for (const auto& t : texts) out->push_back(Expression::parse(t, vars));
  return out;
}

SmoothMap expression_map(int in_dim, std::shared_ptr<std::vector<Expression>> exprs) {
  const int out_dim = static_cast<int>(exprs->size());
  return SmoothMap::generic(in_dim, out_dim, [exprs](const auto* x, auto* out) {
    for (size_t c = 0; c < exprs->size(); ++c) out[c] = (*exprs)[c].eval(x);
  });
}

std::map<std::string, int> graph_variables(int max_dim) {
  auto vars = Expression::indexed_names("x", max_dim);
  vars["x"] = 0;
  vars["y"] = 1;
  return vars;
}

// ---------------------------------------------------------------- ambients

CatalogEntry make_ambient(const std::string& id) {
  const auto [name, rest] = split_id(id);
  CatalogEntry e;
  e.id = id;
  e.kind = EntryKind::Ambient;
  e.ground_truth = GroundTruth::ConstantCurvature;

  if (name == "euclidean" || name == "minkowski") {
    const auto p = parse_numbers(id, rest);
    require(p.size() == 1, id, "expected a dimension");
    const int n = dimension_arg(id, p, 0, 0, 2);
    e.parameters = p;
    e.ambient = flat_space(id, n, name == "minkowski");
    e.constant_curvature = 0.0;
    return e;
  }
  if (name == "sphere") {
    const auto p = parse_numbers(id, rest);
    require(!p.empty() && p.size() <= 2 && p[0] > 0, id, "expected sphere:r[,N] with r > 0");
    const double r = p[0];
    const int n = dimension_arg(id, p, 1, 2, 2);
    e.parameters = p;
    // stereographic coordinates: g = 4 r^4 / (r^2 + |x|^2)^2 I
    auto g = conformal_metric(n, false, [r, n](const auto* x) {
      using T = std::remove_cv_t<std::remove_reference_t<decltype(x[0])>>;
      T s(r * r);
      for (int i = 0; i < n; ++i) s += x[i] * x[i];
      return (4.0 * r * r * r * r) / (s * s);
    });
    e.ambient.emplace(id, MetricSignature{n, 0}, std::move(g), Box::cube(n, 20.0 * r), false);
    e.ambient->set_sampling_box(Box::cube(n, 2.0 * r));
    e.constant_curvature = 1.0 / (r * r);
    return e;
  }
  if (name == "hyperbolic") {
    const auto p = parse_numbers(id, rest);
    require(!p.empty() && p.size() <= 2 && p[0] > 0, id, "expected hyperbolic:r[,N] with r > 0");
    const double r = p[0];
    const int n = dimension_arg(id, p, 1, 4, 2);
    e.parameters = p;
    // hyperboloid model projected to x: g_ij = δ_ij - x_i x_j / (r^2 + |x|^2)
    auto g = SmoothMap::generic(n, n * n, [r, n](const auto* x, auto* out) {
      using T = std::remove_cv_t<std::remove_reference_t<decltype(x[0])>>;
      T s(r * r);
      for (int i = 0; i < n; ++i) s += x[i] * x[i];
      const T inv = T(1.0) / s;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out[i * n + j] = (i == j ? T(1.0) : T(0.0)) - x[i] * x[j] * inv;
    });
    e.ambient.emplace(id, MetricSignature{n, 0}, std::move(g), Box::cube(n, 10.0 * r), false);
    e.ambient->set_sampling_box(Box::cube(n, 2.0 * r));
    e.constant_curvature = -1.0 / (r * r);
    return e;
  }
  if (name == "desitter") {
    const auto p = parse_numbers(id, rest);
    require(!p.empty() && p.size() <= 2 && p[0] > 0, id, "expected desitter:r[,N] with r > 0");
    const double r = p[0];
    const int n = dimension_arg(id, p, 1, 4, 3);
    e.parameters = p;
    // global coordinates, unit sphere in stereographic y, time τ last:
    // g = r^2 cosh^2(τ/r) 4/(1+|y|^2)^2 dy^2 - dτ^2
    auto g = SmoothMap::generic(n, n * n, [r, n](const auto* x, auto* out) {
      using T = std::remove_cv_t<std::remove_reference_t<decltype(x[0])>>;
      using std::cosh;
      T s(1.0);
      for (int i = 0; i + 1 < n; ++i) s += x[i] * x[i];
      const T ch = cosh(x[n - 1] * (1.0 / r));
      const T f = (4.0 * r * r) * ch * ch / (s * s);
      for (int i = 0; i < n * n; ++i) out[i] = T(0.0);
      for (int i = 0; i + 1 < n; ++i) out[i * n + i] = f;
      out[n * n - 1] = T(-1.0);
    });
    Box box{Vec::Constant(n, -10.0), Vec::Constant(n, 10.0)};
    box.lo(n - 1) = -5.0 * r;
    box.hi(n - 1) = 5.0 * r;
    e.ambient.emplace(id, MetricSignature{n, 1}, std::move(g), box, false);
    Box sb{Vec::Constant(n, -2.0), Vec::Constant(n, 2.0)};
    sb.lo(n - 1) = -r;
    sb.hi(n - 1) = r;
    e.ambient->set_sampling_box(sb);
    e.constant_curvature = 1.0 / (r * r);
    return e;
  }
  if (name == "perturbed-minkowski") {
    const auto p = parse_numbers(id, rest);
    require(!p.empty() && p.size() <= 2, id, "expected perturbed-minkowski:eps[,N]");
    const double eps = p[0];
    const int n = dimension_arg(id, p, 1, 4, 3);
    e.parameters = p;
    // g = exp(2 eps x0^2) diag(1,..,1,-1)
    auto g = conformal_metric(n, true, [eps](const auto* x) {
      using std::exp;
      return exp(2.0 * eps * x[0] * x[0]);
    });
    e.ambient.emplace(id, MetricSignature{n, 1}, std::move(g), Box::cube(n, 5.0), eps == 0.0);
    e.ambient->set_sampling_box(Box::cube(n, 1.0));
    e.ground_truth = eps == 0.0 ? GroundTruth::ConstantCurvature : GroundTruth::Obstructed;
    if (eps == 0.0) e.constant_curvature = 0.0;
    return e;
  }
  throw Error(ErrorCode::UnknownCatalogId, "unknown ambient id", id);
}

// ---------------------------------------------------------------- immersions

AmbientSpace flat_for(int n, bool lorentzian) {
  return flat_space((lorentzian ? "minkowski:" : "euclidean:") + std::to_string(n), n, lorentzian);
}

CatalogEntry make_immersion(const std::string& id) {
  const auto [name, rest] = split_id(id);
  CatalogEntry e;
  e.id = id;
  e.kind = EntryKind::Immersion;

  if (name == "sphere" || name == "ellipsoid") {
    const auto p = parse_numbers(id, rest);
    std::vector<double> axes;
    if (name == "sphere") {
      require(!p.empty() && p.size() <= 2 && p[0] > 0, id, "expected sphere:r[,m] with r > 0");
      const int m = dimension_arg(id, p, 1, 2, 1);
      axes.assign(m + 1, p[0]);
    } else {
      require(p.size() >= 3 && p.size() <= static_cast<size_t>(kMaxVars), id, "expected ellipsoid:a1,...,ak with k >= 3");
      for (double a : p) require(a > 0, id, "semi-axes must be positive");
      axes = p;
    }
    e.parameters = p;
    const int k = static_cast<int>(axes.size()), m = k - 1;
    Immersion im(id, flat_for(k, false), scaled_stereographic(axes), Box::cube(m, 3.0));
    im.set_orientation(OrientationRule::inward());
    e.immersion = std::move(im);

    bool everywhere = false;
    const auto pts = ellipsoid_umbilics(axes, &everywhere);
    if (everywhere) {
      e.ground_truth = GroundTruth::UmbilicEverywhere;
      e.is_round_sphere = true;
      e.model_radius = axes[0];
    } else if (pts.empty()) {
      e.ground_truth = GroundTruth::NowhereUmbilic;
    } else {
      e.ground_truth = GroundTruth::UmbilicPoints;
      for (const Vec& x : pts)
        if (auto u = inverse_stereographic(axes, x)) e.umbilic_points.push_back(*u);
    }
    const SmoothMap f = scalar_field(k, [axes, k](const auto* x) {
      using T = std::remove_cv_t<std::remove_reference_t<decltype(x[0])>>;
      T s(-1.0);
      for (int i = 0; i < k; ++i) s += x[i] * x[i] * (1.0 / (axes[i] * axes[i]));
      return s;
    });
    const SmoothMap chart = scaled_stereographic(axes);
    e.closed_form_curvatures = [f, chart, k](const Vec& u) {
      return implicit_curvatures(f, Mat::Identity(k, k), chart(u), OrientationRule::inward());
    };
    return e;
  }

  if (name == "hyperbolic-paraboloid" || name == "elliptic-paraboloid") {
    double a = 1.0, b = -1.0;
    if (name == "elliptic-paraboloid") {
      const auto p = parse_numbers(id, rest);
      require(p.size() == 2, id, "expected elliptic-paraboloid:a,b");
      a = p[0];
      b = p[1];
      e.parameters = p;
    } else {
      require(rest.empty(), id, "hyperbolic-paraboloid takes no parameters");
    }
    auto map = SmoothMap::generic(2, 3, [a, b](const auto* u, auto* out) {
      out[0] = u[0];
      out[1] = u[1];
      out[2] = a * u[0] * u[0] + b * u[1] * u[1];
    });
    Immersion im(id, flat_for(3, false), std::move(map), Box::cube(2, 1.0));
    im.set_orientation(OrientationRule::upward());
    e.immersion = std::move(im);
    // same interlacing argument as for ellipsoids, on Hess F = diag(2a, 2b, 0)
    if (a * b <= 0.0) {
      e.ground_truth = (a == 0.0 && b == 0.0) ? GroundTruth::UmbilicEverywhere : GroundTruth::NowhereUmbilic;
    } else {
      e.ground_truth = GroundTruth::UmbilicPoints;
      if (a == b) {
        e.umbilic_points.push_back(Vec::Zero(2));
      } else {
        const double lo = std::min(a, b), hi = std::max(a, b);
        const double off = std::sqrt((hi - lo) / lo) / (2.0 * hi);
        for (double s : {1.0, -1.0}) {
          Vec u = Vec::Zero(2);
          u(a < b ? 1 : 0) = s * off * (a > 0 ? 1.0 : -1.0);
          e.umbilic_points.push_back(u);
        }
      }
    }
    const SmoothMap f = scalar_field(3, [a, b](const auto* x) { return x[2] - a * x[0] * x[0] - b * x[1] * x[1]; });
    e.closed_form_curvatures = [f, a, b](const Vec& u) {
      Vec p(3);
      p << u(0), u(1), a * u(0) * u(0) + b * u(1) * u(1);
      return implicit_curvatures(f, Mat::Identity(3, 3), p, OrientationRule::upward());
    };
    return e;
  }

  if (name == "cylinder") {
    const auto p = parse_numbers(id, rest);
    require(p.size() == 1 && p[0] > 0, id, "expected cylinder:r with r > 0");
    const double r = p[0];
    e.parameters = p;
    auto map = SmoothMap::generic(2, 3, [r](const auto* u, auto* out) {
      using std::cos, std::sin;
      out[0] = r * cos(u[0]);
      out[1] = r * sin(u[0]);
      out[2] = u[1];
    });
    Box dom{Vec(2), Vec(2)};
    dom.lo << 0.0, -1.0;
    dom.hi << 2.0 * std::numbers::pi, 1.0;
    Immersion im(id, flat_for(3, false), std::move(map), dom);
    im.set_orientation({"inward", [](const Vec& x, const Vec& nu) { return nu(0) * x(0) + nu(1) * x(1) < 0.0; }});
    e.immersion = std::move(im);
    e.ground_truth = GroundTruth::NowhereUmbilic;
    e.closed_form_curvatures = [r](const Vec&) {
      Vec k(2);
      k << 0.0, 1.0 / r;
      return k;
    };
    return e;
  }

  if (name == "torus") {
    const auto p = parse_numbers(id, rest);
    require(p.size() == 2 && p[0] > p[1] && p[1] > 0, id, "expected torus:R,r with R > r > 0");
    const double R = p[0], r = p[1];
    e.parameters = p;
    auto map = SmoothMap::generic(2, 3, [R, r](const auto* u, auto* out) {
      using std::cos, std::sin;
      const auto ring = R + r * cos(u[1]);
      out[0] = ring * cos(u[0]);
      out[1] = ring * sin(u[0]);
      out[2] = r * sin(u[1]);
    });
    Immersion im(id, flat_for(3, false), std::move(map), Box{Vec::Zero(2), Vec::Constant(2, 2.0 * std::numbers::pi)});
    im.set_orientation({"inward", [R](const Vec& x, const Vec& nu) {
                          const double rho = std::hypot(x(0), x(1));
                          Vec core(3);
                          core << R * x(0) / rho, R * x(1) / rho, 0.0;
                          return nu.dot(x - core) < 0.0;
                        }});
    e.immersion = std::move(im);
    e.ground_truth = GroundTruth::NowhereUmbilic;
    e.closed_form_curvatures = [R, r](const Vec& u) {
      Vec k(2);
      k << std::cos(u(1)) / (R + r * std::cos(u(1))), 1.0 / r;
      if (k(0) > k(1)) std::swap(k(0), k(1));
      return k;
    };
    return e;
  }

  if (name == "hyperboloid-sheet") {
    const auto p = parse_numbers(id, rest);
    require(!p.empty() && p.size() <= 2 && p[0] > 0, id, "expected hyperboloid-sheet:r[,m] with r > 0");
    const double r = p[0];
    const int m = dimension_arg(id, p, 1, 2, 1);
    e.parameters = p;
    auto map = SmoothMap::generic(m, m + 1, [r, m](const auto* u, auto* out) {
      using T = std::remove_cv_t<std::remove_reference_t<decltype(u[0])>>;
      using std::sqrt;
      T s(r * r);
      for (int i = 0; i < m; ++i) {
        out[i] = u[i];
        s += u[i] * u[i];
      }
      out[m] = sqrt(s);
    });
    Immersion im(id, flat_for(m + 1, true), std::move(map), Box::cube(m, 2.0));
    im.set_orientation(OrientationRule::future_directed());
    e.immersion = std::move(im);
    e.ground_truth = GroundTruth::UmbilicEverywhere;
    e.is_hyperbolic_space = true;
    e.model_radius = r;
    e.closed_form_curvatures = [r, m](const Vec&) { return Vec::Constant(m, 1.0 / r); };
    return e;
  }

  if (name == "graph" || name == "minkowski-graph") {
    require(!rest.empty(), id, "expected an expression after ':'");
    const auto vars = graph_variables(kMaxVars - 1);
    const Expression probe = Expression::parse(rest, vars);
    const int m = std::max(2, probe.max_variable() + 1);
    auto exprs = std::make_shared<std::vector<Expression>>(1, probe);
    auto map = SmoothMap::generic(m, m + 1, [exprs, m](const auto* u, auto* out) {
      for (int i = 0; i < m; ++i) out[i] = u[i];
      out[m] = (*exprs)[0].eval(u);
    });
    const bool lorentzian = name == "minkowski-graph";
    Immersion im(id, flat_for(m + 1, lorentzian), std::move(map), Box::cube(m, 1.0));
    im.set_orientation(lorentzian ? OrientationRule::future_directed() : OrientationRule::upward());
    e.immersion = std::move(im);
    e.ground_truth = GroundTruth::Unknown;
    return e;
  }

  if (name == "perturbed-hyperboloid") {
    // t = sqrt(1 + x^2 + y^2) + eps x^4: agrees with H^2(1) to second order
    // along x = 0 (so umbilic there) but its normal slices are not hyperbolas.
    const auto p = parse_numbers(id, rest);
    require(p.size() == 1 && p[0] != 0.0, id, "expected perturbed-hyperboloid:eps with eps != 0");
    const double eps = p[0];
    e.parameters = p;
    auto map = SmoothMap::generic(2, 3, [eps](const auto* u, auto* out) {
      using std::sqrt;
      out[0] = u[0];
      out[1] = u[1];
      out[2] = sqrt(1.0 + u[0] * u[0] + u[1] * u[1]) + eps * (u[0] * u[0]) * (u[0] * u[0]);
    });
    Immersion im(id, flat_for(3, true), std::move(map), Box::cube(2, 1.0));
    im.set_orientation(OrientationRule::future_directed());
    e.immersion = std::move(im);
    e.ground_truth = GroundTruth::Unknown;
    e.is_hyperbolic_space = false;
    return e;
  }

  if (name == "s3-latitude" || name == "clifford-torus") {
    // 2-dimensional surfaces of the unit 3-sphere, realized in R^4
    std::vector<double> p;
    if (name == "s3-latitude") {
      p = parse_numbers(id, rest);
      require(p.size() == 1 && p[0] > 0 && p[0] < std::numbers::pi, id, "expected s3-latitude:rho with 0 < rho < pi");
    } else {
      require(rest.empty(), id, "clifford-torus takes no parameters");
    }
    e.parameters = p;
    SmoothMap map;
    Box dom;
    if (name == "s3-latitude") {
      const double rho = p[0];
      // {x4 = cos rho}: a round 2-sphere of radius sin rho, stereographic chart
      map = SmoothMap::generic(2, 4, [rho](const auto* u, auto* out) {
        using T = std::remove_cv_t<std::remove_reference_t<decltype(u[0])>>;
        const T s = u[0] * u[0] + u[1] * u[1];
        const T inv = T(1.0) / (s + 1.0);
        const double sr = std::sin(rho);
        out[0] = sr * (2.0 * u[0] * inv);
        out[1] = sr * (2.0 * u[1] * inv);
        out[2] = sr * ((s - 1.0) * inv);
        out[3] = T(std::cos(rho));
      });
      dom = Box::cube(2, 2.0);
      e.ground_truth = GroundTruth::UmbilicEverywhere;
      e.closed_form_curvatures = [rho](const Vec&) { return Vec::Constant(2, std::cos(rho) / std::sin(rho)); };
    } else {
      map = SmoothMap::generic(2, 4, [](const auto* u, auto* out) {
        using std::cos, std::sin;
        const double c = 1.0 / std::sqrt(2.0);
        out[0] = c * cos(u[0]);
        out[1] = c * sin(u[0]);
        out[2] = c * cos(u[1]);
        out[3] = c * sin(u[1]);
      });
      dom = Box{Vec::Zero(2), Vec::Constant(2, 2.0 * std::numbers::pi)};
      e.ground_truth = GroundTruth::NowhereUmbilic;
      e.closed_form_curvatures = [](const Vec&) {
        Vec k(2);
        k << -1.0, 1.0;
        return k;
      };
    }
    Immersion im(id, flat_for(4, false), std::move(map), dom);
    im.set_quadric({1.0, false});
    if (name == "s3-latitude")
      im.set_orientation({"towards-pole", [](const Vec&, const Vec& nu) { return nu(3) > 0.0; }});
    else
      im.set_orientation({"first-circle", [](const Vec& x, const Vec& nu) {
                            return nu(0) * x(0) + nu(1) * x(1) > 0.0;
                          }});
    e.immersion = std::move(im);
    return e;
  }

  throw Error(ErrorCode::UnknownCatalogId, "unknown surface id", id);
}

int edit_distance(const std::string& a, const std::string& b) {
  std::vector<int> prev(b.size() + 1), cur(b.size() + 1);
  for (size_t j = 0; j <= b.size(); ++j) prev[j] = static_cast<int>(j);
  for (size_t i = 1; i <= a.size(); ++i) {
    cur[0] = static_cast<int>(i);
    for (size_t j = 1; j <= b.size(); ++j)
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1)});
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

const std::vector<std::string>& ambient_names() {
  static const std::vector<std::string> names = {"euclidean", "minkowski", "sphere", "hyperbolic", "desitter",
                                                 "perturbed-minkowski"};
  return names;
}
const std::vector<std::string>& immersion_names() {
  static const std::vector<std::string> names = {
      "sphere", "ellipsoid", "hyperbolic-paraboloid", "elliptic-paraboloid", "cylinder", "torus",
      "graph", "hyperboloid-sheet", "minkowski-graph", "perturbed-hyperboloid", "s3-latitude", "clifford-torus"};
  return names;
}

}  // namespace

CatalogEntry resolve(const std::string& id, EntryKind kind) {
  const auto& names = kind == EntryKind::Ambient ? ambient_names() : immersion_names();
  const std::string name = split_id(id).name;
  if (std::find(names.begin(), names.end(), name) == names.end()) {
    std::string near;
    for (const auto& n : names)
      if (edit_distance(n, name) <= 3 || n.rfind(name, 0) == 0) near += (near.empty() ? "" : ", ") + n;
    throw Error(ErrorCode::UnknownCatalogId,
                std::string("unknown ") + (kind == EntryKind::Ambient ? "metric" : "surface") + " id" +
                    (near.empty() ? "" : "; did you mean: " + near),
                id);
  }
  return kind == EntryKind::Ambient ? make_ambient(id) : make_immersion(id);
}

std::vector<std::string> listed_ambient_ids() {
  return {"euclidean:3", "euclidean:4", "minkowski:3",  "minkowski:4",
          "sphere:1",    "sphere:2,3",  "hyperbolic:1", "desitter:1", "perturbed-minkowski:0.1"};
}

std::vector<std::string> listed_immersion_ids() {
  return {"sphere:1",         "sphere:2",        "sphere:1,3",           "ellipsoid:1,2,3",
          "ellipsoid:2,1,1",  "ellipsoid:1,2,3,4", "hyperbolic-paraboloid", "elliptic-paraboloid:1,3",
          "cylinder:1",       "torus:2,0.5",     "hyperboloid-sheet:1",  "hyperboloid-sheet:1,3",
          "perturbed-hyperboloid:0.05", "s3-latitude:1", "clifford-torus"};
}

std::vector<std::string> hypersurface_ids() {
  return {"sphere:1",       "sphere:2",   "ellipsoid:1,2,3",     "ellipsoid:2,1,1",      "hyperbolic-paraboloid",
          "elliptic-paraboloid:1,3", "cylinder:1", "torus:2,0.5", "hyperboloid-sheet:1"};
}

// ---------------------------------------------------------------- loaders

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open file", path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json parse_json(const std::string& text, const std::string& id) {
  try {
    return json::parse(text);
  } catch (const json::exception& ex) {
    throw Error(ErrorCode::ParseError, std::string("invalid JSON: ") + ex.what(), id);
  }
}

Box box_from_json(const json& j, int dim, double fallback, const std::string& id) {
  if (j.is_null()) return Box::cube(dim, fallback);
  require(j.is_array() && static_cast<int>(j.size()) == dim, id, "box must list one [lo, hi] per dimension");
  Box b{Vec(dim), Vec(dim)};
  for (int i = 0; i < dim; ++i) {
    require(j[i].is_array() && j[i].size() == 2, id, "box entries must be [lo, hi]");
    b.lo(i) = j[i][0].get<double>();
    b.hi(i) = j[i][1].get<double>();
    require(b.lo(i) < b.hi(i), id, "box entries need lo < hi");
  }
  return b;
}

}  // namespace

AmbientSpace metric_from_json_text(const std::string& text, const std::string& id) {
  const json j = parse_json(text, id);
  try {
    const int n = j.at("dimension").get<int>();
    const int index = j.value("index", 0);
    require(n >= 2 && n <= kMaxVars, id, "dimension out of range");
    require(index == 0 || index == 1, id, "index must be 0 or 1");
    std::vector<std::string> entries;
    const json& e = j.at("entries");
    if (e.size() == static_cast<size_t>(n) && e[0].is_array()) {
      for (const auto& row : e) {
        require(row.size() == static_cast<size_t>(n), id, "entries must be an N x N array");
        for (const auto& c : row) entries.push_back(c.is_string() ? c.get<std::string>() : c.dump());
      }
    } else {
      require(e.size() == static_cast<size_t>(n * n), id, "entries must have N*N expressions");
      for (const auto& c : e) entries.push_back(c.is_string() ? c.get<std::string>() : c.dump());
    }
    auto exprs = parse_all(entries, Expression::indexed_names("x", n));
    AmbientSpace space(id, {n, index}, expression_map(n, exprs), box_from_json(j.value("box", json()), n, 1e3, id),
                       j.value("flat", false));
    return space;
  } catch (const json::exception& ex) {
    throw Error(ErrorCode::MalformedParameters, std::string("bad metric file: ") + ex.what(), id);
  }
}

AmbientSpace load_metric_file(const std::string& path) { return metric_from_json_text(read_file(path), path); }

Immersion immersion_from_json_text(const std::string& text, const std::string& id) {
  const json j = parse_json(text, id);
  try {
    const int m = j.at("param_dim").get<int>();
    require(m >= 1 && m < kMaxVars, id, "param_dim out of range");
    AmbientSpace ambient = resolve_ambient(j.at("ambient").get<std::string>());
    std::vector<std::string> comps;
    for (const auto& c : j.at("components")) comps.push_back(c.is_string() ? c.get<std::string>() : c.dump());
    require(static_cast<int>(comps.size()) == ambient.dim(), id, "need one component per ambient coordinate");
    auto vars = Expression::indexed_names("u", m);
    const char* aliases[] = {"u", "v", "w"};
    for (int i = 0; i < std::min(m, 3); ++i) vars[aliases[i]] = i;
    auto exprs = parse_all(comps, vars);
    Immersion im(id, std::move(ambient), expression_map(m, exprs), box_from_json(j.value("domain", json()), m, 1.0, id));
    const std::string orient = j.value("orientation", "standard");
    if (orient == "inward") im.set_orientation(OrientationRule::inward());
    else if (orient == "outward") im.set_orientation(OrientationRule::outward());
    else if (orient == "upward") im.set_orientation(OrientationRule::upward());
    else if (orient == "future-directed") im.set_orientation(OrientationRule::future_directed());
    else require(orient == "standard", id, "unknown orientation '" + orient + "'");
    im.set_allow_timelike(j.value("allow_timelike", false));
    return im;
  } catch (const json::exception& ex) {
    throw Error(ErrorCode::MalformedParameters, std::string("bad immersion file: ") + ex.what(), id);
  }
}

Immersion load_immersion_file(const std::string& path) { return immersion_from_json_text(read_file(path), path); }

}  // namespace umb
