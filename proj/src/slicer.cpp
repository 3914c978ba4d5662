#include "umb/slicer.hpp"

#include <algorithm>
#include <cmath>

#include "umb/error.hpp"

namespace umb {

std::string_view slice_mode_name(SliceMode m) {
  return m == SliceMode::FlatAffine ? "flat-affine" : "quadric-central-section";
}

SliceSpec make_slice_spec(const Immersion& im, const Vec& u, const Mat& directions) {
  SliceSpec spec;
  spec.q_param = u;
  spec.q = im.point(u);
  spec.tangent_directions = directions;
  spec.mode = im.quadric() ? SliceMode::QuadricCentralSection : SliceMode::FlatAffine;
  return spec;
}

Subspace build_slice(const Immersion& im, const SliceSpec& spec) {
  const AmbientSpace& amb = im.ambient();
  if (!amb.flat())
    throw Error(ErrorCode::UnsupportedAmbient, "slices need a flat ambient or a quadric model", amb.id());
  if (spec.mode == SliceMode::QuadricCentralSection && !im.quadric())
    throw Error(ErrorCode::UnsupportedAmbient, "central sections need a quadric-realized immersion", im.id());
  if (!spec.include_normals)
    throw Error(ErrorCode::InvalidArgument, "normal slices must contain the normal space", im.id());

  const int m = im.param_dim();
  const Mat& d = spec.tangent_directions;
  const int s = static_cast<int>(d.cols());
  const bool full = s == m && spec.mode == SliceMode::FlatAffine;
  if (s < 1 || (s > m - 1 && !full))
    throw Error(ErrorCode::InvalidArgument, "slice needs 1 <= s <= m-1 tangent directions", im.id());

  const Frames f = frames(im, spec.q_param);
  if ((f.p - spec.q).norm() > 1e-10 * std::max(1.0, spec.q.norm()))
    throw Error(ErrorCode::InvalidArgument, "q does not match the parameter point", im.id());
  const Mat& g = f.metric;

  const Mat gram = d.transpose() * g * d;
  std::vector<int> dsigns(s);
  for (int i = 0; i < s; ++i) dsigns[i] = gram(i, i) < 0 ? -1 : 1;
  Mat expect = Mat::Zero(s, s);
  for (int i = 0; i < s; ++i) expect(i, i) = dsigns[i];
  if ((gram - expect).cwiseAbs().maxCoeff() > 1e-10)
    throw Error(ErrorCode::NonUnitDirection, "slice directions are not orthonormal", im.id());
  const Mat off = f.normal.transpose() * g * d;
  if (off.size() > 0 && off.cwiseAbs().maxCoeff() > 1e-8)
    throw Error(ErrorCode::InvalidArgument, "slice directions are not tangent to the immersion", im.id());

  Subspace sub;
  sub.origin = spec.q;
  sub.metric = g;
  sub.s = s;
  sub.normal_count = static_cast<int>(f.normal.cols());
  int extra = 0;
  Vec radial;
  if (spec.mode == SliceMode::QuadricCentralSection) {
    const double qq = spec.q.dot(g * spec.q);
    if (std::abs(qq) < 1e-12) throw Error(ErrorCode::DegenerateSubspace, "q is null", im.id());
    radial = spec.q / std::sqrt(std::abs(qq));
    extra = 1;
  }
  const int nt = sub.normal_count + extra;
  sub.transverse = Mat(g.rows(), nt);
  sub.transverse.leftCols(sub.normal_count) = f.normal;
  sub.transverse_signs = f.normal_signs;
  if (extra) {
    sub.transverse.col(nt - 1) = radial;
    sub.transverse_signs.push_back(radial.dot(g * radial) < 0 ? -1 : 1);
  }
  sub.span = Mat(g.rows(), s + nt);
  sub.span << d, sub.transverse;
  sub.signs = dsigns;
  sub.signs.insert(sub.signs.end(), sub.transverse_signs.begin(), sub.transverse_signs.end());

  const Mat induced = sub.span.transpose() * g * sub.span;
  if (inertia_index(induced, 1e-10) < 0)
    throw Error(ErrorCode::DegenerateSubspace, "induced form on the slice subspace is degenerate", im.id());
  if (sub.span.cols() < g.rows()) {
    sub.annihilator = null_space(sub.span.transpose()).transpose();
  } else {
    sub.annihilator = Mat(0, g.rows());
  }
  return sub;
}

double default_slice_radius(const Immersion& im, const Vec& u) {
  double kmax = 0.0;
  for (const Mat& ii : second_fundamental_form(im, u)) {
    const Vec ev = Eigen::SelfAdjointEigenSolver<Mat>(ii).eigenvalues();
    kmax = std::max(kmax, ev.cwiseAbs().maxCoeff());
  }
  return 0.5 * std::min(1.0, kmax > 0 ? 1.0 / kmax : 1.0);
}

namespace {

constexpr double kConverged = 1e-12;
constexpr double kAccepted = 1e-10;
constexpr int kMaxNewton = 50;

struct Solver {
  const Immersion& im;
  const Subspace& sub;
  Mat dg;  // ε_i d_i^T ḡ, rows

  Solver(const Immersion& im_, const Subspace& sub_) : im(im_), sub(sub_) {
    dg = sub.span.leftCols(sub.s).transpose() * sub.metric;
    for (int i = 0; i < sub.s; ++i) dg.row(i) *= sub.signs[i];
  }

  Vec residual(const Vec& x, const Vec& t) const {
    const Vec diff = x - sub.origin;
    Vec r(sub.annihilator.rows() + sub.s);
    r << sub.annihilator * diff, dg * diff - t;
    return r;
  }

  // Newton from `seed` towards target t; nullopt if not accepted.
  std::optional<Vec> newton(const Vec& seed, const Vec& t) const {
    Vec u = seed;
    Vec r = residual(im.point(u), t);
    double rn = r.norm();
    for (int it = 0; it < kMaxNewton && rn > kConverged; ++it) {
      const Mat j = im.jacobian(u);
      Mat jf(r.size(), u.size());
      jf << sub.annihilator * j, dg * j;
      const Vec step = jf.colPivHouseholderQr().solve(-r);
      if (!step.allFinite()) return std::nullopt;
      double lambda = 1.0;
      bool improved = false;
      for (int h = 0; h < 30; ++h, lambda *= 0.5) {
        const Vec cand = u + lambda * step;
        const Vec rc = residual(im.point(cand), t);
        if (rc.allFinite() && rc.norm() < rn) {
          u = cand;
          r = rc;
          rn = rc.norm();
          improved = true;
          break;
        }
      }
      if (!improved) break;
    }
    if (rn <= kAccepted) return u;
    return std::nullopt;
  }
};

std::vector<Vec> grid_targets(int s, double radius, int spd) {
  const int per = 2 * spd + 1;
  std::vector<Vec> out;
  std::vector<int> idx(s, 0);
  while (true) {
    Vec t(s);
    for (int i = 0; i < s; ++i) t(i) = -radius + 2.0 * radius * idx[i] / (per - 1);
    if (t.norm() <= radius * (1.0 + 1e-12)) out.push_back(t);
    int k = 0;
    while (k < s && ++idx[k] == per) idx[k++] = 0;
    if (k == s) break;
  }
  return out;
}

}  // namespace

SliceResult trace_slice(const Immersion& im, const SliceSpec& spec, const TraceOptions& options) {
  const Subspace sub = build_slice(im, spec);
  const Solver solver(im, sub);
  SliceResult res;
  res.spec = spec;
  res.samples_per_dim = options.samples_per_dim;
  res.rung = im.rung();
  res.transverse = sub.transverse;
  res.transverse_signs = sub.transverse_signs;
  res.tangent_signs.assign(sub.signs.begin(), sub.signs.begin() + sub.s);
  res.normal_count = sub.normal_count;
  double radius = options.radius > 0 ? options.radius : default_slice_radius(im, spec.q_param);

  const Mat j0 = im.jacobian(spec.q_param);
  const Mat d = spec.tangent_directions;
  // parameter displacement of each tangent direction
  const Mat pull = j0.colPivHouseholderQr().solve(d);

  for (int attempt = 0; attempt <= options.max_halvings; ++attempt, radius *= 0.5) {
    const std::vector<Vec> targets = grid_targets(sub.s, radius, options.samples_per_dim);
    std::vector<std::optional<SliceSample>> slots(targets.size());
    for_each_index(
        targets.size(),
        [&](size_t k) {
          const Vec& t = targets[k];
          std::optional<Vec> u = solver.newton(spec.q_param + pull * t, t);
          // continuation along the ray when the direct seed fails
          for (int sub_steps : {4, 16}) {
            if (u) break;
            Vec cur = spec.q_param;
            bool ok = true;
            for (int j = 1; j <= sub_steps && ok; ++j) {
              const Vec tj = t * (static_cast<double>(j) / sub_steps);
              auto next = solver.newton(cur + pull * (t / sub_steps), tj);
              if (next) cur = *next;
              else ok = false;
            }
            if (ok) u = cur;
          }
          if (!u) return;
          SliceSample smp;
          smp.u = *u;
          smp.p = im.point(*u);
          smp.t = t;
          const Vec diff = smp.p - sub.origin;
          smp.w = Vec(sub.transverse.cols());
          for (int a = 0; a < sub.transverse.cols(); ++a)
            smp.w(a) = sub.transverse_signs[a] * sub.transverse.col(a).dot(sub.metric * diff);
          smp.residual = solver.residual(smp.p, t).norm();
          slots[k] = std::move(smp);
        },
        options.exec);
    res.samples.clear();
    int failed = 0;
    for (auto& sl : slots) {
      if (sl) res.samples.push_back(std::move(*sl));
      else ++failed;
    }
    res.failed_targets = failed;
    res.radius = radius;
    res.radius_halvings = attempt;
    if (failed <= 0.2 * static_cast<double>(targets.size())) return res;
  }
  throw Error(ErrorCode::NewtonDiverged, "slice tracing failed for more than 20% of the targets", im.id());
}

namespace {

// P_k, P_k', P_k'' at x for k = 0..deg.
void legendre(double x, int deg, Vec& p, Vec& dp, Vec& ddp) {
  p.resize(deg + 1);
  dp.resize(deg + 1);
  ddp.resize(deg + 1);
  p(0) = 1.0;
  dp(0) = 0.0;
  ddp(0) = 0.0;
  if (deg == 0) return;
  p(1) = x;
  dp(1) = 1.0;
  ddp(1) = 0.0;
  for (int k = 1; k < deg; ++k) {
    const double a = 2.0 * k + 1.0;
    p(k + 1) = (a * x * p(k) - k * p(k - 1)) / (k + 1);
    dp(k + 1) = (a * (p(k) + x * dp(k)) - k * dp(k - 1)) / (k + 1);
    ddp(k + 1) = (a * (2.0 * dp(k) + x * ddp(k)) - k * ddp(k - 1)) / (k + 1);
  }
}

std::vector<std::vector<int>> multi_indices(int s, int deg) {
  std::vector<std::vector<int>> out;
  std::vector<int> idx(s, 0);
  while (true) {
    int total = 0;
    for (int v : idx) total += v;
    if (total <= deg) out.push_back(idx);
    int k = 0;
    while (k < s && ++idx[k] > deg) idx[k++] = 0;
    if (k == s) break;
  }
  return out;
}

int fit_degree_for(int s, size_t samples) {
  int deg = s == 1 ? 12 : s == 2 ? 10 : s == 3 ? 8 : 6;
  while (deg > 3 && multi_indices(s, deg).size() * 3 > samples * 2) --deg;
  return deg;
}

}  // namespace

namespace {

struct PolyFit {
  std::vector<Mat> hess;  // per transverse coordinate, in t units
  double condition = 0.0;
  double max_residual = 0.0;
};

PolyFit poly_fit(const SliceResult& r, int deg) {
  const int s = static_cast<int>(r.spec.tangent_directions.cols());
  const int nt = static_cast<int>(r.samples[0].w.size());
  const auto basis = multi_indices(s, deg);
  const int k = static_cast<int>(r.samples.size());
  const int nb = static_cast<int>(basis.size());
  Mat a(k, nb);
  Mat rhs(k, nt);
  Vec dp, ddp;
  std::vector<Vec> pv(s);
  for (int i = 0; i < k; ++i) {
    for (int c = 0; c < s; ++c) legendre(r.samples[i].t(c) / r.radius, deg, pv[c], dp, ddp);
    for (int b = 0; b < nb; ++b) {
      double v = 1.0;
      for (int c = 0; c < s; ++c) v *= pv[c](basis[b][c]);
      a(i, b) = v;
    }
    rhs.row(i) = r.samples[i].w.transpose();
  }
  PolyFit out;
  Eigen::JacobiSVD<Mat> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Vec& sv = svd.singularValues();
  const double cond = sv(0) / sv(sv.size() - 1);
  out.condition = cond * cond;
  const Mat coef = svd.solve(rhs);
  out.max_residual = (a * coef - rhs).cwiseAbs().maxCoeff();

  Vec p0, dp0, ddp0;
  legendre(0.0, deg, p0, dp0, ddp0);
  out.hess.assign(nt, Mat::Zero(s, s));
  for (int b = 0; b < nb; ++b) {
    const auto& idx = basis[b];
    for (int i = 0; i < s; ++i)
      for (int j = i; j < s; ++j) {
        double v = 1.0;
        for (int c = 0; c < s; ++c) {
          const int order = (c == i) + (c == j);
          v *= order == 0 ? p0(idx[c]) : order == 1 ? dp0(idx[c]) : ddp0(idx[c]);
        }
        if (v == 0.0) continue;
        for (int al = 0; al < nt; ++al) out.hess[al](i, j) += v * coef(b, al);
      }
  }
  for (auto& q : out.hess) {
    q = Mat(q.selfadjointView<Eigen::Upper>());
    q /= r.radius * r.radius;
  }
  return out;
}

}  // namespace

void slice_shape(SliceResult& r) {
  const int s = static_cast<int>(r.spec.tangent_directions.cols());
  if (r.samples.empty()) throw Error(ErrorCode::IllConditionedFit, "no slice samples");
  const size_t need = static_cast<size_t>((s + 1) * (s + 2) / 2 + s);
  if (r.samples.size() < need) throw Error(ErrorCode::IllConditionedFit, "too few slice samples");

  const int deg = fit_degree_for(s, r.samples.size());
  PolyFit fit = poly_fit(r, deg);
  r.fit_condition = fit.condition;
  r.fit_degree = deg;
  r.fit_residual = fit.max_residual;
  if (!(r.fit_condition <= 1e10))
    throw Error(ErrorCode::IllConditionedFit, "slice fit normal equations are ill-conditioned");
  // error estimate: change of the Hessian when the degree drops by two
  r.fit_error_estimate = 0.0;
  if (deg >= 5) {
    const PolyFit lower = poly_fit(r, deg - 2);
    for (int a = 0; a < r.normal_count; ++a)
      r.fit_error_estimate = std::max(r.fit_error_estimate, (lower.hess[a] - fit.hess[a]).cwiseAbs().maxCoeff());
  }

  fit.hess.resize(r.normal_count);
  r.slice_II = fit.hess;
  r.slice_H_components = Vec::Zero(r.normal_count);
  r.slice_H = Vec::Zero(r.spec.q.size());
  for (int a = 0; a < r.normal_count; ++a) {
    double tr = 0.0;
    for (int i = 0; i < s; ++i) tr += r.tangent_signs[i] * r.slice_II[a](i, i);
    r.slice_H_components(a) = tr / s;
    r.slice_H += r.slice_H_components(a) * r.transverse.col(a);
  }
}

double slice_mean_curvature(const SliceResult& r) {
  if (r.slice_H_components.size() == 0) throw Error(ErrorCode::InvalidArgument, "slice shape not measured");
  return r.slice_H_components(0);
}

double identity_check(const Immersion& im, SliceResult& r) {
  const Frames f = frames(im, r.spec.q_param);
  const std::vector<Mat> ii = second_fundamental_form(im, r.spec.q_param, f);
  const Mat& g = f.metric;
  const Mat& d = r.spec.tangent_directions;
  // tangent frame is spacelike unless timelike immersions are allowed
  Mat tg = f.tangent.transpose() * g;
  for (int j = 0; j < f.tangent.cols(); ++j)
    if (f.tangent.col(j).dot(g * f.tangent.col(j)) < 0) tg.row(j) *= -1.0;
  const Mat c = tg * d;
  double worst = 0.0;
  for (size_t a = 0; a < ii.size(); ++a)
    worst = std::max(worst, (r.slice_II[a] - c.transpose() * ii[a] * c).cwiseAbs().maxCoeff());
  r.identity_residual = worst;

  // Weingarten route for hypersurfaces: A X = -(D_X ν)^T from differenced
  // normals, independent of the parametric Hessian.
  if (ii.size() == 1 && im.ambient().flat()) {
    const int m = im.param_dim();
    const double h = 1e-5;
    Mat dnu(g.rows(), m);
    for (int k = 0; k < m; ++k) {
      Vec up = r.spec.q_param, dn = r.spec.q_param;
      up(k) += h;
      dn(k) -= h;
      dnu.col(k) = (frames(im, up).normal.col(0) - frames(im, dn).normal.col(0)) / (2.0 * h);
    }
    // directional derivative along d_i: Σ_k (J^+ d_i)_k ∂_k ν
    const Mat dir = f.jacobian.colPivHouseholderQr().solve(d);
    const Mat w = -f.normal_signs[0] * (d.transpose() * g * dnu * dir);
    const Mat ws = 0.5 * (w + w.transpose());
    r.weingarten_residual = (r.slice_II[0] - ws).cwiseAbs().maxCoeff();
  }
  return worst;
}

SliceResult run_slice(const Immersion& im, const SliceSpec& spec, const TraceOptions& options) {
  double radius = options.radius > 0 ? options.radius : default_slice_radius(im, spec.q_param);
  if (!options.adaptive) {
    TraceOptions o = options;
    o.radius = radius;
    SliceResult r = trace_slice(im, spec, o);
    slice_shape(r);
    identity_check(im, r);
    return r;
  }
  // Shrink the window until the fit is converged: every target traced and
  // the Hessian stable under a drop of the polynomial degree.
  std::optional<SliceResult> best;
  for (int attempt = 0; attempt <= options.adaptive_halvings; ++attempt, radius *= 0.5) {
    TraceOptions o = options;
    o.radius = radius;
    o.max_halvings = 0;
    SliceResult r;
    try {
      r = trace_slice(im, spec, o);
      slice_shape(r);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NewtonDiverged && e.code() != ErrorCode::IllConditionedFit) throw;
      if (attempt == options.adaptive_halvings && !best) throw;
      continue;
    }
    r.radius_halvings = attempt;
    double scale = 1.0;
    for (const Mat& q : r.slice_II) scale = std::max(scale, q.cwiseAbs().maxCoeff());
    const bool good = r.failed_targets == 0 && r.fit_error_estimate <= options.fit_tol * scale;
    if (!best || (r.failed_targets == 0 && r.fit_error_estimate < best->fit_error_estimate) ||
        best->failed_targets > 0)
      best = std::move(r);
    if (good) break;
  }
  identity_check(im, *best);
  return std::move(*best);
}

void fit_slice_sphere(SliceResult& r) {
  std::vector<Vec> pts;
  for (const auto& smp : r.samples) pts.push_back(smp.p);
  try {
    r.fit_sphere = fit_sphere(pts);
  } catch (const Error& e) {
    r.fit_sphere.reset();
    r.fit_error = std::string(code_name(e.code()));
  }
}

void fit_slice_hyperbolic(SliceResult& r) {
  std::vector<Vec> pts;
  for (const auto& smp : r.samples) pts.push_back(smp.p);
  try {
    r.fit_hyperbolic = fit_hyperbolic(pts);
  } catch (const Error& e) {
    r.fit_hyperbolic.reset();
    r.fit_error = std::string(code_name(e.code()));
  }
}

}  // namespace umb
