#include "umb/report.hpp"

#include <cmath>
#include <set>
#include <sstream>

namespace umb {

using ojson = nlohmann::ordered_json;

ojson to_json(double x) {
  if (std::isfinite(x)) return x;
  if (std::isnan(x)) return "nan";
  return x > 0 ? "inf" : "-inf";
}

ojson to_json(const Vec& v) {
  ojson a = ojson::array();
  for (int i = 0; i < v.size(); ++i) a.push_back(to_json(v(i)));
  return a;
}

ojson to_json(const Mat& m) {
  ojson a = ojson::array();
  for (int i = 0; i < m.rows(); ++i) a.push_back(to_json(Vec(m.row(i).transpose())));
  return a;
}

namespace {

ojson columns_json(const Mat& m) {
  ojson a = ojson::array();
  for (int j = 0; j < m.cols(); ++j) a.push_back(to_json(Vec(m.col(j))));
  return a;
}

ojson fit_json(const std::optional<QuadricFit>& f) {
  if (!f) return nullptr;
  ojson o;
  o["center"] = to_json(f->center);
  o["radius"] = to_json(f->radius);
  o["rms_residual"] = to_json(f->rms_residual);
  o["hull_dimension"] = f->hull_dimension;
  return o;
}

std::string csv_number(double x) {
  std::ostringstream ss;
  ss.precision(17);
  ss << x;
  return ss.str();
}

}  // namespace

ojson shape_summary_json(const ShapeReport& r, bool umbilic) {
  ojson o;
  o["u"] = to_json(r.u);
  o["p"] = to_json(r.p);
  o["principal_curvatures"] = to_json(r.principal_curvatures);
  o["mean_curvature"] = to_json(r.mean_curvature);
  o["mean_curvature_norm"] = to_json(r.mean_curvature.norm());
  o["umbilicity_defect"] = to_json(r.umbilicity_defect);
  o["is_umbilic"] = umbilic;
  o["derivative_rung"] = std::string(rung_name(r.rung));
  o["orientation"] = r.orientation;
  return o;
}

ojson to_json(const SliceResult& r, bool include_samples) {
  ojson o;
  ojson spec;
  spec["q_param"] = to_json(r.spec.q_param);
  spec["q"] = to_json(r.spec.q);
  spec["tangent_directions"] = columns_json(r.spec.tangent_directions);
  spec["include_normals"] = r.spec.include_normals;
  spec["ambient_mode"] = std::string(slice_mode_name(r.spec.mode));
  o["spec"] = spec;
  o["radius"] = to_json(r.radius);
  o["samples_per_dim"] = r.samples_per_dim;
  o["radius_halvings"] = r.radius_halvings;
  o["failed_targets"] = r.failed_targets;
  o["sample_count"] = r.samples.size();
  if (include_samples) {
    ojson smp = ojson::array();
    for (const auto& s : r.samples) {
      ojson e;
      e["u"] = to_json(s.u);
      e["p"] = to_json(s.p);
      e["t"] = to_json(s.t);
      e["w"] = to_json(s.w);
      e["residual"] = to_json(s.residual);
      smp.push_back(e);
    }
    o["samples"] = smp;
  }
  ojson ii = ojson::array();
  for (const Mat& q : r.slice_II) ii.push_back(to_json(q));
  o["slice_II"] = ii;
  o["slice_H"] = to_json(r.slice_H);
  o["slice_H_components"] = to_json(r.slice_H_components);
  o["fit_sphere"] = fit_json(r.fit_sphere);
  o["fit_hyperbolic"] = fit_json(r.fit_hyperbolic);
  if (!r.fit_error.empty()) o["fit_error"] = r.fit_error;
  o["identity_residual"] = to_json(r.identity_residual);
  o["weingarten_residual"] = to_json(r.weingarten_residual);
  ojson fit;
  fit["degree"] = r.fit_degree;
  fit["condition"] = to_json(r.fit_condition);
  fit["max_residual"] = to_json(r.fit_residual);
  fit["error_estimate"] = to_json(r.fit_error_estimate);
  o["polynomial_fit"] = fit;
  ojson tol;
  tol["sample_residual"] = 1e-10;
  tol["newton_converged"] = 1e-12;
  tol["identity"] = 1e-5;
  o["tolerances"] = tol;
  o["derivative_rung"] = std::string(rung_name(r.rung));
  return o;
}

ojson to_json(const VerdictReport& r, bool include_runtime) {
  ojson o;
  o["suite_id"] = r.suite_id;
  o["surface_id"] = r.surface_id;
  o["points_tested"] = r.points_tested;
  ojson pts = ojson::array();
  for (const auto& p : r.per_point) {
    ojson e;
    e["parameter"] = to_json(p.parameter);
    ojson res;
    for (const auto& [k, v] : p.residuals) res[k] = to_json(v);
    e["residuals"] = res;
    ojson notes = ojson::object();
    for (const auto& [k, v] : p.notes) notes[k] = v;
    e["notes"] = notes;
    e["pass"] = p.pass;
    pts.push_back(e);
  }
  o["per_point"] = pts;
  o["overall"] = r.overall;
  if (r.ground_truth_agreement) o["ground_truth_agreement"] = *r.ground_truth_agreement;
  else o["ground_truth_agreement"] = nullptr;
  ojson tol;
  for (const auto& [k, v] : r.tolerances) tol[k] = to_json(v);
  o["tolerances"] = tol;
  ojson sum;
  for (const auto& [k, v] : r.summary) sum[k] = to_json(v);
  o["summary"] = sum;
  o["seed"] = r.seed;
  if (include_runtime) o["runtime_ms"] = r.runtime_ms;
  return o;
}

ojson to_json(const CartanAuditReport& r) {
  ojson o;
  o["metric_id"] = r.metric_id;
  o["verdict"] = std::string(verdict_name(r.verdict));
  o["max_codazzi_obstruction"] = to_json(r.max_codazzi_obstruction);
  o["sectional_spread"] = to_json(r.sectional_spread);
  ojson tol;
  tol["codazzi"] = to_json(r.tol_codazzi);
  tol["spread"] = to_json(r.tol_spread);
  o["tolerances"] = tol;
  o["triples_per_point"] = r.triples_per_point;
  o["seed"] = r.seed;
  ojson pts = ojson::array();
  for (const auto& p : r.per_point) {
    ojson e;
    e["point"] = to_json(p.point);
    e["max_obstruction"] = to_json(p.max_obstruction);
    e["k_min"] = to_json(p.k_min);
    e["k_max"] = to_json(p.k_max);
    e["resamples"] = p.resamples;
    pts.push_back(e);
  }
  o["per_point"] = pts;
  return o;
}

ojson catalog_entry_json(const CatalogEntry& e) {
  ojson o;
  o["id"] = e.id;
  o["kind"] = e.kind == EntryKind::Ambient ? "ambient" : "immersion";
  o["parameters"] = e.parameters;
  o["ground_truth"] = std::string(ground_truth_name(e.ground_truth));
  if (!e.umbilic_points.empty()) {
    ojson pts = ojson::array();
    for (const Vec& u : e.umbilic_points) pts.push_back(to_json(u));
    o["umbilic_points"] = pts;
  }
  if (e.constant_curvature) o["sectional_curvature"] = *e.constant_curvature;
  const Box& box = e.ambient ? e.ambient->domain() : e.immersion->domain();
  ojson dom = ojson::array();
  for (int i = 0; i < box.lo.size(); ++i) dom.push_back({box.lo(i), box.hi(i)});
  o["domain"] = dom;
  if (e.immersion) {
    o["ambient"] = e.immersion->ambient().id();
    o["param_dim"] = e.immersion->param_dim();
    o["orientation"] = e.immersion->orientation().name;
    if (e.is_round_sphere) o["round_sphere"] = *e.is_round_sphere;
    if (e.is_hyperbolic_space) o["hyperbolic_space"] = *e.is_hyperbolic_space;
    if (e.model_radius) o["model_radius"] = *e.model_radius;
  } else {
    o["dimension"] = e.ambient->dim();
    o["index"] = e.ambient->signature().index;
  }
  return o;
}

ojson document(const std::string& kind, const ojson& payload) {
  ojson o;
  o["schema_version"] = kSchemaVersion;
  o["kind"] = kind;
  for (auto it = payload.begin(); it != payload.end(); ++it) o[it.key()] = it.value();
  return o;
}

std::string slice_samples_csv(const SliceResult& r) {
  std::ostringstream out;
  if (r.samples.empty()) return "";
  const auto& s0 = r.samples[0];
  std::vector<std::string> head;
  for (int i = 0; i < s0.p.size(); ++i) head.push_back("x" + std::to_string(i));
  for (int i = 0; i < s0.t.size(); ++i) head.push_back("t" + std::to_string(i));
  for (int i = 0; i < s0.w.size(); ++i) head.push_back("w" + std::to_string(i));
  for (size_t i = 0; i < head.size(); ++i) out << (i ? "," : "") << head[i];
  out << "\n";
  for (const auto& s : r.samples) {
    bool first = true;
    for (const Vec* v : {&s.p, &s.t, &s.w})
      for (int i = 0; i < v->size(); ++i) {
        out << (first ? "" : ",") << csv_number((*v)(i));
        first = false;
      }
    out << "\n";
  }
  return out.str();
}

std::string verdict_csv(const VerdictReport& r) {
  std::set<std::string> keys;
  int dim = 0;
  for (const auto& p : r.per_point) {
    dim = std::max(dim, static_cast<int>(p.parameter.size()));
    for (const auto& [k, v] : p.residuals) keys.insert(k);
  }
  std::ostringstream out;
  for (int i = 0; i < dim; ++i) out << "u" << i << ",";
  out << "pass";
  for (const auto& k : keys) out << "," << k;
  out << "\n";
  for (const auto& p : r.per_point) {
    for (int i = 0; i < dim; ++i) out << (i < p.parameter.size() ? csv_number(p.parameter(i)) : "") << ",";
    out << (p.pass ? 1 : 0);
    for (const auto& k : keys) {
      auto it = p.residuals.find(k);
      out << "," << (it == p.residuals.end() ? "" : csv_number(it->second));
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace umb
