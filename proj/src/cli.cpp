#include "umb/cli.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "umb/error.hpp"
#include "umb/report.hpp"

namespace umb {

namespace {

using ojson = nlohmann::ordered_json;

struct RunConfig {
  std::string command;
  std::string suite;
  std::string surface;
  std::string metric;
  std::string grid;
  std::string point;
  std::string dirs = "basis";
  int s = -1;
  int samples = -1;
  std::uint64_t seed = 42;
  double tol = -1.0;
  std::string out;
  std::string format = "json";
};

// Values from --config fill only the fields not given as flags.
void apply_config(RunConfig& c, const std::string& path, const CLI::App& sub) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open config file", path);
  ojson j;
  try {
    j = ojson::parse(in);
  } catch (const std::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("invalid config JSON: ") + e.what(), path);
  }
  if (!j.is_object()) throw Error(ErrorCode::ParseError, "config must be a JSON object", path);
  using Setter = void (*)(RunConfig&, const ojson&);
  static const std::map<std::string, Setter> setters = {
      {"surface", [](RunConfig& r, const ojson& v) { r.surface = v.get<std::string>(); }},
      {"metric", [](RunConfig& r, const ojson& v) { r.metric = v.get<std::string>(); }},
      {"grid", [](RunConfig& r, const ojson& v) { r.grid = v.get<std::string>(); }},
      {"point", [](RunConfig& r, const ojson& v) { r.point = v.get<std::string>(); }},
      {"dirs", [](RunConfig& r, const ojson& v) { r.dirs = v.get<std::string>(); }},
      {"s", [](RunConfig& r, const ojson& v) { r.s = v.get<int>(); }},
      {"samples", [](RunConfig& r, const ojson& v) { r.samples = v.get<int>(); }},
      {"seed", [](RunConfig& r, const ojson& v) { r.seed = v.get<std::uint64_t>(); }},
      {"tol", [](RunConfig& r, const ojson& v) { r.tol = v.get<double>(); }},
      {"out", [](RunConfig& r, const ojson& v) { r.out = v.get<std::string>(); }},
      {"format", [](RunConfig& r, const ojson& v) { r.format = v.get<std::string>(); }},
  };
  try {
    for (auto it = j.begin(); it != j.end(); ++it) {
      const std::string& k = it.key();
      if (k == "command" || k == "suite") continue;  // fixed by the command line
      const auto setter = setters.find(k);
      if (setter == setters.end()) throw Error(ErrorCode::ParseError, "unknown config key '" + k + "'", path);
      if (sub.count("--" + k) == 0) setter->second(c, it.value());
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("bad config value: ") + e.what(), path);
  }
}

std::vector<int> parse_grid(const std::string& g) {
  std::vector<int> out;
  std::stringstream ss(g);
  std::string item;
  while (std::getline(ss, item, 'x')) {
    try {
      size_t used = 0;
      const int v = std::stoi(item, &used);
      if (used != item.size() || v < 1) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::exception&) {
      throw Error(ErrorCode::InvalidArgument, "grid must look like AxB with positive counts", g);
    }
  }
  if (out.empty()) throw Error(ErrorCode::InvalidArgument, "empty grid", g);
  return out;
}

// "u=0.1,v=0.2", "u0=0.1,u1=0.2" or plain "0.1,0.2".
Vec parse_point(const std::string& text, int m) {
  Vec u = Vec::Zero(m);
  std::vector<bool> seen(m, false);
  std::stringstream ss(text);
  std::string item;
  int next = 0;
  const std::map<std::string, int> names = {{"u", 0}, {"v", 1}, {"w", 2}};
  while (std::getline(ss, item, ',')) {
    int idx = next;
    std::string value = item;
    if (const auto eq = item.find('='); eq != std::string::npos) {
      const std::string name = item.substr(0, eq);
      value = item.substr(eq + 1);
      if (auto it = names.find(name); it != names.end()) idx = it->second;
      else if (name.size() > 1 && name[0] == 'u' && name.find_first_not_of("0123456789", 1) == std::string::npos)
        idx = std::stoi(name.substr(1));
      else throw Error(ErrorCode::InvalidArgument, "unknown coordinate '" + name + "'", text);
    }
    if (idx < 0 || idx >= m) throw Error(ErrorCode::InvalidArgument, "coordinate index out of range", text);
    try {
      size_t used = 0;
      u(idx) = std::stod(value, &used);
      if (used != value.size()) throw std::invalid_argument(value);
    } catch (const std::exception&) {
      throw Error(ErrorCode::InvalidArgument, "cannot parse coordinate value '" + value + "'", text);
    }
    seen[idx] = true;
    next = idx + 1;
  }
  for (int i = 0; i < m; ++i)
    if (!seen[i]) throw Error(ErrorCode::InvalidArgument, "point must give all " + std::to_string(m) + " coordinates", text);
  return u;
}

bool is_file_ref(const std::string& id) { return id.rfind("file:", 0) == 0; }

struct Surface {
  Immersion im;
  std::optional<CatalogEntry> entry;
};

Surface load_surface(const std::string& id) {
  if (id.empty()) throw Error(ErrorCode::InvalidArgument, "--surface is required");
  if (is_file_ref(id)) return {load_immersion_file(id.substr(5)), std::nullopt};
  CatalogEntry e = resolve(id, EntryKind::Immersion);
  return {*e.immersion, e};
}

struct Metric {
  AmbientSpace space;
  std::optional<CatalogEntry> entry;
};

Metric load_metric(const std::string& id) {
  if (id.empty()) throw Error(ErrorCode::InvalidArgument, "--metric is required");
  if (is_file_ref(id)) return {load_metric_file(id.substr(5)), std::nullopt};
  CatalogEntry e = resolve(id, EntryKind::Ambient);
  return {*e.ambient, e};
}

void emit(const RunConfig& c, const std::string& text, std::ostream& out) {
  if (c.out.empty()) {
    out << text;
    return;
  }
  std::ofstream f(c.out);
  if (!f) throw Error(ErrorCode::IoError, "cannot write output file", c.out);
  f << text;
}

void check_format(const RunConfig& c) {
  if (c.format != "json" && c.format != "csv")
    throw Error(ErrorCode::InvalidArgument, "format must be json or csv", c.format);
}

std::string csv_num(double x) {
  std::ostringstream ss;
  ss.precision(17);
  ss << x;
  return ss.str();
}

// ------------------------------------------------------------------ analyze

int cmd_analyze(const RunConfig& c, std::ostream& out) {
  const Surface sf = load_surface(c.surface);
  const Immersion& im = sf.im;
  const std::vector<Vec> pts = grid_points(im, parse_grid(c.grid.empty() ? "10x10" : c.grid));
  const double tol = c.tol > 0 ? c.tol : default_umbilic_tol(im.rung());
  std::vector<ShapeReport> reps(pts.size());
  for_each_index(pts.size(), [&](size_t i) { reps[i] = shape_report(im, pts[i]); });

  int umbilic = 0;
  double max_defect = 0.0;
  for (const auto& r : reps) {
    umbilic += r.umbilicity_defect <= tol;
    max_defect = std::max(max_defect, r.umbilicity_defect);
  }
  if (c.format == "csv") {
    std::ostringstream s;
    const int m = im.param_dim();
    for (int i = 0; i < m; ++i) s << "u" << i << ",";
    s << "mean_curvature_norm";
    for (int i = 0; i < m; ++i) s << ",kappa" << i;
    s << ",defect,is_umbilic\n";
    for (const auto& r : reps) {
      for (int i = 0; i < m; ++i) s << csv_num(r.u(i)) << ",";
      s << csv_num(r.mean_curvature.norm());
      for (int i = 0; i < m; ++i) s << "," << csv_num(r.principal_curvatures(i));
      s << "," << csv_num(r.umbilicity_defect) << "," << (r.umbilicity_defect <= tol ? 1 : 0) << "\n";
    }
    emit(c, s.str(), out);
    return 0;
  }
  ojson rows = ojson::array();
  for (const auto& r : reps) rows.push_back(shape_summary_json(r, r.umbilicity_defect <= tol));
  ojson p;
  p["surface"] = im.id();
  p["grid"] = c.grid.empty() ? "10x10" : c.grid;
  p["umbilic_tolerance"] = tol;
  p["rows"] = rows;
  ojson agg;
  agg["points"] = reps.size();
  agg["umbilic_fraction"] = reps.empty() ? 0.0 : static_cast<double>(umbilic) / reps.size();
  agg["max_defect"] = max_defect;
  p["aggregate"] = agg;
  emit(c, document("analyze", p).dump(2) + "\n", out);
  return 0;
}

// -------------------------------------------------------------------- slice

Mat slice_directions(const RunConfig& c, const Immersion& im, const Vec& u, int s) {
  const ShapeReport sh = shape_report(im, u);
  const int m = im.param_dim();
  // hypersurfaces use the principal frame so that angles are measured from e1
  const Mat frame = im.codim() == 1 ? sh.principal_directions : sh.tangent_frame;
  if (c.dirs == "basis") return frame.leftCols(s);
  if (c.dirs == "random") {
    std::mt19937_64 rng(c.seed);
    return sh.tangent_frame * random_orthonormal(m, s, rng);
  }
  if (c.dirs.rfind("angles:", 0) == 0) {
    if (s != 1) throw Error(ErrorCode::InvalidArgument, "angles: gives one direction, use --s 1", c.dirs);
    double a = 0.0;
    try {
      a = std::stod(c.dirs.substr(7));
    } catch (const std::exception&) {
      throw Error(ErrorCode::InvalidArgument, "cannot parse angle", c.dirs);
    }
    if (m < 2) throw Error(ErrorCode::InvalidArgument, "angles need m >= 2", c.dirs);
    const double rad = a * std::numbers::pi / 180.0;
    Mat d(frame.rows(), 1);
    d.col(0) = std::cos(rad) * frame.col(0) + std::sin(rad) * frame.col(1);
    return d;
  }
  throw Error(ErrorCode::InvalidArgument, "dirs must be basis, random or angles:<degrees>", c.dirs);
}

int cmd_slice(const RunConfig& c, std::ostream& out) {
  const Surface sf = load_surface(c.surface);
  const Immersion& im = sf.im;
  const Vec u = c.point.empty() ? Vec(im.domain().center()) : parse_point(c.point, im.param_dim());
  const int s = c.s > 0 ? c.s : 1;
  const Mat d = slice_directions(c, im, u, s);
  TraceOptions opts;
  if (c.samples > 0) opts.samples_per_dim = c.samples;
  SliceResult r = run_slice(im, make_slice_spec(im, u, d), opts);
  if (im.ambient().flat() && !im.quadric()) {
    if (im.ambient().signature().index == 0) fit_slice_sphere(r);
    else fit_slice_hyperbolic(r);
  }
  const double tol = c.tol > 0 ? c.tol : 1e-5;
  if (c.format == "csv") emit(c, slice_samples_csv(r), out);
  else {
    ojson p = to_json(r);
    p["surface"] = im.id();
    p["identity_tolerance"] = tol;
    emit(c, document("slice", p).dump(2) + "\n", out);
  }
  return r.identity_residual <= tol ? 0 : 1;
}

// ------------------------------------------------------------------- verify

std::vector<Vec> suite_points(const std::string& suite, const RunConfig& c, const Immersion& im,
                              const std::optional<CatalogEntry>& entry) {
  if (!c.point.empty()) return {parse_point(c.point, im.param_dim())};
  if (suite == "remark4") return {Vec(im.domain().center())};
  if (suite == "sphere-characterization" || suite == "hyperbolic-characterization")
    return grid_points(im, parse_grid(c.grid.empty() ? "5x5" : c.grid));
  std::vector<Vec> pts = random_points(im, c.samples > 0 ? c.samples : 20, c.seed);
  if (entry)
    for (const Vec& q : entry->umbilic_points)
      if (im.domain().contains(q)) pts.push_back(q);
  return pts;
}

bool report_success(const VerdictReport& r) {
  return r.ground_truth_agreement ? *r.ground_truth_agreement : r.overall;
}

int cmd_verify(const RunConfig& c, std::ostream& out) {
  const auto& ids = suite_ids();
  if (c.suite != "all" && std::find(ids.begin(), ids.end(), c.suite) == ids.end())
    throw Error(ErrorCode::InvalidArgument, "unknown suite", c.suite);
  const std::vector<std::string> suites = c.suite == "all" ? ids : std::vector<std::string>{c.suite};
  SuiteOptions o;
  o.seed = c.seed;
  if (c.tol > 0) o.tol = c.tol;
  if (c.s > 0) o.s = c.s;

  std::vector<VerdictReport> reports;
  for (const auto& suite : suites) {
    std::vector<std::string> targets;
    if (!c.surface.empty()) targets = {c.surface};
    else targets = default_targets(suite);
    for (const auto& id : targets) {
      const Surface sf = load_surface(id);
      SuiteTarget t = sf.entry ? target_from_catalog(*sf.entry) : target_from_immersion(sf.im);
      SuiteOptions so = o;
      const bool characterization = suite.find("characterization") != std::string::npos;
      if (characterization && t.model_radius) so.radius_mode = true;
      reports.push_back(run_suite(suite, t, suite_points(suite, c, sf.im, sf.entry), so));
    }
  }
  bool ok = true;
  for (const auto& r : reports) ok = ok && report_success(r);
  if (c.format == "csv") {
    std::ostringstream s;
    for (const auto& r : reports) s << "# " << r.suite_id << " " << r.surface_id << "\n" << verdict_csv(r);
    emit(c, s.str(), out);
  } else {
    ojson arr = ojson::array();
    for (const auto& r : reports) {
      ojson j = to_json(r);
      j["success"] = report_success(r);
      arr.push_back(j);
    }
    ojson p;
    p["suite"] = c.suite;
    p["all_pass"] = ok;
    p["reports"] = arr;
    emit(c, document("verify", p).dump(2) + "\n", out);
  }
  return ok ? 0 : 1;
}

// ------------------------------------------------------------- audit-cartan

int cmd_audit(const RunConfig& c, std::ostream& out) {
  const Metric mt = load_metric(c.metric);
  CartanAuditOptions opts;
  if (c.tol > 0) opts.tol_codazzi = c.tol;
  const auto pts = sample_points(mt.space, c.samples > 0 ? c.samples : 10, c.seed);
  const CartanAuditReport r = cartan_audit(mt.space, pts, opts, c.seed);
  ojson p = to_json(r);
  bool ok = r.verdict == AuditVerdict::ConstantCurvatureCompatible;
  if (mt.entry && mt.entry->ground_truth == GroundTruth::Obstructed) ok = r.verdict == AuditVerdict::Obstructed;
  if (mt.entry) p["expected"] = std::string(ground_truth_name(mt.entry->ground_truth));
  if (c.format == "csv") {
    std::ostringstream s;
    const int n = mt.space.dim();
    for (int i = 0; i < n; ++i) s << "x" << i << ",";
    s << "max_obstruction,k_min,k_max\n";
    for (const auto& pr : r.per_point) {
      for (int i = 0; i < n; ++i) s << csv_num(pr.point(i)) << ",";
      s << csv_num(pr.max_obstruction) << "," << csv_num(pr.k_min) << "," << csv_num(pr.k_max) << "\n";
    }
    emit(c, s.str(), out);
  } else {
    emit(c, document("audit-cartan", p).dump(2) + "\n", out);
  }
  return ok ? 0 : 1;
}

// ------------------------------------------------------------------ catalog

int cmd_catalog(const RunConfig& c, std::ostream& out) {
  ojson entries = ojson::array();
  if (!c.surface.empty()) entries.push_back(catalog_entry_json(resolve(c.surface, EntryKind::Immersion)));
  if (!c.metric.empty()) entries.push_back(catalog_entry_json(resolve(c.metric, EntryKind::Ambient)));
  if (c.surface.empty() && c.metric.empty()) {
    for (const auto& id : listed_ambient_ids()) entries.push_back(catalog_entry_json(resolve(id, EntryKind::Ambient)));
    for (const auto& id : listed_immersion_ids())
      entries.push_back(catalog_entry_json(resolve(id, EntryKind::Immersion)));
  }
  if (c.format == "csv") {
    std::ostringstream s;
    s << "id,kind,ground_truth\n";
    for (const auto& e : entries)
      s << '"' << e["id"].get<std::string>() << "\"," << e["kind"].get<std::string>() << ","
        << e["ground_truth"].get<std::string>() << "\n";
    emit(c, s.str(), out);
  } else {
    ojson p;
    p["entries"] = entries;
    emit(c, document("catalog", p).dump(2) + "\n", out);
  }
  return 0;
}

void diagnostic(std::ostream& err, const std::string& code, const std::string& message, const std::string& input) {
  ojson d;
  d["code"] = code;
  d["message"] = message;
  d["input"] = input;
  err << d.dump() << "\n";
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig c;
  std::string config_path;
  CLI::App app{"Umbilic points, normal slices and space-form checks", "umbilic-lab"};
  app.require_subcommand(1);

  auto common = [&](CLI::App* sub) {
    sub->add_option("--surface", c.surface, "surface id or file:<path.json>");
    sub->add_option("--metric", c.metric, "metric id or file:<path.json>");
    sub->add_option("--grid", c.grid, "parameter grid AxB");
    sub->add_option("--point", c.point, "parameter point u=...,v=...");
    sub->add_option("--dirs", c.dirs, "slice directions: basis | random | angles:<degrees>");
    sub->add_option("--s", c.s, "slice dimension");
    sub->add_option("--samples", c.samples, "points (verify, audit-cartan) or samples per dimension (slice)");
    sub->add_option("--seed", c.seed, "random seed");
    sub->add_option("--tol", c.tol, "tolerance");
    sub->add_option("--out", c.out, "output file (default: standard output)");
    sub->add_option("--format", c.format, "json or csv");
    sub->add_option("--config", config_path, "JSON file with default values for the flags");
  };
  CLI::App* analyze = app.add_subcommand("analyze", "shape report over a parameter grid");
  CLI::App* slice = app.add_subcommand("slice", "trace and measure one normal slice");
  CLI::App* verify = app.add_subcommand("verify", "run a verification suite");
  CLI::App* audit = app.add_subcommand("audit-cartan", "pointwise constant-curvature audit of a metric");
  CLI::App* catalog = app.add_subcommand("catalog", "list built-in ambients and surfaces");
  for (CLI::App* sub : {analyze, slice, verify, audit, catalog}) common(sub);
  verify->add_option("suite", c.suite, "suite id or all")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    std::string input;
    for (int i = 1; i < argc; ++i) input += (i > 1 ? " " : "") + std::string(argv[i]);
    diagnostic(err, "InvalidArgument", e.what(), input);
    return 2;
  }

  try {
    CLI::App* sub = app.get_subcommands().front();
    c.command = sub->get_name();
    if (!config_path.empty()) apply_config(c, config_path, *sub);
    check_format(c);
    if (c.command == "analyze") return cmd_analyze(c, out);
    if (c.command == "slice") return cmd_slice(c, out);
    if (c.command == "verify") return cmd_verify(c, out);
    if (c.command == "audit-cartan") return cmd_audit(c, out);
    return cmd_catalog(c, out);
  } catch (const Error& e) {
    diagnostic(err, std::string(code_name(e.code())), e.what(), e.input());
    return 2;
  } catch (const std::exception& e) {
    diagnostic(err, "Internal", e.what(), "");
    return 2;
  }
}

}  // namespace umb
