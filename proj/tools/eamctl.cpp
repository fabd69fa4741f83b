// eamctl: state -> entropy table -> EAM fit -> analyses, as CSV/JSON artifacts.

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "eam/analysis.hpp"
#include "eam/cft.hpp"
#include "eam/error.hpp"
#include "eam/metric.hpp"
#include "eam/solver.hpp"
#include "eam/states.hpp"
#include "eam/text.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kSchemaVersion = 1;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string command;
  // state
  std::string state = "dimer";
  int n_sites = 8;
  std::string profile = "uniform";
  double delta = 0.0;
  double h = 0.0;
  bool flip_sign = false;
  std::string boundary = "periodic";
  int renyi = 1;
  // sampling and fit
  std::size_t sample = 0;  // 0: exhaustive
  std::uint64_t seed = 1;
  bool s0 = false;
  std::string eval = "auto";
  // output
  std::string out_dir;
  std::string log_base = "e";
  // contour
  std::string block;
  std::string route = "auto";
  // cft
  std::string geometry = "II";
  int lattice_n = 12;
  double central_charge = 1.0;
  double u = 0.0, v = 1.0, radius = 0.25, length = 1.0, beta = 1.0, x0 = 0.5, epsilon = 1e-3;
  int points = 50;
  // metric / audit
  std::string input;
  std::string input_kind = "auto";
  double l0 = 1.0;
  double j_max = std::log(2.0);
  double exponent = -0.5;
  std::string negative = "zero";
  std::string pairs;
  std::size_t triples = 1000;
};

json to_json(const RunConfig& c) {
  json j = {{"schema_version", kSchemaVersion}, {"command", c.command}};
  if (c.command == "fit" || c.command == "contour" || (c.command == "audit" && c.input.empty())) {
    j["state"] = {{"kind", c.state}, {"n_sites", c.n_sites}, {"renyi", c.renyi}};
    if (c.state == "free-fermion") {
      j["state"]["profile"] = c.profile;
      j["state"]["boundary"] = c.boundary;
      j["state"]["delta"] = c.delta;
      j["state"]["h"] = c.h;
      j["state"]["flip_sign"] = c.flip_sign;
    }
    if (c.state == "xxz") j["state"]["delta"] = c.delta;
    j["sampling"] = c.sample == 0 ? json{{"mode", "exhaustive"}}
                                  : json{{"mode", "random"}, {"count", c.sample}, {"seed", c.seed}};
    j["fit"] = {{"s0", c.s0}, {"eval", c.eval}};
  }
  if (c.command == "contour") j["contour"] = {{"block", c.block}, {"route", c.route}, {"input", c.input}};
  if (c.command == "cft") {
    j["cft"] = {{"geometry", c.geometry}, {"N", c.lattice_n}, {"c", c.central_charge}, {"u", c.u}, {"v", c.v},
                {"R", c.radius},        {"L", c.length},    {"beta", c.beta},        {"x0", c.x0},
                {"epsilon", c.epsilon}, {"points", c.points}};
  }
  if (c.command == "metric") {
    j["metric"] = {{"input", c.input},         {"l0", c.l0},       {"j_max", c.j_max},
                   {"exponent", c.exponent},   {"negative", c.negative}, {"pairs", c.pairs}};
  }
  if (c.command == "audit") j["audit"] = {{"input", c.input}, {"input_kind", c.input_kind}, {"triples", c.triples}};
  j["seed"] = c.seed;
  j["log_base"] = c.log_base;
  j["out"] = c.out_dir;
  return j;
}

template <class T>
void take(const json& j, const char* key, T& into) {
  if (j.contains(key)) into = j.at(key).get<T>();
}

/// Flat JSON object with the long flag names (dashes or underscores) as keys.
void apply_config_file(const std::string& path, RunConfig& c) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config file '" + path + "'");
  json j = json::parse(in, nullptr, false);
  if (j.is_discarded() || !j.is_object()) throw UsageError("config file '" + path + "' is not a JSON object");
  json flat;
  for (auto& [k, v] : j.items()) {
    std::string key = k;
    for (auto& ch : key) ch = ch == '-' ? '_' : ch;
    flat[key] = v;
  }
  try {
    take(flat, "state", c.state);
    take(flat, "n", c.n_sites);
    take(flat, "profile", c.profile);
    take(flat, "delta", c.delta);
    take(flat, "h", c.h);
    take(flat, "flip_sign", c.flip_sign);
    take(flat, "boundary", c.boundary);
    take(flat, "renyi", c.renyi);
    take(flat, "sample", c.sample);
    take(flat, "seed", c.seed);
    take(flat, "s0", c.s0);
    take(flat, "eval", c.eval);
    take(flat, "out", c.out_dir);
    take(flat, "log_base", c.log_base);
    take(flat, "block", c.block);
    take(flat, "route", c.route);
    take(flat, "geometry", c.geometry);
    take(flat, "N", c.lattice_n);
    take(flat, "c", c.central_charge);
    take(flat, "u", c.u);
    take(flat, "v", c.v);
    take(flat, "R", c.radius);
    take(flat, "L", c.length);
    take(flat, "beta", c.beta);
    take(flat, "x0", c.x0);
    take(flat, "eps", c.epsilon);
    take(flat, "points", c.points);
    take(flat, "input", c.input);
    take(flat, "input_kind", c.input_kind);
    take(flat, "l0", c.l0);
    take(flat, "jmax", c.j_max);
    take(flat, "exponent", c.exponent);
    take(flat, "negative", c.negative);
    take(flat, "pairs", c.pairs);
    take(flat, "triples", c.triples);
  } catch (const json::exception& e) {
    throw UsageError("config file '" + path + "': " + e.what());
  }
}

// ---------------------------------------------------------------- validation

double log_base_value(const std::string& b) {
  if (b == "e") return 0.0;
  if (b == "2") return 2.0;
  if (b == "10") return 10.0;
  throw UsageError("--log-base must be e, 2 or 10");
}

eam::StateSpec state_spec(const RunConfig& c) {
  eam::StateSpec s;
  try {
    s.kind = eam::parse_state_kind(c.state);
    s.hopping.profile = eam::parse_profile(c.profile);
    s.boundary = eam::parse_boundary(c.boundary);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  s.n_sites = c.n_sites;
  s.hopping.delta = c.delta;
  s.hopping.h = c.h;
  s.hopping.flip_sign = c.flip_sign;
  s.delta = c.delta;
  s.renyi_n = c.renyi;
  if (c.n_sites < 2 || c.n_sites > 24) throw UsageError("--n must be in 2..24");
  if (c.renyi < 1) throw UsageError("--renyi must be >= 1");
  if (s.kind == eam::StateKind::xxz && c.n_sites > 14) throw UsageError("--state xxz supports --n up to 14");
  if ((s.kind == eam::StateKind::dimer || s.kind == eam::StateKind::rainbow) && c.n_sites % 2 != 0) {
    throw UsageError("--state " + c.state + " needs an even --n");
  }
  if (c.eval != "auto" && c.eval != "sample" && c.eval != "exhaustive") {
    throw UsageError("--eval must be auto, sample or exhaustive");
  }
  if (c.sample > 0 && c.sample > (std::size_t{1} << c.n_sites) - 2) {
    throw UsageError("--sample exceeds the number of nontrivial masks");
  }
  return s;
}

fs::path output_dir(const RunConfig& c) {
  std::string dir = c.out_dir;
  if (dir.empty()) {
    const char* env = std::getenv("EAM_OUTPUT_DIR");
    dir = env && *env ? env : ".";
  }
  fs::create_directories(dir);
  return dir;
}

// ------------------------------------------------------------------- output

std::ofstream open_out(const fs::path& p) {
  std::ofstream out(p);
  if (!out) throw eam::Error("cannot write '" + p.string() + "'");
  return out;
}

/// CSV with a comment preamble carrying schema and config.
std::ofstream open_csv(const fs::path& p, const std::string& schema, const json& config) {
  auto out = open_out(p);
  out << "# schema: " << schema << " v" << kSchemaVersion << '\n';
  out << "# config: " << config.dump() << '\n';
  return out;
}

void write_json(const fs::path& p, const std::string& schema, const json& config, json body) {
  body["schema"] = schema;
  body["version"] = kSchemaVersion;
  body["config"] = config;
  auto out = open_out(p);
  out << body.dump(1) << '\n';
}

std::string num(double x) { return eam::format_double(x); }

void write_profile(const fs::path& p, const json& config, const std::string& key, const std::vector<double>& values,
                   double base) {
  auto out = open_csv(p, "eam-profile", config);
  out << key << ",J_nats";
  if (base > 0) out << ",J_log" << num(base);
  out << '\n';
  for (std::size_t k = 0; k < values.size(); ++k) {
    out << k + 1 << ',' << num(values[k]);
    if (base > 0) out << ',' << num(values[k] / std::log(base));
    out << '\n';
  }
}

void write_contour(const fs::path& p, const json& config, const eam::ContourVector& cv, double base) {
  auto out = open_csv(p, "eam-contour", config);
  out << "site,value_nats";
  if (base > 0) out << ",value_log" << num(base);
  out << '\n';
  for (const auto& [site, v] : cv.values) {
    out << site << ',' << num(v);
    if (base > 0) out << ',' << num(v / std::log(base));
    out << '\n';
  }
}

json finite_or_string(double x) { return std::isfinite(x) ? json(x) : json(num(x)); }

// ----------------------------------------------------------------- commands

eam::Boundary error_boundary(const eam::StateSpec& s) {
  return s.kind == eam::StateKind::free_fermion && s.boundary == eam::Boundary::open ? eam::Boundary::open
                                                                                      : eam::Boundary::periodic;
}

eam::EntropyTable make_table(const RunConfig& c, const eam::PreparedState& st, const json& config) {
  eam::TableMeta meta;
  meta.state_desc = st.spec.describe();
  meta.renyi_n = c.renyi;
  meta.generated = eam::utc_timestamp();
  meta.config_json = config.dump();
  const auto spec = c.sample == 0 ? eam::SampleSpec::exhaustive() : eam::SampleSpec::random(c.sample, c.seed);
  return eam::build_table(st.entropy, c.n_sites, spec, meta);
}

eam::Eam fit(const eam::EntropyTable& t, bool s0) {
  return t.exhaustive() ? eam::fit_full(t, s0) : eam::fit_sampled(t, s0);
}

int cmd_fit(const RunConfig& c) {
  const auto spec = state_spec(c);
  const double base = log_base_value(c.log_base);
  const auto dir = output_dir(c);
  const json config = to_json(c);

  const auto st = eam::prepare_state(spec);
  const auto table = make_table(c, st, config);
  const auto eam = fit(table, c.s0);

  // Error evaluation set.
  std::string mode = c.eval;
  if (mode == "auto") mode = (table.exhaustive() || c.n_sites <= 16) ? "exhaustive" : "sample";
  std::optional<eam::EntropyTable> full;
  if (mode == "exhaustive" && !table.exhaustive()) {
    eam::TableMeta meta;
    meta.state_desc = spec.describe();
    full = eam::build_table(st.entropy, c.n_sites, eam::SampleSpec::exhaustive(), meta);
  }
  const auto& eval_table = full ? *full : table;
  const auto mean = eam::error_mean(eam, eval_table);
  const auto groups = eam::error_by_boundary(eam, eval_table, error_boundary(spec));

  eam::save_table(table, (dir / "table.csv").string(), eam::TableFormat::csv);
  eam::save_eam(eam, (dir / "eam.csv").string(), eam::TableFormat::csv, config.dump(), static_cast<int>(base));
  write_profile(dir / "profile.csv", config, "r", eam::directed_profile(eam, std::min(1, c.n_sites - 1)), base);
  write_profile(dir / "profile_chord.csv", config, "d", eam::translation_averaged_profile(eam), base);

  json body;
  body["state"] = spec.describe();
  body["evaluation"] = {{"mode", mode}, {"masks", mean.masks}, {"exhaustive", mean.exhaustive}};
  body["mean_abs_error"] = mean.value;
  json by = json::array();
  for (const auto& g : groups) {
    by.push_back({{"n_boundaries", g.n_boundaries},
                  {"count", g.count},
                  {"mean_abs_error", g.mean_abs},
                  {"mean_rel_error", g.mean_rel},
                  {"zero_entropy_masks", g.zero_entropy}});
  }
  body["by_boundary_count"] = by;
  const auto& d = eam.diagnostics;
  body["fit"] = {{"method", d.method},       {"rows_used", d.rows_used},
                 {"rank", d.rank},           {"n_params", d.n_params},
                 {"rank_deficient", d.rank_deficient}, {"condition", finite_or_string(d.condition)},
                 {"residual_norm", d.residual_norm},   {"warnings", d.warnings}};
  if (eam.s0()) body["s0"] = *eam.s0();
  json neg = json::array();
  for (const auto& e : eam::negative_entries(eam)) neg.push_back({{"i", e.i}, {"j", e.j}, {"J", e.value}});
  body["negative_entries"] = neg;
  body["state_warnings"] = st.warnings;
  write_json(dir / "errors.json", "eam-errors", config, body);

  std::cout << "fit " << spec.describe() << ": mean |S - S_hat| = " << num(mean.value) << " over " << mean.masks
            << " masks; outputs in " << dir.string() << '\n';
  for (const auto& w : d.warnings) std::cerr << "warning: " << w << '\n';
  for (const auto& w : st.warnings) std::cerr << "warning: " << w << '\n';
  return 0;
}

int cmd_contour(const RunConfig& c) {
  const auto spec = state_spec(c);
  const double base = log_base_value(c.log_base);
  if (c.block.empty()) throw UsageError("contour needs --block");
  if (c.route != "auto" && c.route != "eam" && c.route != "fermion" && c.route != "both") {
    throw UsageError("--route must be auto, eam, fermion or both");
  }
  eam::BlockMask block(1, 0);
  try {
    block = eam::parse_block(c.n_sites, c.block);
  } catch (const std::exception& e) {
    throw UsageError(std::string("--block: ") + e.what());
  }
  if (block.is_trivial()) throw UsageError("--block must be a nonempty proper subset");
  const bool fermionic = spec.kind == eam::StateKind::free_fermion;
  const bool want_fermion = c.route == "fermion" || c.route == "both" || (c.route == "auto" && fermionic);
  const bool want_eam = c.route != "fermion";
  if (want_fermion && !fermionic) throw eam::UnsupportedCase("the correlation-matrix contour needs a free-fermion state");

  const auto dir = output_dir(c);
  const json config = to_json(c);
  const auto st = eam::prepare_state(spec);
  json body;
  body["block"] = block.sites();
  if (want_eam) {
    const auto eam = c.input.empty() ? fit(make_table(c, st, config), c.s0)
                                     : eam::load_eam(c.input, eam::format_from_path(c.input));
    const auto cv = eam::contour_from_eam(eam, block);
    write_contour(dir / "contour_eam.csv", config, cv, base);
    body["eam"] = {{"sum", cv.sum()},
                   {"predicted_entropy", eam::predict_entropy(eam, block)},
                   {"negative_values", cv.negative_count}};
  }
  if (want_fermion) {
    const auto cv = eam::fermion_contour(*st.correlation, block);
    write_contour(dir / "contour_fermion.csv", config, cv, base);
    body["fermion"] = {{"sum", cv.sum()},
                       {"entropy", eam::fermion_block_entropy(*st.correlation, block)},
                       {"negative_values", cv.negative_count}};
  }
  write_json(dir / "contour.json", "eam-contour-summary", config, body);
  std::cout << "contour of block " << c.block << " written to " << dir.string() << '\n';
  return 0;
}

eam::cft::Geometry geometry(const RunConfig& c) {
  using eam::cft::Geometry;
  using eam::cft::GeometryKind;
  try {
    switch (eam::cft::parse_geometry(c.geometry)) {
      case GeometryKind::plane: return Geometry::plane(c.u, c.v, c.epsilon);
      case GeometryKind::circle: return Geometry::circle(c.length, c.radius, c.epsilon);
      case GeometryKind::thermal: return Geometry::thermal(c.beta, c.radius, c.epsilon);
      case GeometryKind::half_line: return Geometry::half_line(c.x0, c.epsilon);
      case GeometryKind::strip: return Geometry::strip(c.length, c.x0, c.epsilon);
      case GeometryKind::thermal_half_line: return Geometry::thermal_half_line(c.beta, c.x0, c.epsilon);
    }
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("cft geometry: ") + e.what());
  }
  throw UsageError("unknown geometry");
}

int cmd_cft(const RunConfig& c) {
  if (c.lattice_n < 2) throw UsageError("--N must be >= 2");
  if (!(c.central_charge > 0)) throw UsageError("--c must be positive");
  if (c.points < 2) throw UsageError("--points must be >= 2");
  const auto g = geometry(c);
  const auto dir = output_dir(c);
  const json config = to_json(c);
  const double pi = std::acos(-1.0);

  {
    auto out = open_csv(dir / "cft_J.csv", "eam-cft-lattice-J", config);
    out << "r,J\n";
    for (int r = 1; r < c.lattice_n; ++r) out << r << ',' << num(eam::cft::lattice_conformal_J(c.lattice_n, r, c.central_charge)) << '\n';
  }
  {
    auto out = open_csv(dir / "cft_S.csv", "eam-cft-lattice-S", config);
    out << "l,S\n";
    for (int l = 0; l <= c.lattice_n; ++l) {
      const double s = (l == 0 || l == c.lattice_n)
                           ? 0.0
                           : c.central_charge / 3.0 * std::log(c.lattice_n / pi * std::sin(pi * l / c.lattice_n));
      out << l << ',' << num(s) << '\n';
    }
  }
  const auto [lo, hi] = g.a_eps();
  const auto comp = g.complement();
  // Reference point y: the middle of the first finite stretch of the complement.
  const auto [ca, cb] = comp.front();
  const double y = std::isfinite(ca) && std::isfinite(cb) ? 0.5 * (ca + cb) : (std::isfinite(ca) ? ca + 1.0 : cb - 1.0);
  const eam::cft::Params params{c.central_charge, 1, 0.0};
  {
    auto out = open_csv(dir / "cft_kernel.csv", "eam-cft-kernel", config);
    out << "x,g,f_prime,contour\n";
    for (int k = 1; k <= c.points; ++k) {
      const double x = lo + (hi - lo) * k / (c.points + 1);
      out << num(x) << ',' << num(eam::cft::kernel_g(g, x, y)) << ',' << num(eam::cft::f_prime(g, x)) << ','
          << num(eam::cft::contour_ansatz(g, params, x)) << '\n';
    }
  }
  json checks = json::array();
  for (int k = 1; k <= 5; ++k) {
    const double x = lo + (hi - lo) * k / 6.0;
    const auto r = eam::cft::check_kernel_consistency(g, x);
    checks.push_back({{"x", x}, {"f_prime", r.f_prime}, {"analytic", r.analytic}, {"quadrature", r.quadrature},
                      {"residual", r.residual}});
  }
  json body;
  body["geometry"] = eam::cft::to_string(g.kind);
  body["kernel_reference_y"] = y;
  body["width"] = {{"closed_form", eam::cft::conformal_width(g)}, {"exact", eam::cft::exact_width(g)}};
  body["entropy_n1"] = eam::cft::renyi_entropy_cft(g, params);
  body["kernel_consistency"] = checks;
  write_json(dir / "cft.json", "eam-cft", config, body);
  std::cout << "cft geometry " << eam::cft::to_string(g.kind) << " curves written to " << dir.string() << '\n';
  return 0;
}

std::vector<std::pair<int, int>> parse_pairs(const std::string& text, int n) {
  std::vector<std::pair<int, int>> out;
  if (text.empty()) {
    for (int j = 1; j < n; ++j) out.emplace_back(0, j);
    return out;
  }
  for (auto item : eam::split(text, ',')) {
    const auto parts = eam::split(eam::trim(item), ':');
    if (parts.size() != 2) throw UsageError("--pairs expects i:j,i:j,...");
    try {
      const int i = static_cast<int>(eam::parse_int(parts[0]));
      const int j = static_cast<int>(eam::parse_int(parts[1]));
      if (i < 0 || j < 0 || i >= n || j >= n) throw UsageError("--pairs site out of range");
      out.emplace_back(i, j);
    } catch (const std::invalid_argument& e) {
      throw UsageError(std::string("--pairs: ") + e.what());
    }
  }
  return out;
}

int cmd_metric(const RunConfig& c) {
  if (c.input.empty()) throw UsageError("metric needs --input <eam.csv|eam.json>");
  eam::MetricConfig mc;
  mc.l0 = c.l0;
  mc.j_max = c.j_max;
  mc.exponent = c.exponent;
  if (c.negative == "zero") {
    mc.negative = eam::NegativePolicy::treat_as_zero;
  } else if (c.negative == "error") {
    mc.negative = eam::NegativePolicy::error;
  } else {
    throw UsageError("--negative must be zero or error");
  }
  try {
    mc.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const auto eam = eam::load_eam(c.input, eam::format_from_path(c.input));
  const auto pairs = parse_pairs(c.pairs, eam.n_sites());
  const auto dir = output_dir(c);
  const json config = to_json(c);

  const auto geo = eam::geodesic_distances(eam, mc);
  const auto& d = geo.paths.d;
  {
    auto out = open_csv(dir / "distances.csv", "eam-distances", config);
    out << "i,j,D\n";
    for (int i = 0; i < eam.n_sites(); ++i) {
      for (int j = i + 1; j < eam.n_sites(); ++j) out << i << ',' << j << ',' << num(d(i, j)) << '\n';
    }
  }
  const auto audit = eam::triangle_audit(d);
  json body;
  body["negative_entries"] = geo.negative_count;
  body["disconnected_sites"] = geo.disconnected;
  body["triangle_audit"] = {{"triples", audit.triples},
                            {"violations", audit.violations},
                            {"worst_excess", audit.worst_excess},
                            {"symmetric", audit.symmetric},
                            {"zero_diagonal", audit.zero_diagonal}};
  json paths = json::array();
  for (auto [i, j] : pairs) {
    paths.push_back({{"i", i}, {"j", j}, {"D", finite_or_string(d(i, j))}, {"path", eam::witness_path(geo.paths, i, j)}});
  }
  body["geodesics"] = paths;
  write_json(dir / "metric.json", "eam-metric", config, body);
  std::cout << "metric: " << audit.violations << " triangle violations; outputs in " << dir.string() << '\n';
  return audit.violations == 0 ? 0 : kExitFailure;
}

int cmd_audit(const RunConfig& c) {
  const auto dir = output_dir(c);
  const json config = to_json(c);
  std::string kind = c.input_kind;
  if (kind != "auto" && kind != "table" && kind != "eam") throw UsageError("--input-kind must be auto, table or eam");
  if (!c.input.empty() && kind == "auto") {
    std::ifstream in(c.input);
    if (!in) throw UsageError("cannot open '" + c.input + "'");
    std::string head((std::istreambuf_iterator<char>(in)), {});
    kind = head.find("eam-matrix") != std::string::npos ? "eam" : "table";
  }
  json body;
  eam::SsaReport report;
  if (kind == "eam") {
    const auto eam = eam::load_eam(c.input, eam::format_from_path(c.input));
    const auto triples = eam::default_triples(eam.n_sites(), c.seed, c.triples);
    report = eam::ssa_audit(eam, triples);
    json neg = json::array();
    for (const auto& e : eam::negative_entries(eam)) neg.push_back({{"i", e.i}, {"j", e.j}, {"J", e.value}});
    body["negative_entries"] = neg;
  } else {
    std::optional<eam::EntropyTable> table;
    if (!c.input.empty()) {
      table = eam::load_table(c.input, eam::format_from_path(c.input));
    } else {
      const auto spec = state_spec(c);
      if (c.sample != 0) throw UsageError("audit of a generated state needs an exhaustive table (omit --sample)");
      table = make_table(c, eam::prepare_state(spec), config);
    }
    if (!table->exhaustive()) throw UsageError("audit needs an exhaustive table");
    const auto triples = eam::default_triples(table->n_sites(), c.seed, c.triples);
    report = eam::ssa_audit(*table, triples);
  }
  body["ssa"] = json::parse(eam::ssa_report_json(report));
  write_json(dir / "audit.json", "eam-audit", config, body);
  std::cout << "audit (" << kind << "): " << report.triples << " triples, " << report.ssa_violations
            << " SSA violations, " << report.wm_violations << " weak-monotonicity violations\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  // A --config file supplies defaults; explicit flags override it.
  for (int k = 1; k + 1 < argc; ++k) {
    if (std::string(argv[k]) == "--config") {
      try {
        apply_config_file(argv[k + 1], cfg);
      } catch (const UsageError& e) {
        std::cerr << "eamctl: " << e.what() << '\n';
        return kExitUsage;
      }
    }
  }

  CLI::App app{"Entanglement adjacency matrix toolkit"};
  app.require_subcommand(1);
  std::string config_path;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON file with default flag values");
    sub->add_option("--out", cfg.out_dir, "Output directory (default: $EAM_OUTPUT_DIR or .)");
    sub->add_option("--log-base", cfg.log_base, "Extra display column base: e, 2 or 10");
    sub->add_option("--seed", cfg.seed, "Random seed");
  };
  auto add_state = [&](CLI::App* sub) {
    sub->add_option("--state", cfg.state, "dimer, rainbow, ghz, aklt, free-fermion or xxz");
    sub->add_option("--n", cfg.n_sites, "Number of sites");
    sub->add_option("--profile", cfg.profile, "Free-fermion hopping: uniform, dimerized or rainbow");
    sub->add_option("--delta", cfg.delta, "Dimerization (free-fermion) or anisotropy (xxz)");
    sub->add_option("--rainbow-h", cfg.h, "Rainbow inhomogeneity h");
    sub->add_flag("--flip-sign", cfg.flip_sign, "Make bond (0,1) the weak one");
    sub->add_option("--boundary", cfg.boundary, "open, periodic or antiperiodic");
    sub->add_option("--renyi", cfg.renyi, "Renyi index (1: von Neumann)");
    sub->add_option("--sample", cfg.sample, "Number of random masks (0: exhaustive)");
    sub->add_flag("--s0", cfg.s0, "Fit the offset s0");
    sub->add_option("--eval", cfg.eval, "Error evaluation set: auto, sample or exhaustive");
  };

  auto* fit = app.add_subcommand("fit", "Build the entropy table and fit the EAM");
  add_common(fit);
  add_state(fit);
  auto* contour = app.add_subcommand("contour", "Entanglement contour of a block");
  add_common(contour);
  add_state(contour);
  contour->add_option("--block", cfg.block, "Block: 2-5, 0,3,4 or mask:37");
  contour->add_option("--route", cfg.route, "auto, eam, fermion or both");
  contour->add_option("--input", cfg.input, "Use a saved EAM instead of fitting");
  auto* cft = app.add_subcommand("cft", "CFT reference curves");
  add_common(cft);
  cft->add_option("--geometry", cfg.geometry, "I..VI");
  cft->add_option("--N", cfg.lattice_n, "Lattice size for the J(r) and S(l) curves");
  cft->add_option("--c", cfg.central_charge, "Central charge");
  cft->add_option("--u", cfg.u, "Interval start (I)");
  cft->add_option("--v", cfg.v, "Interval end (I)");
  cft->add_option("--R", cfg.radius, "Half-length (II, III)");
  cft->add_option("--L", cfg.length, "System size (II) or strip half-width (V)");
  cft->add_option("--beta", cfg.beta, "Inverse temperature (III, VI)");
  cft->add_option("--x0", cfg.x0, "Interval endpoint (IV, V, VI)");
  cft->add_option("--eps", cfg.epsilon, "Cutoff");
  cft->add_option("--points", cfg.points, "Kernel curve points");
  auto* metric = app.add_subcommand("metric", "Geodesic distances from an EAM");
  add_common(metric);
  metric->add_option("--input", cfg.input, "EAM file (.csv or .json)");
  metric->add_option("--l0", cfg.l0, "Minimal length");
  metric->add_option("--jmax", cfg.j_max, "Maximal link value (nats)");
  metric->add_option("--exponent", cfg.exponent, "Exponent of J/J_max");
  metric->add_option("--negative", cfg.negative, "Negative entries: zero or error");
  metric->add_option("--pairs", cfg.pairs, "Witness paths, e.g. 0:5,1:7");
  auto* audit = app.add_subcommand("audit", "Strong-subadditivity audit");
  add_common(audit);
  add_state(audit);
  audit->add_option("--input", cfg.input, "Entropy table or EAM file");
  audit->add_option("--input-kind", cfg.input_kind, "auto, table or eam");
  audit->add_option("--triples", cfg.triples, "Random triples when N > 12");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*fit) cfg.command = "fit";
    if (*contour) cfg.command = "contour";
    if (*cft) cfg.command = "cft";
    if (*metric) cfg.command = "metric";
    if (*audit) cfg.command = "audit";
    if (cfg.command == "fit") return cmd_fit(cfg);
    if (cfg.command == "contour") return cmd_contour(cfg);
    if (cfg.command == "cft") return cmd_cft(cfg);
    if (cfg.command == "metric") return cmd_metric(cfg);
    return cmd_audit(cfg);
  } catch (const UsageError& e) {
    std::cerr << "eamctl: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "eamctl " << cfg.command << ": " << e.what() << '\n';
    return kExitFailure;
  }
}
