#include <cmath>
#include <fstream>
#include <limits>

#include <json.hpp>

#include "eam/error.hpp"
#include "eam/solver.hpp"
#include "eam/text.hpp"

namespace eam {
namespace {

constexpr int kEamSchemaVersion = 1;

nlohmann::json diagnostics_json(const FitDiagnostics& d) {
  return {{"method", d.method},
          {"rows_used", d.rows_used},
          {"n_params", d.n_params},
          {"rank", d.rank},
          {"rank_deficient", d.rank_deficient},
          {"condition", std::isfinite(d.condition) ? nlohmann::json(d.condition) : nlohmann::json("inf")},
          {"residual_norm", d.residual_norm},
          {"warnings", d.warnings}};
}

void save_csv(const Eam& eam, const std::string& path, const std::string& config, int base) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path + "'");
  const auto& d = eam.diagnostics;
  out << "# schema: eam-matrix v" << kEamSchemaVersion << '\n';
  if (!d.method.empty()) {
    out << "# fit: method=" << d.method << " rows=" << d.rows_used << " rank=" << d.rank << '/'
        << d.n_params << " condition=" << format_double(d.condition)
        << " residual_norm=" << format_double(d.residual_norm) << '\n';
  }
  for (const auto& w : d.warnings) out << "# warning: " << w << '\n';
  if (!config.empty()) out << "# config: " << config << '\n';
  out << "n_sites," << eam.n_sites() << '\n';
  if (eam.s0()) out << "s0," << format_double(*eam.s0()) << '\n';
  out << "i,j,J_nats";
  if (base > 0) out << ",J_log" << base;
  out << '\n';
  const double scale = base > 0 ? 1.0 / std::log(static_cast<double>(base)) : 1.0;
  for (int i = 0; i < eam.n_sites(); ++i) {
    for (int j = i + 1; j < eam.n_sites(); ++j) {
      out << i << ',' << j << ',' << format_double(eam(i, j));
      if (base > 0) out << ',' << format_double(eam(i, j) * scale);
      out << '\n';
    }
  }
}

Eam load_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open '" + path + "'");
  int n = 0;
  std::optional<double> s0;
  Eigen::VectorXd links;
  std::vector<bool> seen;
  std::string line;
  std::size_t line_no = 0;
  bool rows = false;
  while (std::getline(in, line)) {
    ++line_no;
    const auto text = trim(line);
    if (text.empty() || text.front() == '#') continue;
    try {
      const auto f = split(text, ',');
      const auto key = trim(f[0]);
      if (!rows && key == "n_sites" && f.size() >= 2) {
        n = static_cast<int>(parse_int(f[1]));
        if (n < 2 || n > kMaxSites) throw FormatError("n_sites out of range");
        links = Eigen::VectorXd::Zero(link_count(n));
        seen.assign(static_cast<std::size_t>(link_count(n)), false);
      } else if (!rows && key == "s0" && f.size() >= 2) {
        s0 = parse_double(f[1]);
      } else if (!rows && key == "i") {
        if (n == 0) throw FormatError("link header before n_sites");
        rows = true;
      } else if (rows && f.size() >= 3) {
        const int i = static_cast<int>(parse_int(f[0]));
        const int j = static_cast<int>(parse_int(f[1]));
        if (i < 0 || j >= n || i >= j) throw FormatError("bad link (" + std::to_string(i) + "," + std::to_string(j) + ")");
        const int k = link_index(i, j, n);
        if (seen[static_cast<std::size_t>(k)]) throw FormatError("duplicate link");
        seen[static_cast<std::size_t>(k)] = true;
        links(k) = parse_double(f[2]);
      } else {
        throw FormatError("unexpected line");
      }
    } catch (const std::invalid_argument& e) {
      throw FormatError(path + ":" + std::to_string(line_no) + ": " + e.what());
    } catch (const FormatError& e) {
      throw FormatError(path + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  if (!rows) throw FormatError("'" + path + "' has no link rows");
  for (bool s : seen) {
    if (!s) throw FormatError("'" + path + "' is missing links");
  }
  return Eam(n, links, s0);
}

void save_json(const Eam& eam, const std::string& path, const std::string& config) {
  nlohmann::json j;
  j["schema"] = "eam-matrix";
  j["version"] = kEamSchemaVersion;
  j["n_sites"] = eam.n_sites();
  j["s0"] = eam.s0() ? nlohmann::json(*eam.s0()) : nlohmann::json(nullptr);
  auto& rows = j["links"] = nlohmann::json::array();
  for (int a = 0; a < eam.n_sites(); ++a) {
    for (int b = a + 1; b < eam.n_sites(); ++b) rows.push_back({a, b, eam(a, b)});
  }
  j["diagnostics"] = diagnostics_json(eam.diagnostics);
  if (!config.empty()) {
    auto parsed = nlohmann::json::parse(config, nullptr, false);
    j["config"] = parsed.is_discarded() ? nlohmann::json(config) : parsed;
  } else {
    j["config"] = nullptr;
  }
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path + "'");
  out << j.dump(1) << '\n';
}

Eam load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open '" + path + "'");
  try {
    const auto j = nlohmann::json::parse(in);
    if (j.value("schema", "") != "eam-matrix") throw FormatError("not an eam-matrix document");
    const int n = j.at("n_sites").get<int>();
    if (n < 2 || n > kMaxSites) throw FormatError("n_sites out of range");
    Eigen::VectorXd links = Eigen::VectorXd::Zero(link_count(n));
    std::size_t count = 0;
    for (const auto& row : j.at("links")) {
      const int a = row.at(0).get<int>();
      const int b = row.at(1).get<int>();
      if (a < 0 || b >= n || a >= b) throw FormatError("bad link");
      links(link_index(a, b, n)) = row.at(2).get<double>();
      ++count;
    }
    if (count != static_cast<std::size_t>(link_count(n))) throw FormatError("wrong number of links");
    std::optional<double> s0;
    if (j.contains("s0") && !j["s0"].is_null()) s0 = j["s0"].get<double>();
    Eam eam(n, links, s0);
    if (j.contains("diagnostics")) {
      const auto& d = j["diagnostics"];
      eam.diagnostics.method = d.value("method", "");
      eam.diagnostics.rows_used = d.value("rows_used", std::size_t{0});
      eam.diagnostics.n_params = d.value("n_params", 0);
      eam.diagnostics.rank = d.value("rank", 0);
      eam.diagnostics.rank_deficient = d.value("rank_deficient", false);
      eam.diagnostics.residual_norm = d.value("residual_norm", 0.0);
      if (d.contains("condition")) {
        eam.diagnostics.condition = d["condition"].is_number() ? d["condition"].get<double>()
                                                                : std::numeric_limits<double>::infinity();
      }
      eam.diagnostics.warnings = d.value("warnings", std::vector<std::string>{});
    }
    return eam;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(path + ": " + e.what());
  }
}

}  // namespace

void save_eam(const Eam& eam, const std::string& path, TableFormat format, const std::string& config_json,
              int display_log_base) {
  if (format == TableFormat::csv) {
    save_csv(eam, path, config_json, display_log_base);
  } else {
    save_json(eam, path, config_json);
  }
}

Eam load_eam(const std::string& path, TableFormat format) {
  return format == TableFormat::csv ? load_csv(path) : load_json(path);
}

}  // namespace eam
