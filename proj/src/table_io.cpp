#include <fstream>
#include <sstream>

#include <json.hpp>

#include "eam/entropy_table.hpp"
#include "eam/error.hpp"
#include "eam/text.hpp"

namespace eam {
namespace {

constexpr int kTableSchemaVersion = 1;

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open '" + path + "'");
  return in;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path + "'");
  return out;
}

void check_n_sites(int found, std::optional<int> expected, const std::string& path) {
  if (expected && *expected != found) {
    throw FormatError("'" + path + "' holds " + std::to_string(found) + " sites, expected " +
                      std::to_string(*expected));
  }
}

nlohmann::json config_as_json(const std::string& text) {
  if (text.empty()) return nullptr;
  auto parsed = nlohmann::json::parse(text, nullptr, false);
  return parsed.is_discarded() ? nlohmann::json(text) : parsed;
}

void save_csv(const EntropyTable& t, const std::string& path) {
  const auto& meta = t.meta();
  if (meta.state_desc.find_first_of(",\n\r") != std::string::npos) {
    throw std::invalid_argument("state_desc may not contain commas or newlines");
  }
  auto out = open_out(path);
  out << "# schema: eam-table v" << kTableSchemaVersion << '\n';
  if (!meta.generated.empty()) out << "# generated: " << meta.generated << '\n';
  out << "# sampling: " << meta.sampling << '\n';
  out << "# complement_mirrored: " << (meta.complement_mirrored ? "true" : "false") << '\n';
  if (!meta.config_json.empty()) out << "# config: " << meta.config_json << '\n';
  out << "n_sites,renyi_n,state_desc\n";
  out << t.n_sites() << ',' << meta.renyi_n << ',' << meta.state_desc << '\n';
  out << "mask,entropy_nats\n";
  for (const auto& e : t.entries()) out << e.mask << ',' << format_double(e.entropy) << '\n';
}

EntropyTable load_csv(const std::string& path, std::optional<int> expected) {
  auto in = open_in(path);
  TableMeta meta;
  std::string line;
  int stage = 0;  // 0: header, 1: header values, 2: row header, 3: rows
  int n_sites = 0;
  std::vector<TableEntry> entries;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto text = trim(line);
    if (text.empty()) continue;
    if (text.front() == '#') {
      const auto body = trim(text.substr(1));
      const auto colon = body.find(':');
      if (colon == std::string_view::npos) continue;
      const auto key = trim(body.substr(0, colon));
      const auto value = std::string(trim(body.substr(colon + 1)));
      if (key == "generated") meta.generated = value;
      if (key == "sampling") meta.sampling = value;
      if (key == "complement_mirrored") meta.complement_mirrored = value == "true";
      if (key == "config") meta.config_json = value;
      continue;
    }
    try {
      const auto fields = split(text, ',');
      switch (stage) {
        case 0:
          if (fields.size() < 3 || trim(fields[0]) != "n_sites") throw FormatError("missing n_sites header");
          stage = 1;
          break;
        case 1:
          if (fields.size() < 3) throw FormatError("incomplete header values");
          n_sites = static_cast<int>(parse_int(fields[0]));
          meta.renyi_n = static_cast<int>(parse_int(fields[1]));
          meta.state_desc = std::string(trim(fields[2]));
          check_n_sites(n_sites, expected, path);
          stage = 2;
          break;
        case 2:
          if (trim(fields[0]) != "mask") throw FormatError("missing mask,entropy_nats header");
          stage = 3;
          break;
        default: {
          if (fields.size() < 2) throw FormatError("expected mask,entropy_nats");
          const auto mask = parse_int(fields[0]);
          if (mask < 0) throw FormatError("negative mask");
          entries.push_back({static_cast<std::uint64_t>(mask), parse_double(fields[1])});
        }
      }
    } catch (const std::invalid_argument& e) {
      throw FormatError(path + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  if (stage < 2) throw FormatError("'" + path + "' has no table header");
  try {
    return EntropyTable(n_sites, std::move(entries), std::move(meta));
  } catch (const std::invalid_argument& e) {
    throw FormatError(path + ": " + e.what());
  }
}

void save_json(const EntropyTable& t, const std::string& path) {
  const auto& meta = t.meta();
  nlohmann::json j;
  j["schema"] = "eam-table";
  j["version"] = kTableSchemaVersion;
  j["n_sites"] = t.n_sites();
  j["renyi_n"] = meta.renyi_n;
  j["state_desc"] = meta.state_desc;
  j["meta"] = {{"generated", meta.generated},
               {"sampling", meta.sampling},
               {"complement_mirrored", meta.complement_mirrored}};
  j["config"] = config_as_json(meta.config_json);
  auto& rows = j["entries"] = nlohmann::json::array();
  for (const auto& e : t.entries()) rows.push_back({e.mask, e.entropy});
  auto out = open_out(path);
  out << j.dump(1) << '\n';
}

EntropyTable load_json(const std::string& path, std::optional<int> expected) {
  auto in = open_in(path);
  try {
    const auto j = nlohmann::json::parse(in);
    if (j.value("schema", "") != "eam-table") throw FormatError("not an eam-table document");
    const int n_sites = j.at("n_sites").get<int>();
    check_n_sites(n_sites, expected, path);
    TableMeta meta;
    meta.renyi_n = j.value("renyi_n", 1);
    meta.state_desc = j.value("state_desc", "");
    if (j.contains("meta")) {
      const auto& m = j["meta"];
      meta.generated = m.value("generated", "");
      meta.sampling = m.value("sampling", "");
      meta.complement_mirrored = m.value("complement_mirrored", false);
    }
    if (j.contains("config") && !j["config"].is_null()) {
      meta.config_json = j["config"].is_string() ? j["config"].get<std::string>() : j["config"].dump();
    }
    std::vector<TableEntry> entries;
    for (const auto& row : j.at("entries")) {
      entries.push_back({row.at(0).get<std::uint64_t>(), row.at(1).get<double>()});
    }
    return EntropyTable(n_sites, std::move(entries), std::move(meta));
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(path + ": " + e.what());
  } catch (const std::invalid_argument& e) {
    throw FormatError(path + ": " + e.what());
  }
}

}  // namespace

TableFormat format_from_path(const std::string& path) {
  return path.ends_with(".json") ? TableFormat::json : TableFormat::csv;
}

void save_table(const EntropyTable& table, const std::string& path, TableFormat format) {
  format == TableFormat::csv ? save_csv(table, path) : save_json(table, path);
}

EntropyTable load_table(const std::string& path, TableFormat format, std::optional<int> expected_n_sites) {
  return format == TableFormat::csv ? load_csv(path, expected_n_sites) : load_json(path, expected_n_sites);
}

}  // namespace eam
