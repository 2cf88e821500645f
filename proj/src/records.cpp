#include "liespray/records.hpp"

#include <cstdio>
#include <set>
#include <sstream>

namespace liespray {

Json vector_to_json(const Vector& v) {
  Json arr = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v[i]);
  return arr;
}

Json matrix_to_json(const Matrix& m) {
  Json flat = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) flat.push_back(m(r, c));
  return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", flat}};
}

void RecordSink::add(const std::string& type, Json fields) {
  Json rec;
  rec["schema_version"] = kSchemaVersion;
  rec["type"] = type;
  rec.update(fields);
  records_.push_back(std::move(rec));
}

std::string RecordSink::to_jsonl() const {
  std::string out;
  for (const auto& r : records_) {
    out += r.dump();
    out += '\n';
  }
  return out;
}

namespace {

std::string human(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

// Flattens scalar and short-array fields into table cells.
void flatten(const std::string& key, const Json& v,
             std::vector<std::pair<std::string, std::string>>& cells) {
  if (v.is_number()) {
    cells.emplace_back(key, human(v.get<double>()));
  } else if (v.is_boolean()) {
    cells.emplace_back(key, v.get<bool>() ? "true" : "false");
  } else if (v.is_string()) {
    cells.emplace_back(key, v.get<std::string>());
  } else if (v.is_array() && v.size() <= 16) {
    int i = 0;
    for (const auto& item : v)
      if (item.is_number())
        cells.emplace_back(key + "[" + std::to_string(i++) + "]",
                           human(item.get<double>()));
  }
}

}  // namespace

std::string RecordSink::to_table() const {
  std::ostringstream os;
  std::string current_type;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  auto flush = [&]() {
    if (rows.empty()) return;
    std::vector<size_t> width(header.size());
    for (size_t c = 0; c < header.size(); ++c) width[c] = header[c].size();
    for (const auto& row : rows)
      for (size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
    os << "# " << current_type << "\n";
    for (size_t c = 0; c < header.size(); ++c)
      os << (c ? "  " : "") << header[c] << std::string(width[c] - header[c].size(), ' ');
    os << "\n";
    for (const auto& row : rows) {
      for (size_t c = 0; c < row.size(); ++c)
        os << (c ? "  " : "") << row[c] << std::string(width[c] - row[c].size(), ' ');
      os << "\n";
    }
    os << "\n";
    rows.clear();
    header.clear();
  };

  for (const auto& rec : records_) {
    std::string type = rec.value("type", "");
    std::vector<std::pair<std::string, std::string>> cells;
    for (auto it = rec.begin(); it != rec.end(); ++it) {
      if (it.key() == "schema_version" || it.key() == "type") continue;
      flatten(it.key(), it.value(), cells);
    }
    std::vector<std::string> head, row;
    for (auto& [k, v] : cells) {
      head.push_back(k);
      row.push_back(v);
    }
    if (type != current_type || head != header) {
      flush();
      current_type = type;
      header = head;
    }
    rows.push_back(row);
  }
  flush();
  return os.str();
}

bool RunManifest::all_checks_pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

Json RunManifest::to_json() const {
  Json checks_json = Json::array();
  for (const auto& c : checks)
    checks_json.push_back(Json{{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
  Json j{{"schema_version", kSchemaVersion},
         {"tool_version", tool_version},
         {"command", command},
         {"config", config_echo},
         {"wall_time_s", wall_time_s},
         {"checks", checks_json},
         {"warnings", warnings},
         {"status", status}};
  if (!error_name.empty()) {
    j["error"] = Json{{"name", error_name}, {"detail", error_detail}};
  }
  return j;
}

}  // namespace liespray
