#ifndef LIESPRAY_RECORDS_HPP
#define LIESPRAY_RECORDS_HPP

#include <json.hpp>
#include <string>
#include <vector>

#include "liespray/types.hpp"

namespace liespray {

using Json = nlohmann::json;

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr const char* kSchemaVersion = "1";

Json vector_to_json(const Vector& v);
Json matrix_to_json(const Matrix& m);  // row-major flat array + shape

/// Collects output records; serializes to line-delimited JSON (machine,
/// round-trip floats) or a flat text table (human, 6 significant digits).
class RecordSink {
 public:
  void add(const std::string& type, Json fields);
  const std::vector<Json>& records() const { return records_; }
  std::string to_jsonl() const;
  std::string to_table() const;

 private:
  std::vector<Json> records_;
};

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

/// Emitted on every run, success or failure; wall_time_s is the only field
/// excluded from the byte-identical reproducibility guarantee.
struct RunManifest {
  std::string command;
  Json config_echo;
  std::string tool_version = kToolVersion;
  double wall_time_s = 0.0;
  std::vector<CheckResult> checks;
  std::vector<std::string> warnings;
  std::string status = "ok";  // ok | check_failed | error
  std::string error_name;
  std::string error_detail;

  bool all_checks_pass() const;
  Json to_json() const;
};

}  // namespace liespray

#endif  // LIESPRAY_RECORDS_HPP
