#ifndef LIESPRAY_TEXT_CONFIG_HPP
#define LIESPRAY_TEXT_CONFIG_HPP

#include <map>
#include <set>
#include <string>
#include <vector>

#include "liespray/types.hpp"

namespace liespray {

/// One `key = value` line; the value is pre-tokenized (whitespace, commas
/// and parentheses all separate tokens). `raw` keeps the untokenized text
/// for values with significant punctuation (expressions, paths).
struct ConfigEntry {
  int line = 0;
  std::vector<std::string> tokens;
  std::string raw;
};

/// Line-based structured text: `key = value`, '#' comments, repeated keys
/// allowed (kept in file order). Keys are dotted identifiers.
///
/// Readers consume keys they understand; whatever is left is reported by
/// unconsumed_keys() so callers can make unknown keys hard errors.
class TextConfig {
 public:
  static TextConfig parse(const std::string& text);
  static TextConfig parse_file(const std::string& path);

  bool has(const std::string& key) const;

  /// All entries for a repeated key, in file order. Marks the key consumed.
  const std::vector<ConfigEntry>& entries(const std::string& key) const;

  /// Single-entry accessors; throw ConfigError (with the line) when the
  /// shape does not match.
  std::string get_string(const std::string& key) const;
  std::string get_raw(const std::string& key) const;  // untokenized value
  double get_number(const std::string& key) const;
  long get_integer(const std::string& key) const;
  std::vector<double> get_numbers(const std::string& key) const;  // one entry
  std::vector<double> get_numbers_all(const std::string& key) const;  // concat

  /// Replaces this config's entries for every key present in `other`
  /// (command-line overrides on top of a file).
  void merge_override(const TextConfig& other);

  /// Keys present but never requested through the accessors above.
  std::vector<std::string> unconsumed_keys() const;

  /// Keys in file order (unique).
  const std::vector<std::string>& keys() const { return order_; }

  int line_of(const std::string& key) const;

 private:
  std::map<std::string, std::vector<ConfigEntry>> entries_;
  std::vector<std::string> order_;
  mutable std::set<std::string> consumed_;
};

/// Emits `key = value` lines with floats at 17 significant digits
/// (bit-exact read-back).
class TextConfigWriter {
 public:
  void put_string(const std::string& key, const std::string& value);
  void put_number(const std::string& key, double value);
  void put_integer(const std::string& key, long value);
  void put_numbers(const std::string& key, const std::vector<double>& values);
  void put_tuple(const std::string& key, const std::vector<double>& values);
  void put_comment(const std::string& text);
  const std::string& str() const { return out_; }

 private:
  std::string out_;
};

std::string format_double(double v);  // 17 significant digits
double parse_double(const std::string& token, int line);
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace liespray

#endif  // LIESPRAY_TEXT_CONFIG_HPP
