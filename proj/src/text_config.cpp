#include "liespray/text_config.hpp"

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace liespray {

namespace {

bool valid_key(const std::string& k) {
  if (k.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(k[0])) && k[0] != '_') return false;
  for (char c : k)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '.')
      return false;
  return true;
}

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

double parse_double(const std::string& token, int line) {
  char* end = nullptr;
  double v = std::strtod(token.c_str(), &end);
  if (end == token.c_str() || *end != '\0')
    throw ConfigError("line " + std::to_string(line) + ": expected a number, got '" +
                      token + "'");
  return v;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write file: " + path);
  out << content;
  if (!out) throw ConfigError("short write to file: " + path);
}

TextConfig TextConfig::parse(const std::string& text) {
  TextConfig cfg;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = raw;
    size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;

    size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(lineno) +
                        ": expected 'key = value', got '" + trim(raw) + "'");
    std::string key = trim(line.substr(0, eq));
    if (!valid_key(key))
      throw ConfigError("line " + std::to_string(lineno) + ": malformed key '" + key +
                        "'");

    ConfigEntry entry;
    entry.line = lineno;
    entry.raw = trim(line.substr(eq + 1));
    std::string tok;
    for (size_t i = eq + 1; i <= line.size(); ++i) {
      char c = i < line.size() ? line[i] : ' ';
      if (std::isspace(static_cast<unsigned char>(c)) || c == '(' || c == ')' ||
          c == ',') {
        if (!tok.empty()) {
          entry.tokens.push_back(tok);
          tok.clear();
        }
      } else {
        tok.push_back(c);
      }
    }
    if (entry.tokens.empty())
      throw ConfigError("line " + std::to_string(lineno) + ": key '" + key +
                        "' has no value");

    auto it = cfg.entries_.find(key);
    if (it == cfg.entries_.end()) {
      cfg.order_.push_back(key);
      cfg.entries_[key].push_back(std::move(entry));
    } else {
      it->second.push_back(std::move(entry));
    }
  }
  return cfg;
}

TextConfig TextConfig::parse_file(const std::string& path) {
  return parse(read_text_file(path));
}

bool TextConfig::has(const std::string& key) const {
  return entries_.count(key) != 0;
}

const std::vector<ConfigEntry>& TextConfig::entries(const std::string& key) const {
  auto it = entries_.find(key);
  if (it == entries_.end()) throw ConfigError("missing key '" + key + "'");
  consumed_.insert(key);
  return it->second;
}

std::string TextConfig::get_string(const std::string& key) const {
  const auto& es = entries(key);
  if (es.size() != 1 || es[0].tokens.size() != 1)
    throw ConfigError("line " + std::to_string(es[0].line) + ": key '" + key +
                      "' must have exactly one value");
  return es[0].tokens[0];
}

std::string TextConfig::get_raw(const std::string& key) const {
  const auto& es = entries(key);
  if (es.size() != 1)
    throw ConfigError("key '" + key + "' given more than once (line " +
                      std::to_string(es[1].line) + ")");
  return es[0].raw;
}

void TextConfig::merge_override(const TextConfig& other) {
  for (const auto& key : other.order_) {
    if (!entries_.count(key)) order_.push_back(key);
    entries_[key] = other.entries_.at(key);
  }
}

double TextConfig::get_number(const std::string& key) const {
  const auto& es = entries(key);
  if (es.size() != 1 || es[0].tokens.size() != 1)
    throw ConfigError("line " + std::to_string(es[0].line) + ": key '" + key +
                      "' must be a single number");
  return parse_double(es[0].tokens[0], es[0].line);
}

long TextConfig::get_integer(const std::string& key) const {
  double v = get_number(key);
  long n = static_cast<long>(v);
  if (static_cast<double>(n) != v)
    throw ConfigError("line " + std::to_string(line_of(key)) + ": key '" + key +
                      "' must be an integer");
  return n;
}

std::vector<double> TextConfig::get_numbers(const std::string& key) const {
  const auto& es = entries(key);
  if (es.size() != 1)
    throw ConfigError("key '" + key + "' given more than once (line " +
                      std::to_string(es[1].line) + ")");
  std::vector<double> out;
  for (const auto& t : es[0].tokens) out.push_back(parse_double(t, es[0].line));
  return out;
}

std::vector<double> TextConfig::get_numbers_all(const std::string& key) const {
  std::vector<double> out;
  for (const auto& e : entries(key))
    for (const auto& t : e.tokens) out.push_back(parse_double(t, e.line));
  return out;
}

std::vector<std::string> TextConfig::unconsumed_keys() const {
  std::vector<std::string> out;
  for (const auto& k : order_)
    if (!consumed_.count(k)) out.push_back(k);
  return out;
}

int TextConfig::line_of(const std::string& key) const {
  auto it = entries_.find(key);
  return it == entries_.end() ? 0 : it->second[0].line;
}

void TextConfigWriter::put_string(const std::string& key, const std::string& value) {
  out_ += key + " = " + value + "\n";
}

void TextConfigWriter::put_number(const std::string& key, double value) {
  out_ += key + " = " + format_double(value) + "\n";
}

void TextConfigWriter::put_integer(const std::string& key, long value) {
  out_ += key + " = " + std::to_string(value) + "\n";
}

void TextConfigWriter::put_numbers(const std::string& key,
                                   const std::vector<double>& values) {
  out_ += key + " =";
  for (double v : values) out_ += " " + format_double(v);
  out_ += "\n";
}

void TextConfigWriter::put_tuple(const std::string& key,
                                 const std::vector<double>& values) {
  out_ += key + " = (";
  for (size_t i = 0; i < values.size(); ++i) {
    if (i) out_ += ", ";
    out_ += format_double(values[i]);
  }
  out_ += ")\n";
}

void TextConfigWriter::put_comment(const std::string& text) {
  out_ += "# " + text + "\n";
}

}  // namespace liespray
