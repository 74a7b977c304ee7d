#include "urllc/cli/kv_config.hpp"

#include <fstream>
#include <sstream>

namespace urllc::cli {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

bool valid_key(const std::string& key) {
  if (key.empty()) return false;
  for (char c : key) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '-' || c == '_';
    if (!ok) return false;
  }
  return true;
}

}  // namespace

ConfigError::ConfigError(const std::string& source, int line, const std::string& message)
    : std::runtime_error(source + ":" + std::to_string(line) + ": " + message), line_(line) {}

std::vector<KvEntry> parse_kv(std::istream& in, const std::string& source_name) {
  std::vector<KvEntry> entries;
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = raw;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(source_name, line_no, "expected `key = value`");
    KvEntry e{trim(line.substr(0, eq)), trim(line.substr(eq + 1)), line_no};
    if (!valid_key(e.key)) throw ConfigError(source_name, line_no, "invalid key '" + e.key + "'");
    if (e.value.empty()) throw ConfigError(source_name, line_no, "missing value for '" + e.key + "'");
    if (find_entry(entries, e.key)) throw ConfigError(source_name, line_no, "duplicate key '" + e.key + "'");
    entries.push_back(std::move(e));
  }
  return entries;
}

std::vector<KvEntry> parse_kv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot open config file '" + path + "'");
  return parse_kv(in, path);
}

const KvEntry* find_entry(const std::vector<KvEntry>& entries, const std::string& key) {
  for (const auto& e : entries) {
    if (e.key == key) return &e;
  }
  return nullptr;
}

}  // namespace urllc::cli
