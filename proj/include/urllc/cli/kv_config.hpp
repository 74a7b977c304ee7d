#pragma once

// Flat `key = value` text files with `#` comments, used for simulator configs and
// for run manifests.

#include <istream>
#include <stdexcept>
#include <string>
#include <vector>

namespace urllc::cli {

struct KvEntry {
  std::string key;
  std::string value;
  int line = 0;
};

class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& source, int line, const std::string& message);
  int line() const { return line_; }

 private:
  int line_;
};

/// Parses every entry; duplicate keys are rejected with the line of the second one.
std::vector<KvEntry> parse_kv(std::istream& in, const std::string& source_name);
std::vector<KvEntry> parse_kv_file(const std::string& path);

/// Value of `key`, or nullptr.
const KvEntry* find_entry(const std::vector<KvEntry>& entries, const std::string& key);

}  // namespace urllc::cli
