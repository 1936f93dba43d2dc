#pragma once

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include <json.hpp>

#include "kse/numeric.hpp"

namespace kse {

using OJson = nlohmann::ordered_json;

inline std::string cache_checksum(const std::string& key, const std::string& value_dump) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(fnv1a_str(key + value_dump)));
  return std::string(buf);
}

// Append-only JSON-lines store mapping job keys to result records. Every
// line carries its own checksum; damaged lines are skipped with a warning
// instead of poisoning the run. Later lines win, so appends never need to
// rewrite the file.
class ResultCache {
 public:
  explicit ResultCache(std::string path, std::ostream& warn = std::cerr)
      : path_(std::move(path)), warn_(warn) {
    load();
  }

  std::optional<std::string> lookup(const std::string& key) const {
    auto it = entries_.find(key);
    if (it == entries_.end()) return std::nullopt;
    return it->second;
  }

  void append(const std::string& key, const std::string& record_dump) {
    OJson line;
    line["k"] = key;
    line["v"] = OJson::parse(record_dump);
    line["c"] = cache_checksum(key, record_dump);
    std::ofstream out(path_, std::ios::app);
    if (!out) {
      warn_ << "cache: cannot open " << path_ << " for append\n";
      return;
    }
    out << line.dump() << "\n";
    entries_[key] = record_dump;
  }

 private:
  void load() {
    std::ifstream in(path_);
    if (!in) return;  // a missing file is an empty cache
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (line.empty()) continue;
      OJson j = OJson::parse(line, nullptr, false);
      if (j.is_discarded() || !j.is_object() || !j.contains("k") || !j.contains("v") ||
          !j.contains("c") || !j["k"].is_string() || !j["c"].is_string()) {
        warn_ << "cache: skipping corrupt line " << lineno << " of " << path_ << "\n";
        continue;
      }
      std::string key = j["k"].get<std::string>();
      std::string dump = j["v"].dump();
      if (cache_checksum(key, dump) != j["c"].get<std::string>()) {
        warn_ << "cache: skipping corrupt line " << lineno << " of " << path_ << "\n";
        continue;
      }
      entries_[key] = dump;
    }
  }

  std::string path_;
  std::ostream& warn_;
  std::map<std::string, std::string> entries_;
};

}  // namespace kse
