// Copyright 2026 The tinygait Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef TINYGAIT_KV_CONFIG_H_
#define TINYGAIT_KV_CONFIG_H_

#include <filesystem>
#include <map>
#include <optional>
#include <string>

namespace tinygait {

// Plain-text `key=value` file. Blank lines and lines starting with '#' are
// skipped; whitespace around keys and values is trimmed. Duplicate keys are a
// DataError.
class KvConfig {
 public:
  static KvConfig Parse(const std::string& text);
  static KvConfig Load(const std::filesystem::path& path);

  bool Has(const std::string& key) const { return values_.count(key) != 0; }
  std::optional<std::string> Get(const std::string& key) const;
  // Throws DataError when missing or not a finite number.
  double GetDouble(const std::string& key) const;
  std::optional<double> GetOptionalDouble(const std::string& key) const;

  const std::map<std::string, std::string>& values() const { return values_; }

 private:
  std::map<std::string, std::string> values_;
};

// Strict full-string numeric parse; throws DataError naming `what`.
double ParseDouble(const std::string& text, const std::string& what);

}  // namespace tinygait

#endif  // TINYGAIT_KV_CONFIG_H_
