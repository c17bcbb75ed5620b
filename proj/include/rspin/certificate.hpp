#pragma once

#include <string>
#include <utility>
#include <vector>

namespace rspin {

// ============================================================
// run certificates
// ============================================================

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string witness;  // free-form evidence: a count, an identity, a word
};

// A reproducible record of one verification run. No timestamps, no
// environment info: the same input must dump to the same bytes.
struct Certificate {
  std::string tool = "rspin";
  std::string version = "0.1.0";
  std::string command;
  std::vector<std::pair<std::string, std::string>> input;  // echoed parameters
  std::vector<CheckResult> checks;

  void echo(std::string key, std::string value);
  void add(std::string name, bool passed, std::string witness);
  bool verdict() const;  // all checks passed (vacuously true when empty)

  std::string dump() const;  // stable key order, 2-space indent
  static Certificate parse(const std::string& text);
};

}  // namespace rspin
