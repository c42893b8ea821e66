#pragma once

#include <string>
#include <utility>
#include <vector>

namespace phc {

/// Outcome of one structural check. Failures are reported, never thrown.
struct VerificationReport {
  std::string name;
  bool passed = true;
  int trials = 0;
  double max_residual = 0.0;
  double tolerance = 0.0;
  std::vector<std::pair<std::string, std::string>> details;

  void add(std::string key, std::string value) { details.emplace_back(std::move(key), std::move(value)); }
  void add(std::string key, double value);

  /// "key: value" lines.
  std::string to_text() const;
};

}  // namespace phc
