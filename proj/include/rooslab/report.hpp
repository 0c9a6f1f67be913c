#pragma once

#include <string>
#include <utility>
#include <vector>

namespace rooslab {

struct Verdict {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Outcome of one command. Results and statistics keep insertion order.
struct Report {
  std::string command;
  std::vector<std::pair<std::string, std::string>> results;
  std::vector<Verdict> verdicts;
  std::vector<std::pair<std::string, long long>> stats;
  std::vector<std::string> notes;
  double seconds = 0;

  void result(std::string key, std::string value) {
    results.emplace_back(std::move(key), std::move(value));
  }
  void verdict(std::string name, bool passed, std::string detail = {}) {
    verdicts.push_back({std::move(name), passed, std::move(detail)});
  }
  void stat(std::string key, long long value) { stats.emplace_back(std::move(key), value); }

  bool passed() const;
  /// 0 iff every verdict passed.
  int exit_status() const { return passed() ? 0 : 1; }

  std::string text() const;
  /// Keys: command, results, verdicts, stats, notes, seconds, passed.
  std::string json() const;
};

}  // namespace rooslab
