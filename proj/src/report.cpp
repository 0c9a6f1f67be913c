#include "rooslab/report.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstdio>

namespace rooslab {

bool Report::passed() const {
  return std::all_of(verdicts.begin(), verdicts.end(), [](const Verdict& v) { return v.passed; });
}

std::string Report::text() const {
  std::string out = "command: " + command + "\n";
  for (const auto& [k, v] : stats) out += "  " + k + ": " + std::to_string(v) + "\n";
  for (const auto& [k, v] : results) out += k + " = " + v + "\n";
  for (const auto& v : verdicts) {
    out += std::string(v.passed ? "PASS " : "FAIL ") + v.name;
    if (!v.detail.empty()) out += ": " + v.detail;
    out += "\n";
  }
  for (const auto& n : notes) out += "note: " + n + "\n";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", seconds);
  out += "time: " + std::string(buf) + " s\n";
  return out;
}

std::string Report::json() const {
  nlohmann::ordered_json j;
  j["command"] = command;
  j["results"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : results) j["results"][k] = v;
  j["verdicts"] = nlohmann::ordered_json::array();
  for (const auto& v : verdicts)
    j["verdicts"].push_back({{"name", v.name}, {"passed", v.passed}, {"detail", v.detail}});
  j["stats"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : stats) j["stats"][k] = v;
  j["notes"] = notes;
  j["seconds"] = seconds;
  j["passed"] = passed();
  return j.dump(2) + "\n";
}

}  // namespace rooslab
