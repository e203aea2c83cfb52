#pragma once

#include <chrono>
#include <string>
#include <vector>

namespace logvoa {

inline constexpr const char* kEngineVersion = "0.1.0";

struct CheckRecord {
  std::string name;
  bool pass = false;
  std::string witness;  // nonempty on failure: the concrete coefficient
  std::string detail;   // optional extra context (window, spec summary)
};

/// Command report emitted as line-delimited JSON: a header record, one
/// record per check, and a summary with wall time and pass counts.
class Report {
 public:
  Report(std::string command, std::string config_echo);

  void add(const std::string& name, bool pass, const std::string& witness = "",
           const std::string& detail = "");
  bool all_pass() const;
  size_t size() const { return records_.size(); }
  const std::vector<CheckRecord>& records() const { return records_; }

  std::string to_json_lines() const;

 private:
  std::string command_;
  std::string config_echo_;
  std::vector<CheckRecord> records_;
  std::chrono::steady_clock::time_point start_;
};

}  // namespace logvoa
