#include "logvoa/report.hpp"

#include <json.hpp>

#include <sstream>

namespace logvoa {

Report::Report(std::string command, std::string config_echo)
    : command_(std::move(command)),
      config_echo_(std::move(config_echo)),
      start_(std::chrono::steady_clock::now()) {}

void Report::add(const std::string& name, bool pass, const std::string& witness,
                 const std::string& detail) {
  records_.push_back(CheckRecord{name, pass, witness, detail});
}

bool Report::all_pass() const {
  for (const auto& r : records_)
    if (!r.pass) return false;
  return true;
}

std::string Report::to_json_lines() const {
  using json = nlohmann::ordered_json;
  std::ostringstream os;

  json head;
  head["record"] = "header";
  head["command"] = command_;
  head["config"] = config_echo_;
  head["engine_version"] = kEngineVersion;
  os << head.dump() << '\n';

  size_t passed = 0;
  for (const auto& r : records_) {
    json rec;
    rec["record"] = "check";
    rec["check"] = r.name;
    rec["result"] = r.pass ? "pass" : "fail";
    if (!r.detail.empty()) rec["detail"] = r.detail;
    if (!r.pass) rec["witness"] = r.witness;
    os << rec.dump() << '\n';
    if (r.pass) ++passed;
  }

  auto elapsed = std::chrono::steady_clock::now() - start_;
  json tail;
  tail["record"] = "summary";
  tail["checks"] = records_.size();
  tail["passed"] = passed;
  tail["failed"] = records_.size() - passed;
  tail["wall_ms"] =
      std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count();
  os << tail.dump() << '\n';
  return os.str();
}

}  // namespace logvoa
