#include "semitop/report.hpp"

#include <stdexcept>

#include <json.hpp>

namespace semitop {

std::string outcome_str(Outcome v) {
  switch (v) {
    case Outcome::pass: return "pass";
    case Outcome::fail: return "fail";
    case Outcome::unknown: return "unknown";
  }
  throw std::logic_error("unreachable outcome");
}

void Report::add(const std::string& name, bool ok, const std::string& detail) {
  if (!ok && detail.empty())
    checks.push_back({name, Outcome::fail, "check reported failure without a witness"});
  else
    checks.push_back({name, ok ? Outcome::pass : Outcome::fail, detail});
}

void Report::add_unknown(const std::string& name, const std::string& reason) {
  checks.push_back({name, Outcome::unknown, reason.empty() ? "undetermined" : reason});
}

Outcome Report::outcome() const {
  bool any_unknown = false;
  for (const auto& c : checks) {
    if (c.outcome == Outcome::fail) return Outcome::fail;
    if (c.outcome == Outcome::unknown) any_unknown = true;
  }
  return any_unknown ? Outcome::unknown : Outcome::pass;
}

std::string Report::to_json() const {
  nlohmann::json j;
  j["command"] = command;
  j["verdict"] = outcome_str(outcome());
  j["checks"] = nlohmann::json::array();
  for (const auto& c : checks)
    j["checks"].push_back({{"name", c.name}, {"verdict", outcome_str(c.outcome)}, {"detail", c.detail}});
  j["provenance"] = {{"inputs", provenance.inputs},
                     {"seed", provenance.seed},
                     {"version", provenance.version}};
  return j.dump(2);
}

std::string Report::to_text() const {
  std::string out = command + ": " + outcome_str(outcome()) + "\n";
  for (const auto& c : checks) {
    out += "  [" + outcome_str(c.outcome) + "] " + c.name;
    if (!c.detail.empty()) out += "  (" + c.detail + ")";
    out += "\n";
  }
  out += "  checks: " + std::to_string(checks.size()) + ", seed: " +
         std::to_string(provenance.seed) + ", " + std::to_string(elapsed_seconds) + "s\n";
  return out;
}

int exit_code(const Report& r) { return r.outcome() == Outcome::pass ? 0 : 1; }

std::string report_schema_json() {
  static const char* schema = R"({
  "$schema": "http://json-schema.org/draft-07/schema#",
  "title": "semitop report",
  "type": "object",
  "required": ["command", "verdict", "checks", "provenance"],
  "properties": {
    "command": {"type": "string"},
    "verdict": {"enum": ["pass", "fail", "unknown"]},
    "checks": {
      "type": "array",
      "items": {
        "type": "object",
        "required": ["name", "verdict", "detail"],
        "properties": {
          "name": {"type": "string"},
          "verdict": {"enum": ["pass", "fail", "unknown"]},
          "detail": {"type": "string"}
        }
      }
    },
    "provenance": {
      "type": "object",
      "required": ["inputs", "seed", "version"],
      "properties": {
        "inputs": {"type": "array", "items": {"type": "string"}},
        "seed": {"type": "integer", "minimum": 0},
        "version": {"type": "string"}
      }
    }
  }
})";
  return schema;
}

bool validate_report_json(const std::string& text, std::string* why) {
  auto bad = [why](const std::string& reason) {
    if (why) *why = reason;
    return false;
  };
  nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
  if (j.is_discarded()) return bad("not valid JSON");
  if (!j.is_object()) return bad("top level is not an object");
  for (const char* key : {"command", "verdict", "checks", "provenance"})
    if (!j.contains(key)) return bad(std::string("missing key '") + key + "'");
  if (!j["command"].is_string()) return bad("'command' is not a string");
  auto is_verdict = [](const nlohmann::json& v) {
    return v.is_string() && (v == "pass" || v == "fail" || v == "unknown");
  };
  if (!is_verdict(j["verdict"])) return bad("'verdict' is not pass/fail/unknown");
  if (!j["checks"].is_array()) return bad("'checks' is not an array");
  for (const auto& c : j["checks"]) {
    if (!c.is_object()) return bad("check record is not an object");
    if (!c.contains("name") || !c["name"].is_string()) return bad("check record lacks a name");
    if (!c.contains("verdict") || !is_verdict(c["verdict"]))
      return bad("check record lacks a verdict");
    if (!c.contains("detail") || !c["detail"].is_string())
      return bad("check record lacks a detail string");
    if (c["verdict"] != "pass" && c["detail"].get<std::string>().empty())
      return bad("non-pass check record lacks a witness or reason");
  }
  const auto& p = j["provenance"];
  if (!p.is_object()) return bad("'provenance' is not an object");
  if (!p.contains("inputs") || !p["inputs"].is_array()) return bad("provenance lacks inputs");
  for (const auto& in : p["inputs"])
    if (!in.is_string()) return bad("provenance input is not a string");
  if (!p.contains("seed") || !p["seed"].is_number_unsigned()) return bad("provenance lacks a seed");
  if (!p.contains("version") || !p["version"].is_string()) return bad("provenance lacks a version");
  if (why) why->clear();
  return true;
}

}  // namespace semitop
