#pragma once

#include <string>
#include <vector>

#include "semitop/common.hpp"

namespace semitop {

inline constexpr const char* kVersion = "0.1.0";

enum class Outcome { pass, fail, unknown };

std::string outcome_str(Outcome v);

struct CheckRecord {
  std::string name;
  Outcome outcome = Outcome::pass;
  std::string detail;  // witness or reason; required when the outcome is not pass
};

struct Provenance {
  std::vector<std::string> inputs;
  u64 seed = 0;
  std::string version = kVersion;
};

// Aggregated result of one command. Wall-clock time is tracked for the text
// rendering only; the JSON form leaves it out so identical runs serialize
// byte-identically.
struct Report {
  std::string command;
  std::vector<CheckRecord> checks;
  Provenance provenance;
  double elapsed_seconds = 0.0;

  void add(const std::string& name, bool ok, const std::string& detail = "");
  void add_unknown(const std::string& name, const std::string& reason);
  Outcome outcome() const;  // fail dominates, then unknown, else pass

  std::string to_json() const;
  std::string to_text() const;
};

// 0 when the report passes, 1 otherwise. Usage errors are the caller's 2.
int exit_code(const Report& r);

// JSON Schema for the serialized report form.
std::string report_schema_json();

// Structural validation against the published schema. Returns false and
// fills `why` (when given) on the first violation.
bool validate_report_json(const std::string& text, std::string* why = nullptr);

}  // namespace semitop
