#pragma once

#include <istream>
#include <string>
#include <string_view>
#include <vector>

namespace acr {

// Reserved object label for actions the agent performs on itself (movement).
// Codes carrying only this label contribute action vertices without edges,
// which places those actions in the agent-action pseudo-category.
inline constexpr std::string_view kAgentObject = "__agent__";

// One timestep of evidence: a set of objects and the actions applied to them.
// Both lists keep first-occurrence order and contain no duplicates.
struct ActionCode {
  std::vector<std::string> objects;
  std::vector<std::string> actions;

  friend bool operator==(const ActionCode&, const ActionCode&) = default;
};

using ObservationLog = std::vector<ActionCode>;

// Throws ValidationError when a label is empty, padded with whitespace, or a
// list is empty or has duplicates.
void validate(const ActionCode& code);

// Reads a JSON-lines action-code log. Blank lines are skipped; errors carry the
// 1-based line number.
ObservationLog parse_log(std::istream& in);
ObservationLog parse_log_text(std::string_view text);

// One JSON object per code, newline terminated; parse_log reads it back.
std::string format_log(const ObservationLog& log);

}  // namespace acr
