#include "acr/action_code.hpp"

#include <cctype>
#include <set>
#include <sstream>

#include <json.hpp>

#include "acr/error.hpp"

namespace acr {

namespace {

using nlohmann::json;

bool has_padding(const std::string& s) {
  return std::isspace(static_cast<unsigned char>(s.front())) ||
         std::isspace(static_cast<unsigned char>(s.back()));
}

void validate_labels(const std::vector<std::string>& labels, const char* what) {
  if (labels.empty()) {
    throw ValidationError(std::string("empty ") + what + " list");
  }
  std::set<std::string> seen;
  for (const auto& label : labels) {
    if (label.empty()) {
      throw ValidationError(std::string("empty label in ") + what);
    }
    if (has_padding(label)) {
      throw ValidationError(std::string("label '") + label + "' in " + what +
                            " has leading or trailing whitespace");
    }
    if (!seen.insert(label).second) {
      throw ValidationError(std::string("duplicate label '") + label + "' in " +
                            what);
    }
  }
}

std::vector<std::string> read_labels(const json& obj, const char* key,
                                     std::size_t line) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    throw ValidationError(std::string("missing \"") + key + "\" array", line);
  }
  if (!it->is_array()) {
    throw ValidationError(std::string("\"") + key + "\" must be an array", line);
  }
  std::vector<std::string> out;
  out.reserve(it->size());
  for (const auto& v : *it) {
    if (!v.is_string()) {
      throw ValidationError(std::string("\"") + key + "\" entries must be strings",
                            line);
    }
    out.push_back(v.get<std::string>());
  }
  return out;
}

bool is_blank(const std::string& s) {
  for (unsigned char c : s) {
    if (!std::isspace(c)) return false;
  }
  return true;
}

}  // namespace

void validate(const ActionCode& code) {
  validate_labels(code.objects, "objects");
  validate_labels(code.actions, "actions");
}

ObservationLog parse_log(std::istream& in) {
  ObservationLog log;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (is_blank(line)) continue;

    json obj;
    try {
      obj = json::parse(line);
    } catch (const json::parse_error& e) {
      throw ParseError(std::string("malformed JSON: ") + e.what(), line_no);
    }
    if (!obj.is_object()) {
      throw ParseError("expected a JSON object", line_no);
    }
    if (auto t = obj.find("t"); t != obj.end() && !t->is_number_integer()) {
      throw ValidationError("\"t\" must be an integer", line_no);
    }

    ActionCode code{read_labels(obj, "objects", line_no),
                    read_labels(obj, "actions", line_no)};
    try {
      validate(code);
    } catch (const ValidationError& e) {
      throw ValidationError(e.what(), line_no);
    }
    log.push_back(std::move(code));
  }
  return log;
}

ObservationLog parse_log_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_log(in);
}

std::string format_log(const ObservationLog& log) {
  std::string out;
  for (const auto& code : log) {
    json obj = {{"objects", code.objects}, {"actions", code.actions}};
    out += obj.dump();
    out += '\n';
  }
  return out;
}

}  // namespace acr
