#pragma once

// Structured results shared by every checker.

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"
#include "sumset/rational.hpp"

namespace sumset {

using Json = nlohmann::ordered_json;

struct VerdictReport {
  std::string kind;
  std::string inputs_digest;
  // Insertion-ordered so serialized output is stable.
  std::vector<std::pair<std::string, Rational>> measured;
  Rational bound{0};
  bool holds = true;
  bool tight = false;
  std::vector<std::string> notes;
  Json witness;  // null when absent

  void set(std::string_view name, Rational value);
  const Rational& get(std::string_view name) const;
  bool has(std::string_view name) const;
};

Json to_json(const VerdictReport& report);
VerdictReport verdict_from_json(const Json& j);

/// 64-bit FNV-1a of the text, as 16 hex digits.
std::string digest(std::string_view text);

}  // namespace sumset
