#include "sumset/verdict.hpp"

#include <cstdint>
#include <cstdio>
#include <stdexcept>

namespace sumset {

void VerdictReport::set(std::string_view name, Rational value) {
  for (auto& [key, v] : measured) {
    if (key == name) {
      v = std::move(value);
      return;
    }
  }
  measured.emplace_back(std::string(name), std::move(value));
}

const Rational& VerdictReport::get(std::string_view name) const {
  for (const auto& [key, v] : measured) {
    if (key == name) return v;
  }
  throw std::out_of_range("verdict has no measured quantity '" + std::string(name) + "'");
}

bool VerdictReport::has(std::string_view name) const {
  for (const auto& entry : measured) {
    if (entry.first == name) return true;
  }
  return false;
}

Json to_json(const VerdictReport& report) {
  Json j;
  j["kind"] = report.kind;
  j["inputs_digest"] = report.inputs_digest;
  Json measured = Json::object();
  for (const auto& [key, v] : report.measured) measured[key] = to_string(v);
  j["measured"] = std::move(measured);
  j["bound"] = to_string(report.bound);
  j["holds"] = report.holds;
  j["tight"] = report.tight;
  j["notes"] = report.notes;
  if (!report.witness.is_null()) j["witness"] = report.witness;
  return j;
}

VerdictReport verdict_from_json(const Json& j) {
  VerdictReport r;
  try {
    r.kind = j.at("kind").get<std::string>();
    if (j.contains("inputs_digest")) r.inputs_digest = j.at("inputs_digest").get<std::string>();
    for (const auto& [key, v] : j.at("measured").items()) r.set(key, parse_rational(v.get<std::string>()));
    r.bound = parse_rational(j.at("bound").get<std::string>());
    r.holds = j.at("holds").get<bool>();
    r.tight = j.at("tight").get<bool>();
    r.notes = j.at("notes").get<std::vector<std::string>>();
    if (j.contains("witness")) r.witness = j.at("witness");
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed verdict report: ") + e.what());
  }
  return r;
}

std::string digest(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace sumset
