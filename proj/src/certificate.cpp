#include "rspin/certificate.hpp"

#include <stdexcept>

#include "json.hpp"

namespace rspin {

using nlohmann::ordered_json;

void Certificate::echo(std::string key, std::string value) {
  input.emplace_back(std::move(key), std::move(value));
}

void Certificate::add(std::string name, bool passed, std::string witness) {
  checks.push_back({std::move(name), passed, std::move(witness)});
}

bool Certificate::verdict() const {
  for (const auto& c : checks)
    if (!c.passed) return false;
  return true;
}

std::string Certificate::dump() const {
  ordered_json j;
  j["tool"] = tool;
  j["version"] = version;
  j["command"] = command;
  j["input"] = ordered_json::object();
  for (const auto& [k, v] : input) j["input"][k] = v;
  j["checks"] = ordered_json::array();
  for (const auto& c : checks) {
    ordered_json e;
    e["name"] = c.name;
    e["status"] = c.passed ? "pass" : "fail";
    e["witness"] = c.witness;
    j["checks"].push_back(e);
  }
  j["verdict"] = verdict() ? "pass" : "fail";
  return j.dump(2);
}

Certificate Certificate::parse(const std::string& text) {
  ordered_json j = ordered_json::parse(text);
  Certificate cert;
  cert.tool = j.at("tool").get<std::string>();
  cert.version = j.at("version").get<std::string>();
  cert.command = j.at("command").get<std::string>();
  for (const auto& [k, v] : j.at("input").items())
    cert.input.emplace_back(k, v.get<std::string>());
  for (const auto& e : j.at("checks")) {
    std::string status = e.at("status").get<std::string>();
    if (status != "pass" && status != "fail")
      throw std::invalid_argument("unknown check status: " + status);
    cert.checks.push_back({e.at("name").get<std::string>(), status == "pass",
                           e.at("witness").get<std::string>()});
  }
  std::string verdict = j.at("verdict").get<std::string>();
  if (verdict != (cert.verdict() ? "pass" : "fail"))
    throw std::invalid_argument("stored verdict disagrees with checks");
  return cert;
}

}  // namespace rspin
