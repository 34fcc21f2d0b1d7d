#include "flatfront/config.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>

#include "flatfront/error.hpp"

namespace flatfront {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

Tolerances parse_tolerances(const std::string& text, Tolerances base) {
  std::map<std::string, double*> fields = {
      {"herm", &base.herm},     {"det", &base.det},
      {"root", &base.root},     {"vanish", &base.vanish},
      {"lift", &base.lift},     {"sing", &base.sing},
      {"rtol", &base.rtol},     {"atol", &base.atol},
      {"cauchy", &base.cauchy}, {"loop_closure", &base.loop_closure},
  };
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorCode::kParseError,
                  "config line " + std::to_string(lineno) + ": expected key=value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    auto it = fields.find(key);
    if (it == fields.end()) {
      throw Error(ErrorCode::kParseError, "config: unknown key '" + key + "'");
    }
    char* end = nullptr;
    const double v = std::strtod(value.c_str(), &end);
    if (value.empty() || *end != '\0' || !(v > 0.0)) {
      throw Error(ErrorCode::kParseError,
                  "config: '" + key + "' needs a positive number");
    }
    *it->second = v;
  }
  return base;
}

Tolerances load_tolerances(const std::string& path, Tolerances base) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIoError, "cannot read config '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_tolerances(buf.str(), base);
}

unsigned worker_threads() {
  if (const char* env = std::getenv("FLATFRONT_THREADS")) {
    const long n = std::strtol(env, nullptr, 10);
    if (n > 0) return static_cast<unsigned>(n);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace flatfront
