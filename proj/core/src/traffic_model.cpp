#include "tropica/traffic_model.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "tropica/error.hpp"

namespace tropica {

std::string_view to_string(Convention c) { return c == Convention::EV ? "EV" : "DS"; }

Convention convention_from_string(std::string_view s) {
  if (s == "EV") return Convention::EV;
  if (s == "DS") return Convention::DS;
  throw ParseError("unknown convention \"" + std::string(s) + "\" (expected EV or DS)");
}

namespace {

std::string format_value(double v) {
  std::ostringstream os;
  os.precision(15);
  os << v;
  return os.str();
}

}  // namespace

std::vector<Violation> validate(const TrafficConfig& config) {
  std::vector<Violation> out;
  if (config.n < 2) out.push_back({"n >= 2 required (n = " + std::to_string(config.n) + ")", 0});
  if (config.m < 2) out.push_back({"m >= 2 required (m = " + std::to_string(config.m) + ")", 0});
  const std::size_t size = config.n + config.m;
  if (config.a.size() != size) {
    out.push_back({"expected " + std::to_string(size) + " arc values, got " +
                       std::to_string(config.a.size()),
                   0});
    return out;
  }
  for (std::size_t i = 1; i <= size; ++i) {
    const double v = config.arc(i);
    if (!std::isfinite(v)) {
      out.push_back({"a_" + std::to_string(i) + " is not finite", i});
    } else if (v < 0.0 || v > 1.0) {
      out.push_back({"a_" + std::to_string(i) + " = " + format_value(v) + " outside [0, 1]", i});
    }
  }
  if (config.n >= 1 && size >= 1) {
    const double junction = config.arc(config.n) + config.arc(size);
    if (junction > 1.0) {
      out.push_back({"a_n + a_{n+m} = " + format_value(junction) + " > 1", config.n});
    }
  }
  return out;
}

DerivedParams derive(const TrafficConfig& config) {
  const auto violations = validate(config);
  if (!violations.empty()) throw InvalidConfig("invalid config: " + violations.front().message);
  return derive_as<double>(config);
}

TrafficConfig allocate(std::size_t n, std::size_t m, double d, Convention convention) {
  if (!(d >= 0.0 && d <= 1.0)) throw DensityOutOfRange("density " + format_value(d) + " outside [0, 1]");
  if (n < 2 || m < 2) throw InvalidConfig("allocate: n, m >= 2 required");
  const std::size_t size = n + m;
  const double total = d * static_cast<double>(size - 1);
  TrafficConfig config{n, m, std::vector<double>(size), convention};
  const double uniform = total / static_cast<double>(size);
  if (uniform <= 0.5) {
    for (double& v : config.a) v = uniform;
  } else {
    const double rest = std::min(1.0, (total - 1.0) / static_cast<double>(size - 2));
    for (double& v : config.a) v = rest;
    config.a[n - 1] = 0.5;
    config.a[size - 1] = 0.5;
  }
  return config;
}

namespace {

using nlohmann::json;

const json& require(const json& doc, const char* field) {
  auto it = doc.find(field);
  if (it == doc.end()) throw MissingField(field);
  return *it;
}

std::size_t read_count(const json& doc, const char* field) {
  const json& v = require(doc, field);
  if (!v.is_number_integer()) throw ParseError(std::string("field \"") + field + "\" must be an integer");
  const auto value = v.get<long long>();
  if (value < 0) throw ParseError(std::string("field \"") + field + "\" must be non-negative");
  return static_cast<std::size_t>(value);
}

double read_number(const json& v, const std::string& what) {
  if (!v.is_number()) throw ParseError(what + " must be a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw ParseError(what + " must be finite");
  return x;
}

}  // namespace

TrafficConfig parse_config_unvalidated(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed config: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("config must be a JSON object");

  const std::size_t n = read_count(doc, "n");
  const std::size_t m = read_count(doc, "m");
  Convention convention = Convention::EV;
  if (auto it = doc.find("convention"); it != doc.end()) {
    if (!it->is_string()) throw ParseError("field \"convention\" must be a string");
    convention = convention_from_string(it->get<std::string>());
  }

  const bool has_a = doc.contains("a");
  const bool has_density = doc.contains("density");
  if (has_a && has_density) throw ParseError("config must give exactly one of \"a\" and \"density\"");
  if (!has_a && !has_density) throw MissingField("a");

  TrafficConfig config;
  if (has_density) {
    config = allocate(n, m, read_number(doc["density"], "field \"density\""), convention);
  } else {
    const json& arr = doc["a"];
    if (!arr.is_array()) throw ParseError("field \"a\" must be an array");
    config.n = n;
    config.m = m;
    config.convention = convention;
    for (std::size_t i = 0; i < arr.size(); ++i) {
      config.a.push_back(read_number(arr[i], "a_" + std::to_string(i + 1)));
    }
  }
  return config;
}

TrafficConfig parse_config(std::string_view text) {
  TrafficConfig config = parse_config_unvalidated(text);
  const auto violations = validate(config);
  if (!violations.empty()) throw InvalidConfig("invalid config: " + violations.front().message);
  return config;
}

std::string serialize_config(const TrafficConfig& config) {
  json doc;
  doc["n"] = config.n;
  doc["m"] = config.m;
  doc["a"] = config.a;
  doc["convention"] = std::string(to_string(config.convention));
  return doc.dump();
}

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open config file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

TrafficConfig load_config(const std::string& path) { return parse_config(read_file(path)); }

TrafficConfig load_config_unvalidated(const std::string& path) {
  return parse_config_unvalidated(read_file(path));
}

}  // namespace tropica
