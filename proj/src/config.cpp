#include "eprwmr/config.hpp"

#include <charconv>
#include <json.hpp>

#include "eprwmr/io.hpp"

namespace eprwmr {
namespace {

using json = nlohmann::ordered_json;

double as_number(const json& v, const std::string& key) {
  if (!v.is_number()) {
    throw ConfigError("config key '" + key + "' must be a number");
  }
  return v.get<double>();
}

std::string as_string(const json& v, const std::string& key) {
  if (!v.is_string()) {
    throw ConfigError("config key '" + key + "' must be a string");
  }
  return v.get<std::string>();
}

}  // namespace

const char* to_string(Mode m) {
  switch (m) {
    case Mode::analytics: return "analytics";
    case Mode::error: return "error";
    case Mode::criterion: return "criterion";
    case Mode::simulate: return "simulate";
    case Mode::reproduce: return "reproduce";
  }
  return "unknown";
}

Mode mode_from_string(const std::string& s) {
  if (s == "analytics") return Mode::analytics;
  if (s == "error") return Mode::error;
  if (s == "criterion") return Mode::criterion;
  if (s == "simulate") return Mode::simulate;
  if (s == "reproduce") return Mode::reproduce;
  throw ConfigError("unknown mode '" + s +
                    "' (expected analytics, error, criterion, simulate or reproduce)");
}

std::vector<double> parse_r_list(const std::string& csv) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= csv.size()) {
    std::size_t comma = csv.find(',', pos);
    if (comma == std::string::npos) comma = csv.size();
    const std::string tok = csv.substr(pos, comma - pos);
    double value = 0.0;
    const auto [ptr, err] =
        std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (err != std::errc() || ptr != tok.data() + tok.size() || tok.empty()) {
      throw ConfigError("invalid entry '" + tok + "' in r list '" + csv + "'");
    }
    out.push_back(value);
    pos = comma + 1;
  }
  if (out.empty()) throw ConfigError("empty r list");
  return out;
}

ExperimentConfig parse_config_file(const std::string& path) {
  std::string text;
  try {
    text = read_text_file(path);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("cannot read config: ") + e.what());
  }
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("invalid JSON in '") + path + "': " + e.what());
  }
  if (!doc.is_object()) {
    throw ConfigError("config root must be a flat JSON object");
  }

  ExperimentConfig c;
  for (const auto& [key, value] : doc.items()) {
    if (value.is_object() || (value.is_array() && key != "r")) {
      throw ConfigError("config key '" + key + "' must be a flat scalar value");
    }
    if (key == "mode") {
      c.mode = mode_from_string(as_string(value, key));
    } else if (key == "r") {
      if (value.is_array()) {
        for (const auto& item : value) c.r_list.push_back(as_number(item, key));
        if (c.r_list.empty()) throw ConfigError("config key 'r' must not be an empty array");
      } else {
        c.r_list.push_back(as_number(value, key));
      }
    } else if (key == "g") {
      c.g = as_number(value, key);
    } else if (key == "T") {
      c.T = as_number(value, key);
    } else if (key == "gT") {
      c.gT = as_number(value, key);
    } else if (key == "dt") {
      c.dt = as_number(value, key);
    } else if (key == "n") {
      if (!value.is_number_integer()) {
        throw ConfigError("config key 'n' must be an integer");
      }
      c.n = value.get<int>();
    } else if (key == "seed") {
      if (!value.is_number_unsigned() && !value.is_number_integer()) {
        throw ConfigError("config key 'seed' must be a non-negative integer");
      }
      const auto s = value.get<long long>();
      if (s < 0) throw ConfigError("config key 'seed' must be non-negative");
      c.seed = static_cast<std::uint64_t>(s);
    } else if (key == "setting") {
      c.setting = as_string(value, key);
    } else if (key == "scheme") {
      c.scheme = as_string(value, key);
    } else if (key == "delta") {
      c.delta = as_number(value, key);
    } else if (key == "Delta") {
      c.Delta = as_number(value, key);
    } else if (key == "x1") {
      c.x1 = as_number(value, key);
    } else if (key == "x2") {
      c.x2 = as_number(value, key);
    } else if (key == "G") {
      c.G = as_number(value, key);
    } else if (key == "Delta_p") {
      c.Delta_p = as_number(value, key);
    } else if (key == "p_b") {
      c.p_b = as_number(value, key);
    } else if (key == "t_m") {
      c.t_m = as_number(value, key);
    } else if (key == "v_e") {
      c.v_e = as_number(value, key);
    } else if (key == "case") {
      c.case_label = as_string(value, key);
    } else if (key == "figure") {
      c.figure = as_string(value, key);
    } else if (key == "out") {
      c.out = as_string(value, key);
    } else if (key == "threads") {
      if (!value.is_number_integer()) {
        throw ConfigError("config key 'threads' must be an integer");
      }
      c.threads = value.get<int>();
    } else if (key == "print_config") {
      if (!value.is_boolean()) {
        throw ConfigError("config key 'print_config' must be a boolean");
      }
      c.print_config = value.get<bool>();
    } else {
      throw ConfigError("unknown config key '" + key + "'");
    }
  }
  return c;
}

std::string resolved_config_json(const ExperimentConfig& c) {
  json doc;
  doc["mode"] = to_string(c.mode);
  doc["r"] = c.r_list;
  auto put = [&doc](const char* key, const auto& opt) {
    if (opt.has_value()) doc[key] = *opt;
  };
  put("g", c.g);
  put("T", c.T);
  put("gT", c.gT);
  put("dt", c.dt);
  put("n", c.n);
  put("seed", c.seed);
  put("setting", c.setting);
  put("scheme", c.scheme);
  put("Delta", c.Delta);
  put("delta", c.delta);
  put("x1", c.x1);
  put("x2", c.x2);
  put("G", c.G);
  put("Delta_p", c.Delta_p);
  put("p_b", c.p_b);
  put("t_m", c.t_m);
  put("v_e", c.v_e);
  put("case", c.case_label);
  put("figure", c.figure);
  return doc.dump(2) + "\n";
}

}  // namespace eprwmr
