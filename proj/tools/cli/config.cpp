#include <charconv>
#include <cmath>
#include <set>

#include "cli/cli.hpp"
#include "conebranch/error.hpp"

namespace conebranch::cli {

namespace {

using nlohmann::json;

double parse_real(std::string_view text, std::string_view whole) {
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double value = 0.0;
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw UsageError("not a number: '" + std::string(whole) + "'");
  }
  return value;
}

std::string_view trim(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  return text;
}

void require_keys(const json& node, const std::set<std::string>& allowed, const std::string& where) {
  if (!node.is_object()) {
    throw UsageError(where + " must be a JSON object");
  }
  for (const auto& [key, value] : node.items()) {
    if (!allowed.contains(key)) {
      throw UsageError("unknown configuration key '" + where + key + "'");
    }
  }
}

double get_number(const json& node, const std::string& key) {
  if (!node.is_number()) {
    throw UsageError("configuration key '" + key + "' must be a number");
  }
  return node.get<double>();
}

long long get_integer(const json& node, const std::string& key) {
  if (!node.is_number_integer()) {
    throw UsageError("configuration key '" + key + "' must be an integer");
  }
  return node.get<long long>();
}

std::string get_string(const json& node, const std::string& key) {
  if (!node.is_string()) {
    throw UsageError("configuration key '" + key + "' must be a string");
  }
  return node.get<std::string>();
}

// A number, a string such as "0.5+0.2i", or a pair [re, im].
Complex get_complex(const json& node, const std::string& key) {
  if (node.is_number()) return node.get<double>();
  if (node.is_string()) return parse_complex(node.get<std::string>());
  if (node.is_array() && node.size() == 2 && node[0].is_number() && node[1].is_number()) {
    return {node[0].get<double>(), node[1].get<double>()};
  }
  throw UsageError("configuration key '" + key + "' must be a number, a complex string or [re, im]");
}

nlohmann::ordered_json complex_json(Complex z) {
  if (z.imag() == 0.0) return z.real();
  return nlohmann::ordered_json::array({z.real(), z.imag()});
}

}  // namespace

spectral::RadialProfile ProfileSpec::make() const {
  try {
    return {family, r_min, r_max, amplitude, sharpness};
  } catch (const InvalidArgument& e) {
    throw UsageError(std::string("invalid profile: ") + e.what());
  }
}

Complex parse_complex(std::string_view text) {
  const std::string_view whole = text;
  text = trim(text);
  if (text.empty()) {
    throw UsageError("empty number");
  }
  if (text.back() != 'i') {
    return parse_real(text, whole);
  }
  text.remove_suffix(1);
  // Split at the last sign that is not part of an exponent.
  std::size_t split = std::string_view::npos;
  for (std::size_t j = text.size(); j-- > 1;) {
    if ((text[j] == '+' || text[j] == '-') && text[j - 1] != 'e' && text[j - 1] != 'E') {
      split = j;
      break;
    }
  }
  const auto imaginary = [&](std::string_view part) {
    if (part.empty() || part == "+") return 1.0;
    if (part == "-") return -1.0;
    return parse_real(part.front() == '+' ? part.substr(1) : part, whole);
  };
  if (split == std::string_view::npos) {
    return {0.0, imaginary(text)};
  }
  return {parse_real(text.substr(0, split), whole), imaginary(text.substr(split))};
}

std::vector<Complex> parse_complex_list(std::string_view text) {
  std::vector<Complex> out;
  while (true) {
    const std::size_t comma = text.find(',');
    out.push_back(parse_complex(text.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

RunConfig apply_json(const json& doc, RunConfig base) {
  require_keys(doc,
               {"schema_version", "case", "n", "profile", "lambda_max", "step", "tol", "rel_tol", "seed", "samples",
                "output", "s", "lambda", "eta", "k", "radii", "trials", "method", "samples_out"},
               "");
  if (!doc.contains("schema_version")) {
    throw UsageError("configuration lacks schema_version");
  }
  if (get_integer(doc["schema_version"], "schema_version") != kSchemaVersion) {
    throw UsageError("unsupported schema_version " + doc["schema_version"].dump() + ", expected " +
                     std::to_string(kSchemaVersion));
  }
  RunConfig c = std::move(base);
  try {
    for (const auto& [key, v] : doc.items()) {
      if (key == "case") {
        c.field = parse_field(get_string(v, key));
      } else if (key == "n") {
        c.n = static_cast<int>(get_integer(v, key));
      } else if (key == "profile") {
        require_keys(v, {"family", "r_min", "r_max", "amplitude", "sharpness"}, "profile.");
        for (const auto& [pkey, pv] : v.items()) {
          const std::string name = "profile." + pkey;
          if (pkey == "family") c.profile.family = spectral::parse_profile_family(get_string(pv, name));
          if (pkey == "r_min") c.profile.r_min = get_number(pv, name);
          if (pkey == "r_max") c.profile.r_max = get_number(pv, name);
          if (pkey == "amplitude") c.profile.amplitude = get_number(pv, name);
          if (pkey == "sharpness") c.profile.sharpness = get_number(pv, name);
        }
      } else if (key == "lambda_max") {
        c.lambda_max = get_number(v, key);
      } else if (key == "step") {
        c.step = get_number(v, key);
      } else if (key == "tol") {
        c.tol = get_number(v, key);
      } else if (key == "rel_tol") {
        c.rel_tol = get_number(v, key);
      } else if (key == "seed") {
        if (!v.is_number_unsigned()) throw UsageError("configuration key 'seed' must be a non-negative integer");
        c.seed = v.get<std::uint64_t>();
      } else if (key == "samples") {
        c.samples = get_integer(v, key);
      } else if (key == "output") {
        c.output = get_string(v, key);
      } else if (key == "s") {
        c.s = get_complex(v, key);
      } else if (key == "lambda") {
        c.lambda = get_complex(v, key);
      } else if (key == "eta") {
        if (!v.is_array()) throw UsageError("configuration key 'eta' must be an array");
        c.eta.clear();
        for (const auto& e : v) c.eta.push_back(get_complex(e, "eta"));
      } else if (key == "k") {
        c.k = static_cast<int>(get_integer(v, key));
      } else if (key == "radii") {
        c.radii = static_cast<int>(get_integer(v, key));
      } else if (key == "trials") {
        c.trials = static_cast<int>(get_integer(v, key));
      } else if (key == "method") {
        c.method = get_string(v, key);
      } else if (key == "samples_out") {
        c.samples_out = get_string(v, key);
      }
    }
  } catch (const InvalidArgument& e) {
    throw UsageError(e.what());
  }
  return c;
}

nlohmann::ordered_json to_json(const RunConfig& c) {
  nlohmann::ordered_json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["case"] = std::string(to_string(c.field));
  doc["n"] = c.n;
  doc["profile"] = {{"family", std::string(spectral::to_string(c.profile.family))},
                    {"r_min", c.profile.r_min},
                    {"r_max", c.profile.r_max},
                    {"amplitude", c.profile.amplitude},
                    {"sharpness", c.profile.sharpness}};
  doc["lambda_max"] = c.lambda_max;
  doc["step"] = c.step;
  if (c.tol) doc["tol"] = *c.tol;
  if (c.rel_tol) doc["rel_tol"] = *c.rel_tol;
  doc["seed"] = c.seed;
  doc["samples"] = c.samples;
  doc["output"] = c.output;
  if (c.s) doc["s"] = complex_json(*c.s);
  if (c.lambda) doc["lambda"] = complex_json(*c.lambda);
  if (!c.eta.empty()) {
    doc["eta"] = nlohmann::ordered_json::array();
    for (Complex e : c.eta) doc["eta"].push_back(complex_json(e));
  }
  if (c.k) doc["k"] = *c.k;
  doc["radii"] = c.radii;
  doc["trials"] = c.trials;
  doc["method"] = c.method;
  if (!c.samples_out.empty()) doc["samples_out"] = c.samples_out;
  return doc;
}

}  // namespace conebranch::cli
