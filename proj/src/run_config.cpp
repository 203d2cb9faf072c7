#include "vibdiag/run_config.hpp"

#include <fstream>
#include <functional>
#include <map>
#include <string>

#include "vibdiag/error.hpp"

namespace vibdiag {

namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& key, const std::string& what) {
  fail(ErrorKind::Configuration, "config key '" + key + "': " + what);
}

double number(const std::string& key, const json& v) {
  if (!v.is_number()) bad(key, "expected a number");
  return v.get<double>();
}

std::int64_t integer(const std::string& key, const json& v, std::int64_t min) {
  if (!v.is_number_integer()) bad(key, "expected an integer");
  const auto i = v.get<std::int64_t>();
  if (i < min) bad(key, "must be at least " + std::to_string(min));
  return i;
}

double positive(const std::string& key, const json& v) {
  const double d = number(key, v);
  if (!(d > 0.0)) bad(key, "must be positive");
  return d;
}

std::string text(const std::string& key, const json& v) {
  if (!v.is_string()) bad(key, "expected a string");
  return v.get<std::string>();
}

Interval interval(const std::string& key, const json& v) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
    bad(key, "expected [low, high]");
  }
  Interval out{v[0].get<double>(), v[1].get<double>()};
  if (!(out.lo > 0.0 && out.lo < out.hi)) bad(key, "expected 0 < low < high");
  return out;
}

using Setter = std::function<void(RunConfig&, const std::string&, const json&)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table{
      {"version",
       [](RunConfig&, const std::string& k, const json& v) {
         if (integer(k, v, 1) != kRunConfigVersion) bad(k, "unsupported version");
       }},
      {"input", [](RunConfig& c, const std::string& k, const json& v) { c.input = text(k, v); }},
      {"format",
       [](RunConfig& c, const std::string& k, const json& v) {
         auto f = text(k, v);
         if (f != "csv" && f != "wav") bad(k, "expected \"csv\" or \"wav\"");
         c.format = f;
       }},
      {"channel",
       [](RunConfig& c, const std::string& k, const json& v) {
         c.channel = static_cast<int>(integer(k, v, 0));
       }},
      {"rate_hz", [](RunConfig& c, const std::string& k, const json& v) { c.rate_hz = positive(k, v); }},
      {"fault_freq_hz",
       [](RunConfig& c, const std::string& k, const json& v) { c.fault_freq_hz = positive(k, v); }},
      {"out_dir", [](RunConfig& c, const std::string& k, const json& v) { c.out_dir = text(k, v); }},
      {"seed",
       [](RunConfig& c, const std::string& k, const json& v) {
         if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
           bad(k, "expected a non-negative integer");
         }
         c.seed = v.get<std::uint64_t>();
       }},
      {"population_size",
       [](RunConfig& c, const std::string& k, const json& v) {
         c.pipeline.coa.population_size = static_cast<std::size_t>(integer(k, v, 4));
       }},
      {"max_iterations",
       [](RunConfig& c, const std::string& k, const json& v) {
         c.pipeline.coa.max_iterations = static_cast<std::size_t>(integer(k, v, 1));
       }},
      {"workers",
       [](RunConfig& c, const std::string& k, const json& v) {
         c.pipeline.coa.workers = static_cast<unsigned>(integer(k, v, 1));
       }},
      {"intake_coeff",
       [](RunConfig& c, const std::string& k, const json& v) { c.pipeline.coa.intake_coeff = positive(k, v); }},
      {"food_factor",
       [](RunConfig& c, const std::string& k, const json& v) { c.pipeline.coa.food_factor = positive(k, v); }},
      {"temp_mu",
       [](RunConfig& c, const std::string& k, const json& v) { c.pipeline.coa.temp_mu = positive(k, v); }},
      {"temp_sigma",
       [](RunConfig& c, const std::string& k, const json& v) { c.pipeline.coa.temp_sigma = positive(k, v); }},
      {"fc_bounds_hz",
       [](RunConfig& c, const std::string& k, const json& v) { c.pipeline.fc_bounds_hz = interval(k, v); }},
      {"sigma_bounds_hz",
       [](RunConfig& c, const std::string& k, const json& v) { c.pipeline.sigma_bounds_hz = interval(k, v); }},
      {"shift_order",
       [](RunConfig& c, const std::string& k, const json& v) {
         c.pipeline.shift_order = static_cast<int>(integer(k, v, 1));
       }},
      {"refine_period",
       [](RunConfig& c, const std::string& k, const json& v) {
         if (!v.is_boolean()) bad(k, "expected true or false");
         c.pipeline.refine_period = v.get<bool>();
       }},
      {"refine_search_frac",
       [](RunConfig& c, const std::string& k, const json& v) {
         const double f = positive(k, v);
         if (f > 0.1) bad(k, "must not exceed 0.1");
         c.pipeline.refine_search_frac = f;
       }},
      {"envsi_harmonics",
       [](RunConfig& c, const std::string& k, const json& v) {
         c.pipeline.envsi_harmonics = static_cast<int>(integer(k, v, 1));
       }},
      {"harmonic_threshold",
       [](RunConfig& c, const std::string& k, const json& v) {
         const double t = number(k, v);
         if (!(t > 1.0)) bad(k, "must exceed 1");
         c.pipeline.harmonic_threshold = t;
       }},
  };
  return table;
}

}  // namespace

PipelineConfig RunConfig::resolved_pipeline() const {
  PipelineConfig p = pipeline;
  p.coa.rng_seed = seed;
  if (fault_freq_hz) p.initial_fault_freq_hz = *fault_freq_hz;
  return p;
}

RunConfig parse_run_config(const nlohmann::json& doc) {
  if (!doc.is_object()) fail(ErrorKind::Configuration, "run config must be a JSON object");
  RunConfig cfg;
  const auto& table = setters();
  for (const auto& [key, value] : doc.items()) {
    const auto it = table.find(key);
    if (it == table.end()) fail(ErrorKind::Configuration, "unknown config key '" + key + "'");
    it->second(cfg, key, value);
  }
  return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Io, "cannot open config '" + path.string() + "'");
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::parse_error& e) {
    fail(ErrorKind::Configuration, "config '" + path.string() + "' is not valid JSON: " + e.what());
  }
  return parse_run_config(doc);
}

nlohmann::json to_json(const RunConfig& cfg) {
  json j;
  j["version"] = kRunConfigVersion;
  if (cfg.input) j["input"] = cfg.input->generic_string();
  if (cfg.format) j["format"] = *cfg.format;
  j["channel"] = cfg.channel;
  if (cfg.rate_hz) j["rate_hz"] = *cfg.rate_hz;
  if (cfg.fault_freq_hz) j["fault_freq_hz"] = *cfg.fault_freq_hz;
  if (cfg.out_dir) j["out_dir"] = cfg.out_dir->generic_string();
  j["seed"] = cfg.seed;
  const auto& p = cfg.pipeline;
  j["population_size"] = p.coa.population_size;
  j["max_iterations"] = p.coa.max_iterations;
  j["workers"] = p.coa.workers;
  j["intake_coeff"] = p.coa.intake_coeff;
  j["food_factor"] = p.coa.food_factor;
  j["temp_mu"] = p.coa.temp_mu;
  j["temp_sigma"] = p.coa.temp_sigma;
  if (p.fc_bounds_hz) j["fc_bounds_hz"] = {p.fc_bounds_hz->lo, p.fc_bounds_hz->hi};
  if (p.sigma_bounds_hz) j["sigma_bounds_hz"] = {p.sigma_bounds_hz->lo, p.sigma_bounds_hz->hi};
  j["shift_order"] = p.shift_order;
  j["refine_period"] = p.refine_period;
  j["refine_search_frac"] = p.refine_search_frac;
  j["envsi_harmonics"] = p.envsi_harmonics;
  j["harmonic_threshold"] = p.harmonic_threshold;
  return j;
}

}  // namespace vibdiag
