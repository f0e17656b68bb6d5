#include "lacunary/experiment.hpp"

#include <cerrno>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <set>

namespace lacunary {

#ifndef LACUNARY_VERSION
#define LACUNARY_VERSION "0.0.0"
#endif

const char* version() { return LACUNARY_VERSION; }

namespace {

void reject_unknown(const Json& json, std::initializer_list<const char*> allowed,
                    const std::string& where) {
  if (!json.is_object()) throw ParseError(where + " must be a JSON object");
  const std::set<std::string> keys(allowed.begin(), allowed.end());
  for (const auto& [key, value] : json.items()) {
    if (!keys.contains(key)) throw ParseError("unknown key '" + key + "' in " + where);
  }
}

template <class T>
void read(const Json& json, const char* key, T& out, const std::string& where) {
  if (!json.contains(key)) return;
  try {
    out = json.at(key).get<T>();
  } catch (const Json::exception&) {
    throw ParseError("bad value for '" + std::string(key) + "' in " + where + ": " +
                     json.at(key).dump());
  }
}

}  // namespace

Json to_json(const ExperimentConfig& c) {
  Json coefficients = Json::array();
  for (const BigInt& a : c.source.coefficients) coefficients.push_back(to_decimal(a));
  return Json{
      {"schema", c.schema},
      {"pipeline", c.pipeline},
      {"source",
       {{"kind", c.source.kind},
        {"limit", c.source.limit},
        {"low", c.source.low},
        {"coefficients", std::move(coefficients)},
        {"k_max", c.source.k_max},
        {"base", to_decimal(c.source.base)}}},
      {"partition",
       {{"kind", c.partition.kind},
        {"k_max", c.partition.k_max},
        {"exponents", c.partition.exponents}}},
      {"schedule", {{"kind", c.schedule.kind}, {"cap", c.schedule.cap}, {"ell", c.schedule.ell}}},
      {"s", c.s},
      {"trials", c.trials},
      {"seed", c.seed},
      {"threads", c.threads},
      {"tail_start", c.tail_start},
      {"independence_threshold", c.independence_threshold},
      {"psi_threshold", c.psi_threshold},
      {"confidence", c.confidence},
      {"max_grid", c.max_grid},
      {"scan",
       {{"denominators", c.scan.denominators},
        {"irrational_points", c.scan.irrational_points},
        {"exclusion_q", c.scan.exclusion_q},
        {"exclusion_scale", c.scan.exclusion_scale}}},
      {"output_dir", c.output_dir}};
}

ExperimentConfig config_from_json(const Json& input) {
  const Json& json = input.is_object() && input.contains("config") &&
                             input.value("kind", std::string()) == "experiment_record"
                         ? input.at("config")
                         : input;
  reject_unknown(json,
                 {"schema", "pipeline", "source", "partition", "schedule", "s", "trials", "seed",
                  "threads", "tail_start", "independence_threshold", "psi_threshold",
                  "confidence", "max_grid", "scan", "output_dir"},
                 "config");
  ExperimentConfig c;
  if (!json.contains("schema")) throw ParseError("config has no 'schema' field");
  read(json, "schema", c.schema, "config");
  if (c.schema != kConfigSchema) {
    throw ParseError("unsupported config schema " + std::to_string(c.schema) + " (expected " +
                     std::to_string(kConfigSchema) + ")");
  }
  read(json, "pipeline", c.pipeline, "config");
  if (c.pipeline != "theorem_4_8" && c.pipeline != "main_theorem") {
    throw ParseError("unknown pipeline '" + c.pipeline + "'");
  }
  if (json.contains("source")) {
    const Json& s = json.at("source");
    reject_unknown(s, {"kind", "limit", "low", "coefficients", "k_max", "base"}, "source");
    read(s, "kind", c.source.kind, "source");
    read(s, "limit", c.source.limit, "source");
    read(s, "low", c.source.low, "source");
    read(s, "k_max", c.source.k_max, "source");
    if (s.contains("coefficients")) {
      for (const Json& a : s.at("coefficients")) c.source.coefficients.push_back(bigint_from_json(a));
    }
    if (s.contains("base")) c.source.base = bigint_from_json(s.at("base"));
  }
  if (json.contains("partition")) {
    const Json& p = json.at("partition");
    reject_unknown(p, {"kind", "k_max", "exponents"}, "partition");
    read(p, "kind", c.partition.kind, "partition");
    read(p, "k_max", c.partition.k_max, "partition");
    read(p, "exponents", c.partition.exponents, "partition");
  }
  if (json.contains("schedule")) {
    const Json& s = json.at("schedule");
    reject_unknown(s, {"kind", "cap", "ell"}, "schedule");
    read(s, "kind", c.schedule.kind, "schedule");
    read(s, "cap", c.schedule.cap, "schedule");
    read(s, "ell", c.schedule.ell, "schedule");
  }
  read(json, "s", c.s, "config");
  read(json, "trials", c.trials, "config");
  read(json, "seed", c.seed, "config");
  read(json, "threads", c.threads, "config");
  read(json, "tail_start", c.tail_start, "config");
  read(json, "independence_threshold", c.independence_threshold, "config");
  read(json, "psi_threshold", c.psi_threshold, "config");
  read(json, "confidence", c.confidence, "config");
  read(json, "max_grid", c.max_grid, "config");
  if (json.contains("scan")) {
    const Json& s = json.at("scan");
    reject_unknown(s, {"denominators", "irrational_points", "exclusion_q", "exclusion_scale"},
                   "scan");
    read(s, "denominators", c.scan.denominators, "scan");
    read(s, "irrational_points", c.scan.irrational_points, "scan");
    read(s, "exclusion_q", c.scan.exclusion_q, "scan");
    read(s, "exclusion_scale", c.scan.exclusion_scale, "scan");
  }
  read(json, "output_dir", c.output_dir, "config");
  if (c.s.empty()) throw ParseError("config needs at least one s value");
  return c;
}

std::string config_hash(const ExperimentConfig& config) {
  Json json = to_json(config);
  json.erase("threads");
  json.erase("output_dir");
  const std::string text = json.dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buffer[17];
  std::snprintf(buffer, sizeof buffer, "%016llx", static_cast<unsigned long long>(h));
  return buffer;
}

IntegerSet build_source(const SourceSpec& spec) {
  if (spec.kind == "primes") {
    return generate_primes(spec.limit);
  }
  if (spec.kind == "polynomial") {
    if (spec.k_max == 0) throw PreconditionError("polynomial source needs k_max >= 1");
    return generate_polynomial(spec.coefficients, spec.k_max);
  }
  if (spec.kind == "range") {
    if (spec.low > 0 && static_cast<std::uint64_t>(spec.low) > spec.limit) {
      throw PreconditionError("range source: low exceeds limit");
    }
    std::vector<BigInt> values;
    for (std::int64_t n = spec.low; n <= static_cast<std::int64_t>(spec.limit); ++n) {
      values.emplace_back(n);
    }
    return IntegerSet::from_values(std::move(values), "range[" + std::to_string(spec.low) + "," +
                                                          std::to_string(spec.limit) + "]");
  }
  if (spec.kind == "geometric") {
    return generate_geometric(spec.base, spec.k_max);
  }
  throw ParseError("unknown source kind '" + spec.kind + "'");
}

Partition build_partition(const PartitionSpec& spec, const IntegerSet& source) {
  if (spec.kind == "dyadic") {
    std::size_t k_max = spec.k_max;
    if (k_max == 0) {
      k_max = 1;
      if (!source.empty()) {
        const BigInt top = source.max_abs();
        while (pow2(k_max) < top) ++k_max;
      }
    }
    return dyadic_partition(k_max);
  }
  if (spec.kind == "gross") {
    if (!spec.exponents.empty()) return gross_partition_from_exponents(spec.exponents);
    return gross_partition(spec.k_max == 0 ? 4 : spec.k_max);
  }
  throw ParseError("unknown partition kind '" + spec.kind + "'");
}

std::vector<std::uint64_t> build_ell(const ScheduleSpec& spec,
                                     const BlockDecomposition& decomposition) {
  std::vector<std::uint64_t> ell;
  for (const Block& block : decomposition.blocks) {
    const std::uint64_t size = block.count();
    if (spec.kind == "linear") {
      std::uint64_t value = block.k;
      if (value > size) {
        if (!spec.cap) {
          throw PreconditionError("schedule: ell_" + std::to_string(block.k) + " = " +
                                  std::to_string(value) + " exceeds |E_k| = " +
                                  std::to_string(size) + " (enable cap to use min(k, |E_k|))");
        }
        value = size;
      }
      ell.push_back(value);
    } else if (spec.kind == "katznelson_li") {
      ell.push_back(std::min(shifted_factorial(block.k), size));
    } else if (spec.kind == "full") {
      ell.push_back(size);
    } else if (spec.kind == "zero") {
      ell.push_back(0);
    } else if (spec.kind == "explicit") {
      if (spec.ell.size() != decomposition.blocks.size()) {
        throw PreconditionError("schedule: explicit ell needs " +
                                std::to_string(decomposition.blocks.size()) + " entries, got " +
                                std::to_string(spec.ell.size()));
      }
      ell.push_back(spec.ell[ell.size()]);
    } else {
      throw ParseError("unknown schedule kind '" + spec.kind + "'");
    }
  }
  return ell;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buffer[32];
  std::strftime(buffer, sizeof buffer, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buffer;
}

std::filesystem::path output_directory(const std::string& requested) {
  if (!requested.empty()) return requested;
  if (const char* env = std::getenv("LACUNARY_OUT_DIR"); env && *env) return env;
  return ".";
}

std::filesystem::path write_new_file(const std::filesystem::path& dir, const std::string& stem,
                                     const std::string& extension, const std::string& contents) {
  std::filesystem::create_directories(dir);
  for (int n = 1; n <= 9999; ++n) {
    char suffix[8];
    std::snprintf(suffix, sizeof suffix, "-%04d", n);
    const std::filesystem::path path = dir / (stem + suffix + extension);
    std::FILE* file = std::fopen(path.c_str(), "wx");
    if (!file) {
      if (errno == EEXIST) continue;
      throw Error("cannot create " + path.string());
    }
    const bool ok = std::fwrite(contents.data(), 1, contents.size(), file) == contents.size();
    if (std::fclose(file) != 0 || !ok) throw Error("cannot write " + path.string());
    return path;
  }
  throw Error("no free file name for " + (dir / stem).string());
}

Json strip_timestamps(Json record) {
  if (record.is_object()) record.erase("timestamps");
  return record;
}

}  // namespace lacunary
