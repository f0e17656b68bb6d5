// lacunary: command-line front end for the library.
//
// Exit status: 0 success, 1 internal error, 2 usage or parse error,
// 3 precondition failure, 4 property falsified (dependent set, failed verdict).

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "lacunary/bernstein.hpp"
#include "lacunary/circle.hpp"
#include "lacunary/equidistribution.hpp"
#include "lacunary/experiment.hpp"
#include "lacunary/pipeline.hpp"
#include "lacunary/relations.hpp"
#include "lacunary/selection.hpp"
#include "lacunary/serialize.hpp"

namespace {

using namespace lacunary;

enum ExitCode { kOk = 0, kInternal = 1, kUsage = 2, kPrecondition = 3, kFalsified = 4 };

struct Globals {
  std::optional<std::uint64_t> seed;
  std::string config;
  std::string out;
  unsigned threads = 0;

  std::uint64_t seed_or_default() const { return seed.value_or(1); }
};

std::string read_file(const std::string& path) {
  if (path == "-") {
    std::ostringstream buffer;
    buffer << std::cin.rdbuf();
    return buffer.str();
  }
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

// JSON {label, elements} or one integer per line.
IntegerSet load_set(const std::string& path) {
  const std::string text = read_file(path);
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    return integer_set_from_json(parse_json(text));
  }
  std::istringstream in(text);
  return read_integer_lines(in, path);
}

std::vector<std::string> split(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) parts.push_back(item);
  }
  return parts;
}

std::vector<BigInt> parse_bigints(const std::string& text) {
  std::vector<BigInt> values;
  for (const auto& part : split(text)) values.push_back(parse_bigint(part));
  return values;
}

std::vector<std::uint64_t> parse_u64s(const std::string& text) {
  std::vector<std::uint64_t> values;
  for (const auto& part : split(text)) {
    const BigInt v = parse_bigint(part);
    if (v < 0 || v > std::numeric_limits<std::uint64_t>::max()) {
      throw ParseError("expected a nonnegative 64-bit integer, got " + part);
    }
    values.push_back(static_cast<std::uint64_t>(v));
  }
  return values;
}

CirclePoint parse_point(const std::string& text) {
  const auto slash = text.find('/');
  if (slash != std::string::npos) {
    const BigInt a = parse_bigint(text.substr(0, slash));
    const BigInt q = parse_bigint(text.substr(slash + 1));
    if (q < 0 || q > std::numeric_limits<std::uint64_t>::max() ||
        a < std::numeric_limits<std::int64_t>::min() || a > std::numeric_limits<std::int64_t>::max()) {
      throw ParseError("point out of range: " + text);
    }
    return CirclePoint::rational(static_cast<std::int64_t>(a), static_cast<std::uint64_t>(q));
  }
  try {
    std::size_t used = 0;
    const long double x = std::stold(text, &used);
    if (used != text.size()) throw ParseError("bad point: " + text);
    return CirclePoint::turns(x);
  } catch (const std::logic_error&) {
    throw ParseError("bad point: " + text);
  }
}

// Writes to --out (or LACUNARY_OUT_DIR) as a new file, else to stdout.
void emit(const Globals& globals, const std::string& stem, const std::string& extension,
          const std::string& text) {
  const char* env = std::getenv("LACUNARY_OUT_DIR");
  if (globals.out.empty() && !(env && *env)) {
    std::cout << text;
    return;
  }
  const auto path = write_new_file(output_directory(globals.out), stem, extension, text);
  std::cout << path.string() << "\n";
}

struct ScheduleArgs {
  std::optional<double> density;
  std::optional<std::uint64_t> ell_uniform;
  std::optional<double> power;
  bool pace = false;
  std::string partition;
  std::size_t k_max = 0;
  std::string ell;
  bool katznelson_li = false;
  bool linear = false;
  bool cap = false;

  void attach(CLI::App* cmd) {
    cmd->add_option("--density", density, "constant density delta_n");
    cmd->add_option("--ell-uniform", ell_uniform, "uniform density ell / |E|");
    cmd->add_option("--power", power, "power-law density min(1, k^-alpha)");
    cmd->add_flag("--pace", pace, "pace-based nonincreasing density");
    cmd->add_option("--partition", partition, "blockwise: dyadic | gross");
    cmd->add_option("--k-max", k_max, "blockwise: partition depth (0 = cover the set)");
    cmd->add_option("--ell", ell, "blockwise: comma-separated ell_k, block 0 first");
    cmd->add_flag("--katznelson-li", katznelson_li, "blockwise: ell_k = min((k+2)!, |E_k|)");
    cmd->add_flag("--linear", linear, "blockwise: ell_k = k");
    cmd->add_flag("--cap", cap, "blockwise linear: use min(k, |E_k|)");
  }

  DensitySchedule build(const IntegerSet& set) const {
    const int chosen = (density ? 1 : 0) + (ell_uniform ? 1 : 0) + (power ? 1 : 0) +
                       (pace ? 1 : 0) + (partition.empty() ? 0 : 1);
    if (chosen != 1) {
      throw ParseError(
          "choose exactly one of --density, --ell-uniform, --power, --pace, --partition");
    }
    if (density) return DensitySchedule::constant(set, *density);
    if (ell_uniform) return DensitySchedule::uniform(set, *ell_uniform);
    if (power) return bourgain_schedule(set, PowerLaw{*power}).schedule;
    if (pace) return bourgain_schedule(set, PaceBased{}).schedule;
    const BlockDecomposition d =
        decompose(set, build_partition(PartitionSpec{partition, k_max, {}}, set));
    if (katznelson_li) return katznelson_li_schedule(d).schedule;
    ScheduleSpec spec;
    if (linear) {
      spec.kind = "linear";
      spec.cap = cap;
    } else if (!ell.empty()) {
      spec.kind = "explicit";
      spec.ell = parse_u64s(ell);
    } else {
      throw ParseError("--partition needs --ell, --linear or --katznelson-li");
    }
    return blockwise_schedule(d, build_ell(spec, d));
  }
};

int run(int argc, char** argv) {
  CLI::App app{"Random lacunary subsets of integer sequences: s-independence and Weyl "
               "equidistribution diagnostics"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--seed", g.seed, "base seed (default 1)");
  app.add_option("--config", g.config, "experiment config JSON (pipeline)");
  app.add_option("--out", g.out, "output directory; files are never overwritten");
  app.add_option("--threads", g.threads, "worker threads, 0 = hardware concurrency");
  app.set_version_flag("--version", version());

  int exit_code = kOk;

  // ---- generate
  auto* generate = app.add_subcommand("generate", "generate an integer set");
  bool gen_primes = false;
  bool gen_geometric = false;
  bool gen_classify = false;
  std::uint64_t gen_limit = 0;
  std::uint64_t gen_k_max = 0;
  std::string gen_polynomial;
  std::string gen_base = "3";
  std::string gen_sumset;
  std::size_t gen_j = 0;
  std::optional<unsigned> gen_sparse;
  std::string gen_format = "json";
  generate->add_flag("--primes", gen_primes, "primes up to --limit");
  generate->add_option("--limit", gen_limit, "sieve limit");
  generate->add_option("--polynomial", gen_polynomial, "coefficients c0,c1,... of P(k)");
  generate->add_flag("--geometric", gen_geometric, "base^1..base^k_max");
  generate->add_option("--base", gen_base, "geometric base");
  generate->add_option("--k-max", gen_k_max, "number of terms");
  generate->add_option("--sumset", gen_sumset, "set file whose j-fold distinct sums to form");
  generate->add_option("--j", gen_j, "sumset order");
  generate->add_option("--sparse-blocks", gen_sparse, "union of (2^(2^2i), 2^(2^2i+1)], levels");
  generate->add_flag("--classify", gen_classify, "attach a growth report");
  generate->add_option("--format", gen_format, "json | lines")->check(CLI::IsMember({"json", "lines"}));
  generate->callback([&] {
    IntegerSet set;
    const int chosen = (gen_primes ? 1 : 0) + (gen_geometric ? 1 : 0) +
                       (gen_polynomial.empty() ? 0 : 1) + (gen_sumset.empty() ? 0 : 1) +
                       (gen_sparse ? 1 : 0);
    if (chosen != 1) {
      throw ParseError("choose one of --primes, --polynomial, --geometric, --sumset, --sparse-blocks");
    }
    if (gen_primes) {
      set = generate_primes(gen_limit);
    } else if (gen_geometric) {
      set = generate_geometric(parse_bigint(gen_base), gen_k_max);
    } else if (!gen_polynomial.empty()) {
      set = generate_polynomial(parse_bigints(gen_polynomial), gen_k_max);
    } else if (!gen_sumset.empty()) {
      set = generate_sumset(load_set(gen_sumset), gen_j);
    } else {
      set = generate_sparse_blocks(*gen_sparse);
    }
    if (gen_format == "lines") {
      std::ostringstream out;
      write_integer_lines(out, set);
      emit(g, "set", ".txt", out.str());
      return;
    }
    Json json = to_json(set);
    if (set.dropped_duplicates() > 0) json["dropped_duplicates"] = set.dropped_duplicates();
    if (gen_classify) json["growth"] = to_json(classify_growth(set));
    emit(g, "set", ".json", dump(json));
  });

  // ---- partition
  auto* partition = app.add_subcommand("partition", "decompose a set into Littlewood-Paley blocks");
  std::string part_set;
  PartitionSpec part_spec;
  std::string part_exponents;
  bool part_inline = false;
  std::size_t part_tail = 2;
  partition->add_option("--set", part_set, "set file (JSON or lines)")->required();
  partition->add_option("--kind", part_spec.kind, "dyadic | gross")
      ->check(CLI::IsMember({"dyadic", "gross"}));
  partition->add_option("--k-max", part_spec.k_max, "number of annuli (0 = cover the set)");
  partition->add_option("--exponents", part_exponents, "gross: custom exponents e_1,e_2,...");
  partition->add_flag("--inline", part_inline, "include block elements");
  partition->add_option("--tail-start", part_tail, "first block of the growth tail");
  partition->callback([&] {
    const IntegerSet set = load_set(part_set);
    part_spec.exponents = parse_u64s(part_exponents);
    const BlockDecomposition d = decompose(set, build_partition(part_spec, set));
    Json json = to_json(d, part_inline);
    json["block_growth"] = to_json(verify_block_growth(d, part_tail));
    emit(g, "partition", ".json", dump(json));
  });

  // ---- select
  auto* select_cmd = app.add_subcommand("select", "random selection E' of a set");
  std::string sel_set;
  ScheduleArgs sel_schedule;
  bool sel_show_schedule = false;
  select_cmd->add_option("--set", sel_set, "set file")->required();
  sel_schedule.attach(select_cmd);
  select_cmd->add_flag("--show-schedule", sel_show_schedule, "include the density schedule");
  select_cmd->callback([&] {
    const IntegerSet set = load_set(sel_set);
    const DensitySchedule schedule = sel_schedule.build(set);
    const SelectionTrial trial = select(schedule.source(), schedule, g.seed_or_default());
    Json json = to_json(trial);
    if (sel_show_schedule) json["schedule"] = to_json(schedule);
    emit(g, "selection", ".json", dump(json));
  });

  // ---- independence
  auto* independence = app.add_subcommand("independence", "decide s-independence");
  std::string ind_set;
  std::string ind_elements;
  unsigned ind_s = 2;
  independence->add_option("--set", ind_set, "set file");
  independence->add_option("--elements", ind_elements, "inline elements, comma-separated");
  independence->add_option("--s", ind_s, "order s")->check(CLI::Range(1u, 8u));
  independence->callback([&] {
    if (ind_set.empty() == ind_elements.empty()) throw ParseError("give --set or --elements");
    const IntegerSet set = ind_set.empty() ? IntegerSet::from_values(parse_bigints(ind_elements))
                                           : load_set(ind_set);
    const IndependenceReport report = is_s_independent(set, ind_s);
    emit(g, "independence", ".json", dump(to_json(report)));
    if (!report.independent) exit_code = kFalsified;
  });

  // ---- relations
  auto* relations = app.add_subcommand("relations", "dump the relation set Z_s");
  unsigned rel_s = 2;
  unsigned rel_s_max = 4;
  relations->add_option("--s", rel_s, "order s")->required();
  relations->add_option("--s-max", rel_s_max, "refuse s above this");
  relations->callback([&] {
    const RelationSet set = enumerate_relations(rel_s, RelationOptions{rel_s_max});
    emit(g, "relations", ".json", dump(to_json(set)));
  });

  // ---- weyl
  auto* weyl = app.add_subcommand("weyl", "Weyl means f_k(t)");
  std::string weyl_set;
  std::size_t weyl_k = 0;
  std::vector<std::string> weyl_points;
  bool weyl_csv = false;
  weyl->add_option("--set", weyl_set, "set file")->required();
  weyl->add_option("--k", weyl_k, "number of terms (0 = all)");
  weyl->add_option("--point", weyl_points, "a/q or turns, repeatable")->required();
  weyl->add_flag("--csv", weyl_csv, "CSV instead of JSON");
  weyl->callback([&] {
    const IntegerSet set = load_set(weyl_set);
    std::vector<CirclePoint> points;
    for (const auto& p : weyl_points) points.push_back(parse_point(p));
    const WeylReport report = weyl_means(set, weyl_k == 0 ? set.size() : weyl_k, points, g.threads);
    if (weyl_csv) {
      emit(g, "weyl", ".csv", to_csv(report));
    } else {
      emit(g, "weyl", ".json", dump(to_json(report)));
    }
  });

  // ---- psi
  auto* psi_cmd = app.add_subcommand("psi", "psi(k) for one random selection");
  std::string psi_set;
  ScheduleArgs psi_schedule;
  std::string psi_ks;
  std::uint64_t psi_max_grid = std::uint64_t{1} << 24;
  bool psi_csv = false;
  psi_cmd->add_option("--set", psi_set, "set file")->required();
  psi_schedule.attach(psi_cmd);
  psi_cmd->add_option("--k", psi_ks, "comma-separated k values (default: K/4 and K)");
  psi_cmd->add_option("--max-grid", psi_max_grid, "grid cap");
  psi_cmd->add_flag("--csv", psi_csv, "CSV instead of JSON");
  psi_cmd->callback([&] {
    const IntegerSet set = load_set(psi_set);
    const DensitySchedule schedule = psi_schedule.build(set);
    const IntegerSet& source = schedule.source();
    const SelectionTrial trial = select(source, schedule, g.seed_or_default());
    std::vector<std::size_t> ks;
    for (const auto k : parse_u64s(psi_ks)) ks.push_back(static_cast<std::size_t>(k));
    if (ks.empty()) ks = {(source.size() + 3) / 4, source.size()};
    PsiOptions options;
    options.grid.max_grid = psi_max_grid;
    const PsiSeries series = psi_series(source, trial, schedule, ks, options);
    if (psi_csv) {
      emit(g, "psi", ".csv", to_csv(series));
    } else {
      Json json = to_json(series);
      json["seed"] = trial.seed;
      json["selected_count"] = trial.indices.size();
      emit(g, "psi", ".json", dump(json));
    }
  });

  // ---- montecarlo
  auto* montecarlo = app.add_subcommand("montecarlo", "Monte Carlo validation of the bounds");
  std::string mc_kind = "dependence";
  std::string mc_set;
  std::uint64_t mc_range = 0;
  std::uint64_t mc_ell = 0;
  unsigned mc_s = 2;
  std::uint64_t mc_trials = 1000;
  std::size_t mc_n = 100;
  std::string mc_distribution = "rademacher";
  double mc_delta = 0.5;
  double mc_amplitude = 1.0;
  std::string mc_a = "10,20,30";
  bool mc_csv = false;
  montecarlo->add_option("--kind", mc_kind, "dependence | bernstein")
      ->check(CLI::IsMember({"dependence", "bernstein"}));
  montecarlo->add_option("--set", mc_set, "dependence: set file");
  montecarlo->add_option("--range", mc_range, "dependence: use {1..N}");
  montecarlo->add_option("--ell", mc_ell, "dependence: expected selection size");
  montecarlo->add_option("--s", mc_s, "dependence: order s")->check(CLI::Range(2u, 8u));
  montecarlo->add_option("--trials", mc_trials, "number of trials");
  montecarlo->add_option("--n", mc_n, "bernstein: number of variables");
  montecarlo->add_option("--distribution", mc_distribution,
                         "rademacher | centered_selector | uniform | unit_phase");
  montecarlo->add_option("--delta", mc_delta, "centered_selector mean");
  montecarlo->add_option("--amplitude", mc_amplitude, "scale of each variable, at most 1");
  montecarlo->add_option("--a", mc_a, "bernstein: comma-separated thresholds");
  montecarlo->add_flag("--csv", mc_csv, "bernstein: CSV instead of JSON");
  montecarlo->callback([&] {
    if (mc_kind == "dependence") {
      IntegerSet set;
      if (!mc_set.empty()) {
        set = load_set(mc_set);
      } else if (mc_range > 0) {
        std::vector<BigInt> values;
        for (std::uint64_t n = 1; n <= mc_range; ++n) values.emplace_back(n);
        set = IntegerSet::from_sorted(std::move(values), "range[1," + std::to_string(mc_range) + "]");
      } else {
        throw ParseError("dependence needs --set or --range");
      }
      const DependenceEstimate e =
          monte_carlo_dependence(set, mc_ell, mc_s, mc_trials, g.seed_or_default(), g.threads);
      emit(g, "montecarlo", ".json", dump(to_json(e)));
      return;
    }
    std::vector<double> a_values;
    for (const auto& part : split(mc_a)) {
      try {
        a_values.push_back(std::stod(part));
      } catch (const std::logic_error&) {
        throw ParseError("bad threshold " + part);
      }
    }
    BernsteinSpec spec;
    spec.kind = bernstein_distribution_from_string(mc_distribution);
    spec.delta = mc_delta;
    spec.amplitude = mc_amplitude;
    const BernsteinReport report =
        monte_carlo_bernstein(mc_n, spec, a_values, mc_trials, g.seed_or_default(), g.threads);
    if (mc_csv) {
      emit(g, "bernstein", ".csv", to_csv(report));
    } else {
      emit(g, "bernstein", ".json", dump(to_json(report)));
    }
    for (const auto& cell : report.cells) {
      if (!cell.within_bound) exit_code = kFalsified;
    }
  });

  // ---- pipeline
  auto* pipeline = app.add_subcommand("pipeline", "run an experiment pipeline and persist its record");
  std::string pipe_name;
  std::optional<std::uint64_t> pipe_trials;
  bool pipe_print_config = false;
  bool pipe_print_record = false;
  pipeline->add_option("--pipeline", pipe_name, "main_theorem | theorem_4_8 (without --config)");
  pipeline->add_option("--trials", pipe_trials, "override the number of seeds");
  pipeline->add_flag("--print-config", pipe_print_config, "print the effective config and exit");
  pipeline->add_flag("--print-record", pipe_print_record, "print the JSON record to stdout");
  pipeline->callback([&] {
    ExperimentConfig config;
    if (!g.config.empty()) {
      config = config_from_json(parse_json(read_file(g.config)));
    }
    if (!pipe_name.empty()) {
      if (pipe_name != "main_theorem" && pipe_name != "theorem_4_8") {
        throw ParseError("unknown pipeline '" + pipe_name + "'");
      }
      config.pipeline = pipe_name;
    }
    if (g.seed) config.seed = *g.seed;
    if (g.threads != 0) config.threads = g.threads;
    if (pipe_trials) config.trials = *pipe_trials;
    if (!g.out.empty()) config.output_dir = g.out;
    if (pipe_print_config) {
      std::cout << dump(to_json(config));
      return;
    }
    PipelineResult result;
    try {
      result = run_pipeline(config);
    } catch (const DetailedPreconditionError& e) {
      std::cerr << dump(e.details());
      throw;
    }
    const auto path = write_new_file(output_directory(config.output_dir),
                                     config.pipeline + "-" + config_hash(config), ".json",
                                     dump(result.record));
    if (pipe_print_record) {
      std::cout << dump(result.record);
    } else {
      std::cout << summarize(result.record);
    }
    std::cerr << "record: " << path.string() << "\n";
    if (result.falsified) exit_code = kFalsified;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }
  if (!g.config.empty() && !pipeline->parsed()) {
    std::cerr << "error: --config is read by the pipeline subcommand only\n";
    return kUsage;
  }
  return exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const lacunary::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const lacunary::PreconditionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kPrecondition;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  }
}
