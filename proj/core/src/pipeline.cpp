#include "lacunary/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "lacunary/parallel.hpp"
#include "lacunary/relations.hpp"
#include "lacunary/rng.hpp"

namespace lacunary {

namespace {

struct Context {
  IntegerSet source;
  GrowthReport growth;
  BlockDecomposition decomposition;
  IntegerSet covered;
  std::vector<std::uint64_t> ell;
  DensitySchedule schedule;
};

Context prepare(const ExperimentConfig& config, bool require_regular) {
  IntegerSet source = build_source(config.source);
  const GrowthReport growth = classify_growth(source);
  if (!growth.is_polynomial || (require_regular && !growth.is_regular)) {
    throw DetailedPreconditionError(
        std::string("source fails the ") + (require_regular ? "regular " : "") +
            "polynomial growth classification",
        to_json(growth));
  }
  const Partition partition = build_partition(config.partition, source);
  BlockDecomposition decomposition = decompose(source, partition);
  std::vector<std::uint64_t> ell = build_ell(config.schedule, decomposition);
  DensitySchedule schedule = blockwise_schedule(decomposition, ell);
  IntegerSet covered = schedule.source();
  return Context{std::move(source), growth,         std::move(decomposition),
                 std::move(covered), std::move(ell), std::move(schedule)};
}

// Per-trial, per-block outcome of the selection.
struct TrialOutcome {
  std::vector<std::uint32_t> counts;
  // dependent[b * s_count + i] for s = config.s[i]
  std::vector<std::uint8_t> dependent;
};

std::vector<TrialOutcome> run_block_trials(const ExperimentConfig& config, const Context& ctx) {
  const std::size_t blocks = ctx.schedule.blocks().size();
  const std::size_t s_count = config.s.size();
  std::vector<TrialOutcome> outcomes(config.trials);
  parallel_for(config.trials, config.threads, [&](std::size_t t) {
    const SelectionTrial trial = select(ctx.covered, ctx.schedule, derive_seed(config.seed, t));
    TrialOutcome& out = outcomes[t];
    out.counts.assign(trial.block_counts.begin(), trial.block_counts.end());
    out.dependent.assign(blocks * s_count, 0);
    std::size_t pos = 0;
    for (std::size_t b = 0; b < blocks; ++b) {
      const std::size_t begin = pos;
      while (pos < trial.indices.size() && trial.indices[pos] < ctx.schedule.blocks()[b].end) ++pos;
      if (pos - begin < 3) continue;
      const std::span<const std::size_t> idx(trial.indices.data() + begin, pos - begin);
      const IntegerSet block_set = ctx.covered.subset(idx);
      for (std::size_t i = 0; i < s_count; ++i) {
        out.dependent[b * s_count + i] = is_s_independent(block_set, config.s[i]).independent ? 0 : 1;
      }
    }
  });
  return outcomes;
}

struct BlockSummary {
  Json blocks = Json::array();
  Json tail = Json::array();
  bool bound_consistent = true;
  bool lln_consistent = true;
  std::vector<double> tail_min_independent;  // per s
};

BlockSummary summarize_blocks(const ExperimentConfig& config, const Context& ctx,
                              const std::vector<TrialOutcome>& outcomes) {
  BlockSummary summary;
  const std::size_t s_count = config.s.size();
  const double trials = static_cast<double>(config.trials);
  const auto& blocks = ctx.schedule.blocks();
  std::vector<std::uint64_t> all_tail_independent(s_count, 0);
  for (const TrialOutcome& o : outcomes) {
    for (std::size_t i = 0; i < s_count; ++i) {
      bool ok = true;
      for (std::size_t b = 0; b < blocks.size(); ++b) {
        if (blocks[b].k >= config.tail_start && o.dependent[b * s_count + i]) ok = false;
      }
      all_tail_independent[i] += ok ? 1 : 0;
    }
  }
  summary.tail_min_independent.assign(s_count, 1.0);
  std::vector<std::size_t> tail_blocks(s_count, 0);

  for (std::size_t b = 0; b < blocks.size(); ++b) {
    const ScheduleBlock& sb = blocks[b];
    double sum = 0;
    for (const TrialOutcome& o : outcomes) sum += o.counts[b];
    const double mean = sum / trials;
    const double expected = static_cast<double>(sb.ell);
    const double variance =
        sb.size == 0 ? 0.0 : expected * (1.0 - expected / static_cast<double>(sb.size));
    const double se = std::sqrt(variance / trials);
    const bool lln_ok = se == 0.0 ? mean == expected : std::fabs(mean - expected) <= 3.0 * se;
    summary.lln_consistent = summary.lln_consistent && lln_ok;

    Json independence = Json::array();
    for (std::size_t i = 0; i < s_count; ++i) {
      std::uint64_t dependent = 0;
      for (const TrialOutcome& o : outcomes) dependent += o.dependent[b * s_count + i];
      const Interval interval = wilson_interval(dependent, config.trials, config.confidence);
      const double frequency = static_cast<double>(dependent) / trials;
      const double bound = sb.ell <= sb.size && sb.size > 0
                               ? dependence_probability_bound(config.s[i], sb.ell, sb.size)
                               : 0.0;
      const bool consistent = frequency <= std::min(1.0, bound) + 3.0 * interval.half_width();
      summary.bound_consistent = summary.bound_consistent && consistent;
      if (sb.k >= config.tail_start) {
        summary.tail_min_independent[i] = std::min(summary.tail_min_independent[i], 1.0 - frequency);
        ++tail_blocks[i];
      }
      independence.push_back(Json{{"s", config.s[i]},
                                  {"dependent", dependent},
                                  {"dependent_frequency", frequency},
                                  {"independent_frequency", 1.0 - frequency},
                                  {"interval", to_json(interval)},
                                  {"bound", bound},
                                  {"consistent_with_bound", consistent}});
    }
    summary.blocks.push_back(Json{
        {"k", sb.k},
        {"size", sb.size},
        {"interval_size", to_decimal(ctx.decomposition.blocks[b].interval_size)},
        {"ell", sb.ell},
        {"delta", sb.delta},
        {"selected_count",
         {{"mean", mean}, {"expected", expected}, {"standard_error", se}, {"within_3se", lln_ok}}},
        {"independence", std::move(independence)}});
  }
  for (std::size_t i = 0; i < s_count; ++i) {
    const Interval interval =
        wilson_interval(all_tail_independent[i], config.trials, config.confidence);
    summary.tail.push_back(Json{
        {"s", config.s[i]},
        {"tail_start", config.tail_start},
        {"tail_blocks", tail_blocks[i]},
        {"min_block_independent_frequency", summary.tail_min_independent[i]},
        {"all_tail_blocks_independent_frequency",
         static_cast<double>(all_tail_independent[i]) / trials},
        {"all_tail_blocks_independent_interval", to_json(interval)}});
  }
  return summary;
}

Json base_record(const ExperimentConfig& config, const std::string& started) {
  return Json{{"schema", kConfigSchema},
              {"kind", "experiment_record"},
              {"pipeline", config.pipeline},
              {"config", to_json(config)},
              {"config_hash", config_hash(config)},
              {"tool_version", version()},
              {"timestamps", {{"started_at", started}}}};
}

Json source_json(const Context& ctx) {
  const IntegerSet& e = ctx.source;
  return Json{{"label", e.label()},
              {"size", e.size()},
              {"max_abs", e.empty() ? Json(nullptr) : Json(to_decimal(e.max_abs()))},
              {"dropped_duplicates", e.dropped_duplicates()}};
}

void add_verdict(Json& verdicts, bool& falsified, const std::string& name, double observed,
                 double threshold, bool pass, const std::string& rule) {
  verdicts[name] = Json{{"observed", observed}, {"threshold", threshold}, {"pass", pass},
                        {"rule", rule}};
  falsified = falsified || !pass;
}

void add_block_verdicts(const ExperimentConfig& config, const BlockSummary& blocks, Json& verdicts,
                        bool& falsified) {
  for (std::size_t i = 0; i < config.s.size(); ++i) {
    const double observed = blocks.tail_min_independent[i];
    add_verdict(verdicts, falsified, "tail_independence_s" + std::to_string(config.s[i]), observed,
                config.independence_threshold, observed >= config.independence_threshold,
                "every block k >= tail_start is s-independent in at least threshold of the seeds");
  }
  add_verdict(verdicts, falsified, "dependence_bound", blocks.bound_consistent ? 1.0 : 0.0, 1.0,
              blocks.bound_consistent,
              "per-block dependence frequency <= min(1, C(s) ell^2s / |E_k|) + 3 half-widths");
}

}  // namespace

PipelineResult pipeline_theorem_4_8(const ExperimentConfig& config) {
  const std::string started = utc_timestamp();
  const Context ctx = prepare(config, false);
  const auto outcomes = run_block_trials(config, ctx);
  const BlockSummary blocks = summarize_blocks(config, ctx, outcomes);

  PipelineResult result;
  Json& record = result.record;
  record = base_record(config, started);
  record["stages"] = Json{
      {"source", source_json(ctx)},
      {"growth", to_json(ctx.growth)},
      {"decomposition", to_json(ctx.decomposition)},
      {"block_growth", to_json(verify_block_growth(ctx.decomposition, config.tail_start))},
      {"blocks", blocks.blocks},
      {"tail", blocks.tail},
      {"block_counts_within_3se", blocks.lln_consistent}};
  Json verdicts = Json::object();
  add_block_verdicts(config, blocks, verdicts, result.falsified);
  record["verdicts"] = std::move(verdicts);
  record["timestamps"]["finished_at"] = utc_timestamp();
  return result;
}

PipelineResult pipeline_main_theorem(const ExperimentConfig& config) {
  const std::string started = utc_timestamp();
  const bool case_one = config.partition.kind == "dyadic";
  if (config.source.kind != "primes" && config.source.kind != "polynomial") {
    throw PreconditionError("main theorem pipeline: source must be primes or a polynomial");
  }
  const Context ctx = prepare(config, case_one);
  const std::size_t total = ctx.covered.size();
  if (total == 0) {
    throw PreconditionError("main theorem pipeline: no source element lies in the partition range");
  }

  // Schedule validity: sigma_k >= ell_1 + ... + ell_{j-1} against log p_j.
  Json validity = Json::array();
  {
    const auto& cuts = ctx.decomposition.partition.cut_points();
    long double cumulative = 0;
    for (std::size_t b = 0; b < ctx.ell.size(); ++b) {
      const std::size_t k = ctx.decomposition.blocks[b].k;
      Json entry{{"k", k},
                 {"ell", ctx.ell[b]},
                 {"cumulative_ell_before", static_cast<double>(cumulative)},
                 {"cumulative_over_log_cut", nullptr},
                 {"previous_ell_over_log_gap", nullptr},
                 {"log_ell_over_log_interval", nullptr},
                 {"density_nonincreasing",
                  b == 0 || ctx.schedule.blocks()[b].delta <= ctx.schedule.blocks()[b - 1].delta}};
      if (k >= 1 && cuts[b] > 1) {
        const long double log_cut = log_abs(cuts[b]);
        entry["cumulative_over_log_cut"] = static_cast<double>(cumulative / log_cut);
        const long double gap = log_cut - (cuts[b - 1] > 1 ? log_abs(cuts[b - 1]) : 0.0L);
        entry["previous_ell_over_log_gap"] = static_cast<double>(ctx.ell[b - 1] / gap);
      }
      const BigInt& interval = ctx.decomposition.blocks[b].interval_size;
      if (ctx.ell[b] > 1 && interval > 1) {
        entry["log_ell_over_log_interval"] =
            static_cast<double>(std::log(static_cast<long double>(ctx.ell[b])) / log_abs(interval));
      }
      if (k >= 1) cumulative += ctx.ell[b];
      validity.push_back(std::move(entry));
    }
  }

  const auto outcomes = run_block_trials(config, ctx);
  const BlockSummary blocks = summarize_blocks(config, ctx, outcomes);

  // psi over seeds at K/16, K/8, K/4, K/2, K.
  std::vector<std::size_t> ks;
  for (const std::size_t d : {16, 8, 4, 2, 1}) {
    const std::size_t k = (total + d - 1) / d;
    if (ks.empty() || ks.back() != k) ks.push_back(k);
  }
  const std::size_t k_quarter = (total + 3) / 4;
  PsiOptions psi_options;
  psi_options.grid.max_grid = config.max_grid;
  std::vector<std::vector<std::optional<PsiValue>>> psi_values(config.trials);
  parallel_for(config.trials, config.threads, [&](std::size_t t) {
    const SelectionTrial trial = select(ctx.covered, ctx.schedule, derive_seed(config.seed, t));
    for (const std::size_t k : ks) {
      auto& slot = psi_values[t].emplace_back();
      try {
        slot.emplace(psi(ctx.covered, trial, ctx.schedule, k, psi_options));
      } catch (const PreconditionError&) {
        slot.reset();
      }
    }
  });
  Json psi_table = Json::array();
  for (std::size_t i = 0; i < ks.size(); ++i) {
    double sum = 0;
    std::size_t defined = 0;
    bool capped = false;
    std::optional<double> a_over_sigma;
    for (const auto& row : psi_values) {
      if (!row[i]) continue;
      sum += row[i]->psi;
      ++defined;
      capped = capped || row[i]->capped;
      a_over_sigma = row[i]->a_over_sigma;
    }
    psi_table.push_back(Json{{"k", ks[i]},
                             {"defined_seeds", defined},
                             {"mean_psi", defined ? Json(sum / defined) : Json(nullptr)},
                             {"a_over_sigma", a_over_sigma ? Json(*a_over_sigma) : Json(nullptr)},
                             {"sigma", ctx.schedule.sigma(ks[i])},
                             {"grid_capped", capped}});
  }
  const std::size_t i_quarter = static_cast<std::size_t>(
      std::find(ks.begin(), ks.end(), k_quarter) - ks.begin());
  std::uint64_t decays = 0;
  Json per_seed = Json::array();
  for (std::size_t t = 0; t < psi_values.size(); ++t) {
    const auto& row = psi_values[t];
    const bool decay = row.back() && row[i_quarter] && row.back()->psi < row[i_quarter]->psi;
    decays += decay ? 1 : 0;
    per_seed.push_back(Json{
        {"trial", t},
        {"psi_quarter", row[i_quarter] ? Json(row[i_quarter]->psi) : Json(nullptr)},
        {"psi_final", row.back() ? Json(row.back()->psi) : Json(nullptr)},
        {"certified_final", row.back() ? to_json(*row.back())["certified_bound"] : Json(nullptr)},
        {"decay", decay}});
  }
  const double decay_frequency = static_cast<double>(decays) / static_cast<double>(config.trials);

  // Weyl scan of the first selected set.
  const SelectionTrial first = select(ctx.covered, ctx.schedule, derive_seed(config.seed, 0));
  Json scan = nullptr;
  if (!first.selected.empty()) {
    std::vector<std::size_t> scan_ks;
    for (std::size_t k = 1; k < first.selected.size(); k *= 2) scan_ks.push_back(k);
    scan_ks.push_back(first.selected.size());
    ScanOptions scan_options = config.scan;
    scan_options.threads = config.threads;
    scan = to_json(equidistribution_scan(first.selected, scan_ks, scan_options));
  }

  const std::size_t matrix_rows = std::min<std::size_t>(total, 512);
  const SummingMatrixReport matrix = summing_matrix_check(ctx.schedule, matrix_rows);
  Json matrix_json = to_json(matrix);
  matrix_json.erase("rows");

  PipelineResult result;
  Json& record = result.record;
  record = base_record(config, started);
  Json stages{
      {"case", case_one ? "i" : "ii"},
      {"source", source_json(ctx)},
      {"source_truncated", ctx.decomposition.remainder.size() > 0},
      {"partition_exceeds_source",
       ctx.decomposition.partition.cut_points().back() > ctx.source.max_abs()},
      {"growth", to_json(ctx.growth)},
      {"decomposition", to_json(ctx.decomposition)},
      {"block_growth", to_json(verify_block_growth(ctx.decomposition, config.tail_start))},
      {"schedule_validity", std::move(validity)},
      {"blocks", blocks.blocks},
      {"tail", blocks.tail},
      {"block_counts_within_3se", blocks.lln_consistent},
      {"psi", {{"ks", ks}, {"k_quarter", k_quarter}, {"series", std::move(psi_table)},
               {"per_seed", std::move(per_seed)}, {"decay_frequency", decay_frequency},
               {"decay_interval",
                to_json(wilson_interval(decays, config.trials, config.confidence))}}},
      {"scan_of_first_selection", std::move(scan)},
      {"summing_matrix", std::move(matrix_json)}};
  if (!case_one) {
    stages["katznelson_li"] = to_json(katznelson_li_schedule(ctx.decomposition));
  }
  record["stages"] = std::move(stages);
  Json verdicts = Json::object();
  add_block_verdicts(config, blocks, verdicts, result.falsified);
  add_verdict(verdicts, result.falsified, "psi_decay", decay_frequency, config.psi_threshold,
              decay_frequency >= config.psi_threshold,
              "psi(K) < psi(ceil(K/4)) in at least threshold of the seeds");
  record["verdicts"] = std::move(verdicts);
  record["timestamps"]["finished_at"] = utc_timestamp();
  return result;
}

PipelineResult run_pipeline(const ExperimentConfig& config) {
  if (config.pipeline == "theorem_4_8") return pipeline_theorem_4_8(config);
  if (config.pipeline == "main_theorem") return pipeline_main_theorem(config);
  throw ParseError("unknown pipeline '" + config.pipeline + "'");
}

std::string summarize(const Json& record) {
  std::ostringstream out;
  const Json& stages = record.at("stages");
  out << "pipeline " << record.at("pipeline").get<std::string>();
  if (stages.contains("case")) out << " (case " << stages.at("case").get<std::string>() << ")";
  out << ", config " << record.at("config_hash").get<std::string>() << "\n";
  const Json& source = stages.at("source");
  out << "source " << source.at("label").get<std::string>() << ": " << source.at("size")
      << " elements\n";
  const Json& growth = stages.at("growth");
  out << "growth: epsilon " << growth.at("epsilon_hat") << ", c " << growth.at("c_hat")
      << ", polynomial " << growth.at("is_polynomial") << ", regular " << growth.at("is_regular")
      << "\n";
  for (const Json& block : stages.at("blocks")) {
    out << "  block " << block.at("k") << ": |E_k| " << block.at("size") << ", ell "
        << block.at("ell");
    for (const Json& row : block.at("independence")) {
      out << ", s=" << row.at("s") << " dependent " << row.at("dependent_frequency")
          << " (bound " << row.at("bound") << ")";
    }
    out << "\n";
  }
  if (stages.contains("psi")) {
    for (const Json& row : stages.at("psi").at("series")) {
      out << "  psi(" << row.at("k") << ") mean " << row.at("mean_psi") << ", a_k/sigma_k "
          << row.at("a_over_sigma") << "\n";
    }
  }
  for (const auto& [name, verdict] : record.at("verdicts").items()) {
    out << (verdict.at("pass").get<bool>() ? "PASS " : "FAIL ") << name << ": observed "
        << verdict.at("observed") << ", threshold " << verdict.at("threshold") << "\n";
  }
  return out.str();
}

}  // namespace lacunary
