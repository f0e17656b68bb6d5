#include "lacunary/serialize.hpp"

#include <sstream>

#include "lacunary/error.hpp"

namespace lacunary {

namespace {

template <class T>
Json optional_json(const std::optional<T>& value) {
  return value ? Json(*value) : Json(nullptr);
}

Json complex_json(std::complex<long double> z) {
  return Json{{"re", static_cast<double>(z.real())}, {"im", static_cast<double>(z.imag())}};
}

const Json& require(const Json& json, const char* key) {
  if (!json.is_object() || !json.contains(key)) {
    throw ParseError(std::string("missing field '") + key + "'");
  }
  return json.at(key);
}

std::string csv_number(double v) {
  std::ostringstream out;
  out.precision(17);
  out << v;
  return out.str();
}

}  // namespace

Json to_json(const BigInt& value) { return to_decimal(value); }

BigInt bigint_from_json(const Json& value) {
  if (value.is_string()) return parse_bigint(value.get<std::string>());
  if (value.is_number_integer()) {
    return value.is_number_unsigned() ? BigInt(value.get<std::uint64_t>())
                                      : BigInt(value.get<std::int64_t>());
  }
  throw ParseError("expected an integer or a decimal string, got " + value.dump());
}

Json to_json(const BigRational& value) { return to_string(value); }

Json to_json(const IntegerSet& set) {
  Json elements = Json::array();
  for (const BigInt& n : set.elements()) elements.push_back(to_decimal(n));
  return Json{{"label", set.label()}, {"elements", std::move(elements)}};
}

IntegerSet integer_set_from_json(const Json& json) {
  const Json& elements = require(json, "elements");
  if (!elements.is_array()) throw ParseError("'elements' must be an array");
  std::vector<BigInt> values;
  values.reserve(elements.size());
  for (const Json& e : elements) values.push_back(bigint_from_json(e));
  const std::string label = json.contains("label") ? json.at("label").get<std::string>() : "";
  return IntegerSet::from_values(std::move(values), label);
}

Json to_json(const Partition& partition) {
  Json cuts = Json::array();
  for (const BigInt& p : partition.cut_points()) cuts.push_back(to_decimal(p));
  return Json{{"kind", to_string(partition.kind())}, {"cut_points", std::move(cuts)}};
}

Partition partition_from_json(const Json& json) {
  std::vector<BigInt> cuts;
  for (const Json& c : require(json, "cut_points")) cuts.push_back(bigint_from_json(c));
  return Partition(std::move(cuts),
                   partition_kind_from_string(require(json, "kind").get<std::string>()));
}

Json to_json(const BlockDecomposition& decomposition, bool inline_elements) {
  Json blocks = Json::array();
  for (const Block& b : decomposition.blocks) {
    Json block{{"k", b.k},
               {"inner", to_decimal(b.inner)},
               {"outer", to_decimal(b.outer)},
               {"interval_size", to_decimal(b.interval_size)},
               {"count", b.count()}};
    if (inline_elements) block["elements"] = to_json(b.elements)["elements"];
    blocks.push_back(std::move(block));
  }
  return Json{{"partition", to_json(decomposition.partition)},
              {"source_label", decomposition.source.label()},
              {"source_size", decomposition.source.size()},
              {"covered", decomposition.covered_count()},
              {"remainder", decomposition.remainder.size()},
              {"blocks", std::move(blocks)}};
}

Json to_json(const GrowthReport& report) {
  return Json{{"epsilon_hat", report.epsilon_hat},
              {"c_hat", report.c_hat},
              {"is_polynomial", report.is_polynomial},
              {"is_regular", report.is_regular},
              {"fit_range", {to_decimal(report.t_min), to_decimal(report.t_max)}},
              {"eta", report.eta},
              {"samples", report.samples}};
}

Json to_json(const BlockGrowthReport& report) {
  Json entries = Json::array();
  for (const BlockGrowthEntry& e : report.entries) {
    entries.push_back(Json{{"k", e.k},
                           {"count", e.count},
                           {"interval_size", to_decimal(e.interval_size)},
                           {"ratio", optional_json(e.ratio)}});
  }
  return Json{{"entries", std::move(entries)},
              {"tail_start", report.tail_start},
              {"min_tail_ratio", optional_json(report.min_tail_ratio)},
              {"empty_tail_blocks", report.empty_tail_blocks}};
}

Json to_json(const Relation& relation) { return relation.coefficients; }

Json to_json(const RelationSet& relations) {
  Json by_length = Json::object();
  for (const auto& [m, list] : relations.by_length()) by_length[std::to_string(m)] = list.size();
  Json all = Json::array();
  for (const Relation& r : relations.canonical()) all.push_back(r.coefficients);
  return Json{{"s", relations.s()},
              {"count", relations.count()},
              {"by_length", std::move(by_length)},
              {"relations", std::move(all)}};
}

Json to_json(const IndependenceReport& report) {
  Json json{{"s", report.s}, {"independent", report.independent}, {"witness", nullptr}};
  if (report.witness) {
    Json elements = Json::array();
    for (const BigInt& q : report.witness->elements) elements.push_back(to_decimal(q));
    json["witness"] = Json{{"coefficients", report.witness->coefficients},
                           {"elements", std::move(elements)}};
  }
  return json;
}

Json to_json(const Interval& interval) {
  return Json{{"low", interval.low}, {"high", interval.high}, {"half_width", interval.half_width()}};
}

Json to_json(const DensitySchedule& schedule) {
  Json blocks = Json::array();
  for (const ScheduleBlock& b : schedule.blocks()) {
    blocks.push_back(Json{{"k", b.k}, {"ell", b.ell}, {"size", b.size}, {"delta", b.delta}});
  }
  Json exact = nullptr;
  if (schedule.has_exact() && !schedule.blockwise()) {
    exact = Json::array();
    for (std::size_t i = 0; i < schedule.size(); ++i) {
      const Fraction f = *schedule.exact_density(i);
      exact.push_back(std::to_string(f.num) + "/" + std::to_string(f.den));
    }
  }
  return Json{{"source_label", schedule.source().label()},
              {"size", schedule.size()},
              {"blocks", std::move(blocks)},
              {"delta", std::vector<double>(schedule.densities().begin(),
                                            schedule.densities().end())},
              {"delta_exact", std::move(exact)},
              {"sigma", std::vector<double>(schedule.sigma().begin(), schedule.sigma().end())},
              {"nonincreasing", schedule.nonincreasing()}};
}

Json to_json(const KatznelsonLiSchedule& schedule) {
  Json blocks = Json::array();
  for (const KatznelsonLiBlock& b : schedule.blocks) {
    blocks.push_back(Json{{"k", b.k},
                          {"ell", b.ell},
                          {"size", b.size},
                          {"delta", b.delta},
                          {"ell_over_log_next_cut", optional_json(b.ell_over_log_next_cut)},
                          {"log_ell_over_log_cut", optional_json(b.log_ell_over_log_cut)},
                          {"density_nonincreasing", b.density_nonincreasing}});
  }
  return Json{{"blocks", std::move(blocks)}};
}

Json to_json(const BourgainDiagnostics& d) {
  return Json{{"tail_start", d.tail_start},
              {"condition_a_min_ratio", optional_json(d.condition_a_min_ratio)},
              {"condition_b_min_ratio", optional_json(d.condition_b_min_ratio)},
              {"sigma_log_ratio_final", optional_json(d.sigma_log_ratio_final)},
              {"sigma_log_ratio_min_tail", optional_json(d.sigma_log_ratio_min_tail)}};
}

Json to_json(const SelectionTrial& trial, bool inline_elements) {
  Json json{{"seed", trial.seed},
            {"selected_count", trial.indices.size()},
            {"indices", trial.indices},
            {"block_counts", trial.block_counts}};
  if (inline_elements) json["selected"] = to_json(trial.selected);
  return json;
}

Json to_json(const DependenceEstimate& e) {
  return Json{{"s", e.s},
              {"ell", e.ell},
              {"set_size", e.set_size},
              {"trials", e.trials},
              {"dependent", e.dependent},
              {"frequency", e.frequency},
              {"interval", to_json(e.interval)},
              {"bound", e.bound}};
}

Json to_json(const CirclePoint& point) {
  if (point.is_rational()) {
    return Json{{"a", point.numerator()}, {"q", point.denominator()}};
  }
  return Json{{"turns", static_cast<double>(point.theta())}};
}

Json to_json(const WeylReport& report) {
  Json values = Json::array();
  for (const WeylValue& v : report.values) {
    values.push_back(Json{{"point", to_json(v.point)},
                          {"mean", complex_json(v.mean)},
                          {"modulus", v.modulus}});
  }
  return Json{{"k", report.k}, {"max_modulus", report.max_modulus}, {"values", std::move(values)}};
}

Json to_json(const GridSupNorm& norm) {
  return Json{{"required_grid", to_decimal(norm.required_grid)},
              {"grid_size", norm.grid_size},
              {"capped", norm.capped},
              {"coarse_sup", norm.coarse_sup},
              {"certified_bound", optional_json(norm.certified_bound)},
              {"argmax", norm.argmax}};
}

Json to_json(const PsiValue& v) {
  return Json{{"k", v.k},
              {"selected", v.selected},
              {"sigma", v.sigma},
              {"n_k", to_decimal(v.n_k)},
              {"psi", v.psi},
              {"certified_bound", optional_json(v.certified_bound)},
              {"grid_size", v.grid_size},
              {"capped", v.capped},
              {"a_k", v.a_k},
              {"a_over_sigma", v.a_over_sigma}};
}

Json to_json(const PsiSeries& series) {
  Json values = Json::array();
  for (const PsiValue& v : series.values) values.push_back(to_json(v));
  return Json{{"values", std::move(values)}};
}

Json to_json(const SummingMatrixReport& report) {
  Json rows = Json::array();
  for (const SummingMatrixRow& r : report.rows) {
    rows.push_back(Json{{"k", r.k},
                        {"sigma", to_string(r.sigma)},
                        {"row_sum", to_string(r.row_sum)},
                        {"variation_sum", to_string(r.variation_sum)}});
  }
  return Json{{"k_max", report.k_max},
              {"nonnegative", report.nonnegative},
              {"nonincreasing", report.nonincreasing},
              {"rows_sum_to_one", report.rows_sum_to_one},
              {"variation_sums_one", report.variation_sums_one},
              {"regular", report.regular},
              {"failure", optional_json(report.failure)},
              {"rows", std::move(rows)}};
}

Json to_json(const ScanReport& report) {
  Json rows = Json::array();
  for (const ScanRow& r : report.rows) {
    rows.push_back(Json{{"k", r.k},
                        {"exclusion_radius", r.exclusion_radius},
                        {"evaluated", r.evaluated},
                        {"excluded", r.excluded},
                        {"max_modulus", r.max_modulus},
                        {"argmax", r.argmax ? to_json(*r.argmax) : Json(nullptr)},
                        {"max_modulus_excluded", r.max_modulus_excluded}});
  }
  const ScanOptions& o = report.options;
  return Json{{"header",
               {{"denominators", o.denominators},
                {"irrational_points", o.irrational_points},
                {"exclusion_q", o.exclusion_q},
                {"exclusion_scale", o.exclusion_scale}}},
              {"rows", std::move(rows)},
              {"nonincreasing", report.nonincreasing},
              {"decay_ratio", optional_json(report.decay_ratio)}};
}

Json to_json(const BernsteinReport& report) {
  Json cells = Json::array();
  for (const BernsteinCell& c : report.cells) {
    cells.push_back(Json{{"a", c.a},
                         {"exceed", c.exceed},
                         {"frequency", c.frequency},
                         {"interval", to_json(c.interval)},
                         {"bound", c.bound},
                         {"within_bound", c.within_bound}});
  }
  return Json{{"n", report.n},
              {"distribution", to_string(report.spec.kind)},
              {"delta", report.spec.delta},
              {"amplitude", report.spec.amplitude},
              {"sigma", report.sigma},
              {"trials", report.trials},
              {"seed", report.seed},
              {"cells", std::move(cells)}};
}

Json to_json(const PowerSumsetComparison& c) {
  return Json{{"k", c.k},
              {"j", c.j},
              {"sumset_size", c.sumset_size},
              {"points", c.points},
              {"max_difference", c.max_difference},
              {"bound", c.bound},
              {"within_bound", c.within_bound}};
}

std::string dump(const Json& json) { return json.dump(2) + "\n"; }

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
}

std::string to_csv(const WeylReport& report) {
  std::string out = "point,re,im,modulus\n";
  for (const WeylValue& v : report.values) {
    out += v.point.describe() + "," + csv_number(v.mean.real()) + "," +
           csv_number(v.mean.imag()) + "," + csv_number(v.modulus) + "\n";
  }
  return out;
}

std::string to_csv(const PsiSeries& series) {
  std::string out = "k,psi,certified_bound,sigma,a_over_sigma,grid_size,capped\n";
  for (const PsiValue& v : series.values) {
    out += std::to_string(v.k) + "," + csv_number(v.psi) + "," +
           (v.certified_bound ? csv_number(*v.certified_bound) : "") + "," +
           csv_number(v.sigma) + "," + csv_number(v.a_over_sigma) + "," +
           std::to_string(v.grid_size) + "," + (v.capped ? "1" : "0") + "\n";
  }
  return out;
}

std::string to_csv(const ScanReport& report) {
  std::string out = "k,max_modulus,evaluated,excluded,exclusion_radius\n";
  for (const ScanRow& r : report.rows) {
    out += std::to_string(r.k) + "," + csv_number(r.max_modulus) + "," +
           std::to_string(r.evaluated) + "," + std::to_string(r.excluded) + "," +
           csv_number(r.exclusion_radius) + "\n";
  }
  return out;
}

std::string to_csv(const BernsteinReport& report) {
  std::string out = "a,frequency,low,high,bound\n";
  for (const BernsteinCell& c : report.cells) {
    out += csv_number(c.a) + "," + csv_number(c.frequency) + "," + csv_number(c.interval.low) +
           "," + csv_number(c.interval.high) + "," + csv_number(c.bound) + "\n";
  }
  return out;
}

}  // namespace lacunary
