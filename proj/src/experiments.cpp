#include "mqmsynth/experiments.hpp"

#include <cstdio>
#include <set>

#include "mqmsynth/metrics.hpp"

namespace mqmsynth::experiments {

namespace {

std::vector<double> sentence_rates(std::span<const MqmRecord> records) {
  std::vector<double> rates;
  rates.reserve(records.size());
  for (const MqmRecord& r : records) {
    if (!r.labeled) throw InvalidInput("downsample: unlabeled record");
    rates.push_back(metrics::sentence_error_rate(r.word_labels));
  }
  return rates;
}

std::vector<Tokens> translations(std::span<const MqmRecord> records) {
  std::vector<Tokens> out;
  for (const MqmRecord& r : records) out.push_back(r.mt);
  return out;
}

std::vector<Tokens> references(std::span<const MqmRecord> records) {
  std::vector<Tokens> out;
  for (const MqmRecord& r : records) out.push_back(*r.ref);
  return out;
}

}  // namespace

double Report::get(const std::string& key) const {
  for (const auto& [k, v] : metrics)
    if (k == key) return v;
  throw InvalidInput("report has no metric '" + key + "'");
}

std::string Report::render() const {
  std::string out = "experiment=" + name + "\nseed=" + std::to_string(seed) + "\n";
  for (const auto& [k, v] : config) out += "config." + k + "=" + v + "\n";
  char buf[64];
  for (const auto& [k, v] : metrics) {
    std::snprintf(buf, sizeof buf, "%.6f", v);
    out += k + "=" + buf + "\n";
  }
  return out;
}

std::vector<MqmRecord> label_with(const decode::ParallelCorpus& pairs, const NamedModel& generator,
                                  const NamedModel& annotator, const pipeline::StageOptions& options) {
  pipeline::Inputs inputs;
  inputs.pairs = &pairs;
  inputs.generators = {{generator.id, generator.model}};
  inputs.annotator = annotator.model;
  return pipeline::run(inputs, options);
}

Report self_annotation(const decode::ParallelCorpus& pairs, const NamedModel& m, const NamedModel& l,
                       const pipeline::StageOptions& options, std::uint64_t seed) {
  if (!m.model || !l.model) throw InvalidInput("self-annotation experiment needs two models");
  Report report;
  report.name = "self-annotation";
  report.seed = seed;
  report.config = {{"pairs", std::to_string(pairs.size())}, {"model_m", m.id}, {"model_l", l.id}};

  const std::vector<MqmRecord> mm = label_with(pairs, m, m, options);
  const std::vector<MqmRecord> ll = label_with(pairs, l, l, options);
  const std::vector<MqmRecord> ml = label_with(pairs, m, l, options);
  report.add("G=M,A=M.error_rate", metrics::error_rate(mm));
  report.add("G=L,A=L.error_rate", metrics::error_rate(ll));
  report.add("G=M,A=L.error_rate", metrics::error_rate(ml));
  report.add("G=M.bleu_vs_ref", metrics::bleu(translations(mm), references(mm)));
  report.add("G=L.bleu_vs_ref", metrics::bleu(translations(ll), references(ll)));
  return report;
}

Report diversity(const decode::ParallelCorpus& pairs, std::span<const NamedModel> generators,
                 const NamedModel& annotator, const pipeline::StageOptions& options, std::uint64_t seed) {
  if (generators.size() < 2) throw InvalidInput("diversity experiment needs at least two generators");
  Report report;
  report.name = "diversity";
  report.seed = seed;
  report.config = {{"pairs", std::to_string(pairs.size())}, {"annotator", annotator.id}};
  for (std::size_t g = 0; g < generators.size(); ++g)
    report.config.emplace_back("generator" + std::to_string(g), generators[g].id);

  std::vector<std::vector<MqmRecord>> per_generator;
  for (const NamedModel& g : generators) per_generator.push_back(label_with(pairs, g, annotator, options));

  for (std::size_t a = 0; a < generators.size(); ++a)
    for (std::size_t b = a + 1; b < generators.size(); ++b)
      report.add("bleu." + generators[a].id + "~" + generators[b].id,
                 metrics::bleu(translations(per_generator[a]), translations(per_generator[b])));

  std::set<std::pair<std::size_t, Tokens>> union_translations;
  std::vector<MqmRecord> union_records;
  for (std::size_t g = 0; g < generators.size(); ++g) {
    std::set<std::pair<std::size_t, Tokens>> distinct;
    for (std::size_t k = 0; k < per_generator[g].size(); ++k) {
      distinct.emplace(k, per_generator[g][k].mt);
      union_translations.emplace(k, per_generator[g][k].mt);
    }
    report.add(generators[g].id + ".distinct_translations", static_cast<double>(distinct.size()));
    report.add(generators[g].id + ".error_rate", metrics::error_rate(per_generator[g]));
    union_records.insert(union_records.end(), per_generator[g].begin(), per_generator[g].end());
  }
  report.add("union.distinct_translations", static_cast<double>(union_translations.size()));
  report.add("union.records", static_cast<double>(union_records.size()));
  report.add("union.error_rate", metrics::error_rate(union_records));
  return report;
}

DownsampleResult downsample(std::span<const MqmRecord> pool, std::span<const MqmRecord> target, std::size_t k,
                            std::uint64_t seed) {
  const std::vector<double> pool_rates = sentence_rates(pool);
  const std::vector<double> target_rates = sentence_rates(target);
  Rng rng = Rng::stream(seed, "downsample");

  DownsampleResult result;
  result.picked = metrics::downsample_match(pool_rates, target_rates, k, rng);
  std::vector<double> picked_rates;
  for (std::size_t i : result.picked) picked_rates.push_back(pool_rates[i]);

  Report& report = result.report;
  report.name = "downsample";
  report.seed = seed;
  report.config = {{"pool", std::to_string(pool.size())}, {"target", std::to_string(target.size())},
                   {"k", std::to_string(k)}};
  auto mean = [](const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return v.empty() ? 0.0 : s / static_cast<double>(v.size());
  };
  report.add("pool.mean_error_rate", 100.0 * mean(pool_rates));
  report.add("target.mean_error_rate", 100.0 * mean(target_rates));
  report.add("subset.mean_error_rate", 100.0 * mean(picked_rates));
  report.add("ks.pool_vs_target", metrics::ks_distance(pool_rates, target_rates));
  report.add("ks.subset_vs_target", metrics::ks_distance(picked_rates, target_rates));
  return result;
}

}  // namespace mqmsynth::experiments
