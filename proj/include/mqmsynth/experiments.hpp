#ifndef MQMSYNTH_EXPERIMENTS_HPP
#define MQMSYNTH_EXPERIMENTS_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "mqmsynth/pipeline.hpp"

namespace mqmsynth::experiments {

/// Flat metric table with the seed and configuration that produced it.
/// render() is byte-stable for identical inputs.
struct Report {
  std::string name;
  std::uint64_t seed = 0;
  std::vector<std::pair<std::string, std::string>> config;
  std::vector<std::pair<std::string, double>> metrics;

  void add(std::string key, double value) { metrics.emplace_back(std::move(key), value); }
  /// Value of a metric; throws InvalidInput when absent.
  double get(const std::string& key) const;
  std::string render() const;
};

struct NamedModel {
  std::string id;
  const decode::ScoringModel* model = nullptr;
};

/// Labels `pairs` with generator G and annotator A (no trees: spans are runs).
std::vector<MqmRecord> label_with(const decode::ParallelCorpus& pairs, const NamedModel& generator,
                                  const NamedModel& annotator, const pipeline::StageOptions& options);

/// Error rate of (M,M), (L,L) and (M,L) generator/annotator conditions.
Report self_annotation(const decode::ParallelCorpus& pairs, const NamedModel& m, const NamedModel& l,
                       const pipeline::StageOptions& options, std::uint64_t seed);

/// Inter-generator BLEU and single- vs union-corpus statistics.
Report diversity(const decode::ParallelCorpus& pairs, std::span<const NamedModel> generators,
                 const NamedModel& annotator, const pipeline::StageOptions& options, std::uint64_t seed);

struct DownsampleResult {
  std::vector<std::size_t> picked;
  Report report;
};

/// Picks k pool records whose sentence error rates mirror the target
/// records' error-rate distribution.
DownsampleResult downsample(std::span<const MqmRecord> pool, std::span<const MqmRecord> target, std::size_t k,
                            std::uint64_t seed);

}  // namespace mqmsynth::experiments

#endif  // MQMSYNTH_EXPERIMENTS_HPP
