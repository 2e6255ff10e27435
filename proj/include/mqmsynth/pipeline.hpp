#ifndef MQMSYNTH_PIPELINE_HPP
#define MQMSYNTH_PIPELINE_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "mqmsynth/annotate.hpp"
#include "mqmsynth/core.hpp"
#include "mqmsynth/decode.hpp"
#include "mqmsynth/spce.hpp"
#include "mqmsynth/ter.hpp"
#include "mqmsynth/toy_model.hpp"

namespace mqmsynth::pipeline {

struct Generator {
  std::string id;
  const decode::ScoringModel* model = nullptr;
};

struct StageOptions {
  double cbs_tau = 0.5;
  int beam_size = 4;
  /// Decoding steps; 0 derives 2 * max(|src|, |ref|) + 5 per sentence.
  int max_len = 0;
  bool length_normalize = false;
  ter::Options ter;
  annotate::Thresholds thresholds;
  unsigned threads = 0;
};

struct StageTimes {
  double generation = 0.0;
  double ter = 0.0;
  double rejudge = 0.0;
  double spce = 0.0;
};

struct Summary {
  std::size_t pairs = 0;
  std::size_t records = 0;
  std::size_t truncated = 0;
  std::size_t oov_tokens = 0;
  std::size_t spans = 0;
  std::size_t tokens = 0;
  std::size_t bad_tokens = 0;
  bool spce = false;
  StageTimes seconds;

  /// `key=value` lines.
  void print(std::ostream& out) const;
};

/// CBS-generates one unlabeled record per (pair, generator), ordered by
/// pair then generator, with `provenance` set to the generator id.
std::vector<MqmRecord> generate(const decode::ParallelCorpus& pairs, std::span<const Generator> generators,
                                const StageOptions& options, Summary* summary = nullptr);

/// Adds TER coarse labels against each record's reference. The optional
/// trace receives `# record <i>` headers followed by alignment lines.
void label_coarse(std::vector<MqmRecord>& records, const StageOptions& options, std::ostream* trace = nullptr);

/// Adds Annotator forced-decoding probabilities. Returns the number of
/// out-of-vocabulary tokens that received the probability floor.
std::size_t attach_probs(std::vector<MqmRecord>& records, const decode::ScoringModel& annotator,
                         const StageOptions& options);

/// Grades BAD tokens by probability; spans are the maximal non-OK runs.
void rejudge_records(std::vector<MqmRecord>& records, const StageOptions& options);

/// Replaces run spans with SPCE phrases. Trees pair with records by order;
/// a count or length mismatch throws InvalidInput naming the index.
void aggregate_records(std::vector<MqmRecord>& records, std::span<const spce::DepTree> trees,
                       std::ostream* trace = nullptr);

struct Inputs {
  const decode::ParallelCorpus* pairs = nullptr;
  std::vector<Generator> generators;
  const decode::ScoringModel* annotator = nullptr;
  /// Empty: spans are maximal runs instead of SPCE phrases.
  std::vector<spce::DepTree> trees;
};

struct Traces {
  std::ostream* ter = nullptr;
  std::ostream* spce = nullptr;
};

/// generate -> TER -> forced decoding -> rejudge -> SPCE -> score.
std::vector<MqmRecord> run(const Inputs& inputs, const StageOptions& options, Summary* summary = nullptr,
                           const Traces& traces = {});

/// Throws InvalidInput unless every pair is in the annotator's training data.
void check_supervision(const decode::ParallelCorpus& pairs, const decode::ToyModel& annotator);

}  // namespace mqmsynth::pipeline

#endif  // MQMSYNTH_PIPELINE_HPP
