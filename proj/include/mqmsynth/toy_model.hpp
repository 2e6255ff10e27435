#ifndef MQMSYNTH_TOY_MODEL_HPP
#define MQMSYNTH_TOY_MODEL_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "mqmsynth/decode.hpp"

namespace mqmsynth::decode {

struct ParallelPair {
  Tokens src;
  Tokens tgt;
};

using ParallelCorpus = std::vector<ParallelPair>;

/// Reads `source<TAB>target` lines of pre-tokenized text.
ParallelCorpus read_parallel_tsv(std::istream& in);
ParallelCorpus read_parallel_tsv_file(const std::string& path);
void write_parallel_tsv(std::ostream& out, const ParallelCorpus& corpus);

/// Fingerprint of one parallel pair, used to check that generation pairs
/// come from an Annotator's training data.
std::uint64_t pair_fingerprint(const ParallelPair& pair);

struct ToyTrainOptions {
  int em_iterations = 5;
  /// Weight of the lexical translation component against the bigram LM.
  double lambda = 0.7;
  /// Sharpness of the diagonal source-position prior.
  double position_sharpness = 1.5;
};

/// Word-level statistical translation model.
///
/// next-token probability = lambda * lexical + (1 - lambda) * bigram, where
/// lexical mixes IBM Model 1 tables t(e|f) over source positions with a
/// diagonal prior centred on the expected aligned position, and an extra
/// end-of-source slot emits end-of-sentence. The bigram LM is add-one
/// smoothed over the target vocabulary plus end-of-sentence.
class ToyModel final : public ScoringModel {
 public:
  static ToyModel train(const ParallelCorpus& corpus, const ToyTrainOptions& options = {});

  const std::vector<std::string>& vocabulary() const override { return target_vocab_; }
  std::optional<int> token_id(std::string_view token) const override;
  Eigen::VectorXd next_distribution(std::span<const std::string> src,
                                    std::span<const std::string> prefix) const override;

  /// t(e|f); 0 for unseen pairs or unknown words.
  double lexical_prob(std::string_view target, std::string_view source) const;
  /// Add-one bigram probability; prev = "" is sentence start, next = "" is EOS.
  double bigram_prob(std::string_view prev, std::string_view next) const;

  double lambda() const { return lambda_; }
  double length_ratio() const { return length_ratio_; }
  bool trained_on(const ParallelPair& pair) const;
  std::size_t training_pairs() const { return fingerprints_.size(); }

  void save(std::ostream& out) const;
  void save_file(const std::string& path) const;
  static ToyModel load(std::istream& in);
  static ToyModel load_file(const std::string& path);

 private:
  std::optional<int> source_id(std::string_view token) const;
  void build_indexes();

  std::vector<std::string> source_vocab_;
  std::vector<std::string> target_vocab_;
  std::unordered_map<std::string, int> source_index_;
  std::unordered_map<std::string, int> target_index_;

  // lexical_[f] = sorted (target id, t(e|f)) with t > 0.
  std::vector<std::vector<std::pair<int, double>>> lexical_;
  // bigram_[prev] = sorted (next id, count); prev == V is sentence start,
  // next == V is EOS.
  std::vector<std::vector<std::pair<int, std::uint32_t>>> bigram_;
  std::vector<std::uint32_t> bigram_totals_;

  double lambda_ = 0.7;
  double position_sharpness_ = 1.5;
  double length_ratio_ = 1.0;
  std::vector<std::uint64_t> fingerprints_;  // sorted, unique
};

}  // namespace mqmsynth::decode

#endif  // MQMSYNTH_TOY_MODEL_HPP
