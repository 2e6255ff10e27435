#ifndef MQMSYNTH_SYNTHETIC_HPP
#define MQMSYNTH_SYNTHETIC_HPP

#include <cstdint>

#include "mqmsynth/toy_model.hpp"

namespace mqmsynth::synthetic {

/// Knobs of an artificial language pair used for desk-scale experiments.
struct LanguageSpec {
  int source_vocab = 400;
  int min_len = 4;
  int max_len = 12;
  /// Zipf exponent of source word frequencies.
  double zipf = 1.0;
  /// Probability that a word uses its secondary translation.
  double synonym_rate = 0.2;
  /// Fraction of source words that swap with the following word.
  double reorder_fraction = 0.15;
};

/// Deterministic parallel corpus: Zipfian source sentences translated word
/// by word with synonyms and local reordering.
decode::ParallelCorpus make_corpus(std::size_t pairs, std::uint64_t seed, const LanguageSpec& spec = {});

}  // namespace mqmsynth::synthetic

#endif  // MQMSYNTH_SYNTHETIC_HPP
