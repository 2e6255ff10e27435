#include "mqmsynth/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mqmsynth/rng.hpp"

namespace mqmsynth::synthetic {

decode::ParallelCorpus make_corpus(std::size_t pairs, std::uint64_t seed, const LanguageSpec& spec) {
  if (spec.source_vocab < 2 || spec.min_len < 1 || spec.max_len < spec.min_len)
    throw InvalidInput("make_corpus: invalid language spec");
  Rng lexicon_rng = Rng::stream(seed, "lexicon");
  Rng sentence_rng = Rng::stream(seed, "sentences");

  const int v = spec.source_vocab;
  std::vector<double> cdf(static_cast<std::size_t>(v));
  double total = 0.0;
  for (int i = 0; i < v; ++i) cdf[i] = total += 1.0 / std::pow(i + 1.0, spec.zipf);
  for (double& c : cdf) c /= total;

  std::vector<bool> reorders(static_cast<std::size_t>(v));
  std::vector<bool> has_synonym(static_cast<std::size_t>(v));
  for (int i = 0; i < v; ++i) {
    reorders[i] = lexicon_rng.bernoulli(spec.reorder_fraction);
    has_synonym[i] = lexicon_rng.bernoulli(0.5);
  }

  decode::ParallelCorpus corpus;
  corpus.reserve(pairs);
  for (std::size_t k = 0; k < pairs; ++k) {
    const int len = spec.min_len + static_cast<int>(sentence_rng.below(static_cast<std::uint64_t>(spec.max_len - spec.min_len + 1)));
    std::vector<int> words;
    for (int i = 0; i < len; ++i) {
      const double u = sentence_rng.uniform();
      words.push_back(static_cast<int>(std::lower_bound(cdf.begin(), cdf.end(), u) - cdf.begin()));
      words.back() = std::min(words.back(), v - 1);
    }
    decode::ParallelPair pair;
    for (int w : words) pair.src.push_back("s" + std::to_string(w));
    std::vector<std::string> target;
    for (int w : words) {
      const bool alt = has_synonym[w] && sentence_rng.bernoulli(spec.synonym_rate);
      target.push_back((alt ? "u" : "t") + std::to_string(w));
    }
    for (std::size_t i = 0; i + 1 < words.size(); ++i)
      if (reorders[words[i]]) {
        std::swap(target[i], target[i + 1]);
        ++i;
      }
    pair.tgt = std::move(target);
    corpus.push_back(std::move(pair));
  }
  return corpus;
}

}  // namespace mqmsynth::synthetic
