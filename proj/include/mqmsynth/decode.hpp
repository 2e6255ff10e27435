#ifndef MQMSYNTH_DECODE_HPP
#define MQMSYNTH_DECODE_HPP

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "mqmsynth/core.hpp"

namespace mqmsynth::decode {

/// Next-token scoring contract shared by Generators and Annotators.
///
/// A distribution has vocabulary().size() + 1 entries; the last one is
/// end-of-sentence. Values lie in [0, 1] and sum to 1. Implementations must
/// be deterministic and safe to call concurrently once constructed.
class ScoringModel {
 public:
  virtual ~ScoringModel() = default;

  virtual const std::vector<std::string>& vocabulary() const = 0;
  virtual std::optional<int> token_id(std::string_view token) const = 0;
  virtual Eigen::VectorXd next_distribution(std::span<const std::string> src,
                                            std::span<const std::string> prefix) const = 0;

  int eos_id() const { return static_cast<int>(vocabulary().size()); }
};

/// Log-probability floor for zero-probability and out-of-vocabulary tokens.
inline constexpr double kProbFloor = 1e-9;

enum class TokenSource { kFree, kForced };

struct Hypothesis {
  Tokens tokens;
  double log_prob = 0.0;
  int ref_cursor = 0;
  std::vector<TokenSource> sources;
};

struct DecodeResult {
  Tokens tokens;
  double log_prob = 0.0;
  std::vector<TokenSource> sources;
  /// No hypothesis reached end-of-sentence within max_len steps; the best
  /// unfinished hypothesis is returned instead.
  bool truncated = false;
};

struct BeamOptions {
  int beam_size = 4;
  /// Decoding steps, end-of-sentence included.
  int max_len = 64;
  bool length_normalize = false;
};

DecodeResult beam_search(const ScoringModel& model, std::span<const std::string> src,
                         const BeamOptions& options);

/// Beam search that emits ref[cursor] as the only expansion of a
/// hypothesis whenever the model gives it probability strictly above
/// `tau`. After the reference is consumed, end-of-sentence plays the role
/// of the next reference token.
DecodeResult constrained_beam_search(const ScoringModel& model, std::span<const std::string> src,
                                     std::span<const std::string> ref, double tau,
                                     const BeamOptions& options);

struct ForcedProbs {
  std::vector<double> probs;
  std::vector<bool> oov;
  int oov_count = 0;
};

/// p_i = P(target[i] | src, target[0..i)). Out-of-vocabulary tokens get
/// kProbFloor and are flagged.
ForcedProbs forced_decode_probs(const ScoringModel& model, std::span<const std::string> src,
                                std::span<const std::string> target);

}  // namespace mqmsynth::decode

#endif  // MQMSYNTH_DECODE_HPP
