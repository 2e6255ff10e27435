#ifndef MQMSYNTH_CORE_HPP
#define MQMSYNTH_CORE_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mqmsynth {

using Tokens = std::vector<std::string>;

/// Thrown when an argument violates an operation's precondition.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown for malformed external input (CoNLL-U, JSONL, model files).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Thrown when a file cannot be opened, read or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// MQM severity. The enumerator order is the severity order.
enum class Severity : std::uint8_t { kOk = 0, kMinor = 1, kMajor = 2, kCritical = 3 };

/// MQM penalty weight: 0, 1, 5, 10.
constexpr int weight(Severity s) noexcept {
  switch (s) {
    case Severity::kMinor: return 1;
    case Severity::kMajor: return 5;
    case Severity::kCritical: return 10;
    case Severity::kOk: break;
  }
  return 0;
}

std::string_view to_string(Severity s) noexcept;
/// Parses "OK", "MINOR", "MAJOR", "CRITICAL".
Severity severity_from_string(std::string_view name);

enum class WordLabel : std::uint8_t { kOk = 0, kBad = 1 };

std::string_view to_string(WordLabel l) noexcept;
WordLabel word_label_from_string(std::string_view name);

using WordLabels = std::vector<WordLabel>;

/// Inclusive token range [start, end] carrying a non-OK severity.
struct ErrorSpan {
  int start = 0;
  int end = 0;
  Severity severity = Severity::kMinor;

  friend bool operator==(const ErrorSpan&, const ErrorSpan&) = default;
};

/// One synthetic or gold QE sample.
///
/// `spans`, `word_labels` and `score` are meaningful only when `labeled` is
/// set; intermediate records produced by the generation stage carry none of
/// them. The optional per-token fields are filled by individual pipeline
/// stages so that stages compose through the same file format.
struct MqmRecord {
  Tokens src;
  Tokens mt;
  std::optional<Tokens> ref;

  bool labeled = false;
  std::vector<ErrorSpan> spans;
  WordLabels word_labels;
  double score = 1.0;

  std::optional<std::vector<double>> probs;
  std::optional<WordLabels> coarse_labels;
  std::optional<std::vector<Severity>> severities;
  std::optional<std::string> provenance;
};

/// Throws InvalidInput unless the spans are well-formed, sorted and
/// pairwise disjoint for a translation of length n.
void check_spans(std::span<const ErrorSpan> spans, int n);

/// Sentence score 1 - (n_minor + 5 n_major + 10 n_critical) / n, where the
/// counts are numbers of spans, not tokens.
double mqm_score(std::span<const ErrorSpan> spans, int n);

/// BAD inside any span, OK elsewhere.
WordLabels word_labels_from_spans(std::span<const ErrorSpan> spans, int n);

/// Maximal runs of non-OK tokens; each span takes the worst severity in its run.
std::vector<ErrorSpan> spans_from_severities(std::span<const Severity> severities);

/// Per-token severities implied by a span list (OK outside spans).
std::vector<Severity> severities_from_spans(std::span<const ErrorSpan> spans, int n);

/// Fills word_labels and score from spans and marks the record labeled.
void set_spans(MqmRecord& record, std::vector<ErrorSpan> spans);

/// Throws InvalidInput describing the first violated record invariant.
void validate(const MqmRecord& record);

/// Splits on runs of ASCII whitespace.
Tokens tokenize(std::string_view text);
std::string join(std::span<const std::string> tokens);

}  // namespace mqmsynth

#endif  // MQMSYNTH_CORE_HPP
