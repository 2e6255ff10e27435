#include "mqmsynth/core.hpp"

#include <algorithm>
#include <cmath>

namespace mqmsynth {

std::string_view to_string(Severity s) noexcept {
  switch (s) {
    case Severity::kOk: return "OK";
    case Severity::kMinor: return "MINOR";
    case Severity::kMajor: return "MAJOR";
    case Severity::kCritical: return "CRITICAL";
  }
  return "OK";
}

Severity severity_from_string(std::string_view name) {
  if (name == "OK") return Severity::kOk;
  if (name == "MINOR") return Severity::kMinor;
  if (name == "MAJOR") return Severity::kMajor;
  if (name == "CRITICAL") return Severity::kCritical;
  throw ParseError("unknown severity '" + std::string(name) + "'");
}

std::string_view to_string(WordLabel l) noexcept {
  return l == WordLabel::kBad ? "BAD" : "OK";
}

WordLabel word_label_from_string(std::string_view name) {
  if (name == "OK") return WordLabel::kOk;
  if (name == "BAD") return WordLabel::kBad;
  throw ParseError("unknown word label '" + std::string(name) + "'");
}

void check_spans(std::span<const ErrorSpan> spans, int n) {
  int previous_end = -1;
  for (const ErrorSpan& s : spans) {
    if (s.severity == Severity::kOk)
      throw InvalidInput("error span with severity OK");
    if (s.start < 0 || s.start > s.end || s.end >= n)
      throw InvalidInput("span [" + std::to_string(s.start) + "," + std::to_string(s.end) +
                         "] out of range for length " + std::to_string(n));
    if (s.start <= previous_end)
      throw InvalidInput("spans overlap or are not sorted at start " + std::to_string(s.start));
    previous_end = s.end;
  }
}

double mqm_score(std::span<const ErrorSpan> spans, int n) {
  if (n <= 0) throw InvalidInput("mqm_score: translation length must be positive");
  check_spans(spans, n);
  int penalty = 0;
  for (const ErrorSpan& s : spans) penalty += weight(s.severity);
  return 1.0 - static_cast<double>(penalty) / n;
}

WordLabels word_labels_from_spans(std::span<const ErrorSpan> spans, int n) {
  if (n < 0) throw InvalidInput("word_labels_from_spans: negative length");
  check_spans(spans, n);
  WordLabels labels(static_cast<std::size_t>(n), WordLabel::kOk);
  for (const ErrorSpan& s : spans)
    std::fill(labels.begin() + s.start, labels.begin() + s.end + 1, WordLabel::kBad);
  return labels;
}

std::vector<ErrorSpan> spans_from_severities(std::span<const Severity> severities) {
  std::vector<ErrorSpan> spans;
  const int n = static_cast<int>(severities.size());
  for (int i = 0; i < n;) {
    if (severities[i] == Severity::kOk) {
      ++i;
      continue;
    }
    ErrorSpan span{i, i, severities[i]};
    while (span.end + 1 < n && severities[span.end + 1] != Severity::kOk) {
      ++span.end;
      span.severity = std::max(span.severity, severities[span.end]);
    }
    spans.push_back(span);
    i = span.end + 1;
  }
  return spans;
}

std::vector<Severity> severities_from_spans(std::span<const ErrorSpan> spans, int n) {
  check_spans(spans, n);
  std::vector<Severity> out(static_cast<std::size_t>(n), Severity::kOk);
  for (const ErrorSpan& s : spans)
    std::fill(out.begin() + s.start, out.begin() + s.end + 1, s.severity);
  return out;
}

void set_spans(MqmRecord& record, std::vector<ErrorSpan> spans) {
  const int n = static_cast<int>(record.mt.size());
  record.word_labels = word_labels_from_spans(spans, n);
  record.score = mqm_score(spans, n);
  record.spans = std::move(spans);
  record.labeled = true;
}

void validate(const MqmRecord& record) {
  const int n = static_cast<int>(record.mt.size());
  if (n == 0) throw InvalidInput("record has an empty translation");
  auto check_len = [n](std::size_t len, const char* what) {
    if (static_cast<int>(len) != n)
      throw InvalidInput(std::string(what) + " length " + std::to_string(len) +
                         " differs from translation length " + std::to_string(n));
  };
  if (record.probs) check_len(record.probs->size(), "probs");
  if (record.coarse_labels) check_len(record.coarse_labels->size(), "coarse_labels");
  if (record.severities) check_len(record.severities->size(), "severities");
  if (!record.labeled) return;

  check_len(record.word_labels.size(), "labels");
  if (record.word_labels != word_labels_from_spans(record.spans, n))
    throw InvalidInput("labels disagree with spans");
  // Scores round-trip through 6 decimal places.
  if (std::abs(record.score - mqm_score(record.spans, n)) > 5e-7)
    throw InvalidInput("score disagrees with spans");
}

Tokens tokenize(std::string_view text) {
  Tokens out;
  std::size_t i = 0;
  auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; };
  while (i < text.size()) {
    while (i < text.size() && is_space(text[i])) ++i;
    std::size_t j = i;
    while (j < text.size() && !is_space(text[j])) ++j;
    if (j > i) out.emplace_back(text.substr(i, j - i));
    i = j;
  }
  return out;
}

std::string join(std::span<const std::string> tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) out += ' ';
    out += tokens[i];
  }
  return out;
}

}  // namespace mqmsynth
