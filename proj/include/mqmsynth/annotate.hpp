#ifndef MQMSYNTH_ANNOTATE_HPP
#define MQMSYNTH_ANNOTATE_HPP

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mqmsynth/core.hpp"
#include "mqmsynth/spce.hpp"

namespace mqmsynth::annotate {

/// Severity cut-points on annotator probability:
///   p < critical -> CRITICAL, p < major -> MAJOR, p < minor -> MINOR, else OK.
struct Thresholds {
  double critical = 0.1;
  double major = 0.3;
  double minor = 0.5;

  /// Throws InvalidInput unless 0 <= critical < major < minor <= 1.
  void check() const;
  friend bool operator==(const Thresholds&, const Thresholds&) = default;
};

/// Three lines: critical, major, minor.
Thresholds read_thresholds(std::istream& in);
Thresholds read_thresholds_file(const std::string& path);
void write_thresholds(std::ostream& out, const Thresholds& th);
void write_thresholds_file(const std::string& path, const Thresholds& th);

Severity assign_severity(double p, const Thresholds& th);

enum class LabelSource { kMatchedOk, kRejudged };

struct AnnotationResult {
  std::vector<Severity> severities;
  std::vector<double> probs;
  std::vector<LabelSource> sources;
};

/// Matched tokens stay OK. Each BAD token is graded by its probability, so
/// a BAD token with p >= minor threshold turns OK.
AnnotationResult rejudge(std::span<const WordLabel> coarse, std::span<const double> probs,
                         const Thresholds& th);

struct ValidationItem {
  std::vector<double> probs;
  WordLabels coarse;
  std::vector<ErrorSpan> gold;
  /// When present, rejudged tokens are aggregated with SPCE; otherwise
  /// maximal runs become spans.
  std::optional<spce::DepTree> tree;
};

/// rejudge -> span aggregation for one item.
std::vector<ErrorSpan> predict_spans(const ValidationItem& item, const Thresholds& th);

/// Severity-weighted span F1 of the full prediction path on a validation set.
double objective(std::span<const ValidationItem> validation, const Thresholds& th);

/// Grid values step, 2*step, ... strictly below 1.
std::vector<double> threshold_grid(double step);

struct CalibrationResult {
  Thresholds thresholds;
  double objective = 0.0;
  int rounds = 0;
};

/// Coordinate-wise greedy search on the grid: optimize critical, then
/// major, then minor, and repeat until no coordinate moves. Within a
/// coordinate the smallest value among equal objectives wins.
CalibrationResult calibrate_thresholds(std::span<const ValidationItem> validation, double grid_step);

}  // namespace mqmsynth::annotate

#endif  // MQMSYNTH_ANNOTATE_HPP
