#ifndef MQMSYNTH_METRICS_HPP
#define MQMSYNTH_METRICS_HPP

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "mqmsynth/core.hpp"
#include "mqmsynth/rng.hpp"

namespace mqmsynth::metrics {

/// Product-moment correlation; nullopt when either input has zero variance.
std::optional<double> pearson(const Eigen::Ref<const Eigen::VectorXd>& x,
                              const Eigen::Ref<const Eigen::VectorXd>& y);

/// 1-based ranks with ties sharing their average rank.
Eigen::VectorXd fractional_ranks(const Eigen::Ref<const Eigen::VectorXd>& x);

/// Pearson correlation of fractional ranks.
std::optional<double> spearman(const Eigen::Ref<const Eigen::VectorXd>& x,
                               const Eigen::Ref<const Eigen::VectorXd>& y);

struct Confusion {
  std::size_t tp = 0, tn = 0, fp = 0, fn = 0;
};

/// Counts with `positive` as the positive class.
Confusion confusion(std::span<const WordLabel> pred, std::span<const WordLabel> gold,
                    WordLabel positive = WordLabel::kBad);

/// Matthews correlation; 0 when any denominator factor is 0.
double mcc(const Confusion& c);
double mcc(std::span<const WordLabel> pred, std::span<const WordLabel> gold);

/// Harmonic mean of precision and recall; 0 when both are 0.
double f1(const Confusion& c);
double f1_binary(std::span<const WordLabel> pred, std::span<const WordLabel> gold, WordLabel positive);

using SpanList = std::vector<ErrorSpan>;

struct SpanScores {
  /// MQM-weighted mean of per-severity token F1 over severities present
  /// in either the prediction or the gold.
  double weighted_f1 = 1.0;
  /// Micro precision / recall over non-OK tokens (severity must match).
  double precision = 1.0;
  double recall = 1.0;
  /// Indexed by Severity (kOk entry unused).
  std::array<double, 4> severity_f1{};
  std::array<double, 4> severity_precision{};
  std::array<double, 4> severity_recall{};
};

/// Token-level severity comparison, one span list per sentence.
SpanScores span_weighted_f1(std::span<const SpanList> pred, std::span<const SpanList> gold);

/// Corpus BLEU-4, uniform weights, brevity penalty, no smoothing. Scaled to [0, 100].
double bleu(std::span<const Tokens> hyps, std::span<const Tokens> refs);

/// Percentage of BAD labels over all tokens.
double error_rate(std::span<const WordLabels> labels);
double error_rate(std::span<const MqmRecord> records);
/// Per-sentence error rate in [0, 1].
double sentence_error_rate(std::span<const WordLabel> labels);

struct WilliamsResult {
  double t = 0.0;
  double p = 1.0;
  int df = 0;
};

/// Williams test for the difference between dependent correlations r12 and
/// r13 that share variable 1; r23 correlates the two competitors. n >= 4.
WilliamsResult williams_test(double r12, double r13, double r23, int n);

/// Student-t CDF through the regularized incomplete beta function.
double student_t_cdf(double t, double df);

/// For each target draw, index of the unused pool entry closest to it
/// (ties to the lower index).
std::vector<std::size_t> nearest_unused(std::span<const double> pool, std::span<const double> draws);

/// Draws k target scores with replacement, then matches each to the pool
/// without replacement.
std::vector<std::size_t> downsample_match(std::span<const double> pool, std::span<const double> target,
                                          std::size_t k, Rng& rng);

/// Two-sample Kolmogorov-Smirnov statistic.
double ks_distance(std::span<const double> a, std::span<const double> b);

}  // namespace mqmsynth::metrics

#endif  // MQMSYNTH_METRICS_HPP
