#include "mqmsynth/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include <Eigen/Dense>
#include <boost/math/special_functions/beta.hpp>

namespace mqmsynth::metrics {

namespace {

void check_pair(Eigen::Index a, Eigen::Index b) {
  if (a != b) throw InvalidInput("correlation inputs differ in length");
  if (a < 2) throw InvalidInput("correlation needs at least two observations");
}

template <typename Seq>
void check_same_length(const Seq& a, const Seq& b, const char* what) {
  if (a.size() != b.size()) throw InvalidInput(std::string(what) + ": inputs differ in length");
}

double safe_ratio(double num, double den) { return den > 0.0 ? num / den : 0.0; }

double harmonic(double p, double r) { return p + r > 0.0 ? 2.0 * p * r / (p + r) : 0.0; }

}  // namespace

std::optional<double> pearson(const Eigen::Ref<const Eigen::VectorXd>& x,
                              const Eigen::Ref<const Eigen::VectorXd>& y) {
  check_pair(x.size(), y.size());
  const Eigen::VectorXd dx = x.array() - x.mean();
  const Eigen::VectorXd dy = y.array() - y.mean();
  const double sxx = dx.squaredNorm();
  const double syy = dy.squaredNorm();
  if (sxx == 0.0 || syy == 0.0) return std::nullopt;
  return std::clamp(dx.dot(dy) / std::sqrt(sxx * syy), -1.0, 1.0);
}

Eigen::VectorXd fractional_ranks(const Eigen::Ref<const Eigen::VectorXd>& x) {
  const Eigen::Index n = x.size();
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&x](Eigen::Index a, Eigen::Index b) { return x[a] < x[b]; });
  Eigen::VectorXd ranks(n);
  for (Eigen::Index i = 0; i < n;) {
    Eigen::Index j = i;
    while (j + 1 < n && x[order[j + 1]] == x[order[i]]) ++j;
    const double rank = 0.5 * static_cast<double>(i + j) + 1.0;
    for (Eigen::Index k = i; k <= j; ++k) ranks[order[k]] = rank;
    i = j + 1;
  }
  return ranks;
}

std::optional<double> spearman(const Eigen::Ref<const Eigen::VectorXd>& x,
                               const Eigen::Ref<const Eigen::VectorXd>& y) {
  check_pair(x.size(), y.size());
  return pearson(fractional_ranks(x), fractional_ranks(y));
}

Confusion confusion(std::span<const WordLabel> pred, std::span<const WordLabel> gold, WordLabel positive) {
  check_same_length(pred, gold, "confusion");
  Confusion c;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    const bool p = pred[i] == positive;
    const bool g = gold[i] == positive;
    if (p && g) ++c.tp;
    else if (p) ++c.fp;
    else if (g) ++c.fn;
    else ++c.tn;
  }
  return c;
}

double mcc(const Confusion& c) {
  const double tp = static_cast<double>(c.tp), tn = static_cast<double>(c.tn);
  const double fp = static_cast<double>(c.fp), fn = static_cast<double>(c.fn);
  const double den = (tp + fp) * (tp + fn) * (tn + fp) * (tn + fn);
  if (den == 0.0) return 0.0;
  return (tp * tn - fp * fn) / std::sqrt(den);
}

double mcc(std::span<const WordLabel> pred, std::span<const WordLabel> gold) {
  if (pred.empty()) throw InvalidInput("mcc: empty input");
  return mcc(confusion(pred, gold, WordLabel::kBad));
}

double f1(const Confusion& c) {
  const double precision = safe_ratio(static_cast<double>(c.tp), static_cast<double>(c.tp + c.fp));
  const double recall = safe_ratio(static_cast<double>(c.tp), static_cast<double>(c.tp + c.fn));
  return harmonic(precision, recall);
}

double f1_binary(std::span<const WordLabel> pred, std::span<const WordLabel> gold, WordLabel positive) {
  return f1(confusion(pred, gold, positive));
}

SpanScores span_weighted_f1(std::span<const SpanList> pred, std::span<const SpanList> gold) {
  if (pred.size() != gold.size())
    throw InvalidInput("span_weighted_f1: " + std::to_string(pred.size()) + " predicted vs " +
                       std::to_string(gold.size()) + " gold sentences");

  // Tokens outside every span are OK on both sides and never enter the
  // per-severity counts, so sentence length is not needed.
  std::array<std::size_t, 4> tp{}, n_pred{}, n_gold{};
  for (std::size_t s = 0; s < pred.size(); ++s) {
    std::map<int, Severity> gold_tokens;
    for (const ErrorSpan& span : gold[s])
      for (int i = span.start; i <= span.end; ++i) {
        gold_tokens[i] = span.severity;
        ++n_gold[static_cast<std::size_t>(span.severity)];
      }
    for (const ErrorSpan& span : pred[s])
      for (int i = span.start; i <= span.end; ++i) {
        ++n_pred[static_cast<std::size_t>(span.severity)];
        auto it = gold_tokens.find(i);
        if (it != gold_tokens.end() && it->second == span.severity) ++tp[static_cast<std::size_t>(span.severity)];
      }
  }

  SpanScores out;
  double weighted = 0.0;
  double weights = 0.0;
  std::size_t tp_all = 0, pred_all = 0, gold_all = 0;
  for (Severity s : {Severity::kMinor, Severity::kMajor, Severity::kCritical}) {
    const auto k = static_cast<std::size_t>(s);
    out.severity_precision[k] = safe_ratio(static_cast<double>(tp[k]), static_cast<double>(n_pred[k]));
    out.severity_recall[k] = safe_ratio(static_cast<double>(tp[k]), static_cast<double>(n_gold[k]));
    out.severity_f1[k] = harmonic(out.severity_precision[k], out.severity_recall[k]);
    tp_all += tp[k];
    pred_all += n_pred[k];
    gold_all += n_gold[k];
    if (n_pred[k] + n_gold[k] == 0) continue;
    weighted += weight(s) * out.severity_f1[k];
    weights += weight(s);
  }
  if (weights > 0.0) out.weighted_f1 = weighted / weights;
  if (pred_all + gold_all > 0) {
    out.precision = safe_ratio(static_cast<double>(tp_all), static_cast<double>(pred_all));
    out.recall = safe_ratio(static_cast<double>(tp_all), static_cast<double>(gold_all));
  }
  return out;
}

double bleu(std::span<const Tokens> hyps, std::span<const Tokens> refs) {
  if (hyps.empty()) throw InvalidInput("bleu: empty corpus");
  if (hyps.size() != refs.size()) throw InvalidInput("bleu: hypothesis and reference counts differ");

  std::array<std::size_t, 4> matches{}, totals{};
  std::size_t hyp_len = 0, ref_len = 0;
  for (std::size_t s = 0; s < hyps.size(); ++s) {
    const Tokens& h = hyps[s];
    const Tokens& r = refs[s];
    hyp_len += h.size();
    ref_len += r.size();
    for (std::size_t n = 1; n <= 4; ++n) {
      if (h.size() < n) continue;
      std::map<std::vector<std::string>, int> ref_counts;
      for (std::size_t i = 0; i + n <= r.size(); ++i) ++ref_counts[Tokens(r.begin() + i, r.begin() + i + n)];
      std::map<std::vector<std::string>, int> hyp_counts;
      for (std::size_t i = 0; i + n <= h.size(); ++i) ++hyp_counts[Tokens(h.begin() + i, h.begin() + i + n)];
      for (const auto& [gram, count] : hyp_counts) {
        auto it = ref_counts.find(gram);
        if (it != ref_counts.end()) matches[n - 1] += static_cast<std::size_t>(std::min(count, it->second));
      }
      totals[n - 1] += h.size() - n + 1;
    }
  }
  double log_precision = 0.0;
  for (std::size_t n = 0; n < 4; ++n) {
    if (matches[n] == 0) return 0.0;
    log_precision += 0.25 * std::log(static_cast<double>(matches[n]) / static_cast<double>(totals[n]));
  }
  const double brevity =
      hyp_len < ref_len ? std::exp(1.0 - static_cast<double>(ref_len) / static_cast<double>(hyp_len)) : 1.0;
  return 100.0 * brevity * std::exp(log_precision);
}

double error_rate(std::span<const WordLabels> labels) {
  std::size_t bad = 0, total = 0;
  for (const WordLabels& sentence : labels) {
    total += sentence.size();
    bad += static_cast<std::size_t>(std::count(sentence.begin(), sentence.end(), WordLabel::kBad));
  }
  if (total == 0) throw InvalidInput("error_rate: no tokens");
  return 100.0 * static_cast<double>(bad) / static_cast<double>(total);
}

double error_rate(std::span<const MqmRecord> records) {
  std::vector<WordLabels> labels;
  labels.reserve(records.size());
  for (const MqmRecord& r : records) {
    if (!r.labeled) throw InvalidInput("error_rate: unlabeled record");
    labels.push_back(r.word_labels);
  }
  return error_rate(labels);
}

double sentence_error_rate(std::span<const WordLabel> labels) {
  if (labels.empty()) throw InvalidInput("sentence_error_rate: no tokens");
  return static_cast<double>(std::count(labels.begin(), labels.end(), WordLabel::kBad)) /
         static_cast<double>(labels.size());
}

double student_t_cdf(double t, double df) {
  if (df <= 0.0) throw InvalidInput("student_t_cdf: degrees of freedom must be positive");
  const double tail = 0.5 * boost::math::ibeta(0.5 * df, 0.5, df / (df + t * t));
  return t >= 0.0 ? 1.0 - tail : tail;
}

WilliamsResult williams_test(double r12, double r13, double r23, int n) {
  for (double r : {r12, r13, r23})
    if (!(r >= -1.0 && r <= 1.0)) throw InvalidInput("williams_test: correlation outside [-1, 1]");
  if (n < 4) throw InvalidInput("williams_test: n must be at least 4");

  Eigen::Matrix3d corr;
  corr << 1.0, r12, r13,
          r12, 1.0, r23,
          r13, r23, 1.0;
  const double det = corr.determinant();
  if (!(det > 1e-12)) throw InvalidInput("williams_test: singular correlation matrix");

  const double nm1 = n - 1.0;
  const double mean_r = 0.5 * (r12 + r13);
  const double num = (r12 - r13) * std::sqrt(nm1 * (1.0 + r23));
  const double den = std::sqrt(2.0 * det * nm1 / (n - 3.0) + mean_r * mean_r * std::pow(1.0 - r23, 3));

  WilliamsResult out;
  out.df = n - 3;
  out.t = num / den;
  out.p = boost::math::ibeta(0.5 * out.df, 0.5, out.df / (out.df + out.t * out.t));
  return out;
}

std::vector<std::size_t> nearest_unused(std::span<const double> pool, std::span<const double> draws) {
  if (draws.size() > pool.size()) throw InvalidInput("downsample: pool exhausted");
  std::vector<bool> used(pool.size(), false);
  std::vector<std::size_t> picks;
  picks.reserve(draws.size());
  for (double target : draws) {
    std::size_t best = pool.size();
    double best_diff = 0.0;
    for (std::size_t i = 0; i < pool.size(); ++i) {
      if (used[i]) continue;
      const double diff = std::abs(pool[i] - target);
      if (best == pool.size() || diff < best_diff) {
        best = i;
        best_diff = diff;
      }
    }
    used[best] = true;
    picks.push_back(best);
  }
  return picks;
}

std::vector<std::size_t> downsample_match(std::span<const double> pool, std::span<const double> target,
                                          std::size_t k, Rng& rng) {
  if (target.empty()) throw InvalidInput("downsample: empty target distribution");
  if (k > pool.size()) throw InvalidInput("downsample: pool exhausted");
  std::vector<double> draws;
  draws.reserve(k);
  for (std::size_t i = 0; i < k; ++i) draws.push_back(target[rng.below(target.size())]);
  return nearest_unused(pool, draws);
}

double ks_distance(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw InvalidInput("ks_distance: empty sample");
  std::vector<double> x(a.begin(), a.end()), y(b.begin(), b.end());
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < x.size() && j < y.size()) {
    const double v = std::min(x[i], y[j]);
    while (i < x.size() && x[i] <= v) ++i;
    while (j < y.size() && y[j] <= v) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / x.size() - static_cast<double>(j) / y.size()));
  }
  return d;
}

}  // namespace mqmsynth::metrics
