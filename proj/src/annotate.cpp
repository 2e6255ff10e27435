#include "mqmsynth/annotate.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>

#include "mqmsynth/metrics.hpp"
#include "mqmsynth/parallel.hpp"

namespace mqmsynth::annotate {

void Thresholds::check() const {
  if (!(0.0 <= critical && critical < major && major < minor && minor <= 1.0))
    throw InvalidInput("thresholds must satisfy 0 <= critical < major < minor <= 1");
}

Thresholds read_thresholds(std::istream& in) {
  Thresholds th;
  if (!(in >> th.critical >> th.major >> th.minor))
    throw ParseError("thresholds: expected three numbers (critical, major, minor)");
  std::string extra;
  if (in >> extra) throw ParseError("thresholds: unexpected trailing content '" + extra + "'");
  try {
    th.check();
  } catch (const InvalidInput& e) {
    throw ParseError(e.what());
  }
  return th;
}

Thresholds read_thresholds_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  try {
    return read_thresholds(in);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

void write_thresholds(std::ostream& out, const Thresholds& th) {
  char buf[128];
  std::snprintf(buf, sizeof buf, "%.6f\n%.6f\n%.6f\n", th.critical, th.major, th.minor);
  out << buf;
}

void write_thresholds_file(const std::string& path, const Thresholds& th) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  write_thresholds(out, th);
}

Severity assign_severity(double p, const Thresholds& th) {
  if (!(p >= 0.0 && p <= 1.0)) throw InvalidInput("assign_severity: probability outside [0, 1]");
  if (p < th.critical) return Severity::kCritical;
  if (p < th.major) return Severity::kMajor;
  if (p < th.minor) return Severity::kMinor;
  return Severity::kOk;
}

AnnotationResult rejudge(std::span<const WordLabel> coarse, std::span<const double> probs, const Thresholds& th) {
  if (coarse.size() != probs.size())
    throw InvalidInput("rejudge: " + std::to_string(coarse.size()) + " labels vs " + std::to_string(probs.size()) +
                       " probabilities");
  AnnotationResult out;
  out.probs.assign(probs.begin(), probs.end());
  out.severities.reserve(coarse.size());
  out.sources.reserve(coarse.size());
  for (std::size_t i = 0; i < coarse.size(); ++i) {
    if (coarse[i] == WordLabel::kOk) {
      out.severities.push_back(Severity::kOk);
      out.sources.push_back(LabelSource::kMatchedOk);
    } else {
      out.severities.push_back(assign_severity(probs[i], th));
      out.sources.push_back(LabelSource::kRejudged);
    }
  }
  return out;
}

std::vector<ErrorSpan> predict_spans(const ValidationItem& item, const Thresholds& th) {
  const AnnotationResult a = rejudge(item.coarse, item.probs, th);
  if (item.tree) return spce::aggregate_spans(*item.tree, a.severities);
  return spans_from_severities(a.severities);
}

double objective(std::span<const ValidationItem> validation, const Thresholds& th) {
  std::vector<metrics::SpanList> pred, gold;
  pred.reserve(validation.size());
  gold.reserve(validation.size());
  for (const ValidationItem& item : validation) {
    pred.push_back(predict_spans(item, th));
    gold.push_back(item.gold);
  }
  return metrics::span_weighted_f1(pred, gold).weighted_f1;
}

std::vector<double> threshold_grid(double step) {
  if (!(step > 0.0 && step < 1.0)) throw InvalidInput("grid_step must lie in (0, 1)");
  std::vector<double> grid;
  for (int k = 1; k * step < 1.0 - 1e-9; ++k) grid.push_back(k * step);
  return grid;
}

CalibrationResult calibrate_thresholds(std::span<const ValidationItem> validation, double grid_step) {
  if (validation.empty()) throw InvalidInput("calibrate_thresholds: empty validation set");
  const std::vector<double> grid = threshold_grid(grid_step);
  const int g = static_cast<int>(grid.size());
  if (g < 3) throw InvalidInput("calibrate_thresholds: grid has fewer than three values");

  // Indices into the grid for (critical, major, minor), starting near the quartiles.
  int idx[3] = {g / 4, g / 2, (3 * g) / 4};
  if (!(idx[0] < idx[1] && idx[1] < idx[2])) idx[0] = 0, idx[1] = 1, idx[2] = 2;
  auto thresholds_at = [&grid](const int* i) { return Thresholds{grid[i[0]], grid[i[1]], grid[i[2]]}; };

  CalibrationResult result;
  result.objective = objective(validation, thresholds_at(idx));
  bool moved = true;
  while (moved) {
    moved = false;
    ++result.rounds;
    for (int c = 0; c < 3; ++c) {
      const int lo = c == 0 ? 0 : idx[c - 1] + 1;
      const int hi = c == 2 ? g - 1 : idx[c + 1] - 1;
      std::vector<double> scores(static_cast<std::size_t>(hi - lo + 1));
      parallel_for(scores.size(), [&](std::size_t k) {
        int trial[3] = {idx[0], idx[1], idx[2]};
        trial[c] = lo + static_cast<int>(k);
        scores[k] = objective(validation, thresholds_at(trial));
      });
      int best = lo;
      for (int k = lo + 1; k <= hi; ++k)
        if (scores[k - lo] > scores[best - lo]) best = k;
      if (best != idx[c]) {
        idx[c] = best;
        moved = true;
      }
      result.objective = scores[best - lo];
    }
  }
  result.thresholds = thresholds_at(idx);
  return result;
}

}  // namespace mqmsynth::annotate
