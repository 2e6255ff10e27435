// Acceptance suite: one PASS/FAIL line per criterion.
//
// usage: acceptance [--expect-fail N]...
// Exit status is 0 when exactly the listed criteria fail.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <set>
#include <sstream>
#include <string>

#include "fixtures.hpp"
#include "mqmsynth/annotate.hpp"
#include "mqmsynth/experiments.hpp"
#include "mqmsynth/metrics.hpp"
#include "mqmsynth/record_io.hpp"
#include "mqmsynth/rng.hpp"
#include "mqmsynth/spce.hpp"
#include "mqmsynth/synthetic.hpp"
#include "mqmsynth/ter.hpp"
#include "mqmsynth/toy_model.hpp"

using namespace mqmsynth;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

Outcome verdict(bool pass, std::string detail) { return {pass, std::move(detail)}; }

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

Severity eq2(double p, const annotate::Thresholds& th) {
  if (p < th.critical) return Severity::kCritical;
  if (th.critical <= p && p < th.major) return Severity::kMajor;
  if (th.major <= p && p < th.minor) return Severity::kMinor;
  return Severity::kOk;
}

int dp_distance(const Tokens& a, const Tokens& b) {
  std::vector<int> prev(b.size() + 1), cur(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = static_cast<int>(j);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = static_cast<int>(i);
    for (std::size_t j = 1; j <= b.size(); ++j)
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (a[i - 1] != b[j - 1])});
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

Outcome table_score() {
  const std::vector<ErrorSpan> spans{{0, 0, Severity::kMinor}, {3, 6, Severity::kCritical}};
  const double score = mqm_score(spans, 8);
  const WordLabels labels = word_labels_from_spans(spans, 8);
  const std::string row = [&] {
    std::string s;
    for (WordLabel l : labels) s += std::string(to_string(l)) + " ";
    return s;
  }();
  const bool ok = score == -0.375 && row == "BAD OK OK BAD BAD BAD BAD OK ";
  return verdict(ok, fmt("score=%.6f", score) + " labels=" + row.substr(0, row.size() - 1));
}

Outcome severity_sweep() {
  Rng rng(2);
  int checked = 0, mismatches = 0;
  for (int t = 0; t < 20;) {
    double v[3] = {rng.uniform(), rng.uniform(), rng.uniform()};
    std::sort(v, v + 3);
    if (v[0] == v[1] || v[1] == v[2]) continue;
    const annotate::Thresholds th{v[0], v[1], v[2]};
    ++t;
    std::vector<double> probs;
    for (int i = 0; i <= 1000; ++i) probs.push_back(i / 1000.0);
    probs.insert(probs.end(), {th.critical, th.major, th.minor});
    for (double p : probs) {
      ++checked;
      mismatches += annotate::assign_severity(p, th) != eq2(p, th);
    }
    mismatches += annotate::assign_severity(th.critical, th) != Severity::kMajor;
    mismatches += annotate::assign_severity(th.major, th) != Severity::kMinor;
    mismatches += annotate::assign_severity(th.minor, th) != Severity::kOk;
  }
  return verdict(mismatches == 0, std::to_string(checked) + " probabilities, " + std::to_string(mismatches) + " mismatches");
}

Outcome spce_oracle() {
  long trees = 0, intervals = 0, mismatches = 0;
  for (int n = 1; n <= 7; ++n)
    for (const auto& heads : fixtures::all_trees(n)) {
      ++trees;
      const spce::DepTree t(heads);
      for (int l = 0; l < n; ++l)
        for (int r = l; r < n; ++r) {
          ++intervals;
          mismatches += !(spce::expand(t, {l, r}) == fixtures::naive_spce(heads, l, r));
        }
    }

  Rng rng(99);
  long violations = 0;
  for (int trial = 0; trial < 10000; ++trial) {
    const int n = 1 + static_cast<int>(rng.below(50));
    std::vector<int> heads(static_cast<std::size_t>(n), -1);
    std::vector<int> order(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
    for (int i = n - 1; i > 0; --i) std::swap(order[static_cast<std::size_t>(i)], order[rng.below(static_cast<std::uint64_t>(i) + 1)]);
    for (int k = 1; k < n; ++k)
      heads[static_cast<std::size_t>(order[static_cast<std::size_t>(k)])] = order[rng.below(static_cast<std::uint64_t>(k))];
    const spce::DepTree t(heads);
    int l = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
    int r = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
    if (l > r) std::swap(l, r);
    const spce::Interval e = spce::expand(t, {l, r});
    violations += e.l > l || e.r < r;
    violations += !(spce::expand(t, e) == e);
  }
  return verdict(mismatches == 0 && violations == 0,
                 std::to_string(trees) + " trees, " + std::to_string(intervals) + " intervals, " +
                     std::to_string(mismatches) + " mismatches; 10000 random trees, " + std::to_string(violations) +
                     " property violations");
}

Outcome cbs_endpoints() {
  std::vector<decode::ToyModel> models;
  std::vector<decode::ParallelCorpus> corpora;
  for (std::uint64_t s = 0; s < 4; ++s) {
    corpora.push_back(synthetic::make_corpus(300, 100 + s));
    models.push_back(decode::ToyModel::train(decode::ParallelCorpus(corpora.back().begin(), corpora.back().begin() + 100 + 50 * s)));
  }
  Rng rng(4);
  int forced_bad = 0, free_bad = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t m = rng.below(models.size());
    const auto& pair = corpora[m][rng.below(corpora[m].size())];
    // A reference from another pair keeps source and reference unrelated half the time.
    const auto& ref = trial % 2 ? pair.tgt : corpora[m][rng.below(corpora[m].size())].tgt;
    const decode::BeamOptions opts{.beam_size = 1 + static_cast<int>(rng.below(5)),
                                   .max_len = 2 * static_cast<int>(std::max(pair.src.size(), ref.size())) + 5};
    const auto forced = decode::constrained_beam_search(models[m], pair.src, ref, -1.0, opts);
    forced_bad += forced.tokens != ref;
    const auto free = decode::constrained_beam_search(models[m], pair.src, ref, 2.0, opts);
    const auto plain = decode::beam_search(models[m], pair.src, opts);
    free_bad += free.tokens != plain.tokens || free.log_prob != plain.log_prob;
  }
  return verdict(forced_bad == 0 && free_bad == 0, "100 triples; always-force mismatches " + std::to_string(forced_bad) +
                                                       ", never-force mismatches " + std::to_string(free_bad));
}

Outcome ter_oracle() {
  std::vector<Tokens> seqs{{}};
  for (std::size_t i = 0; i < seqs.size(); ++i)
    if (seqs[i].size() < 6)
      for (const char* s : {"a", "b", "c"}) {
        Tokens t = seqs[i];
        t.push_back(s);
        seqs.push_back(std::move(t));
      }
  long pairs = 0, mismatches = 0;
  const ter::Options no_shift{.shifts = false};
  for (const auto& h : seqs)
    for (const auto& r : seqs) {
      ++pairs;
      mismatches += ter::align(h, r, no_shift).edit_count != dp_distance(h, r);
    }
  Rng rng(7);
  long worse = 0;
  for (int trial = 0; trial < 10000; ++trial) {
    Tokens h(rng.below(13)), r(rng.below(13));
    for (auto& x : h) x = std::string(1, static_cast<char>('a' + rng.below(4)));
    for (auto& x : r) x = std::string(1, static_cast<char>('a' + rng.below(4)));
    worse += ter::align(h, r).edit_count > dp_distance(h, r);
  }
  return verdict(mismatches == 0 && worse == 0, std::to_string(pairs) + " exhaustive pairs, " + std::to_string(mismatches) +
                                                    " mismatches; 10000 shifted pairs, " + std::to_string(worse) +
                                                    " above the plain cost");
}

Eigen::VectorXd vec(std::initializer_list<double> v) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out[i++] = x;
  return out;
}

Outcome metric_fixtures() {
  using namespace metrics;
  std::vector<std::string> failed;
  auto expect = [&](const char* name, double got, double want, double tol) {
    if (!(std::abs(got - want) <= tol)) failed.push_back(name + fmt("=%.6f (want %.6f)", got, want));
  };
  const auto x = vec({1, 2, 3, 4, 5});
  expect("pearson(x,x)", *pearson(x, x), 1.0, 1e-12);
  expect("pearson(x,-x)", *pearson(x, -x), -1.0, 1e-12);
  expect("pearson", *pearson(vec({1, 2, 3}), vec({2, 2, 4})), 0.866025, 1e-6);
  expect("spearman(up)", *spearman(x, vec({1, 4, 9, 16, 25})), 1.0, 1e-12);
  expect("spearman(down)", *spearman(x, vec({5, 3, 1, 0, -2})), -1.0, 1e-12);
  expect("spearman(ties)", *spearman(vec({1, 2, 3, 4}), vec({10, 10, 30, 20})), 0.737865, 1e-6);
  const WordLabels gold{WordLabel::kBad, WordLabel::kOk, WordLabel::kBad, WordLabel::kOk};
  expect("mcc(identity)", mcc(gold, gold), 1.0, 1e-12);
  expect("mcc(constant)", mcc(WordLabels(4, WordLabel::kOk), gold), 0.0, 0.0);
  expect("mcc", mcc(Confusion{2, 3, 1, 1}), 5.0 / 12.0, 1e-6);
  expect("f1(identity)", f1_binary(gold, gold, WordLabel::kBad), 1.0, 0.0);
  expect("f1(no positives)", f1_binary(WordLabels(4, WordLabel::kOk), gold, WordLabel::kBad), 0.0, 0.0);
  expect("f1(P=.5,R=.25)", f1(Confusion{1, 0, 1, 3}), 1.0 / 3.0, 1e-6);
  const std::vector<SpanList> g{{{0, 1, Severity::kMajor}}};
  const std::vector<SpanList> p{{{1, 2, Severity::kMajor}}};
  const std::vector<SpanList> empty{{}};
  expect("span_f1(identity)", span_weighted_f1(g, g).weighted_f1, 1.0, 0.0);
  expect("span_f1(empty pred)", span_weighted_f1(empty, g).weighted_f1, 0.0, 0.0);
  expect("span_f1", span_weighted_f1(p, g).weighted_f1, 0.5, 1e-6);
  const std::vector<Tokens> refs{tokenize("the cat sat on the mat")};
  expect("bleu(identity)", bleu(refs, refs), 100.0, 1e-9);
  expect("bleu(disjoint)", bleu(std::vector<Tokens>{tokenize("a b c d e")}, refs), 0.0, 0.0);
  expect("bleu(the the cat)", bleu(std::vector<Tokens>{tokenize("the the cat")}, std::vector<Tokens>{tokenize("the cat sat")}), 0.0, 1e-6);
  const auto same = williams_test(0.6, 0.6, 0.5, 25);
  expect("williams t(r12=r13)", same.t, 0.0, 0.0);
  expect("williams p(r12=r13)", same.p, 1.0, 1e-12);
  const auto w = williams_test(0.7, 0.5, 0.6, 30);
  expect("williams t", w.t, 1.616304, 1e-2);
  const auto small = williams_test(0.7, 0.5, 0.6, 4);
  if (small.df != 1 || !std::isfinite(small.t)) failed.push_back("williams n=4");
  std::string detail = failed.empty() ? "all fixtures within tolerance" : "";
  for (const auto& f : failed) detail += f + "; ";
  return verdict(failed.empty(), detail);
}

Outcome self_annotation_direction() {
  const auto corpus = synthetic::make_corpus(2000, 7);
  const auto m = decode::ToyModel::train(decode::ParallelCorpus(corpus.begin(), corpus.begin() + 200));
  const auto l = decode::ToyModel::train(decode::ParallelCorpus(corpus.begin(), corpus.begin() + 1800));
  const decode::ParallelCorpus test(corpus.begin() + 1800, corpus.end());
  const auto report = experiments::self_annotation(test, {"M", &m}, {"L", &l}, {}, 7);
  const double mm = report.get("G=M,A=M.error_rate");
  const double ml = report.get("G=M,A=L.error_rate");
  const double ll = report.get("G=L,A=L.error_rate");
  return verdict(ml - mm >= 2.0, fmt("error rate G=M,A=M %.2f%%, G=M,A=L %.2f%% (margin %.2f points, need >= 2)", mm, ml, ml - mm) +
                                     fmt(", G=L,A=L %.2f%%", ll));
}

Outcome calibration_recovery() {
  const annotate::Thresholds star{0.15, 0.35, 0.6};
  Rng rng(8);
  std::vector<annotate::ValidationItem> items;
  for (int s = 0; s < 80; ++s) {
    annotate::ValidationItem item;
    const int n = 3 + static_cast<int>(rng.below(10));
    std::vector<Severity> sev;
    for (int i = 0; i < n; ++i) {
      const double p = rng.uniform();
      const bool bad = rng.bernoulli(0.6);
      item.probs.push_back(p);
      item.coarse.push_back(bad ? WordLabel::kBad : WordLabel::kOk);
      sev.push_back(bad ? eq2(p, star) : Severity::kOk);
    }
    item.gold = spans_from_severities(sev);
    items.push_back(std::move(item));
  }
  const auto result = annotate::calibrate_thresholds(items, 0.05);
  const auto grid = annotate::threshold_grid(0.05);
  double best = -1.0;
  for (std::size_t a = 0; a < grid.size(); ++a)
    for (std::size_t b = a + 1; b < grid.size(); ++b)
      for (std::size_t c = b + 1; c < grid.size(); ++c)
        best = std::max(best, annotate::objective(items, {grid[a], grid[b], grid[c]}));
  const auto& th = result.thresholds;
  const bool close = std::abs(th.critical - star.critical) <= 0.05 + 1e-9 && std::abs(th.major - star.major) <= 0.05 + 1e-9 &&
                     std::abs(th.minor - star.minor) <= 0.05 + 1e-9;
  return verdict(close && result.objective == best,
                 fmt("recovered (%.2f, %.2f, %.2f)", th.critical, th.major, th.minor) +
                     fmt(" vs (%.2f, %.2f, %.2f)", star.critical, star.major, star.minor) +
                     fmt("; greedy objective %.6f, exhaustive optimum %.6f", result.objective, best));
}

Outcome end_to_end_determinism() {
  const auto corpus = synthetic::make_corpus(3000, 21);
  const auto a = decode::ToyModel::train(decode::ParallelCorpus(corpus.begin(), corpus.begin() + 400));
  const auto b = decode::ToyModel::train(decode::ParallelCorpus(corpus.begin() + 400, corpus.begin() + 800));
  const auto ann = decode::ToyModel::train(corpus);
  const decode::ParallelCorpus pairs(corpus.begin() + 500, corpus.end());

  pipeline::StageOptions opts;
  pipeline::Inputs in;
  in.pairs = &pairs;
  in.generators = {{"A", &a}, {"B", &b}};
  in.annotator = &ann;
  // Trees for the generated translations, drawn from a fixed stream.
  Rng rng = Rng::stream(21, "trees");
  for (const auto& r : pipeline::generate(pairs, in.generators, opts)) {
    const int n = static_cast<int>(r.mt.size());
    std::vector<int> heads(static_cast<std::size_t>(n), -1);
    const int root = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
    for (int i = 0; i < n; ++i)
      if (i != root) heads[static_cast<std::size_t>(i)] = i < root ? i + 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(root - i))) : root + static_cast<int>(rng.below(static_cast<std::uint64_t>(i - root)));
    in.trees.emplace_back(heads);
  }
  auto dump = [&] {
    std::ostringstream out;
    write_jsonl(out, pipeline::run(in, opts));
    return out.str();
  };
  const std::string first = dump();
  const std::string second = dump();
  const std::size_t records = static_cast<std::size_t>(std::count(first.begin(), first.end(), '\n'));
  return verdict(records == 5000 && first == second,
                 std::to_string(records) + " records, " + std::to_string(first.size()) + " bytes, " +
                     (first == second ? "identical" : "different"));
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> expect_fail;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--expect-fail") == 0 && i + 1 < argc) {
      expect_fail.insert(std::atoi(argv[++i]));
    } else {
      std::fprintf(stderr, "usage: %s [--expect-fail N]...\n", argv[0]);
      return 2;
    }
  }

  struct Criterion {
    int id;
    const char* name;
    double budget_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "worked-example score and labels", 1, table_score},
      {2, "severity mapping sweep", 1, severity_sweep},
      {3, "span closure oracle", 60, spce_oracle},
      {4, "constrained search endpoints", 30, cbs_endpoints},
      {5, "edit rate oracle", 60, ter_oracle},
      {6, "metric fixtures", 5, metric_fixtures},
      {7, "self-annotation error-rate direction", 300, self_annotation_direction},
      {8, "threshold calibration recovery", 120, calibration_recovery},
      {9, "end-to-end determinism", 300, end_to_end_determinism},
  };

  std::set<int> failed;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs < c.budget_s;
    const bool pass = o.pass && in_time;
    if (!pass) failed.insert(c.id);
    std::printf("[%s] %d %s: %s (%.2fs, budget %.0fs%s)\n", pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(), secs,
                c.budget_s, in_time ? "" : ", over budget");
    std::fflush(stdout);
  }
  std::printf("%zu/%zu criteria pass\n", criteria.size() - failed.size(), criteria.size());
  if (failed == expect_fail) return 0;
  if (!expect_fail.empty()) {
    std::string listed;
    for (int id : expect_fail) listed += " " + std::to_string(id);
    std::printf("expected failures:%s\n", listed.c_str());
  }
  return 1;
}
