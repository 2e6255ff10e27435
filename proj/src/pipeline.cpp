#include "mqmsynth/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <ostream>
#include <sstream>

#include "mqmsynth/parallel.hpp"

namespace mqmsynth::pipeline {

namespace {

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

void finish_record(MqmRecord& r, std::vector<ErrorSpan> spans) { set_spans(r, std::move(spans)); }

}  // namespace

void Summary::print(std::ostream& out) const {
  out << "pairs=" << pairs << '\n'
      << "records=" << records << '\n'
      << "truncated=" << truncated << '\n'
      << "oov_tokens=" << oov_tokens << '\n'
      << "spans=" << spans << '\n'
      << "tokens=" << tokens << '\n'
      << "bad_tokens=" << bad_tokens << '\n'
      << "error_rate=" << fixed(tokens ? 100.0 * static_cast<double>(bad_tokens) / static_cast<double>(tokens) : 0.0, 4) << '\n'
      << "spce=" << (spce ? "on" : "off") << '\n';
  const double total = seconds.generation + seconds.ter + seconds.rejudge + seconds.spce;
  auto line = [&](const char* name, double s) {
    out << "time_" << name << "_s=" << fixed(s, 3) << '\n';
    out << "time_" << name << "_share=" << fixed(total > 0 ? s / total : 0.0, 4) << '\n';
  };
  line("generation", seconds.generation);
  line("ter", seconds.ter);
  line("rejudge", seconds.rejudge);
  line("spce", seconds.spce);
}

std::vector<MqmRecord> generate(const decode::ParallelCorpus& pairs, std::span<const Generator> generators,
                                const StageOptions& options, Summary* summary) {
  if (generators.empty()) throw InvalidInput("generate: no generator");
  const std::size_t per_pair = generators.size();
  std::vector<MqmRecord> records(pairs.size() * per_pair);
  std::vector<char> truncated(records.size(), 0);

  parallel_for(records.size(), [&](std::size_t k) {
    const decode::ParallelPair& pair = pairs[k / per_pair];
    const Generator& gen = generators[k % per_pair];
    decode::BeamOptions beam;
    beam.beam_size = options.beam_size;
    beam.length_normalize = options.length_normalize;
    beam.max_len = options.max_len > 0 ? options.max_len
                                       : 2 * static_cast<int>(std::max(pair.src.size(), pair.tgt.size())) + 5;
    decode::DecodeResult out = decode::constrained_beam_search(*gen.model, pair.src, pair.tgt, options.cbs_tau, beam);
    truncated[k] = out.truncated;
    MqmRecord& r = records[k];
    r.src = pair.src;
    r.mt = std::move(out.tokens);
    r.ref = pair.tgt;
    r.provenance = gen.id;
  }, options.threads);

  for (std::size_t k = 0; k < records.size(); ++k)
    if (records[k].mt.empty())
      throw InvalidInput("generator '" + generators[k % per_pair].id + "' produced an empty translation for pair " +
                         std::to_string(k / per_pair));
  if (summary) {
    summary->pairs = pairs.size();
    summary->records = records.size();
    summary->truncated = static_cast<std::size_t>(std::count(truncated.begin(), truncated.end(), 1));
  }
  return records;
}

void label_coarse(std::vector<MqmRecord>& records, const StageOptions& options, std::ostream* trace) {
  std::vector<ter::Alignment> alignments(records.size());
  parallel_for(records.size(), [&](std::size_t k) {
    MqmRecord& r = records[k];
    if (!r.ref) throw InvalidInput("record " + std::to_string(k) + " has no reference for TER alignment");
    alignments[k] = ter::align(r.mt, *r.ref, options.ter);
    r.coarse_labels = ter::coarse_labels(alignments[k], static_cast<int>(r.mt.size()));
  }, options.threads);
  if (trace)
    for (std::size_t k = 0; k < records.size(); ++k) {
      *trace << "# record " << k << '\n';
      ter::write_trace(*trace, alignments[k]);
    }
}

std::size_t attach_probs(std::vector<MqmRecord>& records, const decode::ScoringModel& annotator,
                         const StageOptions& options) {
  std::vector<std::size_t> oov(records.size(), 0);
  parallel_for(records.size(), [&](std::size_t k) {
    decode::ForcedProbs p = decode::forced_decode_probs(annotator, records[k].src, records[k].mt);
    records[k].probs = std::move(p.probs);
    oov[k] = static_cast<std::size_t>(p.oov_count);
  }, options.threads);
  std::size_t total = 0;
  for (std::size_t n : oov) total += n;
  return total;
}

void rejudge_records(std::vector<MqmRecord>& records, const StageOptions& options) {
  options.thresholds.check();
  parallel_for(records.size(), [&](std::size_t k) {
    MqmRecord& r = records[k];
    if (!r.coarse_labels || !r.probs)
      throw InvalidInput("record " + std::to_string(k) + " lacks coarse labels or probabilities");
    annotate::AnnotationResult a = annotate::rejudge(*r.coarse_labels, *r.probs, options.thresholds);
    finish_record(r, spans_from_severities(a.severities));
    r.severities = std::move(a.severities);
  }, options.threads);
}

void aggregate_records(std::vector<MqmRecord>& records, std::span<const spce::DepTree> trees, std::ostream* trace) {
  if (trees.size() != records.size())
    throw InvalidInput("tree count " + std::to_string(trees.size()) + " differs from translation count " +
                       std::to_string(records.size()));
  for (std::size_t k = 0; k < records.size(); ++k) {
    MqmRecord& r = records[k];
    if (trees[k].size() != static_cast<int>(r.mt.size()))
      throw InvalidInput("tree " + std::to_string(k) + " has " + std::to_string(trees[k].size()) +
                         " nodes but translation " + std::to_string(k) + " has " + std::to_string(r.mt.size()) +
                         " tokens");
    const std::vector<Severity> sev = r.severities ? *r.severities : severities_from_spans(r.spans, static_cast<int>(r.mt.size()));
    spce::Trace steps;
    finish_record(r, spce::aggregate_spans(trees[k], sev, trace ? &steps : nullptr));
    if (trace) {
      *trace << "# record " << k << '\n';
      for (const auto& set : steps) {
        for (std::size_t i = 0; i < set.size(); ++i) *trace << (i ? " " : "") << set[i];
        *trace << '\n';
      }
    }
  }
}

std::vector<MqmRecord> run(const Inputs& inputs, const StageOptions& options, Summary* summary, const Traces& traces) {
  if (!inputs.pairs || !inputs.annotator) throw InvalidInput("pipeline: missing pairs or annotator");
  Summary local;
  Summary& s = summary ? *summary : local;

  Stopwatch gen_clock;
  std::vector<MqmRecord> records = generate(*inputs.pairs, inputs.generators, options, &s);
  s.seconds.generation = gen_clock.seconds();

  if (!inputs.trees.empty() && inputs.trees.size() != records.size())
    throw InvalidInput("tree count " + std::to_string(inputs.trees.size()) + " differs from translation count " +
                       std::to_string(records.size()));

  Stopwatch ter_clock;
  label_coarse(records, options, traces.ter);
  s.seconds.ter = ter_clock.seconds();

  Stopwatch rejudge_clock;
  s.oov_tokens = attach_probs(records, *inputs.annotator, options);
  rejudge_records(records, options);
  s.seconds.rejudge = rejudge_clock.seconds();

  Stopwatch spce_clock;
  if (!inputs.trees.empty()) {
    aggregate_records(records, inputs.trees, traces.spce);
    s.spce = true;
  }
  s.seconds.spce = spce_clock.seconds();

  for (const MqmRecord& r : records) {
    validate(r);
    s.spans += r.spans.size();
    s.tokens += r.word_labels.size();
    s.bad_tokens += static_cast<std::size_t>(std::count(r.word_labels.begin(), r.word_labels.end(), WordLabel::kBad));
  }
  return records;
}

void check_supervision(const decode::ParallelCorpus& pairs, const decode::ToyModel& annotator) {
  for (std::size_t k = 0; k < pairs.size(); ++k)
    if (!annotator.trained_on(pairs[k]))
      throw InvalidInput("pair " + std::to_string(k) +
                         " is not in the annotator's training data (use --amateur to allow)");
}

}  // namespace mqmsynth::pipeline
