// mqmsynth: synthetic MQM quality-estimation data toolkit.
//
// Exit codes: 0 success, 1 validation error, 2 I/O error.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mqmsynth/annotate.hpp"
#include "mqmsynth/core.hpp"
#include "mqmsynth/experiments.hpp"
#include "mqmsynth/metrics.hpp"
#include "mqmsynth/pipeline.hpp"
#include "mqmsynth/record_io.hpp"
#include "mqmsynth/spce.hpp"
#include "mqmsynth/synthetic.hpp"
#include "mqmsynth/toy_model.hpp"

namespace {

using namespace mqmsynth;

// Reads `key = value` lines; '#' starts a comment. Keys are option names
// without the leading dashes. A value holding several whitespace-separated
// words expands to one occurrence per word.
std::vector<std::pair<std::string, std::string>> read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config " + path);
  std::vector<std::pair<std::string, std::string>> out;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ParseError(path + ":" + std::to_string(line_no) + ": expected key = value");
    const Tokens key = tokenize(line.substr(0, eq));
    if (key.size() != 1) throw ParseError(path + ":" + std::to_string(line_no) + ": bad key");
    for (const std::string& value : tokenize(line.substr(eq + 1))) out.emplace_back(key[0], value);
  }
  return out;
}

// Inserts config-file settings for every option not given on the command
// line, so explicit flags always win.
std::vector<std::string> expand_config(const std::vector<std::string>& args) {
  std::optional<std::string> config;
  std::set<std::string> given;
  for (std::size_t i = 0; i < args.size(); ++i) {
    const std::string& a = args[i];
    if (a.rfind("--", 0) != 0) continue;
    const std::string name = a.substr(2, a.find('=') == std::string::npos ? std::string::npos : a.find('=') - 2);
    if (name == "config") {
      if (a.find('=') != std::string::npos) config = a.substr(a.find('=') + 1);
      else if (i + 1 < args.size()) config = args[i + 1];
    }
    given.insert(name);
  }
  if (!config) return args;
  std::vector<std::string> out;
  std::vector<std::string> injected;
  for (const auto& [key, value] : read_config(*config))
    if (!given.count(key)) injected.push_back("--" + key + "=" + value);
  // Subcommand names come first; inject right after them.
  std::size_t insert_at = 1;
  while (insert_at < args.size() && args[insert_at].rfind("-", 0) != 0) ++insert_at;
  out.assign(args.begin(), args.begin() + static_cast<std::ptrdiff_t>(insert_at));
  out.insert(out.end(), injected.begin(), injected.end());
  out.insert(out.end(), args.begin() + static_cast<std::ptrdiff_t>(insert_at), args.end());
  return out;
}

struct ThresholdFlags {
  std::string file;
  std::optional<double> critical, major, minor;

  void add(CLI::App* app) {
    app->add_option("--thresholds", file, "Thresholds file (critical, major, minor; one per line)");
    app->add_option("--t-critical", critical, "CRITICAL cut-point");
    app->add_option("--t-major", major, "MAJOR cut-point");
    app->add_option("--t-minor", minor, "MINOR cut-point");
  }

  annotate::Thresholds resolve() const {
    annotate::Thresholds th;
    if (!file.empty()) th = annotate::read_thresholds_file(file);
    if (critical) th.critical = *critical;
    if (major) th.major = *major;
    if (minor) th.minor = *minor;
    th.check();
    return th;
  }
};

struct StageFlags {
  double cbs_tau = 0.5;
  int beam_size = 4;
  int max_len = 0;
  bool length_normalize = false;
  bool no_shifts = false;
  unsigned threads = 0;
  ThresholdFlags thresholds;

  void add_decoding(CLI::App* app) {
    app->add_option("--cbs-tau", cbs_tau, "Force the next reference token when its probability exceeds this")->capture_default_str();
    app->add_option("--beam-size", beam_size, "Beam size")->capture_default_str()->check(CLI::PositiveNumber);
    app->add_option("--max-len", max_len, "Decoding steps (0: 2*max(|src|,|ref|)+5)")->capture_default_str();
    app->add_flag("--length-normalize", length_normalize, "Rank finished hypotheses by per-token log probability");
  }
  void add_labeling(CLI::App* app) {
    app->add_flag("--no-shifts", no_shifts, "Disable TER block shifts");
    thresholds.add(app);
  }
  void add_threads(CLI::App* app) { app->add_option("--threads", threads, "Worker threads (0: all cores)"); }

  pipeline::StageOptions resolve(bool need_thresholds) const {
    pipeline::StageOptions o;
    o.cbs_tau = cbs_tau;
    o.beam_size = beam_size;
    o.max_len = max_len;
    o.length_normalize = length_normalize;
    o.ter.shifts = !no_shifts;
    o.threads = threads;
    if (need_thresholds) o.thresholds = thresholds.resolve();
    return o;
  }
};

std::string model_id(const std::string& path) { return std::filesystem::path(path).stem().string(); }

std::vector<std::unique_ptr<decode::ToyModel>> load_models(const std::vector<std::string>& paths) {
  std::vector<std::unique_ptr<decode::ToyModel>> out;
  for (const auto& p : paths) out.push_back(std::make_unique<decode::ToyModel>(decode::ToyModel::load_file(p)));
  return out;
}

std::unique_ptr<std::ofstream> open_optional(const std::string& path) {
  if (path.empty()) return nullptr;
  auto out = std::make_unique<std::ofstream>(path, std::ios::binary);
  if (!*out) throw IoError("cannot write " + path);
  return out;
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << text;
}

decode::ParallelCorpus slice(decode::ParallelCorpus corpus, std::size_t offset, std::size_t limit) {
  if (offset > corpus.size()) throw InvalidInput("--offset beyond corpus size");
  auto first = corpus.begin() + static_cast<std::ptrdiff_t>(offset);
  auto last = limit == 0 || offset + limit >= corpus.size() ? corpus.end() : first + static_cast<std::ptrdiff_t>(limit);
  return decode::ParallelCorpus(std::make_move_iterator(first), std::make_move_iterator(last));
}

void check_annotator(const std::vector<std::string>& generators, const std::string& annotator, bool allow_self) {
  if (allow_self) return;
  const auto canon = [](const std::string& p) { return std::filesystem::weakly_canonical(p).string(); };
  for (const auto& g : generators)
    if (canon(g) == canon(annotator))
      throw InvalidInput("annotator " + annotator + " is also a generator (use --allow-self-annotation)");
}

int run(int argc, char** argv) {
  CLI::App app{"Synthetic MQM quality-estimation data toolkit"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  // train-toy
  std::string corpus_path, output_path, model_path;
  std::size_t offset = 0, limit = 0;
  decode::ToyTrainOptions train_opts;
  auto* train = app.add_subcommand("train-toy", "Train a toy translation model on a TSV corpus");
  train->add_option("--corpus", corpus_path, "Parallel TSV (source<TAB>target)")->required();
  train->add_option("--output", output_path, "Model file to write")->required();
  train->add_option("--offset", offset, "Skip this many leading pairs");
  train->add_option("--limit", limit, "Use at most this many pairs (0: all)");
  train->add_option("--em-iterations", train_opts.em_iterations, "IBM Model 1 EM iterations")->capture_default_str();
  train->add_option("--lambda", train_opts.lambda, "Lexical weight against the bigram LM")->capture_default_str();
  train->add_option("--position-sharpness", train_opts.position_sharpness, "Decay of the diagonal source-position prior")->capture_default_str();
  train->add_option("--config", "Flat key = value config file");

  // generate
  std::vector<std::string> generators;
  StageFlags flags;
  auto* gen = app.add_subcommand("generate", "CBS-generate synthetic translations");
  gen->add_option("--corpus", corpus_path, "Parallel TSV")->required();
  gen->add_option("--generator", generators, "Generator model file (repeatable)")->required();
  gen->add_option("--output", output_path, "Output JSONL")->required();
  gen->add_option("--offset", offset, "Skip this many leading pairs");
  gen->add_option("--limit", limit, "Use at most this many pairs (0: all)");
  flags.add_decoding(gen);
  flags.add_threads(gen);
  gen->add_option("--config", "Flat key = value config file");

  // annotate
  std::string input_path, annotator_path, ter_trace, spce_trace, trees_path;
  auto* ann = app.add_subcommand("annotate", "TER coarse labels + Annotator rejudging on generated JSONL");
  ann->add_option("--input", input_path, "JSONL with mt and ref")->required();
  ann->add_option("--annotator", annotator_path, "Annotator model file")->required();
  ann->add_option("--output", output_path, "Output JSONL")->required();
  ann->add_option("--ter-trace", ter_trace, "Write per-record alignment dump here");
  flags.add_labeling(ann);
  flags.add_threads(ann);
  ann->add_option("--config", "Flat key = value config file");

  // spce
  auto* agg = app.add_subcommand("spce", "Aggregate token severities into phrase spans with dependency trees");
  agg->add_option("--input", input_path, "Annotated JSONL")->required();
  agg->add_option("--trees", trees_path, "CoNLL-U trees, one per record")->required();
  agg->add_option("--output", output_path, "Output JSONL")->required();
  agg->add_option("--spce-trace", spce_trace, "Write per-iteration candidate sets here");
  agg->add_option("--config", "Flat key = value config file");

  // pipeline
  std::uint64_t seed = 1;
  bool amateur = false, allow_self = false;
  auto* pipe = app.add_subcommand("pipeline", "Run generation, labeling and span aggregation end to end");
  pipe->add_option("--corpus", corpus_path, "Parallel TSV")->required();
  pipe->add_option("--generator", generators, "Generator model file (repeatable)")->required();
  pipe->add_option("--annotator", annotator_path, "Annotator model file")->required();
  pipe->add_option("--trees", trees_path, "CoNLL-U trees for the generated translations (enables SPCE)");
  pipe->add_option("--output", output_path, "Output JSONL")->required();
  pipe->add_option("--offset", offset, "Skip this many leading pairs");
  pipe->add_option("--limit", limit, "Use at most this many pairs (0: all)");
  pipe->add_option("--seed", seed, "Root seed")->capture_default_str();
  pipe->add_flag("--amateur", amateur, "Allow pairs outside the Annotator's training data");
  pipe->add_flag("--allow-self-annotation", allow_self, "Allow the Annotator to be one of the Generators");
  pipe->add_option("--ter-trace", ter_trace, "Write per-record alignment dump here");
  pipe->add_option("--spce-trace", spce_trace, "Write per-iteration candidate sets here");
  flags.add_decoding(pipe);
  flags.add_labeling(pipe);
  flags.add_threads(pipe);
  pipe->add_option("--config", "Flat key = value config file");

  // calibrate
  double grid_step = 0.05;
  auto* cal = app.add_subcommand("calibrate", "Greedy threshold search on a validation JSONL");
  cal->add_option("--input", input_path, "JSONL with probs, coarse_labels and gold spans")->required();
  cal->add_option("--trees", trees_path, "CoNLL-U trees, one per record (enables SPCE)");
  cal->add_option("--grid-step", grid_step, "Threshold grid spacing")->capture_default_str();
  cal->add_option("--output", output_path, "Thresholds file to write ('-' for stdout)");
  cal->add_option("--config", "Flat key = value config file");

  // evaluate
  std::string pred_path, gold_path, csv_path;
  auto* eval = app.add_subcommand("evaluate", "Score predicted records against gold records");
  eval->add_option("--pred", pred_path, "Predicted JSONL")->required();
  eval->add_option("--gold", gold_path, "Gold JSONL")->required();
  eval->add_option("--csv", csv_path, "Also write a one-row CSV here");
  eval->add_option("--config", "Flat key = value config file");

  // experiment
  auto* exp = app.add_subcommand("experiment", "Analysis experiments");
  exp->require_subcommand(1);
  std::string model_m, model_l, report_path, pool_path, target_path;
  std::size_t k = 0;

  auto* self = exp->add_subcommand("self-annotation", "Error rate when a model annotates its own output");
  self->add_option("--corpus", corpus_path, "Parallel TSV")->required();
  self->add_option("--model-m", model_m, "Smaller model")->required();
  self->add_option("--model-l", model_l, "Larger model")->required();
  self->add_option("--offset", offset, "Skip this many leading pairs");
  self->add_option("--limit", limit, "Use at most this many pairs (0: all)");
  self->add_option("--seed", seed, "Root seed")->capture_default_str();
  self->add_option("--output", report_path, "Report file ('-' for stdout)");
  flags.add_decoding(self);
  flags.add_labeling(self);
  flags.add_threads(self);
  self->add_option("--config", "Flat key = value config file");

  auto* div = exp->add_subcommand("diversity", "Inter-generator BLEU and union statistics");
  div->add_option("--corpus", corpus_path, "Parallel TSV")->required();
  div->add_option("--generator", generators, "Generator model file (at least two)")->required();
  div->add_option("--annotator", annotator_path, "Annotator model file")->required();
  div->add_option("--offset", offset, "Skip this many leading pairs");
  div->add_option("--limit", limit, "Use at most this many pairs (0: all)");
  div->add_option("--seed", seed, "Root seed")->capture_default_str();
  div->add_option("--output", report_path, "Report file ('-' for stdout)");
  flags.add_decoding(div);
  flags.add_labeling(div);
  flags.add_threads(div);
  div->add_option("--config", "Flat key = value config file");

  auto* down = exp->add_subcommand("downsample", "Subset a pool to mirror another error-rate distribution");
  down->add_option("--pool", pool_path, "Records of the original Generator")->required();
  down->add_option("--target", target_path, "Records whose error-rate distribution is mirrored")->required();
  down->add_option("--k", k, "Subset size")->required();
  down->add_option("--seed", seed, "Root seed")->capture_default_str();
  down->add_option("--output", output_path, "Subset JSONL")->required();
  down->add_option("--report", report_path, "Report file ('-' for stdout)");
  down->add_option("--config", "Flat key = value config file");

  // synth-corpus
  std::size_t pairs = 1000;
  synthetic::LanguageSpec lang;
  auto* synth = app.add_subcommand("synth-corpus", "Write an artificial parallel corpus for desk-scale runs");
  synth->add_option("--pairs", pairs, "Number of pairs")->capture_default_str();
  synth->add_option("--seed", seed, "Root seed")->capture_default_str();
  synth->add_option("--vocab", lang.source_vocab, "Source vocabulary size")->capture_default_str();
  synth->add_option("--output", output_path, "Output TSV")->required();

  std::vector<std::string> args(argv, argv + argc);
  args = expand_config(args);
  std::vector<const char*> raw;
  for (const auto& a : args) raw.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(raw.size()), raw.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  if (*train) {
    const auto corpus = slice(decode::read_parallel_tsv_file(corpus_path), offset, limit);
    decode::ToyModel::train(corpus, train_opts).save_file(output_path);
    std::cout << "pairs=" << corpus.size() << '\n';
    return 0;
  }

  if (*gen) {
    const auto corpus = slice(decode::read_parallel_tsv_file(corpus_path), offset, limit);
    const auto models = load_models(generators);
    std::vector<pipeline::Generator> gens;
    for (std::size_t i = 0; i < models.size(); ++i) gens.push_back({model_id(generators[i]), models[i].get()});
    pipeline::Summary summary;
    const auto records = pipeline::generate(corpus, gens, flags.resolve(false), &summary);
    write_jsonl_file(output_path, records);
    std::cout << "pairs=" << summary.pairs << "\nrecords=" << summary.records << "\ntruncated=" << summary.truncated << '\n';
    return 0;
  }

  if (*ann) {
    auto records = read_jsonl_file(input_path);
    const auto annotator = decode::ToyModel::load_file(annotator_path);
    const auto options = flags.resolve(true);
    auto trace = open_optional(ter_trace);
    pipeline::label_coarse(records, options, trace.get());
    const std::size_t oov = pipeline::attach_probs(records, annotator, options);
    pipeline::rejudge_records(records, options);
    write_jsonl_file(output_path, records);
    std::cout << "records=" << records.size() << "\noov_tokens=" << oov << '\n';
    return 0;
  }

  if (*agg) {
    auto records = read_jsonl_file(input_path);
    const auto trees = spce::read_conllu_file(trees_path);
    auto trace = open_optional(spce_trace);
    for (std::size_t i = 0; i < records.size(); ++i)
      if (!records[i].severities && !records[i].labeled)
        throw InvalidInput(input_path + ": record " + std::to_string(i) + " has neither severities nor spans");
    pipeline::aggregate_records(records, trees, trace.get());
    write_jsonl_file(output_path, records);
    std::size_t spans = 0;
    for (const auto& r : records) spans += r.spans.size();
    std::cout << "records=" << records.size() << "\nspans=" << spans << '\n';
    return 0;
  }

  if (*pipe) {
    check_annotator(generators, annotator_path, allow_self);
    const auto corpus = slice(decode::read_parallel_tsv_file(corpus_path), offset, limit);
    const auto models = load_models(generators);
    const auto annotator = decode::ToyModel::load_file(annotator_path);
    if (!amateur) pipeline::check_supervision(corpus, annotator);

    pipeline::Inputs inputs;
    inputs.pairs = &corpus;
    for (std::size_t i = 0; i < models.size(); ++i) inputs.generators.push_back({model_id(generators[i]), models[i].get()});
    inputs.annotator = &annotator;
    if (!trees_path.empty()) inputs.trees = spce::read_conllu_file(trees_path);

    auto ter_out = open_optional(ter_trace);
    auto spce_out = open_optional(spce_trace);
    pipeline::Summary summary;
    const auto records = pipeline::run(inputs, flags.resolve(true), &summary, {ter_out.get(), spce_out.get()});
    write_jsonl_file(output_path, records);
    std::cout << "seed=" << seed << '\n';
    summary.print(std::cout);
    return 0;
  }

  if (*cal) {
    const auto records = read_jsonl_file(input_path);
    std::vector<spce::DepTree> trees;
    if (!trees_path.empty()) {
      trees = spce::read_conllu_file(trees_path);
      if (trees.size() != records.size())
        throw InvalidInput("tree count " + std::to_string(trees.size()) + " differs from record count " +
                           std::to_string(records.size()));
    }
    std::vector<annotate::ValidationItem> items;
    for (std::size_t i = 0; i < records.size(); ++i) {
      const MqmRecord& r = records[i];
      if (!r.probs || !r.coarse_labels || !r.labeled)
        throw InvalidInput(input_path + ": record " + std::to_string(i) + " needs probs, coarse_labels and spans");
      annotate::ValidationItem item{*r.probs, *r.coarse_labels, r.spans, std::nullopt};
      if (!trees.empty()) item.tree = trees[i];
      items.push_back(std::move(item));
    }
    const auto result = annotate::calibrate_thresholds(items, grid_step);
    std::ostringstream th;
    annotate::write_thresholds(th, result.thresholds);
    if (!output_path.empty() && output_path != "-") annotate::write_thresholds_file(output_path, result.thresholds);
    else std::cout << th.str();
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", result.objective);
    std::cerr << "span_f1=" << buf << "\nrounds=" << result.rounds << '\n';
    return 0;
  }

  if (*eval) {
    const auto pred = read_jsonl_file(pred_path);
    const auto gold = read_jsonl_file(gold_path);
    if (pred.size() != gold.size())
      throw InvalidInput("evaluate: " + std::to_string(pred.size()) + " predicted vs " + std::to_string(gold.size()) +
                         " gold records");
    Eigen::VectorXd ps(static_cast<Eigen::Index>(pred.size())), gs(static_cast<Eigen::Index>(gold.size()));
    WordLabels pl, gl;
    std::vector<metrics::SpanList> pspans, gspans;
    for (std::size_t i = 0; i < pred.size(); ++i) {
      if (!pred[i].labeled || !gold[i].labeled) throw InvalidInput("evaluate: record " + std::to_string(i) + " is unlabeled");
      if (pred[i].mt.size() != gold[i].mt.size())
        throw InvalidInput("evaluate: record " + std::to_string(i) + " differs in translation length");
      ps[static_cast<Eigen::Index>(i)] = pred[i].score;
      gs[static_cast<Eigen::Index>(i)] = gold[i].score;
      pl.insert(pl.end(), pred[i].word_labels.begin(), pred[i].word_labels.end());
      gl.insert(gl.end(), gold[i].word_labels.begin(), gold[i].word_labels.end());
      pspans.push_back(pred[i].spans);
      gspans.push_back(gold[i].spans);
    }
    auto num = [](std::optional<double> v) {
      if (!v) return std::string("nan");
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.6f", *v);
      return std::string(buf);
    };
    const bool corr = pred.size() >= 2;
    const auto span = metrics::span_weighted_f1(pspans, gspans);
    const std::vector<std::pair<std::string, std::string>> rows = {
        {"spearman", corr ? num(metrics::spearman(ps, gs)) : "nan"},
        {"pearson", corr ? num(metrics::pearson(ps, gs)) : "nan"},
        {"mcc", num(metrics::mcc(pl, gl))},
        {"f1_bad", num(metrics::f1_binary(pl, gl, WordLabel::kBad))},
        {"f1_ok", num(metrics::f1_binary(pl, gl, WordLabel::kOk))},
        {"span_f1", num(span.weighted_f1)},
        {"span_prec", num(span.precision)},
        {"span_recall", num(span.recall)},
        {"records", std::to_string(pred.size())},
    };
    std::string header, values;
    for (const auto& [key, v] : rows) {
      std::cout << key << '=' << v << '\n';
      header += (header.empty() ? "" : ",") + key;
      values += (values.empty() ? "" : ",") + v;
    }
    if (!csv_path.empty()) write_text(csv_path, header + "\n" + values + "\n");
    return 0;
  }

  if (*self) {
    const auto corpus = slice(decode::read_parallel_tsv_file(corpus_path), offset, limit);
    const auto m = decode::ToyModel::load_file(model_m);
    const auto l = decode::ToyModel::load_file(model_l);
    const auto report = experiments::self_annotation(corpus, {model_id(model_m), &m}, {model_id(model_l), &l},
                                                     flags.resolve(true), seed);
    write_text(report_path, report.render());
    return 0;
  }

  if (*div) {
    if (generators.size() < 2) throw InvalidInput("diversity experiment needs at least two --generator models");
    const auto corpus = slice(decode::read_parallel_tsv_file(corpus_path), offset, limit);
    const auto models = load_models(generators);
    const auto annotator = decode::ToyModel::load_file(annotator_path);
    std::vector<experiments::NamedModel> gens;
    for (std::size_t i = 0; i < models.size(); ++i) {
      std::string id = model_id(generators[i]);
      for (const auto& g : gens)
        if (g.id == id) id += "#" + std::to_string(i);
      gens.push_back({id, models[i].get()});
    }
    const auto report =
        experiments::diversity(corpus, gens, {model_id(annotator_path), &annotator}, flags.resolve(true), seed);
    write_text(report_path, report.render());
    return 0;
  }

  if (*down) {
    const auto pool = read_jsonl_file(pool_path);
    const auto target = read_jsonl_file(target_path);
    const auto result = experiments::downsample(pool, target, k, seed);
    std::vector<MqmRecord> subset;
    for (std::size_t i : result.picked) subset.push_back(pool[i]);
    write_jsonl_file(output_path, subset);
    write_text(report_path, result.report.render());
    return 0;
  }

  if (*synth) {
    const auto corpus = synthetic::make_corpus(pairs, seed, lang);
    std::ofstream out(output_path, std::ios::binary);
    if (!out) throw IoError("cannot write " + output_path);
    decode::write_parallel_tsv(out, corpus);
    std::cout << "pairs=" << corpus.size() << '\n';
    return 0;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const mqmsynth::IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
