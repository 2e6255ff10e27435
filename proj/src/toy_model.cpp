#include "mqmsynth/toy_model.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include "mqmsynth/rng.hpp"

namespace mqmsynth::decode {

namespace {

constexpr const char* kMagic = "mqmsynth-toy-model";
constexpr int kFormatVersion = 1;

std::string hex(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%a", v);
  return buf;
}

double parse_double(const std::string& s) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0') throw ParseError("toy model: bad number '" + s + "'");
  return v;
}

void expect(std::istream& in, const std::string& keyword) {
  std::string word;
  if (!(in >> word) || word != keyword)
    throw ParseError("toy model: expected '" + keyword + "', found '" + word + "'");
}

template <typename T>
T read_value(std::istream& in, const char* what) {
  T v{};
  if (!(in >> v)) throw ParseError(std::string("toy model: cannot read ") + what);
  return v;
}

std::vector<std::string> sorted_vocab(const ParallelCorpus& corpus, bool source) {
  std::set<std::string> words;
  for (const auto& p : corpus)
    for (const auto& w : source ? p.src : p.tgt) words.insert(w);
  return {words.begin(), words.end()};
}

}  // namespace

ParallelCorpus read_parallel_tsv(std::istream& in) {
  ParallelCorpus corpus;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    const std::size_t tab = line.find('\t');
    if (tab == std::string::npos)
      throw ParseError("line " + std::to_string(line_no) + ": expected source<TAB>target");
    ParallelPair pair{tokenize(std::string_view(line).substr(0, tab)),
                      tokenize(std::string_view(line).substr(tab + 1))};
    if (pair.src.empty() || pair.tgt.empty())
      throw ParseError("line " + std::to_string(line_no) + ": empty source or target");
    corpus.push_back(std::move(pair));
  }
  return corpus;
}

ParallelCorpus read_parallel_tsv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  try {
    return read_parallel_tsv(in);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

void write_parallel_tsv(std::ostream& out, const ParallelCorpus& corpus) {
  for (const auto& p : corpus) out << join(p.src) << '\t' << join(p.tgt) << '\n';
}

std::uint64_t pair_fingerprint(const ParallelPair& pair) {
  return fnv1a(join(pair.src) + '\t' + join(pair.tgt));
}

ToyModel ToyModel::train(const ParallelCorpus& corpus, const ToyTrainOptions& options) {
  if (corpus.empty()) throw InvalidInput("train_toy_model: empty corpus");
  if (options.em_iterations < 1) throw InvalidInput("train_toy_model: em_iterations must be at least 1");
  if (!(options.lambda >= 0.0 && options.lambda <= 1.0)) throw InvalidInput("train_toy_model: lambda outside [0,1]");

  ToyModel model;
  model.lambda_ = options.lambda;
  model.position_sharpness_ = options.position_sharpness;
  model.source_vocab_ = sorted_vocab(corpus, true);
  model.target_vocab_ = sorted_vocab(corpus, false);
  model.build_indexes();

  const int source_size = static_cast<int>(model.source_vocab_.size());
  const int v = static_cast<int>(model.target_vocab_.size());

  std::vector<std::vector<int>> src_ids;
  std::vector<std::vector<int>> tgt_ids;
  std::size_t src_tokens = 0;
  std::size_t tgt_tokens = 0;
  for (const auto& p : corpus) {
    std::vector<int> s, t;
    for (const auto& w : p.src) s.push_back(model.source_index_.at(w));
    for (const auto& w : p.tgt) t.push_back(model.target_index_.at(w));
    src_tokens += s.size();
    tgt_tokens += t.size();
    src_ids.push_back(std::move(s));
    tgt_ids.push_back(std::move(t));
  }
  model.length_ratio_ = static_cast<double>(tgt_tokens) / static_cast<double>(src_tokens);

  // IBM Model 1 EM from a uniform table over co-occurring pairs.
  std::vector<std::map<int, double>> table(static_cast<std::size_t>(source_size));
  for (std::size_t k = 0; k < corpus.size(); ++k)
    for (int f : src_ids[k])
      for (int e : tgt_ids[k]) table[f][e] = 1.0 / v;

  for (int iter = 0; iter < options.em_iterations; ++iter) {
    std::vector<std::map<int, double>> counts(static_cast<std::size_t>(source_size));
    for (std::size_t k = 0; k < corpus.size(); ++k) {
      for (int e : tgt_ids[k]) {
        double denom = 0.0;
        for (int f : src_ids[k]) denom += table[f].at(e);
        for (int f : src_ids[k]) counts[f][e] += table[f].at(e) / denom;
      }
    }
    for (int f = 0; f < source_size; ++f) {
      double total = 0.0;
      for (const auto& [e, c] : counts[f]) total += c;
      for (auto& [e, t] : table[f]) t = counts[f][e] / total;
    }
  }
  model.lexical_.resize(static_cast<std::size_t>(source_size));
  for (int f = 0; f < source_size; ++f)
    for (const auto& [e, t] : table[f])
      if (t > 0.0) model.lexical_[f].emplace_back(e, t);

  std::vector<std::map<int, std::uint32_t>> bigram(static_cast<std::size_t>(v + 1));
  for (const auto& t : tgt_ids) {
    int prev = v;
    for (int e : t) {
      ++bigram[prev][e];
      prev = e;
    }
    ++bigram[prev][v];
  }
  model.bigram_.resize(static_cast<std::size_t>(v + 1));
  model.bigram_totals_.assign(static_cast<std::size_t>(v + 1), 0);
  for (int prev = 0; prev <= v; ++prev)
    for (const auto& [next, c] : bigram[prev]) {
      model.bigram_[prev].emplace_back(next, c);
      model.bigram_totals_[prev] += c;
    }

  for (const auto& p : corpus) model.fingerprints_.push_back(pair_fingerprint(p));
  std::sort(model.fingerprints_.begin(), model.fingerprints_.end());
  model.fingerprints_.erase(std::unique(model.fingerprints_.begin(), model.fingerprints_.end()),
                            model.fingerprints_.end());
  return model;
}

void ToyModel::build_indexes() {
  source_index_.clear();
  target_index_.clear();
  for (std::size_t i = 0; i < source_vocab_.size(); ++i) source_index_.emplace(source_vocab_[i], static_cast<int>(i));
  for (std::size_t i = 0; i < target_vocab_.size(); ++i) target_index_.emplace(target_vocab_[i], static_cast<int>(i));
}

std::optional<int> ToyModel::token_id(std::string_view token) const {
  auto it = target_index_.find(std::string(token));
  if (it == target_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<int> ToyModel::source_id(std::string_view token) const {
  auto it = source_index_.find(std::string(token));
  if (it == source_index_.end()) return std::nullopt;
  return it->second;
}

Eigen::VectorXd ToyModel::next_distribution(std::span<const std::string> src,
                                            std::span<const std::string> prefix) const {
  const int v = static_cast<int>(target_vocab_.size());
  const int m = static_cast<int>(src.size());

  Eigen::VectorXd lexical = Eigen::VectorXd::Zero(v + 1);
  if (m == 0) {
    lexical[v] = 1.0;
  } else {
    // Slot m is the end of the source and emits EOS.
    const double centre = static_cast<double>(prefix.size()) / length_ratio_;
    Eigen::VectorXd w(m + 1);
    for (int j = 0; j <= m; ++j) w[j] = std::exp(-position_sharpness_ * std::abs(j - centre));
    w /= w.sum();
    for (int j = 0; j < m; ++j) {
      if (const auto f = source_id(src[j])) {
        for (const auto& [e, t] : lexical_[*f]) lexical[e] += w[j] * t;
      } else {
        lexical.head(v).array() += w[j] / v;
      }
    }
    lexical[v] += w[m];
  }

  Eigen::VectorXd lm(v + 1);
  std::optional<int> prev = prefix.empty() ? std::optional<int>(v) : token_id(prefix.back());
  if (!prev) {
    lm.setConstant(1.0 / (v + 1));
  } else {
    const double denom = static_cast<double>(bigram_totals_[*prev]) + v + 1;
    lm.setConstant(1.0 / denom);
    for (const auto& [next, c] : bigram_[*prev]) lm[next] += c / denom;
  }
  return lambda_ * lexical + (1.0 - lambda_) * lm;
}

double ToyModel::lexical_prob(std::string_view target, std::string_view source) const {
  const auto f = source_id(source);
  const auto e = token_id(target);
  if (!f || !e) return 0.0;
  const auto& row = lexical_[*f];
  auto it = std::lower_bound(row.begin(), row.end(), std::make_pair(*e, 0.0),
                             [](const auto& a, const auto& b) { return a.first < b.first; });
  return it != row.end() && it->first == *e ? it->second : 0.0;
}

double ToyModel::bigram_prob(std::string_view prev, std::string_view next) const {
  const int v = static_cast<int>(target_vocab_.size());
  const std::optional<int> p = prev.empty() ? std::optional<int>(v) : token_id(prev);
  const std::optional<int> n = next.empty() ? std::optional<int>(v) : token_id(next);
  if (!p || !n) return 1.0 / (v + 1);
  std::uint32_t count = 0;
  for (const auto& [id, c] : bigram_[*p])
    if (id == *n) count = c;
  return (count + 1.0) / (static_cast<double>(bigram_totals_[*p]) + v + 1);
}

bool ToyModel::trained_on(const ParallelPair& pair) const {
  return std::binary_search(fingerprints_.begin(), fingerprints_.end(), pair_fingerprint(pair));
}

void ToyModel::save(std::ostream& out) const {
  out << kMagic << ' ' << kFormatVersion << '\n';
  out << "lambda " << hex(lambda_) << '\n';
  out << "position_sharpness " << hex(position_sharpness_) << '\n';
  out << "length_ratio " << hex(length_ratio_) << '\n';
  out << "source_vocab " << source_vocab_.size() << '\n';
  for (const auto& w : source_vocab_) out << w << '\n';
  out << "target_vocab " << target_vocab_.size() << '\n';
  for (const auto& w : target_vocab_) out << w << '\n';
  std::size_t entries = 0;
  for (const auto& row : lexical_) entries += row.size();
  out << "lexical " << entries << '\n';
  for (std::size_t f = 0; f < lexical_.size(); ++f)
    for (const auto& [e, t] : lexical_[f]) out << f << ' ' << e << ' ' << hex(t) << '\n';
  entries = 0;
  for (const auto& row : bigram_) entries += row.size();
  out << "bigram " << entries << '\n';
  for (std::size_t p = 0; p < bigram_.size(); ++p)
    for (const auto& [n, c] : bigram_[p]) out << p << ' ' << n << ' ' << c << '\n';
  out << "fingerprints " << fingerprints_.size() << '\n';
  char buf[32];
  for (std::uint64_t fp : fingerprints_) {
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fp));
    out << buf << '\n';
  }
}

void ToyModel::save_file(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  save(out);
  if (!out) throw IoError("write failed for " + path);
}

ToyModel ToyModel::load(std::istream& in) {
  ToyModel model;
  expect(in, kMagic);
  if (read_value<int>(in, "version") != kFormatVersion) throw ParseError("toy model: unsupported format version");
  expect(in, "lambda");
  model.lambda_ = parse_double(read_value<std::string>(in, "lambda"));
  expect(in, "position_sharpness");
  model.position_sharpness_ = parse_double(read_value<std::string>(in, "position_sharpness"));
  expect(in, "length_ratio");
  model.length_ratio_ = parse_double(read_value<std::string>(in, "length_ratio"));

  expect(in, "source_vocab");
  model.source_vocab_.resize(read_value<std::size_t>(in, "source vocabulary size"));
  for (auto& w : model.source_vocab_) w = read_value<std::string>(in, "source word");
  expect(in, "target_vocab");
  model.target_vocab_.resize(read_value<std::size_t>(in, "target vocabulary size"));
  for (auto& w : model.target_vocab_) w = read_value<std::string>(in, "target word");
  model.build_indexes();

  const std::size_t source_size = model.source_vocab_.size();
  const std::size_t v = model.target_vocab_.size();
  expect(in, "lexical");
  model.lexical_.resize(source_size);
  for (auto n = read_value<std::size_t>(in, "lexical size"); n > 0; --n) {
    const auto f = read_value<std::size_t>(in, "lexical row");
    const auto e = read_value<int>(in, "lexical column");
    const double t = parse_double(read_value<std::string>(in, "lexical value"));
    if (f >= source_size || e < 0 || static_cast<std::size_t>(e) >= v) throw ParseError("toy model: lexical index out of range");
    model.lexical_[f].emplace_back(e, t);
  }
  expect(in, "bigram");
  model.bigram_.resize(v + 1);
  model.bigram_totals_.assign(v + 1, 0);
  for (auto n = read_value<std::size_t>(in, "bigram size"); n > 0; --n) {
    const auto p = read_value<std::size_t>(in, "bigram row");
    const auto next = read_value<int>(in, "bigram column");
    const auto c = read_value<std::uint32_t>(in, "bigram count");
    if (p > v || next < 0 || static_cast<std::size_t>(next) > v) throw ParseError("toy model: bigram index out of range");
    model.bigram_[p].emplace_back(next, c);
    model.bigram_totals_[p] += c;
  }
  expect(in, "fingerprints");
  model.fingerprints_.resize(read_value<std::size_t>(in, "fingerprint count"));
  for (auto& fp : model.fingerprints_) {
    const std::string s = read_value<std::string>(in, "fingerprint");
    fp = std::strtoull(s.c_str(), nullptr, 16);
  }
  return model;
}

ToyModel ToyModel::load_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  try {
    return load(in);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

}  // namespace mqmsynth::decode
