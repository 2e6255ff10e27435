#ifndef MQMSYNTH_TESTS_FIXTURES_HPP
#define MQMSYNTH_TESTS_FIXTURES_HPP

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "mqmsynth/decode.hpp"
#include "mqmsynth/spce.hpp"

namespace fixtures {

using mqmsynth::Tokens;

class VocabModel : public mqmsynth::decode::ScoringModel {
 public:
  explicit VocabModel(std::vector<std::string> vocab) : vocab_(std::move(vocab)) {}
  const std::vector<std::string>& vocabulary() const override { return vocab_; }
  std::optional<int> token_id(std::string_view token) const override {
    for (std::size_t i = 0; i < vocab_.size(); ++i)
      if (vocab_[i] == token) return static_cast<int>(i);
    return std::nullopt;
  }

 protected:
  std::vector<std::string> vocab_;
};

// Distribution depends only on the previous token; row V is the sentence start.
class BigramTable final : public VocabModel {
 public:
  BigramTable(std::vector<std::string> vocab, std::vector<Eigen::VectorXd> rows)
      : VocabModel(std::move(vocab)), rows_(std::move(rows)) {}
  Eigen::VectorXd next_distribution(std::span<const std::string>, std::span<const std::string> prefix) const override {
    const int prev = prefix.empty() ? eos_id() : *token_id(prefix.back());
    return rows_[static_cast<std::size_t>(prev)];
  }

 private:
  std::vector<Eigen::VectorXd> rows_;
};

// Copies the source with probability one, then ends.
class CopyModel final : public VocabModel {
 public:
  using VocabModel::VocabModel;
  Eigen::VectorXd next_distribution(std::span<const std::string> src, std::span<const std::string> prefix) const override {
    Eigen::VectorXd d = Eigen::VectorXd::Zero(eos_id() + 1);
    if (prefix.size() < src.size()) d[*token_id(src[prefix.size()])] = 1.0;
    else d[eos_id()] = 1.0;
    return d;
  }
};

// Uniform over real tokens, never ends.
class UniformModel final : public VocabModel {
 public:
  using VocabModel::VocabModel;
  Eigen::VectorXd next_distribution(std::span<const std::string>, std::span<const std::string>) const override {
    Eigen::VectorXd d = Eigen::VectorXd::Constant(eos_id() + 1, 1.0 / eos_id());
    d[eos_id()] = 0.0;
    return d;
  }
};

// Three-token bigram fixture with EOS in the last column.
inline BigramTable small_bigram() {
  std::vector<Eigen::VectorXd> rows(4, Eigen::VectorXd(4));
  rows[0] << 0.10, 0.50, 0.15, 0.25;  // after a
  rows[1] << 0.40, 0.05, 0.35, 0.20;  // after b
  rows[2] << 0.30, 0.30, 0.10, 0.30;  // after c
  rows[3] << 0.45, 0.35, 0.20, 0.00;  // start
  return BigramTable({"a", "b", "c"}, std::move(rows));
}

// "take some action with his consent"
inline mqmsynth::spce::DepTree consent_tree() { return mqmsynth::spce::DepTree({-1, 2, 0, 5, 5, 0}); }

// Literal closure loop with ancestor-set LCA.
inline mqmsynth::spce::Interval naive_spce(const std::vector<int>& heads, int l, int r) {
  auto ancestors = [&](int v) {
    std::vector<int> chain;
    for (; v != -1; v = heads[static_cast<std::size_t>(v)]) chain.push_back(v);
    return chain;
  };
  auto naive_lca = [&](const std::vector<int>& set) {
    std::vector<int> common = ancestors(set[0]);
    for (int v : set) {
      const std::vector<int> a = ancestors(v);
      std::vector<int> keep;
      for (int c : common)
        for (int x : a)
          if (c == x) keep.push_back(c);
      common = keep;
    }
    return common.front();
  };
  std::vector<bool> in(heads.size(), false);
  for (int i = l; i <= r; ++i) in[static_cast<std::size_t>(i)] = true;
  while (true) {
    std::vector<bool> next = in;
    std::vector<int> set;
    for (std::size_t i = 0; i < in.size(); ++i)
      if (in[i]) set.push_back(static_cast<int>(i));
    const int a = naive_lca(set);
    for (int p : set)
      for (int v = p; v != a; v = heads[static_cast<std::size_t>(v)]) next[static_cast<std::size_t>(v)] = true;
    next[static_cast<std::size_t>(a)] = true;
    int lo = static_cast<int>(in.size()), hi = -1;
    for (std::size_t i = 0; i < next.size(); ++i)
      if (next[i]) {
        lo = std::min(lo, static_cast<int>(i));
        hi = std::max(hi, static_cast<int>(i));
      }
    for (int i = lo; i <= hi; ++i) next[static_cast<std::size_t>(i)] = true;
    if (next == in) return {lo, hi};
    in = next;
  }
}

// Every head vector of n nodes that forms a single rooted tree.
inline std::vector<std::vector<int>> all_trees(int n) {
  std::vector<std::vector<int>> out;
  std::vector<int> heads(static_cast<std::size_t>(n), -1);
  auto valid = [&] {
    int roots = 0;
    for (int h : heads) roots += h == -1;
    if (roots != 1) return false;
    for (int v = 0; v < n; ++v) {
      int steps = 0;
      for (int u = v; u != -1; u = heads[static_cast<std::size_t>(u)])
        if (++steps > n) return false;
    }
    return true;
  };
  std::vector<int> digit(static_cast<std::size_t>(n), 0);
  while (true) {
    for (int i = 0; i < n; ++i) heads[static_cast<std::size_t>(i)] = digit[static_cast<std::size_t>(i)] - 1;
    bool self = false;
    for (int i = 0; i < n; ++i) self |= heads[static_cast<std::size_t>(i)] == i;
    if (!self && valid()) out.push_back(heads);
    int i = 0;
    while (i < n && ++digit[static_cast<std::size_t>(i)] > n) digit[static_cast<std::size_t>(i++)] = 0;
    if (i == n) break;
  }
  return out;
}

}  // namespace fixtures

#endif  // MQMSYNTH_TESTS_FIXTURES_HPP
