#ifndef MQMSYNTH_SPCE_HPP
#define MQMSYNTH_SPCE_HPP

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mqmsynth/core.hpp"

namespace mqmsynth::spce {

/// Dependency tree over the tokens of one sentence. Node i is token i;
/// head(i) is its parent or kRoot for the single sentence head.
class DepTree {
 public:
  static constexpr int kRoot = -1;

  DepTree() = default;
  /// Throws InvalidInput unless `heads` forms a single rooted tree.
  explicit DepTree(std::vector<int> heads);

  int size() const { return static_cast<int>(heads_.size()); }
  int head(int node) const { return heads_[static_cast<std::size_t>(node)]; }
  int depth(int node) const { return depth_[static_cast<std::size_t>(node)]; }
  int root() const { return root_; }
  const std::vector<int>& heads() const { return heads_; }

 private:
  std::vector<int> heads_;
  std::vector<int> depth_;
  int root_ = kRoot;
};

/// Inclusive token interval.
struct Interval {
  int l = 0;
  int r = 0;
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Reads blank-line separated CoNLL-U sentences. Comment, multiword-token
/// (`1-2`) and empty-node (`1.1`) lines are skipped. Errors name the line.
std::vector<DepTree> parse_conllu(std::string_view text);
std::vector<DepTree> read_conllu_file(const std::string& path);

/// Minimal CoNLL-U writer (FORM and HEAD columns filled, others `_`).
void write_conllu(std::ostream& out, const DepTree& tree, std::span<const std::string> forms);

/// Deepest node that is an ancestor-or-self of every node in `nodes`.
int lca(const DepTree& tree, std::span<const int> nodes);

/// Candidate sets visited by one spce() call, one entry per iteration.
using Trace = std::vector<std::vector<int>>;

/// Shortest phrase covering the error interval: iterate LCA, path-to-LCA
/// closure and contiguity closure until the candidate set stops growing.
Interval expand(const DepTree& tree, Interval errors, Trace* trace = nullptr);

/// Expands every maximal non-OK run, merges overlapping or adjacent
/// phrases and gives each phrase the worst original severity inside it.
std::vector<ErrorSpan> aggregate_spans(const DepTree& tree, std::span<const Severity> severities,
                                       Trace* trace = nullptr);

}  // namespace mqmsynth::spce

#endif  // MQMSYNTH_SPCE_HPP
