#ifndef MQMSYNTH_TER_HPP
#define MQMSYNTH_TER_HPP

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mqmsynth/core.hpp"

namespace mqmsynth::ter {

// INS is a hypothesis token with no reference counterpart; DEL is a
// reference token missing from the hypothesis.
enum class EditKind { kMatch, kSub, kIns, kDel, kShift };

std::string_view to_string(EditKind k) noexcept;

struct EditOp {
  EditKind kind = EditKind::kMatch;
  std::optional<int> hyp_index;  // index into the original (unshifted) hypothesis
  std::optional<int> ref_index;
  std::optional<int> shift_len;
  std::optional<int> shift_to;   // SHIFT only: insertion point after removing the block

  friend bool operator==(const EditOp&, const EditOp&) = default;
};

/// SHIFT ops come first, in the order they were applied, followed by the
/// edit-distance path of the shifted hypothesis against the reference.
struct Alignment {
  std::vector<EditOp> ops;
  int edit_count = 0;
  int ref_len = 0;
  int hyp_len = 0;

  int shift_count() const;
};

struct Options {
  bool shifts = true;
  int max_shift_len = 10;
};

/// Plain Levenshtein distance with unit costs.
int levenshtein(std::span<const std::string> hyp, std::span<const std::string> ref);

/// Greedy-shift TER alignment of hyp against ref. Exact, case-sensitive
/// token comparison.
Alignment align(std::span<const std::string> hyp, std::span<const std::string> ref,
                const Options& options = {});

/// MATCH -> OK; SUB and INS -> BAD. Tokens matched after a shift are OK.
WordLabels coarse_labels(const Alignment& a, int hyp_len);

/// edit_count / ref_len.
double score(const Alignment& a);

/// Tab-separated `op hyp_idx ref_idx` lines, `-` for an absent index.
void write_trace(std::ostream& out, const Alignment& a);

}  // namespace mqmsynth::ter

#endif  // MQMSYNTH_TER_HPP
