#include "mqmsynth/ter.hpp"

#include <algorithm>
#include <ostream>
#include <unordered_map>

namespace mqmsynth::ter {

namespace {

// Two-row Levenshtein over interned ids. `row` is scratch space.
int distance(std::span<const int> hyp, std::span<const int> ref, std::vector<int>& row) {
  const std::size_t m = ref.size();
  row.resize(m + 1);
  for (std::size_t j = 0; j <= m; ++j) row[j] = static_cast<int>(j);
  for (std::size_t i = 1; i <= hyp.size(); ++i) {
    int diag = row[0];
    row[0] = static_cast<int>(i);
    for (std::size_t j = 1; j <= m; ++j) {
      const int up = row[j];
      const int sub = diag + (hyp[i - 1] == ref[j - 1] ? 0 : 1);
      row[j] = std::min({sub, up + 1, row[j - 1] + 1});
      diag = up;
    }
  }
  return row[m];
}

struct Interned {
  std::vector<int> hyp;
  std::vector<int> ref;
};

Interned intern(std::span<const std::string> hyp, std::span<const std::string> ref) {
  std::unordered_map<std::string_view, int> ids;
  auto id = [&ids](const std::string& s) {
    auto [it, inserted] = ids.try_emplace(s, static_cast<int>(ids.size()));
    return it->second;
  };
  Interned out;
  for (const auto& t : ref) out.ref.push_back(id(t));
  for (const auto& t : hyp) out.hyp.push_back(id(t));
  return out;
}

// Moves block [start, start+len) so that it begins at `dest` in the
// resulting sequence.
template <typename T>
void apply_shift(std::vector<T>& seq, int start, int len, int dest) {
  std::vector<T> block(seq.begin() + start, seq.begin() + start + len);
  seq.erase(seq.begin() + start, seq.begin() + start + len);
  seq.insert(seq.begin() + dest, block.begin(), block.end());
}

struct Shift {
  int start = 0;
  int len = 0;
  int dest = 0;
  int gain = 0;
};

std::optional<Shift> best_shift(const std::vector<int>& hyp, const std::vector<int>& ref,
                                int current, int max_len, std::vector<int>& row) {
  const int n = static_cast<int>(hyp.size());
  std::optional<Shift> best;
  std::vector<int> candidate;
  candidate.reserve(hyp.size());
  for (int len = 1; len <= std::min(max_len, n); ++len) {
    for (int start = 0; start + len <= n; ++start) {
      for (int dest = 0; dest + len <= n; ++dest) {
        if (dest == start) continue;
        candidate = hyp;
        apply_shift(candidate, start, len, dest);
        const int gain = current - distance(candidate, ref, row);
        if (gain > 0 && (!best || gain > best->gain)) best = Shift{start, len, dest, gain};
      }
    }
  }
  return best;
}

}  // namespace

std::string_view to_string(EditKind k) noexcept {
  switch (k) {
    case EditKind::kMatch: return "MATCH";
    case EditKind::kSub: return "SUB";
    case EditKind::kIns: return "INS";
    case EditKind::kDel: return "DEL";
    case EditKind::kShift: return "SHIFT";
  }
  return "MATCH";
}

int Alignment::shift_count() const {
  return static_cast<int>(std::count_if(ops.begin(), ops.end(),
                                        [](const EditOp& op) { return op.kind == EditKind::kShift; }));
}

int levenshtein(std::span<const std::string> hyp, std::span<const std::string> ref) {
  const Interned ids = intern(hyp, ref);
  std::vector<int> row;
  return distance(ids.hyp, ids.ref, row);
}

Alignment align(std::span<const std::string> hyp, std::span<const std::string> ref,
                const Options& options) {
  Interned ids = intern(hyp, ref);
  const int n = static_cast<int>(hyp.size());
  const int m = static_cast<int>(ref.size());

  Alignment out;
  out.ref_len = m;
  out.hyp_len = n;

  // order[k] = original hypothesis index now at position k.
  std::vector<int> order(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) order[i] = i;

  std::vector<int> row;
  int current = distance(ids.hyp, ids.ref, row);
  if (options.shifts && options.max_shift_len > 0) {
    while (current > 0) {
      const auto shift = best_shift(ids.hyp, ids.ref, current, options.max_shift_len, row);
      if (!shift) break;
      out.ops.push_back({EditKind::kShift, order[shift->start], std::nullopt, shift->len, shift->dest});
      apply_shift(ids.hyp, shift->start, shift->len, shift->dest);
      apply_shift(order, shift->start, shift->len, shift->dest);
      current -= shift->gain;
    }
  }

  // Full DP table for the backtrace.
  const auto& h = ids.hyp;
  const auto& r = ids.ref;
  std::vector<int> d(static_cast<std::size_t>((n + 1) * (m + 1)));
  auto at = [&d, m](int i, int j) -> int& { return d[static_cast<std::size_t>(i * (m + 1) + j)]; };
  for (int i = 0; i <= n; ++i) at(i, 0) = i;
  for (int j = 0; j <= m; ++j) at(0, j) = j;
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= m; ++j)
      at(i, j) = std::min({at(i - 1, j - 1) + (h[i - 1] == r[j - 1] ? 0 : 1), at(i - 1, j) + 1,
                           at(i, j - 1) + 1});

  std::vector<EditOp> path;
  int i = n;
  int j = m;
  while (i > 0 || j > 0) {
    if (i > 0 && j > 0 && h[i - 1] == r[j - 1] && at(i, j) == at(i - 1, j - 1)) {
      path.push_back({EditKind::kMatch, order[i - 1], j - 1, std::nullopt, std::nullopt});
      --i, --j;
    } else if (i > 0 && j > 0 && at(i, j) == at(i - 1, j - 1) + 1) {
      path.push_back({EditKind::kSub, order[i - 1], j - 1, std::nullopt, std::nullopt});
      --i, --j;
    } else if (i > 0 && at(i, j) == at(i - 1, j) + 1) {
      path.push_back({EditKind::kIns, order[i - 1], std::nullopt, std::nullopt, std::nullopt});
      --i;
    } else {
      path.push_back({EditKind::kDel, std::nullopt, j - 1, std::nullopt, std::nullopt});
      --j;
    }
  }
  out.ops.insert(out.ops.end(), path.rbegin(), path.rend());
  out.edit_count = out.shift_count() + at(n, m);
  return out;
}

WordLabels coarse_labels(const Alignment& a, int hyp_len) {
  if (hyp_len != a.hyp_len) throw InvalidInput("coarse_labels: alignment covers a different length");
  WordLabels labels(static_cast<std::size_t>(hyp_len), WordLabel::kBad);
  for (const EditOp& op : a.ops)
    if (op.kind == EditKind::kMatch) labels[static_cast<std::size_t>(*op.hyp_index)] = WordLabel::kOk;
  return labels;
}

double score(const Alignment& a) {
  if (a.ref_len <= 0) throw InvalidInput("ter score: empty reference");
  return static_cast<double>(a.edit_count) / a.ref_len;
}

void write_trace(std::ostream& out, const Alignment& a) {
  auto idx = [](const std::optional<int>& v) { return v ? std::to_string(*v) : std::string("-"); };
  for (const EditOp& op : a.ops) out << to_string(op.kind) << '\t' << idx(op.hyp_index) << '\t' << idx(op.ref_index) << '\n';
}

}  // namespace mqmsynth::ter
