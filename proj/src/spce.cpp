#include "mqmsynth/spce.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>

namespace mqmsynth::spce {

DepTree::DepTree(std::vector<int> heads) : heads_(std::move(heads)) {
  const int n = size();
  if (n == 0) throw InvalidInput("dependency tree has no nodes");
  for (int i = 0; i < n; ++i) {
    const int h = heads_[i];
    if (h == kRoot) {
      if (root_ != kRoot) throw InvalidInput("dependency tree has more than one root");
      root_ = i;
    } else if (h < 0 || h >= n || h == i) {
      throw InvalidInput("node " + std::to_string(i) + " has invalid head " + std::to_string(h));
    }
  }
  if (root_ == kRoot) throw InvalidInput("dependency tree has no root");

  // Depths by walking up with memoization; -2 marks "on the current walk".
  depth_.assign(static_cast<std::size_t>(n), -1);
  depth_[root_] = 0;
  std::vector<int> stack;
  for (int i = 0; i < n; ++i) {
    int v = i;
    while (depth_[v] < 0) {
      if (depth_[v] == -2) throw InvalidInput("dependency tree has a cycle through node " + std::to_string(v));
      depth_[v] = -2;
      stack.push_back(v);
      v = heads_[v];
    }
    int d = depth_[v];
    while (!stack.empty()) {
      depth_[stack.back()] = ++d;
      stack.pop_back();
    }
  }
}

std::vector<DepTree> parse_conllu(std::string_view text) {
  std::vector<DepTree> trees;
  std::vector<int> heads;       // raw HEAD column: 1-based, 0 for the root
  std::vector<int> head_lines;  // source line of each word

  auto finish = [&]() {
    if (heads.empty()) return;
    const int n = static_cast<int>(heads.size());
    for (int i = 0; i < n; ++i) {
      if (heads[i] < 0 || heads[i] > n)
        throw ParseError("line " + std::to_string(head_lines[i]) + ": HEAD " + std::to_string(heads[i]) +
                         " out of range for a sentence of " + std::to_string(n) + " words");
      --heads[i];
    }
    try {
      trees.emplace_back(std::move(heads));
    } catch (const InvalidInput& e) {
      throw ParseError("sentence starting at line " + std::to_string(head_lines.front()) + ": " + e.what());
    }
    heads.clear();
    head_lines.clear();
  };

  int line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    if (line.find_first_not_of(" \t") == std::string_view::npos) {
      finish();
      continue;
    }
    if (line.front() == '#') continue;

    std::vector<std::string_view> cols;
    for (std::size_t start = 0;;) {
      const std::size_t tab = line.find('\t', start);
      cols.push_back(line.substr(start, tab == std::string_view::npos ? std::string_view::npos : tab - start));
      if (tab == std::string_view::npos) break;
      start = tab + 1;
    }
    const std::string where = "line " + std::to_string(line_no);
    if (cols.size() != 10) throw ParseError(where + ": expected 10 columns, found " + std::to_string(cols.size()));
    const std::string_view id = cols[0];
    if (id.find('-') != std::string_view::npos || id.find('.') != std::string_view::npos) continue;

    auto to_int = [&where](std::string_view s, const char* what) {
      int v = 0;
      auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
      if (ec != std::errc() || p != s.data() + s.size())
        throw ParseError(where + ": bad " + what + " '" + std::string(s) + "'");
      return v;
    };
    const int word_id = to_int(id, "ID");
    if (word_id != static_cast<int>(heads.size()) + 1)
      throw ParseError(where + ": word ID " + std::to_string(word_id) + " out of sequence");
    heads.push_back(to_int(cols[6], "HEAD"));
    head_lines.push_back(line_no);
  }
  finish();
  return trees;
}

std::vector<DepTree> read_conllu_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse_conllu(buffer.str());
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

void write_conllu(std::ostream& out, const DepTree& tree, std::span<const std::string> forms) {
  for (int i = 0; i < tree.size(); ++i) {
    const std::string form = i < static_cast<int>(forms.size()) ? forms[i] : "_";
    out << i + 1 << '\t' << form << "\t_\t_\t_\t_\t" << tree.head(i) + 1 << "\t_\t_\t_\n";
  }
  out << '\n';
}

int lca(const DepTree& tree, std::span<const int> nodes) {
  if (nodes.empty()) throw InvalidInput("lca of an empty node set");
  int a = nodes[0];
  for (std::size_t k = 1; k < nodes.size(); ++k) {
    int b = nodes[k];
    while (tree.depth(a) > tree.depth(b)) a = tree.head(a);
    while (tree.depth(b) > tree.depth(a)) b = tree.head(b);
    while (a != b) {
      a = tree.head(a);
      b = tree.head(b);
    }
  }
  return a;
}

Interval expand(const DepTree& tree, Interval errors, Trace* trace) {
  const int n = tree.size();
  if (errors.l < 0 || errors.l > errors.r || errors.r >= n)
    throw InvalidInput("error interval out of range");

  // The candidate set is contiguous on entry and after every iteration.
  Interval cur = errors;
  std::vector<int> members;
  while (true) {
    members.clear();
    for (int i = cur.l; i <= cur.r; ++i) members.push_back(i);
    if (trace) trace->push_back(members);

    const int a = lca(tree, members);
    Interval next = cur;
    for (int p : members) {
      while (p != a) {
        p = tree.head(p);
        next.l = std::min(next.l, p);
        next.r = std::max(next.r, p);
      }
    }
    if (next == cur) return cur;
    cur = next;
  }
}

std::vector<ErrorSpan> aggregate_spans(const DepTree& tree, std::span<const Severity> severities,
                                       Trace* trace) {
  if (static_cast<int>(severities.size()) != tree.size())
    throw InvalidInput("aggregate_spans: " + std::to_string(severities.size()) + " severities for a tree of " +
                       std::to_string(tree.size()) + " nodes");
  std::vector<ErrorSpan> phrases;
  for (const ErrorSpan& run : spans_from_severities(severities)) {
    const Interval phrase = expand(tree, {run.start, run.end}, trace);
    phrases.push_back({phrase.l, phrase.r, Severity::kOk});
  }
  std::sort(phrases.begin(), phrases.end(),
            [](const ErrorSpan& x, const ErrorSpan& y) { return x.start < y.start || (x.start == y.start && x.end < y.end); });

  std::vector<ErrorSpan> merged;
  for (const ErrorSpan& p : phrases) {
    if (!merged.empty() && p.start <= merged.back().end + 1)
      merged.back().end = std::max(merged.back().end, p.end);
    else
      merged.push_back(p);
  }
  for (ErrorSpan& span : merged)
    for (int i = span.start; i <= span.end; ++i) span.severity = std::max(span.severity, severities[i]);
  return merged;
}

}  // namespace mqmsynth::spce
