#include <doctest.h>

#include <sstream>

#include "mqmsynth/rng.hpp"
#include "mqmsynth/ter.hpp"

using namespace mqmsynth;
using ter::EditKind;

namespace {

int dp_distance(const Tokens& a, const Tokens& b) {
  std::vector<std::vector<int>> d(a.size() + 1, std::vector<int>(b.size() + 1));
  for (std::size_t i = 0; i <= a.size(); ++i) d[i][0] = static_cast<int>(i);
  for (std::size_t j = 0; j <= b.size(); ++j) d[0][j] = static_cast<int>(j);
  for (std::size_t i = 1; i <= a.size(); ++i)
    for (std::size_t j = 1; j <= b.size(); ++j)
      d[i][j] = std::min({d[i - 1][j] + 1, d[i][j - 1] + 1, d[i - 1][j - 1] + (a[i - 1] != b[j - 1])});
  return d[a.size()][b.size()];
}

std::vector<Tokens> all_sequences(int max_len) {
  std::vector<Tokens> out{{}};
  for (std::size_t start = 0; start < out.size(); ++start) {
    if (static_cast<int>(out[start].size()) == max_len) continue;
    for (const char* s : {"a", "b", "c"}) {
      Tokens t = out[start];
      t.push_back(s);
      out.push_back(t);
    }
  }
  return out;
}

Tokens random_tokens(Rng& rng, int max_len, int alphabet) {
  Tokens t(rng.below(static_cast<std::uint64_t>(max_len) + 1));
  for (auto& x : t) x = std::string(1, static_cast<char>('a' + rng.below(static_cast<std::uint64_t>(alphabet))));
  return t;
}

}  // namespace

TEST_CASE("identity alignment") {
  const Tokens t{"a", "b", "c"};
  const auto a = ter::align(t, t);
  CHECK(a.edit_count == 0);
  REQUIRE(a.ops.size() == 3);
  for (const auto& op : a.ops) CHECK(op.kind == EditKind::kMatch);
  CHECK(ter::score(a) == 0.0);
  CHECK(ter::coarse_labels(a, 3) == WordLabels(3, WordLabel::kOk));
}

TEST_CASE("single substitution") {
  const auto a = ter::align(Tokens{"a", "x", "c"}, Tokens{"a", "b", "c"}, {.shifts = false});
  CHECK(a.edit_count == 1);
  REQUIRE(a.ops.size() == 3);
  CHECK(a.ops[1] == ter::EditOp{EditKind::kSub, 1, 1, std::nullopt, std::nullopt});
  CHECK(ter::coarse_labels(a, 3) == WordLabels{WordLabel::kOk, WordLabel::kBad, WordLabel::kOk});
  CHECK(ter::score(ter::align(Tokens{"a", "x", "c", "d"}, Tokens{"a", "b", "c", "d"})) == 0.25);
}

TEST_CASE("one block shift") {
  const auto a = ter::align(Tokens{"c", "a", "b"}, Tokens{"a", "b", "c"});
  CHECK(a.edit_count == 1);
  CHECK(a.shift_count() == 1);
  REQUIRE(a.ops.size() == 4);
  CHECK(a.ops[0].kind == EditKind::kShift);
  CHECK(a.ops[0].hyp_index == 0);
  CHECK(a.ops[0].shift_len == 1);
  for (std::size_t i = 1; i < 4; ++i) CHECK(a.ops[i].kind == EditKind::kMatch);
  CHECK(ter::score(a) == doctest::Approx(1.0 / 3.0));
  CHECK(ter::coarse_labels(a, 3) == WordLabels(3, WordLabel::kOk));
}

TEST_CASE("deletions mark no hypothesis token") {
  const auto a = ter::align(Tokens{"a", "b"}, Tokens{"a", "b", "c"});
  CHECK(a.edit_count == 1);
  CHECK(ter::coarse_labels(a, 2) == WordLabels(2, WordLabel::kOk));
  CHECK_THROWS_AS(ter::coarse_labels(a, 3), InvalidInput);
}

TEST_CASE("without shifts the edit count is the Levenshtein distance") {
  const auto seqs = all_sequences(4);
  for (const auto& h : seqs)
    for (const auto& r : seqs) {
      const auto a = ter::align(h, r, {.shifts = false});
      REQUIRE(a.edit_count == dp_distance(h, r));
      CHECK(ter::levenshtein(h, r) == a.edit_count);
    }
}

TEST_CASE("shifts never cost more than plain edits") {
  Rng rng(5);
  for (int trial = 0; trial < 2000; ++trial) {
    const Tokens h = random_tokens(rng, 9, 4);
    const Tokens r = random_tokens(rng, 9, 4);
    const auto a = ter::align(h, r);
    REQUIRE(a.edit_count <= dp_distance(h, r));
    const auto labels = ter::coarse_labels(a, static_cast<int>(h.size()));
    int matched = 0;
    for (const auto& op : a.ops) matched += op.kind == EditKind::kMatch;
    int ok = 0;
    for (auto l : labels) ok += l == WordLabel::kOk;
    CHECK(ok == matched);
  }
}

TEST_CASE("trace lists one operation per line") {
  const auto a = ter::align(Tokens{"a", "x"}, Tokens{"a", "b", "c"}, {.shifts = false});
  std::ostringstream out;
  ter::write_trace(out, a);
  CHECK(out.str() == "MATCH\t0\t0\nDEL\t-\t1\nSUB\t1\t2\n");
}
