#include "mqmsynth/decode.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace mqmsynth::decode {

namespace {

double safe_log(double p) { return std::log(std::max(p, kProbFloor)); }

double ranking_score(const Hypothesis& h, bool finished, bool length_normalize) {
  if (!length_normalize) return h.log_prob;
  const double len = static_cast<double>(h.tokens.size()) + (finished ? 1.0 : 0.0);
  return len > 0 ? h.log_prob / len : h.log_prob;
}

// Higher score first; equal scores fall back to lexicographic token order.
struct Better {
  bool finished;
  bool length_normalize;
  bool operator()(const Hypothesis& a, const Hypothesis& b) const {
    const double sa = ranking_score(a, finished, length_normalize);
    const double sb = ranking_score(b, finished, length_normalize);
    if (sa != sb) return sa > sb;
    return a.tokens < b.tokens;
  }
};

// Token ids sorted by probability, then by token string; EOS sorts after
// every real token on ties.
std::vector<int> top_k(const ScoringModel& model, const Eigen::VectorXd& dist, int k) {
  const auto& vocab = model.vocabulary();
  const int eos = model.eos_id();
  std::vector<int> ids(static_cast<std::size_t>(dist.size()));
  std::iota(ids.begin(), ids.end(), 0);
  auto before = [&](int a, int b) {
    if (dist[a] != dist[b]) return dist[a] > dist[b];
    if (a == eos || b == eos) return b == eos && a != eos;
    return vocab[a] < vocab[b];
  };
  k = std::min<int>(k, static_cast<int>(ids.size()));
  std::partial_sort(ids.begin(), ids.begin() + k, ids.end(), before);
  ids.resize(static_cast<std::size_t>(k));
  return ids;
}

DecodeResult to_result(const Hypothesis& h, bool truncated) {
  return {h.tokens, h.log_prob, h.sources, truncated};
}

DecodeResult search(const ScoringModel& model, std::span<const std::string> src,
                    std::span<const std::string> ref, std::optional<double> tau, const BeamOptions& options) {
  if (options.beam_size < 1) throw InvalidInput("beam_size must be at least 1");
  if (options.max_len < 1) throw InvalidInput("max_len must be at least 1");

  const auto& vocab = model.vocabulary();
  const int eos = model.eos_id();
  std::vector<std::optional<int>> ref_ids;
  for (const auto& t : ref) ref_ids.push_back(model.token_id(t));

  std::vector<Hypothesis> live(1);
  std::vector<Hypothesis> finished;
  std::vector<Hypothesis> candidates;
  const Better live_order{false, options.length_normalize};
  const Better finished_order{true, options.length_normalize};

  for (int step = 0; step < options.max_len && !live.empty(); ++step) {
    candidates.clear();
    for (const Hypothesis& h : live) {
      const Eigen::VectorXd dist = model.next_distribution(src, h.tokens);
      const bool ref_left = h.ref_cursor < static_cast<int>(ref.size());

      if (tau) {
        const std::optional<int> r = ref_left ? ref_ids[h.ref_cursor] : std::optional<int>(eos);
        const double p_r = r ? dist[*r] : 0.0;
        if (p_r > *tau) {
          Hypothesis next = h;
          next.log_prob += safe_log(p_r);
          if (!ref_left) {
            finished.push_back(std::move(next));
            continue;
          }
          next.tokens.push_back(ref[h.ref_cursor]);
          next.sources.push_back(TokenSource::kForced);
          ++next.ref_cursor;
          candidates.push_back(std::move(next));
          continue;
        }
      }

      for (int id : top_k(model, dist, options.beam_size)) {
        Hypothesis next = h;
        next.log_prob += safe_log(dist[id]);
        if (id == eos) {
          finished.push_back(std::move(next));
          continue;
        }
        next.tokens.push_back(vocab[id]);
        next.sources.push_back(TokenSource::kFree);
        if (tau && ref_left && ref[h.ref_cursor] == vocab[id]) ++next.ref_cursor;
        candidates.push_back(std::move(next));
      }
    }

    const std::size_t keep = std::min<std::size_t>(candidates.size(), static_cast<std::size_t>(options.beam_size));
    std::partial_sort(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(keep), candidates.end(), live_order);
    candidates.resize(keep);
    live.swap(candidates);

    // Without length normalization scores only fall, so no live hypothesis
    // can overtake the best finished one.
    if (!options.length_normalize && !finished.empty() && !live.empty()) {
      const double best_finished =
          std::min_element(finished.begin(), finished.end(), finished_order)->log_prob;
      if (best_finished >= live.front().log_prob) break;
    }
  }

  if (!finished.empty())
    return to_result(*std::min_element(finished.begin(), finished.end(), finished_order), false);
  if (live.empty()) return DecodeResult{{}, 0.0, {}, true};
  return to_result(*std::min_element(live.begin(), live.end(), live_order), true);
}

}  // namespace

DecodeResult beam_search(const ScoringModel& model, std::span<const std::string> src,
                         const BeamOptions& options) {
  return search(model, src, {}, std::nullopt, options);
}

DecodeResult constrained_beam_search(const ScoringModel& model, std::span<const std::string> src,
                                     std::span<const std::string> ref, double tau,
                                     const BeamOptions& options) {
  if (ref.empty()) throw InvalidInput("constrained_beam_search: empty reference");
  return search(model, src, ref, tau, options);
}

ForcedProbs forced_decode_probs(const ScoringModel& model, std::span<const std::string> src,
                                std::span<const std::string> target) {
  ForcedProbs out;
  out.probs.reserve(target.size());
  out.oov.reserve(target.size());
  for (std::size_t i = 0; i < target.size(); ++i) {
    const std::optional<int> id = model.token_id(target[i]);
    if (!id) {
      out.probs.push_back(kProbFloor);
      out.oov.push_back(true);
      ++out.oov_count;
      continue;
    }
    const Eigen::VectorXd dist = model.next_distribution(src, target.first(i));
    out.probs.push_back(dist[*id]);
    out.oov.push_back(false);
  }
  return out;
}

}  // namespace mqmsynth::decode
