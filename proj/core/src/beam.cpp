#include "kglp/beam.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace kglp {

namespace {

struct Finished {
  EntityId entity;
  double logprob;
  TokenSequence tokens;
};

}  // namespace

std::vector<double> softmax(const std::vector<double>& logprobs) {
  std::vector<double> out(logprobs.size());
  if (logprobs.empty()) return out;
  double max = *std::max_element(logprobs.begin(), logprobs.end());
  double sum = 0.0;
  for (std::size_t i = 0; i < logprobs.size(); ++i) {
    out[i] = std::exp(logprobs[i] - max);
    sum += out[i];
  }
  for (double& p : out) p /= sum;
  return out;
}

DecodeResult constrained_beam_search(const Scorer& scorer,
                                     const InputSequence& input,
                                     const EntityTrie& trie,
                                     std::size_t beam_size) {
  if (beam_size == 0) throw std::invalid_argument("beam size must be >= 1");
  if (trie.empty()) throw EmptyTrieError();

  std::vector<BeamHypothesis> active(1);
  std::vector<BeamHypothesis> candidates;
  std::vector<Finished> finished;
  std::vector<double> logprobs;

  while (!active.empty()) {
    candidates.clear();
    for (const auto& hyp : active) {
      scorer.next_token_logprobs(input, hyp.tokens, logprobs);
      for (const auto& [token, child] : trie.node(hyp.node).children) {
        double score = hyp.logprob + logprobs[token.value];
        TokenSequence tokens = hyp.tokens;
        tokens.push_back(token);
        if (trie.is_terminal(child)) {
          // Retired hypotheses do not occupy expansion slots.
          finished.push_back(
              Finished{*trie.node(child).entity, score, std::move(tokens)});
        } else {
          candidates.push_back(
              BeamHypothesis{std::move(tokens), score, child, false});
        }
      }
    }
    // Top-k by score; stable so equal scores keep their deterministic
    // generation order.
    std::stable_sort(candidates.begin(), candidates.end(),
                     [](const BeamHypothesis& a, const BeamHypothesis& b) {
                       return a.logprob > b.logprob;
                     });
    if (candidates.size() > beam_size) candidates.resize(beam_size);
    active.swap(candidates);
  }

  std::sort(finished.begin(), finished.end(), [](const Finished& a, const Finished& b) {
    if (a.logprob != b.logprob) return a.logprob > b.logprob;
    return a.entity < b.entity;
  });
  if (finished.size() > beam_size) finished.resize(beam_size);

  DecodeResult result;
  result.ranked.reserve(finished.size());
  result.sequences.reserve(finished.size());
  std::vector<double> ranked_logprobs;
  ranked_logprobs.reserve(finished.size());
  for (auto& f : finished) {
    result.ranked.push_back(ScoredEntity{f.entity, f.logprob});
    result.sequences.push_back(std::move(f.tokens));
    ranked_logprobs.push_back(f.logprob);
  }
  result.display_probs = softmax(ranked_logprobs);
  return result;
}

double score_entity(const Scorer& scorer, const InputSequence& input,
                    const KnowledgeGraph& kg, const Vocabulary& vocab,
                    EntityId e) {
  TargetSequence target = assemble_target(kg, e, vocab);
  TokenSequence prefix;
  prefix.reserve(target.tokens.size());
  double total = 0.0;
  std::vector<double> logprobs;
  for (TokenId t : target.tokens) {
    scorer.next_token_logprobs(input, prefix, logprobs);
    total += logprobs[t.value];
    prefix.push_back(t);
  }
  return total;
}

}  // namespace kglp
