#pragma once

#include <cstdint>
#include <vector>

#include "kglp/demonstration.hpp"
#include "kglp/scorer.hpp"
#include "kglp/trie.hpp"

namespace kglp {

/// A partial decode path: decoder prefix, cumulative natural-log
/// probability, and the trie node the prefix ends on.
struct BeamHypothesis {
  TokenSequence tokens;
  double logprob = 0.0;
  EntityTrie::NodeIndex node = EntityTrie::kRoot;
  bool finished = false;
};

struct ScoredEntity {
  EntityId entity;
  double logprob;
};

struct DecodeResult {
  /// Descending logprob; ties break to the ascending entity id. At most
  /// beam_size entries, pairwise-distinct entities.
  std::vector<ScoredEntity> ranked;
  /// Softmax over the returned logprobs (display normalization only).
  std::vector<double> display_probs;
  /// Full token paths (EOS included), aligned with `ranked`.
  std::vector<TokenSequence> sequences;
};

/// Beam search over the trie. At each step every live hypothesis expands
/// only along its node's children (everything else is masked out);
/// hypothesis scores stay sums of the scorer's unconstrained conditionals —
/// no renormalization over the allowed set and no length normalization.
/// Hypotheses that consume [EOS] retire to the result pool and free their
/// expansion slot. With beam_size >= |E| the search is exhaustive.
DecodeResult constrained_beam_search(const Scorer& scorer,
                                     const InputSequence& input,
                                     const EntityTrie& trie,
                                     std::size_t beam_size);

/// Total log-probability of entity e's full target sequence (EOS included)
/// under the scorer: the sum the beam search would assign its path.
double score_entity(const Scorer& scorer, const InputSequence& input,
                    const KnowledgeGraph& kg, const Vocabulary& vocab,
                    EntityId e);

/// Softmax of a logprob vector, stable under shifting.
std::vector<double> softmax(const std::vector<double>& logprobs);

}  // namespace kglp
