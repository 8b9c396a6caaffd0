#pragma once

#include <cstdint>
#include <vector>

#include "kglp/ids.hpp"
#include "kglp/kg.hpp"
#include "kglp/vocabulary.hpp"

namespace kglp {

enum class Direction : std::uint8_t { TailMissing, HeadMissing };

/// A link-prediction query: the known entity, the relation, and which slot
/// is missing.
struct Query {
  EntityId known;
  RelationId relation;
  Direction direction = Direction::TailMissing;

  friend bool operator==(const Query&, const Query&) = default;
};

struct DemonstrationConfig {
  std::uint32_t count = 2;  // demonstrations per query ("m")
  std::uint64_t seed = 0;
  std::uint32_t max_demo_tokens = 32;  // cap per rendered demonstration
  bool sep_between_demos = false;      // off: demonstrations concatenate directly
};

/// Encoder input:  [BOS] demo-block [SEP] query-block [SEP]
/// with demo-block the sampled demonstrations rendered back to back
/// (possibly empty) and query-block the known entity's description tokens
/// followed by the relation text tokens ([REV]-prefixed for head queries).
/// Carries the originating query so scorers can condition on it.
struct InputSequence {
  TokenSequence tokens;
  Query query;
};

/// Decoder target:  [C:<category>] name-tokens [D:<id>]? [EOS]
struct TargetSequence {
  TokenSequence tokens;
};

/// Per-query RNG stream: mixes the run seed with the query so each query
/// draws its own deterministic demonstrations.
std::uint64_t derive_query_seed(std::uint64_t seed, const Query& q);

/// Up to cfg.count training triples with relation q.relation, never one of
/// `exclude` (callers put the query's gold triple there when it is known,
/// so demonstrations cannot leak the answer). Deterministic given
/// (kg, q, cfg.seed, exclude):
///   - when at most cfg.count candidates remain after exclusion, all of
///     them are returned in train-split order;
///   - otherwise cfg.count distinct train positions are drawn uniformly
///     without replacement (std::mt19937_64 seeded with
///     derive_query_seed(cfg.seed, q); each draw is `rng() % bucket_size`,
///     redrawing on repeats and excluded triples) and returned in draw
///     order.
std::vector<Triple> sample_demonstrations(const KnowledgeGraph& kg, const Query& q,
                                          const DemonstrationConfig& cfg,
                                          const std::vector<Triple>& exclude);

/// Renders demonstrations and the query block into the encoder input.
/// Demonstrations use entity names; the query block uses the known
/// entity's description (truncated to kg.config().max_description_tokens).
InputSequence assemble_input(const KnowledgeGraph& kg, const Query& q,
                             const std::vector<Triple>& demos,
                             const Vocabulary& vocab,
                             const DemonstrationConfig& cfg = {});

/// Target sequence for entity e: its lowest-frequency category token, the
/// tokens of its name, the reserved discriminator when the vocabulary
/// assigned one, and [EOS]. Injective over the entity set.
TargetSequence assemble_target(const KnowledgeGraph& kg, EntityId e,
                               const Vocabulary& vocab);

}  // namespace kglp
