#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "kglp/beam.hpp"
#include "kglp/demonstration.hpp"
#include "kglp/kg.hpp"
#include "kglp/scorer.hpp"
#include "kglp/trie.hpp"
#include "kglp/vocabulary.hpp"

namespace kglp {

enum class EvalMode : std::uint8_t { Raw, Filtered };
enum class EvalDirections : std::uint8_t { TailOnly, HeadOnly, Both };

struct EvalConfig {
  std::vector<std::uint32_t> ks = {1, 3, 10};  // positive, ascending
  EvalMode mode = EvalMode::Filtered;
  std::size_t beam_size = 5;
  EvalDirections directions = EvalDirections::Both;
  DemonstrationConfig demo;

  void validate() const;  // throws ValidationError on a bad cutoff list
};

struct Metrics {
  std::map<std::uint32_t, double> hits;  // cutoff -> fraction of queries
  std::size_t n_queries = 0;
  double mean_decode_ms = 0.0;
  double median_decode_ms = 0.0;
};

struct PredictionRow {
  Query query;
  std::uint32_t rank;  // 1-based
  EntityId entity;
  double logprob;
};

/// Ranking strategy under evaluation: maps a query (with its assembled
/// input) to entities in descending score order.
using RankFn =
    std::function<std::vector<ScoredEntity>(const Query&, const InputSequence&)>;

/// Scores every entity with score_entity and sorts descending, ties broken
/// by ascending entity id. Linear in |E| — the score-everything baseline.
std::vector<ScoredEntity> brute_force_rank(const Scorer& scorer,
                                           const InputSequence& input,
                                           const KnowledgeGraph& kg,
                                           const Vocabulary& vocab);

RankFn make_brute_force_ranker(const Scorer& scorer, const KnowledgeGraph& kg,
                               const Vocabulary& vocab);
RankFn make_beam_ranker(const Scorer& scorer, const EntityTrie& trie,
                        std::size_t beam_size);

/// Runs every test triple through the ranker in the configured directions
/// and accumulates Hits@k. Filtered mode drops every other entity already
/// known (train/dev/test) to complete the query before taking the gold
/// rank. A gold entity missing from a truncated ranking counts as ranked
/// below every cutoff. Decode time covers the rank call only.
Metrics evaluate(const RankFn& rank, const KnowledgeGraph& kg,
                 const Vocabulary& vocab, const EvalConfig& cfg,
                 std::vector<PredictionRow>* predictions = nullptr);

/// Key-value text form of the metrics report.
std::string metrics_to_text(const Metrics& m, const std::string& dataset,
                            const EvalConfig& cfg);
/// Machine-readable form (JSON) with the same fields.
std::string metrics_to_json(const Metrics& m, const std::string& dataset,
                            const EvalConfig& cfg);

/// One "query \t rank \t entity_id \t logprob" line per prediction row,
/// queries rendered as known|relation|slot with dataset source ids.
std::string predictions_to_tsv(const std::vector<PredictionRow>& rows,
                               const KnowledgeGraph& kg);

const char* to_string(EvalMode mode);
const char* to_string(EvalDirections directions);

}  // namespace kglp
