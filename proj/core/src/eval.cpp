#include "kglp/eval.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <sstream>

#include "json.hpp"

namespace kglp {

void EvalConfig::validate() const {
  if (ks.empty()) throw ValidationError("hits cutoff list is empty");
  std::uint32_t prev = 0;
  for (std::uint32_t k : ks) {
    if (k == 0) throw ValidationError("hits cutoffs must be positive");
    if (k <= prev) throw ValidationError("hits cutoffs must be ascending");
    prev = k;
  }
}

std::vector<ScoredEntity> brute_force_rank(const Scorer& scorer,
                                           const InputSequence& input,
                                           const KnowledgeGraph& kg,
                                           const Vocabulary& vocab) {
  std::vector<ScoredEntity> ranking;
  ranking.reserve(kg.entity_count());
  for (const auto& e : kg.entities()) {
    ranking.push_back(ScoredEntity{e.id, score_entity(scorer, input, kg, vocab, e.id)});
  }
  std::sort(ranking.begin(), ranking.end(), [](const ScoredEntity& a, const ScoredEntity& b) {
    if (a.logprob != b.logprob) return a.logprob > b.logprob;
    return a.entity < b.entity;
  });
  return ranking;
}

RankFn make_brute_force_ranker(const Scorer& scorer, const KnowledgeGraph& kg,
                               const Vocabulary& vocab) {
  return [&scorer, &kg, &vocab](const Query&, const InputSequence& input) {
    return brute_force_rank(scorer, input, kg, vocab);
  };
}

RankFn make_beam_ranker(const Scorer& scorer, const EntityTrie& trie,
                        std::size_t beam_size) {
  return [&scorer, &trie, beam_size](const Query&, const InputSequence& input) {
    return constrained_beam_search(scorer, input, trie, beam_size).ranked;
  };
}

Metrics evaluate(const RankFn& rank, const KnowledgeGraph& kg,
                 const Vocabulary& vocab, const EvalConfig& cfg,
                 std::vector<PredictionRow>* predictions) {
  cfg.validate();
  if (kg.test().empty()) throw EmptyTestSetError();

  const std::uint32_t max_k = cfg.ks.back();
  std::map<std::uint32_t, std::size_t> hit_counts;
  for (std::uint32_t k : cfg.ks) hit_counts[k] = 0;

  std::vector<double> decode_ms;
  std::size_t n_queries = 0;

  for (const auto& triple : kg.test()) {
    for (Direction dir : {Direction::TailMissing, Direction::HeadMissing}) {
      if (dir == Direction::TailMissing && cfg.directions == EvalDirections::HeadOnly)
        continue;
      if (dir == Direction::HeadMissing && cfg.directions == EvalDirections::TailOnly)
        continue;

      Query q;
      q.known = dir == Direction::TailMissing ? triple.head : triple.tail;
      q.relation = triple.relation;
      q.direction = dir;
      EntityId gold = dir == Direction::TailMissing ? triple.tail : triple.head;

      auto demos = sample_demonstrations(kg, q, cfg.demo, {triple});
      InputSequence input = assemble_input(kg, q, demos, vocab, cfg.demo);

      auto start = std::chrono::steady_clock::now();
      std::vector<ScoredEntity> ranking = rank(q, input);
      auto stop = std::chrono::steady_clock::now();
      decode_ms.push_back(
          std::chrono::duration<double, std::milli>(stop - start).count());

      // Filtered protocol: other known-true completions do not take rank
      // slots away from the gold entity.
      const std::vector<EntityId>* known_true = nullptr;
      if (cfg.mode == EvalMode::Filtered) {
        known_true = &kg.known_answers(q.known, q.relation,
                                       dir == Direction::TailMissing);
      }

      std::uint32_t gold_rank = max_k + 1;
      std::uint32_t position = 0;
      for (const auto& candidate : ranking) {
        if (candidate.entity == gold) {
          gold_rank = position + 1;
          break;
        }
        if (known_true != nullptr &&
            std::binary_search(known_true->begin(), known_true->end(),
                               candidate.entity)) {
          continue;
        }
        ++position;
      }

      for (std::uint32_t k : cfg.ks) {
        if (gold_rank <= k) ++hit_counts[k];
      }
      ++n_queries;

      if (predictions != nullptr) {
        std::uint32_t rank_out = 1;
        for (const auto& candidate : ranking) {
          predictions->push_back(
              PredictionRow{q, rank_out++, candidate.entity, candidate.logprob});
          if (rank_out > cfg.beam_size) break;
        }
      }
    }
  }

  Metrics m;
  m.n_queries = n_queries;
  for (std::uint32_t k : cfg.ks) {
    m.hits[k] = n_queries == 0
                    ? 0.0
                    : static_cast<double>(hit_counts[k]) / static_cast<double>(n_queries);
  }
  if (!decode_ms.empty()) {
    double total = 0.0;
    for (double t : decode_ms) total += t;
    m.mean_decode_ms = total / static_cast<double>(decode_ms.size());
    std::vector<double> sorted = decode_ms;
    std::sort(sorted.begin(), sorted.end());
    std::size_t mid = sorted.size() / 2;
    m.median_decode_ms = sorted.size() % 2 == 1
                             ? sorted[mid]
                             : 0.5 * (sorted[mid - 1] + sorted[mid]);
  }
  return m;
}

const char* to_string(EvalMode mode) {
  return mode == EvalMode::Raw ? "raw" : "filtered";
}

const char* to_string(EvalDirections directions) {
  switch (directions) {
    case EvalDirections::TailOnly: return "tail";
    case EvalDirections::HeadOnly: return "head";
    default: return "both";
  }
}

namespace {

std::string format_double(double v, const char* fmt = "%.6f") {
  char buf[64];
  std::snprintf(buf, sizeof(buf), fmt, v);
  return buf;
}

const char* slot_name(Direction dir) {
  return dir == Direction::TailMissing ? "tail" : "head";
}

}  // namespace

std::string metrics_to_text(const Metrics& m, const std::string& dataset,
                            const EvalConfig& cfg) {
  std::ostringstream out;
  out << "dataset: " << dataset << "\n";
  out << "mode: " << to_string(cfg.mode) << "\n";
  out << "directions: " << to_string(cfg.directions) << "\n";
  out << "k: " << cfg.beam_size << "\n";
  for (const auto& [k, fraction] : m.hits) {
    out << "hits@" << k << ": " << format_double(fraction) << "\n";
  }
  out << "n_queries: " << m.n_queries << "\n";
  out << "median_decode_ms: " << format_double(m.median_decode_ms, "%.4f") << "\n";
  out << "mean_decode_ms: " << format_double(m.mean_decode_ms, "%.4f") << "\n";
  return out.str();
}

std::string metrics_to_json(const Metrics& m, const std::string& dataset,
                            const EvalConfig& cfg) {
  nlohmann::json j;
  j["dataset"] = dataset;
  j["mode"] = to_string(cfg.mode);
  j["directions"] = to_string(cfg.directions);
  j["k"] = cfg.beam_size;
  for (const auto& [k, fraction] : m.hits) {
    j["hits@" + std::to_string(k)] = fraction;
  }
  j["n_queries"] = m.n_queries;
  j["median_decode_ms"] = m.median_decode_ms;
  j["mean_decode_ms"] = m.mean_decode_ms;
  return j.dump(2) + "\n";
}

std::string predictions_to_tsv(const std::vector<PredictionRow>& rows,
                               const KnowledgeGraph& kg) {
  std::string out;
  for (const auto& row : rows) {
    out += kg.entity(row.query.known).source_id;
    out += '|';
    out += kg.relation(row.query.relation).source_id;
    out += '|';
    out += slot_name(row.query.direction);
    out += '\t';
    out += std::to_string(row.rank);
    out += '\t';
    out += kg.entity(row.entity).source_id;
    out += '\t';
    out += format_double(row.logprob, "%.9f");
    out += '\n';
  }
  return out;
}

}  // namespace kglp
