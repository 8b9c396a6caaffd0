#pragma once

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <string>
#include <unordered_map>
#include <vector>

#include "kglp/beam.hpp"
#include "kglp/dataset_io.hpp"
#include "kglp/demonstration.hpp"
#include "kglp/scorer.hpp"
#include "kglp/trie.hpp"
#include "kglp/vocabulary.hpp"

namespace kglp::test {

inline std::filesystem::path fixture_dir() {
  return std::filesystem::path(KGLP_FIXTURE_DIR);
}

/// Fixture graph with everything derived from it, loaded once.
struct FixtureBundle {
  KnowledgeGraph kg;
  Vocabulary vocab;
  EntityTrie trie;

  static const FixtureBundle& get() {
    static FixtureBundle bundle = [] {
      FixtureBundle b;
      b.kg = load_dataset(fixture_dir());
      b.vocab = build_vocabulary(b.kg);
      b.trie = build_trie(b.kg, b.vocab);
      return b;
    }();
    return bundle;
  }
};

inline EntityId eid(const KnowledgeGraph& kg, const std::string& source_id) {
  auto id = kg.find_entity(source_id);
  if (!id) throw Error("fixture entity not found: " + source_id);
  return *id;
}

inline RelationId rid(const KnowledgeGraph& kg, const std::string& source_id) {
  auto id = kg.find_relation(source_id);
  if (!id) throw Error("fixture relation not found: " + source_id);
  return *id;
}

/// Deterministic pseudo-random distributions: a seeded hash of
/// (query, prefix) drives per-token weights, normalized to sum to 1.
class RandomScorer final : public Scorer {
 public:
  RandomScorer(std::size_t vocab_size, std::uint64_t seed)
      : vocab_size_(vocab_size), seed_(seed) {}

  void next_token_logprobs(const InputSequence& input, const TokenSequence& prefix,
                           std::vector<double>& out) const override {
    std::uint64_t h = seed_;
    auto mix = [&h](std::uint64_t v) {
      h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    };
    mix(input.query.known.value);
    mix(input.query.relation.value);
    mix(input.query.direction == Direction::HeadMissing ? 1 : 0);
    for (TokenId t : prefix) mix(t.value);

    out.resize(vocab_size_);
    double sum = 0.0;
    std::uint64_t state = h == 0 ? 0x2545f4914f6cdd1dull : h;
    for (std::size_t i = 0; i < vocab_size_; ++i) {
      state ^= state << 13;
      state ^= state >> 7;
      state ^= state << 17;
      // weights in (0, 1]
      double w = static_cast<double>((state >> 11) + 1) /
                 static_cast<double>(1ull << 53);
      out[i] = w;
      sum += w;
    }
    for (double& v : out) v = std::log(v / sum);
  }

  std::size_t vocab_size() const override { return vocab_size_; }

 private:
  std::size_t vocab_size_;
  std::uint64_t seed_;
};

/// Mock scorer that concentrates mass on the gold entity's target path for
/// the queries it was given; everything else is near-uniform.
class GoldFirstScorer final : public Scorer {
 public:
  GoldFirstScorer(const KnowledgeGraph& kg, const Vocabulary& vocab)
      : kg_(kg), vocab_(vocab) {}

  void add_gold(const Query& q, EntityId gold) {
    gold_[key(q)] = assemble_target(kg_, gold, vocab_).tokens;
  }

  void add_split_golds(const std::vector<Triple>& triples) {
    for (const auto& t : triples) {
      add_gold(Query{t.head, t.relation, Direction::TailMissing}, t.tail);
      add_gold(Query{t.tail, t.relation, Direction::HeadMissing}, t.head);
    }
  }

  void next_token_logprobs(const InputSequence& input, const TokenSequence& prefix,
                           std::vector<double>& out) const override {
    const std::size_t v = vocab_.size();
    auto it = gold_.find(key(input.query));
    if (it != gold_.end() && prefix.size() < it->second.size() &&
        std::equal(prefix.begin(), prefix.end(), it->second.begin())) {
      out.assign(v, std::log(0.1 / static_cast<double>(v - 1)));
      out[it->second[prefix.size()].value] = std::log(0.9);
      return;
    }
    out.assign(v, -std::log(static_cast<double>(v)));
  }

  std::size_t vocab_size() const override { return vocab_.size(); }

 private:
  static std::uint64_t key(const Query& q) {
    return (static_cast<std::uint64_t>(q.known.value) << 33) |
           (static_cast<std::uint64_t>(q.relation.value) << 1) |
           (q.direction == Direction::HeadMissing ? 1 : 0);
  }

  const KnowledgeGraph& kg_;
  const Vocabulary& vocab_;
  std::unordered_map<std::uint64_t, TokenSequence> gold_;
};

}  // namespace kglp::test
