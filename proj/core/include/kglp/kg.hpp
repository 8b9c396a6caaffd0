#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "kglp/error.hpp"
#include "kglp/ids.hpp"

namespace kglp {

struct Entity {
  EntityId id;
  std::string source_id;  // id string from the dataset files
  std::string name;
  std::string description;
  std::vector<std::string> categories;  // non-empty after ingestion
};

struct Relation {
  RelationId id;
  std::string source_id;
  std::string name;
  std::string description;  // relation text; equals name unless the file provides one
};

struct Triple {
  EntityId head;
  RelationId relation;
  EntityId tail;

  friend bool operator==(const Triple&, const Triple&) = default;
};

enum class Split { Train, Dev, Test };

struct IngestConfig {
  std::string default_category = "unknown";  // injected when an entity has no category
  std::uint32_t max_description_tokens = 64;
};

/// Immutable after finalize(); safe for concurrent reads.
class KnowledgeGraph {
 public:
  KnowledgeGraph() = default;

  // -- construction (ingestion / generators) --------------------------------
  EntityId add_entity(std::string source_id, std::string name,
                      std::string description);
  RelationId add_relation(std::string source_id, std::string name,
                          std::string description = {});
  void add_category(EntityId e, const std::string& category);
  void add_triple(Split split, const Triple& t);

  /// Validates invariants and builds the derived indexes (category
  /// frequencies, per-relation train buckets, answer sets). Entities still
  /// without a category receive config.default_category. Throws
  /// ValidationError if the splits overlap as triple sets.
  void finalize(const IngestConfig& config);

  // -- lookups ---------------------------------------------------------------
  std::size_t entity_count() const { return entities_.size(); }
  std::size_t relation_count() const { return relations_.size(); }

  const Entity& entity(EntityId e) const;
  const Relation& relation(RelationId r) const;
  const std::vector<Entity>& entities() const { return entities_; }
  const std::vector<Relation>& relations() const { return relations_; }

  std::optional<EntityId> find_entity(const std::string& source_id) const;
  std::optional<RelationId> find_relation(const std::string& source_id) const;

  const std::vector<Triple>& triples(Split split) const;
  const std::vector<Triple>& train() const { return splits_[0]; }
  const std::vector<Triple>& dev() const { return splits_[1]; }
  const std::vector<Triple>& test() const { return splits_[2]; }

  /// category -> number of training triples in which some member entity
  /// occurs. An entity contributes each of its categories once per training
  /// triple it appears in, even when it fills both slots.
  const std::map<std::string, std::uint64_t>& category_freq() const {
    return category_freq_;
  }

  /// The category of e with minimal training-set frequency; ties break to
  /// the lexicographically smaller name. Categories never seen in train
  /// count as frequency 0.
  const std::string& lowest_freq_category(EntityId e) const;

  /// Indices into train() of the triples carrying this relation, in split
  /// order.
  const std::vector<std::uint32_t>& train_indices_for(RelationId r) const;

  bool train_contains(const Triple& t) const { return train_count(t) > 0; }

  /// Number of occurrences of t in the train split.
  std::uint32_t train_count(const Triple& t) const;

  /// All entities known (across every split) to complete (known, r, ?) —
  /// or (?, r, known) when tail_slot is false. Sorted ascending; empty when
  /// none.
  const std::vector<EntityId>& known_answers(EntityId known, RelationId r,
                                             bool tail_slot) const;

  const IngestConfig& config() const { return config_; }
  const std::string& dataset_name() const { return dataset_name_; }
  void set_dataset_name(std::string name) { dataset_name_ = std::move(name); }

 private:
  std::vector<Entity> entities_;
  std::vector<Relation> relations_;
  std::unordered_map<std::string, EntityId> entity_by_source_;
  std::unordered_map<std::string, RelationId> relation_by_source_;
  std::vector<Triple> splits_[3];
  std::map<std::string, std::uint64_t> category_freq_;
  std::vector<std::vector<std::uint32_t>> train_by_relation_;
  std::vector<std::string> lowest_freq_category_;  // per entity, precomputed
  std::unordered_map<std::uint64_t, std::vector<std::pair<Triple, std::uint32_t>>>
      train_multi_;  // triple hash -> (triple, multiplicity)
  std::unordered_map<std::uint64_t, std::vector<EntityId>> answers_[2];
  IngestConfig config_;
  std::string dataset_name_;
  bool finalized_ = false;
};

}  // namespace kglp
