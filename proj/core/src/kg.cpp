#include "kglp/kg.hpp"

#include <algorithm>

namespace kglp {

namespace {

std::uint64_t pair_key(EntityId e, RelationId r) {
  return (static_cast<std::uint64_t>(e.value) << 32) | r.value;
}

std::uint64_t triple_key(const Triple& t) {
  // Hash only; collisions are resolved by exact triple comparison at the
  // lookup sites.
  std::uint64_t h = 1469598103934665603ull;
  for (std::uint64_t v : {static_cast<std::uint64_t>(t.head.value),
                          static_cast<std::uint64_t>(t.relation.value),
                          static_cast<std::uint64_t>(t.tail.value)}) {
    h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  return h;
}

}  // namespace

EntityId KnowledgeGraph::add_entity(std::string source_id, std::string name,
                                    std::string description) {
  if (entity_by_source_.contains(source_id)) {
    throw DuplicateIdError("entity", source_id);
  }
  EntityId id(static_cast<std::uint32_t>(entities_.size()));
  entity_by_source_.emplace(source_id, id);
  entities_.push_back(Entity{id, std::move(source_id), std::move(name),
                             std::move(description), {}});
  return id;
}

RelationId KnowledgeGraph::add_relation(std::string source_id, std::string name,
                                        std::string description) {
  if (relation_by_source_.contains(source_id)) {
    throw DuplicateIdError("relation", source_id);
  }
  RelationId id(static_cast<std::uint32_t>(relations_.size()));
  relation_by_source_.emplace(source_id, id);
  if (description.empty()) description = name;
  relations_.push_back(
      Relation{id, std::move(source_id), std::move(name), std::move(description)});
  return id;
}

void KnowledgeGraph::add_category(EntityId e, const std::string& category) {
  auto& cats = entities_.at(e.value).categories;
  if (std::find(cats.begin(), cats.end(), category) == cats.end()) {
    cats.push_back(category);
  }
}

void KnowledgeGraph::add_triple(Split split, const Triple& t) {
  splits_[static_cast<int>(split)].push_back(t);
}

const Entity& KnowledgeGraph::entity(EntityId e) const {
  if (e.value >= entities_.size()) throw UnknownEntityError(e.value);
  return entities_[e.value];
}

const Relation& KnowledgeGraph::relation(RelationId r) const {
  if (r.value >= relations_.size()) {
    throw UnknownIdError("unknown relation id " + std::to_string(r.value));
  }
  return relations_[r.value];
}

std::optional<EntityId> KnowledgeGraph::find_entity(
    const std::string& source_id) const {
  auto it = entity_by_source_.find(source_id);
  if (it == entity_by_source_.end()) return std::nullopt;
  return it->second;
}

std::optional<RelationId> KnowledgeGraph::find_relation(
    const std::string& source_id) const {
  auto it = relation_by_source_.find(source_id);
  if (it == relation_by_source_.end()) return std::nullopt;
  return it->second;
}

const std::vector<Triple>& KnowledgeGraph::triples(Split split) const {
  return splits_[static_cast<int>(split)];
}

void KnowledgeGraph::finalize(const IngestConfig& config) {
  config_ = config;

  for (auto& e : entities_) {
    if (e.name.empty()) {
      throw ValidationError("entity '" + e.source_id + "' has an empty name");
    }
    if (e.categories.empty()) e.categories.push_back(config.default_category);
  }

  for (const auto& split : splits_) {
    for (const auto& t : split) {
      if (t.head.value >= entities_.size() || t.tail.value >= entities_.size()) {
        throw ValidationError("triple references an out-of-range entity id");
      }
      if (t.relation.value >= relations_.size()) {
        throw ValidationError("triple references an out-of-range relation id");
      }
    }
  }

  // Pairwise split disjointness, as triple sets.
  {
    std::unordered_map<std::uint64_t, std::vector<std::pair<Triple, int>>> seen;
    const char* names[] = {"train", "dev", "test"};
    for (int s = 0; s < 3; ++s) {
      for (const auto& t : splits_[s]) {
        auto& bucket = seen[triple_key(t)];
        for (const auto& [other, split] : bucket) {
          if (other == t && split != s) {
            throw ValidationError(std::string("splits overlap: a ") + names[split] +
                                  " triple reappears in " + names[s]);
          }
        }
        bucket.emplace_back(t, s);
      }
    }
  }

  category_freq_.clear();
  for (const auto& t : train()) {
    auto count_entity = [&](EntityId e) {
      for (const auto& c : entities_[e.value].categories) ++category_freq_[c];
    };
    count_entity(t.head);
    if (t.tail != t.head) count_entity(t.tail);
  }

  train_by_relation_.assign(relations_.size(), {});
  train_multi_.clear();
  for (std::uint32_t i = 0; i < train().size(); ++i) {
    const Triple& t = train()[i];
    train_by_relation_[t.relation.value].push_back(i);
    auto& bucket = train_multi_[triple_key(t)];
    bool found = false;
    for (auto& [other, count] : bucket) {
      if (other == t) {
        ++count;
        found = true;
        break;
      }
    }
    if (!found) bucket.emplace_back(t, 1);
  }

  answers_[0].clear();
  answers_[1].clear();
  for (const auto& split : splits_) {
    for (const auto& t : split) {
      answers_[1][pair_key(t.head, t.relation)].push_back(t.tail);
      answers_[0][pair_key(t.tail, t.relation)].push_back(t.head);
    }
  }
  for (auto& side : answers_) {
    for (auto& [key, v] : side) {
      std::sort(v.begin(), v.end());
      v.erase(std::unique(v.begin(), v.end()), v.end());
    }
  }

  lowest_freq_category_.clear();
  lowest_freq_category_.reserve(entities_.size());
  for (const auto& e : entities_) {
    const std::string* best = &e.categories.front();
    auto freq_of = [&](const std::string& c) -> std::uint64_t {
      auto it = category_freq_.find(c);
      return it == category_freq_.end() ? 0 : it->second;
    };
    for (const auto& c : e.categories) {
      std::uint64_t fc = freq_of(c);
      std::uint64_t fb = freq_of(*best);
      if (fc < fb || (fc == fb && c < *best)) best = &c;
    }
    lowest_freq_category_.push_back(*best);
  }

  finalized_ = true;
}

const std::string& KnowledgeGraph::lowest_freq_category(EntityId e) const {
  if (e.value >= entities_.size()) throw UnknownEntityError(e.value);
  return lowest_freq_category_.at(e.value);
}

const std::vector<std::uint32_t>& KnowledgeGraph::train_indices_for(
    RelationId r) const {
  static const std::vector<std::uint32_t> kEmpty;
  if (r.value >= train_by_relation_.size()) return kEmpty;
  return train_by_relation_[r.value];
}

std::uint32_t KnowledgeGraph::train_count(const Triple& t) const {
  auto it = train_multi_.find(triple_key(t));
  if (it == train_multi_.end()) return 0;
  for (const auto& [other, count] : it->second) {
    if (other == t) return count;
  }
  return 0;
}

const std::vector<EntityId>& KnowledgeGraph::known_answers(
    EntityId known, RelationId r, bool tail_slot) const {
  static const std::vector<EntityId> kEmpty;
  const auto& side = answers_[tail_slot ? 1 : 0];
  auto it = side.find(pair_key(known, r));
  return it == side.end() ? kEmpty : it->second;
}

}  // namespace kglp
