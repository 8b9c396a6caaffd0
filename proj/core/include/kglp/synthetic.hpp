#pragma once

#include <cstdint>

#include "kglp/kg.hpp"

namespace kglp {

/// Deterministic random graph over a fixed token alphabet. Entity names are
/// `name_width` alphabet tokens encoding the entity index, so names are
/// unique and prefix-free and the vocabulary does not grow with |E| beyond
/// the alphabet. Categories are assigned round-robin; descriptions are
/// `description_tokens` seeded-random alphabet tokens (fixed length).
struct SyntheticConfig {
  std::size_t n_entities = 1000;
  std::uint32_t n_relations = 8;
  std::uint32_t n_categories = 5;
  std::uint32_t name_width = 4;
  std::uint32_t alphabet = 40;
  std::uint32_t description_tokens = 8;
  std::uint32_t train_per_entity = 2;
  std::uint32_t n_dev = 0;
  std::uint32_t n_test = 40;
  std::uint64_t seed = 1;
};

KnowledgeGraph make_synthetic_kg(const SyntheticConfig& cfg);

}  // namespace kglp
