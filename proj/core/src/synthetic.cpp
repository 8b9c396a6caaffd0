#include "kglp/synthetic.hpp"

#include <random>
#include <set>
#include <tuple>

#include "kglp/error.hpp"

namespace kglp {

namespace {

std::string alphabet_token(std::uint32_t digit) {
  std::string t = "w";
  if (digit < 10) t += '0';
  t += std::to_string(digit);
  return t;
}

std::string entity_name(std::size_t index, const SyntheticConfig& cfg) {
  // Base-|alphabet| digits of the index, fixed width, most significant
  // first.
  std::string name;
  for (std::uint32_t d = 0; d < cfg.name_width; ++d) {
    std::uint32_t shift = cfg.name_width - 1 - d;
    std::size_t divisor = 1;
    for (std::uint32_t i = 0; i < shift; ++i) divisor *= cfg.alphabet;
    std::uint32_t digit =
        static_cast<std::uint32_t>(index / divisor % cfg.alphabet);
    if (!name.empty()) name += ' ';
    name += alphabet_token(digit);
  }
  return name;
}

}  // namespace

KnowledgeGraph make_synthetic_kg(const SyntheticConfig& cfg) {
  if (cfg.alphabet == 0 || cfg.alphabet > 100) {
    throw Error("synthetic alphabet must be in [1, 100]");
  }
  std::size_t capacity = 1;
  for (std::uint32_t i = 0; i < cfg.name_width; ++i) capacity *= cfg.alphabet;
  if (cfg.n_entities > capacity) {
    throw Error("name_width/alphabet too small for the requested entity count");
  }

  std::mt19937_64 rng(cfg.seed);
  KnowledgeGraph kg;
  kg.set_dataset_name("synthetic-" + std::to_string(cfg.n_entities));

  for (std::size_t i = 0; i < cfg.n_entities; ++i) {
    std::string desc;
    for (std::uint32_t d = 0; d < cfg.description_tokens; ++d) {
      if (!desc.empty()) desc += ' ';
      desc += alphabet_token(static_cast<std::uint32_t>(rng() % cfg.alphabet));
    }
    EntityId id = kg.add_entity("S" + std::to_string(i), entity_name(i, cfg),
                                std::move(desc));
    kg.add_category(id, "cat" + std::to_string(i % cfg.n_categories));
  }
  for (std::uint32_t r = 0; r < cfg.n_relations; ++r) {
    kg.add_relation("R" + std::to_string(r), "rel" + std::to_string(r));
  }

  auto random_triple = [&]() {
    Triple t;
    t.head = EntityId(static_cast<std::uint32_t>(rng() % cfg.n_entities));
    t.relation = RelationId(static_cast<std::uint32_t>(rng() % cfg.n_relations));
    t.tail = EntityId(static_cast<std::uint32_t>(rng() % cfg.n_entities));
    return t;
  };

  std::set<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>> used;
  auto remember = [&](const Triple& t) {
    return used.insert({t.head.value, t.relation.value, t.tail.value}).second;
  };

  for (std::size_t i = 0; i < cfg.n_entities; ++i) {
    for (std::uint32_t j = 0; j < cfg.train_per_entity; ++j) {
      Triple t;
      t.head = EntityId(static_cast<std::uint32_t>(i));
      t.relation = RelationId(static_cast<std::uint32_t>(rng() % cfg.n_relations));
      t.tail = EntityId(static_cast<std::uint32_t>(rng() % cfg.n_entities));
      remember(t);
      kg.add_triple(Split::Train, t);
    }
  }

  auto fill_split = [&](Split split, std::uint32_t want) {
    std::uint32_t produced = 0;
    std::uint64_t attempts = 0;
    while (produced < want) {
      if (++attempts > 1000ull * want + 1000ull) {
        throw Error("synthetic generator could not find enough disjoint triples");
      }
      Triple t = random_triple();
      if (!remember(t)) continue;  // keep the splits disjoint as sets
      kg.add_triple(split, t);
      ++produced;
    }
  };
  fill_split(Split::Dev, cfg.n_dev);
  fill_split(Split::Test, cfg.n_test);

  kg.finalize(IngestConfig{});
  return kg;
}

}  // namespace kglp
