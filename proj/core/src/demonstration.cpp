#include "kglp/demonstration.hpp"

#include <algorithm>
#include <limits>
#include <random>

namespace kglp {

namespace {

bool contains(const std::vector<Triple>& set, const Triple& t) {
  return std::find(set.begin(), set.end(), t) != set.end();
}

void append(TokenSequence& out, const TokenSequence& tokens, std::size_t limit) {
  out.insert(out.end(), tokens.begin(),
             tokens.begin() + static_cast<std::ptrdiff_t>(
                                  std::min(tokens.size(), limit)));
}

}  // namespace

std::uint64_t derive_query_seed(std::uint64_t seed, const Query& q) {
  auto mix = [](std::uint64_t h, std::uint64_t v) {
    return h ^ (v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2));
  };
  std::uint64_t h = seed;
  h = mix(h, q.known.value);
  h = mix(h, q.relation.value);
  h = mix(h, q.direction == Direction::HeadMissing ? 1 : 0);
  return h;
}

std::vector<Triple> sample_demonstrations(const KnowledgeGraph& kg, const Query& q,
                                          const DemonstrationConfig& cfg,
                                          const std::vector<Triple>& exclude) {
  kg.entity(q.known);    // validate the query
  kg.relation(q.relation);

  std::vector<Triple> out;
  if (cfg.count == 0) return out;

  const auto& bucket = kg.train_indices_for(q.relation);
  if (bucket.empty()) return out;

  // Deduplicated exclusions relevant to this bucket.
  std::vector<Triple> excluded;
  std::uint64_t excluded_occurrences = 0;
  for (const auto& t : exclude) {
    if (t.relation != q.relation || contains(excluded, t)) continue;
    std::uint32_t occurrences = kg.train_count(t);
    if (occurrences == 0) continue;
    excluded.push_back(t);
    excluded_occurrences += occurrences;
  }

  std::uint64_t available = bucket.size() - excluded_occurrences;
  if (available == 0) return out;

  if (available <= cfg.count) {
    for (std::uint32_t idx : bucket) {
      const Triple& t = kg.train()[idx];
      if (!contains(excluded, t)) out.push_back(t);
    }
    return out;
  }

  std::mt19937_64 rng(derive_query_seed(cfg.seed, q));
  std::vector<std::size_t> chosen;
  while (chosen.size() < cfg.count) {
    std::size_t pos = static_cast<std::size_t>(rng() % bucket.size());
    if (std::find(chosen.begin(), chosen.end(), pos) != chosen.end()) continue;
    const Triple& t = kg.train()[bucket[pos]];
    if (contains(excluded, t)) continue;
    chosen.push_back(pos);
    out.push_back(t);
  }
  return out;
}

InputSequence assemble_input(const KnowledgeGraph& kg, const Query& q,
                             const std::vector<Triple>& demos,
                             const Vocabulary& vocab,
                             const DemonstrationConfig& cfg) {
  const Entity& known = kg.entity(q.known);
  const Relation& rel = kg.relation(q.relation);
  TokenSequence relation_tokens = tokenize(rel.description, vocab);

  InputSequence input;
  input.query = q;
  input.tokens.push_back(Vocabulary::kBos);

  // max_demo_tokens == 0 disables the cap.
  std::size_t demo_limit = cfg.max_demo_tokens > 0
                               ? cfg.max_demo_tokens
                               : std::numeric_limits<std::size_t>::max();
  bool first = true;
  for (const auto& demo : demos) {
    TokenSequence rendered = tokenize(kg.entity(demo.head).name, vocab);
    TokenSequence rel_text = tokenize(kg.relation(demo.relation).description, vocab);
    TokenSequence tail_text = tokenize(kg.entity(demo.tail).name, vocab);
    rendered.insert(rendered.end(), rel_text.begin(), rel_text.end());
    rendered.insert(rendered.end(), tail_text.begin(), tail_text.end());
    if (!first && cfg.sep_between_demos) input.tokens.push_back(Vocabulary::kSep);
    append(input.tokens, rendered, demo_limit);
    first = false;
  }

  input.tokens.push_back(Vocabulary::kSep);
  append(input.tokens, tokenize(known.description, vocab),
         kg.config().max_description_tokens);
  if (q.direction == Direction::HeadMissing) {
    input.tokens.push_back(Vocabulary::kRev);
  }
  input.tokens.insert(input.tokens.end(), relation_tokens.begin(),
                      relation_tokens.end());
  input.tokens.push_back(Vocabulary::kSep);
  return input;
}

TargetSequence assemble_target(const KnowledgeGraph& kg, EntityId e,
                               const Vocabulary& vocab) {
  const Entity& entity = kg.entity(e);
  TargetSequence target;
  target.tokens.push_back(vocab.category_token(kg.lowest_freq_category(e)));
  TokenSequence name = tokenize(entity.name, vocab);
  target.tokens.insert(target.tokens.end(), name.begin(), name.end());
  if (auto disc = vocab.disambiguator(e)) target.tokens.push_back(*disc);
  target.tokens.push_back(Vocabulary::kEos);
  return target;
}

}  // namespace kglp
