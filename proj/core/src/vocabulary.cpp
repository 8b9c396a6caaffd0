#include "kglp/vocabulary.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "kglp/io.hpp"
#include "kglp/text.hpp"

namespace kglp {

namespace {

constexpr std::string_view kVocabMagic = "KGLPVOC";
constexpr std::uint32_t kVocabVersion = 1;

const char* kSpecialNames[] = {"[BOS]", "[EOS]", "[SEP]", "[UNK]", "[PAD]", "[REV]"};

std::string category_token_text(const std::string& category) {
  return "[C:" + category + "]";
}

std::string disambiguator_text(EntityId e) {
  return "[D:" + std::to_string(e.value) + "]";
}

}  // namespace

const std::string& Vocabulary::token_text(TokenId t) const {
  if (t.value >= tokens_.size()) {
    throw UnknownIdError("token id " + std::to_string(t.value) +
                         " outside vocabulary of size " +
                         std::to_string(tokens_.size()));
  }
  return tokens_[t.value];
}

std::optional<TokenId> Vocabulary::find(const std::string& token) const {
  auto it = index_.find(token);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

TokenId Vocabulary::category_token(const std::string& category) const {
  auto it = category_index_.find(category);
  if (it == category_index_.end()) {
    throw UnknownIdError("no category token for '" + category + "'");
  }
  return it->second;
}

std::optional<TokenId> Vocabulary::disambiguator(EntityId e) const {
  auto it = entity_disambiguators_.find(e.value);
  if (it == entity_disambiguators_.end()) return std::nullopt;
  return it->second;
}

TokenId Vocabulary::intern(std::string token) {
  auto it = index_.find(token);
  if (it != index_.end()) return it->second;
  TokenId id(static_cast<std::uint32_t>(tokens_.size()));
  index_.emplace(token, id);
  tokens_.push_back(std::move(token));
  return id;
}

Vocabulary build_vocabulary(const KnowledgeGraph& kg) {
  Vocabulary v;
  for (const char* s : kSpecialNames) v.intern(s);

  std::set<std::string> categories;
  for (const auto& e : kg.entities()) {
    categories.insert(e.categories.begin(), e.categories.end());
  }
  v.category_count_ = static_cast<std::uint32_t>(categories.size());
  for (const auto& c : categories) {
    v.category_index_.emplace(c, v.intern(category_token_text(c)));
  }

  std::set<std::string> text_tokens;
  auto collect = [&](const std::string& text) {
    for (auto& t : split_text(text)) text_tokens.insert(std::move(t));
  };
  for (const auto& e : kg.entities()) {
    collect(e.name);
    collect(e.description);
  }
  for (const auto& r : kg.relations()) {
    collect(r.name);
    collect(r.description);
  }
  for (const auto& t : text_tokens) v.intern(t);

  // Base target sequences (category token + name tokens). An entity whose
  // sequence is a prefix of, or equal to, another's gets a reserved
  // discriminator so that trie terminals end up on leaves.
  struct Node {
    std::map<TokenId, std::uint32_t> children;
    std::uint32_t end_count = 0;
  };
  std::vector<Node> nodes(1);
  std::vector<std::uint32_t> end_node(kg.entity_count());
  for (const auto& e : kg.entities()) {
    TokenSequence seq;
    seq.push_back(v.category_index_.at(kg.lowest_freq_category(e.id)));
    for (const auto& tok : split_text(e.name)) {
      seq.push_back(*v.find(tok));
    }
    std::uint32_t node = 0;
    for (TokenId t : seq) {
      auto [it, inserted] =
          nodes[node].children.emplace(t, static_cast<std::uint32_t>(nodes.size()));
      if (inserted) nodes.emplace_back();
      node = it->second;
    }
    ++nodes[node].end_count;
    end_node[e.id.value] = node;
  }
  for (const auto& e : kg.entities()) {
    const Node& n = nodes[end_node[e.id.value]];
    if (n.end_count > 1 || !n.children.empty()) {
      v.entity_disambiguators_.emplace(e.id.value,
                                       v.intern(disambiguator_text(e.id)));
    }
  }
  return v;
}

TokenSequence tokenize(std::string_view text, const Vocabulary& vocab) {
  TokenSequence out;
  for (const auto& tok : split_text(text)) {
    auto id = vocab.find(tok);
    out.push_back(id && !vocab.is_special(*id) && !vocab.is_category(*id)
                      ? *id
                      : Vocabulary::kUnk);
  }
  return out;
}

void Vocabulary::save(const std::filesystem::path& path) const {
  BinaryWriter w(path);
  write_artifact_header(w, kVocabMagic, kVocabVersion);
  w.u32(static_cast<std::uint32_t>(tokens_.size()));
  for (const auto& t : tokens_) w.str(t);
  w.u32(category_count_);
  std::map<std::string, TokenId> cats(category_index_.begin(), category_index_.end());
  for (const auto& [name, id] : cats) {
    w.str(name);
    w.u32(id.value);
  }
  std::map<std::uint32_t, TokenId> disc(entity_disambiguators_.begin(),
                                        entity_disambiguators_.end());
  w.u32(static_cast<std::uint32_t>(disc.size()));
  for (const auto& [ent, id] : disc) {
    w.u32(ent);
    w.u32(id.value);
  }
  w.close();
}

Vocabulary Vocabulary::load(const std::filesystem::path& path) {
  BinaryReader r(path);
  expect_artifact_header(r, kVocabMagic, kVocabVersion);
  Vocabulary v;
  std::uint32_t n = r.u32();
  for (std::uint32_t i = 0; i < n; ++i) {
    TokenId id = v.intern(r.str());
    if (id.value != i) {
      throw DataError("vocabulary artifact has duplicate tokens: " + path.string());
    }
  }
  v.category_count_ = r.u32();
  for (std::uint32_t i = 0; i < v.category_count_; ++i) {
    std::string name = r.str();
    TokenId id(r.u32());
    v.category_index_.emplace(std::move(name), id);
  }
  std::uint32_t disc = r.u32();
  for (std::uint32_t i = 0; i < disc; ++i) {
    std::uint32_t ent = r.u32();
    TokenId id(r.u32());
    v.entity_disambiguators_.emplace(ent, id);
  }
  return v;
}

}  // namespace kglp
