#include "kglp/trie.hpp"

#include "kglp/io.hpp"

namespace kglp {

namespace {

constexpr std::string_view kTrieMagic = "KGLPTRIE";
constexpr std::uint32_t kTrieVersion = 1;

}  // namespace

std::optional<EntityTrie::NodeIndex> EntityTrie::child(NodeIndex i,
                                                       TokenId token) const {
  const auto& children = nodes_.at(i).children;
  auto it = children.find(token);
  if (it == children.end()) return std::nullopt;
  return it->second;
}

EntityTrie::NodeIndex EntityTrie::walk(const TokenSequence& prefix) const {
  NodeIndex node = kRoot;
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    auto next = child(node, prefix[i]);
    if (!next) {
      throw InvalidPrefixError("prefix leaves the trie at position " +
                               std::to_string(i));
    }
    node = *next;
  }
  return node;
}

std::vector<TokenId> EntityTrie::allowed_next(const TokenSequence& prefix) const {
  const Node& n = nodes_.at(walk(prefix));
  std::vector<TokenId> out;
  out.reserve(n.children.size());
  for (const auto& [token, child] : n.children) out.push_back(token);
  return out;
}

std::optional<EntityId> EntityTrie::decode(const TokenSequence& tokens) const {
  NodeIndex node = kRoot;
  for (TokenId t : tokens) {
    auto next = child(node, t);
    if (!next) return std::nullopt;
    node = *next;
  }
  return nodes_[node].entity;
}

EntityTrie build_trie(const KnowledgeGraph& kg, const Vocabulary& vocab) {
  EntityTrie trie;
  for (const auto& e : kg.entities()) {
    TargetSequence target = assemble_target(kg, e.id, vocab);
    EntityTrie::NodeIndex node = EntityTrie::kRoot;
    for (TokenId t : target.tokens) {
      auto [it, inserted] = trie.nodes_[node].children.emplace(
          t, static_cast<EntityTrie::NodeIndex>(trie.nodes_.size()));
      if (inserted) trie.nodes_.emplace_back();
      node = it->second;
    }
    if (trie.nodes_[node].entity.has_value()) {
      throw DuplicateTargetError(
          "entities '" + kg.entity(*trie.nodes_[node].entity).name + "' and '" +
          e.name + "' decode to the same sequence; discriminator assignment failed");
    }
    trie.nodes_[node].entity = e.id;
    ++trie.entity_count_;
  }
  return trie;
}

void EntityTrie::save(const std::filesystem::path& path) const {
  BinaryWriter w(path);
  write_artifact_header(w, kTrieMagic, kTrieVersion);
  w.u32(static_cast<std::uint32_t>(nodes_.size()));
  w.u64(entity_count_);
  for (const auto& n : nodes_) {
    w.u8(n.entity.has_value() ? 1 : 0);
    if (n.entity) w.u32(n.entity->value);
    w.u32(static_cast<std::uint32_t>(n.children.size()));
    for (const auto& [token, child] : n.children) {
      w.u32(token.value);
      w.u32(child);
    }
  }
  w.close();
}

EntityTrie EntityTrie::load(const std::filesystem::path& path) {
  BinaryReader r(path);
  expect_artifact_header(r, kTrieMagic, kTrieVersion);
  EntityTrie trie;
  std::uint32_t node_count = r.u32();
  trie.entity_count_ = r.u64();
  trie.nodes_.assign(node_count, {});
  for (auto& n : trie.nodes_) {
    if (r.u8() != 0) n.entity = EntityId(r.u32());
    std::uint32_t children = r.u32();
    for (std::uint32_t c = 0; c < children; ++c) {
      TokenId token(r.u32());
      NodeIndex child = r.u32();
      if (child >= node_count) {
        throw DataError("trie artifact has an out-of-range child: " + path.string());
      }
      n.children.emplace(token, child);
    }
  }
  return trie;
}

}  // namespace kglp
