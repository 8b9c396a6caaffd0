#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <vector>

namespace kglp {

/// Opaque dense identifier. Ids are assigned from 0 in ingestion order and
/// stay stable for the lifetime of the owning store.
template <class Tag>
struct Id {
  std::uint32_t value = 0;

  constexpr Id() = default;
  constexpr explicit Id(std::uint32_t v) : value(v) {}

  friend constexpr bool operator==(Id, Id) = default;
  friend constexpr auto operator<=>(Id, Id) = default;
};

using EntityId = Id<struct EntityIdTag>;
using RelationId = Id<struct RelationIdTag>;
using TokenId = Id<struct TokenIdTag>;

using TokenSequence = std::vector<TokenId>;

}  // namespace kglp

template <class Tag>
struct std::hash<kglp::Id<Tag>> {
  std::size_t operator()(kglp::Id<Tag> id) const noexcept {
    return std::hash<std::uint32_t>{}(id.value);
  }
};
