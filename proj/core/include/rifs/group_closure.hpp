#pragma once

#include <cstddef>
#include <span>
#include <variant>
#include <vector>

#include "rifs/map_algebra.hpp"

namespace rifs {

inline constexpr double kDefaultGroupEps = 1e-9;
inline constexpr std::size_t kDefaultGroupCap = 4096;

/// A finite isometry group in BFS discovery order, identity first.
struct FiniteGroup {
  std::vector<Isometry2> elements;
  /// orders[i] is the order of elements[i].
  std::vector<std::size_t> orders;

  std::size_t size() const { return elements.size(); }
};

/// The closure grew past `cap` elements.
struct CapExceeded {
  std::size_t cap = 0;
};

using GroupClosureResult = std::variant<FiniteGroup, CapExceeded>;

/// Breadth-first closure of the generators under composition, starting from
/// the identity. Two elements are the same when every matrix entry differs
/// by less than eps. Throws ValidationError for empty generators, eps <= 0
/// or cap == 0.
GroupClosureResult close_group(std::span<const Isometry2> generators, double eps = kDefaultGroupEps,
                               std::size_t cap = kDefaultGroupCap);

/// An ordinary IFS (contractions only).
struct FlatIFS {
  std::vector<Contraction2> maps;
};

/// {g_i o f_j} in lexicographic (i, j) order. Throws ValidationError if the
/// group is CapExceeded.
FlatIFS flatten(const RSystem& system, const GroupClosureResult& group);

/// The R-IFS {id; maps...}, with uniform weights.
RSystem as_rsystem(const FlatIFS& ifs);

}  // namespace rifs
