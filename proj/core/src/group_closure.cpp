#include "rifs/group_closure.hpp"

#include <cmath>
#include <deque>

#include "rifs/errors.hpp"

namespace rifs {

namespace {

std::size_t element_order(const Isometry2& g, double eps, std::size_t bound) {
  const Isometry2 id = Isometry2::identity();
  Isometry2 power = g;
  for (std::size_t k = 1; k <= bound; ++k) {
    if (power.approx_equal(id, eps)) return k;
    power = g * power;
  }
  return bound;
}

}  // namespace

GroupClosureResult close_group(std::span<const Isometry2> generators, double eps, std::size_t cap) {
  if (generators.empty()) throw ValidationError("close_group needs at least one generator");
  if (!(eps > 0.0)) throw ValidationError("close_group eps must be > 0");
  if (cap == 0) throw ValidationError("close_group cap must be >= 1");

  std::vector<Isometry2> elements{Isometry2::identity()};
  std::deque<std::size_t> queue{0};
  auto find = [&](const Isometry2& g) {
    for (const auto& e : elements)
      if (e.approx_equal(g, eps)) return true;
    return false;
  };

  while (!queue.empty()) {
    const Isometry2 h = elements[queue.front()];
    queue.pop_front();
    for (const auto& s : generators) {
      const Isometry2 candidate = s * h;
      if (find(candidate)) continue;
      if (elements.size() == cap) return CapExceeded{cap};
      elements.push_back(candidate);
      queue.push_back(elements.size() - 1);
    }
  }

  FiniteGroup group;
  group.orders.reserve(elements.size());
  for (const auto& g : elements) group.orders.push_back(element_order(g, eps, elements.size()));
  group.elements = std::move(elements);
  return group;
}

FlatIFS flatten(const RSystem& system, const GroupClosureResult& group) {
  const auto* finite = std::get_if<FiniteGroup>(&group);
  if (!finite)
    throw ValidationError("cannot flatten: isometry group exceeded cap of " +
                          std::to_string(std::get<CapExceeded>(group).cap) + " elements");
  FlatIFS out;
  out.maps.reserve(finite->size() * system.contractions().size());
  for (const auto& g : finite->elements)
    for (const auto& f : system.contractions()) out.maps.push_back(compose_iso(g, f));
  return out;
}

RSystem as_rsystem(const FlatIFS& ifs) { return RSystem({Isometry2::identity()}, ifs.maps); }

}  // namespace rifs
