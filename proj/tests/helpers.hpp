// Builders for the reference groups the tests exercise.
#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "dlab/perm.hpp"

namespace testgroups {

inline dlab::PermGroup sym_natural(std::uint32_t n) {
  std::vector<std::vector<std::uint32_t>> cycle{{}};
  for (std::uint32_t i = 1; i <= n; ++i) cycle[0].push_back(i);
  return dlab::PermGroup::generate(
      {dlab::perm_from_cycles(n, {{1, 2}}), dlab::perm_from_cycles(n, cycle)},
      "sym" + std::to_string(n));
}

// C_p wreath C_2 in its imprimitive degree-2p action: two blocks of size p,
// rotations on each block plus the block swap.
inline dlab::PermGroup wreath_cp_c2(std::uint32_t p) {
  const std::uint32_t n = 2 * p;
  std::vector<std::uint32_t> left, right;
  std::vector<std::vector<std::uint32_t>> swap_cycles;
  for (std::uint32_t i = 1; i <= p; ++i) {
    left.push_back(i);
    right.push_back(p + i);
    swap_cycles.push_back({i, p + i});
  }
  return dlab::PermGroup::generate({dlab::perm_from_cycles(n, {left}),
                                    dlab::perm_from_cycles(n, {right}),
                                    dlab::perm_from_cycles(n, swap_cycles)},
                                   "wreath_c" + std::to_string(p) + "_c2");
}

inline dlab::PermGroup alt6_natural() {
  return dlab::PermGroup::generate({dlab::perm_from_cycles(6, {{1, 2, 3}}),
                                    dlab::perm_from_cycles(6, {{2, 3, 4, 5, 6}})},
                                   "alt6");
}

// The 10 unordered pairs of [5] in lexicographic order.
inline std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs_of_5() {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
  for (std::uint32_t a = 0; a < 5; ++a)
    for (std::uint32_t b = a + 1; b < 5; ++b) out.emplace_back(a, b);
  return out;
}

// Lifts a permutation of [5] to the induced permutation of the 10 pairs.
inline dlab::Perm pair_action(const dlab::Perm& g5) {
  const auto pairs = pairs_of_5();
  auto index_of = [&pairs](std::uint32_t a, std::uint32_t b) {
    if (a > b) std::swap(a, b);
    for (std::uint32_t i = 0; i < pairs.size(); ++i)
      if (pairs[i].first == a && pairs[i].second == b) return i;
    throw std::logic_error("pair not found");
  };
  dlab::Perm out;
  out.img.resize(pairs.size());
  for (std::uint32_t i = 0; i < pairs.size(); ++i)
    out.img[i] = index_of(g5.img[pairs[i].first], g5.img[pairs[i].second]);
  return out;
}

inline dlab::PermGroup alt5_on_pairs() {
  return dlab::PermGroup::generate(
      {pair_action(dlab::perm_from_cycles(5, {{1, 2, 3}})),
       pair_action(dlab::perm_from_cycles(5, {{3, 4, 5}}))},
      "alt5_pairs");
}

inline dlab::PermGroup sym5_on_pairs() {
  return dlab::PermGroup::generate(
      {pair_action(dlab::perm_from_cycles(5, {{1, 2}})),
       pair_action(dlab::perm_from_cycles(5, {{1, 2, 3, 4, 5}}))},
      "sym5_pairs");
}

}  // namespace testgroups
