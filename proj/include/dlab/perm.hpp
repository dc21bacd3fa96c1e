#pragma once

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "json.hpp"

namespace dlab {

inline constexpr std::uint64_t kDefaultGroupCap = 1'000'000;
inline constexpr std::uint64_t kDefaultPairCap = 4'000'000;

// Permutation of {0, ..., n-1} stored as its image vector. The whole project
// uses the left-to-right action: a point w is first moved by the left factor,
// then by the right one.
struct Perm {
  std::vector<std::uint32_t> img;

  std::uint32_t degree() const { return std::uint32_t(img.size()); }
  bool is_identity() const;
  bool operator==(const Perm&) const = default;
  bool operator<(const Perm& o) const { return img < o.img; }
};

struct PermHash {
  std::size_t operator()(const Perm& p) const;
};

Perm identity_perm(std::uint32_t n);

// Throws std::invalid_argument unless the image vector is a bijection.
void validate_perm(const Perm& p);

// compose(a, b) maps w to b[a[w]]: apply a first, then b.
Perm compose(const Perm& a, const Perm& b);
Perm invert(const Perm& a);

// t^-1 is applied last: conjugate(a, t) = t a t^-1 as a left-to-right word.
Perm conjugate(const Perm& a, const Perm& t);

// Builds a permutation of degree n from 1-based cycles. Cycles must be
// disjoint; a point that appears twice raises std::invalid_argument.
Perm perm_from_cycles(std::uint32_t n,
                      const std::vector<std::vector<std::uint32_t>>& cycles);

std::vector<std::uint32_t> fixed_points(const Perm& a);  // 0-based points
bool is_derangement(const Perm& a);
std::uint64_t perm_order(const Perm& a);                     // lcm of cycle lengths
std::vector<std::uint32_t> cycle_type(const Perm& a);        // descending, with 1s
std::vector<std::uint32_t> support(const Perm& a);           // moved points, sorted
std::string cycle_string(const Perm& a);                     // 1-based, for display

// Partition of the point set into equal-size cells mapped to cells by the
// group; cells are sorted internally and ordered by their minimum.
struct BlockSystem {
  std::vector<std::vector<std::uint32_t>> cells;

  std::size_t cell_count() const { return cells.size(); }
  std::size_t cell_size() const { return cells.empty() ? 0 : cells[0].size(); }
  bool operator==(const BlockSystem&) const = default;
};

// A finite permutation group held extensionally: generators plus the full,
// canonically sorted element list. Immutable after construction; all queries
// are const and safe to run concurrently.
class PermGroup {
 public:
  PermGroup() = default;  // empty placeholder; assign before use

  // Breadth-first closure of the generators. Throws CapExceeded (with the
  // partial size) when the closure grows past `cap` elements.
  static PermGroup generate(std::vector<Perm> generators, std::string name,
                            std::uint64_t cap = kDefaultGroupCap);

  std::uint32_t degree() const { return degree_; }
  std::uint64_t order() const { return elements_.size(); }
  const std::string& name() const { return name_; }
  const std::vector<Perm>& generators() const { return generators_; }
  const std::vector<Perm>& elements() const { return elements_; }
  const Perm& element(std::size_t i) const { return elements_[i]; }

  // Index into the canonical element order, or -1 when absent.
  std::int64_t index_of(const Perm& p) const;
  bool contains(const Perm& p) const { return index_of(p) >= 0; }
  std::size_t identity_index() const;

  bool is_transitive() const;
  std::vector<std::vector<std::uint32_t>> orbits() const;

  // Subgroup fixing the 0-based point omega; |G| / n of the elements when
  // the group is transitive.
  PermGroup point_stabilizer(std::uint32_t omega) const;

  // Smallest block containing {a, b}, via union-find congruence refinement.
  // Requires a transitive group and a != b.
  std::vector<std::uint32_t> minimal_block(std::uint32_t a, std::uint32_t b) const;

  // Deduplicated nontrivial block systems arising from minimal_block(0, b)
  // over all b != 0, each extended to the full congruence partition.
  // Ordered by cell size, then by first cell.
  std::vector<BlockSystem> all_minimal_block_systems() const;

  // Subgroup generated by every element with at least one fixed point.
  PermGroup fix_subgroup(std::uint64_t cap = kDefaultGroupCap) const;

  // Number of orbits of the componentwise action on ordered point pairs.
  std::uint64_t rank_on_pairs(std::uint64_t cap = kDefaultPairCap) const;

  bool same_elements(const PermGroup& other) const;

 private:
  // Trusted path: `elements` must already be the sorted element list of a
  // genuine subgroup and contain every generator.
  static PermGroup from_sorted_elements(std::vector<Perm> generators,
                                        std::vector<Perm> elements,
                                        std::string name);

  void build_index();
  std::vector<std::uint32_t> congruence_partition(std::uint32_t a,
                                                  std::uint32_t b) const;

  std::uint32_t degree_ = 0;
  std::string name_;
  std::vector<Perm> generators_;
  std::vector<Perm> elements_;  // sorted by image vector
  std::unordered_map<Perm, std::uint32_t, PermHash> index_;
};

// True when every h-element conjugated by every generator of g stays in h.
// Requires h's elements to all lie in g.
bool is_normal(const PermGroup& g, const PermGroup& h);

bool is_subgroup_of(const PermGroup& h, const PermGroup& g);

// Deterministic small generating subset of the given elements (greedy scan
// in canonical order, keeping an element only when it enlarges the closure).
std::vector<Perm> reduce_generators(const std::vector<Perm>& elements,
                                    std::uint64_t cap = kDefaultGroupCap);

// Validates that every generator maps each cell of the partition onto a cell.
bool blocks_preserved(const PermGroup& g, const BlockSystem& bs);

// --- group file format -------------------------------------------------
//
// {"format": 1, "name": ..., "degree": n, "order": N,
//  "generators": [[1-based images], ...], "elements": [...optional...]}
//
// When "elements" is present it must equal the closure of the generators.

nlohmann::ordered_json group_to_json(const PermGroup& g);
PermGroup group_from_json(const nlohmann::json& j,
                          std::uint64_t cap = kDefaultGroupCap);

}  // namespace dlab
