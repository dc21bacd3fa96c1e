#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "dlab/perm.hpp"

namespace dlab {

inline constexpr std::uint64_t kDefaultGraphCap = 20'000;

// Square symmetric bit matrix, packed row-major into 64-bit words.
class BitMatrix {
 public:
  BitMatrix() = default;
  explicit BitMatrix(std::uint32_t n)
      : n_(n), words_(std::size_t(n) * words_per_row(), 0) {}

  std::uint32_t size() const { return n_; }
  std::size_t words_per_row() const { return (std::size_t(n_) + 63) / 64; }

  bool get(std::uint32_t i, std::uint32_t j) const {
    return (row(i)[j >> 6] >> (j & 63)) & 1;
  }
  void set(std::uint32_t i, std::uint32_t j) {
    row(i)[j >> 6] |= std::uint64_t(1) << (j & 63);
  }
  const std::uint64_t* row(std::uint32_t i) const {
    return words_.data() + std::size_t(i) * words_per_row();
  }
  std::uint64_t* row(std::uint32_t i) {
    return words_.data() + std::size_t(i) * words_per_row();
  }
  std::size_t row_popcount(std::uint32_t i) const;

 private:
  std::uint32_t n_ = 0;
  std::vector<std::uint64_t> words_;
};

// Indices of the derangements of g, in canonical element order. The set is
// closed under inversion and conjugation (it is a union of conjugacy classes).
std::vector<std::uint32_t> derangement_indices(const PermGroup& g);

// True when every pair of the listed elements agrees on at least one point.
bool is_intersecting_set(const PermGroup& g, const std::vector<std::uint32_t>& idx);

struct MultipartiteDecomposition {
  std::vector<std::vector<std::uint32_t>> parts;  // each sorted; ordered by min

  std::size_t part_count() const { return parts.size(); }
  std::size_t part_size() const { return parts.empty() ? 0 : parts[0].size(); }
};

enum class MultipartiteStatus {
  kProper,         // nontrivial complete multipartite
  kCompleteGraph,  // Fix(G) trivial: |G| singleton parts
  kNone,           // Fix(G) has a derangement
};

struct MultipartiteResult {
  MultipartiteStatus status = MultipartiteStatus::kNone;
  std::optional<MultipartiteDecomposition> decomposition;
  std::uint64_t fix_order = 0;
  std::uint64_t fix_index = 0;  // [G : Fix(G)]
  // For kNone: an intra-part edge of the Fix-coset partition witnessing the
  // failure (a derangement inside Fix and the identity).
  std::optional<std::array<std::uint32_t, 2>> witness_edge;
  bool structurally_verified = false;  // all cross edges / no inner edges checked
};

// Cayley graph of G on its derangement set: vertices are the group elements
// in canonical order and u ~ v iff compose(u, invert(v)) is a derangement,
// equivalently iff u and v disagree everywhere.
class DerangementGraph {
 public:
  static DerangementGraph build(PermGroup g, std::uint64_t cap = kDefaultGraphCap);

  const PermGroup& group() const { return group_; }
  const BitMatrix& adjacency() const { return adj_; }
  std::uint32_t vertex_count() const { return adj_.size(); }
  const std::vector<std::uint32_t>& derangements() const { return der_; }
  std::uint64_t regular_degree() const { return der_.size(); }
  bool adjacent(std::uint32_t u, std::uint32_t v) const { return adj_.get(u, v); }

  bool is_bipartite() const;

  // Lexicographically least triangle (u < v < w), when one exists.
  std::optional<std::array<std::uint32_t, 3>> find_triangle() const;

  // Decides complete multipartiteness along both routes: algebraically
  // (Fix(G) intersecting, parts = its cosets) and structurally on the
  // adjacency; throws std::logic_error if the two routes ever disagree.
  MultipartiteResult complete_multipartite() const;

  void write_dot(std::ostream& os,
                 const MultipartiteDecomposition* parts = nullptr) const;

  // 8-byte header (regular degree, vertex count; little-endian 32-bit each)
  // followed by the row-major bitmap, each row padded to whole bytes,
  // LSB-first within a byte.
  void write_bitmap(std::ostream& os) const;

 private:
  PermGroup group_;
  BitMatrix adj_;
  std::vector<std::uint32_t> der_;
};

// The Fix-coset partition of the element list (each part sorted, parts
// ordered by their minimum index; part 0 contains the identity).
std::vector<std::vector<std::uint32_t>> fix_coset_partition(const PermGroup& g,
                                                            const PermGroup& fix);

}  // namespace dlab
