#include "dlab/dgraph.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <ostream>
#include <stdexcept>

#include "dlab/common.hpp"

namespace dlab {

std::size_t BitMatrix::row_popcount(std::uint32_t i) const {
  std::size_t total = 0;
  const std::uint64_t* r = row(i);
  for (std::size_t w = 0; w < words_per_row(); ++w) total += std::popcount(r[w]);
  return total;
}

std::vector<std::uint32_t> derangement_indices(const PermGroup& g) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t i = 0; i < g.order(); ++i)
    if (is_derangement(g.element(i))) out.push_back(i);
  return out;
}

bool is_intersecting_set(const PermGroup& g, const std::vector<std::uint32_t>& idx) {
  for (std::size_t a = 0; a < idx.size(); ++a) {
    const Perm& pa = g.element(idx[a]);
    for (std::size_t b = a + 1; b < idx.size(); ++b) {
      const Perm& pb = g.element(idx[b]);
      bool agree = false;
      for (std::uint32_t w = 0; w < pa.degree(); ++w)
        if (pa.img[w] == pb.img[w]) {
          agree = true;
          break;
        }
      if (!agree) return false;
    }
  }
  return true;
}

DerangementGraph DerangementGraph::build(PermGroup g, std::uint64_t cap) {
  if (g.order() > cap)
    throw CapExceeded("graph cap " + std::to_string(cap) + " exceeded by group of order " +
                          std::to_string(g.order()),
                      g.order());
  DerangementGraph out;
  out.der_ = derangement_indices(g);

  const std::uint32_t v = std::uint32_t(g.order());
  out.adj_ = BitMatrix(v);
  // Neighbors of u are exactly { compose(invert(d), u) : d a derangement }.
  std::vector<Perm> inv_der;
  inv_der.reserve(out.der_.size());
  for (std::uint32_t d : out.der_) inv_der.push_back(invert(g.element(d)));
  for (std::uint32_t u = 0; u < v; ++u) {
    const Perm& eu = g.element(u);
    for (const Perm& di : inv_der) {
      const std::int64_t w = g.index_of(compose(di, eu));
      if (w < 0) throw std::logic_error("derangement neighbor left the group");
      out.adj_.set(u, std::uint32_t(w));
    }
  }
  for (std::uint32_t u = 0; u < v; ++u)
    if (out.adj_.row_popcount(u) != out.der_.size())
      throw std::logic_error("derangement graph is not |Der|-regular");
  out.group_ = std::move(g);
  return out;
}

bool DerangementGraph::is_bipartite() const {
  const std::uint32_t v = vertex_count();
  std::vector<int> color(v, -1);
  std::deque<std::uint32_t> queue;
  for (std::uint32_t start = 0; start < v; ++start) {
    if (color[start] != -1) continue;
    color[start] = 0;
    queue.push_back(start);
    while (!queue.empty()) {
      std::uint32_t u = queue.front();
      queue.pop_front();
      for (std::uint32_t w = 0; w < v; ++w) {
        if (!adj_.get(u, w)) continue;
        if (color[w] == -1) {
          color[w] = 1 - color[u];
          queue.push_back(w);
        } else if (color[w] == color[u]) {
          return false;
        }
      }
    }
  }
  return true;
}

std::optional<std::array<std::uint32_t, 3>> DerangementGraph::find_triangle() const {
  const std::uint32_t v = vertex_count();
  const std::size_t words = adj_.words_per_row();
  for (std::uint32_t u = 0; u < v; ++u) {
    for (std::uint32_t w = u + 1; w < v; ++w) {
      if (!adj_.get(u, w)) continue;
      // lowest common neighbor above w
      for (std::size_t idx = std::size_t(w + 1) / 64; idx < words; ++idx) {
        std::uint64_t common = adj_.row(u)[idx] & adj_.row(w)[idx];
        if (idx == std::size_t(w + 1) / 64 && (w + 1) % 64 != 0)
          common &= ~((std::uint64_t(1) << ((w + 1) % 64)) - 1);
        if (common != 0) {
          std::uint32_t x = std::uint32_t(idx * 64 + std::countr_zero(common));
          return std::array<std::uint32_t, 3>{u, w, x};
        }
      }
    }
  }
  return std::nullopt;
}

std::vector<std::vector<std::uint32_t>> fix_coset_partition(const PermGroup& g,
                                                            const PermGroup& fix) {
  std::vector<std::vector<std::uint32_t>> parts;
  std::vector<bool> assigned(g.order(), false);
  for (std::uint32_t i = 0; i < g.order(); ++i) {
    if (assigned[i]) continue;
    std::vector<std::uint32_t> part;
    for (const Perm& f : fix.elements()) {
      const std::int64_t j = g.index_of(compose(f, g.element(i)));
      if (j < 0) throw std::logic_error("Fix coset left the group");
      if (!assigned[std::size_t(j)]) {
        assigned[std::size_t(j)] = true;
        part.push_back(std::uint32_t(j));
      }
    }
    std::sort(part.begin(), part.end());
    parts.push_back(std::move(part));
  }
  return parts;  // ordered by minimum element since seeds scan upward
}

MultipartiteResult DerangementGraph::complete_multipartite() const {
  MultipartiteResult res;
  const PermGroup fix = group_.fix_subgroup();
  res.fix_order = fix.order();
  res.fix_index = group_.order() / fix.order();

  std::vector<std::uint32_t> fix_idx;
  bool fix_has_derangement = false;
  for (const Perm& f : fix.elements()) {
    const std::int64_t i = group_.index_of(f);
    if (i < 0) throw std::logic_error("Fix(G) is not inside G");
    fix_idx.push_back(std::uint32_t(i));
    if (is_derangement(f)) fix_has_derangement = true;
  }
  std::sort(fix_idx.begin(), fix_idx.end());

  auto parts = fix_coset_partition(group_, fix);

  if (fix_has_derangement) {
    // Algebraic route says "not complete multipartite"; produce the
    // structural counterexample: an edge inside the identity part.
    res.status = MultipartiteStatus::kNone;
    const std::uint32_t id_idx = std::uint32_t(group_.identity_index());
    for (std::uint32_t i : fix_idx) {
      if (is_derangement(group_.element(i))) {
        if (!adjacent(i, id_idx))
          throw std::logic_error("derangement not adjacent to the identity");
        res.witness_edge = {i, id_idx};
        break;
      }
    }
    return res;
  }

  // Structural verification: no edges inside a part, all edges across.
  const std::uint32_t v = vertex_count();
  const std::size_t words = adj_.words_per_row();
  std::vector<std::uint64_t> part_mask(words), expected(words);
  for (const auto& part : parts) {
    std::fill(part_mask.begin(), part_mask.end(), 0);
    for (std::uint32_t u : part) part_mask[u >> 6] |= std::uint64_t(1) << (u & 63);
    for (std::uint32_t u : part) {
      // expected row: everything outside the part
      for (std::size_t w = 0; w < words; ++w) expected[w] = ~part_mask[w];
      if (v % 64 != 0) expected[words - 1] &= (std::uint64_t(1) << (v % 64)) - 1;
      for (std::size_t w = 0; w < words; ++w)
        if (adj_.row(u)[w] != expected[w])
          throw std::logic_error(
              "Fix(G) is intersecting but the coset partition is not "
              "complete multipartite");
    }
  }
  res.structurally_verified = true;
  res.status = fix.order() == 1 ? MultipartiteStatus::kCompleteGraph
                                : MultipartiteStatus::kProper;
  MultipartiteDecomposition dec;
  dec.parts = std::move(parts);
  res.decomposition = std::move(dec);
  return res;
}

void DerangementGraph::write_dot(std::ostream& os,
                                 const MultipartiteDecomposition* parts) const {
  os << "// format 1\n";
  os << "graph derangement {\n";
  std::vector<std::uint32_t> part_of;
  if (parts) {
    part_of.assign(vertex_count(), 0);
    for (std::uint32_t p = 0; p < parts->parts.size(); ++p)
      for (std::uint32_t u : parts->parts[p]) part_of[u] = p;
  }
  for (std::uint32_t u = 0; u < vertex_count(); ++u) {
    os << "  v" << u << " [label=\"" << u << '"';
    if (parts) os << ", part=" << part_of[u];
    os << "];\n";
  }
  for (std::uint32_t u = 0; u < vertex_count(); ++u)
    for (std::uint32_t w = u + 1; w < vertex_count(); ++w)
      if (adj_.get(u, w)) os << "  v" << u << " -- v" << w << ";\n";
  os << "}\n";
}

void DerangementGraph::write_bitmap(std::ostream& os) const {
  auto put32 = [&os](std::uint32_t x) {
    for (int i = 0; i < 4; ++i) os.put(char((x >> (8 * i)) & 0xff));
  };
  put32(std::uint32_t(regular_degree()));
  put32(vertex_count());
  const std::uint32_t v = vertex_count();
  const std::size_t stride = (std::size_t(v) + 7) / 8;
  for (std::uint32_t u = 0; u < v; ++u) {
    for (std::size_t byte = 0; byte < stride; ++byte) {
      unsigned out = 0;
      for (std::uint32_t bit = 0; bit < 8; ++bit) {
        const std::uint64_t j = byte * 8 + bit;
        if (j < v && adj_.get(u, std::uint32_t(j))) out |= 1u << bit;
      }
      os.put(char(out));
    }
  }
}

}  // namespace dlab
