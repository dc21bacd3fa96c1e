// Test-only brute-force oracles. Everything here is deliberately independent
// of the library's implementation paths: plain polynomial tables for field
// arithmetic, exhaustive subset search for cliques/cocliques, and exhaustive
// partition search for block systems.
#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <vector>

#include "dlab/dgraph.hpp"
#include "dlab/perm.hpp"

namespace oracle {

// GF(p^k) arithmetic done on raw coefficient vectors against a given modulus.
// Codes match the library convention (sum a_i p^i) but all arithmetic is
// recomputed from scratch here.
struct NaiveField {
  std::uint32_t p, k, q;
  std::vector<std::uint32_t> modulus;  // coefficient of x^i at index i

  std::vector<std::uint32_t> digits(std::uint32_t code) const {
    std::vector<std::uint32_t> d(k, 0);
    for (std::uint32_t i = 0; i < k; ++i) {
      d[i] = code % p;
      code /= p;
    }
    return d;
  }

  std::uint32_t code_of(std::vector<std::uint32_t> d) const {
    std::uint32_t c = 0;
    for (std::size_t i = d.size(); i-- > 0;) c = c * p + d[i];
    return c;
  }

  std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
    auto da = digits(a), db = digits(b);
    for (std::uint32_t i = 0; i < k; ++i) da[i] = (da[i] + db[i]) % p;
    return code_of(da);
  }

  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    auto da = digits(a), db = digits(b);
    std::vector<std::uint32_t> prod(2 * k, 0);
    for (std::uint32_t i = 0; i < k; ++i)
      for (std::uint32_t j = 0; j < k; ++j)
        prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
    // long division by the monic modulus
    for (std::size_t deg = prod.size() - 1; deg >= k; --deg) {
      std::uint32_t lead = prod[deg];
      if (lead == 0) continue;
      for (std::uint32_t i = 0; i <= k; ++i) {
        std::size_t pos = deg - k + i;
        prod[pos] = (prod[pos] + p - lead * modulus[i] % p) % p;
      }
    }
    prod.resize(k);
    return code_of(prod);
  }

  std::uint32_t inv_by_search(std::uint32_t a) const {
    for (std::uint32_t b = 1; b < q; ++b)
      if (mul(a, b) == 1) return b;
    return 0;
  }

  std::uint32_t order_by_powers(std::uint32_t a) const {
    std::uint32_t acc = a, m = 1;
    while (acc != 1) {
      acc = mul(acc, a);
      ++m;
    }
    return m;
  }
};

// Does the monic polynomial (coeff of x^i at index i) have a root mod p?
inline bool has_root_mod_p(const std::vector<std::uint32_t>& f, std::uint32_t p) {
  for (std::uint32_t x = 0; x < p; ++x) {
    std::uint64_t v = 0, place = 1;
    for (std::uint32_t c : f) {
      v = (v + c * place) % p;
      place = place * x % p;
    }
    if (v == 0) return true;
  }
  return false;
}

// Exhaustive maximum clique by depth-first subset enumeration in ascending
// vertex order; the first witness reaching each size is the lexicographically
// least one of that size.
inline void exhaustive_clique_rec(const dlab::BitMatrix& adj, std::uint32_t start,
                                  std::vector<std::uint32_t>& current,
                                  std::vector<std::uint32_t>& best) {
  if (current.size() > best.size()) best = current;
  for (std::uint32_t v = start; v < adj.size(); ++v) {
    bool ok = true;
    for (std::uint32_t u : current)
      if (!adj.get(u, v)) {
        ok = false;
        break;
      }
    if (!ok) continue;
    current.push_back(v);
    exhaustive_clique_rec(adj, v + 1, current, best);
    current.pop_back();
  }
}

inline std::vector<std::uint32_t> exhaustive_max_clique(const dlab::BitMatrix& adj) {
  std::vector<std::uint32_t> current, best;
  exhaustive_clique_rec(adj, 0, current, best);
  return best;
}

inline dlab::BitMatrix complement_of(const dlab::BitMatrix& adj) {
  dlab::BitMatrix c(adj.size());
  for (std::uint32_t i = 0; i < adj.size(); ++i)
    for (std::uint32_t j = 0; j < adj.size(); ++j)
      if (i != j && !adj.get(i, j)) c.set(i, j);
  return c;
}

inline std::vector<std::uint32_t> exhaustive_max_coclique(const dlab::BitMatrix& adj) {
  dlab::BitMatrix c = complement_of(adj);
  return exhaustive_max_clique(c);
}

// All block systems of a transitive group, found by testing every candidate
// cell through every group element. Only usable for small degree.
inline std::vector<std::vector<std::vector<std::uint32_t>>> exhaustive_block_systems(
    const dlab::PermGroup& g) {
  const std::uint32_t n = g.degree();
  std::vector<std::vector<std::vector<std::uint32_t>>> systems;
  std::set<std::vector<std::uint32_t>> seen_first_cells;
  // Candidate cells are subsets containing point 0, enumerated by bitmask.
  for (std::uint64_t mask = 1; mask < (1ull << n); mask += 2) {
    std::vector<std::uint32_t> cell;
    for (std::uint32_t i = 0; i < n; ++i)
      if (mask & (1ull << i)) cell.push_back(i);
    if (cell.size() < 2 || cell.size() == n || n % cell.size() != 0) continue;
    bool block = true;
    std::set<std::vector<std::uint32_t>> images;
    for (std::size_t e = 0; e < g.order() && block; ++e) {
      const dlab::Perm& x = g.element(e);
      std::vector<std::uint32_t> img;
      for (std::uint32_t pt : cell) img.push_back(x.img[pt]);
      std::sort(img.begin(), img.end());
      std::vector<std::uint32_t> inter;
      std::set_intersection(img.begin(), img.end(), cell.begin(), cell.end(),
                            std::back_inserter(inter));
      if (!inter.empty() && img != cell) block = false;
      images.insert(img);
    }
    if (!block) continue;
    if (!seen_first_cells.insert(cell).second) continue;
    std::vector<std::vector<std::uint32_t>> cells(images.begin(), images.end());
    std::sort(cells.begin(), cells.end());
    systems.push_back(cells);
  }
  return systems;
}

}  // namespace oracle
