#include "dlab/solver.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <ostream>
#include <random>
#include <set>
#include <stdexcept>

#include "dlab/common.hpp"

namespace dlab {

// --- rationals -------------------------------------------------------------

Rational Rational::make(std::int64_t n, std::int64_t d) {
  if (d == 0) throw std::invalid_argument("zero denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  const std::int64_t g = std::gcd(n < 0 ? -n : n, d);
  return Rational{g == 0 ? 0 : n / g, g == 0 ? 1 : d / g};
}

bool operator<(const Rational& a, const Rational& b) {
  return (__int128)a.num * b.den < (__int128)b.num * a.den;
}

std::string to_string(const Rational& r) {
  return std::to_string(r.num) + "/" + std::to_string(r.den);
}

// --- bitset helpers ----------------------------------------------------------

namespace {

using Words = std::vector<std::uint64_t>;

constexpr std::uint32_t kNoBit = 0xffffffffu;

std::size_t words_for(std::uint32_t n) { return (std::size_t(n) + 63) / 64; }

Words full_set(std::uint32_t n) {
  Words w(words_for(n), ~std::uint64_t(0));
  if (n % 64 != 0 && !w.empty()) w.back() = (std::uint64_t(1) << (n % 64)) - 1;
  return w;
}

bool any_bit(const Words& w) {
  for (std::uint64_t x : w)
    if (x) return true;
  return false;
}

std::uint64_t popcount(const Words& w) {
  std::uint64_t c = 0;
  for (std::uint64_t x : w) c += std::popcount(x);
  return c;
}

std::uint32_t first_bit(const Words& w) {
  for (std::size_t i = 0; i < w.size(); ++i)
    if (w[i]) return std::uint32_t(i * 64 + std::countr_zero(w[i]));
  return kNoBit;
}

void clear_bit(Words& w, std::uint32_t v) {
  w[v >> 6] &= ~(std::uint64_t(1) << (v & 63));
}

void set_bit(Words& w, std::uint32_t v) { w[v >> 6] |= std::uint64_t(1) << (v & 63); }

// Greedy coloring of the candidate set in ascending vertex order; returns the
// (vertex, color) sequence sorted by color then vertex, plus the color count.
std::uint32_t color_sort(const BitMatrix& g, const Words& candidates,
                         std::vector<std::pair<std::uint32_t, std::uint32_t>>* seq) {
  const std::size_t words = candidates.size();
  Words uncolored = candidates;
  std::uint32_t color = 0;
  if (seq) seq->clear();
  while (any_bit(uncolored)) {
    ++color;
    Words cls(words, 0);
    for (std::size_t i = 0; i < words; ++i) {
      std::uint64_t rest = uncolored[i];
      while (rest) {
        const std::uint32_t v = std::uint32_t(i * 64 + std::countr_zero(rest));
        rest &= rest - 1;
        const std::uint64_t* nv = g.row(v);
        bool conflict = false;
        for (std::size_t w = 0; w < words; ++w)
          if (nv[w] & cls[w]) {
            conflict = true;
            break;
          }
        if (!conflict) {
          set_bit(cls, v);
          if (seq) seq->emplace_back(v, color);
        }
      }
    }
    for (std::size_t w = 0; w < words; ++w) uncolored[w] &= ~cls[w];
  }
  return color;
}

// Tomita-style branch and bound for the clique number. Works on a relabeled
// graph whose natural order is the static branching order (degree descending,
// canonical index ascending).
class CliqueNumberSolver {
 public:
  explicit CliqueNumberSolver(const BitMatrix& adj) : n_(adj.size()) {
    std::vector<std::uint32_t> order(n_);
    std::iota(order.begin(), order.end(), 0u);
    std::vector<std::size_t> deg(n_);
    for (std::uint32_t v = 0; v < n_; ++v) deg[v] = adj.row_popcount(v);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::uint32_t a, std::uint32_t b) {
                       return deg[a] != deg[b] ? deg[a] > deg[b] : a < b;
                     });
    relabeled_ = BitMatrix(n_);
    for (std::uint32_t i = 0; i < n_; ++i)
      for (std::uint32_t j = 0; j < n_; ++j)
        if (adj.get(order[i], order[j])) relabeled_.set(i, j);
  }

  std::uint64_t solve() {
    if (n_ == 0) return 0;
    best_ = 0;
    Words all = full_set(n_);
    expand(all, 0);
    return best_;
  }

 private:
  void expand(Words& candidates, std::uint64_t rsize) {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> seq;
    color_sort(relabeled_, candidates, &seq);
    const std::size_t words = candidates.size();
    for (auto it = seq.rbegin(); it != seq.rend(); ++it) {
      const auto [v, color] = *it;
      if (rsize + color <= best_) return;
      Words next(words);
      const std::uint64_t* nv = relabeled_.row(v);
      bool nonempty = false;
      for (std::size_t w = 0; w < words; ++w) {
        next[w] = candidates[w] & nv[w];
        nonempty |= next[w] != 0;
      }
      if (!nonempty) {
        if (rsize + 1 > best_) best_ = rsize + 1;
      } else {
        expand(next, rsize + 1);
      }
      clear_bit(candidates, v);
    }
  }

  std::uint32_t n_;
  BitMatrix relabeled_;
  std::uint64_t best_ = 0;
};

// Depth-first search over increasing vertex sequences; the first clique of
// the target size it reaches is the lexicographically least one. With
// `collect` set it enumerates all of them in lexicographic order instead.
class LexCliqueSearch {
 public:
  LexCliqueSearch(const BitMatrix& adj, std::uint64_t target) : adj_(adj), target_(target) {}

  bool find_first(std::vector<std::uint32_t>& out) {
    out_ = &out;
    collect_ = nullptr;
    std::vector<std::uint32_t> cur;
    Words all = full_set(adj_.size());
    return dfs(all, cur);
  }

  void enumerate(std::vector<std::vector<std::uint32_t>>& out, std::uint64_t cap,
                 bool& truncated) {
    collect_ = &out;
    cap_ = cap;
    truncated_ = false;
    std::vector<std::uint32_t> cur;
    Words all = full_set(adj_.size());
    dfs(all, cur);
    truncated = truncated_;
  }

 private:
  bool dfs(Words& candidates, std::vector<std::uint32_t>& cur) {
    const std::uint64_t need = target_ - cur.size();
    if (need == 0) {
      if (collect_) {
        if (collect_->size() >= cap_) {
          truncated_ = true;
          return true;  // unwind
        }
        collect_->push_back(cur);
        return false;
      }
      *out_ = cur;
      return true;
    }
    if (popcount(candidates) < need) return false;
    if (color_sort(adj_, candidates, nullptr) < need) return false;
    const std::size_t words = candidates.size();
    while (true) {
      const std::uint32_t v = first_bit(candidates);
      if (v == kNoBit) return false;
      clear_bit(candidates, v);
      // bits below v are already cleared, so this intersection only keeps
      // candidates above v
      Words next(words);
      const std::uint64_t* nv = adj_.row(v);
      for (std::size_t w = 0; w < words; ++w) next[w] = candidates[w] & nv[w];
      cur.push_back(v);
      const bool done = dfs(next, cur);
      cur.pop_back();
      if (done) return true;
    }
  }

  const BitMatrix& adj_;
  std::uint64_t target_;
  std::vector<std::uint32_t>* out_ = nullptr;
  std::vector<std::vector<std::uint32_t>>* collect_ = nullptr;
  std::uint64_t cap_ = 0;
  bool truncated_ = false;
};

std::vector<std::uint32_t> greedy_clique(const BitMatrix& adj) {
  std::vector<std::uint32_t> cur;
  for (std::uint32_t v = 0; v < adj.size(); ++v) {
    bool ok = true;
    for (std::uint32_t u : cur)
      if (!adj.get(u, v)) {
        ok = false;
        break;
      }
    if (ok) cur.push_back(v);
  }
  return cur;
}

bool is_prime_u32(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

}  // namespace

BitMatrix complement(const BitMatrix& adj) {
  const std::uint32_t n = adj.size();
  BitMatrix c(n);
  const std::size_t words = c.words_per_row();
  for (std::uint32_t i = 0; i < n; ++i) {
    const std::uint64_t* src = adj.row(i);
    std::uint64_t* dst = c.row(i);
    for (std::size_t w = 0; w < words; ++w) dst[w] = ~src[w];
    if (n % 64 != 0) dst[words - 1] &= (std::uint64_t(1) << (n % 64)) - 1;
    dst[i >> 6] &= ~(std::uint64_t(1) << (i & 63));  // no self-loop
  }
  return c;
}

CliqueResult max_clique(const BitMatrix& adj, const SolverCaps& caps) {
  CliqueResult r;
  if (adj.size() == 0) return r;
  if (adj.size() > caps.max_vertices) {
    r.witness = greedy_clique(adj);
    r.size = r.witness.size();
    r.exact = false;
    return r;
  }
  r.size = CliqueNumberSolver(adj).solve();
  LexCliqueSearch search(adj, r.size);
  if (!search.find_first(r.witness))
    throw std::logic_error("no witness at the proven clique number");
  r.exact = true;
  return r;
}

CliqueResult max_coclique(const BitMatrix& adj, const SolverCaps& caps) {
  return max_clique(complement(adj), caps);
}

std::vector<std::vector<std::uint32_t>> enumerate_cliques_of_size(
    const BitMatrix& adj, std::uint64_t target, std::uint64_t max_count,
    bool& truncated) {
  std::vector<std::vector<std::uint32_t>> out;
  if (target == 0) {
    truncated = false;
    return out;
  }
  LexCliqueSearch search(adj, target);
  search.enumerate(out, max_count, truncated);
  return out;
}

CliqueCocliqueReport clique_coclique_check(std::uint64_t alpha, std::uint64_t omega,
                                           std::uint64_t vertices,
                                           const std::vector<std::uint32_t>* coclique,
                                           const std::vector<std::uint32_t>* clique,
                                           const BitMatrix* adj) {
  CliqueCocliqueReport r;
  r.alpha = alpha;
  r.omega = omega;
  r.vertices = vertices;
  r.holds = alpha * omega <= vertices;
  r.equality = alpha * omega == vertices;
  if (r.equality && coclique && clique && adj) {
    std::size_t meet = 0;
    for (std::uint32_t u : *coclique)
      meet += std::size_t(std::count(clique->begin(), clique->end(), u));
    r.witness_meets_once = (meet == 1);
  }
  return r;
}

// --- EKR -----------------------------------------------------------------

EkrVerdict ekr_check(const PermGroup& g, const DerangementGraph& graph,
                     std::uint64_t alpha, const SolverCaps& caps) {
  EkrVerdict v;
  const std::uint32_t n = g.degree();
  v.ekr = (alpha * n == g.order());
  if (!v.ekr) return v;  // strict-EKR is about groups attaining the bound
  if (g.order() > caps.strict_group_cap) return v;  // strict stays unknown

  bool truncated = false;
  auto cocliques = enumerate_cliques_of_size(complement(graph.adjacency()), alpha,
                                             caps.max_enumerated, truncated);
  if (truncated) return v;

  // every maximum coclique must be {x : i^x = j} for some points i, j
  std::set<std::vector<std::uint32_t>> stabilizer_cosets;
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = 0; j < n; ++j) {
      std::vector<std::uint32_t> coset;
      for (std::uint32_t e = 0; e < g.order(); ++e)
        if (g.element(e).img[i] == j) coset.push_back(e);
      stabilizer_cosets.insert(std::move(coset));
    }
  bool strict = true;
  for (const auto& coclique : cocliques)
    if (!stabilizer_cosets.contains(coclique)) {
      strict = false;
      break;
    }
  v.strict = strict;
  return v;
}

// --- degree-2p clique procedure -------------------------------------------

TwoPResult two_p_clique(const PermGroup& g, std::uint32_t p) {
  if (!is_prime_u32(p) || p == 2)
    throw std::invalid_argument("p must be an odd prime");
  if (g.degree() != 2 * p)
    throw std::invalid_argument("group degree must be 2p");
  if (!g.is_transitive())
    throw std::invalid_argument("two_p_clique requires a transitive group");

  std::int64_t sigma_idx = -1;
  for (std::uint32_t i = 0; i < g.order(); ++i)
    if (perm_order(g.element(i)) == p) {
      sigma_idx = i;
      break;
    }
  if (sigma_idx < 0)
    throw std::invalid_argument("no element of order p; input is not a valid "
                                "transitive group of degree 2p");

  TwoPResult res;
  const Perm sigma = g.element(std::size_t(sigma_idx));
  const auto ct = cycle_type(sigma);

  Perm generator;  // of the cyclic clique subgroup
  if (ct.size() == 2 && ct[0] == p && ct[1] == p) {
    res.route = TwoPResult::Route::kDerangementPower;
    generator = sigma;
  } else {
    // sigma is a p-cycle; look for the size-p block system through its support
    const auto supp = support(sigma);
    if (supp.size() != p) throw std::logic_error("order-p element with bad support");
    const auto block = g.minimal_block(supp[0], supp[1]);
    if (block.size() == 2)
      throw std::logic_error(
          "size-2 block system found alongside a p-cycle in degree 2p");
    if (block.size() == 2 * p) {
      res.route = TwoPResult::Route::kPrimitiveFallback;  // no p-block system
      return res;
    }
    if (block.size() != p || block != supp)
      throw std::logic_error("minimal block through the support is not the support");
    std::vector<std::uint32_t> other;
    for (std::uint32_t pt = 0; pt < g.degree(); ++pt)
      if (!std::binary_search(block.begin(), block.end(), pt)) other.push_back(pt);

    std::int64_t sigma2_idx = -1;
    for (std::uint32_t i = 0; i < g.order(); ++i) {
      const Perm& e = g.element(i);
      if (perm_order(e) == p && support(e) == other) {
        const auto ct2 = cycle_type(e);
        if (ct2[0] == p && ct2.size() == std::size_t(p) + 1) {
          sigma2_idx = i;
          break;
        }
      }
    }
    if (sigma2_idx < 0)
      throw std::logic_error("no p-cycle on the complementary block");
    res.route = TwoPResult::Route::kBlockComposition;
    generator = compose(sigma, g.element(std::size_t(sigma2_idx)));
  }

  // collect <generator> and validate it is a clique of size p
  Perm acc = identity_perm(g.degree());
  for (std::uint32_t k = 0; k < p; ++k) {
    const std::int64_t idx = g.index_of(acc);
    if (idx < 0) throw std::logic_error("clique element left the group");
    res.clique.push_back(std::uint32_t(idx));
    acc = compose(acc, generator);
  }
  if (!acc.is_identity()) throw std::logic_error("clique generator order is not p");
  std::sort(res.clique.begin(), res.clique.end());
  for (std::uint32_t idx : res.clique) {
    const Perm& e = g.element(idx);
    if (!e.is_identity()) {
      const auto t = cycle_type(e);
      if (!(t.size() == 2 && t[0] == p && t[1] == p))
        throw std::logic_error("clique subgroup contains a non-{p,p} element");
    }
  }
  for (std::size_t a = 0; a < res.clique.size(); ++a)
    for (std::size_t b = a + 1; b < res.clique.size(); ++b)
      if (!is_derangement(compose(g.element(res.clique[a]),
                                  invert(g.element(res.clique[b])))))
        throw std::logic_error("clique elements are not pairwise adjacent");
  return res;
}

// --- analysis pipeline -----------------------------------------------------

namespace {

std::vector<std::uint32_t> greedy_transversal(
    const std::vector<std::vector<std::uint32_t>>& parts, std::uint32_t vertices) {
  std::vector<std::uint32_t> part_of(vertices, 0);
  for (std::uint32_t p = 0; p < parts.size(); ++p)
    for (std::uint32_t u : parts[p]) part_of[u] = p;
  std::vector<bool> used(parts.size(), false);
  std::vector<std::uint32_t> out;
  for (std::uint32_t v = 0; v < vertices && out.size() < parts.size(); ++v) {
    if (used[part_of[v]]) continue;
    used[part_of[v]] = true;
    out.push_back(v);
  }
  return out;
}

void add_check(AnalysisReport& r, std::string name, bool pass, std::string detail) {
  r.checks.push_back(CheckResult{std::move(name), pass, std::move(detail)});
}

}  // namespace

bool AnalysisReport::all_checks_pass() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const CheckResult& c) { return c.pass; });
}

AnalysisReport analyze(const PermGroup& g, const AnalysisOptions& opts) {
  AnalysisReport r;
  r.group_name = g.name();
  r.degree = g.degree();
  r.order = g.order();
  r.transitive = g.is_transitive();

  const std::uint32_t n = g.degree();

  // maximum point-stabilizer size, by direct count
  {
    std::vector<std::uint64_t> stab(n, 0);
    for (const Perm& e : g.elements())
      for (std::uint32_t w = 0; w < n; ++w)
        if (e.img[w] == w) ++stab[w];
    r.stabilizer_size = *std::max_element(stab.begin(), stab.end());
    if (r.transitive) {
      bool ok = true;
      for (std::uint32_t w = 0; w < n; ++w)
        if (stab[w] * n != g.order()) ok = false;
      add_check(r, "orbit_stabilizer", ok,
                "|G| == n * |G_w| for every point of a transitive group");
    }
  }

  const PermGroup fix = g.fix_subgroup(opts.group_cap);
  r.fix_order = fix.order();
  r.fix_index = g.order() / fix.order();
  add_check(r, "fix_normal", is_normal(g, fix), "Fix(G) normal in G");

  if (r.transitive && r.fix_order > 1 && r.fix_index > 1) {
    BlockSystem bs;
    bs.cells = fix.orbits();
    const bool equal_cells =
        std::all_of(bs.cells.begin(), bs.cells.end(), [&](const auto& c) {
          return c.size() == bs.cells[0].size();
        });
    add_check(r, "fix_orbits_are_blocks", equal_cells && blocks_preserved(g, bs),
              "orbits of Fix(G) form a block system");
  }

  std::optional<DerangementGraph> graph;
  if (g.order() <= opts.graph_cap) {
    graph.emplace(DerangementGraph::build(g, opts.graph_cap));
    r.graph_built = true;
  }

  if (r.transitive && n >= 2) {
    const std::uint64_t der =
        graph ? graph->derangements().size() : derangement_indices(g).size();
    add_check(r, "jordan_derangement", der >= 1,
              "a transitive group of degree >= 2 has a derangement");
  }

  if (graph) {
    bool regular = true;
    for (std::uint32_t u = 0; u < graph->vertex_count() && regular; ++u)
      regular = graph->adjacency().row_popcount(u) == graph->regular_degree();
    add_check(r, "regular_degree", regular,
              "graph is |Der(G)|-regular, degree " +
                  std::to_string(graph->regular_degree()));

    bool inv_closed = true;
    std::vector<bool> is_der(g.order(), false);
    for (std::uint32_t d : graph->derangements()) is_der[d] = true;
    for (std::uint32_t d : graph->derangements()) {
      const std::int64_t j = g.index_of(invert(g.element(d)));
      if (j < 0 || !is_der[std::size_t(j)]) inv_closed = false;
    }
    add_check(r, "derangement_inverse_closed", inv_closed, "Der(G) = Der(G)^-1");

    bool conj_closed = true;
    const bool exhaustive_conj = g.order() <= 2000;
    if (exhaustive_conj) {
      for (const Perm& x : g.elements()) {
        for (std::uint32_t d : graph->derangements()) {
          const std::int64_t j = g.index_of(conjugate(g.element(d), x));
          if (j < 0 || !is_der[std::size_t(j)]) conj_closed = false;
        }
        if (!conj_closed) break;
      }
    } else {
      for (const Perm& x : g.generators())
        for (std::uint32_t d : graph->derangements()) {
          const std::int64_t j = g.index_of(conjugate(g.element(d), x));
          if (j < 0 || !is_der[std::size_t(j)]) conj_closed = false;
        }
    }
    add_check(r, "derangement_conjugation_closed", conj_closed,
              exhaustive_conj ? "conjugation by every element"
                              : "conjugation by the generators");

    // adjacency rule: sigma pi^-1 deranged iff pointwise disagreement
    bool rule_ok = true;
    if (g.order() <= 500) {
      for (std::uint32_t u = 0; u < g.order() && rule_ok; ++u)
        for (std::uint32_t v = 0; v < g.order(); ++v) {
          bool disagree_everywhere = true;
          for (std::uint32_t w = 0; w < n; ++w)
            if (g.element(u).img[w] == g.element(v).img[w]) {
              disagree_everywhere = false;
              break;
            }
          if (u == v) disagree_everywhere = false;
          if (disagree_everywhere != graph->adjacent(u, v)) {
            rule_ok = false;
            break;
          }
        }
      add_check(r, "edge_rule_equivalence", rule_ok, "all pairs compared");
    } else {
      std::mt19937 rng(12345);
      std::uniform_int_distribution<std::uint32_t> pick(0, std::uint32_t(g.order() - 1));
      for (int t = 0; t < 100000 && rule_ok; ++t) {
        const std::uint32_t u = pick(rng), v = pick(rng);
        bool disagree_everywhere = u != v;
        for (std::uint32_t w = 0; w < n && disagree_everywhere; ++w)
          if (g.element(u).img[w] == g.element(v).img[w]) disagree_everywhere = false;
        if (disagree_everywhere != graph->adjacent(u, v)) rule_ok = false;
      }
      add_check(r, "edge_rule_equivalence", rule_ok, "100000 sampled pairs");
    }
  }

  // complete multipartite decomposition, algebraic route first
  std::optional<MultipartiteResult> mp;
  if (graph) {
    mp = graph->complete_multipartite();
    add_check(r, "multipartite_routes_agree", true,
              "algebraic and structural routes agree");
  } else {
    // graph above cap: decide algebraically only
    MultipartiteResult m;
    m.fix_order = fix.order();
    m.fix_index = r.fix_index;
    const bool intersecting =
        std::none_of(fix.elements().begin(), fix.elements().end(), is_derangement);
    if (intersecting) {
      MultipartiteDecomposition dec;
      dec.parts = fix_coset_partition(g, fix);
      m.decomposition = std::move(dec);
      m.status = fix.order() == 1 ? MultipartiteStatus::kCompleteGraph
                                  : MultipartiteStatus::kProper;
    } else {
      m.status = MultipartiteStatus::kNone;
    }
    mp = std::move(m);
  }

  switch (mp->status) {
    case MultipartiteStatus::kProper:
      r.multipartite_kind = "proper";
      break;
    case MultipartiteStatus::kCompleteGraph:
      r.multipartite_kind = "complete_graph";
      break;
    case MultipartiteStatus::kNone:
      r.multipartite_kind = "none";
      break;
  }
  if (mp->decomposition) {
    r.multipartite = {mp->decomposition->part_count(), mp->decomposition->part_size()};
  }

  // alpha and omega
  if (mp->decomposition) {
    const auto& parts = mp->decomposition->parts;
    r.alpha = parts[0].size();
    r.omega = parts.size();
    r.alpha_exact = r.omega_exact = true;
    r.coclique_witness = parts[0];
    r.clique_witness = greedy_transversal(parts, std::uint32_t(g.order()));
    if (graph && g.order() <= opts.solver.crosscheck_cap) {
      const CliqueResult cc = max_coclique(graph->adjacency(), opts.solver);
      const CliqueResult cl = max_clique(graph->adjacency(), opts.solver);
      const bool agree = cc.exact && cl.exact && cc.size == *r.alpha &&
                         cl.size == *r.omega && cc.witness == r.coclique_witness &&
                         cl.witness == r.clique_witness;
      add_check(r, "solver_crosscheck", agree,
                "branch-and-bound agrees with the decomposition values");
    }
  } else if (graph) {
    const CliqueResult cc = max_coclique(graph->adjacency(), opts.solver);
    const CliqueResult cl = max_clique(graph->adjacency(), opts.solver);
    r.alpha = cc.size;
    r.omega = cl.size;
    r.alpha_exact = cc.exact;
    r.omega_exact = cl.exact;
    r.coclique_witness = cc.witness;
    r.clique_witness = cl.witness;
  }

  if (r.alpha) {
    r.rho = Rational::make(std::int64_t(*r.alpha), std::int64_t(r.stabilizer_size));
    add_check(r, "witness_coclique_intersecting",
              is_intersecting_set(g, r.coclique_witness),
              "coclique witness is an intersecting family");
    if (graph) {
      bool adj_ok = true;
      for (std::size_t a = 0; a < r.clique_witness.size(); ++a)
        for (std::size_t b = a + 1; b < r.clique_witness.size(); ++b)
          if (!graph->adjacent(r.clique_witness[a], r.clique_witness[b])) adj_ok = false;
      add_check(r, "witness_clique_adjacent", adj_ok,
                "clique witness is pairwise adjacent");
    }
    const auto cc = clique_coclique_check(
        *r.alpha, *r.omega, g.order(), &r.coclique_witness, &r.clique_witness,
        graph ? &graph->adjacency() : nullptr);
    std::string detail = std::to_string(cc.alpha) + " * " + std::to_string(cc.omega) +
                         (cc.equality ? " == " : " <= ") + std::to_string(cc.vertices);
    if (cc.witness_meets_once)
      detail += *cc.witness_meets_once ? "; witnesses meet once" : "; witnesses do not meet once";
    add_check(r, "clique_coclique",
              cc.holds && (!cc.witness_meets_once || *cc.witness_meets_once), detail);

    if (r.transitive && r.alpha_exact) {
      if (graph) {
        const EkrVerdict v = ekr_check(g, *graph, *r.alpha, opts.solver);
        r.ekr = v.ekr;
        r.strict_ekr = v.strict;
      } else {
        r.ekr = (*r.alpha * n == g.order());
      }
      if (n >= 3 && r.alpha_exact) {
        const bool in_range = Rational::make(1, 1) <= r.rho &&
                              r.rho <= Rational::make(n, 3);
        add_check(r, "rho_range", in_range, "1 <= rho <= n/3");
      }
    }
  }

  if (r.transitive && std::uint64_t(n) * n <= opts.pair_cap)
    r.rank = g.rank_on_pairs(opts.pair_cap);

  if (r.transitive && opts.with_block_systems) {
    for (const BlockSystem& bs : g.all_minimal_block_systems())
      r.block_systems.emplace_back(bs.cell_count(), bs.cell_size());
  }

  return r;
}

// --- no-homomorphism bound ---------------------------------------------------

namespace {

// alpha with the usual decomposition short-circuit; exact or throws.
std::uint64_t exact_alpha(const PermGroup& g, const AnalysisOptions& opts) {
  DerangementGraph graph = DerangementGraph::build(g, opts.graph_cap);
  const MultipartiteResult mp = graph.complete_multipartite();
  if (mp.decomposition) return mp.decomposition->part_size();
  const CliqueResult cc = max_coclique(graph.adjacency(), opts.solver);
  if (!cc.exact)
    throw CapExceeded("coclique solver cap exceeded", cc.size);
  return cc.size;
}

}  // namespace

Rational intersection_density(const PermGroup& g, const AnalysisOptions& opts) {
  const std::uint64_t alpha = exact_alpha(g, opts);
  std::vector<std::uint64_t> stab(g.degree(), 0);
  for (const Perm& e : g.elements())
    for (std::uint32_t w = 0; w < g.degree(); ++w)
      if (e.img[w] == w) ++stab[w];
  const std::uint64_t max_stab = *std::max_element(stab.begin(), stab.end());
  return Rational::make(std::int64_t(alpha), std::int64_t(max_stab));
}

NoHomomorphismReport no_homomorphism_bound(const PermGroup& g, const PermGroup& h,
                                           const AnalysisOptions& opts) {
  if (g.degree() != h.degree())
    throw std::invalid_argument("groups act on different point sets");
  if (!is_subgroup_of(h, g)) throw std::invalid_argument("h is not a subgroup of g");
  if (!g.is_transitive() || !h.is_transitive())
    throw std::invalid_argument("both groups must be transitive");

  NoHomomorphismReport r;
  r.alpha_g = exact_alpha(g, opts);
  r.alpha_h = exact_alpha(h, opts);
  r.index = g.order() / h.order();
  r.alpha_bound_holds = r.alpha_g <= r.alpha_h * r.index;
  r.rho_g = Rational::make(std::int64_t(r.alpha_g * g.degree()), std::int64_t(g.order()));
  r.rho_h = Rational::make(std::int64_t(r.alpha_h * h.degree()), std::int64_t(h.order()));
  r.rho_bound_holds = r.rho_g <= r.rho_h;
  return r;
}

// --- serialization -----------------------------------------------------------

nlohmann::ordered_json report_to_json(const AnalysisReport& r) {
  nlohmann::ordered_json j;
  j["format"] = 1;
  j["group"] = {{"name", r.group_name}, {"degree", r.degree}, {"order", r.order}};
  j["transitive"] = r.transitive;
  j["stabilizer_size"] = r.stabilizer_size;
  j["graph_built"] = r.graph_built;
  if (r.alpha) {
    j["alpha"] = *r.alpha;
    j["alpha_exact"] = r.alpha_exact;
  } else {
    j["alpha"] = nullptr;
    j["alpha_exact"] = false;
  }
  if (r.omega) {
    j["omega"] = *r.omega;
    j["omega_exact"] = r.omega_exact;
  } else {
    j["omega"] = nullptr;
    j["omega_exact"] = false;
  }
  if (r.alpha)
    j["rho"] = {{"num", r.rho.num}, {"den", r.rho.den}};
  else
    j["rho"] = nullptr;
  j["ekr"] = r.ekr ? nlohmann::ordered_json(*r.ekr) : nlohmann::ordered_json(nullptr);
  j["strict_ekr"] =
      r.strict_ekr ? nlohmann::ordered_json(*r.strict_ekr) : nlohmann::ordered_json(nullptr);
  if (r.multipartite)
    j["multipartite"] = {{"parts", r.multipartite->first},
                         {"part_size", r.multipartite->second}};
  else
    j["multipartite"] = nullptr;
  j["multipartite_kind"] = r.multipartite_kind;
  j["fix"] = {{"order", r.fix_order}, {"index", r.fix_index}};
  j["rank"] = r.rank ? nlohmann::ordered_json(*r.rank) : nlohmann::ordered_json(nullptr);
  nlohmann::ordered_json systems = nlohmann::ordered_json::array();
  for (const auto& [count, size] : r.block_systems)
    systems.push_back({{"cells", count}, {"cell_size", size}});
  j["block_systems"] = std::move(systems);
  j["clique_witness"] = r.clique_witness;
  j["coclique_witness"] = r.coclique_witness;
  nlohmann::ordered_json checks = nlohmann::ordered_json::array();
  for (const CheckResult& c : r.checks)
    checks.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
  j["checks"] = std::move(checks);
  return j;
}

void write_report_csv(std::ostream& os, const AnalysisReport& r) {
  os << "# format 1\n";
  os << "name,degree,order,transitive,stabilizer_size,alpha,omega,rho_num,rho_den,"
        "ekr,strict_ekr,multipartite_parts,multipartite_part_size,rank\n";
  os << r.group_name << ',' << r.degree << ',' << r.order << ','
     << (r.transitive ? 1 : 0) << ',' << r.stabilizer_size << ',';
  if (r.alpha) os << *r.alpha;
  os << ',';
  if (r.omega) os << *r.omega;
  os << ',';
  if (r.alpha) os << r.rho.num << ',' << r.rho.den;
  else os << ',';
  os << ',';
  if (r.ekr) os << (*r.ekr ? 1 : 0);
  os << ',';
  if (r.strict_ekr) os << (*r.strict_ekr ? 1 : 0);
  os << ',';
  if (r.multipartite) os << r.multipartite->first << ',' << r.multipartite->second;
  else os << ',';
  os << ',';
  if (r.rank) os << *r.rank;
  os << '\n';
}

}  // namespace dlab
