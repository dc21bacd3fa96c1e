#include "dlab/perm.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include "dlab/common.hpp"

namespace dlab {

bool Perm::is_identity() const {
  for (std::uint32_t i = 0; i < img.size(); ++i)
    if (img[i] != i) return false;
  return true;
}

std::size_t PermHash::operator()(const Perm& p) const {
  // FNV-1a over the image words
  std::uint64_t h = 1469598103934665603ull;
  for (std::uint32_t v : p.img) {
    h ^= v;
    h *= 1099511628211ull;
  }
  return std::size_t(h);
}

Perm identity_perm(std::uint32_t n) {
  Perm p;
  p.img.resize(n);
  std::iota(p.img.begin(), p.img.end(), 0u);
  return p;
}

void validate_perm(const Perm& p) {
  std::vector<bool> seen(p.img.size(), false);
  for (std::uint32_t v : p.img) {
    if (v >= p.img.size() || seen[v])
      throw std::invalid_argument("image vector is not a bijection");
    seen[v] = true;
  }
}

Perm compose(const Perm& a, const Perm& b) {
  if (a.degree() != b.degree())
    throw std::invalid_argument("degree mismatch in composition");
  Perm r;
  r.img.resize(a.degree());
  for (std::uint32_t i = 0; i < a.degree(); ++i) r.img[i] = b.img[a.img[i]];
  return r;
}

Perm invert(const Perm& a) {
  Perm r;
  r.img.resize(a.degree());
  for (std::uint32_t i = 0; i < a.degree(); ++i) r.img[a.img[i]] = i;
  return r;
}

Perm conjugate(const Perm& a, const Perm& t) {
  return compose(compose(t, a), invert(t));
}

Perm perm_from_cycles(std::uint32_t n,
                      const std::vector<std::vector<std::uint32_t>>& cycles) {
  Perm p = identity_perm(n);
  std::vector<bool> used(n, false);
  for (const auto& cyc : cycles) {
    for (std::size_t i = 0; i < cyc.size(); ++i) {
      std::uint32_t from = cyc[i], to = cyc[(i + 1) % cyc.size()];
      if (from < 1 || from > n || to < 1 || to > n)
        throw std::invalid_argument("cycle point out of range");
      if (used[from - 1]) throw std::invalid_argument("cycles are not disjoint");
      used[from - 1] = true;
      p.img[from - 1] = to - 1;
    }
  }
  validate_perm(p);
  return p;
}

std::vector<std::uint32_t> fixed_points(const Perm& a) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t i = 0; i < a.degree(); ++i)
    if (a.img[i] == i) out.push_back(i);
  return out;
}

bool is_derangement(const Perm& a) {
  for (std::uint32_t i = 0; i < a.degree(); ++i)
    if (a.img[i] == i) return false;
  return true;
}

std::vector<std::uint32_t> cycle_type(const Perm& a) {
  std::vector<std::uint32_t> lengths;
  std::vector<bool> seen(a.degree(), false);
  for (std::uint32_t i = 0; i < a.degree(); ++i) {
    if (seen[i]) continue;
    std::uint32_t len = 0, j = i;
    do {
      seen[j] = true;
      j = a.img[j];
      ++len;
    } while (j != i);
    lengths.push_back(len);
  }
  std::sort(lengths.rbegin(), lengths.rend());
  return lengths;
}

std::uint64_t perm_order(const Perm& a) {
  std::uint64_t ord = 1;
  for (std::uint32_t len : cycle_type(a)) ord = std::lcm(ord, std::uint64_t(len));
  return ord;
}

std::vector<std::uint32_t> support(const Perm& a) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t i = 0; i < a.degree(); ++i)
    if (a.img[i] != i) out.push_back(i);
  return out;
}

std::string cycle_string(const Perm& a) {
  std::ostringstream os;
  std::vector<bool> seen(a.degree(), false);
  bool any = false;
  for (std::uint32_t i = 0; i < a.degree(); ++i) {
    if (seen[i] || a.img[i] == i) continue;
    any = true;
    os << '(';
    std::uint32_t j = i;
    bool first = true;
    do {
      if (!first) os << ' ';
      os << (j + 1);
      first = false;
      seen[j] = true;
      j = a.img[j];
    } while (j != i);
    os << ')';
  }
  if (!any) return "id";
  return os.str();
}

// --- PermGroup -----------------------------------------------------------

void PermGroup::build_index() {
  index_.clear();
  index_.reserve(elements_.size() * 2);
  for (std::uint32_t i = 0; i < elements_.size(); ++i) index_.emplace(elements_[i], i);
}

PermGroup PermGroup::generate(std::vector<Perm> generators, std::string name,
                              std::uint64_t cap) {
  if (generators.empty()) throw std::invalid_argument("no generators given");
  const std::uint32_t n = generators[0].degree();
  for (const Perm& g : generators) {
    if (g.degree() != n) throw std::invalid_argument("generator degree mismatch");
    validate_perm(g);
  }

  std::unordered_map<Perm, std::uint32_t, PermHash> seen;
  std::deque<Perm> stable;  // stable addresses while the queue is live
  std::deque<std::size_t> queue;

  auto push = [&](Perm p) {
    if (seen.contains(p)) return false;
    if (stable.size() >= cap)
      throw CapExceeded("group closure exceeds cap " + std::to_string(cap) +
                            " (partial size " + std::to_string(stable.size()) + ")",
                        stable.size());
    seen.emplace(p, std::uint32_t(stable.size()));
    stable.push_back(std::move(p));
    queue.push_back(stable.size() - 1);
    return true;
  };

  push(identity_perm(n));
  while (!queue.empty()) {
    const std::size_t i = queue.front();
    queue.pop_front();
    for (const Perm& g : generators) push(compose(stable[i], g));
  }

  PermGroup out;
  out.degree_ = n;
  out.name_ = std::move(name);
  out.generators_ = std::move(generators);
  out.elements_.assign(stable.begin(), stable.end());
  std::sort(out.elements_.begin(), out.elements_.end());
  out.build_index();
  return out;
}

PermGroup PermGroup::from_sorted_elements(std::vector<Perm> generators,
                                          std::vector<Perm> elements,
                                          std::string name) {
  PermGroup out;
  out.degree_ = elements.empty() ? 0 : elements[0].degree();
  out.name_ = std::move(name);
  out.generators_ = std::move(generators);
  out.elements_ = std::move(elements);
  out.build_index();
  return out;
}

std::int64_t PermGroup::index_of(const Perm& p) const {
  auto it = index_.find(p);
  return it == index_.end() ? -1 : std::int64_t(it->second);
}

std::size_t PermGroup::identity_index() const {
  std::int64_t i = index_of(identity_perm(degree_));
  if (i < 0) throw std::logic_error("group does not contain the identity");
  return std::size_t(i);
}

bool PermGroup::is_transitive() const {
  return orbits().size() == 1;
}

std::vector<std::vector<std::uint32_t>> PermGroup::orbits() const {
  std::vector<std::vector<std::uint32_t>> out;
  std::vector<bool> seen(degree_, false);
  for (std::uint32_t start = 0; start < degree_; ++start) {
    if (seen[start]) continue;
    std::vector<std::uint32_t> orbit{start};
    seen[start] = true;
    for (std::size_t head = 0; head < orbit.size(); ++head) {
      for (const Perm& g : generators_) {
        std::uint32_t to = g.img[orbit[head]];
        if (!seen[to]) {
          seen[to] = true;
          orbit.push_back(to);
        }
      }
    }
    std::sort(orbit.begin(), orbit.end());
    out.push_back(std::move(orbit));
  }
  return out;
}

PermGroup PermGroup::point_stabilizer(std::uint32_t omega) const {
  if (omega >= degree_) throw std::invalid_argument("point out of range");
  std::vector<Perm> stab;
  for (const Perm& e : elements_)
    if (e.img[omega] == omega) stab.push_back(e);
  std::vector<Perm> gens = reduce_generators(stab);
  return from_sorted_elements(std::move(gens), std::move(stab),
                              name_ + ".stab" + std::to_string(omega + 1));
}

// Union-find congruence closure seeded with a ~ b: repeatedly merge the
// images of known-equivalent pairs under every generator until stable.
std::vector<std::uint32_t> PermGroup::congruence_partition(std::uint32_t a,
                                                           std::uint32_t b) const {
  std::vector<std::uint32_t> parent(degree_);
  std::iota(parent.begin(), parent.end(), 0u);
  auto find = [&](std::uint32_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };

  std::vector<std::pair<std::uint32_t, std::uint32_t>> work{{a, b}};
  while (!work.empty()) {
    auto [x, y] = work.back();
    work.pop_back();
    std::uint32_t rx = find(x), ry = find(y);
    if (rx == ry) continue;
    if (rx > ry) std::swap(rx, ry);
    parent[ry] = rx;
    for (const Perm& g : generators_) work.emplace_back(g.img[x], g.img[y]);
  }

  std::vector<std::uint32_t> cls(degree_);
  for (std::uint32_t i = 0; i < degree_; ++i) cls[i] = find(i);
  return cls;
}

std::vector<std::uint32_t> PermGroup::minimal_block(std::uint32_t a,
                                                    std::uint32_t b) const {
  if (a >= degree_ || b >= degree_ || a == b)
    throw std::invalid_argument("minimal_block needs two distinct points");
  if (!is_transitive())
    throw std::invalid_argument("minimal_block requires a transitive group");
  std::vector<std::uint32_t> cls = congruence_partition(a, b);
  std::vector<std::uint32_t> block;
  for (std::uint32_t i = 0; i < degree_; ++i)
    if (cls[i] == cls[a]) block.push_back(i);
  return block;
}

std::vector<BlockSystem> PermGroup::all_minimal_block_systems() const {
  if (!is_transitive())
    throw std::invalid_argument("block systems require a transitive group");
  std::vector<BlockSystem> out;
  std::set<std::vector<std::uint32_t>> seen_first_cell;
  for (std::uint32_t b = 1; b < degree_; ++b) {
    std::vector<std::uint32_t> cls = congruence_partition(0, b);
    std::vector<std::vector<std::uint32_t>> by_rep(degree_);
    for (std::uint32_t i = 0; i < degree_; ++i) by_rep[cls[i]].push_back(i);
    BlockSystem bs;
    for (auto& cell : by_rep)
      if (!cell.empty()) bs.cells.push_back(std::move(cell));
    std::sort(bs.cells.begin(), bs.cells.end());
    if (bs.cells.size() == 1 || bs.cell_size() == 1) continue;  // trivial
    if (!seen_first_cell.insert(bs.cells[0]).second) continue;
    for (const auto& cell : bs.cells)
      if (cell.size() != bs.cell_size())
        throw std::logic_error("unequal cells in a block system");
    if (!blocks_preserved(*this, bs))
      throw std::logic_error("congruence classes are not blocks");
    out.push_back(std::move(bs));
  }
  std::sort(out.begin(), out.end(), [](const BlockSystem& x, const BlockSystem& y) {
    return x.cell_size() != y.cell_size() ? x.cell_size() < y.cell_size()
                                          : x.cells < y.cells;
  });
  return out;
}

PermGroup PermGroup::fix_subgroup(std::uint64_t cap) const {
  std::vector<Perm> with_fix;
  for (const Perm& e : elements_)
    if (!is_derangement(e)) with_fix.push_back(e);
  if (with_fix.empty()) with_fix.push_back(identity_perm(degree_));
  std::vector<Perm> gens = reduce_generators(with_fix, cap);
  PermGroup closure = generate(gens, name_ + ".fix", cap);
  return closure;
}

std::uint64_t PermGroup::rank_on_pairs(std::uint64_t cap) const {
  if (!is_transitive())
    throw std::invalid_argument("rank_on_pairs requires a transitive group");
  const std::uint64_t total = std::uint64_t(degree_) * degree_;
  if (total > cap)
    throw CapExceeded("pair space exceeds cap " + std::to_string(cap), total);
  std::vector<bool> seen(total, false);
  std::uint64_t orbit_count = 0;
  std::vector<std::uint64_t> stack;
  for (std::uint64_t start = 0; start < total; ++start) {
    if (seen[start]) continue;
    ++orbit_count;
    seen[start] = true;
    stack.push_back(start);
    while (!stack.empty()) {
      std::uint64_t cur = stack.back();
      stack.pop_back();
      const std::uint32_t x = std::uint32_t(cur / degree_);
      const std::uint32_t y = std::uint32_t(cur % degree_);
      for (const Perm& g : generators_) {
        std::uint64_t to = std::uint64_t(g.img[x]) * degree_ + g.img[y];
        if (!seen[to]) {
          seen[to] = true;
          stack.push_back(to);
        }
      }
    }
  }
  return orbit_count;
}

bool PermGroup::same_elements(const PermGroup& other) const {
  return degree_ == other.degree_ && elements_ == other.elements_;
}

bool is_subgroup_of(const PermGroup& h, const PermGroup& g) {
  if (h.degree() != g.degree()) return false;
  for (const Perm& e : h.elements())
    if (!g.contains(e)) return false;
  return true;
}

bool is_normal(const PermGroup& g, const PermGroup& h) {
  if (!is_subgroup_of(h, g))
    throw std::invalid_argument("h is not a subgroup of g");
  for (const Perm& x : g.generators())
    for (const Perm& e : h.elements())
      if (!h.contains(conjugate(e, x))) return false;
  return true;
}

std::vector<Perm> reduce_generators(const std::vector<Perm>& elements,
                                    std::uint64_t cap) {
  if (elements.empty()) throw std::invalid_argument("no elements given");
  const std::uint32_t n = elements[0].degree();
  std::vector<Perm> gens;
  std::optional<PermGroup> closure;
  for (const Perm& e : elements) {
    if (e.is_identity()) continue;
    if (closure && closure->contains(e)) continue;
    gens.push_back(e);
    closure = PermGroup::generate(gens, "tmp", cap);
  }
  if (gens.empty()) gens.push_back(identity_perm(n));
  return gens;
}

bool blocks_preserved(const PermGroup& g, const BlockSystem& bs) {
  std::set<std::vector<std::uint32_t>> cells(bs.cells.begin(), bs.cells.end());
  for (const Perm& x : g.generators()) {
    for (const auto& cell : bs.cells) {
      std::vector<std::uint32_t> img;
      img.reserve(cell.size());
      for (std::uint32_t pt : cell) img.push_back(x.img[pt]);
      std::sort(img.begin(), img.end());
      if (!cells.contains(img)) return false;
    }
  }
  return true;
}

// --- JSON ----------------------------------------------------------------

nlohmann::ordered_json group_to_json(const PermGroup& g) {
  nlohmann::ordered_json j;
  j["format"] = 1;
  j["name"] = g.name();
  j["degree"] = g.degree();
  j["order"] = g.order();
  nlohmann::ordered_json gens = nlohmann::ordered_json::array();
  for (const Perm& p : g.generators()) {
    nlohmann::ordered_json img = nlohmann::ordered_json::array();
    for (std::uint32_t v : p.img) img.push_back(v + 1);
    gens.push_back(std::move(img));
  }
  j["generators"] = std::move(gens);
  return j;
}

PermGroup group_from_json(const nlohmann::json& j, std::uint64_t cap) {
  if (j.contains("format") && j["format"].get<int>() != 1)
    throw std::invalid_argument("unsupported group file format");
  if (!j.contains("degree") || !j.contains("generators"))
    throw std::invalid_argument("group file needs degree and generators");
  const std::uint32_t n = j["degree"].get<std::uint32_t>();
  if (n < 1) throw std::invalid_argument("degree must be at least 1");
  const std::string name = j.value("name", std::string("group"));

  auto parse_perm = [n](const nlohmann::json& arr) {
    Perm p;
    p.img.reserve(arr.size());
    for (const auto& v : arr) {
      std::int64_t img = v.get<std::int64_t>();
      if (img < 1 || img > std::int64_t(n))
        throw std::invalid_argument("image out of range in group file");
      p.img.push_back(std::uint32_t(img - 1));
    }
    if (p.degree() != n)
      throw std::invalid_argument("image vector has wrong length");
    validate_perm(p);
    return p;
  };

  std::vector<Perm> gens;
  for (const auto& arr : j["generators"]) gens.push_back(parse_perm(arr));
  if (gens.empty()) throw std::invalid_argument("group file has no generators");
  PermGroup g = PermGroup::generate(std::move(gens), name, cap);

  if (j.contains("elements")) {
    std::vector<Perm> given;
    for (const auto& arr : j["elements"]) given.push_back(parse_perm(arr));
    std::sort(given.begin(), given.end());
    if (given != g.elements())
      throw std::invalid_argument(
          "element list does not match the closure of the generators");
  }
  if (j.contains("order") && j["order"].get<std::uint64_t>() != g.order())
    throw std::invalid_argument("declared order does not match the closure");
  return g;
}

}  // namespace dlab
