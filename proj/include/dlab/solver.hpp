#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "dlab/dgraph.hpp"
#include "dlab/perm.hpp"
#include "json.hpp"

namespace dlab {

// Reduced fraction with positive denominator.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  static Rational make(std::int64_t n, std::int64_t d);
  bool operator==(const Rational&) const = default;
  bool is_integer() const { return den == 1; }
};

bool operator<(const Rational& a, const Rational& b);
inline bool operator<=(const Rational& a, const Rational& b) {
  return a == b || a < b;
}
std::string to_string(const Rational& r);

struct SolverCaps {
  std::uint64_t max_vertices = 5'000;      // exact B&B above this -> greedy bound
  std::uint64_t strict_group_cap = 500;    // strict-EKR enumeration gate
  std::uint64_t max_enumerated = 100'000;  // maximum-coclique enumeration cap
  std::uint64_t crosscheck_cap = 600;      // B&B cross-check of decompositions
};

struct CliqueResult {
  std::uint64_t size = 0;
  std::vector<std::uint32_t> witness;  // lexicographically least maximum witness
  bool exact = true;                   // false when the cap forced a greedy bound
};

// Exact maximum clique: branch and bound with a greedy-coloring upper bound,
// then a deterministic re-run that returns the lexicographically least
// maximum clique. Above caps.max_vertices a greedy lower bound is returned
// with exact = false.
CliqueResult max_clique(const BitMatrix& adj, const SolverCaps& caps = {});

// Maximum coclique = maximum clique of the complement.
CliqueResult max_coclique(const BitMatrix& adj, const SolverCaps& caps = {});

BitMatrix complement(const BitMatrix& adj);

// All cliques of exactly `target` vertices, in lexicographic order, up to
// `max_count` (sets `truncated` past the cap).
std::vector<std::vector<std::uint32_t>> enumerate_cliques_of_size(
    const BitMatrix& adj, std::uint64_t target, std::uint64_t max_count,
    bool& truncated);

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct CliqueCocliqueReport {
  std::uint64_t alpha = 0;
  std::uint64_t omega = 0;
  std::uint64_t vertices = 0;
  bool holds = false;     // alpha * omega <= vertices
  bool equality = false;  // alpha * omega == vertices
  // When equality holds and both witnesses are exact: |coclique ^ clique| == 1.
  std::optional<bool> witness_meets_once;
};

CliqueCocliqueReport clique_coclique_check(std::uint64_t alpha, std::uint64_t omega,
                                           std::uint64_t vertices,
                                           const std::vector<std::uint32_t>* coclique,
                                           const std::vector<std::uint32_t>* clique,
                                           const BitMatrix* adj);

struct AnalysisOptions {
  std::uint64_t group_cap = kDefaultGroupCap;
  std::uint64_t graph_cap = kDefaultGraphCap;
  std::uint64_t pair_cap = kDefaultPairCap;
  SolverCaps solver;
  bool with_block_systems = true;
};

// Everything the tool can say about one group.
struct AnalysisReport {
  std::string group_name;
  std::uint32_t degree = 0;
  std::uint64_t order = 0;
  bool transitive = false;
  std::uint64_t stabilizer_size = 0;  // max over points
  bool graph_built = false;
  std::optional<std::uint64_t> alpha, omega;
  bool alpha_exact = false, omega_exact = false;
  Rational rho;  // alpha * n / |G| for transitive inputs; max stabilizer otherwise
  std::optional<bool> ekr;         // unset for intransitive inputs
  std::optional<bool> strict_ekr;  // unset when unknown or not applicable
  std::string multipartite_kind;   // "proper" | "complete_graph" | "none"
  std::optional<std::pair<std::uint64_t, std::uint64_t>> multipartite;  // parts, size
  std::uint64_t fix_order = 0;
  std::uint64_t fix_index = 0;
  std::optional<std::uint64_t> rank;
  std::vector<std::uint32_t> clique_witness, coclique_witness;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> block_systems;  // count, size
  std::vector<CheckResult> checks;

  bool all_checks_pass() const;
};

AnalysisReport analyze(const PermGroup& g, const AnalysisOptions& opts = {});

nlohmann::ordered_json report_to_json(const AnalysisReport& r);
void write_report_csv(std::ostream& os, const AnalysisReport& r);

// EKR verdicts for a transitive group whose alpha is known exactly.
struct EkrVerdict {
  bool ekr = false;
  std::optional<bool> strict;  // unset when above caps or enumeration truncated
};

EkrVerdict ekr_check(const PermGroup& g, const DerangementGraph& graph,
                     std::uint64_t alpha, const SolverCaps& caps);

// Degree-2p clique procedure for odd primes p.
struct TwoPResult {
  enum class Route { kDerangementPower, kBlockComposition, kPrimitiveFallback };
  Route route = Route::kPrimitiveFallback;
  std::vector<std::uint32_t> clique;  // p element indices; empty on fallback
};

// Scans for an order-p element; a {p,p} one immediately spans a clique, a
// p-cycle is completed by a disjoint p-cycle on the complementary block of
// the size-p block system through its support. Returns an empty clique
// (fallback) when no such system exists, i.e. for 2-transitive inputs.
TwoPResult two_p_clique(const PermGroup& g, std::uint32_t p);

// alpha(Gamma_G) / max point-stabilizer size, as a reduced fraction. Uses the
// decomposition short-circuit when the graph is complete multipartite and the
// exact solver otherwise.
Rational intersection_density(const PermGroup& g, const AnalysisOptions& opts = {});

struct NoHomomorphismReport {
  std::uint64_t alpha_g = 0, alpha_h = 0;
  std::uint64_t index = 0;  // |G| / |H|
  bool alpha_bound_holds = false;  // alpha_g <= alpha_h * index
  Rational rho_g, rho_h;
  bool rho_bound_holds = false;  // rho_g <= rho_h
};

// Requires h <= g, same degree, both transitive.
NoHomomorphismReport no_homomorphism_bound(const PermGroup& g, const PermGroup& h,
                                           const AnalysisOptions& opts = {});

}  // namespace dlab
