#include "dlab/dgraph.hpp"

#include <fstream>
#include <sstream>

#include "dlab/common.hpp"
#include "dlab/constructions.hpp"
#include "doctest.h"
#include "helpers.hpp"
#include "oracles.hpp"

using dlab::DerangementGraph;
using dlab::MultipartiteStatus;
using dlab::Perm;
using dlab::PermGroup;

TEST_CASE("derangement sets") {
  const PermGroup s3 = testgroups::sym_natural(3);
  CHECK(dlab::derangement_indices(s3).size() == 2);  // the two 3-cycles

  const PermGroup e6 = dlab::build_example6();
  CHECK(dlab::derangement_indices(e6).size() == 8);

  const PermGroup c5 = dlab::build_cyclic_regular(5);
  CHECK(dlab::derangement_indices(c5).size() == 4);
}

TEST_CASE("graph build and the edge rule") {
  const PermGroup s3 = testgroups::sym_natural(3);
  const DerangementGraph graph = DerangementGraph::build(s3);
  CHECK(graph.vertex_count() == 6);
  CHECK(graph.regular_degree() == 2);

  // adjacency iff pointwise disagreement everywhere, checked on all pairs
  for (std::uint32_t u = 0; u < 6; ++u)
    for (std::uint32_t v = 0; v < 6; ++v) {
      bool disagree = u != v;
      for (std::uint32_t w = 0; w < 3 && disagree; ++w)
        if (s3.element(u).img[w] == s3.element(v).img[w]) disagree = false;
      CHECK(graph.adjacent(u, v) == disagree);
    }

  // Sym(3)'s graph is two disjoint triangles: 6 vertices of degree 2,
  // not bipartite, triangle present
  CHECK(!graph.is_bipartite());
  const auto tri = graph.find_triangle();
  REQUIRE(tri.has_value());
  CHECK(graph.adjacent((*tri)[0], (*tri)[1]));
  CHECK(graph.adjacent((*tri)[0], (*tri)[2]));
  CHECK(graph.adjacent((*tri)[1], (*tri)[2]));
  // lowest-index triple: the identity and the two 3-cycles, at indices 0, 3, 4
  CHECK(*tri == std::array<std::uint32_t, 3>{0, 3, 4});
  CHECK(s3.element(0).is_identity());
  CHECK(dlab::cycle_type(s3.element(3)) == std::vector<std::uint32_t>{3});
  CHECK(dlab::cycle_type(s3.element(4)) == std::vector<std::uint32_t>{3});

  CHECK_THROWS_AS(DerangementGraph::build(dlab::build_example6(), 5),
                  dlab::CapExceeded);
}

TEST_CASE("K2 for the regular group of degree 2") {
  const DerangementGraph graph = DerangementGraph::build(dlab::build_cyclic_regular(2));
  CHECK(graph.vertex_count() == 2);
  CHECK(graph.adjacent(0, 1));
  CHECK(graph.is_bipartite());
  CHECK(!graph.find_triangle().has_value());
}

TEST_CASE("complete multipartite decompositions") {
  // G_2(A): complete 3-partite K_{4,4,4}
  const dlab::FieldSpec f2 = dlab::make_field(2, 1);
  const DerangementGraph g2 = DerangementGraph::build(dlab::build_gq(f2));
  const auto mp2 = g2.complete_multipartite();
  CHECK(mp2.status == MultipartiteStatus::kProper);
  REQUIRE(mp2.decomposition.has_value());
  CHECK(mp2.decomposition->part_count() == 3);
  CHECK(mp2.decomposition->part_size() == 4);
  CHECK(mp2.structurally_verified);
  CHECK(mp2.fix_order == 4);

  // fourell(3): 6 parts of size 4
  const DerangementGraph g12 = DerangementGraph::build(dlab::build_fourell(3).group);
  const auto mp12 = g12.complete_multipartite();
  CHECK(mp12.status == MultipartiteStatus::kProper);
  REQUIRE(mp12.decomposition.has_value());
  CHECK(mp12.decomposition->part_count() == 6);
  CHECK(mp12.decomposition->part_size() == 4);

  // example6: complete tri-partite
  const DerangementGraph ge6 = DerangementGraph::build(dlab::build_example6());
  const auto mpe6 = ge6.complete_multipartite();
  CHECK(mpe6.status == MultipartiteStatus::kProper);
  CHECK(mpe6.decomposition->part_count() == 3);
  CHECK(mpe6.decomposition->part_size() == 4);

  // Sym(3): not complete multipartite, witness edge returned
  const DerangementGraph gs3 = DerangementGraph::build(testgroups::sym_natural(3));
  const auto mps3 = gs3.complete_multipartite();
  CHECK(mps3.status == MultipartiteStatus::kNone);
  CHECK(!mps3.decomposition.has_value());
  REQUIRE(mps3.witness_edge.has_value());
  CHECK(gs3.adjacent((*mps3.witness_edge)[0], (*mps3.witness_edge)[1]));

  // C5 regular: Fix(G) trivial, the graph is complete
  const DerangementGraph gc5 = DerangementGraph::build(dlab::build_cyclic_regular(5));
  const auto mpc5 = gc5.complete_multipartite();
  CHECK(mpc5.status == MultipartiteStatus::kCompleteGraph);
  CHECK(mpc5.decomposition->part_count() == 5);
  CHECK(mpc5.decomposition->part_size() == 1);

  // parts are the Fix(G) cosets, and the identity's part is Fix itself,
  // which is exactly the set of elements with a fixed point
  const PermGroup e6 = dlab::build_example6();
  const PermGroup fix = e6.fix_subgroup();
  std::vector<std::uint32_t> fix_idx;
  for (const Perm& f : fix.elements())
    fix_idx.push_back(std::uint32_t(e6.index_of(f)));
  std::sort(fix_idx.begin(), fix_idx.end());
  CHECK(mpe6.decomposition->parts[0] == fix_idx);
  for (const auto* mp : {&mpe6, &mp12}) {
    const PermGroup& g = mp == &mpe6 ? e6 : g12.group();
    std::vector<std::uint32_t> with_fixed_point;
    for (std::uint32_t i = 0; i < g.order(); ++i)
      if (!dlab::is_derangement(g.element(i))) with_fixed_point.push_back(i);
    CHECK(mp->decomposition->parts[0] == with_fixed_point);
  }
}

TEST_CASE("degree-1 group is handled") {
  const DerangementGraph k1 = DerangementGraph::build(dlab::build_cyclic_regular(1));
  CHECK(k1.vertex_count() == 1);
  CHECK(k1.regular_degree() == 0);
  CHECK(k1.is_bipartite());
  const auto mp = k1.complete_multipartite();
  CHECK(mp.status == MultipartiteStatus::kCompleteGraph);
}

TEST_CASE("derangement graph properties across small groups") {
  std::vector<PermGroup> groups;
  groups.push_back(testgroups::sym_natural(3));
  groups.push_back(testgroups::sym_natural(4));
  groups.push_back(dlab::build_example6());
  groups.push_back(dlab::build_cyclic_regular(6));
  groups.push_back(dlab::build_fourell(3).group);
  groups.push_back(testgroups::wreath_cp_c2(3));

  for (const PermGroup& g : groups) {
    const DerangementGraph graph = DerangementGraph::build(g);
    // regular of degree |Der|
    for (std::uint32_t u = 0; u < graph.vertex_count(); ++u)
      CHECK(graph.adjacency().row_popcount(u) == graph.regular_degree());
    // Der closed under inversion and conjugation
    std::vector<bool> is_der(g.order(), false);
    for (std::uint32_t d : graph.derangements()) is_der[d] = true;
    for (std::uint32_t d : graph.derangements()) {
      CHECK(is_der[std::size_t(g.index_of(dlab::invert(g.element(d))))]);
      for (const Perm& x : g.elements())
        CHECK(is_der[std::size_t(g.index_of(dlab::conjugate(g.element(d), x)))]);
    }
    // degree >= 3 transitive: triangle exists, not bipartite
    CHECK(graph.find_triangle().has_value());
    CHECK(!graph.is_bipartite());
  }
}

TEST_CASE("intersecting sets") {
  const PermGroup e6 = dlab::build_example6();
  // the displayed size-4 family: id, (12)(34), (34)(56), (12)(56)
  std::vector<std::uint32_t> family;
  for (const Perm& p :
       {dlab::identity_perm(6), dlab::perm_from_cycles(6, {{1, 2}, {3, 4}}),
        dlab::perm_from_cycles(6, {{3, 4}, {5, 6}}),
        dlab::perm_from_cycles(6, {{1, 2}, {5, 6}})}) {
    const auto idx = e6.index_of(p);
    REQUIRE(idx >= 0);
    family.push_back(std::uint32_t(idx));
  }
  CHECK(dlab::is_intersecting_set(e6, family));

  const PermGroup c6 = dlab::build_cyclic_regular(6);
  const std::uint32_t id_idx = std::uint32_t(c6.identity_index());
  const std::uint32_t rot = std::uint32_t(
      c6.index_of(dlab::perm_from_cycles(6, {{1, 2, 3, 4, 5, 6}})));
  CHECK(!dlab::is_intersecting_set(c6, {id_idx, rot}));

  const dlab::FieldSpec f3 = dlab::make_field(3, 1);
  const PermGroup g3 = dlab::build_gq(f3);
  const PermGroup m3 = dlab::build_mq(f3);
  std::vector<std::uint32_t> m_idx;
  for (const Perm& e : m3.elements()) m_idx.push_back(std::uint32_t(g3.index_of(e)));
  CHECK(dlab::is_intersecting_set(g3, m_idx));
}

TEST_CASE("dot and bitmap exports") {
  const DerangementGraph graph = DerangementGraph::build(testgroups::sym_natural(3));
  std::ostringstream dot;
  const auto mp = graph.complete_multipartite();
  graph.write_dot(dot, mp.decomposition ? &*mp.decomposition : nullptr);
  const std::string text = dot.str();
  CHECK(text.starts_with("// format 1\ngraph derangement {\n"));
  CHECK(text.find("v0 [label=\"0\"]") != std::string::npos);
  // 6 vertices of degree 2 -> 6 edges
  CHECK(std::count(text.begin(), text.end(), '-') == 12);

  std::ostringstream bin(std::ios::binary);
  graph.write_bitmap(bin);
  const std::string bytes = bin.str();
  // header: degree 2, vertex count 6, then 6 rows of 1 byte each
  REQUIRE(bytes.size() == 8 + 6);
  CHECK(std::uint8_t(bytes[0]) == 2);
  CHECK(std::uint8_t(bytes[4]) == 6);
  for (std::uint32_t u = 0; u < 6; ++u) {
    const std::uint8_t row = std::uint8_t(bytes[8 + u]);
    for (std::uint32_t v = 0; v < 6; ++v)
      CHECK(bool((row >> v) & 1) == graph.adjacent(u, v));
  }
}
