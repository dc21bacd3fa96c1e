#include "dlab/constructions.hpp"

#include <map>
#include <set>
#include <sstream>

#include "dlab/common.hpp"
#include "doctest.h"
#include "helpers.hpp"

using dlab::AffineMap;
using dlab::FieldSpec;
using dlab::Line;
using dlab::make_field;
using dlab::Mat2;
using dlab::Perm;
using dlab::PermGroup;
using dlab::Vec2;

TEST_CASE("line enumeration") {
  const FieldSpec f2 = make_field(2, 1);
  const auto lines2 = dlab::enumerate_lines(f2);
  CHECK(lines2.size() == 6);
  // dir (1,0), off 0 is the horizontal line through the origin
  CHECK(lines2[0].points == std::vector<Vec2>{{0, 0}, {1, 0}});

  const FieldSpec f3 = make_field(3, 1);
  const auto lines3 = dlab::enumerate_lines(f3);
  CHECK(lines3.size() == 12);
  std::map<std::pair<std::uint32_t, std::uint32_t>, int> incidence;
  for (const Line& line : lines3) {
    CHECK(line.points.size() == 3);
    for (const Vec2& pt : line.points) ++incidence[{pt.x, pt.y}];
  }
  CHECK(incidence.size() == 9);
  for (const auto& [pt, count] : incidence) CHECK(count == 4);  // q + 1 lines per point

  // flat indexing is dir * q + off
  for (std::uint32_t i = 0; i < lines3.size(); ++i)
    CHECK(dlab::line_flat_index(lines3[i].dir, lines3[i].off, f3) == i);
}

TEST_CASE("affine maps act on lines") {
  const FieldSpec f2 = make_field(2, 1);
  // identity
  CHECK(dlab::affine_to_line_perm(AffineMap{}, f2).is_identity());

  // translation by (1,0): fixes the two dir-(1,0) lines, swaps the verticals
  const Perm t = dlab::affine_to_line_perm(AffineMap{Vec2{1, 0}, Mat2{}}, f2);
  CHECK(t.img[0] == 0);
  CHECK(t.img[1] == 1);
  CHECK(t.img[4] == 5);  // vertical x=0 -> x=1
  CHECK(t.img[5] == 4);

  // (b, kI) with k != 1 fixes the pencil of lines through (1-k)^-1 b
  const FieldSpec f5 = make_field(5, 1);
  for (dlab::FieldElem k = 2; k < 5; ++k) {
    for (dlab::FieldElem bx = 0; bx < 5; ++bx)
      for (dlab::FieldElem by = 0; by < 5; ++by) {
        const Perm perm = dlab::affine_to_line_perm(
            AffineMap{Vec2{bx, by}, Mat2{k, 0, 0, k}}, f5);
        const dlab::FieldElem factor = f5.inv(f5.sub(1, k));
        const Vec2 beta{f5.mul(factor, bx), f5.mul(factor, by)};
        std::set<std::uint32_t> fixed;
        for (std::uint32_t i = 0; i < perm.degree(); ++i)
          if (perm.img[i] == i) fixed.insert(i);
        std::set<std::uint32_t> pencil;  // the q+1 lines through beta
        const auto lines = dlab::enumerate_lines(f5);
        for (std::uint32_t i = 0; i < lines.size(); ++i)
          for (const Vec2& pt : lines[i].points)
            if (pt == beta) pencil.insert(i);
        CHECK(pencil.size() == 6);
        CHECK(fixed == pencil);
      }
  }
}

TEST_CASE("line action is a homomorphism") {
  for (auto [p, k] : {std::pair<int, int>{2, 1}, {3, 1}, {2, 2}}) {
    const FieldSpec s = make_field(p, k);
    const dlab::FieldElem prim = s.q > 2 ? s.primitive_element() : 1;
    std::vector<AffineMap> maps{
        AffineMap{Vec2{1, 0}, Mat2{}},
        AffineMap{Vec2{0, 1}, Mat2{}},
        AffineMap{Vec2{0, 0}, dlab::build_singer(s)},
        AffineMap{Vec2{1, 1}, Mat2{prim, 0, 0, prim}},
    };
    for (const AffineMap& a : maps)
      for (const AffineMap& b : maps) {
        const Perm lhs = dlab::affine_to_line_perm(dlab::affine_compose(a, b, s), s);
        const Perm rhs = dlab::compose(dlab::affine_to_line_perm(a, s),
                                       dlab::affine_to_line_perm(b, s));
        CHECK(lhs == rhs);
      }
  }
}

TEST_CASE("singer matrices") {
  const FieldSpec f2 = make_field(2, 1);
  CHECK(dlab::build_singer(f2) == Mat2{0, 1, 1, 1});
  CHECK(dlab::mat_order(dlab::build_singer(f2), f2) == 3);

  const FieldSpec f3 = make_field(3, 1);
  CHECK(dlab::build_singer(f3) == Mat2{0, 1, 1, 2});
  CHECK(dlab::mat_order(dlab::build_singer(f3), f3) == 8);

  // regularity: the orbit of (1, 0) under <A> covers all q^2 - 1 nonzero vectors
  for (auto [p, k] : {std::pair<int, int>{2, 1}, {3, 1}, {2, 2}, {5, 1}, {7, 1},
                      {2, 3}}) {
    const FieldSpec s = make_field(p, k);
    const Mat2 a = dlab::build_singer(s);
    CHECK(dlab::mat_order(a, s) == std::uint64_t(s.q) * s.q - 1);
    std::set<std::pair<std::uint32_t, std::uint32_t>> orbit;
    Vec2 v{1, 0};
    do {
      orbit.insert({v.x, v.y});
      v = dlab::mat_apply(a, v, s);
    } while (!(v == Vec2{1, 0}));
    CHECK(orbit.size() == std::uint64_t(s.q) * s.q - 1);
  }
}

TEST_CASE("gq construction") {
  const FieldSpec f2 = make_field(2, 1);
  const PermGroup g2 = dlab::build_gq(f2);
  CHECK(g2.degree() == 6);
  CHECK(g2.order() == 12);
  CHECK(g2.is_transitive());
  // point-stabilizer of any line has size q(q-1)
  for (std::uint32_t line = 0; line < 6; ++line)
    CHECK(g2.point_stabilizer(line).order() == 2);

  const FieldSpec f3 = make_field(3, 1);
  const PermGroup g3 = dlab::build_gq(f3);
  CHECK(g3.degree() == 12);
  CHECK(g3.order() == 72);
  CHECK(g3.is_transitive());

  const FieldSpec f4 = make_field(2, 2);
  const PermGroup g4 = dlab::build_gq(f4);
  CHECK(g4.degree() == 20);
  CHECK(g4.order() == 240);

  // every element maps each parallel class onto a parallel class
  for (const PermGroup* g : {&g2, &g3}) {
    const std::uint32_t q = g->degree() == 6 ? 2 : 3;
    for (const Perm& e : g->elements()) {
      for (std::uint32_t dir = 0; dir <= q; ++dir) {
        std::set<std::uint32_t> image_dirs;
        for (std::uint32_t off = 0; off < q; ++off)
          image_dirs.insert(e.img[dir * q + off] / q);
        CHECK(image_dirs.size() == 1);
      }
    }
  }
}

TEST_CASE("mq construction") {
  const FieldSpec f2 = make_field(2, 1);
  CHECK(dlab::build_mq(f2).order() == 4);

  const FieldSpec f3 = make_field(3, 1);
  const PermGroup m3 = dlab::build_mq(f3);
  CHECK(m3.order() == 18);
  // intersecting: every element fixes a line
  for (const Perm& e : m3.elements()) CHECK(!dlab::is_derangement(e));

  CHECK(dlab::is_subgroup_of(m3, dlab::build_gq(f3)));
}

TEST_CASE("agl2 construction") {
  const FieldSpec f2 = make_field(2, 1);
  const PermGroup a2 = dlab::build_agl2(f2);
  CHECK(a2.degree() == 6);
  CHECK(a2.order() == 24);
  CHECK(dlab::is_subgroup_of(dlab::build_gq(f2), a2));
  // Fix(AGL(2,2)) is the whole group
  CHECK(a2.fix_subgroup().order() == a2.order());

  const FieldSpec f3 = make_field(3, 1);
  const PermGroup a3 = dlab::build_agl2(f3);
  CHECK(a3.order() == 432);
  CHECK(a3.rank_on_pairs() == 3);
  CHECK(dlab::is_subgroup_of(dlab::build_gq(f3), a3));
}

TEST_CASE("fourell construction") {
  CHECK_THROWS_AS(dlab::build_fourell(4), std::invalid_argument);
  CHECK_THROWS_AS(dlab::build_fourell(1), std::invalid_argument);

  const dlab::FourEllSpec s3 = dlab::build_fourell(3);
  CHECK(s3.n == 12);
  CHECK(s3.group.order() == 24);
  CHECK(s3.group.is_transitive());
  CHECK(s3.tau == dlab::perm_from_cycles(
                      12, {{1, 3}, {2, 4}, {5, 11}, {6, 12}, {7, 9}, {8, 10}}));
  CHECK(s3.h_group.order() == 4);
  CHECK(dlab::conjugate(s3.c, s3.tau) == dlab::invert(s3.c));

  const dlab::FourEllSpec s5 = dlab::build_fourell(5);
  CHECK(s5.group.order() == 160);
  CHECK(s5.group.degree() == 20);

  for (std::uint32_t ell : {3u, 5u, 7u, 9u}) {
    const dlab::FourEllSpec spec = dlab::build_fourell(ell);
    // Eq. (4)-style conjugation pattern and the dihedral relation
    const int image_of[4] = {2, 3, 0, 1};
    for (int i = 0; i < 4; ++i)
      CHECK(dlab::conjugate(spec.arith_cycles[i], spec.tau) ==
            dlab::invert(spec.arith_cycles[image_of[i]]));
    CHECK(dlab::is_derangement(spec.tau));
    // every element of H keeps at least 4 points fixed
    for (const Perm& h : spec.h_group.elements())
      CHECK(dlab::fixed_points(h).size() >= 4);
    // H is normalized by c and tau; the top group is dihedral of order 2l
    const PermGroup top = PermGroup::generate({spec.tau, spec.c}, "top");
    CHECK(top.order() == 2 * ell);
    std::uint64_t meet = 0;
    for (const Perm& e : top.elements())
      if (spec.h_group.contains(e)) ++meet;
    CHECK(meet == 1);
    CHECK(spec.group.order() == spec.h_group.order() * top.order());
    CHECK(dlab::is_normal(spec.group, spec.h_group));
  }
}

TEST_CASE("example6 and cyclic") {
  const PermGroup e6 = dlab::build_example6();
  CHECK(e6.order() == 12);
  CHECK(e6.is_transitive());
  CHECK(e6.point_stabilizer(0).order() == 2);

  const PermGroup c3 = dlab::build_cyclic_regular(3);
  CHECK(c3.order() == 3);
  CHECK(c3.is_transitive());
  CHECK_THROWS_AS(dlab::build_cyclic_regular(0), std::invalid_argument);
}

TEST_CASE("lines csv") {
  const FieldSpec f2 = make_field(2, 1);
  std::ostringstream os;
  dlab::write_lines_csv(os, f2);
  const std::string text = os.str();
  CHECK(text.starts_with("# format 1\nflat_index,dir,off,points\n"));
  CHECK(text.find("0,0,0,0:0;1:0") != std::string::npos);
  CHECK(std::count(text.begin(), text.end(), '\n') == 8);  // 2 header + 6 lines
}
