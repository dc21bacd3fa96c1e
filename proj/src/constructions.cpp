#include "dlab/constructions.hpp"

#include <ostream>
#include <set>
#include <stdexcept>
#include <string>

namespace dlab {

std::vector<Line> enumerate_lines(const FieldSpec& s) {
  const std::uint32_t q = s.q;
  std::vector<Line> lines;
  lines.reserve(std::size_t(q) * (q + 1));
  for (std::uint32_t dir = 0; dir <= q; ++dir) {
    for (std::uint32_t off = 0; off < q; ++off) {
      Line line;
      line.dir = dir;
      line.off = off;
      line.points.reserve(q);
      if (dir < q) {
        // slope form: {(x, s x + c)} with s = dir, c = off
        for (FieldElem x = 0; x < q; ++x)
          line.points.push_back(Vec2{x, s.add(s.mul(dir, x), off)});
      } else {
        // vertical: {(c, y)}
        for (FieldElem y = 0; y < q; ++y) line.points.push_back(Vec2{off, y});
      }
      lines.push_back(std::move(line));
    }
  }
  return lines;
}

AffineMap affine_compose(const AffineMap& a, const AffineMap& b, const FieldSpec& s) {
  // (a then b)(v) = b.m (a.m v + a.t) + b.t
  AffineMap r;
  r.m = mat_mul(b.m, a.m, s);
  r.t = Vec2{s.add(s.mul(b.m.a, a.t.x), s.add(s.mul(b.m.b, a.t.y), b.t.x)),
             s.add(s.mul(b.m.c, a.t.x), s.add(s.mul(b.m.d, a.t.y), b.t.y))};
  return r;
}

Vec2 affine_apply(const AffineMap& f, const Vec2& v, const FieldSpec& s) {
  Vec2 w = mat_apply(f.m, v, s);
  return Vec2{s.add(w.x, f.t.x), s.add(w.y, f.t.y)};
}

Perm affine_to_line_perm(const AffineMap& f, const FieldSpec& s) {
  if (mat_det(f.m, s) == 0)
    throw std::invalid_argument("affine map must be invertible");
  const std::uint32_t q = s.q;
  Perm p;
  p.img.resize(std::size_t(q) * (q + 1));
  for (std::uint32_t dir = 0; dir <= q; ++dir) {
    for (std::uint32_t off = 0; off < q; ++off) {
      // two distinct points determine the image line
      Vec2 p0, p1;
      if (dir < q) {
        p0 = Vec2{0, off};
        p1 = Vec2{1, s.add(dir, off)};
      } else {
        p0 = Vec2{off, 0};
        p1 = Vec2{off, 1};
      }
      const Vec2 u = affine_apply(f, p0, s);
      const Vec2 v = affine_apply(f, p1, s);
      const Vec2 delta{s.sub(v.x, u.x), s.sub(v.y, u.y)};
      std::uint32_t to;
      if (delta.x != 0) {
        const FieldElem slope = s.mul(delta.y, s.inv(delta.x));
        const FieldElem intercept = s.sub(u.y, s.mul(slope, u.x));
        to = line_flat_index(slope, intercept, s);
      } else {
        to = line_flat_index(q, u.x, s);
      }
      p.img[line_flat_index(dir, off, s)] = to;
    }
  }
  validate_perm(p);  // image of a line is always a line for an invertible map
  return p;
}

Mat2 build_singer(const FieldSpec& s) {
  return companion_matrix(find_primitive_poly2(s), s);
}

namespace {

AffineMap translation(FieldElem x, FieldElem y) {
  return AffineMap{Vec2{x, y}, Mat2{}};
}

void check_order(const PermGroup& g, std::uint64_t expected, const char* what) {
  if (g.order() != expected)
    throw std::logic_error(std::string(what) + ": closure has order " +
                           std::to_string(g.order()) + ", expected " +
                           std::to_string(expected));
}

}  // namespace

PermGroup build_gq(const FieldSpec& s, std::uint64_t cap) {
  const Mat2 singer = build_singer(s);
  std::vector<Perm> gens{
      affine_to_line_perm(AffineMap{Vec2{0, 0}, singer}, s),
      affine_to_line_perm(translation(1, 0), s),
      affine_to_line_perm(translation(0, 1), s),
  };
  PermGroup g = PermGroup::generate(std::move(gens), "gq_q" + std::to_string(s.q), cap);
  check_order(g, std::uint64_t(s.q) * s.q * (std::uint64_t(s.q) * s.q - 1), "build_gq");
  return g;
}

PermGroup build_mq(const FieldSpec& s, std::uint64_t cap) {
  std::vector<Perm> gens{
      affine_to_line_perm(translation(1, 0), s),
      affine_to_line_perm(translation(0, 1), s),
  };
  if (s.q > 2) {
    const FieldElem g = s.primitive_element();
    gens.push_back(affine_to_line_perm(AffineMap{Vec2{0, 0}, Mat2{g, 0, 0, g}}, s));
  }
  PermGroup m = PermGroup::generate(std::move(gens), "mq_q" + std::to_string(s.q), cap);
  check_order(m, std::uint64_t(s.q) * s.q * (s.q - 1), "build_mq");
  return m;
}

PermGroup build_agl2(const FieldSpec& s, std::uint64_t cap) {
  const Mat2 singer = build_singer(s);

  // flat code of a matrix, for membership tests against <A>
  auto code = [&](const Mat2& m) {
    return ((std::uint64_t(m.a) * s.q + m.b) * s.q + m.c) * s.q + m.d;
  };
  std::set<std::uint64_t> singer_subgroup;
  Mat2 acc;
  do {
    acc = mat_mul(acc, singer, s);
    singer_subgroup.insert(code(acc));
  } while (!(acc == Mat2{}));

  // first invertible matrix outside <A>, scanning entries in row-major order
  Mat2 extra;
  bool found = false;
  for (FieldElem a = 0; a < s.q && !found; ++a)
    for (FieldElem b = 0; b < s.q && !found; ++b)
      for (FieldElem c = 0; c < s.q && !found; ++c)
        for (FieldElem d = 0; d < s.q && !found; ++d) {
          Mat2 m{a, b, c, d};
          if (mat_det(m, s) != 0 && !singer_subgroup.contains(code(m))) {
            extra = m;
            found = true;
          }
        }
  if (!found) throw std::logic_error("GL(2,q) equals its Singer subgroup?");

  std::vector<Perm> gens{
      affine_to_line_perm(translation(1, 0), s),
      affine_to_line_perm(translation(0, 1), s),
      affine_to_line_perm(AffineMap{Vec2{0, 0}, singer}, s),
      affine_to_line_perm(AffineMap{Vec2{0, 0}, extra}, s),
  };
  PermGroup g =
      PermGroup::generate(std::move(gens), "agl2_q" + std::to_string(s.q), cap);
  const std::uint64_t q2 = std::uint64_t(s.q) * s.q;
  check_order(g, q2 * (q2 - 1) * (q2 - s.q), "build_agl2");
  return g;
}

FourEllSpec build_fourell(std::uint32_t ell, std::uint64_t cap) {
  if (ell < 3 || ell % 2 == 0)
    throw std::invalid_argument("ell must be an odd integer >= 3");
  FourEllSpec spec;
  spec.ell = ell;
  spec.n = 4 * ell;
  const std::uint32_t n = spec.n;
  const std::uint32_t last = 4 * ell - 3;

  for (std::uint32_t i = 1; i <= last; i += 4)
    spec.sigmas.push_back(perm_from_cycles(n, {{i, i + 1}, {i + 2, i + 3}}));
  const Perm& sigma_last = spec.sigmas.back();
  for (const Perm& sigma : spec.sigmas) spec.pis.push_back(compose(sigma, sigma_last));

  for (std::uint32_t i = 1; i <= 4; ++i) {
    std::vector<std::uint32_t> cyc;
    for (std::uint32_t k = 0; k < ell; ++k) cyc.push_back(i + 4 * k);
    spec.arith_cycles[i - 1] = perm_from_cycles(n, {cyc});
  }
  spec.c = compose(compose(spec.arith_cycles[0], spec.arith_cycles[1]),
                   compose(spec.arith_cycles[2], spec.arith_cycles[3]));

  // tau = (1 3)(2 4) * prod_{i=1}^{ell-1} (1+4i, 3+4(ell-i)) (2+4i, 4+4(ell-i));
  // perm_from_cycles rejects any overlap between the transpositions.
  std::vector<std::vector<std::uint32_t>> tau_cycles{{1, 3}, {2, 4}};
  for (std::uint32_t i = 1; i < ell; ++i) {
    tau_cycles.push_back({1 + 4 * i, 3 + 4 * (ell - i)});
    tau_cycles.push_back({2 + 4 * i, 4 + 4 * (ell - i)});
  }
  spec.tau = perm_from_cycles(n, tau_cycles);

  std::vector<Perm> h_gens;
  for (const Perm& pi : spec.pis)
    if (!pi.is_identity()) h_gens.push_back(pi);
  spec.h_group =
      PermGroup::generate(h_gens, "fourell_ell" + std::to_string(ell) + ".h", cap);
  check_order(spec.h_group, 1ull << (ell - 1), "build_fourell H");

  std::vector<Perm> gens = h_gens;
  gens.push_back(spec.c);
  gens.push_back(spec.tau);
  spec.group =
      PermGroup::generate(std::move(gens), "fourell_ell" + std::to_string(ell), cap);
  check_order(spec.group, (1ull << (ell - 1)) * 2 * ell, "build_fourell");
  return spec;
}

PermGroup build_example6() {
  std::vector<Perm> gens{
      perm_from_cycles(6, {{1, 2}, {3, 4}}),
      perm_from_cycles(6, {{3, 4}, {5, 6}}),
      perm_from_cycles(6, {{1, 3, 5}, {2, 4, 6}}),
  };
  PermGroup g = PermGroup::generate(std::move(gens), "example6");
  check_order(g, 12, "build_example6");
  return g;
}

PermGroup build_cyclic_regular(std::uint32_t n) {
  if (n < 1) throw std::invalid_argument("degree must be >= 1");
  Perm cycle;
  cycle.img.resize(n);
  for (std::uint32_t i = 0; i < n; ++i) cycle.img[i] = (i + 1) % n;
  return PermGroup::generate({cycle}, "cyclic_" + std::to_string(n));
}

void write_lines_csv(std::ostream& os, const FieldSpec& s) {
  os << "# format 1\n";
  os << "flat_index,dir,off,points\n";
  for (const Line& line : enumerate_lines(s)) {
    os << line_flat_index(line.dir, line.off, s) << ',' << line.dir << ','
       << line.off << ',';
    for (std::size_t i = 0; i < line.points.size(); ++i) {
      if (i) os << ';';
      os << line.points[i].x << ':' << line.points[i].y;
    }
    os << '\n';
  }
}

}  // namespace dlab
