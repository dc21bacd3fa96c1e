#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "dlab/gf.hpp"
#include "dlab/perm.hpp"

namespace dlab {

// Affine line of GF(q)^2. Directions are indexed 0..q: slope directions
// (1, s) ordered by the code of s, then the vertical direction (0, 1) last.
// The flat line index is dir * q + off.
struct Line {
  std::uint32_t dir = 0;
  std::uint32_t off = 0;
  std::vector<Vec2> points;
};

inline std::uint32_t line_flat_index(std::uint32_t dir, std::uint32_t off,
                                     const FieldSpec& s) {
  return dir * s.q + off;
}

// The q(q+1) lines in canonical order: every line has q points and every
// point lies on q+1 lines.
std::vector<Line> enumerate_lines(const FieldSpec& s);

// v |-> m v + t.
struct AffineMap {
  Vec2 t;
  Mat2 m;
};

// apply a first, then b; matches the global left-to-right convention.
AffineMap affine_compose(const AffineMap& a, const AffineMap& b, const FieldSpec& s);
Vec2 affine_apply(const AffineMap& f, const Vec2& v, const FieldSpec& s);

// The permutation the invertible map induces on line indices. This is a
// homomorphism: perm(affine_compose(a, b)) == compose(perm(a), perm(b)).
Perm affine_to_line_perm(const AffineMap& f, const FieldSpec& s);

// Companion matrix of the first primitive quadratic: a Singer cycle, of
// multiplicative order q^2 - 1, acting regularly on the nonzero vectors.
Mat2 build_singer(const FieldSpec& s);

// {(b, B) : B in <A>} acting on lines; order q^2 (q^2 - 1), transitive.
PermGroup build_gq(const FieldSpec& s, std::uint64_t cap = kDefaultGroupCap);

// {(b, kI) : k != 0} acting on lines; order q^2 (q - 1); every element
// fixes at least one line.
PermGroup build_mq(const FieldSpec& s, std::uint64_t cap = kDefaultGroupCap);

// The full affine group on lines; order q^2 (q^2 - 1)(q^2 - q).
PermGroup build_agl2(const FieldSpec& s, std::uint64_t cap = kDefaultGroupCap);

// Degree-4l family, l odd: G = H x| <tau, c> with H elementary abelian of
// rank l-1 and <tau, c> dihedral of order 2l.
struct FourEllSpec {
  std::uint32_t ell = 0;
  std::uint32_t n = 0;                // 4 * ell
  std::vector<Perm> sigmas;           // sigma_i for i = 1, 5, ..., 4l-3
  std::vector<Perm> pis;              // pi_j = sigma_j sigma_{4l-3}, same order
  std::array<Perm, 4> arith_cycles;   // the four step-4 l-cycles
  Perm c;                             // product of the four l-cycles
  Perm tau;                           // inverting involution, a derangement
  PermGroup h_group;                  // <pi_j>, order 2^(l-1)
  PermGroup group;                    // the full group, order 2^(l-1) * 2l
};

FourEllSpec build_fourell(std::uint32_t ell, std::uint64_t cap = kDefaultGroupCap);

// <(1 2)(3 4), (3 4)(5 6), (1 3 5)(2 4 6)>: degree 6, order 12,
// point-stabilizers of size 2.
PermGroup build_example6();

// <(1 2 ... n)> acting regularly.
PermGroup build_cyclic_regular(std::uint32_t n);

// CSV table of the lines: flat_index, dir, off, points ("x:y" pairs joined
// with ';'). First line is a "# format 1" comment.
void write_lines_csv(std::ostream& os, const FieldSpec& s);

}  // namespace dlab
