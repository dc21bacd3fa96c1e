#pragma once

#include <cstdint>
#include <vector>

namespace dlab {

// An element of GF(p^k), stored as its canonical integer code
// sum_i a_i p^i for the residue polynomial a_0 + a_1 x + ... + a_{k-1} x^{k-1}.
using FieldElem = std::uint32_t;

inline constexpr std::uint64_t kDefaultFieldCap = 1ull << 20;

// Arithmetic context for GF(p^k) with a fixed monic irreducible modulus.
// All operations are pure; a FieldSpec can be shared freely across threads.
struct FieldSpec {
  std::uint32_t p = 0;  // prime characteristic
  std::uint32_t k = 0;  // extension degree
  std::uint32_t q = 0;  // p^k
  std::vector<std::uint32_t> modulus;  // coefficient of x^i at index i; monic, degree k

  FieldElem add(FieldElem a, FieldElem b) const;
  FieldElem sub(FieldElem a, FieldElem b) const;
  FieldElem neg(FieldElem a) const;
  FieldElem mul(FieldElem a, FieldElem b) const;
  FieldElem pow(FieldElem a, std::uint64_t e) const;
  FieldElem inv(FieldElem a) const;  // throws std::invalid_argument on a == 0

  // Least m >= 1 with a^m = 1; throws on a == 0.
  std::uint32_t element_order(FieldElem a) const;

  // Base-p digits of the code, length k (a_0 first).
  std::vector<std::uint32_t> coeffs(FieldElem a) const;
  FieldElem from_coeffs(const std::vector<std::uint32_t>& c) const;

  // Smallest element code of multiplicative order q-1.
  FieldElem primitive_element() const;

  // Throws std::invalid_argument when the code does not belong to this field.
  void check(FieldElem a) const;
};

// Returns the GF(p^k) context with the lexicographically smallest monic
// irreducible modulus, ordered by the coefficient tuple (a_{k-1},...,a_0).
// For k = 1 the modulus is the degree-1 polynomial x and elements are
// residues mod p.
FieldSpec make_field(std::uint32_t p, std::uint32_t k,
                     std::uint64_t cap = kDefaultFieldCap);

// Monic quadratic x^2 + c1 x + c0 over GF(q).
struct Poly2 {
  FieldElem c1 = 0;
  FieldElem c0 = 0;
  bool operator==(const Poly2&) const = default;
};

// 2x2 matrix over GF(q), row major: [[a, b], [c, d]].
struct Mat2 {
  FieldElem a = 1, b = 0, c = 0, d = 1;
  bool operator==(const Mat2&) const = default;
};

// Column vector in GF(q)^2.
struct Vec2 {
  FieldElem x = 0, y = 0;
  bool operator==(const Vec2&) const = default;
};

Mat2 mat_mul(const Mat2& m, const Mat2& n, const FieldSpec& s);
Vec2 mat_apply(const Mat2& m, const Vec2& v, const FieldSpec& s);
FieldElem mat_det(const Mat2& m, const FieldSpec& s);

// Least e >= 1 with m^e = I. Requires m invertible; the order of any
// invertible 2x2 matrix over GF(q) divides into the range [1, q^2-1].
std::uint64_t mat_order(const Mat2& m, const FieldSpec& s);

// Companion matrix of x^2 + c1 x + c0: [[0, -c0], [1, -c1]].
Mat2 companion_matrix(const Poly2& f, const FieldSpec& s);

// Smallest monic quadratic, by (c1, c0) codes ascending, whose companion
// matrix has multiplicative order q^2 - 1. The order is established by
// explicit matrix powering.
Poly2 find_primitive_poly2(const FieldSpec& s);

}  // namespace dlab
