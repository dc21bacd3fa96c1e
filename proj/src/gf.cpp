#include "dlab/gf.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "dlab/common.hpp"

namespace dlab {
namespace {

bool is_prime(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Dense coefficient vector over GF(p); index i holds the coefficient of x^i.
using PolyVec = std::vector<std::uint32_t>;

// Remainder of a modulo the monic polynomial m.
PolyVec poly_mod(PolyVec a, const PolyVec& m, std::uint32_t p) {
  const std::size_t dm = m.size() - 1;
  while (a.size() > dm) {
    const std::uint32_t lead = a.back();
    const std::size_t shift = a.size() - 1 - dm;
    if (lead != 0) {
      for (std::size_t i = 0; i < dm; ++i) {
        const std::uint64_t sub = std::uint64_t(lead) * m[i] % p;
        a[shift + i] = std::uint32_t((a[shift + i] + p - sub) % p);
      }
    }
    a.pop_back();
  }
  return a;
}

bool poly_is_zero(const PolyVec& a) {
  return std::all_of(a.begin(), a.end(), [](std::uint32_t c) { return c == 0; });
}

// Monic polynomial of degree d whose lower coefficients are the base-p digits
// of `code`; ascending code order is ascending (a_{d-1},...,a_0) tuple order.
PolyVec monic_from_code(std::uint64_t code, std::uint32_t d, std::uint32_t p) {
  PolyVec f(d + 1, 0);
  f[d] = 1;
  for (std::uint32_t i = 0; i < d; ++i) {
    f[i] = std::uint32_t(code % p);
    code /= p;
  }
  return f;
}

// Trial division by every monic irreducible of degree <= deg(f)/2.
// irr_by_deg[d] caches the monic irreducibles of degree d, built on demand
// in ascending degree so lower lists are always complete first.
bool is_irreducible(const PolyVec& f, std::uint32_t p,
                    std::vector<std::vector<PolyVec>>& irr_by_deg) {
  const std::uint32_t deg = std::uint32_t(f.size() - 1);
  for (std::uint32_t d = 1; 2 * d <= deg; ++d) {
    if (irr_by_deg.size() <= d) irr_by_deg.resize(d + 1);
    if (irr_by_deg[d].empty()) {
      std::uint64_t count = 1;
      for (std::uint32_t i = 0; i < d; ++i) count *= p;
      for (std::uint64_t code = 0; code < count; ++code) {
        PolyVec g = monic_from_code(code, d, p);
        if (d == 1 || is_irreducible(g, p, irr_by_deg)) irr_by_deg[d].push_back(g);
      }
    }
    for (const PolyVec& g : irr_by_deg[d])
      if (poly_is_zero(poly_mod(f, g, p))) return false;
  }
  return true;
}

}  // namespace

void FieldSpec::check(FieldElem a) const {
  if (a >= q)
    throw std::invalid_argument("element code " + std::to_string(a) +
                                " out of range for GF(" + std::to_string(q) + ")");
}

std::vector<std::uint32_t> FieldSpec::coeffs(FieldElem a) const {
  check(a);
  std::vector<std::uint32_t> c(k, 0);
  for (std::uint32_t i = 0; i < k; ++i) {
    c[i] = a % p;
    a /= p;
  }
  return c;
}

FieldElem FieldSpec::from_coeffs(const std::vector<std::uint32_t>& c) const {
  if (c.size() > k) throw std::invalid_argument("too many coefficients");
  FieldElem a = 0;
  for (std::size_t i = c.size(); i-- > 0;) {
    if (c[i] >= p) throw std::invalid_argument("coefficient out of range");
    a = a * p + c[i];
  }
  return a;
}

FieldElem FieldSpec::add(FieldElem a, FieldElem b) const {
  check(a);
  check(b);
  FieldElem out = 0, place = 1;
  for (std::uint32_t i = 0; i < k; ++i) {
    out += (a % p + b % p) % p * place;
    a /= p;
    b /= p;
    place *= p;
  }
  return out;
}

FieldElem FieldSpec::neg(FieldElem a) const {
  check(a);
  FieldElem out = 0, place = 1;
  for (std::uint32_t i = 0; i < k; ++i) {
    out += (p - a % p) % p * place;
    a /= p;
    place *= p;
  }
  return out;
}

FieldElem FieldSpec::sub(FieldElem a, FieldElem b) const { return add(a, neg(b)); }

FieldElem FieldSpec::mul(FieldElem a, FieldElem b) const {
  check(a);
  check(b);
  if (k == 1) return FieldElem(std::uint64_t(a) * b % p);
  const std::vector<std::uint32_t> ca = coeffs(a), cb = coeffs(b);
  PolyVec prod(2 * k - 1, 0);
  for (std::uint32_t i = 0; i < k; ++i) {
    if (ca[i] == 0) continue;
    for (std::uint32_t j = 0; j < k; ++j)
      prod[i + j] = std::uint32_t((prod[i + j] + std::uint64_t(ca[i]) * cb[j]) % p);
  }
  PolyVec rem = poly_mod(std::move(prod), modulus, p);
  rem.resize(k, 0);
  return from_coeffs(rem);
}

FieldElem FieldSpec::pow(FieldElem a, std::uint64_t e) const {
  check(a);
  FieldElem acc = 1, base = a;
  while (e > 0) {
    if (e & 1) acc = mul(acc, base);
    base = mul(base, base);
    e >>= 1;
  }
  return acc;
}

FieldElem FieldSpec::inv(FieldElem a) const {
  check(a);
  if (a == 0) throw std::invalid_argument("zero is not invertible");
  return pow(a, q - 2);
}

std::uint32_t FieldSpec::element_order(FieldElem a) const {
  check(a);
  if (a == 0) throw std::invalid_argument("zero has no multiplicative order");
  std::uint32_t m = 1;
  FieldElem acc = a;
  while (acc != 1) {
    acc = mul(acc, a);
    ++m;
    if (m > q) throw std::logic_error("element order exceeded q - 1");
  }
  return m;
}

FieldElem FieldSpec::primitive_element() const {
  for (FieldElem a = 1; a < q; ++a)
    if (element_order(a) == q - 1) return a;
  throw std::logic_error("no primitive element found");
}

FieldSpec make_field(std::uint32_t p, std::uint32_t k, std::uint64_t cap) {
  if (!is_prime(p))
    throw std::invalid_argument("characteristic " + std::to_string(p) + " is not prime");
  if (k < 1) throw std::invalid_argument("extension degree must be >= 1");
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < k; ++i) {
    q *= p;
    if (q > cap)
      throw CapExceeded("field size p^k exceeds cap " + std::to_string(cap), q);
  }

  FieldSpec s;
  s.p = p;
  s.k = k;
  s.q = std::uint32_t(q);
  if (k == 1) {
    s.modulus = {0, 1};  // the polynomial x; elements are residues mod p
    return s;
  }
  std::vector<std::vector<PolyVec>> irr_by_deg;
  for (std::uint64_t code = 0; code < q; ++code) {
    PolyVec f = monic_from_code(code, k, p);
    if (is_irreducible(f, p, irr_by_deg)) {
      s.modulus.assign(f.begin(), f.end());
      return s;
    }
  }
  throw std::logic_error("no irreducible modulus found");  // unreachable
}

Mat2 mat_mul(const Mat2& m, const Mat2& n, const FieldSpec& s) {
  Mat2 r;
  r.a = s.add(s.mul(m.a, n.a), s.mul(m.b, n.c));
  r.b = s.add(s.mul(m.a, n.b), s.mul(m.b, n.d));
  r.c = s.add(s.mul(m.c, n.a), s.mul(m.d, n.c));
  r.d = s.add(s.mul(m.c, n.b), s.mul(m.d, n.d));
  return r;
}

Vec2 mat_apply(const Mat2& m, const Vec2& v, const FieldSpec& s) {
  return Vec2{s.add(s.mul(m.a, v.x), s.mul(m.b, v.y)),
              s.add(s.mul(m.c, v.x), s.mul(m.d, v.y))};
}

FieldElem mat_det(const Mat2& m, const FieldSpec& s) {
  return s.sub(s.mul(m.a, m.d), s.mul(m.b, m.c));
}

std::uint64_t mat_order(const Mat2& m, const FieldSpec& s) {
  if (mat_det(m, s) == 0) throw std::invalid_argument("matrix is singular");
  const Mat2 identity{};
  const std::uint64_t limit = std::uint64_t(s.q) * s.q - 1;
  Mat2 acc = m;
  std::uint64_t e = 1;
  while (!(acc == identity)) {
    acc = mat_mul(acc, m, s);
    ++e;
    if (e > limit) throw std::logic_error("matrix order exceeded q^2 - 1");
  }
  return e;
}

Mat2 companion_matrix(const Poly2& f, const FieldSpec& s) {
  return Mat2{0, s.neg(f.c0), 1, s.neg(f.c1)};
}

Poly2 find_primitive_poly2(const FieldSpec& s) {
  const std::uint64_t target = std::uint64_t(s.q) * s.q - 1;
  for (FieldElem c1 = 0; c1 < s.q; ++c1) {
    for (FieldElem c0 = 1; c0 < s.q; ++c0) {  // c0 = 0 gives a singular companion
      const Poly2 f{c1, c0};
      if (mat_order(companion_matrix(f, s), s) == target) return f;
    }
  }
  throw std::logic_error("no primitive quadratic found");  // unreachable
}

}  // namespace dlab
