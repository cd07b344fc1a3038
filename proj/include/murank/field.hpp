#pragma once

#include "murank/errors.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace murank {

inline constexpr std::uint64_t kMaxFieldSize = std::uint64_t{1} << 32;
inline constexpr std::size_t kMaxAlgebraDimension = 64;

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

/// q = p^r with p prime.
struct PrimePower {
  std::uint64_t p = 2;
  unsigned r = 1;
  std::uint64_t q = 2;

  static PrimePower make(std::uint64_t p, unsigned r) {
    if (!is_prime(p)) throw NonPrime(std::to_string(p) + " is not prime");
    if (r == 0) throw UnsupportedSize("exponent must be positive");
    std::uint64_t q = 1;
    for (unsigned i = 0; i < r; ++i) {
      q *= p;
      if (q > kMaxFieldSize) throw UnsupportedSize("q exceeds 2^32");
    }
    return {p, r, q};
  }

  /// Factors q by trial division; throws NonPrime if q is not a prime power.
  static PrimePower from_q(std::uint64_t q) {
    if (q < 2) throw NonPrime(std::to_string(q) + " is not a prime power");
    if (q > kMaxFieldSize) throw UnsupportedSize("q exceeds 2^32");
    std::uint64_t p = q;
    for (std::uint64_t d = 2; d * d <= q; ++d)
      if (q % d == 0) {
        p = d;
        break;
      }
    unsigned r = 0;
    std::uint64_t rest = q;
    while (rest % p == 0) {
      rest /= p;
      ++r;
    }
    if (rest != 1) throw NonPrime(std::to_string(q) + " is not a prime power");
    return {p, r, q};
  }

  bool is_prime_field() const { return r == 1; }
  bool is_square() const { return r % 2 == 0; }
  /// sqrt(q) as a prime power; only valid when is_square().
  PrimePower square_root() const { return make(p, r / 2); }

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// Model of F_q = F_p[x]/(modulus).
///
/// Elements are coefficient vectors over F_p, packed as the integer
/// sum c_i p^i; that integer order is the canonical element order.
class GaloisField {
public:
  using Element = std::uint64_t;

  /// Builds F_q from an explicit monic modulus over F_p (constant term first).
  /// The modulus is trusted; use make_field for a checked construction.
  GaloisField(PrimePower base, std::vector<std::uint64_t> modulus)
      : base_(base), modulus_(std::move(modulus)) {
    if (modulus_.size() != base_.r + 1 || modulus_.back() != 1)
      throw DimensionMismatch("modulus must be monic of degree r");
  }

  static GaloisField prime_field(std::uint64_t p) {
    return GaloisField(PrimePower::make(p, 1), {0, 1});
  }

  const PrimePower& base() const { return base_; }
  std::uint64_t p() const { return base_.p; }
  std::uint64_t size() const { return base_.q; }
  const std::vector<std::uint64_t>& modulus() const { return modulus_; }

  Element zero() const { return 0; }
  Element one() const { return 1; }
  /// The i-th element in canonical order.
  Element element(std::uint64_t i) const { return i; }
  bool valid(Element a) const { return a < base_.q; }

  std::vector<std::uint64_t> coeffs(Element a) const {
    std::vector<std::uint64_t> c(base_.r);
    for (auto& ci : c) {
      ci = a % base_.p;
      a /= base_.p;
    }
    return c;
  }
  Element from_coeffs(std::span<const std::uint64_t> c) const {
    Element a = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) a = a * base_.p + (*it % base_.p);
    return a;
  }

  Element add(Element a, Element b) const {
    if (base_.r == 1) return addp(a, b);
    if (base_.p == 2) return a ^ b;
    Element out = 0, scale = 1;
    for (unsigned i = 0; i < base_.r; ++i) {
      out += addp(a % base_.p, b % base_.p) * scale;
      a /= base_.p;
      b /= base_.p;
      scale *= base_.p;
    }
    return out;
  }
  Element neg(Element a) const {
    if (base_.r == 1) return a == 0 ? 0 : base_.p - a;
    if (base_.p == 2) return a;
    Element out = 0, scale = 1;
    for (unsigned i = 0; i < base_.r; ++i) {
      const auto c = a % base_.p;
      out += (c == 0 ? 0 : base_.p - c) * scale;
      a /= base_.p;
      scale *= base_.p;
    }
    return out;
  }
  Element sub(Element a, Element b) const { return add(a, neg(b)); }

  Element mul(Element a, Element b) const {
    if (base_.r == 1) return mulp(a, b);
    const auto r = base_.r;
    const auto ca = coeffs(a), cb = coeffs(b);
    std::vector<std::uint64_t> prod(2 * r - 1, 0);
    for (unsigned i = 0; i < r; ++i) {
      if (ca[i] == 0) continue;
      for (unsigned j = 0; j < r; ++j) prod[i + j] = addp(prod[i + j], mulp(ca[i], cb[j]));
    }
    // reduce by the monic modulus, highest degree first
    for (std::size_t d = prod.size(); d-- > r;) {
      const auto lead = prod[d];
      if (lead == 0) continue;
      for (unsigned i = 0; i < r; ++i)
        prod[d - r + i] = subp(prod[d - r + i], mulp(lead, modulus_[i]));
      prod[d] = 0;
    }
    prod.resize(r);
    return from_coeffs(prod);
  }

  Element pow(Element a, std::uint64_t e) const {
    Element result = one();
    while (e) {
      if (e & 1) result = mul(result, a);
      a = mul(a, a);
      e >>= 1;
    }
    return result;
  }
  Element inv(Element a) const {
    if (a == 0) throw std::domain_error("inverse of zero");
    return pow(a, base_.q - 2);
  }

  friend bool operator==(const GaloisField& a, const GaloisField& b) {
    return a.base_ == b.base_ && a.modulus_ == b.modulus_;
  }

private:
  std::uint64_t addp(std::uint64_t a, std::uint64_t b) const {
    const auto s = a + b;
    return s >= base_.p ? s - base_.p : s;
  }
  std::uint64_t subp(std::uint64_t a, std::uint64_t b) const { return a >= b ? a - b : a + base_.p - b; }
  std::uint64_t mulp(std::uint64_t a, std::uint64_t b) const {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % base_.p);
  }

  PrimePower base_;
  std::vector<std::uint64_t> modulus_;
};

/// Dense univariate polynomial over a GaloisField, constant term first,
/// no trailing zeros (the zero polynomial is empty).
struct Polynomial {
  std::vector<GaloisField::Element> coeffs;

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  bool is_zero() const { return coeffs.empty(); }
  void trim() {
    while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
  }
  friend bool operator==(const Polynomial&, const Polynomial&) = default;
};

namespace poly {

using Element = GaloisField::Element;

inline Polynomial make(const std::vector<Element>& c) {
  Polynomial f{c};
  f.trim();
  return f;
}

inline Polynomial add(const GaloisField& F, const Polynomial& a, const Polynomial& b) {
  Polynomial out;
  out.coeffs.resize(std::max(a.coeffs.size(), b.coeffs.size()), 0);
  for (std::size_t i = 0; i < out.coeffs.size(); ++i) {
    const Element x = i < a.coeffs.size() ? a.coeffs[i] : 0;
    const Element y = i < b.coeffs.size() ? b.coeffs[i] : 0;
    out.coeffs[i] = F.add(x, y);
  }
  out.trim();
  return out;
}

inline Polynomial scale(const GaloisField& F, const Polynomial& a, Element s) {
  Polynomial out{a.coeffs};
  for (auto& c : out.coeffs) c = F.mul(c, s);
  out.trim();
  return out;
}

inline Polynomial sub(const GaloisField& F, const Polynomial& a, const Polynomial& b) {
  return add(F, a, scale(F, b, F.neg(F.one())));
}

inline Polynomial mul(const GaloisField& F, const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  Polynomial out;
  out.coeffs.assign(a.coeffs.size() + b.coeffs.size() - 1, 0);
  for (std::size_t i = 0; i < a.coeffs.size(); ++i) {
    if (a.coeffs[i] == 0) continue;
    for (std::size_t j = 0; j < b.coeffs.size(); ++j)
      out.coeffs[i + j] = F.add(out.coeffs[i + j], F.mul(a.coeffs[i], b.coeffs[j]));
  }
  out.trim();
  return out;
}

/// Remainder of a modulo a nonzero divisor.
inline Polynomial mod(const GaloisField& F, Polynomial a, const Polynomial& m) {
  if (m.is_zero()) throw std::domain_error("polynomial division by zero");
  const auto dm = static_cast<std::size_t>(m.degree());
  const Element lead_inv = F.inv(m.coeffs.back());
  while (!a.is_zero() && a.coeffs.size() > dm) {
    const std::size_t shift = a.coeffs.size() - 1 - dm;
    const Element factor = F.mul(a.coeffs.back(), lead_inv);
    for (std::size_t i = 0; i <= dm; ++i)
      a.coeffs[shift + i] = F.sub(a.coeffs[shift + i], F.mul(factor, m.coeffs[i]));
    a.trim();
  }
  return a;
}

inline Polynomial gcd(const GaloisField& F, Polynomial a, Polynomial b) {
  while (!b.is_zero()) {
    auto r = mod(F, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

inline Polynomial mulmod(const GaloisField& F, const Polynomial& a, const Polynomial& b, const Polynomial& m) {
  return mod(F, mul(F, a, b), m);
}

inline Polynomial powmod(const GaloisField& F, Polynomial base, std::uint64_t e, const Polynomial& m) {
  Polynomial result = mod(F, make({F.one()}), m);
  base = mod(F, base, m);
  while (e) {
    if (e & 1) result = mulmod(F, result, base, m);
    base = mulmod(F, base, base, m);
    e >>= 1;
  }
  return result;
}

inline Element eval(const GaloisField& F, const Polynomial& f, Element x) {
  Element acc = 0;
  for (auto it = f.coeffs.rbegin(); it != f.coeffs.rend(); ++it) acc = F.add(F.mul(acc, x), *it);
  return acc;
}

inline std::vector<unsigned> prime_divisors(unsigned n) {
  std::vector<unsigned> out;
  for (unsigned d = 2; d * d <= n; ++d)
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  if (n > 1) out.push_back(n);
  return out;
}

/// Ben-Or's irreducibility test over F (|F| = Q): f of degree m is irreducible
/// iff gcd(x^(Q^i) - x, f) = 1 for i = 1..m/2. Roots in F are ruled out first.
inline bool is_irreducible(const GaloisField& F, const Polynomial& f) {
  const int m = f.degree();
  if (m <= 0) return false;
  if (m == 1) return true;
  const auto Q = F.size();
  if (Q <= 4096)
    for (std::uint64_t v = 0; v < Q; ++v)
      if (eval(F, f, F.element(v)) == 0) return false;
  const Polynomial x = make({0, F.one()});
  Polynomial frob = mod(F, x, f);  // x^(Q^i) mod f
  for (int i = 1; 2 * i <= m; ++i) {
    frob = powmod(F, frob, Q, f);
    if (gcd(F, f, sub(F, frob, x)).degree() != 0) return false;
  }
  return true;
}

/// Smallest monic irreducible of the given degree over F, where candidates are
/// ordered by their coefficients read from degree m-1 down to the constant term.
inline Polynomial smallest_irreducible(const GaloisField& F, unsigned degree) {
  const auto Q = F.size();
  std::vector<Element> c(degree + 1, 0);
  c[degree] = F.one();
  for (;;) {
    Polynomial f{c};
    if (is_irreducible(F, f)) return f;
    // increment the base-Q counter c_0 + c_1 Q + ...
    std::size_t i = 0;
    while (i < degree && ++c[i] == Q) c[i++] = 0;
    if (i == degree) throw std::logic_error("no irreducible polynomial found");
  }
}

}  // namespace poly

/// Field F_q = F_p[x]/(f) where f is the smallest monic irreducible of degree r.
inline GaloisField make_field(std::uint64_t p, unsigned r) {
  const auto base = PrimePower::make(p, r);
  if (r == 1) return GaloisField(base, {0, 1});
  const auto Fp = GaloisField::prime_field(p);
  const auto f = poly::smallest_irreducible(Fp, r);
  return GaloisField(base, f.coeffs);
}

inline GaloisField make_field(const PrimePower& q) { return make_field(q.p, q.r); }

/// F_{q^m}[t]/(t^l) over F_q. Coordinates: index j*m + i holds the
/// coefficient of x^i t^j, where x generates F_{q^m} = F_q[x]/(ext_modulus).
class ExtensionAlgebra {
public:
  using Element = std::vector<GaloisField::Element>;

  ExtensionAlgebra(GaloisField ground, unsigned m, unsigned l)
      : ground_(std::move(ground)), m_(m), l_(l) {
    if (m == 0 || l == 0) throw UnsupportedSize("extension degree and truncation order must be positive");
    if (static_cast<std::size_t>(m) * l > kMaxAlgebraDimension)
      throw UnsupportedSize("algebra dimension exceeds 64");
    ext_modulus_ = poly::smallest_irreducible(ground_, m);
  }

  ExtensionAlgebra(GaloisField ground, unsigned m, unsigned l, Polynomial ext_modulus)
      : ground_(std::move(ground)), m_(m), l_(l), ext_modulus_(std::move(ext_modulus)) {
    if (static_cast<std::size_t>(m) * l > kMaxAlgebraDimension)
      throw UnsupportedSize("algebra dimension exceeds 64");
    if (ext_modulus_.degree() != static_cast<int>(m) || ext_modulus_.coeffs.back() != ground_.one() ||
        !poly::is_irreducible(ground_, ext_modulus_))
      throw DimensionMismatch("extension modulus must be monic irreducible of degree m");
  }

  const GaloisField& ground() const { return ground_; }
  unsigned m() const { return m_; }
  unsigned l() const { return l_; }
  std::size_t dimension() const { return static_cast<std::size_t>(m_) * l_; }
  const Polynomial& ext_modulus() const { return ext_modulus_; }

  Element zero() const { return Element(dimension(), 0); }
  Element one() const {
    auto e = zero();
    e[0] = ground_.one();
    return e;
  }
  Element basis(std::size_t i) const {
    auto e = zero();
    e.at(i) = ground_.one();
    return e;
  }

  Element add(const Element& a, const Element& b) const {
    check(a);
    check(b);
    Element out(dimension());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = ground_.add(a[i], b[i]);
    return out;
  }

  Element scale(const Element& a, GaloisField::Element s) const {
    check(a);
    Element out(a);
    for (auto& c : out) c = ground_.mul(c, s);
    return out;
  }

  /// Schoolbook product, reduced modulo ext_modulus and t^l.
  Element mul(const Element& a, const Element& b) const {
    check(a);
    check(b);
    Element out = zero();
    for (unsigned ja = 0; ja < l_; ++ja) {
      const auto fa = slice(a, ja);
      if (fa.is_zero()) continue;
      for (unsigned jb = 0; ja + jb < l_; ++jb) {
        const auto fb = slice(b, jb);
        if (fb.is_zero()) continue;
        const auto prod = poly::mulmod(ground_, fa, fb, ext_modulus_);
        for (std::size_t i = 0; i < prod.coeffs.size(); ++i) {
          auto& dst = out[(ja + jb) * m_ + i];
          dst = ground_.add(dst, prod.coeffs[i]);
        }
      }
    }
    return out;
  }

  /// Embeds a polynomial in x (l = 1 slice) after reducing it modulo ext_modulus.
  Element from_polynomial(const Polynomial& f) const {
    auto r = poly::mod(ground_, f, ext_modulus_);
    Element out = zero();
    std::copy(r.coeffs.begin(), r.coeffs.end(), out.begin());
    return out;
  }

private:
  void check(const Element& a) const {
    if (a.size() != dimension()) throw DimensionMismatch("element has wrong dimension");
  }
  Polynomial slice(const Element& a, unsigned j) const {
    return poly::make(Element(a.begin() + j * m_, a.begin() + (j + 1) * m_));
  }

  GaloisField ground_;
  unsigned m_;
  unsigned l_;
  Polynomial ext_modulus_;
};

/// Interpolation with an optional value at infinity.
///
/// Finds the polynomial P of degree <= target_degree with P(x_i) = y_i for the
/// finite points, and whose x^target_degree coefficient is at_infinity when given.
inline Polynomial interpolate(const GaloisField& F,
                              const std::vector<std::pair<GaloisField::Element, GaloisField::Element>>& points,
                              std::optional<GaloisField::Element> at_infinity, unsigned target_degree) {
  const std::size_t count = points.size() + (at_infinity ? 1 : 0);
  if (count != static_cast<std::size_t>(target_degree) + 1)
    throw CountMismatch("interpolation needs target_degree + 1 conditions");
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j)
      if (points[i].first == points[j].first) throw DuplicatePoint("duplicate abscissa");

  Polynomial result;
  for (std::size_t i = 0; i < points.size(); ++i) {
    Polynomial basis = poly::make({F.one()});
    GaloisField::Element denom = F.one();
    for (std::size_t j = 0; j < points.size(); ++j) {
      if (j == i) continue;
      basis = poly::mul(F, basis, poly::make({F.neg(points[j].first), F.one()}));
      denom = F.mul(denom, F.sub(points[i].first, points[j].first));
    }
    result = poly::add(F, result, poly::scale(F, basis, F.mul(points[i].second, F.inv(denom))));
  }
  if (at_infinity) {
    // P = Q + b * prod(x - x_i): the product vanishes on every finite point.
    Polynomial vanishing = poly::make({F.one()});
    for (const auto& pt : points) vanishing = poly::mul(F, vanishing, poly::make({F.neg(pt.first), F.one()}));
    result = poly::add(F, result, poly::scale(F, vanishing, *at_infinity));
  }
  return result;
}

}  // namespace murank
