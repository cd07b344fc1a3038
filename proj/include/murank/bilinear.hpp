#pragma once

#include "murank/constants.hpp"
#include "murank/errors.hpp"
#include "murank/field.hpp"
#include "murank/rational.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace murank {

/// One summand a(x) b(y) c of a bilinear multiplication algorithm.
/// a and b are linear forms given by their values on the basis.
struct BilinearTriple {
  std::vector<GaloisField::Element> a;
  std::vector<GaloisField::Element> b;
  ExtensionAlgebra::Element c;
};

struct BilinearDecomposition {
  ExtensionAlgebra algebra;
  std::vector<BilinearTriple> triples;
  bool symmetric = false;
  bool verified = false;

  std::size_t rank() const { return triples.size(); }
};

inline GaloisField::Element apply_form(const GaloisField& F, const std::vector<GaloisField::Element>& form,
                                       const ExtensionAlgebra::Element& x) {
  GaloisField::Element acc = 0;
  for (std::size_t i = 0; i < form.size(); ++i) acc = F.add(acc, F.mul(form[i], x[i]));
  return acc;
}

/// Checks x*y = sum a_l(x) b_l(y) c_l on every pair of basis vectors.
inline bool verify_decomposition(const BilinearDecomposition& dec) {
  const auto& A = dec.algebra;
  const auto& F = A.ground();
  const std::size_t N = A.dimension();
  for (const auto& t : dec.triples) {
    if (t.a.size() != N || t.b.size() != N || t.c.size() != N) return false;
    if (dec.symmetric && t.a != t.b) return false;
  }
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) {
      auto sum = A.zero();
      for (const auto& t : dec.triples) {
        const auto coef = F.mul(t.a[i], t.b[j]);
        if (coef == 0) continue;
        for (std::size_t k = 0; k < N; ++k) sum[k] = F.add(sum[k], F.mul(coef, t.c[k]));
      }
      if (sum != A.mul(A.basis(i), A.basis(j))) return false;
    }
  return true;
}

/// Evaluation at the first 2n-2 elements of F_q and at infinity, followed by
/// interpolation of the degree 2n-2 product and reduction modulo f.
inline BilinearDecomposition build_interpolation_algorithm(const PrimePower& q, unsigned n) {
  if (n == 0) throw RangeError("n must be positive");
  if (2 * static_cast<std::uint64_t>(n) - 2 > q.q)
    throw RangeError("interpolation needs n <= q/2 + 1");
  const auto F = make_field(q);
  BilinearDecomposition dec{ExtensionAlgebra(F, n, 1), {}, true, false};
  const auto& A = dec.algebra;
  const unsigned npts = 2 * n - 2;

  std::vector<std::pair<GaloisField::Element, GaloisField::Element>> pts(npts);
  for (unsigned k = 0; k < npts; ++k) pts[k] = {F.element(k), 0};

  for (unsigned k = 0; k <= npts; ++k) {
    const bool infinity = k == npts;
    std::vector<GaloisField::Element> form(n, 0);
    if (infinity) {
      form[n - 1] = F.one();
    } else {
      GaloisField::Element power = F.one();
      for (unsigned i = 0; i < n; ++i) {
        form[i] = power;
        power = F.mul(power, pts[k].first);
      }
    }
    auto values = pts;
    if (!infinity) values[k].second = F.one();
    const auto P = interpolate(F, values, infinity ? F.one() : F.zero(), npts);
    dec.triples.push_back({form, form, A.from_polynomial(P)});
  }
  dec.verified = verify_decomposition(dec);
  return dec;
}

inline nlohmann::json to_json(const BilinearDecomposition& dec) {
  nlohmann::json triples = nlohmann::json::array();
  for (const auto& t : dec.triples) triples.push_back({{"a", t.a}, {"b", t.b}, {"c", t.c}});
  const auto& A = dec.algebra;
  return {{"q", A.ground().size()},
          {"n", A.m()},
          {"l", A.l()},
          {"field_modulus", A.ground().modulus()},
          {"ext_modulus", A.ext_modulus().coeffs},
          {"rank", dec.rank()},
          {"triples", triples},
          {"symmetric", dec.symmetric},
          {"verified", dec.verified && verify_decomposition(dec)}};
}

struct NotFound {};

inline constexpr std::uint64_t kDefaultBruteForceBudget = 100'000'000;

namespace detail {

inline std::uint64_t binomial_capped(std::uint64_t n, std::uint64_t k, std::uint64_t cap) {
  Integer v = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    v = v * (n - k + i) / i;
    if (v > cap) return cap + 1;
  }
  return v.convert_to<std::uint64_t>();
}

/// All nonzero vectors of length N over F, optionally with first nonzero entry 1.
inline std::vector<std::vector<GaloisField::Element>> all_vectors(const GaloisField& F, std::size_t N,
                                                                  bool normalized) {
  std::vector<std::vector<GaloisField::Element>> out;
  std::vector<GaloisField::Element> v(N, 0);
  for (;;) {
    std::size_t i = 0;
    while (i < N && ++v[i] == F.size()) v[i++] = 0;
    if (i == N) break;
    if (normalized) {
      auto it = std::find_if(v.rbegin(), v.rend(), [](auto x) { return x != 0; });
      if (*it != F.one()) continue;
    }
    out.push_back(v);
  }
  return out;
}

}  // namespace detail

/// Least rank <= rank_cap of a bilinear algorithm for F_{q^n}/F_q, by
/// exhaustive meet-in-the-middle search over multisets of rank-one tensors.
/// Forms are normalized (last nonzero coordinate 1); the output vector is free.
inline std::variant<unsigned, NotFound> brute_force_min_rank(const PrimePower& q, unsigned n, unsigned rank_cap,
                                                             std::uint64_t budget = kDefaultBruteForceBudget) {
  if (n == 0) throw RangeError("n must be positive");
  const std::size_t N = n;
  const std::size_t cells = N * N * N;
  {
    Integer space = ipow(Integer(q.q), static_cast<unsigned>(cells));
    if (space >= (Integer(1) << 63)) throw BudgetExceeded("tensor space too large to pack");
  }
  const auto F = make_field(q);
  const ExtensionAlgebra A(F, n, 1);

  std::vector<GaloisField::Element> target(cells);
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) {
      const auto prod = A.mul(A.basis(i), A.basis(j));
      for (std::size_t k = 0; k < N; ++k) target[(i * N + j) * N + k] = prod[k];
    }

  const auto forms = detail::all_vectors(F, N, true);
  const auto outputs = detail::all_vectors(F, N, false);
  std::vector<std::vector<GaloisField::Element>> rank_one;
  for (const auto& a : forms)
    for (const auto& b : forms)
      for (const auto& c : outputs) {
        std::vector<GaloisField::Element> t(cells);
        for (std::size_t i = 0; i < N; ++i)
          for (std::size_t j = 0; j < N; ++j) {
            const auto ab = F.mul(a[i], b[j]);
            for (std::size_t k = 0; k < N; ++k) t[(i * N + j) * N + k] = F.mul(ab, c[k]);
          }
        rank_one.push_back(std::move(t));
      }
  const std::uint64_t T = rank_one.size();

  auto pack = [&](const std::vector<GaloisField::Element>& v) {
    std::uint64_t key = 0;
    for (auto it = v.rbegin(); it != v.rend(); ++it) key = key * q.q + *it;
    return key;
  };

  // Enumerates sums of all multisets of size h, calling visit(sum).
  auto enumerate = [&](unsigned h, auto&& visit) {
    std::vector<std::vector<GaloisField::Element>> partial(h + 1, std::vector<GaloisField::Element>(cells, 0));
    auto rec = [&](auto&& self, unsigned depth, std::uint64_t start) -> void {
      if (depth == h) {
        visit(partial[h]);
        return;
      }
      for (std::uint64_t t = start; t < T; ++t) {
        for (std::size_t c = 0; c < cells; ++c) partial[depth + 1][c] = F.add(partial[depth][c], rank_one[t][c]);
        self(self, depth + 1, t);
      }
    };
    rec(rec, 0, 0);
  };

  for (unsigned lambda = 1; lambda <= rank_cap; ++lambda) {
    const unsigned h1 = lambda / 2, h2 = lambda - h1;
    const auto c1 = detail::binomial_capped(T + h1 - 1, h1, budget);
    const auto c2 = detail::binomial_capped(T + h2 - 1, h2, budget);
    if (c1 + c2 > budget) throw BudgetExceeded("search for rank " + std::to_string(lambda) + " exceeds budget");

    std::vector<std::uint64_t> left;
    left.reserve(c1);
    enumerate(h1, [&](const auto& sum) { left.push_back(pack(sum)); });
    std::sort(left.begin(), left.end());
    left.erase(std::unique(left.begin(), left.end()), left.end());

    bool found = false;
    std::vector<GaloisField::Element> need(cells);
    enumerate(h2, [&](const auto& sum) {
      if (found) return;
      for (std::size_t c = 0; c < cells; ++c) need[c] = F.sub(target[c], sum[c]);
      found = std::binary_search(left.begin(), left.end(), pack(need));
    });
    if (found) return lambda;
  }
  return NotFound{};
}

/// Place usage n_{d,u}: count places of degree d used with multiplicity u.
struct PlaceUse {
  unsigned degree = 1;
  unsigned multiplicity = 1;
  Integer count = 0;
};

struct PlaceBudget {
  std::vector<PlaceUse> entries;
  /// Available places B_d; a missing degree leaves that count unchecked.
  std::map<unsigned, Integer> degree_caps;
};

struct Inapplicable {
  std::string hypothesis;
};

using CcResult = std::variant<Rational, Inapplicable>;

/// Sum of n_{d,u} mu_q(d,u), provided the hypotheses of the generalized
/// Chudnovsky construction hold for the claimed invariants.
inline CcResult general_cc_bound(const PrimePower& q, unsigned m, unsigned l, const Integer& g,
                                 const PlaceBudget& budget, bool has_degree_m_place, const KnownValues& table,
                                 std::vector<TableEntry>* used = nullptr) {
  if (g < 2) return Inapplicable{"genus must be at least 2"};
  std::map<unsigned, Integer> per_degree;
  for (const auto& e : budget.entries) {
    if (e.count < 0) return Inapplicable{"place counts must be non-negative"};
    per_degree[e.degree] += e.count;
  }
  for (const auto& [d, total] : per_degree) {
    auto cap = budget.degree_caps.find(d);
    if (cap != budget.degree_caps.end() && total > cap->second)
      return Inapplicable{"more places of degree " + std::to_string(d) + " than available"};
  }
  if (!has_degree_m_place) {
    const Integer Q = q.q;
    if (!le_sqrt_difference(2 * g + 1, ipow(Q, m), ipow(Q, m - 1)))
      return Inapplicable{"no place of degree m is certified"};
  }
  Integer weighted = 0;
  for (const auto& e : budget.entries) weighted += e.count * e.degree * e.multiplicity;
  const Integer need = Integer(2) * m * l + 3 * e_const(q) + g - 1;
  if (weighted < need) return Inapplicable{"sum n_{d,u} d u is below 2ml+3e+g-1"};

  Rational total = 0;
  for (const auto& e : budget.entries) {
    if (e.count == 0) continue;
    const auto v = table.mu_upper(q, e.degree, e.multiplicity);
    if (!v) throw MissingTableEntry("no upper bound for " + measure_key(Measure::mu, q.q, e.degree, e.multiplicity));
    if (used) used->push_back(*v);
    total += Rational(e.count * v->value);
  }
  return total;
}

}  // namespace murank
