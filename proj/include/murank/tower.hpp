#pragma once

#include "murank/constants.hpp"
#include "murank/errors.hpp"
#include "murank/field.hpp"
#include "murank/rational.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace murank {

enum class TowerFamily { gs_quadratic, gs_base, gs_binary, kummer_quadratic, kummer_base };

inline std::string family_name(TowerFamily f) {
  switch (f) {
    case TowerFamily::gs_quadratic: return "gs-as-quadratic";
    case TowerFamily::gs_base: return "gs-as-base";
    case TowerFamily::gs_binary: return "gs-as-binary";
    case TowerFamily::kummer_quadratic: return "kummer-quadratic";
    case TowerFamily::kummer_base: return "kummer-base";
  }
  return "?";
}

inline TowerFamily family_from_name(const std::string& s) {
  for (auto f : {TowerFamily::gs_quadratic, TowerFamily::gs_base, TowerFamily::gs_binary,
                 TowerFamily::kummer_quadratic, TowerFamily::kummer_base})
    if (family_name(f) == s) return f;
  throw InvalidStep("unknown tower family '" + s + "'");
}

/// A tower family used to bound mu over `target`.
///
/// `tower` is the Garcia-Stichtenoth parameter q (the tower lives over F_{q^2},
/// F_q or F_2), or the characteristic p for the Kummer tower.
struct TowerId {
  TowerFamily family = TowerFamily::gs_base;
  PrimePower target;
  PrimePower tower;

  static TowerId make(TowerFamily family, const PrimePower& target) {
    TowerId t{family, target, target};
    switch (family) {
      case TowerFamily::gs_quadratic:
        if (!target.is_square() || target.square_root().q < 4)
          throw InvalidStep("gs-as-quadratic needs a target q^2 with q >= 4");
        t.tower = target.square_root();
        break;
      case TowerFamily::gs_base:
        if (!(target.q > 5 || target.q == 4)) throw InvalidStep("gs-as-base needs q > 5 or q = 4");
        break;
      case TowerFamily::gs_binary:
        if (target.q != 2) throw InvalidStep("gs-as-binary is a tower over F_2");
        t.tower = PrimePower::make(2, 2);
        break;
      case TowerFamily::kummer_quadratic:
        if (target.p == 2 || target.r != 2) throw InvalidStep("kummer-quadratic needs a target p^2 with p odd");
        t.tower = PrimePower::make(target.p, 1);
        break;
      case TowerFamily::kummer_base:
        if (target.p == 2 || target.r != 1) throw InvalidStep("kummer-base needs an odd prime target");
        break;
    }
    return t;
  }

  /// Every family whose step-existence lemma covers this target.
  static std::vector<TowerId> valid_for(const PrimePower& target) {
    std::vector<TowerId> out;
    for (auto f : {TowerFamily::gs_quadratic, TowerFamily::gs_base, TowerFamily::gs_binary,
                   TowerFamily::kummer_quadratic, TowerFamily::kummer_base}) {
      try {
        out.push_back(make(f, target));
      } catch (const InvalidStep&) {
      }
    }
    return out;
  }

  bool is_gs() const {
    return family == TowerFamily::gs_quadratic || family == TowerFamily::gs_base ||
           family == TowerFamily::gs_binary;
  }

  /// Degree d of the places the bound is built on.
  unsigned d() const {
    switch (family) {
      case TowerFamily::gs_quadratic: return 1;
      case TowerFamily::gs_base: return 2;
      case TowerFamily::gs_binary: return 4;
      case TowerFamily::kummer_quadratic: return 1;
      case TowerFamily::kummer_base: return 2;
    }
    return 1;
  }

  std::vector<unsigned> degree_set() const {
    std::vector<unsigned> out;
    for (unsigned j = 1; j <= d(); ++j)
      if (d() % j == 0) out.push_back(j);
    return out;
  }

  std::string name() const { return family_name(family) + "/F_" + std::to_string(target.q); }

  friend bool operator==(const TowerId& a, const TowerId& b) {
    return a.family == b.family && a.target == b.target;
  }
};

/// Numeric invariants of one step of a tower.
struct TowerStepProfile {
  TowerId tower;
  unsigned index = 0;  ///< position in the tower's linear order of steps
  unsigned k = 0;
  std::optional<unsigned> s;
  std::optional<Integer> genus_exact;
  Integer genus_upper;
  Integer genus_lower;
  Integer weighted_places_lower;  ///< sum over the degree set of j B_j
  std::vector<unsigned> degree_set;
  Integer D;
  Integer n0_lower;
  Integer delta_lower;  ///< certified lower bound on g(next step) - g(this step)
};

/// Genus of level k >= 1 of the Garcia-Stichtenoth tower with parameter q.
inline Integer gs_genus(const PrimePower& q, unsigned k) {
  if (k == 0) throw InvalidStep("the Garcia-Stichtenoth tower starts at k = 1");
  const Integer Q = q.q;
  if (k % 2 == 1)
    return ipow(Q, k) + ipow(Q, k - 1) - ipow(Q, (k + 1) / 2) - 2 * ipow(Q, (k - 1) / 2) + 1;
  // q^k + q^(k-1) - (q^(k/2+1) + 3 q^(k/2) + 2 q^(k/2-1)) / 2 + 1; the bracket is
  // always even (for odd q it is odd + odd + even)
  const Integer half = (ipow(Q, k / 2 + 1) + 3 * ipow(Q, k / 2) + 2 * ipow(Q, k / 2 - 1)) / 2;
  return ipow(Q, k) + ipow(Q, k - 1) - half + 1;
}

/// Genus of L_k in the Kummer tower y^2 = (x^2+1)/2x.
inline Integer kummer_genus(unsigned k) {
  const Integer two = 2;
  if (k % 2 == 0) return ipow(two, k + 1) - 3 * ipow(two, k / 2) + 1;
  return ipow(two, k + 1) - 2 * ipow(two, (k + 1) / 2) + 1;
}

/// Smallest n for which the family's step-existence lemma applies.
inline std::uint64_t tower_threshold(const TowerId& t) {
  auto half_ceil = [](std::uint64_t v) { return (v + 1) / 2; };
  const auto& q = t.target;
  switch (t.family) {
    case TowerFamily::gs_quadratic:
    case TowerFamily::kummer_quadratic: return half_ceil(q.q + 1 + epsilon(q));
    case TowerFamily::gs_base: return q.q == 4 ? 10 : half_ceil(q.q + 1 + epsilon(q));
    case TowerFamily::gs_binary: return 12;
    case TowerFamily::kummer_base:
      if (q.q == 3) return 11;
      if (q.q == 5) return 5;
      return half_ceil(q.q + 1 + epsilon(q));
  }
  return 0;
}

/// Least m' <= n such that 2g+1 <= Q^((m'-1)/2) (sqrt(Q) - 1); the right side grows
/// with m', so this certifies a place of degree n over F_Q. Empty if none.
inline std::optional<unsigned> place_witness(std::uint64_t Q, const Integer& g, std::uint64_t n) {
  const Integer a = 2 * g + 1;
  auto ok = [&](std::uint64_t m) {
    return le_sqrt_difference(a, ipow(Integer(Q), static_cast<unsigned>(m)),
                              ipow(Integer(Q), static_cast<unsigned>(m - 1)));
  };
  std::uint64_t hi = 1;
  while (hi < n && !ok(hi)) hi = std::min<std::uint64_t>(2 * hi, n);
  if (!ok(hi)) return std::nullopt;
  std::uint64_t lo = hi / 2 + 1;
  if (hi == 1) lo = 1;
  while (lo < hi) {
    const auto mid = lo + (hi - lo) / 2;
    if (ok(mid))
      hi = mid;
    else
      lo = mid + 1;
  }
  return static_cast<unsigned>(hi);
}

namespace detail {

inline std::optional<Integer> gs_exact_genus(const TowerId& t, unsigned k, unsigned s) {
  const auto& q = t.tower;
  if (s == 0) return gs_genus(q, k);
  if (s == q.r) return gs_genus(q, k + 1);
  // small intermediate genera of the binary tower
  if (q.q == 4 && s == 1) {
    if (k == 1) return Integer(2);
    if (k == 2) return Integer(23);
  }
  return std::nullopt;
}

inline Integer gs_genus_lower(const TowerId& t, unsigned k, unsigned s) {
  if (auto e = gs_exact_genus(t, k, s)) return *e;
  const auto& q = t.tower;
  const Integer v = (gs_genus(q, k) - 1) * ipow(Integer(q.p), s) + 1;
  return v < 0 ? Integer(0) : v;
}

inline Integer gs_genus_upper(const TowerId& t, unsigned k, unsigned s) {
  if (auto e = gs_exact_genus(t, k, s)) return *e;
  const auto& q = t.tower;
  const Integer Q = q.q, p = q.p;
  const Integer pr = ipow(p, q.r - s);
  Integer best = gs_genus(q, k + 1) / pr + 1;
  best = std::min(best, Integer(ipow(Q, k - 1) * (Q + 1) * ipow(p, s)));
  if (k >= 2) best = std::min(best, floor_sub_sqrt(ipow(Q, k) * (Q + 1), Q - 1, ipow(Q, k), pr));
  return best;
}

}  // namespace detail

inline TowerStepProfile gs_step_profile(const TowerId& t, unsigned k, unsigned s) {
  if (!t.is_gs()) throw InvalidStep("not a Garcia-Stichtenoth family");
  const auto& q = t.tower;
  if (k < 1 || s > q.r) throw InvalidStep("need k >= 1 and 0 <= s <= r");
  const Integer Q = q.q, p = q.p;

  TowerStepProfile out;
  out.tower = t;
  out.k = k;
  out.s = s;
  out.index = (k - 1) * q.r + s;
  out.degree_set = t.degree_set();
  out.genus_exact = detail::gs_exact_genus(t, k, s);
  out.genus_lower = detail::gs_genus_lower(t, k, s);
  out.genus_upper = detail::gs_genus_upper(t, k, s);
  const Integer ps = ipow(p, s);
  out.weighted_places_lower = (Q * Q - 1) * ipow(Q, k - 1) * ps;
  if (t.family == TowerFamily::gs_binary)
    out.D = 3 * ps * ipow(Q, k - 1);  // (3/2) p^(s+1) q^(k-1) with p = 2
  else if (t.family == TowerFamily::gs_base && q.q == 4)
    out.D = (p - 1) * ps * ipow(Q, k - 1);  // the F_4 argument uses the smaller budget
  else
    out.D = (p - 1) * ps * ipow(Q, k);
  out.n0_lower = Rational(out.weighted_places_lower - out.genus_upper - alpha(t.target), 2).floor();

  // (k, r) is (k+1, 0); the next step of the linear order follows it
  const unsigned ck = s == q.r ? k + 1 : k;
  const unsigned cs = s == q.r ? 0 : s;
  const unsigned tk = cs + 1 < q.r ? ck : ck + 1;
  const unsigned ts = cs + 1 < q.r ? cs + 1 : 0;
  const Integer hurwitz = (p - 1) * (out.genus_lower - 1);
  const Integer sandwich = detail::gs_genus_lower(t, tk, ts) - out.genus_upper;
  out.delta_lower = std::max(hurwitz, sandwich);
  return out;
}

inline TowerStepProfile kummer_step_profile(const TowerId& t, unsigned k) {
  if (t.is_gs()) throw InvalidStep("not a Kummer family");
  const Integer two = 2, p = t.tower.p;
  TowerStepProfile out;
  out.tower = t;
  out.k = k;
  out.index = k;
  out.degree_set = t.degree_set();
  out.genus_exact = kummer_genus(k);
  out.genus_lower = out.genus_upper = *out.genus_exact;
  out.weighted_places_lower = ipow(two, k + 1) * (p - 1);
  out.D = ipow(two, k + 1) - ipow(two, (k + 2) / 2);
  out.n0_lower = Rational(out.weighted_places_lower - out.genus_upper - alpha(t.target), 2).floor();
  out.delta_lower = kummer_genus(k + 1) - *out.genus_exact;
  return out;
}

/// Profile at a position of the tower's linear order (GS: (k, s) with s < r).
inline TowerStepProfile step_profile(const TowerId& t, unsigned index) {
  if (!t.is_gs()) return kummer_step_profile(t, index);
  const unsigned r = t.tower.r;
  return gs_step_profile(t, 1 + index / r, index % r);
}

inline bool satisfies_condition2(const TowerStepProfile& prof, std::uint64_t n) {
  return prof.weighted_places_lower >= Integer(2) * n + prof.genus_upper + alpha(prof.tower.target);
}

inline constexpr unsigned kStepCap = 4096;

/// First step certifying (2), genus >= 2 and a place of degree n, without the
/// family threshold.
inline std::optional<TowerStepProfile> first_good_step(const TowerId& t, std::uint64_t n,
                                                       unsigned step_cap = kStepCap) {
  for (unsigned idx = 0; idx < step_cap; ++idx) {
    auto prof = step_profile(t, idx);
    // genus_lower never decreases along the order, so no later step can carry the place
    if (!place_witness(t.target.q, prof.genus_lower, n)) return std::nullopt;
    if (!satisfies_condition2(prof, n) || prof.genus_lower < 2) continue;
    if (place_witness(t.target.q, prof.genus_upper, n)) return prof;
  }
  return std::nullopt;
}

/// The step-existence lemma of the family, searched in the tower's linear order.
inline TowerStepProfile find_step(const TowerId& t, std::uint64_t n, unsigned step_cap = kStepCap) {
  if (n < tower_threshold(t))
    throw BelowThreshold(t.name() + " needs n >= " + std::to_string(tower_threshold(t)));
  if (auto prof = first_good_step(t, n, step_cap)) return *prof;
  throw StepNotFound("no step of " + t.name() + " within the level cap");
}

}  // namespace murank
