#pragma once

#include "murank/bound.hpp"
#include "murank/constants.hpp"
#include "murank/errors.hpp"
#include "murank/rational.hpp"

#include <boost/multiprecision/integer.hpp>

#include <optional>
#include <string>

namespace murank {

struct MuUsed {
  unsigned t = 0;
  Integer value;
  std::string provenance;
};

/// Upper bound on M_q = limsup mu_q(n)/n.
struct AsymptoticBound {
  PrimePower q;
  Rational value;
  std::string route;  ///< "uniform-limit" or "shimura(t)"
  std::optional<MuUsed> mu_qt_used;
};

inline constexpr const char* kShimuraNote =
    "Shimura-curve family not constructed; the theorem is applied as its closed form";

/// Slope of the best applicable uniform theorem.
inline AsymptoticBound uniform_asymptotic(const PrimePower& q) {
  std::optional<Rational> best;
  for (const auto& f : closed_forms(q))
    if (!best || f.slope < *best) best = f.slope;
  if (!best) throw MissingTableEntry("no uniform theorem covers q=" + std::to_string(q.q));
  return {q, *best, "uniform-limit", std::nullopt};
}

namespace detail {

/// sqrt(q^t) when q^t is a square >= 9.
inline Integer shimura_root(const PrimePower& q, unsigned t) {
  if (t == 0) throw NotASquare("t must be positive");
  const Integer qt = ipow(Integer(q.q), t);
  const Integer root = boost::multiprecision::sqrt(qt);
  if (root * root != qt) throw NotASquare("q^t = " + qt.str() + " is not a square");
  if (qt < 9) throw NotASquare("q^t = " + qt.str() + " is below 9");
  return root;
}

inline Rational shimura_value(const Integer& root, unsigned t, const Integer& mu) {
  return Rational(2 * mu, t) * (1 + Rational(1) / Rational(root - 2));
}

}  // namespace detail

/// (2 mu_q(t)/t)(1 + 1/(q^(t/2) - 2)) with mu_q(t) from the table.
inline AsymptoticBound shimura_asymptotic(const PrimePower& q, unsigned t,
                                          const KnownValues& table = KnownValues::builtin()) {
  const Integer root = detail::shimura_root(q, t);
  const auto e = table.mu_upper(q, t);
  if (!e) throw MissingTableEntry("no upper bound for mu_" + std::to_string(q.q) + "(" + std::to_string(t) + ")");
  return {q, detail::shimura_value(root, t, e->value), "shimura(" + std::to_string(t) + ")",
          MuUsed{t, e->value, e->provenance + "; " + kShimuraNote}};
}

/// Same formula with an explicit mu_q(t) upper bound.
inline AsymptoticBound shimura_asymptotic_with(const PrimePower& q, unsigned t, const Integer& mu,
                                               const std::string& provenance) {
  const Integer root = detail::shimura_root(q, t);
  return {q, detail::shimura_value(root, t, mu), "shimura(" + std::to_string(t) + ")",
          MuUsed{t, mu, provenance + "; " + kShimuraNote}};
}

/// Minimum of the uniform limit and the Shimura bound for t <= t_max; mu_q(t) is the
/// smaller of the table value and the floor of best_bound(q, t).
inline AsymptoticBound best_asymptotic(const PrimePower& q, unsigned t_max,
                                       const KnownValues& table = KnownValues::builtin()) {
  if (t_max < 1) throw RangeError("t_max must be at least 1");
  auto best = uniform_asymptotic(q);
  for (unsigned t = 1; t <= t_max; ++t) {
    try {
      detail::shimura_root(q, t);
    } catch (const NotASquare&) {
      continue;
    }
    std::optional<Integer> mu;
    std::string prov;
    if (auto e = table.mu_upper(q, t)) {
      mu = e->value;
      prov = "table: " + e->provenance;
    }
    const auto cert = best_bound(q, t, table);
    if (!mu || cert.value_floor < *mu) {
      mu = cert.value_floor;
      prov = std::string("best_bound floor via ") + cert.route.kind;
    }
    const auto cand = shimura_asymptotic_with(q, t, *mu, prov);
    if (cand.value < best.value) best = cand;
  }
  return best;
}

}  // namespace murank
