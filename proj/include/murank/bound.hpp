#pragma once

#include "murank/bilinear.hpp"
#include "murank/constants.hpp"
#include "murank/errors.hpp"
#include "murank/rational.hpp"
#include "murank/tower.hpp"

#include <nlohmann/json.hpp>

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace murank {

namespace route_kind {
inline constexpr const char* exact_small_n = "exact-small-n";
inline constexpr const char* shokrollahi = "shokrollahi-sym-reference";
inline constexpr const char* known_value = "known-value";
inline constexpr const char* closed_form = "closed-form-theorem";
inline constexpr const char* phi = "phi-on-tower";
inline constexpr const char* general_cc = "general-cc-direct";
}  // namespace route_kind

/// One inequality instance, lhs `relation` rhs, with both sides spelled out.
struct Premise {
  std::string name;
  Rational lhs;
  Rational rhs;
  std::string relation;  ///< one of <=, <, >=, >, ==

  bool holds() const {
    if (relation == "<=") return lhs <= rhs;
    if (relation == "<") return lhs < rhs;
    if (relation == ">=") return lhs >= rhs;
    if (relation == ">") return lhs > rhs;
    if (relation == "==") return lhs == rhs;
    return false;
  }
  friend bool operator==(const Premise&, const Premise&) = default;
};

struct BoundRoute {
  std::string kind;
  unsigned d = 1;
  std::optional<TowerId> tower;
  std::string variant;  ///< closed-form name, or the phi branch
  std::optional<unsigned> step;
  std::map<std::string, Rational> parameters;
  std::string note;

  friend bool operator==(const BoundRoute&, const BoundRoute&) = default;
};

struct BoundCertificate {
  PrimePower q;
  std::uint64_t n = 1;
  Rational value;
  Integer value_floor;
  BoundRoute route;
  std::vector<Premise> premises;
  std::vector<TableEntry> table_entries_used;
};

/// Constants of the explicit bound for places of degree dividing d.
struct PropParams {
  unsigned d = 1;
  Rational mu_sym;
  Rational slope;  ///< 2 mu_sym_q(d) / d
  Rational gamma;
  int alpha = 0;
  Rational kappa;   ///< (mu_sym_q(d)/d)(alpha_q + d - 1)
  Rational lambda;  ///< d gamma / mu_sym_q(d)
  std::vector<TableEntry> used;
};

/// Proper divisors j of d must satisfy j < (q+1+eps(q))/2 (q >= 4) or j <= q/2+1.
inline std::vector<Premise> divisor_premises(const PrimePower& q, unsigned d) {
  std::vector<Premise> out;
  for (unsigned j = 1; j < d; ++j) {
    if (d % j) continue;
    const std::string name = "divisor condition for j=" + std::to_string(j);
    if (q.q >= 4)
      out.push_back({name + ": 2j < q+1+eps(q)", Rational(2 * j), Rational(q.q + 1 + epsilon(q)), "<"});
    else
      out.push_back({name + ": 2j <= q+2", Rational(2 * j), Rational(q.q + 2), "<="});
  }
  return out;
}

inline PropParams prop_params(const PrimePower& q, unsigned d, const KnownValues& table) {
  for (const auto& p : divisor_premises(q, d))
    if (!p.holds()) throw DivisorConditionViolated(p.name + " fails for q=" + std::to_string(q.q));
  const auto sym = table.mu_sym_exact(q, d);
  if (!sym) throw MissingTableEntry("no exact value for " + measure_key(Measure::mu_sym, q.q, d, 1));
  const auto g = gamma_with_entries(q, d, table);
  PropParams out;
  out.d = d;
  out.mu_sym = Rational(sym->value);
  out.slope = 2 * out.mu_sym / Rational(d);
  out.gamma = g.value;
  out.alpha = alpha(q);
  out.kappa = out.mu_sym / Rational(d) * Rational(out.alpha + static_cast<int>(d) - 1);
  out.lambda = Rational(d) * out.gamma / out.mu_sym;
  out.used = g.used;
  return out;
}

/// (2 mu_sym/d)(n + g/2) + gamma * weighted_l + kappa.
inline Rational explicit_prop_bound(const PrimePower& q, unsigned d, std::uint64_t n, const Integer& g_upper,
                                    const Integer& weighted_l, const KnownValues& table) {
  const auto P = prop_params(q, d, table);
  return P.slope * (Rational(n) + Rational(g_upper, 2)) + P.gamma * Rational(weighted_l) + P.kappa;
}

inline std::map<std::string, Rational> route_parameters(const PropParams& P) {
  return {{"mu_sym", P.mu_sym}, {"slope", P.slope}, {"gamma", P.gamma},
          {"alpha", Rational(P.alpha)}, {"kappa", P.kappa}, {"lambda", P.lambda}};
}

/// Route skeleton carrying the constants phi_eval needs.
inline BoundRoute phi_route(const PrimePower& q, unsigned d, const KnownValues& table) {
  BoundRoute r;
  r.kind = route_kind::phi;
  r.d = d;
  r.parameters = route_parameters(prop_params(q, d, table));
  return r;
}

/// Multiplicity piece of Phi on a step: places of the step used twice to cover the gap to x.
inline Rational phi_multiplicity_piece(const BoundRoute& route, const TowerStepProfile& prof, const Rational& x) {
  const auto& P = route.parameters;
  const Rational extra = 2 * (x - Rational(prof.n0_lower)) + Rational(route.d) - 1;
  return P.at("slope") * (x + Rational(prof.genus_upper, 2)) + P.at("gamma") * extra + P.at("kappa");
}

/// Next-step piece of Phi: every place of the next step once.
inline Rational phi_next_piece(const BoundRoute& route, const Integer& next_genus_upper, const Rational& x) {
  const auto& P = route.parameters;
  return P.at("slope") * (x + Rational(next_genus_upper, 2)) + P.at("kappa");
}

inline Rational phi_eval(const BoundRoute& route, const TowerStepProfile& prof, const Integer& next_genus_upper,
                         const Rational& x) {
  if (x < Rational(prof.n0_lower)) throw OutOfDomain("Phi is defined from n0 of the step onwards");
  const Rational extra = 2 * (x - Rational(prof.n0_lower)) + Rational(route.d) - 1;
  if (extra < Rational(prof.D)) return phi_multiplicity_piece(route, prof, x);
  return phi_next_piece(route, next_genus_upper, x);
}

/// The linear bounds of the uniform theorems.
struct ClosedForm {
  std::string name;
  Rational slope;
  Rational intercept;
  std::vector<Premise> shape;
};

inline std::vector<ClosedForm> closed_forms(const PrimePower& q) {
  std::vector<ClosedForm> out;
  const Rational Qr(q.q), p(q.p);
  auto fixed = [&](std::uint64_t v, Rational slope, Rational intercept) {
    if (q.q == v)
      out.push_back({"q" + std::to_string(v), slope, intercept, {{"q = " + std::to_string(v), Qr, Rational(v), "=="}}});
  };
  fixed(2, Rational(189, 22), Rational(18));
  fixed(3, Rational(6), Rational(0));
  fixed(4, Rational(87, 19), Rational(0));
  fixed(5, Rational(9, 2), Rational(0));
  if (q.is_square() && q.square_root().q >= 4) {
    const Rational Q(q.square_root().q);
    const Rational slope = 2 * (1 + p / (Q - 2 + (p - 1) * Q / (Q + 1)));
    out.push_back({"a", slope, Rational(-1),
                   {{"q is the square of Q", Q * Q, Qr, "=="}, {"Q >= 4", Q, Rational(4), ">="}}});
  }
  if (q.r == 2 && q.p >= 3) {
    out.push_back({"b", 2 * (1 + Rational(2) / (p - 1)), Rational(-1),
                   {{"q = p^2", p * p, Qr, "=="}, {"p >= 3", p, Rational(3), ">="}}});
  }
  if (q.q > 5) {
    const Rational slope = 3 * (1 + p / (Qr - 2 + (p - 1) * Qr / (Qr + 1)));
    out.push_back({"c", slope, Rational(0), {{"q > 5", Qr, Rational(5), ">"}}});
  }
  if (q.r == 1 && q.p > 5) {
    out.push_back({"d", 3 * (1 + Rational(2) / (p - 1)), Rational(0),
                   {{"q = p", p, Qr, "=="}, {"p > 5", p, Rational(5), ">"}}});
  }
  return out;
}

/// Minimum over the applicable uniform theorems.
inline std::variant<Rational, Inapplicable> closed_form_bound(const PrimePower& q, std::uint64_t n) {
  if (n < 2) return Inapplicable{"the uniform theorems need n >= 2"};
  std::optional<Rational> best;
  for (const auto& f : closed_forms(q)) {
    const Rational v = f.slope * Rational(n) + f.intercept;
    if (!best || v < *best) best = v;
  }
  if (!best) return Inapplicable{"no uniform theorem covers q=" + std::to_string(q.q)};
  return *best;
}

/// Which route to derive: kind plus the closed-form name or the tower.
struct RouteRequest {
  std::string kind;
  std::string variant;
  std::optional<TowerId> tower;
};

namespace detail {

inline BoundCertificate make_cert(const PrimePower& q, std::uint64_t n, Rational value, BoundRoute route,
                                  std::vector<Premise> premises, std::vector<TableEntry> entries) {
  BoundCertificate c;
  c.q = q;
  c.n = n;
  c.value = std::move(value);
  c.value_floor = c.value.floor();
  c.route = std::move(route);
  c.premises = std::move(premises);
  c.table_entries_used = std::move(entries);
  return c;
}

/// a <= sqrt(x) - sqrt(y) as two polynomial inequalities: a^2 + y <= x and
/// 4 a^2 y <= (x - a^2 - y)^2.
inline void place_premises(std::vector<Premise>& out, const std::string& label, std::uint64_t Q, const Integer& g,
                           std::uint64_t n, unsigned m) {
  const Integer a = 2 * g + 1;
  const Integer x = ipow(Integer(Q), m), y = ipow(Integer(Q), m - 1);
  const Integer gap = x - a * a - y;
  out.push_back({label + " place: witness degree m <= n", Rational(m), Rational(n), "<="});
  out.push_back({label + " place: (2g+1)^2 + Q^(m-1) <= Q^m", Rational(a * a + y), Rational(x), "<="});
  out.push_back({label + " place: 4(2g+1)^2 Q^(m-1) <= (Q^m - (2g+1)^2 - Q^(m-1))^2", Rational(4 * a * a * y),
                 Rational(gap * gap), "<="});
}

inline void condition2_premise(std::vector<Premise>& out, const std::string& label, const TowerStepProfile& prof,
                               std::uint64_t n) {
  out.push_back({label + " condition (2): W >= 2n + g + alpha", Rational(prof.weighted_places_lower),
                 Rational(Integer(2) * n + prof.genus_upper + alpha(prof.tower.target)), ">="});
}

inline void genus_premise(std::vector<Premise>& out, const std::string& label, const TowerStepProfile& prof) {
  out.push_back({label + " genus >= 2", Rational(prof.genus_lower), Rational(2), ">="});
}

inline std::string step_label(const TowerStepProfile& prof) {
  std::string s = "step k=" + std::to_string(prof.k);
  if (prof.s) s += ",s=" + std::to_string(*prof.s);
  return s;
}

inline constexpr const char* kPhiReading =
    "Phi domain read as: the next step is the first one meeting condition (2) with genus >= 2 and a certified "
    "degree-n place; the multiplicity branch runs on the step just before it";

inline std::optional<BoundCertificate> derive_tower(const PrimePower& q, std::uint64_t n, const TowerId& t,
                                                    bool phi, const KnownValues& table) {
  if (!(t.target == q)) return std::nullopt;
  if (phi && n < tower_threshold(t)) return std::nullopt;
  const auto next = first_good_step(t, n);
  if (!next) return std::nullopt;
  const auto P = prop_params(q, t.d(), table);

  BoundRoute route;
  route.kind = phi ? route_kind::phi : route_kind::general_cc;
  route.d = t.d();
  route.tower = t;
  route.step = next->index;
  route.parameters = route_parameters(P);

  std::vector<Premise> prem = divisor_premises(q, t.d());
  if (phi)
    prem.push_back({"family threshold n >= N", Rational(n), Rational(tower_threshold(t)), ">="});
  const auto nl = step_label(*next);
  condition2_premise(prem, nl, *next, n);
  genus_premise(prem, nl, *next);
  place_premises(prem, nl, q.q, next->genus_upper, n, *place_witness(q.q, next->genus_upper, n));

  const Rational x(n);
  Rational value = phi_next_piece(route, next->genus_upper, x);
  route.variant = "next-step";

  if (phi && next->index > 0) {
    const auto prev = step_profile(t, next->index - 1);
    const auto pl = step_label(prev);
    const Integer extra = 2 * (Integer(n) - prev.n0_lower) + t.d() - 1;
    const auto witness = place_witness(q.q, prev.genus_upper, n);
    const bool usable = prev.genus_lower >= 2 && witness && extra < prev.D &&
                        Rational(prev.delta_lower) >= P.lambda * Rational(prev.D) &&
                        prev.weighted_places_lower >= prev.D && !satisfies_condition2(prev, n);
    if (usable) {
      route.variant = "multiplicity";
      value = phi_multiplicity_piece(route, prev, x);
      prem.push_back({pl + " (B) W < 2n + g + alpha", Rational(prev.weighted_places_lower),
                      Rational(Integer(2) * n + prev.genus_upper + alpha(q)), "<"});
      genus_premise(prem, pl, prev);
      prem.push_back({pl + " (D) delta g >= lambda D", Rational(prev.delta_lower), P.lambda * Rational(prev.D), ">="});
      prem.push_back({pl + " (E) W >= D", Rational(prev.weighted_places_lower), Rational(prev.D), ">="});
      prem.push_back({pl + " n0: W >= 2 n0 + g + alpha", Rational(prev.weighted_places_lower),
                      Rational(2 * prev.n0_lower + prev.genus_upper + alpha(q)), ">="});
      prem.push_back({pl + " branch: 2(n - n0) + d - 1 < D", Rational(extra), Rational(prev.D), "<"});
      place_premises(prem, pl, q.q, prev.genus_upper, n, *witness);
      route.parameters["n0"] = Rational(prev.n0_lower);
      route.parameters["genus_upper"] = Rational(prev.genus_upper);
      route.parameters["D"] = Rational(prev.D);
    }
  }
  if (route.variant == "next-step") route.parameters["genus_upper"] = Rational(next->genus_upper);
  if (phi) route.note = kPhiReading;
  return make_cert(q, n, value, route, prem, P.used);
}

}  // namespace detail

/// Derives the certificate for one route from scratch, or nothing when the route does not apply.
inline std::optional<BoundCertificate> derive_route(const PrimePower& q, std::uint64_t n, const RouteRequest& req,
                                                    const KnownValues& table) {
  if (n == 0) throw RangeError("n must be positive");
  const Rational N(n);
  if (req.kind == route_kind::exact_small_n) {
    if (2 * n - 2 > q.q) return std::nullopt;
    BoundRoute r{req.kind, 1, std::nullopt, "", std::nullopt, {}, ""};
    std::vector<TableEntry> used;
    if (auto e = table.mu_sym_exact(q, static_cast<unsigned>(n))) used.push_back(*e);
    return detail::make_cert(q, n, Rational(2 * n - 1), r, {{"interpolation range: 2n-2 <= q", N * 2 - 2, Rational(q.q), "<="}},
                             used);
  }
  if (req.kind == route_kind::shokrollahi) {
    if (!KnownValues::in_shokrollahi_range(q, n)) return std::nullopt;
    BoundRoute r{req.kind, 1, std::nullopt, "", std::nullopt, {}, "mu <= mu_sym; the elliptic-curve value is imported"};
    TableEntry e{measure_key(Measure::mu_sym, q.q, static_cast<unsigned>(n), 1), Integer(2 * n), kShokrollahiProvenance};
    return detail::make_cert(q, n, Rational(2 * n), r,
                             {{"q + 2 < 2n", Rational(q.q + 2), 2 * N, "<"},
                              {"2n < q + 1 + eps(q)", 2 * N, Rational(q.q + 1 + epsilon(q)), "<"}},
                             {e});
  }
  if (req.kind == route_kind::known_value) {
    if (n > UINT32_MAX) return std::nullopt;
    const auto e = table.mu_upper_recorded(q, static_cast<unsigned>(n), 1);
    if (!e) return std::nullopt;
    BoundRoute r{req.kind, 1, std::nullopt, "", std::nullopt, {}, ""};
    return detail::make_cert(q, n, Rational(e->value), r, {}, {*e});
  }
  if (req.kind == route_kind::closed_form) {
    if (n < 2) return std::nullopt;
    for (const auto& f : closed_forms(q)) {
      if (f.name != req.variant) continue;
      BoundRoute r{req.kind, 1, std::nullopt, f.name, std::nullopt, {{"slope", f.slope}, {"intercept", f.intercept}}, ""};
      std::vector<Premise> prem{{"n >= 2", N, Rational(2), ">="}};
      prem.insert(prem.end(), f.shape.begin(), f.shape.end());
      std::vector<TableEntry> used;
      // below the tower range these two theorems rest on tabulated values
      if ((f.name == "q3" && n <= 10) || (f.name == "q4" && n >= 5 && n <= 9))
        if (auto e = table.mu_upper_recorded(q, static_cast<unsigned>(n), 1)) used.push_back(*e);
      return detail::make_cert(q, n, f.slope * N + f.intercept, r, prem, used);
    }
    return std::nullopt;
  }
  if (req.kind == route_kind::phi || req.kind == route_kind::general_cc) {
    if (!req.tower) return std::nullopt;
    return detail::derive_tower(q, n, *req.tower, req.kind == route_kind::phi, table);
  }
  return std::nullopt;
}

inline std::vector<RouteRequest> candidate_routes(const PrimePower& q) {
  std::vector<RouteRequest> out{{route_kind::exact_small_n, "", std::nullopt},
                                {route_kind::shokrollahi, "", std::nullopt},
                                {route_kind::known_value, "", std::nullopt}};
  for (const auto& f : closed_forms(q)) out.push_back({route_kind::closed_form, f.name, std::nullopt});
  for (const auto& t : TowerId::valid_for(q)) {
    out.push_back({route_kind::general_cc, "", t});
    out.push_back({route_kind::phi, "", t});
  }
  return out;
}

/// Least certified upper bound on mu_q(n) over all routes; ties go to fewer premises.
inline BoundCertificate best_bound(const PrimePower& q, std::uint64_t n,
                                   const KnownValues& table = KnownValues::builtin()) {
  if (n == 0) throw RangeError("n must be positive");
  std::optional<BoundCertificate> best;
  for (const auto& req : candidate_routes(q)) {
    std::optional<BoundCertificate> c;
    try {
      c = derive_route(q, n, req, table);
    } catch (const MissingTableEntry&) {
    } catch (const DivisorConditionViolated&) {
    }
    if (!c) continue;
    if (!best || c->value < best->value ||
        (c->value == best->value && c->premises.size() < best->premises.size()))
      best = std::move(c);
  }
  if (!best) throw MissingTableEntry("no route applies to q=" + std::to_string(q.q) + " n=" + std::to_string(n));
  return *best;
}

/// Re-derives the certificate from (q, n, route) and compares every field; all premises must hold.
inline bool recheck(const BoundCertificate& cert, const KnownValues& table = KnownValues::builtin()) {
  try {
    for (const auto& p : cert.premises)
      if (!p.holds()) return false;
    if (cert.value_floor != cert.value.floor()) return false;
    const auto again = derive_route(cert.q, cert.n, {cert.route.kind, cert.route.variant, cert.route.tower}, table);
    if (!again) return false;
    return again->value == cert.value && again->value_floor == cert.value_floor && again->route == cert.route &&
           again->premises == cert.premises && again->table_entries_used == cert.table_entries_used;
  } catch (const std::exception&) {
    return false;
  }
}

inline std::string fraction_str(const Rational& r) { return r.num().str() + "/" + r.den().str(); }

inline nlohmann::json to_json(const BoundCertificate& c) {
  nlohmann::json params = nlohmann::json::object();
  for (const auto& [k, v] : c.route.parameters) params[k] = fraction_str(v);
  nlohmann::json route = {{"kind", c.route.kind},
                          {"d", c.route.d},
                          {"tower", c.route.tower ? nlohmann::json(c.route.tower->name()) : nlohmann::json()},
                          {"variant", c.route.variant},
                          {"step", c.route.step ? nlohmann::json(*c.route.step) : nlohmann::json()},
                          {"parameters", params},
                          {"note", c.route.note}};
  nlohmann::json premises = nlohmann::json::array();
  for (const auto& p : c.premises)
    premises.push_back({{"name", p.name}, {"lhs", fraction_str(p.lhs)}, {"rhs", fraction_str(p.rhs)}, {"relation", p.relation}});
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& e : c.table_entries_used)
    entries.push_back({{"key", e.key}, {"value", e.value.str()}, {"provenance", e.provenance}});
  return {{"q", c.q.q},
          {"n", c.n},
          {"value", fraction_str(c.value)},
          {"value_floor", c.value_floor.str()},
          {"route", route},
          {"premises", premises},
          {"table_entries_used", entries}};
}

inline BoundCertificate certificate_from_json(const nlohmann::json& j) {
  try {
    BoundCertificate c;
    c.q = PrimePower::from_q(j.at("q").get<std::uint64_t>());
    c.n = j.at("n").get<std::uint64_t>();
    c.value = Rational::parse(j.at("value").get<std::string>());
    c.value_floor = Integer(j.at("value_floor").get<std::string>());
    const auto& r = j.at("route");
    c.route.kind = r.at("kind").get<std::string>();
    c.route.d = r.at("d").get<unsigned>();
    if (!r.at("tower").is_null()) {
      const auto name = r.at("tower").get<std::string>();
      c.route.tower = TowerId::make(family_from_name(name.substr(0, name.find('/'))), c.q);
      if (c.route.tower->name() != name) throw TableError("tower '" + name + "' does not match q");
    }
    c.route.variant = r.at("variant").get<std::string>();
    if (!r.at("step").is_null()) c.route.step = r.at("step").get<unsigned>();
    for (const auto& [k, v] : r.at("parameters").items()) c.route.parameters[k] = Rational::parse(v.get<std::string>());
    c.route.note = r.at("note").get<std::string>();
    for (const auto& p : j.at("premises"))
      c.premises.push_back({p.at("name").get<std::string>(), Rational::parse(p.at("lhs").get<std::string>()),
                            Rational::parse(p.at("rhs").get<std::string>()), p.at("relation").get<std::string>()});
    for (const auto& e : j.at("table_entries_used"))
      c.table_entries_used.push_back(
          {e.at("key").get<std::string>(), Integer(e.at("value").get<std::string>()), e.at("provenance").get<std::string>()});
    return c;
  } catch (const Error&) {
    throw;
  } catch (const std::exception& ex) {
    throw TableError(std::string("malformed certificate: ") + ex.what());
  }
}

}  // namespace murank
