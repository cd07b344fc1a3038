#pragma once

#include "murank/constants.hpp"
#include "murank/rational.hpp"
#include "murank/tower.hpp"

#include <functional>
#include <ostream>
#include <string>
#include <vector>

namespace murank {

struct LemmaResult {
  std::string name;
  std::uint64_t checked = 0;
  std::uint64_t violations = 0;
  std::string first_violation;

  bool passed() const { return violations == 0; }
};

/// Genus functions the suite checks; replaceable so the harness itself can be tested.
struct SelfcheckHooks {
  std::function<Integer(const PrimePower&, unsigned)> gs_genus = [](const PrimePower& q, unsigned k) {
    return murank::gs_genus(q, k);
  };
  std::function<Integer(unsigned)> kummer_genus = [](unsigned k) { return murank::kummer_genus(k); };
};

struct SelfcheckOptions {
  unsigned k_max = 8;
  unsigned kummer_k_max = 8;
  std::vector<std::uint64_t> gs_q = {4, 5, 7, 8, 9, 16, 25};
  std::vector<std::uint64_t> kummer_p = {3, 5, 7, 11, 13};
  unsigned minimality_span = 60;
  SelfcheckHooks hooks;
};

namespace detail {

class LemmaLog {
public:
  explicit LemmaLog(std::string name) { r_.name = std::move(name); }
  void check(bool ok, const std::string& where) {
    ++r_.checked;
    if (ok) return;
    if (r_.violations++ == 0) r_.first_violation = where;
  }
  LemmaResult result() const { return r_; }

private:
  LemmaResult r_;
};

/// a >= sqrt(x) for integers, exactly.
inline bool ge_sqrt(const Integer& a, const Integer& x) { return a >= 0 && a * a >= x; }

inline std::string at(const std::string& what, std::uint64_t q, unsigned k, std::optional<unsigned> s = {}) {
  std::string out = what + " q=" + std::to_string(q) + " k=" + std::to_string(k);
  if (s) out += " s=" + std::to_string(*s);
  return out;
}

}  // namespace detail

/// Every numeric lemma about the towers, evaluated on exact formulas and bounds.
inline std::vector<LemmaResult> run_selfcheck(const SelfcheckOptions& opt = {}) {
  using detail::at;
  const auto& hooks = opt.hooks;
  std::vector<LemmaResult> out;

  // Lemma on the GS genus, parts i and ii.
  {
    detail::LemmaLog growth("gs genus growth: g_k > q^k for k >= 4");
    detail::LemmaLog upper("gs genus upper bound: g_k <= q^(k-1)(q+1) - sqrt(q) q^(k/2)");
    for (auto qv : opt.gs_q) {
      const auto q = PrimePower::from_q(qv);
      const Integer Q = qv;
      for (unsigned k = 1; k <= opt.k_max; ++k) {
        const Integer g = hooks.gs_genus(q, k);
        if (k >= 4) growth.check(g > ipow(Q, k), at("growth", qv, k));
        upper.check(detail::ge_sqrt(ipow(Q, k - 1) * (Q + 1) - g, ipow(Q, k + 1)), at("upper", qv, k));
      }
    }
    detail::LemmaLog binary("binary tower genus growth: g_k > p q^(k-1) for k >= 3");
    const auto four = PrimePower::make(2, 2);
    for (unsigned k = 3; k <= opt.k_max; ++k)
      binary.check(hooks.gs_genus(four, k) > 2 * ipow(Integer(4), k - 1), at("binary", 4, k));
    out.push_back(growth.result());
    out.push_back(upper.result());
    out.push_back(binary.result());
  }

  // Genus bounds of intermediate steps (parts iii and iv) and the sandwich.
  {
    detail::LemmaLog iii("intermediate genus: g_(k,s) <= q^(k-1)(q+1)p^s");
    detail::LemmaLog iv("intermediate genus: g_(k,s) <= (q^k(q+1) - q^(k/2)(q-1))/p^(r-s) for k >= 2");
    detail::LemmaLog sandwich("subfield sandwich: (g_k-1)p^s+1 <= g_(k,s) <= g_(k+1)/p^(r-s)+1");
    detail::LemmaLog profile("step profile consistency: lower <= exact <= upper, places cover 2 n0 + g + alpha");
    for (auto qv : opt.gs_q) {
      const auto q = PrimePower::from_q(qv);
      std::vector<TowerId> towers;
      for (const auto& t : TowerId::valid_for(PrimePower::make(q.p, 2 * q.r)))
        if (t.family == TowerFamily::gs_quadratic) towers.push_back(t);
      if (qv > 5 || qv == 4) towers.push_back(TowerId::make(TowerFamily::gs_base, q));
      if (qv == 4) towers.push_back(TowerId::make(TowerFamily::gs_binary, PrimePower::make(2, 1)));
      const Integer Q = qv, p = q.p;
      for (const auto& t : towers)
        for (unsigned k = 1; k <= opt.k_max; ++k)
          for (unsigned s = 0; s <= q.r; ++s) {
            const auto prof = gs_step_profile(t, k, s);
            const auto where = at(t.name(), qv, k, s);
            iii.check(prof.genus_upper <= ipow(Q, k - 1) * (Q + 1) * ipow(p, s), where);
            if (k >= 2) {
              // g * p^(r-s) <= q^k(q+1) - q^(k/2)(q-1), with q^(k/2) = sqrt(q^k)
              const Integer room = ipow(Q, k) * (Q + 1) - prof.genus_upper * ipow(p, q.r - s);
              iv.check(room >= 0 && room * room >= (Q - 1) * (Q - 1) * ipow(Q, k), where);
            }
            const Integer lo = (hooks.gs_genus(q, k) - 1) * ipow(p, s) + 1;
            const Rational hi = Rational(hooks.gs_genus(q, k + 1), ipow(p, q.r - s)) + 1;
            sandwich.check(Rational(lo) <= Rational(prof.genus_lower) && Rational(prof.genus_upper) <= hi, where);
            bool ok = prof.genus_lower <= prof.genus_upper;
            if (prof.genus_exact) ok = ok && prof.genus_lower == *prof.genus_exact && *prof.genus_exact == prof.genus_upper;
            ok = ok && prof.weighted_places_lower >= 2 * prof.n0_lower + prof.genus_upper + alpha(t.target);
            profile.check(ok, where);
          }
    }
    out.push_back(iii.result());
    out.push_back(iv.result());
    out.push_back(sandwich.result());
    out.push_back(profile.result());
  }

  // Delta lemmas and n0 lemmas for the GS families.
  {
    detail::LemmaLog delta("gs delta lemma: g_(k,s+1) - g_(k,s) >= D_(k,s) for k >= 4");
    detail::LemmaLog places("gs places lemma: N_(k,s) >= D_(k,s)");
    detail::LemmaLog n0("gs n0 lemma: n0 >= (q+1)q^(k-1)p^s(q-2)/2 + 1/2");
    detail::LemmaLog binary_delta("binary tower delta lemma: Delta g >= lambda D with lambda = 2/3");
    detail::LemmaLog binary_n0("binary tower n0 lemma: n0 >= 5 p^s q^(k-1) - 5/2");
    for (auto qv : opt.gs_q) {
      const auto q = PrimePower::from_q(qv);
      const Integer Q = qv, p = q.p;
      std::vector<TowerId> towers{TowerId::make(TowerFamily::gs_quadratic, PrimePower::make(q.p, 2 * q.r))};
      if (qv > 5 || qv == 4) towers.push_back(TowerId::make(TowerFamily::gs_base, q));
      for (const auto& t : towers)
        for (unsigned k = 1; k <= opt.k_max; ++k)
          for (unsigned s = 0; s <= q.r; ++s) {
            const auto prof = gs_step_profile(t, k, s);
            const auto where = at(t.name(), qv, k, s);
            if (s < q.r) {
              if (k >= 4) delta.check(prof.delta_lower >= prof.D, where);
              places.check(prof.weighted_places_lower >= prof.D, where);
            }
            // stated for condition (2) with the constant -1
            if (alpha(t.target) == -1) {
              const Rational bound = Rational((Q + 1) * ipow(Q, k - 1) * ipow(p, s) * (Q - 2), 2) + Rational(1, 2);
              n0.check(prof.n0_lower >= bound.floor(), where);
            }
          }
    }
    if (std::find(opt.gs_q.begin(), opt.gs_q.end(), 4) != opt.gs_q.end()) {
      const auto t = TowerId::make(TowerFamily::gs_binary, PrimePower::make(2, 1));
      const Rational lambda(2, 3);
      for (unsigned k = 1; k <= opt.k_max; ++k)
        for (unsigned s = 0; s <= 2; ++s) {
          const auto prof = gs_step_profile(t, k, s);
          const auto where = at(t.name(), 4, k, s);
          if (s < 2) {
            binary_delta.check(Rational(prof.delta_lower) >= lambda * Rational(prof.D), where);
            places.check(prof.weighted_places_lower >= prof.D, where);
          }
          const Integer bound = 5 * ipow(Integer(2), s) * ipow(Integer(4), k - 1);
          binary_n0.check(prof.n0_lower >= bound - 3, where);  // floor(bound - 5/2)
        }
    }
    out.push_back(delta.result());
    out.push_back(places.result());
    out.push_back(n0.result());
    out.push_back(binary_delta.result());
    out.push_back(binary_n0.result());
  }

  // Kummer tower.
  {
    detail::LemmaLog genus_i("kummer genus bound: g_k <= 2^(k+1) - 2 sqrt(2^(k+1)) + 1");
    detail::LemmaLog genus_ii("kummer genus bound: g_k <= 2^(k+1)");
    detail::LemmaLog delta("kummer delta lemma: N_k >= Delta g_k >= D_k");
    detail::LemmaLog n0("kummer n0 lemma: n0 >= 2^k(p-2) + 2^((k+1)/2) (minus 3/2 for p = 3, 5 over F_p)");
    const Integer two = 2;
    for (unsigned k = 0; k <= opt.kummer_k_max; ++k) {
      const Integer g = hooks.kummer_genus(k);
      const Integer top = ipow(two, k + 1);
      genus_i.check(top + 1 - g >= 0 && (top + 1 - g) * (top + 1 - g) >= 4 * top, at("kummer", 0, k));
      genus_ii.check(g <= top, at("kummer", 0, k));
    }
    for (auto pv : opt.kummer_p) {
      const auto p = PrimePower::make(pv, 1);
      const std::vector<TowerId> towers{TowerId::make(TowerFamily::kummer_quadratic, PrimePower::make(pv, 2)),
                                        TowerId::make(TowerFamily::kummer_base, p)};
      for (const auto& t : towers)
        for (unsigned k = 0; k <= opt.kummer_k_max; ++k) {
          const auto prof = kummer_step_profile(t, k);
          const auto where = at(t.name(), pv, k);
          const Integer dg = hooks.kummer_genus(k + 1) - hooks.kummer_genus(k);
          delta.check(prof.weighted_places_lower >= dg && dg >= prof.D, where);
          // floor(2^k (p-2) + sqrt(2^(k+1))), or the same minus 3/2 when condition (2)
          // carries the constant +2
          Integer bound = ipow(two, k) * (pv - 2) + isqrt(ipow(two, k + 1));
          if (t.family == TowerFamily::kummer_base && pv <= 5)
            bound = Rational(ipow(two, k + 1) * (pv - 2) - 3 + isqrt(4 * ipow(two, k + 1)), 2).floor();
          n0.check(prof.n0_lower >= bound, where);
        }
    }
    out.push_back(genus_i.result());
    out.push_back(genus_ii.result());
    out.push_back(delta.result());
    out.push_back(n0.result());
  }

  // The step returned by find_step is the first one meeting condition (2) with genus >= 2.
  {
    detail::LemmaLog first("first good step: every earlier step fails condition (2) or has genus < 2");
    std::vector<TowerId> towers;
    auto add = [&](std::uint64_t qv) {
      for (const auto& t : TowerId::valid_for(PrimePower::from_q(qv))) towers.push_back(t);
    };
    if (opt.k_max > 0) {
      add(2);
      for (auto qv : opt.gs_q) {
        add(qv);
        add(qv * qv);
      }
      for (auto pv : opt.kummer_p) add(pv);
    }
    for (const auto& t : towers) {
      const auto n_min = tower_threshold(t);
      for (std::uint64_t n = n_min; n < n_min + opt.minimality_span; ++n) {
        const auto where = t.name() + " n=" + std::to_string(n);
        try {
          const auto prof = find_step(t, n);
          bool ok = satisfies_condition2(prof, n) && prof.genus_lower >= 2;
          for (unsigned i = 0; ok && i < prof.index; ++i) {
            const auto prev = step_profile(t, i);
            ok = !satisfies_condition2(prev, n) || prev.genus_lower < 2;
          }
          first.check(ok, where);
        } catch (const StepNotFound&) {
          first.check(false, where + " (no step)");
        }
      }
    }
    out.push_back(first.result());
  }
  return out;
}

inline bool all_passed(const std::vector<LemmaResult>& results) {
  return std::all_of(results.begin(), results.end(), [](const auto& r) { return r.passed(); });
}

inline void print_report(std::ostream& os, const std::vector<LemmaResult>& results) {
  for (const auto& r : results) {
    os << (r.passed() ? "PASS " : "FAIL ") << r.name << " (" << r.checked << " checks";
    if (!r.passed()) os << ", " << r.violations << " violations, first at " << r.first_violation;
    os << ")\n";
  }
}

/// CSV audit of every step profile the suite looks at.
inline void write_profile_csv(std::ostream& os, const SelfcheckOptions& opt = {}) {
  os << "tower,k,s,genus_lower,genus_upper,places_lower,D,n0_lower\n";
  auto row = [&](const TowerStepProfile& prof) {
    os << prof.tower.name() << ',' << prof.k << ',' << (prof.s ? std::to_string(*prof.s) : "") << ','
       << prof.genus_lower << ',' << prof.genus_upper << ',' << prof.weighted_places_lower << ',' << prof.D << ','
       << prof.n0_lower << '\n';
  };
  for (auto qv : opt.gs_q) {
    const auto q = PrimePower::from_q(qv);
    std::vector<TowerId> towers{TowerId::make(TowerFamily::gs_quadratic, PrimePower::make(q.p, 2 * q.r))};
    if (qv > 5 || qv == 4) towers.push_back(TowerId::make(TowerFamily::gs_base, q));
    if (qv == 4) towers.push_back(TowerId::make(TowerFamily::gs_binary, PrimePower::make(2, 1)));
    for (const auto& t : towers)
      for (unsigned k = 1; k <= opt.k_max; ++k)
        for (unsigned s = 0; s < q.r; ++s) row(gs_step_profile(t, k, s));
  }
  for (auto pv : opt.kummer_p)
    for (const auto& t : {TowerId::make(TowerFamily::kummer_quadratic, PrimePower::make(pv, 2)),
                          TowerId::make(TowerFamily::kummer_base, PrimePower::make(pv, 1))})
      for (unsigned k = 0; k <= opt.kummer_k_max; ++k) row(kummer_step_profile(t, k));
}

}  // namespace murank
