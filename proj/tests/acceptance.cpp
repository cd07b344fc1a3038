// Acceptance run: one PASS/FAIL line per criterion, with wall time against its budget.
#include "murank/murank.hpp"

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

using namespace murank;

namespace {

PrimePower pp(std::uint64_t q) { return PrimePower::from_q(q); }

struct Outcome {
  bool ok = true;
  std::ostringstream detail;
  void fail(const std::string& what) {
    if (ok) detail << what;
    ok = false;
  }
};

bool criterion(int id, const std::string& title, double budget_s, const std::function<void(Outcome&)>& body) {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.fail(std::string("exception: ") + e.what());
  }
  const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (s >= budget_s) o.fail(" time " + std::to_string(s) + " s over budget");
  std::cout << (o.ok ? "PASS" : "FAIL") << " [" << id << "] " << title << " (" << s << " s, budget " << budget_s
            << " s)";
  if (!o.detail.str().empty()) std::cout << ": " << o.detail.str();
  std::cout << "\n";
  return o.ok;
}

// Closed forms written out independently of the engine.
std::vector<std::pair<std::string, Rational>> oracle_forms(std::uint64_t q, std::uint64_t p, unsigned r,
                                                           std::uint64_t n) {
  const Rational N(n);
  std::vector<std::pair<std::string, Rational>> v;
  if (q == 2) v.push_back({"q2", Rational(189, 22) * N + 18});
  if (q == 3) v.push_back({"q3", 6 * N});
  if (q == 4) v.push_back({"q4", Rational(87, 19) * N});
  if (q == 5) v.push_back({"q5", Rational(9, 2) * N});
  std::uint64_t Q = 0;
  for (std::uint64_t s = 2; s * s <= q; ++s)
    if (s * s == q) Q = s;
  const Rational P(p);
  if (Q >= 4) {
    const Rational RQ(Q);
    v.push_back({"a", 2 * (1 + P / (RQ - 2 + (P - 1) * RQ / (RQ + 1))) * N - 1});
  }
  if (r == 2 && p >= 3) v.push_back({"b", 2 * (1 + Rational(2) / (P - 1)) * N - 1});
  if (q > 5) {
    const Rational Rq(q);
    v.push_back({"c", 3 * (1 + P / (Rq - 2 + (P - 1) * Rq / (Rq + 1))) * N});
  }
  if (r == 1 && p > 5) v.push_back({"d", 3 * (1 + Rational(2) / (P - 1)) * N});
  return v;
}

}  // namespace

int main() {
  const auto& table = KnownValues::builtin();
  bool all = true;

  all &= criterion(1, "uniform theorems reproduced as exact rationals", 1.0, [&](Outcome& o) {
    struct Case {
      std::uint64_t q, p;
      unsigned r;
      std::vector<std::string> names;
    };
    const std::vector<Case> cases = {{2, 2, 1, {"q2"}},         {3, 3, 1, {"q3"}},         {4, 2, 2, {"q4"}},
                                     {5, 5, 1, {"q5"}},         {9, 3, 2, {"b", "c"}},     {16, 2, 4, {"a", "c"}},
                                     {25, 5, 2, {"a", "b", "c"}}, {49, 7, 2, {"a", "b", "c"}}, {7, 7, 1, {"c", "d"}}};
    std::size_t checked = 0;
    for (const auto& c : cases)
      for (std::uint64_t n : {2, 3, 7, 10, 50, 101, 1000}) {
        const auto expect = oracle_forms(c.q, c.p, c.r, n);
        std::vector<std::string> got_names;
        for (const auto& [name, value] : expect) {
          got_names.push_back(name);
          const auto cert = derive_route(pp(c.q), n, {route_kind::closed_form, name, std::nullopt}, table);
          if (!cert || cert->value != value || !recheck(*cert))
            o.fail("q=" + std::to_string(c.q) + " form " + name + " n=" + std::to_string(n));
          ++checked;
        }
        if (got_names != c.names) o.fail("form list for q=" + std::to_string(c.q));
        if (closed_forms(pp(c.q)).size() != expect.size()) o.fail("engine form count for q=" + std::to_string(c.q));
      }
    o.detail << checked << " evaluations";
  });

  all &= criterion(2, "asymptotic constants reproduced as exact rationals", 1.0, [&](Outcome& o) {
    const std::vector<std::pair<std::uint64_t, Rational>> uniform = {
        {2, Rational(189, 22)}, {3, Rational(6)}, {4, Rational(87, 19)}, {5, Rational(9, 2)}};
    for (const auto& [q, v] : uniform)
      if (uniform_asymptotic(pp(q)).value != v) o.fail("uniform q=" + std::to_string(q));
    for (std::uint64_t q : {9, 16, 25, 49, 7, 11, 27}) {
      Rational m;
      bool first = true;
      const auto P = pp(q);
      for (const auto& [name, value] : oracle_forms(q, P.p, P.r, 1)) {
        const Rational slope = value + (name == "a" || name == "b" ? 1 : 0);
        if (first || slope < m) m = slope;
        first = false;
      }
      if (uniform_asymptotic(P).value != m) o.fail("uniform q=" + std::to_string(q));
    }
    struct S {
      std::uint64_t q;
      unsigned t;
      Rational v;
    };
    for (const auto& s : std::vector<S>{{2, 6, Rational(35, 6)},
                                        {3, 4, Rational(36, 7)},
                                        {4, 4, Rational(30, 7)},
                                        {5, 2, Rational(4)},
                                        {7, 2, Rational(18, 5)},
                                        {8, 2, Rational(7, 2)}})
      if (shimura_asymptotic(pp(s.q), s.t, table).value != s.v) o.fail("shimura q=" + std::to_string(s.q));
    for (std::uint64_t q : {5, 7, 8})
      if (shimura_asymptotic(pp(q), 2, table).value != 3 * (1 + Rational(1, q - 2))) o.fail("3(1+1/(q-2))");
  });

  all &= criterion(3, "interpolation algorithms verified with rank 2n-1 for q <= 16, n <= q/2+1", 1.0,
                   [&](Outcome& o) {
                     std::size_t cases = 0;
                     for (std::uint64_t q = 2; q <= 16; ++q) {
                       PrimePower P;
                       try {
                         P = pp(q);
                       } catch (const NonPrime&) {
                         continue;
                       }
                       for (unsigned n = 1; 2 * n - 2 <= q; ++n) {
                         const auto dec = build_interpolation_algorithm(P, n);
                         if (!verify_decomposition(dec) || dec.rank() != 2 * n - 1)
                           o.fail("q=" + std::to_string(q) + " n=" + std::to_string(n));
                         ++cases;
                       }
                     }
                     o.detail << cases << " cases";
                   });

  all &= criterion(3, "brute force: mu_2(2) = 3 and no rank-2 algorithm", 60.0, [&](Outcome& o) {
    const auto three = brute_force_min_rank(pp(2), 2, 3);
    if (!std::holds_alternative<unsigned>(three) || std::get<unsigned>(three) != 3) o.fail("(2,2,3)");
    if (!std::holds_alternative<NotFound>(brute_force_min_rank(pp(2), 2, 2))) o.fail("(2,2,2)");
  });

  all &= criterion(4, "tower lemma suite, GS k <= 8 and Kummer k <= 30", 5.0, [&](Outcome& o) {
    SelfcheckOptions opt;
    opt.k_max = 8;
    opt.kummer_k_max = 30;
    const auto results = run_selfcheck(opt);
    std::size_t checks = 0;
    for (const auto& r : results) {
      checks += r.checked;
      if (!r.passed()) o.fail(r.name + ": " + r.first_violation);
    }
    o.detail << results.size() << " lemmas, " << checks << " checks";
  });

  all &= criterion(5, "certificates recheck for q in {2,3,4,5,7,9,16}, n <= 2000; tampering detected", 30.0,
                   [&](Outcome& o) {
                     std::vector<BoundCertificate> with_premises;
                     for (std::uint64_t q : {2, 3, 4, 5, 7, 9, 16})
                       for (std::uint64_t n = 1; n <= 2000; ++n) {
                         const auto c = best_bound(pp(q), n, table);
                         if (!recheck(c, table) || c.value_floor < n)
                           o.fail("q=" + std::to_string(q) + " n=" + std::to_string(n));
                         if (!c.premises.empty() && n % 37 == 0) with_premises.push_back(c);
                       }
                     std::mt19937_64 rng(20261015);
                     int flipped = 0;
                     for (int i = 0; i < 100; ++i) {
                       auto c = with_premises[rng() % with_premises.size()];
                       auto& p = c.premises[rng() % c.premises.size()];
                       const Rational delta = Rational(static_cast<long>(rng() % 7 + 1), static_cast<long>(rng() % 3 + 1));
                       if (rng() % 2)
                         p.lhs += (rng() % 2 ? delta : -delta);
                       else
                         p.rhs += (rng() % 2 ? delta : -delta);
                       if (!recheck(c, table)) ++flipped;
                     }
                     if (flipped != 100) o.fail(std::to_string(100 - flipped) + " tamperings undetected");
                     o.detail << "100 tamperings, " << flipped << " detected";
                   });

  all &= criterion(6, "binary tower step finder, n = 12..5000", 10.0, [&](Outcome& o) {
    const auto t = TowerId::make(TowerFamily::gs_binary, pp(2));
    for (std::uint64_t n = 12; n <= 5000; ++n) {
      const auto prof = find_step(t, n);
      if (!satisfies_condition2(prof, n) || !place_witness(2, prof.genus_upper, n))
        o.fail("step does not certify n=" + std::to_string(n));
      if (prof.index == 0 || satisfies_condition2(step_profile(t, prof.index - 1), n))
        o.fail("preceding step meets condition (2) at n=" + std::to_string(n));
      const auto c = derive_route(pp(2), n, {route_kind::phi, "", t}, table);
      if (!c || c->value > Rational(189, 22) * Rational(n) + 18 || c->route.step != prof.index)
        o.fail("phi value above the line at n=" + std::to_string(n));
    }
  });

  std::cout << (all ? "ALL CRITERIA PASS" : "SOME CRITERIA FAIL") << "\n";
  return all ? 0 : 1;
}
