#pragma once

#include "murank/errors.hpp"
#include "murank/field.hpp"
#include "murank/known_values_data.hpp"
#include "murank/rational.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace murank {

/// Greatest integer <= 2 sqrt(q) prime to q, or exactly 2 sqrt(q) for square q.
/// epsilon(2) = 1 follows the definition but is never consumed by a bound route.
inline std::uint64_t epsilon(const PrimePower& q) {
  const Integer four_q = Integer(4) * q.q;
  const auto t = isqrt(four_q).convert_to<std::uint64_t>();
  if (q.is_square()) return t;
  for (std::uint64_t c = t; c > 0; --c)
    if (std::gcd(c, q.q) == 1) return c;
  return 0;
}

inline int alpha(const PrimePower& q) {
  if (q.q == 2) return 5;
  if (q.q <= 5) return 2;
  return -1;
}

inline int e_const(const PrimePower& q) {
  if (q.q == 2) return 2;
  if (q.q <= 5) return 1;
  return 0;
}

enum class Measure { mu, mu_sym };
enum class Strength { exact, upper };

inline std::string measure_key(Measure measure, std::uint64_t q, unsigned m, unsigned l) {
  std::string key = measure == Measure::mu ? "mu_" : "mu_sym_";
  key += std::to_string(q) + "(" + std::to_string(m);
  if (l != 1) key += "," + std::to_string(l);
  return key + ")";
}

/// A table value as it is quoted in a certificate.
struct TableEntry {
  std::string key;
  Integer value;
  std::string provenance;

  friend bool operator==(const TableEntry&, const TableEntry&) = default;
};

struct TableRecord {
  std::string id;
  Measure measure = Measure::mu;
  Strength strength = Strength::upper;
  unsigned m = 1;
  unsigned l = 1;
  std::uint64_t q_min = 2;
  std::optional<std::uint64_t> q_max;
  Integer value;
  std::string provenance;

  bool covers(std::uint64_t q) const { return q >= q_min && (!q_max || q <= *q_max); }
  bool overlaps(const TableRecord& o) const {
    const auto lo = std::max(q_min, o.q_min);
    const auto hi = std::min(q_max.value_or(UINT64_MAX), o.q_max.value_or(UINT64_MAX));
    return lo <= hi;
  }
  TableEntry entry(std::uint64_t q) const {
    return {measure_key(measure, q, m, l), value, provenance};
  }
};

inline constexpr const char* kWinogradProvenance =
    "Winograd; de Groote: mu_q(n) = mu_sym_q(n) = 2n-1 iff n <= q/2+1";
inline constexpr const char* kShokrollahiProvenance =
    "Shokrollahi: mu_sym_q(n) = 2n for q/2+1 < n < (q+1+eps(q))/2 (elliptic curves, used as a value)";

/// Registry of exact values and upper bounds for mu and mu_sym.
///
/// Point values come from the JSON table; the two classical families
/// (interpolation range, Shokrollahi range) are rules evaluated on demand.
class KnownValues {
public:
  static KnownValues from_json(const nlohmann::json& doc) {
    KnownValues kv;
    try {
      kv.version_ = doc.value("version", std::string("unversioned"));
      for (const auto& r : doc.at("records")) {
        TableRecord rec;
        rec.id = r.at("id").get<std::string>();
        const auto measure = r.at("measure").get<std::string>();
        if (measure == "mu")
          rec.measure = Measure::mu;
        else if (measure == "mu_sym")
          rec.measure = Measure::mu_sym;
        else
          throw TableError("record " + rec.id + ": unknown measure '" + measure + "'");
        const auto bound = r.at("bound").get<std::string>();
        if (bound == "exact")
          rec.strength = Strength::exact;
        else if (bound == "upper")
          rec.strength = Strength::upper;
        else
          throw TableError("record " + rec.id + ": unknown bound kind '" + bound + "'");
        rec.m = r.at("m").get<unsigned>();
        rec.l = r.value("l", 1u);
        if (r.contains("q")) {
          rec.q_min = r.at("q").get<std::uint64_t>();
          rec.q_max = rec.q_min;
        } else {
          rec.q_min = r.value("q_min", std::uint64_t{2});
          if (r.contains("q_max")) rec.q_max = r.at("q_max").get<std::uint64_t>();
        }
        rec.value = Integer(r.at("value").get<std::int64_t>());
        rec.provenance = r.at("provenance").get<std::string>();
        if (rec.m == 0 || rec.l == 0 || rec.value < 1)
          throw TableError("record " + rec.id + ": m, l and value must be positive");
        kv.records_.push_back(std::move(rec));
      }
    } catch (const nlohmann::json::exception& e) {
      throw TableError(std::string("malformed known-values table: ") + e.what());
    }
    kv.validate();
    return kv;
  }

  static KnownValues from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw TableError("cannot open table file " + path);
    nlohmann::json doc;
    try {
      in >> doc;
    } catch (const nlohmann::json::exception& e) {
      throw TableError("cannot parse " + path + ": " + e.what());
    }
    return from_json(doc);
  }

  /// The table compiled into the build.
  static const KnownValues& builtin() {
    static const KnownValues kv = from_json(nlohmann::json::parse(data::kKnownValuesJson));
    return kv;
  }

  /// MURANK_TABLE when set, the built-in table otherwise.
  static KnownValues from_environment() {
    if (const char* path = std::getenv("MURANK_TABLE"); path && *path) return from_file(path);
    return builtin();
  }

  const std::string& version() const { return version_; }
  const std::vector<TableRecord>& records() const { return records_; }

  /// Best matching table record (no rules).
  std::optional<TableEntry> record(Measure measure, Strength strength, const PrimePower& q, unsigned m,
                                   unsigned l) const {
    std::optional<TableEntry> best;
    for (const auto& r : records_) {
      if (r.measure != measure || r.strength != strength || r.m != m || r.l != l || !r.covers(q.q)) continue;
      if (!best || r.value < best->value) best = r.entry(q.q);
    }
    return best;
  }

  /// Exact mu_sym_q(m) (l = 1) or mu_sym_q(m, l) from records and rules.
  std::optional<TableEntry> mu_sym_exact(const PrimePower& q, unsigned m, unsigned l = 1) const {
    if (auto r = record(Measure::mu_sym, Strength::exact, q, m, l)) return r;
    if (l != 1) return std::nullopt;
    if (in_interpolation_range(q, m))
      return TableEntry{measure_key(Measure::mu_sym, q.q, m, 1), Integer(2 * m - 1), kWinogradProvenance};
    if (in_shokrollahi_range(q, m))
      return TableEntry{measure_key(Measure::mu_sym, q.q, m, 1), Integer(2 * m), kShokrollahiProvenance};
    return std::nullopt;
  }

  /// Best upper bound on mu_q(m, l) from explicit records only
  /// (mu records and mu_sym records, since mu <= mu_sym).
  std::optional<TableEntry> mu_upper_recorded(const PrimePower& q, unsigned m, unsigned l = 1) const {
    std::optional<TableEntry> best;
    for (const auto& r : records_) {
      if (r.m != m || r.l != l || !r.covers(q.q)) continue;
      if (!best || r.value < best->value) best = r.entry(q.q);
    }
    return best;
  }

  /// Best upper bound on mu_q(m, l) from records and rules.
  std::optional<TableEntry> mu_upper(const PrimePower& q, unsigned m, unsigned l = 1) const {
    auto best = mu_upper_recorded(q, m, l);
    if (l == 1) {
      std::optional<TableEntry> rule;
      if (in_interpolation_range(q, m))
        rule = TableEntry{measure_key(Measure::mu, q.q, m, 1), Integer(2 * m - 1), kWinogradProvenance};
      else if (in_shokrollahi_range(q, m))
        rule = TableEntry{measure_key(Measure::mu_sym, q.q, m, 1), Integer(2 * m), kShokrollahiProvenance};
      if (rule && (!best || rule->value < best->value)) best = rule;
    }
    return best;
  }

  static bool in_interpolation_range(const PrimePower& q, std::uint64_t m) { return m >= 1 && 2 * m - 2 <= q.q; }
  static bool in_shokrollahi_range(const PrimePower& q, std::uint64_t m) {
    return q.q + 2 < 2 * m && 2 * m < q.q + 1 + epsilon(q);
  }

private:
  void validate() const {
    for (std::size_t i = 0; i < records_.size(); ++i) {
      const auto& a = records_[i];
      if (a.l == 1 && 2 * static_cast<std::uint64_t>(a.m) - 2 <= a.q_max.value_or(UINT64_MAX) &&
          a.value != 2 * a.m - 1)
        throw TableError("record " + a.id + " contradicts mu_q(m) = 2m-1 for m <= q/2+1");
      for (std::size_t j = 0; j < records_.size(); ++j) {
        const auto& b = records_[j];
        if (i == j || a.m != b.m || a.l != b.l || !a.overlaps(b)) continue;
        if (a.strength == Strength::exact && b.strength == Strength::upper && a.measure == b.measure &&
            a.value > b.value)
          throw TableError("exact value " + a.id + " exceeds upper bound " + b.id);
        if (a.strength == Strength::exact && b.strength == Strength::exact && a.measure == b.measure &&
            a.value != b.value)
          throw TableError("conflicting exact values " + a.id + " and " + b.id);
      }
    }
  }

  std::string version_;
  std::vector<TableRecord> records_;
};

/// Upper bound for gamma_{q,d} = max_{i|d} mu_q(i,2)/i - 2 mu_sym_q(d)/d.
struct GammaValue {
  Rational value;
  std::vector<TableEntry> used;
};

inline GammaValue gamma_with_entries(const PrimePower& q, unsigned d, const KnownValues& table) {
  GammaValue out;
  std::optional<Rational> best;
  for (unsigned i = 1; i <= d; ++i) {
    if (d % i) continue;
    auto e = table.mu_upper(q, i, 2);
    if (!e) throw MissingTableEntry("no upper bound for " + measure_key(Measure::mu, q.q, i, 2));
    const Rational ratio(e->value, Integer(i));
    if (!best || ratio > *best) best = ratio;
    out.used.push_back(*e);
  }
  const auto sym = table.mu_sym_exact(q, d);
  if (!sym) throw MissingTableEntry("no exact value for " + measure_key(Measure::mu_sym, q.q, d, 1));
  out.used.push_back(*sym);
  out.value = *best - Rational(2 * sym->value, Integer(d));
  return out;
}

inline Rational gamma(const PrimePower& q, unsigned d, const KnownValues& table) {
  return gamma_with_entries(q, d, table).value;
}

struct ConstantRow {
  Rational value;
  std::string chosen;
  std::vector<std::string> matching;
};

/// Best known C_q with mu_q(n) <= C_q n, rows tried in their printed order.
inline ConstantRow c_q_table(const PrimePower& q) {
  struct Row {
    bool applies;
    const char* label;
    std::optional<Rational> value;
  };
  const auto Q = Integer(q.q);
  const Rational p(q.p);
  std::vector<Row> rows;
  rows.push_back({q.q == 2, "q=2: 22", Rational(22)});
  rows.push_back({q.q == 3, "q=3: 27", Rational(27)});
  rows.push_back({q.r == 1 && q.q >= 5, "q=p>=5: 3(1+4/(q-3))", std::nullopt});
  rows.push_back({q.r == 2 && q.q >= 25, "q=p^2>=25: 2(1+2/(sqrt q-3))", std::nullopt});
  rows.push_back({q.r % 2 == 0 && q.q >= 16, "q=p^2k>=16: 2(1+p/(sqrt q-3))", std::nullopt});
  rows.push_back({q.q >= 16, "q>=16: 3(1+2p/(q-3))", std::nullopt});
  rows.push_back({q.q > 3, "q>3: 6(1+p/(q-3))", std::nullopt});
  if (rows[2].applies) rows[2].value = 3 * (1 + Rational(4) / Rational(Q - 3));
  const Integer root = isqrt(Q);
  if (rows[3].applies) rows[3].value = 2 * (1 + Rational(2) / Rational(root - 3));
  if (rows[4].applies) rows[4].value = 2 * (1 + p / Rational(root - 3));
  if (rows[5].applies) rows[5].value = 3 * (1 + 2 * p / Rational(Q - 3));
  if (rows[6].applies) rows[6].value = 6 * (1 + p / Rational(Q - 3));

  ConstantRow out;
  for (const auto& row : rows) {
    if (!row.applies) continue;
    out.matching.push_back(row.label + std::string(" = ") + row.value->str());
    if (out.chosen.empty()) {
      out.chosen = row.label;
      out.value = *row.value;
    }
  }
  return out;
}

}  // namespace murank
