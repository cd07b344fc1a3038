#pragma once

#include "murank/asymptotics.hpp"
#include "murank/bilinear.hpp"
#include "murank/bound.hpp"
#include "murank/selfcheck.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace murank::cli {

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int failure = 1;
inline constexpr int usage = 2;
inline constexpr int recheck_failed = 3;
inline constexpr int budget = 4;
}  // namespace exit_code

inline constexpr std::uint64_t kMaxTableN = 1'000'000;

/// Exit status of a selfcheck run; the report goes to out.
inline int selfcheck_command(const SelfcheckOptions& opt, std::ostream& out, const std::string& csv_path = "") {
  const auto results = run_selfcheck(opt);
  print_report(out, results);
  if (!csv_path.empty()) {
    std::ofstream f(csv_path);
    if (!f) throw TableError("cannot write " + csv_path);
    write_profile_csv(f, opt);
  }
  const bool ok = all_passed(results);
  out << (ok ? "all lemmas hold" : "lemma violations found") << "\n";
  return ok ? exit_code::ok : exit_code::failure;
}

/// Runs one command line (args excludes the program name).
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Certified upper bounds on the bilinear complexity of multiplication in finite fields", "murank"};
  app.require_subcommand(1);
  std::string table_path;
  app.add_option("--table", table_path, "known-values JSON file (overrides MURANK_TABLE)");

  std::uint64_t q = 0, n = 0;

  auto* bound = app.add_subcommand("bound", "best certified bound on mu_q(n)");
  std::optional<std::string> cert_path;
  bool as_json = false;
  bound->add_option("q", q)->required();
  bound->add_option("n", n)->required();
  bound->add_option("--certificate", cert_path, "write the certificate (to stdout when no path is given)")
      ->expected(0, 1);
  bound->add_flag("--json", as_json, "print the certificate instead of the summary line");

  auto* table_cmd = app.add_subcommand("table", "bounds for n = 2..N");
  std::uint64_t to = 0;
  std::string format = "csv", output;
  table_cmd->add_option("q", q)->required();
  table_cmd->add_option("--to", to)->required();
  table_cmd->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));
  table_cmd->add_option("-o,--output", output, "file to write instead of stdout");

  auto* asym = app.add_subcommand("asym", "upper bound on M_q");
  unsigned t_max = 8;
  asym->add_option("q", q)->required();
  asym->add_option("--t-max", t_max);

  auto* interp = app.add_subcommand("verify-interp", "build and verify the interpolation algorithm");
  interp->add_option("q", q)->required();
  interp->add_option("n", n)->required();

  auto* self = app.add_subcommand("selfcheck", "numeric lemma suite over the tower families");
  SelfcheckOptions sopt;
  std::string csv_path;
  std::optional<unsigned> kummer_k;
  self->add_option("--k-max", sopt.k_max);
  self->add_option("--kummer-k-max", kummer_k, "Kummer level bound (default: --k-max)");
  self->add_option("--profile-csv", csv_path, "write step profiles as CSV");

  auto* brute = app.add_subcommand("brute-force", "exhaustive minimal rank for small q, n");
  unsigned cap = 0;
  std::uint64_t budget = kDefaultBruteForceBudget;
  brute->add_option("q", q)->required();
  brute->add_option("n", n)->required();
  brute->add_option("cap", cap)->required();
  brute->add_option("--budget", budget);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? exit_code::ok : exit_code::usage;
  }

  try {
    KnownValues table = table_path.empty() ? KnownValues::from_environment() : KnownValues::from_file(table_path);

    if (bound->parsed()) {
      const auto Q = PrimePower::from_q(q);
      if (n == 0) throw RangeError("n must be positive");
      const auto c = best_bound(Q, n, table);
      const auto j = to_json(c);
      if (as_json)
        out << j.dump(2) << "\n";
      else
        out << c.value_floor << " (" << c.route.kind << ")\n";
      if (cert_path) {
        if (cert_path->empty()) {
          if (!as_json) out << j.dump(2) << "\n";
        } else {
          std::ofstream f(*cert_path);
          if (!f) throw TableError("cannot write " + *cert_path);
          f << j.dump(2) << "\n";
        }
      }
      if (!recheck(c, table)) {
        err << "certificate failed its recheck\n";
        return exit_code::recheck_failed;
      }
      return exit_code::ok;
    }

    if (table_cmd->parsed()) {
      const auto Q = PrimePower::from_q(q);
      if (to < 2 || to > kMaxTableN) throw RangeError("--to must be in 2.." + std::to_string(kMaxTableN));
      std::ofstream file;
      if (!output.empty()) {
        file.open(output);
        if (!file) throw TableError("cannot write " + output);
      }
      std::ostream& os = output.empty() ? out : file;
      if (format == "csv") {
        os << "q,n,bound,exact,route\n";
        for (std::uint64_t m = 2; m <= to; ++m) {
          const auto c = best_bound(Q, m, table);
          os << q << "," << m << "," << c.value_floor << "," << fraction_str(c.value) << "," << c.route.kind << "\n";
        }
      } else {
        nlohmann::json rows = nlohmann::json::array();
        for (std::uint64_t m = 2; m <= to; ++m) rows.push_back(to_json(best_bound(Q, m, table)));
        os << rows.dump(2) << "\n";
      }
      return exit_code::ok;
    }

    if (asym->parsed()) {
      const auto b = best_asymptotic(PrimePower::from_q(q), t_max, table);
      out << fraction_str(b.value) << " (" << b.route << ")\n";
      if (b.mu_qt_used)
        out << "mu_" << q << "(" << b.mu_qt_used->t << ") <= " << b.mu_qt_used->value << ": "
            << b.mu_qt_used->provenance << "\n";
      return exit_code::ok;
    }

    if (interp->parsed()) {
      const auto Q = PrimePower::from_q(q);
      if (n == 0 || 2 * n - 2 > Q.q) throw RangeError("interpolation needs 1 <= n <= q/2 + 1");
      const auto dec = build_interpolation_algorithm(Q, static_cast<unsigned>(n));
      const bool ok = verify_decomposition(dec);
      out << "rank " << dec.rank() << (ok ? ", verified" : ", verification FAILED") << "\n";
      return ok && dec.rank() == 2 * n - 1 ? exit_code::ok : exit_code::failure;
    }

    if (self->parsed()) {
      sopt.kummer_k_max = kummer_k.value_or(sopt.k_max);
      return selfcheck_command(sopt, out, csv_path);
    }

    if (brute->parsed()) {
      const auto Q = PrimePower::from_q(q);
      if (n == 0 || n > UINT32_MAX) throw RangeError("n out of range");
      const auto r = brute_force_min_rank(Q, static_cast<unsigned>(n), cap, budget);
      if (std::holds_alternative<unsigned>(r))
        out << "minimal rank " << std::get<unsigned>(r) << "\n";
      else
        out << "no algorithm of rank <= " << cap << "\n";
      return exit_code::ok;
    }
  } catch (const BudgetExceeded& e) {
    err << "budget exceeded: " << e.what() << "\n";
    return exit_code::budget;
  } catch (const NonPrime& e) {
    err << e.what() << "\n";
    return exit_code::usage;
  } catch (const UnsupportedSize& e) {
    err << e.what() << "\n";
    return exit_code::usage;
  } catch (const RangeError& e) {
    err << e.what() << "\n";
    return exit_code::usage;
  } catch (const TableError& e) {
    err << e.what() << "\n";
    return exit_code::usage;
  } catch (const Error& e) {
    err << e.what() << "\n";
    return exit_code::failure;
  }
  return exit_code::usage;
}

}  // namespace murank::cli
