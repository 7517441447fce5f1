#include "trif/cli.hpp"

#include <algorithm>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "trif/alteration.hpp"
#include "trif/bounds.hpp"
#include "trif/io.hpp"
#include "trif/search.hpp"

namespace trif {

namespace {

using nlohmann::json;

constexpr int kExitTrue = 0;
constexpr int kExitFalse = 1;
constexpr int kExitUsage = 2;
constexpr int kExitBudget = 3;

std::string triple_line(const TripleWitness& w) {
  return w.word[0].to_string() + ", " + w.word[1].to_string() + ", " +
         w.word[2].to_string() + " (indices " + std::to_string(w.index[0]) +
         ", " + std::to_string(w.index[1]) + ", " + std::to_string(w.index[2]) + ")";
}

int cmd_verify(const std::string& path, int m, std::ostream& out) {
  TernaryCode code = read_code_file(path);
  out << "words: " << code.size() << ", length: " << code.word_length() << "\n";
  TrifferenceReport rep = min_triple_trifference(code);
  if (!rep.min_count) {
    out << "fewer than three words: every threshold holds vacuously\n";
    return kExitTrue;
  }
  out << "minimum triple trifference: " << *rep.min_count << "\n";
  VerifyResult res = is_m_trifferent(code, m);
  if (res.ok) {
    out << m << "-trifferent: yes\n";
    return kExitTrue;
  }
  out << m << "-trifferent: no\nviolating triple: " << triple_line(*res.violation) << "\n";
  return kExitFalse;
}

int cmd_verify_linear(const std::string& path, int m, const std::string& mode,
                      std::ostream& out) {
  LinearCode G = read_generator_file(path);
  out << "generator: k = " << G.k << ", n = " << G.n << "\n";
  bool all_ok = true;
  if (mode == "minimal" || mode == "both") {
    MinimalityResult res = is_m_minimal(G, m);
    out << m << "-minimal: " << (res.ok ? "yes" : "no") << "\n";
    if (!res.ok) {
      all_ok = false;
      const MinimalityWitness& w = *res.witness;
      out << "  witness (" << w.reason << "): " << w.a.to_string() << " vs "
          << w.b.to_string();
      if (!w.deleted_coordinates.empty()) {
        out << " after deleting coordinates";
        for (int c : w.deleted_coordinates) out << ' ' << c;
      }
      out << "\n";
    }
  }
  if (mode == "trifferent" || mode == "both") {
    TernaryCode codewords = enumerate_codewords(G);
    VerifyResult res = is_m_trifferent(codewords, m);
    out << m << "-trifferent: " << (res.ok ? "yes" : "no") << "\n";
    if (!res.ok) {
      all_ok = false;
      out << "  violating triple: " << triple_line(*res.violation) << "\n";
    }
  }
  return all_ok ? kExitTrue : kExitFalse;
}

int cmd_verify_blocking(const std::string& path, int m, std::ostream& out) {
  PointMultiset B = read_blocking_file(path);
  out << "points: " << B.entries.size() << " distinct, total size " << B.total()
      << ", ambient PG(" << (B.k - 1) << ",3)\n";
  BlockingCheck res = is_strength_blocking(B, m);
  if (res.ok) {
    out << "strength-" << m << " strong blocking: yes\n";
    return kExitTrue;
  }
  out << "strength-" << m << " strong blocking: no\n"
      << "violating affine target covered only " << res.witness_count << " time(s)\n";
  return kExitFalse;
}

json bound_to_json(const BoundValue& b) {
  json j;
  j["log2"] = b.log2_value;
  j["constant_known"] = b.constant_known;
  if (b.integer_value)
    j["value"] = b.integer_value->str();
  else
    j["value"] = nullptr;
  j["provenance"] = b.provenance;
  return j;
}

void print_bound(std::ostream& out, const char* label, const BoundValue& b,
                 const char* cmp) {
  out << "  " << label << ": log2 = " << std::setprecision(12) << b.log2_value;
  if (b.integer_value) out << "  (size " << cmp << ' ' << b.integer_value->str() << ")";
  out << "\n    via " << b.provenance << "\n";
}

int cmd_bounds(int n, int m, bool as_json, std::ostream& out) {
  auto [lo, hi] = best_bounds(n, m, known_exact_values());
  if (as_json) {
    json j;
    j["n"] = n;
    j["m"] = m;
    j["lower"] = bound_to_json(lo);
    j["upper"] = bound_to_json(hi);
    out << j.dump(2) << "\n";
    return kExitTrue;
  }
  out << "best certified bounds for the maximum " << m
      << "-trifferent code size at length " << n << ":\n";
  print_bound(out, "lower", lo, ">=");
  print_bound(out, "upper", hi, "<=");
  return kExitTrue;
}

int cmd_curve(double grid_step, const std::string& out_path, std::ostream& out) {
  std::ostringstream csv;
  write_rate_curve(csv, grid_step);
  atomic_write_text(out_path, csv.str());
  out << "wrote " << out_path << "\n";
  return kExitTrue;
}

int cmd_construct_alteration(int n, int m, std::uint64_t seed, int retries,
                             std::ostream& out) {
  AlterationResult res = alteration_construct(n, m, seed, retries);
  out << "sampled " << res.plan.t << " random words, size target "
      << res.plan.size_target << ", attempts used " << res.attempts_used << "\n";
  out << "code size: " << res.code.size() << " (target "
      << (res.target_met ? "met" : "missed") << ")\n";
  out << format_code_text(res.code);
  return kExitTrue;
}

int cmd_construct_lines(int k, int m, std::uint64_t seed, const std::string& mode,
                        int attempts, std::ostream& out) {
  LinesConstruction res = random_lines_blocking(k, m, mode, seed, attempts);
  out << "lines per attempt: " << res.t << ", attempts used: " << res.attempts_used
      << "\n";
  if (!res.ok) {
    out << "no verified strength-" << m << " set within " << attempts << " attempts\n";
    return kExitFalse;
  }
  out << "verified strength-" << m << " strong blocking set, size "
      << res.points.total() << "\n";
  out << format_blocking_json(res.points);
  return kExitTrue;
}

int cmd_construct_lift(const std::string& path, int m, std::ostream& out) {
  TernaryCode code = read_code_file(path);
  TernaryCode lifted = repetition_lift(code, m);
  out << "lifted " << code.size() << " words from length " << code.word_length()
      << " to length " << lifted.word_length() << "\n";
  out << format_code_text(lifted);
  return kExitTrue;
}

void print_trifferent_outcome(const TrifferentOutcome& oc, std::ostream& out) {
  out << "value: " << oc.value << "\n";
  out << "optimal: " << (oc.optimal ? "yes" : "no") << "\n";
  if (!oc.optimal) out << "upper bound: " << oc.upper_bound << "\n";
  if (oc.budget_hit) out << "budget exhausted\n";
  out << "nodes: " << oc.nodes << "\n";
  out << "seconds: " << std::fixed << std::setprecision(3) << oc.seconds
      << std::defaultfloat << "\n";
  out << "witness:\n" << format_code_text(oc.witness);
}

int cmd_exact_trifferent(int n, int m, double budget, bool has_slice, int slice_twos,
                         int threads, std::ostream& out) {
  TrifferentOutcome oc;
  if (has_slice) {
    out << "slice search: words with exactly " << slice_twos << " twos\n";
    oc = max_trifferent_slice(n, m, slice_twos, budget);
  } else {
    TrifferentOptions opt;
    opt.budget_seconds = budget;
    opt.threads = threads;
    oc = max_trifferent_exact(n, m, opt);
  }
  print_trifferent_outcome(oc, out);
  if (oc.optimal) return kExitTrue;
  return kExitBudget;
}

int cmd_exact_blocking(int k, int m, double budget, const std::string& lp_path,
                       std::ostream& out) {
  if (!lp_path.empty()) {
    CoverInstance inst = build_cover_instance(k, m);
    std::ostringstream lp;
    export_lp(inst, lp);
    atomic_write_text(lp_path, lp.str());
    out << "wrote " << lp_path << " (" << inst.candidates.size() << " variables, "
        << inst.targets.size() << " constraints)\n";
  }
  BlockingOutcome oc = min_blocking_exact(k, m, budget);
  if (!oc.feasible) {
    out << "infeasible: a demand of " << m
        << " exceeds the coverable vectors of some affine target\n";
    return kExitFalse;
  }
  out << "size: " << oc.value << "\n";
  out << "optimal: " << (oc.optimal ? "yes" : "no") << "\n";
  if (!oc.optimal) out << "lower bound: " << oc.lower_bound << "\n";
  if (oc.budget_hit) out << "budget exhausted\n";
  out << "nodes: " << oc.nodes << "\n";
  out << "seconds: " << std::fixed << std::setprecision(3) << oc.seconds
      << std::defaultfloat << "\n";
  out << "witness:\n" << format_blocking_json(oc.witness);
  return oc.optimal ? kExitTrue : kExitBudget;
}

int cmd_tables(const std::string& which, double budget, int threads, std::ostream& out) {
  if (which == "nonlinear" || which == "all") {
    out << "exact maximum m-trifferent code sizes\n";
    out << "  n  m  value  optimal\n";
    const std::pair<int, int> cells[] = {{4, 2}, {5, 2}, {6, 2}, {4, 3}, {5, 3},
                                         {6, 3}, {7, 3}, {1, 1}, {2, 2}, {3, 3},
                                         {4, 4}, {5, 5}};
    for (auto [n, m] : cells) {
      TrifferentOptions opt;
      opt.budget_seconds = budget;
      opt.threads = threads;
      TrifferentOutcome oc = max_trifferent_exact(n, m, opt);
      out << std::setw(3) << n << std::setw(3) << m << std::setw(7) << oc.value
          << "  " << (oc.optimal ? "yes" : "no");
      if (!oc.optimal) out << " (<= " << oc.upper_bound << ")";
      out << "\n";
    }
  }
  if (which == "linear" || which == "all") {
    out << "minimum strength-m strong blocking sizes in PG(k-1,3)\n";
    out << "  k  m  size  optimal\n";
    const std::pair<int, int> cells[] = {{3, 2}, {4, 2}, {4, 3}, {4, 4},
                                         {4, 5}, {4, 6}, {4, 7}};
    for (auto [k, m] : cells) {
      BlockingOutcome oc = min_blocking_exact(k, m, budget);
      out << std::setw(3) << k << std::setw(3) << m << std::setw(6) << oc.value
          << "  " << (oc.optimal ? "yes" : "no");
      if (!oc.optimal) out << " (>= " << oc.lower_bound << ")";
      out << "\n";
    }
    out << "derived maximum linear 2-trifferent code sizes\n";
    for (int n = 12; n <= 16; ++n) {
      TlDerivation d = tl_from_blocking(n, 5, 2, budget);
      out << "  n = " << n << ": ";
      if (d.known)
        out << d.value.str() << " (dimension " << d.k_star << ")\n";
      else
        out << d.detail << "\n";
    }
  }
  return kExitTrue;
}

int cmd_geometry_count(int k, std::ostream& out) {
  BigInt points = (power(BigInt(3), k) - 1) / 2;
  BigInt lines = gaussian_binomial(k, 2);
  out << "PG(" << (k - 1) << ",3)\n";
  out << "points: " << points.str() << "\n";
  out << "lines: " << lines.str() << "\n";
  out << "affine targets (origin-avoiding (k-2)-flats): " << BigInt(8 * lines).str()
      << "\n";
  return kExitTrue;
}

}  // namespace

int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"toolkit for m-trifferent ternary codes, their linear variants, "
               "and strength-m strong blocking sets in PG(k-1,3)"};
  app.require_subcommand(1);
  int exit_code = kExitTrue;

  // verify
  {
    auto* c = app.add_subcommand("verify", "check a code file for m-trifference");
    auto path = std::make_shared<std::string>();
    auto m = std::make_shared<int>(1);
    c->add_option("--code", *path, "code text file")->required();
    c->add_option("--m", *m, "trifference threshold")->required()->check(CLI::PositiveNumber);
    c->callback([&, path, m] { exit_code = cmd_verify(*path, *m, out); });
  }
  // verify-linear
  {
    auto* c = app.add_subcommand("verify-linear",
                                 "check a generator matrix for m-minimality / m-trifference");
    auto path = std::make_shared<std::string>();
    auto m = std::make_shared<int>(1);
    auto mode = std::make_shared<std::string>("both");
    c->add_option("--gen", *path, "generator matrix JSON file")->required();
    c->add_option("--m", *m, "threshold")->required()->check(CLI::PositiveNumber);
    c->add_option("--mode", *mode, "minimal, trifferent, or both (default)")
        ->check(CLI::IsMember({"minimal", "trifferent", "both"}));
    c->callback([&, path, m, mode] { exit_code = cmd_verify_linear(*path, *m, *mode, out); });
  }
  // verify-blocking
  {
    auto* c = app.add_subcommand("verify-blocking",
                                 "check a point multiset for strength-m strong blocking");
    auto path = std::make_shared<std::string>();
    auto m = std::make_shared<int>(1);
    c->add_option("--set", *path, "blocking set JSON file")->required();
    c->add_option("--m", *m, "strength")->required()->check(CLI::PositiveNumber);
    c->callback([&, path, m] { exit_code = cmd_verify_blocking(*path, *m, out); });
  }
  // bounds
  {
    auto* c = app.add_subcommand("bounds", "best certified bounds for T(n, m)");
    auto n = std::make_shared<int>(1);
    auto m = std::make_shared<int>(1);
    auto as_json = std::make_shared<bool>(false);
    c->add_option("--n", *n, "word length")->required()->check(CLI::PositiveNumber);
    c->add_option("--m", *m, "trifference threshold")->required()->check(CLI::PositiveNumber);
    c->add_flag("--json", *as_json, "machine-readable output");
    c->callback([&, n, m, as_json] { exit_code = cmd_bounds(*n, *m, *as_json, out); });
  }
  // curve
  {
    auto* c = app.add_subcommand("curve", "exponential-rate curve CSV over lambda");
    auto step = std::make_shared<double>(0.01);
    auto out_path = std::make_shared<std::string>();
    c->add_option("--grid-step", *step, "lambda grid step")->required();
    c->add_option("--out", *out_path, "output CSV path")->required();
    c->callback([&, step, out_path] { exit_code = cmd_curve(*step, *out_path, out); });
  }
  // construct
  {
    auto* c = app.add_subcommand("construct", "randomized and lifted constructions");
    c->require_subcommand(1);
    {
      auto* s = c->add_subcommand("alteration",
                                  "random words, bad triples deleted greedily");
      auto n = std::make_shared<int>(1);
      auto m = std::make_shared<int>(1);
      auto seed = std::make_shared<std::uint64_t>(0);
      auto retries = std::make_shared<int>(8);
      s->add_option("--n", *n, "word length")->required()->check(CLI::PositiveNumber);
      s->add_option("--m", *m, "threshold")->required()->check(CLI::PositiveNumber);
      s->add_option("--seed", *seed, "random seed (default 0)");
      s->add_option("--retries", *retries, "extra attempts keeping the best result")
          ->check(CLI::NonNegativeNumber);
      s->callback([&, n, m, seed, retries] {
        exit_code = cmd_construct_alteration(*n, *m, *seed, *retries, out);
      });
    }
    {
      auto* s = c->add_subcommand("lines", "union of random lines in PG(k-1,3)");
      auto k = std::make_shared<int>(3);
      auto m = std::make_shared<int>(1);
      auto seed = std::make_shared<std::uint64_t>(0);
      auto mode = std::make_shared<std::string>("general");
      auto attempts = std::make_shared<int>(50);
      s->add_option("--k", *k, "ambient dimension")->required()->check(CLI::PositiveNumber);
      s->add_option("--m", *m, "strength")->required()->check(CLI::PositiveNumber);
      s->add_option("--seed", *seed, "random seed (default 0)");
      s->add_option("--mode", *mode, "line count: general or asymptotic")
          ->check(CLI::IsMember({"general", "asymptotic"}));
      s->add_option("--attempts", *attempts, "verification attempts")
          ->check(CLI::PositiveNumber);
      s->callback([&, k, m, seed, mode, attempts] {
        exit_code = cmd_construct_lines(*k, *m, *seed, *mode, *attempts, out);
      });
    }
    {
      auto* s = c->add_subcommand("lift", "repeat every coordinate m times");
      auto path = std::make_shared<std::string>();
      auto m = std::make_shared<int>(1);
      s->add_option("--code", *path, "code text file")->required();
      s->add_option("--m", *m, "repetition factor")->required()->check(CLI::PositiveNumber);
      s->callback([&, path, m] { exit_code = cmd_construct_lift(*path, *m, out); });
    }
  }
  // exact
  {
    auto* c = app.add_subcommand("exact", "exact solvers");
    c->require_subcommand(1);
    {
      auto* s = c->add_subcommand("trifferent", "maximum m-trifferent code size");
      auto n = std::make_shared<int>(1);
      auto m = std::make_shared<int>(1);
      auto budget = std::make_shared<double>(0.0);
      auto slice = std::make_shared<int>(0);
      auto threads = std::make_shared<int>(1);
      s->add_option("--n", *n, "word length")->required()->check(CLI::PositiveNumber);
      s->add_option("--m", *m, "threshold")->required()->check(CLI::PositiveNumber);
      s->add_option("--budget-seconds", *budget, "wall-clock budget, 0 = none")
          ->check(CLI::NonNegativeNumber);
      CLI::Option* so = s->add_option("--slice-twos", *slice,
                                      "restrict to words with exactly this many twos")
                            ->check(CLI::NonNegativeNumber);
      s->add_option("--threads", *threads, "worker threads")->check(CLI::PositiveNumber);
      s->callback([&, n, m, budget, slice, threads, so] {
        exit_code = cmd_exact_trifferent(*n, *m, *budget, so->count() > 0, *slice,
                                         *threads, out);
      });
    }
    {
      auto* s = c->add_subcommand("blocking",
                                  "minimum strength-m strong blocking multiset");
      auto k = std::make_shared<int>(3);
      auto m = std::make_shared<int>(1);
      auto budget = std::make_shared<double>(0.0);
      auto lp = std::make_shared<std::string>();
      s->add_option("--k", *k, "ambient dimension (2..5)")->required();
      s->add_option("--m", *m, "strength")->required()->check(CLI::PositiveNumber);
      s->add_option("--budget-seconds", *budget, "wall-clock budget, 0 = none")
          ->check(CLI::NonNegativeNumber);
      s->add_option("--export-lp", *lp, "also write the covering ILP in LP format");
      s->callback([&, k, m, budget, lp] {
        exit_code = cmd_exact_blocking(*k, *m, *budget, *lp, out);
      });
    }
  }
  // tables
  {
    auto* c = app.add_subcommand("tables", "reproduce the exact-value tables");
    auto which = std::make_shared<std::string>("all");
    auto budget = std::make_shared<double>(30.0);
    auto threads = std::make_shared<int>(1);
    c->add_option("--which", *which, "nonlinear, linear, or all (default)")
        ->check(CLI::IsMember({"nonlinear", "linear", "all"}));
    c->add_option("--budget-seconds", *budget,
                  "per-cell wall-clock budget (default 30, 0 = none)")
        ->check(CLI::NonNegativeNumber);
    c->add_option("--threads", *threads, "worker threads")->check(CLI::PositiveNumber);
    c->callback([&, which, budget, threads] {
      exit_code = cmd_tables(*which, *budget, *threads, out);
    });
  }
  // geometry
  {
    auto* c = app.add_subcommand("geometry", "projective geometry facts");
    c->require_subcommand(1);
    {
      auto* s = c->add_subcommand("count", "point / line / affine-target counts");
      auto k = std::make_shared<int>(3);
      s->add_option("--k", *k, "ambient dimension")->required()
          ->check(CLI::Range(2, 64));
      s->callback([&, k] { exit_code = cmd_geometry_count(*k, out); });
    }
  }

  std::reverse(args.begin(), args.end());
  try {
    app.parse(std::move(args));
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitTrue;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitTrue;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    err << "run with --help for usage\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return exit_code;
}

}  // namespace trif
