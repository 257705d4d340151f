// pnum: classify integers by which group properties every group of that
// order must have, build counterexample groups, and run the crosscheck suite.
//
// Exit codes: 0 success, 1 verification failure, 2 usage error.

#include <atomic>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "pnum/io.hpp"
#include "pnum/pnum.hpp"

namespace {

using namespace pnum;

constexpr int kOk = 0;
constexpr int kFailure = 1;
constexpr int kUsage = 2;

/// Largest n accepted anywhere; trial division stays fast below this.
constexpr u64 kMaxN = 1'000'000'000'000'000ULL;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Property property_arg(std::string const &s) {
  auto p = parse_property(s);
  if (!p)
    throw UsageError("unknown property '" + s + "' (cyclic, abelian, nilpotent, supersolvable, ordered_sylow)");
  return *p;
}

void check_n(u64 n) {
  if (n < 1)
    throw UsageError("n must be at least 1");
  if (n > kMaxN)
    throw UsageError("n = " + std::to_string(n) + " exceeds the supported maximum " + std::to_string(kMaxN));
}

// ---------------------------------------------------------------------------
// classify
// ---------------------------------------------------------------------------

struct ClassifyArgs {
  u64 n = 0;
  std::vector<u64> range;
  std::string format = "table";
  std::string cache;
  unsigned jobs = 1;
  u64 max_range = 1'000'000;
};

int cmd_classify(ClassifyArgs const &a) {
  u64 lo = a.n, hi = a.n;
  bool is_range = !a.range.empty();
  if (is_range) {
    if (a.n)
      throw UsageError("give either N or --range A B, not both");
    lo = a.range[0];
    hi = a.range[1];
    if (lo > hi)
      throw UsageError("malformed range: A > B");
    if (hi - lo + 1 > a.max_range)
      throw UsageError("range of " + std::to_string(hi - lo + 1) + " values exceeds --max-range " +
                       std::to_string(a.max_range));
  } else if (!a.n) {
    throw UsageError("classify needs N or --range A B");
  }
  check_n(lo);
  check_n(hi);
  if (a.format != "table" && a.format != "json" && a.format != "csv")
    throw UsageError("unknown format '" + a.format + "'");

  // Compact JSON line per n; with a cache, lines come from (and go to) it.
  std::size_t count = hi - lo + 1;
  std::vector<std::string> lines(count);
  std::optional<ClassificationCache> cache;
  if (!a.cache.empty()) {
    cache.emplace(a.cache);
    for (u64 n = lo; n <= hi; ++n)
      lines[n - lo] = cache->line(n);
    cache->flush();
  } else {
    unsigned jobs = std::max(1u, a.jobs);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (std::size_t i; (i = next.fetch_add(1)) < count;)
        lines[i] = to_json(classify(lo + i)).dump();
    };
    std::vector<std::thread> pool;
    for (unsigned i = 1; i < jobs; ++i)
      pool.emplace_back(worker);
    worker();
    for (auto &t : pool)
      t.join();
  }

  if (a.format == "json") {
    if (!is_range) {
      std::cout << ojson::parse(lines[0]).dump(2) << '\n';
    } else {
      std::cout << "[\n";
      for (std::size_t i = 0; i < count; ++i)
        std::cout << "  " << lines[i] << (i + 1 < count ? ",\n" : "\n");
      std::cout << "]\n";
    }
    return kOk;
  }
  std::cout << (a.format == "csv" ? csv_header() : table_header()) << '\n';
  for (auto const &l : lines) {
    auto r = report_from_json(ojson::parse(l));
    std::cout << (a.format == "csv" ? to_csv(r) : to_table_row(r)) << '\n';
  }
  return kOk;
}

// ---------------------------------------------------------------------------
// witness
// ---------------------------------------------------------------------------

struct WitnessArgs {
  u64 n = 0;
  std::string property;
  bool build = false;
  bool all = false;
  std::size_t cap = TableLimits{}.max_order;
};

int cmd_witness(WitnessArgs const &a) {
  check_n(a.n);
  auto prop = property_arg(a.property);
  if (holds(prop, a.n)) {
    std::cerr << "no witness exists: " << a.n << " is a " << to_string(prop) << " number\n";
    return kUsage;
  }
  auto diags = diagnose(a.n, prop);
  if (!a.all)
    diags.resize(1);
  for (auto const &d : diags) {
    auto r = recipe_for(a.n, d);
    std::cout << serialize(r) << '\n';
    if (!a.build)
      continue;
    if (r.order() > a.cap)
      throw UsageError("witness order " + std::to_string(r.order()) + " exceeds --cap " + std::to_string(a.cap));
    auto g = make_witness(r, {a.cap});
    write_group(std::cout, g);
    bool verdict = group_has(prop, g);
    std::cout << group_test_name(prop) << ": " << (verdict ? "true" : "false") << '\n';
    if (verdict) {
      std::cerr << "verification failure: witness has the property\n";
      return kFailure;
    }
  }
  return kOk;
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

struct VerifyArgs {
  u64 max = 0;
  std::string report;
  std::vector<std::string> properties;
  u64 cap = 300;
  std::size_t budget = 3;
  unsigned jobs = 1;
  bool first_only = false;
  u64 ceiling = 1'000'000;
};

int cmd_verify(VerifyArgs const &a) {
  if (a.max < 1)
    throw UsageError("--max must be at least 1");
  if (a.max > a.ceiling)
    throw UsageError("--max exceeds the suite ceiling " + std::to_string(a.ceiling));
  if (a.cap > TableLimits{}.max_order)
    throw UsageError("--cap above the table limit " + std::to_string(TableLimits{}.max_order));
  SuiteOptions opt;
  opt.max_n = a.max;
  opt.limits.cap = a.cap;
  opt.sample_budget = a.budget;
  opt.jobs = a.jobs;
  opt.all_diagnoses = !a.first_only;
  if (!a.properties.empty()) {
    opt.properties.clear();
    for (auto const &p : a.properties)
      opt.properties.push_back(property_arg(p));
  }
  SuiteSummary s;
  try {
    s = run_suite(opt);
  } catch (VerificationFailure const &e) {
    std::cerr << "verification failure: " << e.what() << '\n';
    return kFailure;
  }
  if (!a.report.empty()) {
    std::ofstream out(a.report);
    if (!out)
      throw UsageError("cannot write report '" + a.report + "'");
    write_report(out, s.records);
  }
  std::cout << "max_n=" << s.max_n << " invariant_checks=" << s.invariant_checks
            << " confirmed_negative=" << s.confirmed_negative << " sampled_positive=" << s.sampled_positive
            << " skipped_cap=" << s.skipped_cap << " failures=0\n";
  return kOk;
}

// ---------------------------------------------------------------------------
// group
// ---------------------------------------------------------------------------

FiniteGroup read_group_file(std::string const &path) {
  std::ifstream in(path);
  if (!in)
    throw UsageError("cannot read '" + path + "'");
  return read_group(in);
}

void print_summary(FiniteGroup const &g) {
  auto b = [](bool x) { return x ? "true" : "false"; };
  std::cout << "order: " << g.order() << '\n' << "identity: " << g.identity() << '\n';
  for (auto prop : kAllProperties)
    std::cout << group_test_name(prop) << ": " << b(group_has(prop, g)) << '\n';
  std::cout << "is_solvable_group: " << b(is_solvable_group(g)) << '\n';
  std::cout << "center_order: " << center(g).order() << '\n';
  for (u64 p : prime_divisors(g))
    std::cout << "sylow " << p << ": order " << sylow_subgroup(g, p).order() << ", count " << sylow_count(g, p)
              << '\n';
}

int cmd_group_dump(std::string const &name, std::string const &recipe) {
  if (name.empty() == recipe.empty())
    throw UsageError("group dump needs exactly one of NAME or --recipe");
  auto g = recipe.empty() ? make_named(name) : make_witness(parse_recipe(recipe));
  write_group(std::cout, g);
  return kOk;
}

int cmd_group_load(std::string const &path) {
  auto g = read_group_file(path);
  write_group(std::cout, g);
  return kOk;
}

int cmd_group_check(std::string const &path) {
  std::ifstream in(path);
  if (!in)
    throw UsageError("cannot read '" + path + "'");
  try {
    auto g = read_group(in);
    std::cout << "valid group\n";
    print_summary(g);
  } catch (GroupError const &e) {
    std::cout << "invalid group: " << e.what() << '\n';
    return kFailure;
  }
  return kOk;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Group-theoretic P numbers: classification, witnesses and verification"};
  app.require_subcommand(1);

  ClassifyArgs ca;
  auto *classify_cmd = app.add_subcommand("classify", "Classify N or a range of integers");
  classify_cmd->add_option("N", ca.n, "Integer to classify");
  classify_cmd->add_option("--range", ca.range, "Inclusive range A B")->expected(2);
  classify_cmd->add_option("--format", ca.format, "table, json or csv")->capture_default_str();
  classify_cmd->add_option("--cache", ca.cache, "Newline-delimited JSON cache file");
  classify_cmd->add_option("--jobs", ca.jobs, "Worker threads")->capture_default_str();
  classify_cmd->add_option("--max-range", ca.max_range, "Largest accepted range length")->capture_default_str();

  WitnessArgs wa;
  auto *witness_cmd = app.add_subcommand("witness", "Print the witness recipe for a failing property");
  witness_cmd->add_option("N", wa.n, "Group order")->required();
  witness_cmd->add_option("--property", wa.property, "Property the witness must fail")->required();
  witness_cmd->add_flag("--build", wa.build, "Build the group, dump its table and run the group test");
  witness_cmd->add_flag("--all", wa.all, "One recipe per diagnosis instead of the first only");
  witness_cmd->add_option("--cap", wa.cap, "Largest group built")->capture_default_str();

  VerifyArgs va;
  auto *verify_cmd = app.add_subcommand("verify", "Run the crosscheck suite over [1, max]");
  verify_cmd->add_option("--max", va.max, "Largest n")->required();
  verify_cmd->add_option("--report", va.report, "Write a tab-separated report here");
  verify_cmd->add_option("--property", va.properties, "Restrict to these properties");
  verify_cmd->add_option("--cap", va.cap, "Largest witness order built")->capture_default_str();
  verify_cmd->add_option("--budget", va.budget, "Battery groups sampled per positive verdict")
      ->capture_default_str();
  verify_cmd->add_option("--jobs", va.jobs, "Worker threads")->capture_default_str();
  verify_cmd->add_flag("--first-only", va.first_only, "Confirm only the first diagnosis per (n, property)");

  auto *group_cmd = app.add_subcommand("group", "Inspect Cayley-table groups");
  group_cmd->require_subcommand(1);
  std::string dump_name, dump_recipe, load_path, check_path;
  auto *dump_cmd = group_cmd->add_subcommand("dump", "Print the table of a named group or recipe");
  dump_cmd->add_option("NAME", dump_name, "cyclic:m, dihedral:m, heisenberg:p, semidirect:p,k,m, redei:p,q,u, ...");
  dump_cmd->add_option("--recipe", dump_recipe, "Witness recipe text");
  auto *load_cmd = group_cmd->add_subcommand("load", "Parse a table file and print it back");
  load_cmd->add_option("PATH", load_path)->required();
  auto *check_cmd = group_cmd->add_subcommand("check", "Validate a table file and report its properties");
  check_cmd->add_option("PATH", check_path)->required();

  try {
    app.parse(argc, argv);
  } catch (CLI::CallForHelp const &e) {
    return app.exit(e);
  } catch (CLI::ParseError const &e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*classify_cmd)
      return cmd_classify(ca);
    if (*witness_cmd)
      return cmd_witness(wa);
    if (*verify_cmd)
      return cmd_verify(va);
    if (*dump_cmd)
      return cmd_group_dump(dump_name, dump_recipe);
    if (*load_cmd)
      return cmd_group_load(load_path);
    if (*check_cmd)
      return cmd_group_check(check_path);
  } catch (UsageError const &e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (std::invalid_argument const &e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (GroupError const &e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (std::exception const &e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFailure;
  }
  return kUsage;
}
