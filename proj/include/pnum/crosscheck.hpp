#pragma once

/// @file crosscheck.hpp
/// @brief Binds the arithmetic predicates to group-level ground truth.
///
/// Negative verdicts are confirmed by building the diagnosed witness and
/// running the matching group test on it. Positive verdicts are sampled with
/// a deterministic battery of groups of order n.

#include <algorithm>
#include <exception>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "analysis.hpp"
#include "classify.hpp"
#include "constructors.hpp"

namespace pnum {

enum class VerificationStatus { confirmed_negative, sampled_positive, skipped_cap };

inline std::string_view to_string(VerificationStatus s) {
  switch (s) {
  case VerificationStatus::confirmed_negative: return "confirmed_negative";
  case VerificationStatus::sampled_positive: return "sampled_positive";
  case VerificationStatus::skipped_cap: return "skipped_cap";
  }
  return "?";
}

struct VerificationRecord {
  u64 n = 1;
  Property property = Property::cyclic;
  bool predicate_verdict = false;
  std::optional<WitnessRecipe> witness_built;
  std::optional<bool> group_verdict;
  VerificationStatus status = VerificationStatus::skipped_cap;
  /// Battery members checked for a sampled positive, as " x "-joined names.
  std::vector<std::string> sampled;

  /// The report's recipe column.
  std::string recipe_text() const {
    if (witness_built)
      return serialize(*witness_built);
    if (sampled.empty())
      return "-";
    std::string s;
    for (auto const &g : sampled)
      s += (s.empty() ? "" : "; ") + g;
    return s;
  }
};

/// A predicate disagreed with a constructed group, or a suite invariant broke.
class VerificationFailure : public std::runtime_error {
public:
  VerificationFailure(u64 n, Property prop, std::string recipe, std::string const &what)
      : std::runtime_error("n=" + std::to_string(n) + " property=" + std::string(to_string(prop)) +
                           " recipe=" + recipe + ": " + what),
        n_(n), property_(prop), recipe_(std::move(recipe)) {}

  u64 n() const { return n_; }
  Property property() const { return property_; }
  std::string const &recipe() const { return recipe_; }

private:
  u64 n_;
  Property property_;
  std::string recipe_;
};

struct CrosscheckLimits {
  /// Largest witness or battery order that is built.
  u64 cap = 300;
};

/// Builds the witness for one diagnosis and confirms it fails the property.
/// Nilpotency witnesses must also fail the upper central series test, and
/// supersolvability witnesses must be solvable.
inline VerificationRecord verify_diagnosis(u64 n, ViolationDiagnosis const &d, CrosscheckLimits limits = {}) {
  VerificationRecord rec{n, d.property, false, recipe_for(n, d), std::nullopt, VerificationStatus::skipped_cap, {}};
  if (n > limits.cap)
    return rec;
  auto recipe_text = serialize(*rec.witness_built);
  auto fail = [&](std::string const &what) { return VerificationFailure(n, d.property, recipe_text, what); };
  auto g = make_witness(*rec.witness_built, {static_cast<std::size_t>(std::max<u64>(limits.cap, 1))});
  if (g.order() != n)
    throw fail("witness has order " + std::to_string(g.order()));
  rec.group_verdict = group_has(d.property, g);
  if (*rec.group_verdict)
    throw fail("witness has the property the predicate rules out");
  if (d.property == Property::nilpotent && is_nilpotent_by_central_series(g))
    throw fail("witness is nilpotent by its upper central series");
  if (d.property == Property::supersolvable && !is_solvable_group(g))
    throw fail("supersolvability witness is not solvable");
  rec.status = VerificationStatus::confirmed_negative;
  return rec;
}

/// Confirms the first diagnosis at n. The predicate must be false.
inline VerificationRecord verify_negative(u64 n, Property prop, CrosscheckLimits limits = {}) {
  if (holds(prop, n))
    throw std::invalid_argument("verify_negative: " + std::to_string(n) + " is a " +
                                std::string(to_string(prop)) + " number");
  return verify_diagnosis(n, diagnose(n, prop).front(), limits);
}

/// Confirms every diagnosis at n.
inline std::vector<VerificationRecord> verify_all_negatives(u64 n, Property prop, CrosscheckLimits limits = {}) {
  if (holds(prop, n))
    throw std::invalid_argument("verify_all_negatives: " + std::to_string(n) + " is a " +
                                std::string(to_string(prop)) + " number");
  std::vector<VerificationRecord> out;
  for (auto const &d : diagnose(n, prop))
    out.push_back(verify_diagnosis(n, d, limits));
  return out;
}

// ---------------------------------------------------------------------------
// Positive battery
// ---------------------------------------------------------------------------

/// Factorizations of n into factors >= 2 in non-decreasing order, sorted by
/// length and then lexicographically. multiplicative_partitions(1) = {{}}.
inline std::vector<std::vector<u64>> multiplicative_partitions(u64 n) {
  std::vector<std::vector<u64>> out;
  std::vector<u64> cur;
  auto rec = [&](auto &self, u64 rest, u64 min_factor) -> void {
    if (rest == 1) {
      out.push_back(cur);
      return;
    }
    for (u64 d = min_factor; d <= rest / d; ++d) {
      if (rest % d)
        continue;
      cur.push_back(d);
      self(self, rest / d, d);
      cur.pop_back();
    }
    if (rest >= min_factor) {
      cur.push_back(rest);
      out.push_back(cur);
      cur.pop_back();
    }
  };
  rec(rec, n, 2);
  std::sort(out.begin(), out.end(), [](auto const &a, auto const &b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  return out;
}

/// One battery member: named pieces (see make_named) multiplied directly.
struct BatteryEntry {
  std::vector<std::string> pieces;

  std::string name() const {
    std::string s;
    for (auto const &p : pieces)
      s += (s.empty() ? "" : " x ") + p;
    return s.empty() ? "cyclic:1" : s;
  }

  FiniteGroup build(TableLimits limits = {}) const {
    if (pieces.empty())
      return make_cyclic(1, limits);
    auto g = make_named(pieces.front(), limits);
    for (std::size_t i = 1; i < pieces.size(); ++i)
      g = direct_product(g, make_named(pieces[i], limits), limits);
    return g;
  }
};

namespace detail {

/// Nonabelian pieces of the constructor vocabulary whose order divides n,
/// paired with their order.
inline std::vector<std::pair<std::string, u64>> nonabelian_pieces(u64 n) {
  auto f = factorize(n);
  std::vector<std::pair<std::string, u64>> out;
  auto divides_n = [&](u64 d) { return d <= n && n % d == 0; };
  auto str = [](auto... xs) {
    std::string s;
    ((s += (s.empty() ? "" : ",") + std::to_string(xs)), ...);
    return s;
  };
  for (auto const &[p, a] : f)
    for (auto const &[m, b] : f) {
      if (p == m)
        continue;
      u64 k = multiplicative_order(p % m, m);
      if (k > a)
        continue;
      u64 d = checked_mul(checked_pow(p, static_cast<unsigned>(k)), m);
      if (divides_n(d))
        out.emplace_back("semidirect:" + str(p, k, m), d);
    }
  for (auto const &[p, a] : f)
    if (a >= 3)
      out.emplace_back("heisenberg:" + str(p), p * p * p);
  for (auto const &[p, a] : f)
    for (auto const &[q, b] : f) {
      if (p == q)
        continue;
      u64 v = multiplicative_order(q % p, p);
      if (v >= 2 && v <= b)
        out.emplace_back("redei:" + str(p, q, 1), p * checked_pow(q, static_cast<unsigned>(v)));
    }
  for (auto const &[p, a] : f)
    for (auto const &[q, b] : f) {
      if (p == q || b < p || (q - 1) % p)
        continue;
      u64 qp = checked_pow(q, static_cast<unsigned>(p));
      for (auto const &[r, c] : f)
        if (r != p && r != q && (r - 1) % p == 0 && (q - 1) % r == 0 && divides_n(p * r * qp))
          out.emplace_back("case_f2:" + str(p, r, q), p * r * qp);
      bool p2 = (q - 1) % (p * p) == 0;
      if (!p2 && a >= 2)
        out.emplace_back("case_f3:" + str(p, q), p * p * qp);
      if (p2 && a >= 3)
        out.emplace_back("case_f4:" + str(p, q), p * p * p * qp);
    }
  return out;
}

} // namespace detail

/// Deterministic battery of groups of order n: products of cyclic groups over
/// the multiplicative partitions of n, then each nonabelian piece times the
/// products of cyclic groups filling up its cofactor. Truncated to budget.
inline std::vector<BatteryEntry> positive_battery(u64 n, std::size_t budget) {
  std::vector<BatteryEntry> out;
  auto cyclic_names = [](std::vector<u64> const &part) {
    std::vector<std::string> v;
    for (u64 m : part)
      v.push_back("cyclic:" + std::to_string(m));
    return v;
  };
  for (auto const &part : multiplicative_partitions(n)) {
    if (out.size() >= budget)
      return out;
    out.push_back({cyclic_names(part)});
  }
  for (auto const &[piece, d] : detail::nonabelian_pieces(n))
    for (auto const &part : multiplicative_partitions(n / d)) {
      if (out.size() >= budget)
        return out;
      auto names = cyclic_names(part);
      names.insert(names.begin(), piece);
      out.push_back({names});
    }
  return out;
}

/// Samples the battery at n and checks every member has the property. The
/// predicate must be true.
inline VerificationRecord verify_positive(u64 n, Property prop, std::size_t sample_budget,
                                          CrosscheckLimits limits = {}) {
  if (!holds(prop, n))
    throw std::invalid_argument("verify_positive: " + std::to_string(n) + " is not a " +
                                std::string(to_string(prop)) + " number");
  VerificationRecord rec{n, prop, true, std::nullopt, std::nullopt, VerificationStatus::skipped_cap, {}};
  if (n > limits.cap)
    return rec;
  TableLimits tl{static_cast<std::size_t>(std::max<u64>(limits.cap, 1))};
  for (auto const &entry : positive_battery(n, sample_budget)) {
    auto g = entry.build(tl);
    if (g.order() != n)
      throw VerificationFailure(n, prop, entry.name(), "battery member has order " + std::to_string(g.order()));
    if (!group_has(prop, g))
      throw VerificationFailure(n, prop, entry.name(), "battery member lacks the property");
    rec.sampled.push_back(entry.name());
  }
  rec.group_verdict = true;
  rec.status = VerificationStatus::sampled_positive;
  return rec;
}

// ---------------------------------------------------------------------------
// Suite
// ---------------------------------------------------------------------------

struct SuiteOptions {
  u64 max_n = 300;
  std::vector<Property> properties{kAllProperties.begin(), kAllProperties.end()};
  CrosscheckLimits limits{};
  /// Battery members sampled per positive verdict; zero skips sampling.
  std::size_t sample_budget = 3;
  /// Confirm every diagnosis rather than only the first.
  bool all_diagnoses = true;
  unsigned jobs = 1;
};

struct SuiteSummary {
  u64 max_n = 0;
  std::size_t invariant_checks = 0;
  std::size_t confirmed_negative = 0;
  std::size_t sampled_positive = 0;
  std::size_t skipped_cap = 0;
  std::vector<VerificationRecord> records;
};

/// Chain and equivalence invariants of the predicates at a single n.
inline void check_invariants(u64 n) {
  auto r = classify(n);
  auto const &f = r.factorization;
  auto fail = [&](Property p, std::string const &what) { return VerificationFailure(n, p, "-", what); };
  if (r.cyclic && !r.abelian)
    throw fail(Property::cyclic, "cyclic number that is not abelian");
  if (r.abelian && !r.nilpotent)
    throw fail(Property::abelian, "abelian number that is not nilpotent");
  if (r.nilpotent && !r.supersolvable)
    throw fail(Property::nilpotent, "nilpotent number that is not supersolvable");
  if (r.supersolvable && !r.ordered_sylow)
    throw fail(Property::supersolvable, "supersolvable number without ordered Sylow tower");
  if (r.abelian != (is_cube_free(f) && r.nilpotent))
    throw fail(Property::abelian, "abelian differs from cube-free and nilpotent");
  if (r.cyclic != (is_square_free(f) && r.nilpotent))
    throw fail(Property::cyclic, "cyclic differs from square-free and nilpotent");
  if (r.abelian != is_abelian_number_direct(f))
    throw fail(Property::abelian, "the two abelian criteria disagree");
}

/// Records for one n across the selected properties.
inline std::vector<VerificationRecord> verify_order(u64 n, SuiteOptions const &opt) {
  std::vector<VerificationRecord> out;
  for (auto prop : opt.properties) {
    if (!holds(prop, n)) {
      if (opt.all_diagnoses) {
        auto v = verify_all_negatives(n, prop, opt.limits);
        out.insert(out.end(), v.begin(), v.end());
      } else {
        out.push_back(verify_negative(n, prop, opt.limits));
      }
    } else if (opt.sample_budget > 0) {
      out.push_back(verify_positive(n, prop, opt.sample_budget, opt.limits));
    }
  }
  return out;
}

/// Runs invariants over [1, max_n], then confirms negatives and samples
/// positives. Throws VerificationFailure at the first failure, taking the
/// smallest failing n when running in parallel. Records are ordered by n.
inline SuiteSummary run_suite(SuiteOptions const &opt) {
  if (opt.max_n < 1)
    throw std::invalid_argument("run_suite: max_n must be at least 1");
  SuiteSummary s;
  s.max_n = opt.max_n;
  for (u64 n = 1; n <= opt.max_n; ++n)
    check_invariants(n);
  s.invariant_checks = opt.max_n;

  std::vector<std::vector<VerificationRecord>> per_n(opt.max_n + 1);
  std::vector<std::exception_ptr> errors(opt.max_n + 1);
  unsigned jobs = std::max(1u, opt.jobs);
  auto worker = [&](unsigned id) {
    for (u64 n = 1 + id; n <= opt.max_n; n += jobs) {
      try {
        per_n[n] = verify_order(n, opt);
      } catch (...) {
        errors[n] = std::current_exception();
        return;
      }
    }
  };
  if (jobs == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < jobs; ++i)
      pool.emplace_back(worker, i);
    for (auto &t : pool)
      t.join();
  }
  for (auto const &e : errors)
    if (e)
      std::rethrow_exception(e);
  for (auto &v : per_n)
    for (auto &r : v) {
      switch (r.status) {
      case VerificationStatus::confirmed_negative: ++s.confirmed_negative; break;
      case VerificationStatus::sampled_positive: ++s.sampled_positive; break;
      case VerificationStatus::skipped_cap: ++s.skipped_cap; break;
      }
      s.records.push_back(std::move(r));
    }
  return s;
}

/// Tab-separated report: header, then one line per record.
inline void write_report(std::ostream &os, std::vector<VerificationRecord> const &records) {
  os << "n\tproperty\tstatus\trecipe\n";
  for (auto const &r : records)
    os << r.n << '\t' << to_string(r.property) << '\t' << to_string(r.status) << '\t' << r.recipe_text() << '\n';
}

} // namespace pnum
