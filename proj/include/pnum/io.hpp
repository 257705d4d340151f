#pragma once

/// @file io.hpp
/// @brief JSON, CSV and table renderings of classification reports and
/// verification records, plus the newline-delimited JSON cache.
///
/// Requires nlohmann/json (json.hpp) on the include path.

#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "classify.hpp"
#include "crosscheck.hpp"

namespace pnum {

using ojson = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// JSON
// ---------------------------------------------------------------------------

inline ojson to_json(ViolationDiagnosis const &d) {
  ojson params = ojson::object();
  for (auto const &p : d.params)
    params[p.name] = p.value;
  return ojson{{"property", to_string(d.property)}, {"kind", to_string(d.kind)}, {"params", params}};
}

inline ViolationDiagnosis diagnosis_from_json(ojson const &j) {
  ViolationDiagnosis d;
  auto prop = parse_property(j.at("property").get<std::string>());
  auto kind = parse_violation_kind(j.at("kind").get<std::string>());
  if (!prop || !kind)
    throw std::invalid_argument("diagnosis_from_json: unknown property or kind");
  d.property = *prop;
  d.kind = *kind;
  for (auto const &[name, value] : j.at("params").items())
    d.params.push_back({name, value.get<u64>()});
  return d;
}

/// Keys in order: n, factorization, cyclic, abelian, nilpotent,
/// supersolvable, ordered_sylow, diagnoses, then abelian_count when n is an
/// abelian number. The factorization is a list of [p, a] pairs.
inline ojson to_json(ClassificationReport const &r) {
  ojson fac = ojson::array();
  for (auto const &[p, a] : r.factorization)
    fac.push_back({p, a});
  ojson diags = ojson::array();
  for (auto const &d : r.diagnoses)
    diags.push_back(to_json(d));
  ojson j{{"n", r.n},
          {"factorization", fac},
          {"cyclic", r.cyclic},
          {"abelian", r.abelian},
          {"nilpotent", r.nilpotent},
          {"supersolvable", r.supersolvable},
          {"ordered_sylow", r.ordered_sylow},
          {"diagnoses", diags}};
  if (r.abelian_count)
    j["abelian_count"] = *r.abelian_count;
  return j;
}

inline ClassificationReport report_from_json(ojson const &j) {
  ClassificationReport r;
  r.n = j.at("n").get<u64>();
  r.factorization.n = r.n;
  for (auto const &pa : j.at("factorization"))
    r.factorization.factors.push_back({pa.at(0).get<u64>(), pa.at(1).get<unsigned>()});
  r.cyclic = j.at("cyclic").get<bool>();
  r.abelian = j.at("abelian").get<bool>();
  r.nilpotent = j.at("nilpotent").get<bool>();
  r.supersolvable = j.at("supersolvable").get<bool>();
  r.ordered_sylow = j.at("ordered_sylow").get<bool>();
  for (auto const &d : j.at("diagnoses"))
    r.diagnoses.push_back(diagnosis_from_json(d));
  if (j.contains("abelian_count"))
    r.abelian_count = j.at("abelian_count").get<u64>();
  return r;
}

inline ojson to_json(VerificationRecord const &r) {
  ojson j{{"n", r.n},
          {"property", to_string(r.property)},
          {"predicate_verdict", r.predicate_verdict},
          {"witness", r.witness_built ? ojson(serialize(*r.witness_built)) : ojson(nullptr)},
          {"group_verdict", r.group_verdict ? ojson(*r.group_verdict) : ojson(nullptr)},
          {"status", to_string(r.status)}};
  j["sampled"] = r.sampled;
  return j;
}

inline VerificationRecord record_from_json(ojson const &j) {
  VerificationRecord r;
  r.n = j.at("n").get<u64>();
  auto prop = parse_property(j.at("property").get<std::string>());
  if (!prop)
    throw std::invalid_argument("record_from_json: unknown property");
  r.property = *prop;
  r.predicate_verdict = j.at("predicate_verdict").get<bool>();
  if (!j.at("witness").is_null())
    r.witness_built = parse_recipe(j.at("witness").get<std::string>());
  if (!j.at("group_verdict").is_null())
    r.group_verdict = j.at("group_verdict").get<bool>();
  auto status = j.at("status").get<std::string>();
  bool found = false;
  for (auto s : {VerificationStatus::confirmed_negative, VerificationStatus::sampled_positive,
                 VerificationStatus::skipped_cap})
    if (to_string(s) == status) {
      r.status = s;
      found = true;
    }
  if (!found)
    throw std::invalid_argument("record_from_json: unknown status '" + status + "'");
  r.sampled = j.at("sampled").get<std::vector<std::string>>();
  return r;
}

// ---------------------------------------------------------------------------
// Text renderings
// ---------------------------------------------------------------------------

/// "kind(p=3,q=2,v=2)" with the property prefixed when requested.
inline std::string short_form(ViolationDiagnosis const &d, bool with_property = true) {
  std::string s;
  if (with_property)
    s += std::string(to_string(d.property)) + ":";
  s += std::string(to_string(d.kind)) + "(";
  for (std::size_t i = 0; i < d.params.size(); ++i)
    s += (i ? "," : "") + d.params[i].name + "=" + std::to_string(d.params[i].value);
  return s + ")";
}

/// CSV columns, fixed: n, factorization, cyclic, abelian, nilpotent,
/// supersolvable, ordered_sylow, abelian_count, diagnoses. Verdicts are
/// "true"/"false"; diagnoses are short forms joined by ';'.
inline std::string csv_header() {
  return "n,factorization,cyclic,abelian,nilpotent,supersolvable,ordered_sylow,abelian_count,diagnoses";
}

inline std::string to_csv(ClassificationReport const &r) {
  auto b = [](bool x) { return x ? "true" : "false"; };
  std::string diags;
  for (auto const &d : r.diagnoses)
    diags += (diags.empty() ? "" : ";") + short_form(d);
  std::ostringstream os;
  os << r.n << ',' << to_string(r.factorization) << ',' << b(r.cyclic) << ',' << b(r.abelian) << ','
     << b(r.nilpotent) << ',' << b(r.supersolvable) << ',' << b(r.ordered_sylow) << ','
     << (r.abelian_count ? std::to_string(*r.abelian_count) : "") << ",\"" << diags << '"';
  return os.str();
}

inline std::string table_header() {
  char buf[160];
  std::snprintf(buf, sizeof buf, "%-10s %-24s %-3s %-3s %-3s %-3s %-3s %-6s %s", "n", "factorization", "cyc", "abl",
                "nil", "sup", "ost", "#ab", "first diagnoses");
  return buf;
}

/// One aligned row with T/F verdicts and the first diagnosis per failing
/// property.
inline std::string to_table_row(ClassificationReport const &r) {
  auto b = [](bool x) { return x ? "T" : "F"; };
  std::string diags;
  for (auto prop : kAllProperties)
    for (auto const &d : r.diagnoses)
      if (d.property == prop) {
        diags += (diags.empty() ? "" : " ") + short_form(d);
        break;
      }
  char buf[160];
  std::snprintf(buf, sizeof buf, "%-10llu %-24s %-3s %-3s %-3s %-3s %-3s %-6s",
                static_cast<unsigned long long>(r.n), to_string(r.factorization).c_str(), b(r.cyclic),
                b(r.abelian), b(r.nilpotent), b(r.supersolvable), b(r.ordered_sylow),
                r.abelian_count ? std::to_string(*r.abelian_count).c_str() : "-");
  std::string row = buf;
  if (!diags.empty())
    return row + " " + diags;
  return row.erase(row.find_last_not_of(' ') + 1);
}

// ---------------------------------------------------------------------------
// Classification cache
// ---------------------------------------------------------------------------

/// Newline-delimited JSON keyed by n. Each line is the compact dump of a
/// report, so a cache hit reproduces exactly the line a fresh computation
/// would write.
class ClassificationCache {
public:
  explicit ClassificationCache(std::string path) : path_(std::move(path)) {
    std::ifstream in(path_);
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty())
        continue;
      auto j = ojson::parse(line);
      lines_[j.at("n").get<u64>()] = line;
    }
  }

  /// The cached compact JSON line for n, computing and appending it on a miss.
  std::string const &line(u64 n) {
    auto it = lines_.find(n);
    if (it != lines_.end()) {
      ++hits_;
      return it->second;
    }
    ++misses_;
    pending_.push_back(n);
    return lines_[n] = to_json(classify(n)).dump();
  }

  /// Appends newly computed lines to the file.
  void flush() {
    if (pending_.empty())
      return;
    std::ofstream out(path_, std::ios::app);
    if (!out)
      throw std::runtime_error("cannot write cache '" + path_ + "'");
    for (u64 n : pending_)
      out << lines_.at(n) << '\n';
    pending_.clear();
  }

  std::size_t hits() const { return hits_; }
  std::size_t misses() const { return misses_; }

private:
  std::string path_;
  std::map<u64, std::string> lines_;
  std::vector<u64> pending_;
  std::size_t hits_ = 0;
  std::size_t misses_ = 0;
};

} // namespace pnum
