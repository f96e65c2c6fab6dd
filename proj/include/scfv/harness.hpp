// Copyright 2026 The scfv Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Exhaustive and sampled verification over universes of social choice
// functions, plus the replicated-society quotient reduction.

#pragma once

#include <algorithm>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <mutex>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "scfv/domains.hpp"
#include "scfv/error.hpp"
#include "scfv/parallel.hpp"
#include "scfv/prefs.hpp"
#include "scfv/properties.hpp"
#include "scfv/scf.hpp"

namespace scfv {

inline constexpr std::uint64_t kDefaultTableGuard = 100'000'000;

// Universe of all total tables from the profile space into `target`.
struct EnumerationSpec {
  DomainPtr domain;
  AlternativeList target;
  std::optional<std::uint64_t> limit;
};

// |target|^|profiles|, or nullopt on overflow.
inline std::optional<std::uint64_t> table_count(const EnumerationSpec& spec) {
  const auto profiles = spec.domain->profile_count();
  if (!profiles) return std::nullopt;
  std::uint64_t total = 1;
  const std::uint64_t r = spec.target.size();
  for (std::uint64_t i = 0; i < *profiles; ++i) {
    if (r > 1 && total > std::numeric_limits<std::uint64_t>::max() / r) return std::nullopt;
    total *= r;
  }
  return total;
}

namespace detail {

inline void check_spec(const EnumerationSpec& spec) {
  if (!spec.domain) throw ArgumentError("enumeration spec needs a domain");
  if (spec.target.empty()) throw ArgumentError("target range must be non-empty");
  AlternativeList sorted = spec.target;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw ArgumentError("target range has duplicates");
  for (Alternative a : sorted)
    if (to_index(a) >= spec.domain->k()) throw ArgumentError("target outside the alternatives");
}

// Number of tables to visit, honouring `limit` and the guard.
inline std::uint64_t universe_size(const EnumerationSpec& spec,
                                   std::uint64_t guard = kDefaultTableGuard) {
  check_spec(spec);
  const auto total = table_count(spec);
  if (spec.limit) return total ? std::min(*total, *spec.limit) : *spec.limit;
  if (!total || *total > guard)
    throw ResourceError("table universe exceeds the guard of " + std::to_string(guard) +
                        "; set a limit");
  return *total;
}

}  // namespace detail

// Table number `index` read as a base-|target| numeral, first profile most
// significant, so ascending numbers are lexicographic tables.
inline std::vector<Alternative> decode_table(const EnumerationSpec& spec, std::uint64_t index) {
  AlternativeList target = spec.target;
  std::sort(target.begin(), target.end());
  const std::uint64_t profiles = spec.domain->checked_profile_count(kDefaultProfileGuard);
  std::vector<Alternative> table(profiles, target.front());
  const std::uint64_t r = target.size();
  for (std::uint64_t i = profiles; i-- > 0 && index > 0;) {
    table[i] = target[index % r];
    index /= r;
  }
  return table;
}

// Visits tables [0, universe) in ascending order within each chunk; chunks
// run in parallel. `visit(index, scf)` must be thread-safe.
template <class Visit>
void for_each_scf(const EnumerationSpec& spec, unsigned workers, Visit&& visit,
                  std::uint64_t guard = kDefaultTableGuard) {
  const std::uint64_t universe = detail::universe_size(spec, guard);
  AlternativeList target = spec.target;
  std::sort(target.begin(), target.end());
  std::vector<std::size_t> digit_of(spec.domain->k(), 0);
  for (std::size_t i = 0; i < target.size(); ++i) digit_of[to_index(target[i])] = i;
  parallel_for(universe, workers, [&](std::uint64_t begin, std::uint64_t end) {
    std::vector<Alternative> table = decode_table(spec, begin);
    for (std::uint64_t i = begin; i < end; ++i) {
      visit(i, Scf::from_table(spec.domain, table));
      for (std::size_t j = table.size(); j-- > 0;) {
        const std::size_t d = digit_of[to_index(table[j])];
        if (d + 1 < target.size()) {
          table[j] = target[d + 1];
          break;
        }
        table[j] = target.front();
      }
    }
  });
}

inline std::vector<Scf> enumerate_scfs(const EnumerationSpec& spec,
                                       std::uint64_t guard = kDefaultTableGuard) {
  std::vector<Scf> out;
  for_each_scf(spec, 1, [&](std::uint64_t, Scf f) { out.push_back(std::move(f)); }, guard);
  return out;
}

// ---------------------------------------------------------------------------
// Verdicts.

struct Counterexample {
  Scf scf;
  std::vector<PropertyReport> reports;
};

struct TheoremVerdict {
  std::string theorem;
  std::string universe;
  std::string status;  // holds | violated | inadmissible | witness-found | budget-exhausted | provably-futile
  std::string note;
  bool holds = true;
  std::uint64_t checked = 0;
  std::map<std::string, std::uint64_t> counts;
  std::optional<std::uint64_t> seed;
  std::optional<Counterexample> counterexample;
  std::chrono::nanoseconds elapsed{0};
};

// Per-table property flags over a universe, with the first table (in
// canonical order) falling into each discrepancy class.
struct UniverseSurvey {
  std::uint64_t tables = 0;
  std::uint64_t isp = 0, gsp = 0, pr = 0, apr = 0;
  std::optional<std::uint64_t> gsp_ne_apr, isp_not_pr, pr_not_apr, gsp_not_isp, isp_not_gsp;
};

inline UniverseSurvey survey_universe(const EnumerationSpec& spec, unsigned workers,
                                      std::uint64_t guard = kDefaultTableGuard) {
  UniverseSurvey s;
  std::mutex m;
  auto keep_min = [](std::optional<std::uint64_t>& slot, std::uint64_t i) {
    if (!slot || i < *slot) slot = i;
  };
  for_each_scf(
      spec, workers,
      [&](std::uint64_t i, const Scf& f) {
        CheckOptions opt;
        const bool isp = check_isp(f, opt).holds;
        const bool gsp = check_gsp(f, opt).holds;
        const auto rev = check_reversal(f, opt);
        const bool pr = rev.pr.holds, apr = rev.apr.holds;
        std::lock_guard lock(m);
        ++s.tables;
        s.isp += isp;
        s.gsp += gsp;
        s.pr += pr;
        s.apr += apr;
        if (gsp != apr) keep_min(s.gsp_ne_apr, i);
        if (isp && !pr) keep_min(s.isp_not_pr, i);
        if (pr && !apr) keep_min(s.pr_not_apr, i);
        if (gsp && !isp) keep_min(s.gsp_not_isp, i);
        if (isp && !gsp) keep_min(s.isp_not_gsp, i);
      },
      guard);
  return s;
}

namespace detail {

inline std::string describe_universe(const EnumerationSpec& spec, std::uint64_t tables) {
  const Domain& d = *spec.domain;
  std::string out = std::to_string(d.voters()) + " voters; k = " + std::to_string(d.k()) +
                    "; feasible sizes ";
  for (std::size_t v = 0; v < d.voters(); ++v)
    out += (v ? "," : "") + std::to_string(d.feasible(v).size());
  out += "; target {";
  AlternativeList target = spec.target;
  std::sort(target.begin(), target.end());
  for (std::size_t i = 0; i < target.size(); ++i)
    out += (i ? "," : "") + d.alternatives().name(target[i]);
  out += "}; " + std::to_string(tables) + " tables";
  return out;
}

inline Counterexample make_counterexample(const EnumerationSpec& spec, std::uint64_t index,
                                          const std::vector<Property>& props) {
  Scf f = Scf::from_table(spec.domain, decode_table(spec, index));
  Counterexample ce{f, {}};
  for (Property p : props) ce.reports.push_back(check_property(f, p));
  return ce;
}

inline void fill_survey_counts(TheoremVerdict& v, const UniverseSurvey& s) {
  v.checked = s.tables;
  v.counts["tables"] = s.tables;
  v.counts["isp"] = s.isp;
  v.counts["gsp"] = s.gsp;
  v.counts["pr"] = s.pr;
  v.counts["apr"] = s.apr;
}

inline bool all_feasible_complete(const Domain& d, unsigned workers) {
  for (std::size_t v = 0; v < d.voters(); ++v) {
    if (v > 0 && d.feasible(v) == d.feasible(v - 1)) continue;
    if (!is_complete(d.feasible(v), workers).complete) return false;
  }
  return true;
}

template <class F>
TheoremVerdict timed_verdict(F&& body) {
  const auto start = std::chrono::steady_clock::now();
  TheoremVerdict v = body();
  v.elapsed = std::chrono::steady_clock::now() - start;
  return v;
}

}  // namespace detail

// GSP and APR agree on every table of the universe.
inline TheoremVerdict verify_prop_apr_gsp(const EnumerationSpec& spec, unsigned workers = 1) {
  return detail::timed_verdict([&] {
    const auto s = survey_universe(spec, workers);
    TheoremVerdict v;
    v.theorem = "prop-apr-gsp";
    v.universe = detail::describe_universe(spec, s.tables);
    detail::fill_survey_counts(v, s);
    v.counts["gsp_ne_apr"] = s.gsp_ne_apr ? 1 : 0;
    v.holds = !s.gsp_ne_apr;
    v.status = v.holds ? "holds" : "violated";
    if (s.gsp_ne_apr)
      v.counterexample =
          detail::make_counterexample(spec, *s.gsp_ne_apr, {Property::kGsp, Property::kApr});
    return v;
  });
}

// Range at most three: every ISP table has PR; hence #ISP = #GSP.
inline TheoremVerdict verify_thm_range3(const EnumerationSpec& spec, unsigned workers = 1) {
  detail::check_spec(spec);
  if (spec.target.size() > 3) throw ArgumentError("thm-range3 needs a target range of size <= 3");
  return detail::timed_verdict([&] {
    const auto s = survey_universe(spec, workers);
    TheoremVerdict v;
    v.theorem = "thm-range3";
    v.universe = detail::describe_universe(spec, s.tables);
    detail::fill_survey_counts(v, s);
    v.holds = !s.isp_not_pr && s.isp == s.gsp;
    v.status = v.holds ? "holds" : "violated";
    if (s.isp_not_pr) {
      v.counterexample =
          detail::make_counterexample(spec, *s.isp_not_pr, {Property::kIsp, Property::kPr});
    } else if (s.isp_not_gsp) {
      v.counterexample =
          detail::make_counterexample(spec, *s.isp_not_gsp, {Property::kIsp, Property::kGsp});
    }
    return v;
  });
}

// PR => APR <=> GSP => ISP on every table, and ISP => PR as well when the
// range is at most three or every feasible set is complete.
inline TheoremVerdict verify_summary_equivalence(const EnumerationSpec& spec,
                                                 unsigned workers = 1) {
  detail::check_spec(spec);
  return detail::timed_verdict([&] {
    const auto s = survey_universe(spec, workers);
    const bool collapse =
        spec.target.size() <= 3 || detail::all_feasible_complete(*spec.domain, workers);
    TheoremVerdict v;
    v.theorem = "summary-equivalence";
    v.universe = detail::describe_universe(spec, s.tables);
    detail::fill_survey_counts(v, s);
    v.note = collapse ? "range <= 3 or complete domains: all four properties must coincide"
                      : "no collapse hypothesis: only the implication chain is checked";
    std::optional<std::pair<std::uint64_t, std::vector<Property>>> bad;
    auto consider = [&](const std::optional<std::uint64_t>& i, std::vector<Property> p) {
      if (i && (!bad || *i < bad->first)) bad.emplace(*i, std::move(p));
    };
    consider(s.pr_not_apr, {Property::kPr, Property::kApr});
    consider(s.gsp_ne_apr, {Property::kGsp, Property::kApr});
    consider(s.gsp_not_isp, {Property::kGsp, Property::kIsp});
    if (collapse) consider(s.isp_not_pr, {Property::kIsp, Property::kPr});
    v.holds = !bad;
    v.status = v.holds ? "holds" : "violated";
    if (bad) v.counterexample = detail::make_counterexample(spec, bad->first, bad->second);
    return v;
  });
}

// Specimen check for complete domains: certify completeness and ISP, then
// scan every ordered pair for PR.
inline TheoremVerdict verify_thm_complete(const Scf& f, unsigned workers = 1,
                                          std::uint64_t guard = kDefaultProfileGuard) {
  return detail::timed_verdict([&] {
    const Domain& d = f.domain();
    TheoremVerdict v;
    v.theorem = "thm-complete";
    const std::uint64_t profiles = d.checked_profile_count(guard);
    v.universe = std::to_string(d.voters()) + " voters; k = " + std::to_string(d.k()) + "; " +
                 std::to_string(profiles) + " profiles; rule " +
                 (f.rule() ? f.rule()->name : std::string("table"));
    v.counts["profiles"] = profiles;
    for (std::size_t i = 0; i < d.voters(); ++i) {
      if (i > 0 && d.feasible(i) == d.feasible(i - 1)) continue;
      const auto c = is_complete(d.feasible(i), workers);
      v.counts["completeness_checks"] += c.checked;
      if (!c.complete) {
        v.status = "inadmissible";
        v.note = "feasible set of voter " + std::to_string(i + 1) + " is not complete";
        return v;
      }
    }
    CheckOptions opt;
    opt.workers = workers;
    opt.guard = guard;
    const auto isp = check_isp(f, opt);
    v.counts["isp_cases"] = isp.checked;
    if (!isp.holds) {
      v.status = "inadmissible";
      v.note = "scf is not ISP";
      return v;
    }
    const auto pr = check_pr(f, opt);
    v.counts["pr_pairs"] = pr.checked;
    v.checked = pr.checked;
    v.holds = pr.holds;
    v.status = v.holds ? "holds" : "violated";
    if (!pr.holds) v.counterexample = Counterexample{tabulate(f, workers, guard), {isp, pr}};
    return v;
  });
}

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace detail

// Looks for an ISP table without PR. Exhaustive when the universe fits in
// `budget`, otherwise `budget` tables drawn from per-sample generators seeded
// by (seed, sample index). Never claims non-existence beyond what it saw.
inline TheoremVerdict search_isp_not_pr(const EnumerationSpec& spec, std::uint64_t budget,
                                        std::uint64_t seed, unsigned workers = 1) {
  detail::check_spec(spec);
  return detail::timed_verdict([&] {
    TheoremVerdict v;
    v.theorem = "search-isp-not-pr";
    v.seed = seed;
    const auto total = table_count(spec);
    v.universe = detail::describe_universe(spec, total.value_or(0));
    if (spec.target.size() <= 3) {
      v.status = "provably-futile";
      v.note = "target range has at most 3 alternatives: ISP implies PR";
      return v;
    }
    if (detail::all_feasible_complete(*spec.domain, workers)) {
      v.status = "provably-futile";
      v.note = "every feasible set is complete: ISP implies PR";
      return v;
    }
    const bool exhaustive = total && *total <= budget;
    const std::uint64_t count = exhaustive ? *total : budget;
    v.note = exhaustive ? "exhaustive" : "random sampling";
    AlternativeList target = spec.target;
    std::sort(target.begin(), target.end());
    const std::uint64_t profiles = spec.domain->checked_profile_count(kDefaultProfileGuard);

    auto table_for = [&](std::uint64_t i) {
      if (exhaustive) return decode_table(spec, i);
      std::mt19937_64 rng(detail::splitmix64(seed ^ detail::splitmix64(i)));
      std::uniform_int_distribution<std::size_t> pick(0, target.size() - 1);
      std::vector<Alternative> table(profiles);
      for (auto& a : table) a = target[pick(rng)];
      return table;
    };
    const auto hit = find_first<bool>(count, workers, [&](std::uint64_t i) -> std::optional<bool> {
      const Scf f = Scf::from_table(spec.domain, table_for(i));
      if (check_isp(f).holds && !check_pr(f).holds) return true;
      return std::nullopt;
    });
    v.checked = hit ? hit->first + 1 : count;
    v.counts["searched"] = v.checked;
    if (!hit) {
      v.status = "budget-exhausted";
      return v;
    }
    const Scf f = Scf::from_table(spec.domain, table_for(hit->first));
    v.counts["hit_index"] = hit->first;
    v.holds = false;
    v.status = "witness-found";
    v.counterexample = Counterexample{f, {check_isp(f), check_pr(f)}};
    return v;
  });
}

// ---------------------------------------------------------------------------
// Quotient reduction of a large society.

enum class QuotientCase : std::uint8_t {
  kPairDomains,   // class i reports from {W_i, W'_i}; needs range <= 3
  kSharedDomain,  // every class reports from the common complete set
};

struct QuotientClass {
  WeakOrder w;        // common P-bar order of the class
  WeakOrder w_prime;  // common Q-bar order of the class
  std::vector<std::size_t> voters;
};

struct QuotientResult {
  std::vector<QuotientClass> classes;
  std::size_t alpha = 0;
  QuotientCase quotient_case = QuotientCase::kSharedDomain;
  std::optional<Scf> quotient;  // tabulated
  Alternative outcome_p{};
  Alternative outcome_q{};
  bool invariants_hold = false;
  std::size_t samples = 0;
  bool samples_agree = false;
  bool hypotheses_hold = false;
  std::string note;
  std::optional<bool> quotient_pr;
  std::optional<std::pair<std::size_t, std::size_t>> witness_lift;  // (class, voter)
  bool lift_validated = false;
};

struct QuotientOptions {
  unsigned workers = 1;
  std::size_t samples = 100;
  std::uint64_t seed = 1;
  std::uint64_t guard = kDefaultProfileGuard;
};

inline QuotientResult quotient_reduce(const Scf& phi, const Profile& p_bar, const Profile& q_bar,
                                      const QuotientOptions& opt = {}) {
  const Domain& d = phi.domain();
  (void)profile_digits(d, p_bar);
  (void)profile_digits(d, q_bar);

  QuotientResult r;
  std::vector<std::size_t> class_of(d.voters());
  for (std::size_t v = 0; v < d.voters(); ++v) {
    std::size_t i = 0;
    while (i < r.classes.size() &&
           !(r.classes[i].w == p_bar[v] && r.classes[i].w_prime == q_bar[v]))
      ++i;
    if (i == r.classes.size()) r.classes.push_back({p_bar[v], q_bar[v], {}});
    r.classes[i].voters.push_back(v);
    class_of[v] = i;
  }
  r.alpha = r.classes.size();
  r.outcome_p = phi.evaluate(p_bar);
  r.outcome_q = phi.evaluate(q_bar);

  auto blow_up = [&](std::span<const WeakOrder> pi) {
    Profile full(d.voters());
    for (std::size_t v = 0; v < full.size(); ++v) full[v] = pi[class_of[v]];
    return full;
  };
  auto build = [&](std::vector<FeasibleSetPtr> sets) {
    auto qd = std::make_shared<const Domain>(d.alternatives(), std::move(sets));
    Scf rule = Scf::from_rule(qd, RuleSpec{"quotient"}, [&phi, blow_up](std::span<const WeakOrder> pi) {
      const Profile full = blow_up(pi);
      return phi.evaluate_unchecked(full);
    });
    return tabulate(rule, opt.workers, opt.guard);
  };

  const bool shared = d.shares_one_feasible_set();
  const bool shared_complete = shared && is_complete(d.feasible(0), opt.workers).complete;
  if (shared_complete) {
    r.quotient_case = QuotientCase::kSharedDomain;
    r.quotient = build(std::vector<FeasibleSetPtr>(r.alpha, d.feasible_ptr(0)));
  } else {
    r.quotient_case = QuotientCase::kPairDomains;
    std::vector<FeasibleSetPtr> sets;
    for (const auto& c : r.classes)
      sets.push_back(std::make_shared<const FeasibleSet>(
          FeasibleSet::explicit_list({c.w, c.w_prime})));
    r.quotient = build(std::move(sets));
    if (range_of(*r.quotient).size() > 3)
      throw ArgumentError(
          "quotient fits neither case: feasible sets are not one shared complete set and the "
          "pair-domain quotient has range > 3");
  }

  Profile w(r.alpha), w_prime(r.alpha);
  for (std::size_t i = 0; i < r.alpha; ++i) {
    w[i] = r.classes[i].w;
    w_prime[i] = r.classes[i].w_prime;
  }
  r.invariants_hold =
      r.quotient->evaluate(w) == r.outcome_p && r.quotient->evaluate(w_prime) == r.outcome_q;

  // Blow-up consistency on random quotient profiles.
  std::mt19937_64 rng(opt.seed);
  const Domain& qd = r.quotient->domain();
  r.samples_agree = true;
  for (std::size_t s = 0; s < opt.samples; ++s) {
    Profile pi(r.alpha);
    for (std::size_t i = 0; i < r.alpha; ++i) {
      std::uniform_int_distribution<std::size_t> pick(0, qd.feasible(i).size() - 1);
      pi[i] = qd.feasible(i)[pick(rng)];
    }
    if (r.quotient->evaluate(pi) != phi.evaluate(blow_up(pi))) r.samples_agree = false;
    ++r.samples;
  }

  if (r.outcome_p == r.outcome_q) {
    r.note = "outcomes coincide: no witness needed";
    r.hypotheses_hold = true;
    return r;
  }

  CheckOptions copt;
  copt.workers = opt.workers;
  copt.guard = opt.guard;
  const bool gsp = check_gsp(*r.quotient, copt).holds;
  r.hypotheses_hold = gsp;
  if (!gsp) {
    r.note = "quotient is not GSP";
    return r;
  }
  r.note = r.quotient_case == QuotientCase::kSharedDomain
               ? "quotient is GSP on a shared complete feasible set"
               : "quotient is GSP with range <= 3";
  const auto profiles = *qd.profile_count();
  if (profiles <= 20'000) r.quotient_pr = check_pr(*r.quotient, copt).holds;

  const Alternative a = r.outcome_p, b = r.outcome_q;
  for (std::size_t i = 0; i < r.alpha; ++i) {
    const auto& c = r.classes[i];
    if (c.w != c.w_prime && c.w.weakly_prefers(a, b) && c.w_prime.weakly_prefers(b, a)) {
      r.witness_lift = std::make_pair(i, c.voters.front());
      break;
    }
  }
  if (r.witness_lift) {
    // Direct recomputation in the original society.
    const std::size_t v = r.witness_lift->second;
    const Alternative pa = phi.evaluate(p_bar), qb = phi.evaluate(q_bar);
    r.lift_validated = p_bar[v] != q_bar[v] && p_bar[v].weakly_prefers(pa, qb) &&
                       q_bar[v].weakly_prefers(qb, pa);
  }
  return r;
}

inline TheoremVerdict verify_thm_infinite(const Scf& phi, const Profile& p_bar,
                                          const Profile& q_bar, const QuotientOptions& opt = {}) {
  return detail::timed_verdict([&] {
    const auto r = quotient_reduce(phi, p_bar, q_bar, opt);
    TheoremVerdict v;
    v.theorem = "thm-infinite";
    v.seed = opt.seed;
    v.universe = std::to_string(phi.domain().voters()) + " voters in " + std::to_string(r.alpha) +
                 " classes";
    v.counts["alpha"] = r.alpha;
    v.counts["samples"] = r.samples;
    v.checked = r.samples;
    v.note = r.note;
    if (!r.invariants_hold || !r.samples_agree) {
      v.holds = false;
      v.status = "violated";
      v.note = "quotient disagrees with the original scf";
      return v;
    }
    if (r.outcome_p == r.outcome_q) {
      v.status = "holds";
      return v;
    }
    if (!r.hypotheses_hold) {
      v.status = "inadmissible";
      return v;
    }
    v.holds = r.lift_validated && r.quotient_pr.value_or(true);
    v.status = v.holds ? "holds" : "violated";
    return v;
  });
}

// Re-validates a counterexample from its parts alone: witnesses through
// evaluate, holding claims by re-running the checker.
inline bool recheck_counterexample(const Counterexample& ce) {
  for (const auto& r : ce.reports) {
    if (r.holds && std::holds_alternative<std::monostate>(r.witness)) {
      if (!check_property(ce.scf, r.property).holds) return false;
    } else if (!validate_report(ce.scf, r)) {
      return false;
    }
  }
  return true;
}

}  // namespace scfv
