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

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails or exceeds its time limit.

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <mutex>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "scfv/io.hpp"

namespace scfv {
namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Criterion {
  int id;
  std::string name;
  double limit_seconds;
  std::function<Outcome()> run;
};

Outcome fail(std::string why) { return {false, std::move(why)}; }

std::shared_ptr<const FeasibleSet> share(FeasibleSet s) { return std::make_shared<const FeasibleSet>(std::move(s)); }

DomainPtr uniform(std::size_t k, std::size_t n, std::shared_ptr<const FeasibleSet> set) {
  return std::make_shared<const Domain>(AlternativeSet::letters(k), std::vector<FeasibleSetPtr>(n, set));
}

AlternativeList all_alternatives(std::size_t k) {
  AlternativeList out;
  for (std::size_t i = 0; i < k; ++i) out.push_back(alternative(i));
  return out;
}

WeakOrder order(std::string_view text, std::size_t k = 3) { return parse_order(text, AlternativeSet::letters(k)); }

std::shared_ptr<const FeasibleSet> listed(std::initializer_list<std::string_view> orders, std::size_t k = 3) {
  std::vector<WeakOrder> list;
  for (auto o : orders) list.push_back(order(o, k));
  return share(FeasibleSet::explicit_list(std::move(list)));
}

EnumerationSpec strict_universe(std::size_t m) {
  auto all = enumerate_strict_orders(3);
  all.resize(m);
  return {uniform(3, 2, share(FeasibleSet::explicit_list(std::move(all)))), all_alternatives(3), std::nullopt};
}

EnumerationSpec weak_universe() {
  return {uniform(3, 2, listed({"a~b>c", "c>a~b"})), all_alternatives(3), std::nullopt};
}

EnumerationSpec four_alternative_universe() {
  auto d = std::make_shared<const Domain>(
      AlternativeSet::letters(4),
      std::vector<FeasibleSetPtr>{listed({"c>b>a>d", "d>b>a>c"}, 4), listed({"d>b>a>c", "c>a>b>d"}, 4)});
  return {d, all_alternatives(4), std::nullopt};
}

std::string dump(const TheoremVerdict& v) { return verdict_json(v, false).dump(); }

// --- 1 ---------------------------------------------------------------------

Outcome enumeration_counts() {
  // Ordered Bell numbers by a(n) = sum_{j=1..n} C(n, j) a(n - j).
  std::vector<std::uint64_t> bell{1};
  for (std::size_t n = 1; n <= 5; ++n) {
    std::uint64_t sum = 0, c = 1;
    for (std::size_t j = 1; j <= n; ++j) {
      c = c * (n - j + 1) / j;
      sum += c * bell[n - j];
    }
    bell.push_back(sum);
  }
  const std::vector<std::uint64_t> expected{1, 1, 3, 13, 75, 541};
  if (bell != expected) return fail("recurrence oracle disagrees with 1, 3, 13, 75, 541");
  std::ostringstream d;
  std::uint64_t fact = 1;
  for (std::size_t k = 1; k <= 5; ++k) {
    fact *= k;
    const auto weak = enumerate_weak_orders(k).size();
    const auto strict = enumerate_strict_orders(k).size();
    const auto sp = enumerate_single_peaked(k, Axis::identity(k), true).size();
    if (weak != bell[k]) return fail("weak orders k=" + std::to_string(k) + ": " + std::to_string(weak));
    if (strict != fact) return fail("strict orders k=" + std::to_string(k) + ": " + std::to_string(strict));
    if (sp != (std::uint64_t{1} << (k - 1)))
      return fail("single-peaked k=" + std::to_string(k) + ": " + std::to_string(sp));
    d << (k > 1 ? " " : "") << weak;
  }
  return {true, "weak " + d.str() + "; strict k!; single-peaked 2^(k-1)"};
}

// --- 2 ---------------------------------------------------------------------

Outcome apr_equals_gsp() {
  std::ostringstream d;
  for (std::size_t m : {2u, 3u}) {
    const auto spec = strict_universe(m);
    std::mutex mu;
    std::uint64_t tables = 0, discrepancies = 0, gsp = 0;
    for_each_scf(spec, default_parallelism(), [&](std::uint64_t, const Scf& f) {
      const bool g = check_gsp(f).holds, a = check_apr(f).holds;
      std::lock_guard lock(mu);
      ++tables;
      gsp += g;
      discrepancies += g != a;
    });
    const auto v = verify_prop_apr_gsp(spec);
    if (discrepancies != 0 || !v.holds) return fail(std::to_string(discrepancies) + " discrepancies");
    if (tables != (m == 2 ? 81u : 19683u)) return fail("wrong universe size " + std::to_string(tables));
    d << tables << " tables (" << gsp << " GSP = APR); ";
  }
  return {true, d.str() + "0 discrepancies"};
}

// --- 3 ---------------------------------------------------------------------

Outcome range_three() {
  std::ostringstream d;
  for (const auto& spec : {strict_universe(2), strict_universe(3), weak_universe()}) {
    std::mutex mu;
    std::uint64_t isp = 0, gsp = 0, violations = 0;
    for_each_scf(spec, default_parallelism(), [&](std::uint64_t, const Scf& f) {
      const bool i = check_isp(f).holds, g = check_gsp(f).holds;
      const bool p = i ? check_pr(f).holds : true;
      std::lock_guard lock(mu);
      isp += i;
      gsp += g;
      violations += i && !p;
    });
    const auto v = verify_thm_range3(spec);
    if (violations || isp != gsp || !v.holds)
      return fail(std::to_string(violations) + " ISP tables without PR; #ISP " + std::to_string(isp) +
                  " vs #GSP " + std::to_string(gsp));
    d << "#ISP = #GSP = " << isp << "; ";
  }
  return {true, d.str() + "0 violations"};
}

// --- 4 ---------------------------------------------------------------------

Outcome implication_chain() {
  std::ostringstream d;
  for (const auto& spec : {strict_universe(2), strict_universe(3), weak_universe(), four_alternative_universe()}) {
    std::set<std::uint64_t> pr, apr, gsp, isp;
    std::mutex mu;
    for_each_scf(spec, default_parallelism(), [&](std::uint64_t i, const Scf& f) {
      const auto rev = check_reversal(f);
      const bool g = check_gsp(f).holds, s = check_isp(f).holds;
      std::lock_guard lock(mu);
      if (rev.pr.holds) pr.insert(i);
      if (rev.apr.holds) apr.insert(i);
      if (g) gsp.insert(i);
      if (s) isp.insert(i);
    });
    if (!std::includes(apr.begin(), apr.end(), pr.begin(), pr.end())) return fail("PR not within APR");
    if (apr != gsp) return fail("APR differs from GSP");
    if (!std::includes(isp.begin(), isp.end(), gsp.begin(), gsp.end())) return fail("GSP not within ISP");
    d << pr.size() << "<=" << apr.size() << "=" << gsp.size() << "<=" << isp.size() << "; ";
  }
  return {true, d.str() + "0 violations"};
}

// --- 5 ---------------------------------------------------------------------

Outcome completeness() {
  const unsigned w = default_parallelism();
  for (std::size_t k : {3u, 4u})
    if (!is_complete(FeasibleSet::universal_weak(k), w).complete)
      return fail("universal weak k=" + std::to_string(k) + " not certified");
  if (!is_complete(FeasibleSet::single_peaked(Axis::identity(5), true), w).complete)
    return fail("single-peaked k=5 not certified");
  const auto single = is_complete(FeasibleSet::explicit_list({order("a~b>c")}), w);
  if (single.complete || !single.gap) return fail("singleton certified complete");
  const ResolventGap expected{order("a~b>c"), order("a~b>c"), alternative(0), alternative(2)};
  if (!(*single.gap == expected)) return fail("unexpected gap");
  return {true, "weak k=3,4 and single-peaked k=5 complete; gap (a~b>c, a~b>c, a, c)"};
}

// --- 6 ---------------------------------------------------------------------

Outcome resolvent_constructors() {
  const auto all = enumerate_weak_orders(4);
  std::uint64_t checked = 0;
  for (const auto& p : all)
    for (const auto& q : all)
      for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) {
          const Alternative a = alternative(i), b = alternative(j);
          if (i == j || !admissible(p, q, a, b)) continue;
          ++checked;
          if (q.strictly_prefers(a, b)) {
            if (!is_resolvent(make_w_ab(a, b, 4), a, b, p, q)) return fail("make_w_ab (a over b in Q)");
            if (!is_resolvent(make_w_prime(a, b, p, q), a, b, p, q)) return fail("make_w_prime (a over b in Q)");
          }
          if (p.strictly_prefers(b, a)) {
            if (!is_resolvent(make_w_ab(b, a, 4), a, b, p, q)) return fail("make_w_ab (b over a in P)");
            if (!is_resolvent(make_w_prime(b, a, q, p), a, b, p, q)) return fail("make_w_prime (b over a in P)");
          }
        }
  const Axis axis = Axis::identity(6);
  const auto sp = enumerate_single_peaked(6, axis, true);
  std::uint64_t sp_checked = 0;
  for (const auto& p : sp)
    for (const auto& q : sp)
      for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = 0; j < 6; ++j) {
          const Alternative a = alternative(i), b = alternative(j);
          if (i == j || !admissible(p, q, a, b)) continue;
          ++sp_checked;
          const auto w = make_sp_resolvent(a, b, p, q, axis);
          if (!is_resolvent(w, a, b, p, q) || !is_single_peaked(w, axis)) return fail("make_sp_resolvent");
        }
  return {true, std::to_string(checked) + " weak and " + std::to_string(sp_checked) +
                    " single-peaked admissible cases, 0 failures"};
}

// --- 7 ---------------------------------------------------------------------

std::vector<Scf> complete_domain_specimens() {
  const auto sp5 = share(FeasibleSet::single_peaked(Axis::identity(5), true));
  return {builtin(uniform(5, 2, sp5), {.name = "median-peaks"}),
          builtin(uniform(5, 3, sp5), {.name = "median-peaks"}),
          builtin(uniform(3, 3, share(FeasibleSet::universal_weak(3))), {.name = "dictator-tiebreak"}),
          builtin(uniform(4, 2, share(FeasibleSet::universal_weak(4))), {.name = "dictator-tiebreak"})};
}

Outcome complete_domain_theorem() {
  std::ostringstream d;
  for (const auto& f : complete_domain_specimens()) {
    const auto v = verify_thm_complete(f, default_parallelism());
    if (v.status != "holds") return fail(v.universe + ": " + v.status + " " + v.note);
    d << v.checked << " ";
  }
  return {true, "pairs scanned: " + d.str()};
}

// --- 8 ---------------------------------------------------------------------

Outcome inverse_tiebreak_example() {
  const auto f = builtin(uniform(3, 2, share(FeasibleSet::universal_weak(3))), {.name = "dictator-inverse-tiebreak"});
  const auto dict = check_dictator(f);
  const auto* e = std::get_if<DictatorEvidence>(&dict.witness);
  if (!dict.holds || !e || e->dictator != 0u || !validate_dictator(f, *e)) return fail("voter 1 not dictator");

  const WeakOrder p1 = order("a~b>c");
  CheckOptions opt;
  opt.accept_isp = [&](const Profile& truthful, std::size_t voter, const WeakOrder& dev) {
    return truthful[0] == p1 && voter == 1 && truthful[1].strictly_prefers(alternative(1), alternative(0)) &&
           dev == truthful[1].inverted();
  };
  const auto isp = check_isp(f, opt);
  const auto* m = std::get_if<ManipulationWitness>(&isp.witness);
  if (isp.holds || !m) return fail("no manipulation of the expected shape");
  if (!validate_manipulation(f, *m)) return fail("manipulation does not re-validate");
  if (f.evaluate(m->truthful) != m->outcome_true || f.evaluate(m->deviated_profile()) != m->outcome_dev)
    return fail("evaluate disagrees with the witness");
  if (check_isp(f).holds) return fail("unrestricted ISP check holds");

  const auto pr = check_pr(f);
  const auto* v = std::get_if<PrViolation>(&pr.witness);
  if (pr.holds || !v || !validate_violation(f, *v)) return fail("PR violation missing or invalid");
  const auto& names = f.domain().alternatives();
  return {true, "dictator voter 1; ISP witness (" + format_order(m->truthful[0], names) + ", " +
                    format_order(m->truthful[1], names) + ") -> " + names.name(m->outcome_true) +
                    ", voter 2 reports " + format_order(m->deviation[0], names) + " -> " +
                    names.name(m->outcome_dev) + "; not PR"};
}

// --- 9 ---------------------------------------------------------------------

Profile replicate(const std::vector<std::pair<std::size_t, std::string>>& blocks) {
  Profile p;
  for (const auto& [count, text] : blocks) p.insert(p.end(), count, order(text, 5));
  return p;
}

Outcome quotient_reduction() {
  const auto d = uniform(5, 100, share(FeasibleSet::single_peaked(Axis::identity(5), true)));
  const auto phi = builtin(d, {.name = "median-peaks"});
  const Profile p = replicate({{30, "a>b>c>d>e"}, {30, "c>b>d>a>e"}, {40, "e>d>c>b>a"}});
  const Profile q = replicate({{30, "a>b>c>d>e"}, {30, "d>c>e>b>a"}, {40, "e>d>c>b>a"}});
  const Alternative ap = phi.evaluate(p), aq = phi.evaluate(q);
  if (ap == aq) return fail("outcomes coincide");
  const auto r = quotient_reduce(phi, p, q, {default_parallelism(), 100, 1, kDefaultProfileGuard});
  if (r.alpha != 3) return fail("alpha = " + std::to_string(r.alpha));
  if (!r.invariants_hold || r.samples != 100 || !r.samples_agree) return fail("quotient disagrees on blow-ups");
  if (!r.witness_lift) return fail("no witness lifted");
  const std::size_t v = r.witness_lift->second;
  const bool direct = p[v] != q[v] && p[v].weakly_prefers(ap, aq) && q[v].weakly_prefers(aq, ap);
  if (!direct || !r.lift_validated) return fail("lifted witness fails direct check");
  return {true, "alpha 3, 100 blow-ups agree, lifted voter " + std::to_string(v + 1) + " re-validates"};
}

// --- 10 --------------------------------------------------------------------

struct Run {
  int status = -1;
  std::string out;
};

Run scfcheck(const std::string& args) {
  Run r;
  FILE* pipe = popen((std::string(SCFCHECK_PATH) + " " + args + " 2>/dev/null").c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  while (const std::size_t n = fread(buf, 1, sizeof buf, pipe)) r.out.append(buf, n);
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

Outcome determinism() {
  // Library level: structured verdicts at 1 and 8 workers.
  for (const auto& spec : {strict_universe(2), strict_universe(3), weak_universe()}) {
    if (dump(verify_prop_apr_gsp(spec, 1)) != dump(verify_prop_apr_gsp(spec, 8))) return fail("prop-apr-gsp verdicts differ");
    if (dump(verify_thm_range3(spec, 1)) != dump(verify_thm_range3(spec, 8))) return fail("thm-range3 verdicts differ");
  }
  for (const auto& f : complete_domain_specimens())
    if (dump(verify_thm_complete(f, 1)) != dump(verify_thm_complete(f, 8))) return fail("thm-complete verdicts differ");
  // A verdict carrying a counterexample.
  const auto spec4 = four_alternative_universe();
  if (dump(search_isp_not_pr(spec4, 1000, 3, 1)) != dump(search_isp_not_pr(spec4, 1000, 3, 8)))
    return fail("search witnesses differ");

  // End to end through the command-line tool.
  const auto dir = std::filesystem::temp_directory_path() / "scfv_acceptance";
  std::filesystem::create_directories(dir);
  write_file(dir / "weak-pair.domain", "alternatives: a,b,c\nvoters: 2\nvoter *:\na~b>c\nc>a~b\n");
  const std::vector<std::string> commands = {
      "verify prop-apr-gsp --voters 2 --orders-per-voter 2 --k 3",
      "verify prop-apr-gsp --voters 2 --orders-per-voter 3 --k 3",
      "verify thm-range3 --voters 2 --orders-per-voter 2 --k 3",
      "verify thm-range3 --voters 2 --orders-per-voter 3 --k 3",
      "verify thm-range3 --domain " + (dir / "weak-pair.domain").string(),
      "verify thm-complete --rule median-peaks --k 5 --voters 2",
      "verify thm-complete --rule median-peaks --k 5 --voters 3",
      "verify thm-complete --rule dictator-tiebreak --kind weak --k 3 --voters 3",
      "verify thm-complete --rule dictator-tiebreak --kind weak --k 4 --voters 2",
  };
  for (const auto& c : commands) {
    const auto a = scfcheck("--format json --no-timing --parallelism 1 " + c);
    const auto b = scfcheck("--format json --no-timing --parallelism 8 " + c);
    if (a.status != 0 || b.status != 0) return fail("'" + c + "' exited " + std::to_string(a.status));
    if (a.out != b.out || a.out.empty()) return fail("'" + c + "' output differs");
  }
  std::filesystem::remove_all(dir);
  return {true, std::to_string(commands.size()) + " CLI runs and all library verdicts byte-identical"};
}

}  // namespace
}  // namespace scfv

int main() {
  using namespace scfv;
  const std::vector<Criterion> criteria = {
      {1, "enumeration counts", 1, enumeration_counts},
      {2, "APR equals GSP on small universes", 60, apr_equals_gsp},
      {3, "range three: ISP implies PR, #ISP = #GSP", 60, range_three},
      {4, "implication chain PR <= APR = GSP <= ISP", 120, implication_chain},
      {5, "completeness certificates and gap", 30, completeness},
      {6, "resolvent constructors", 300, resolvent_constructors},
      {7, "complete-domain specimens ISP and PR", 600, complete_domain_theorem},
      {8, "inverse tie-break rule: dictatorial, not ISP, not PR", 5, inverse_tiebreak_example},
      {9, "quotient reduction of a replicated society", 10, quotient_reduction},
      {10, "determinism across parallelism", 600, determinism},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (o.pass && secs > c.limit_seconds) o = {false, "over the time limit of " + std::to_string(c.limit_seconds) + " s"};
    failures += !o.pass;
    char timing[32];
    std::snprintf(timing, sizeof timing, "%.2f s", secs);
    std::cout << (o.pass ? "PASS" : "FAIL") << " [" << c.id << "] " << c.name << " (" << timing
              << "): " << o.detail << std::endl;
  }
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
  return failures == 0 ? 0 : 1;
}
