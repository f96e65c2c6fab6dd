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

// scfcheck: command-line front end for the scfv library.
//
// Exit status: 0 when everything requested holds, 2 when a witness against a
// property or theorem was found, 1 on any error.

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "scfv/io.hpp"

namespace scfv {
namespace {

constexpr int kExitHolds = 0;
constexpr int kExitError = 1;
constexpr int kExitWitness = 2;

struct RunConfig {
  std::string format = "text";
  unsigned parallelism = default_parallelism();
  std::uint64_t seed = 1;
  bool no_timing = false;
  std::uint64_t profile_guard = kDefaultProfileGuard;
  std::uint64_t table_guard = kDefaultTableGuard;

  bool json() const { return format == "json"; }
  bool timing() const { return !no_timing; }
};

struct DomainFlags {
  std::size_t k = 3;
  std::size_t voters = 2;
  std::string kind = "auto";
  std::optional<std::size_t> orders_per_voter;
  std::string axis;
  std::string domain_file;
  std::string names = "letters";
};

struct RuleFlags {
  std::string rule;
  std::optional<std::size_t> voter;  // 1-based
  std::string constant;
  std::string tiebreak;
};

void add_domain_flags(CLI::App* cmd, DomainFlags& f) {
  cmd->add_option("--k", f.k, "number of alternatives")->check(CLI::Range(1, 8));
  cmd->add_option("--voters", f.voters, "number of voters")->check(CLI::PositiveNumber);
  cmd->add_option("--kind", f.kind, "feasible set per voter")
      ->check(CLI::IsMember({"auto", "weak", "strict", "single-peaked", "single-peaked-weak"}));
  cmd->add_option("--orders-per-voter", f.orders_per_voter,
                  "keep the first m orders of the feasible set in canonical order")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--axis", f.axis, "single-peaked axis, e.g. a<b<c or a,b,c");
  cmd->add_option("--domain", f.domain_file, "domain file (overrides the flags above)")
      ->check(CLI::ExistingFile);
  cmd->add_option("--names", f.names, "alternative names")->check(CLI::IsMember({"letters", "numbers"}));
}

void add_rule_flags(CLI::App* cmd, RuleFlags& f) {
  const auto rules = builtin_rule_names();
  cmd->add_option("--rule", f.rule, "builtin rule")
      ->check(CLI::IsMember(std::vector<std::string>(rules.begin(), rules.end())));
  cmd->add_option("--rule-voter", f.voter, "voter for dictator rules (1-based)")->check(CLI::PositiveNumber);
  cmd->add_option("--constant", f.constant, "value of the constant rule");
  cmd->add_option("--tiebreak", f.tiebreak, "tie-break priority, e.g. c,a,b");
}

std::string join_names(const AlternativeList& list, const AlternativeSet& names,
                       std::string_view sep = ",") {
  std::string out;
  for (std::size_t i = 0; i < list.size(); ++i) {
    if (i > 0) out += sep;
    out += names.name(list[i]);
  }
  return out;
}

Axis axis_from_flag(std::string text, const AlternativeSet& names) {
  if (text.empty()) return Axis::identity(names.size());
  std::replace(text.begin(), text.end(), ',', '<');
  return parse_axis(text, names);
}

AlternativeList parse_alt_list(const std::string& text, const AlternativeSet& names) {
  AlternativeList out;
  for (const auto& s : detail::split(text, ',')) out.push_back(names.at(s));
  return out;
}

std::string kind_for(const DomainFlags& f, const std::string& rule, const std::string& fallback) {
  if (f.kind != "auto") return f.kind;
  if (rule == "median-peaks") return "single-peaked";
  return fallback;
}

FeasibleSet feasible_from_flags(const DomainFlags& f, const std::string& kind,
                                const AlternativeSet& names) {
  const Axis axis = axis_from_flag(f.axis, names);
  FeasibleSet set = kind == "weak"            ? FeasibleSet::universal_weak(names.size())
                    : kind == "strict"        ? FeasibleSet::universal_strict(names.size())
                    : kind == "single-peaked" ? FeasibleSet::single_peaked(axis, true)
                                              : FeasibleSet::single_peaked(axis, false);
  if (f.orders_per_voter) {
    const auto& all = set.orders();
    if (*f.orders_per_voter > all.size())
      throw ArgumentError("--orders-per-voter exceeds the feasible set size " +
                          std::to_string(all.size()));
    set = FeasibleSet::explicit_list({all.begin(), all.begin() + static_cast<long>(*f.orders_per_voter)});
  }
  return set;
}

DomainPtr domain_from_flags(const DomainFlags& f, const std::string& kind,
                            std::optional<AlternativeSet> names = std::nullopt,
                            std::optional<std::size_t> voters = std::nullopt) {
  if (!f.domain_file.empty()) {
    Domain d = parse_domain_or_orders(read_file(f.domain_file));
    const std::size_t n = voters.value_or(f.voters);
    if (d.voters() == 1 && n > 1)
      d = Domain::uniform(d.alternatives(), n, d.feasible(0));
    if (names && !(d.alternatives() == *names))
      throw ArgumentError("domain file alternatives differ from the profile file");
    return std::make_shared<const Domain>(std::move(d));
  }
  const AlternativeSet alts =
      names ? *names : (f.names == "numbers" ? AlternativeSet::numbers(f.k) : AlternativeSet::letters(f.k));
  return std::make_shared<const Domain>(
      Domain::uniform(alts, voters.value_or(f.voters), feasible_from_flags(f, kind, alts)));
}

Scf scf_from_flags(const RuleFlags& r, DomainPtr d) {
  if (r.rule.empty()) throw ArgumentError("--rule is required");
  const auto& names = d->alternatives();
  RuleSpec spec{r.rule};
  if (r.voter) spec.voter = *r.voter - 1;
  if (!r.constant.empty()) spec.constant = names.at(r.constant);
  if (!r.tiebreak.empty()) spec.tiebreak = parse_alt_list(r.tiebreak, names);
  return builtin(std::move(d), spec);
}

// ---------------------------------------------------------------------------
// Text rendering.

std::string show_profile(const Profile& p, const AlternativeSet& names) {
  std::string out = "(";
  for (std::size_t v = 0; v < p.size(); ++v) {
    if (v > 0) out += ", ";
    out += format_order(p[v], names);
  }
  return out + ")";
}

std::string show_voters(const std::vector<std::size_t>& voters) {
  std::string out;
  for (std::size_t i = 0; i < voters.size();) {
    std::size_t j = i;
    while (j + 1 < voters.size() && voters[j + 1] == voters[j] + 1) ++j;
    if (!out.empty()) out += ",";
    out += std::to_string(voters[i] + 1);
    if (j > i) out += "-" + std::to_string(voters[j] + 1);
    i = j + 1;
  }
  return out;
}

void print_witness(std::ostream& out, const Witness& w, const AlternativeSet& names,
                   std::string_view indent) {
  if (const auto* m = std::get_if<ManipulationWitness>(&w)) {
    out << indent << "coalition {" << show_voters(m->coalition) << "} misreports:";
    for (std::size_t i = 0; i < m->coalition.size(); ++i)
      out << " voter " << m->coalition[i] + 1 << " " << format_order(m->truthful[m->coalition[i]], names)
          << " -> " << format_order(m->deviation[i], names) << ";";
    out << "\n"
        << indent << "truthful " << show_profile(m->truthful, names) << " -> " << names.name(m->outcome_true)
        << "\n"
        << indent << "deviated " << show_profile(m->deviated_profile(), names) << " -> "
        << names.name(m->outcome_dev) << "\n";
  } else if (const auto* v = std::get_if<PrViolation>(&w)) {
    out << indent << "P = " << show_profile(v->p, names) << " -> " << names.name(v->outcome_p) << "\n"
        << indent << "Q = " << show_profile(v->q, names) << " -> " << names.name(v->outcome_q) << "\n";
    for (const auto& a : v->analysis)
      out << indent << "voter " << a.voter + 1 << (a.changed ? " changed" : " unchanged") << ": "
          << names.name(v->outcome_p) << " vs " << names.name(v->outcome_q) << " under P is "
          << relation_name(a.under_p) << ", " << names.name(v->outcome_q) << " vs "
          << names.name(v->outcome_p) << " under Q is " << relation_name(a.under_q) << "\n";
  } else if (const auto* e = std::get_if<DictatorEvidence>(&w)) {
    if (e->dictator) out << indent << "dictator: voter " << *e->dictator + 1 << "\n";
    for (const auto& c : e->counter_profiles)
      out << indent << "voter " << c.voter + 1 << " overruled at " << show_profile(c.profile, names)
          << " -> " << names.name(c.outcome) << "\n";
  }
}

void print_report(std::ostream& out, const PropertyReport& r, const AlternativeSet& names,
                  const RunConfig& cfg) {
  out << property_name(r.property) << ": " << (r.holds ? "holds" : "FAILS") << " (checked " << r.checked;
  if (cfg.timing())
    out << ", " << std::chrono::duration_cast<std::chrono::milliseconds>(r.elapsed).count() << " ms";
  out << ")\n";
  print_witness(out, r.witness, names, "  ");
}

void print_verdict(std::ostream& out, const TheoremVerdict& v, const RunConfig& cfg) {
  out << "theorem: " << v.theorem << "\n"
      << "universe: " << v.universe << "\n"
      << "status: " << v.status << "\n";
  if (!v.note.empty()) out << "note: " << v.note << "\n";
  out << "checked: " << v.checked << "\n";
  for (const auto& [key, value] : v.counts) out << "  " << key << " = " << value << "\n";
  if (v.counts.contains("isp") && v.counts.contains("gsp"))
    out << "#ISP = " << v.counts.at("isp") << ", #GSP = " << v.counts.at("gsp")
        << (v.counts.at("isp") == v.counts.at("gsp") ? " (equal)" : " (differ)") << "\n";
  if (v.seed) out << "seed: " << *v.seed << "\n";
  if (v.counterexample) {
    const auto& f = v.counterexample->scf;
    const auto& names = f.domain().alternatives();
    out << "counterexample table: " << join_names(f.table(), names, " ") << "\n";
    for (const auto& r : v.counterexample->reports) print_report(out, r, names, cfg);
  }
  if (cfg.timing())
    out << "elapsed: " << std::chrono::duration_cast<std::chrono::milliseconds>(v.elapsed).count()
        << " ms\n";
}

void emit_json(const Json& j) { std::cout << j.dump(2) << "\n"; }

Json header(const char* command, const RunConfig& cfg) {
  Json j;
  j["command"] = command;
  j["seed"] = cfg.seed;
  return j;
}

// ---------------------------------------------------------------------------
// Commands.

struct OrdersArgs {
  std::size_t k = 3;
  std::string kind = "weak";
  bool strict = false;
  std::string axis;
  std::string names = "letters";
};

int cmd_orders(const OrdersArgs& a, const RunConfig& cfg) {
  const AlternativeSet names = a.names == "numbers" ? AlternativeSet::numbers(a.k) : AlternativeSet::letters(a.k);
  std::vector<WeakOrder> orders;
  if (a.kind == "weak") {
    orders = enumerate_weak_orders(a.k);
  } else if (a.kind == "strict") {
    orders = enumerate_strict_orders(a.k);
  } else {
    const Axis axis = axis_from_flag(a.axis, names);
    orders = enumerate_single_peaked(a.k, axis, a.strict);
  }
  if (cfg.json()) {
    Json j = header("orders", cfg);
    j["k"] = a.k;
    j["kind"] = a.kind;
    Json list = Json::array();
    for (const auto& w : orders) list.push_back(format_order(w, names));
    j["orders"] = std::move(list);
    j["count"] = orders.size();
    emit_json(j);
  } else {
    for (const auto& w : orders) std::cout << format_order(w, names) << "\n";
    std::cout << "total: " << orders.size() << "\n";
  }
  return kExitHolds;
}

int cmd_domain_complete(const std::string& file, const RunConfig& cfg) {
  const Domain d = parse_domain_or_orders(read_file(file));
  const auto& names = d.alternatives();
  bool all = true;
  Json voters = Json::array();
  std::optional<CompletenessResult> prev;
  for (std::size_t v = 0; v < d.voters(); ++v) {
    if (!prev || !(d.feasible(v) == d.feasible(v - 1)))
      prev = is_complete(d.feasible(v), cfg.parallelism);
    const auto& c = *prev;
    all = all && c.complete;
    Json e;
    e["voter"] = v + 1;
    e["complete"] = c.complete;
    e["checked"] = c.checked;
    if (c.gap) {
      e["gap"] = {{"P", format_order(c.gap->p, names)},
                  {"Q", format_order(c.gap->q, names)},
                  {"a", names.name(c.gap->a)},
                  {"b", names.name(c.gap->b)}};
    }
    voters.push_back(std::move(e));
    if (!cfg.json()) {
      std::cout << "voter " << v + 1 << ": " << (c.complete ? "complete" : "INCOMPLETE") << " ("
                << c.checked << " admissible cases checked)\n";
      if (c.gap)
        std::cout << "  gap: P = " << format_order(c.gap->p, names) << ", Q = " << format_order(c.gap->q, names)
                  << ", a = " << names.name(c.gap->a) << ", b = " << names.name(c.gap->b)
                  << ": no order in the set resolves P at a and Q at b\n";
    }
  }
  if (cfg.json()) {
    Json j = header("domain-complete", cfg);
    j["alternatives"] = names.names();
    j["complete"] = all;
    j["voters"] = std::move(voters);
    emit_json(j);
  } else {
    std::cout << (all ? "domain is complete" : "domain is NOT complete") << "\n";
  }
  return all ? kExitHolds : kExitWitness;
}

struct CheckArgs {
  std::string scf_file;
  std::vector<std::string> properties;
  std::string recheck;
  std::string isp_deviation = "any";
  std::vector<std::string> isp_fix;  // V=ORDER
};

std::vector<PropertyReport> reports_from_file(const Json& j, const AlternativeSet& names) {
  const Json* list = nullptr;
  if (j.contains("reports")) {
    list = &j["reports"];
  } else if (j.contains("counterexample")) {
    list = &j["counterexample"]["reports"];
  } else if (j.contains("property")) {
    return {report_from_json(j, names)};
  }
  if (!list || !list->is_array()) throw ParseError("no reports found in witness file");
  std::vector<PropertyReport> out;
  for (const auto& r : *list) out.push_back(report_from_json(r, names));
  return out;
}

int cmd_check(const CheckArgs& a, const RunConfig& cfg) {
  std::optional<Scf> f;
  Json recheck_json;
  if (!a.recheck.empty()) recheck_json = parse_json(read_file(a.recheck));
  if (!a.scf_file.empty()) {
    f = load_scf_file(a.scf_file).scf;
  } else if (recheck_json.contains("counterexample")) {
    f = scf_from_json(recheck_json["counterexample"]["scf"]).scf;
  } else {
    throw ArgumentError("an scf file is required");
  }
  const auto& names = f->domain().alternatives();

  if (!a.recheck.empty()) {
    const auto reports = reports_from_file(recheck_json, names);
    bool ok = true;
    Json results = Json::array();
    for (const auto& r : reports) {
      const bool valid = r.holds && std::holds_alternative<std::monostate>(r.witness)
                             ? check_property(*f, r.property).holds
                             : validate_report(*f, r);
      ok = ok && valid;
      results.push_back({{"property", property_name(r.property)}, {"holds", r.holds}, {"valid", valid}});
      if (!cfg.json())
        std::cout << property_name(r.property) << " (" << (r.holds ? "holds" : "fails")
                  << "): " << (valid ? "re-validated" : "REJECTED") << "\n";
    }
    if (cfg.json()) {
      Json j = header("recheck", cfg);
      j["results"] = std::move(results);
      j["valid"] = ok;
      emit_json(j);
    }
    return ok ? kExitHolds : kExitError;
  }

  std::vector<Property> props;
  if (a.properties.empty()) {
    props = {Property::kIsp, Property::kGsp, Property::kPr, Property::kApr, Property::kDictator};
  } else {
    for (const auto& s : a.properties) props.push_back(parse_property(s));
  }
  CheckOptions opt;
  opt.workers = cfg.parallelism;
  opt.guard = cfg.profile_guard;
  std::vector<std::pair<std::size_t, WeakOrder>> fixed;
  for (const auto& spec : a.isp_fix) {
    const auto eq = spec.find('=');
    if (eq == std::string::npos) throw ArgumentError("--isp-fix expects VOTER=ORDER");
    const long v = std::stol(spec.substr(0, eq));
    if (v < 1 || static_cast<std::size_t>(v) > f->domain().voters())
      throw ArgumentError("--isp-fix voter out of range");
    fixed.emplace_back(static_cast<std::size_t>(v - 1), parse_order(spec.substr(eq + 1), names));
  }
  if (a.isp_deviation == "inverse" || !fixed.empty()) {
    const bool inverse = a.isp_deviation == "inverse";
    opt.accept_isp = [inverse, fixed](const Profile& truthful, std::size_t voter, const WeakOrder& dev) {
      for (const auto& [v, w] : fixed)
        if (truthful[v] != w) return false;
      return !inverse || dev == truthful[voter].inverted();
    };
  }
  bool all = true;
  Json reports = Json::array();
  for (Property p : props) {
    const auto r = check_property(*f, p, opt);
    all = all && r.holds;
    reports.push_back(report_json(r, names, cfg.timing()));
    if (!cfg.json()) print_report(std::cout, r, names, cfg);
  }
  if (cfg.json()) {
    Json j = header("check", cfg);
    j["scf"] = f->rule() ? f->rule()->name : std::string("table");
    j["reports"] = std::move(reports);
    emit_json(j);
  }
  return all ? kExitHolds : kExitWitness;
}

struct VerifyArgs {
  std::string theorem;
  DomainFlags domain;
  RuleFlags rule;
  std::string target;
  std::uint64_t budget = 100'000;
  std::string p_file, q_file;
  std::size_t samples = 100;
};

struct SocietyFiles {
  ProfileDocument p, q;
};

SocietyFiles load_society(const std::string& p_file, const std::string& q_file) {
  if (p_file.empty() || q_file.empty()) throw ArgumentError("--p and --q profile files are required");
  SocietyFiles s{parse_profile_text(read_file(p_file)), parse_profile_text(read_file(q_file))};
  if (!(s.p.names == s.q.names)) throw ArgumentError("profile files use different alternatives");
  if (s.p.profile.size() != s.q.profile.size()) throw ArgumentError("profile files differ in voter count");
  return s;
}

int verdict_exit(const TheoremVerdict& v) {
  return v.status == "violated" || v.status == "witness-found" ? kExitWitness : kExitHolds;
}

int cmd_verify(const VerifyArgs& a, const RunConfig& cfg) {
  TheoremVerdict v;
  const std::string& t = a.theorem;
  if (t == "thm-complete") {
    const auto d = domain_from_flags(a.domain, kind_for(a.domain, a.rule.rule, "weak"));
    v = verify_thm_complete(scf_from_flags(a.rule, d), cfg.parallelism, cfg.profile_guard);
  } else if (t == "thm-infinite") {
    const auto s = load_society(a.p_file, a.q_file);
    const auto d = domain_from_flags(a.domain, kind_for(a.domain, a.rule.rule, "weak"), s.p.names,
                                     s.p.profile.size());
    QuotientOptions opt{cfg.parallelism, a.samples, cfg.seed, cfg.profile_guard};
    v = verify_thm_infinite(scf_from_flags(a.rule, d), s.p.profile, s.q.profile, opt);
  } else {
    const auto d = domain_from_flags(a.domain, kind_for(a.domain, "", "strict"));
    EnumerationSpec spec{d, {}, std::nullopt};
    spec.target = a.target.empty() ? AlternativeList{} : parse_alt_list(a.target, d->alternatives());
    if (spec.target.empty())
      for (std::size_t i = 0; i < d->k(); ++i) spec.target.push_back(alternative(i));
    if (t == "search-isp-not-pr") {
      v = search_isp_not_pr(spec, a.budget, cfg.seed, cfg.parallelism);
    } else {
      const auto total = table_count(spec);
      if (!total || *total > cfg.table_guard)
        throw ResourceError("universe exceeds the table guard of " + std::to_string(cfg.table_guard));
      if (t == "prop-apr-gsp") {
        v = verify_prop_apr_gsp(spec, cfg.parallelism);
      } else if (t == "thm-range3") {
        v = verify_thm_range3(spec, cfg.parallelism);
      } else {
        v = verify_summary_equivalence(spec, cfg.parallelism);
      }
    }
  }
  v.seed = cfg.seed;
  if (cfg.json()) {
    Json j = header("verify", cfg);
    const Json body = verdict_json(v, cfg.timing());
    for (const auto& [key, value] : body.items()) j[key] = value;
    emit_json(j);
  } else {
    print_verdict(std::cout, v, cfg);
  }
  return verdict_exit(v);
}

struct QuotientArgs {
  DomainFlags domain;
  RuleFlags rule;
  std::string p_file, q_file;
  std::size_t samples = 100;
};

int cmd_quotient(const QuotientArgs& a, const RunConfig& cfg) {
  const auto s = load_society(a.p_file, a.q_file);
  const auto d = domain_from_flags(a.domain, kind_for(a.domain, a.rule.rule, "weak"), s.p.names,
                                   s.p.profile.size());
  const Scf phi = scf_from_flags(a.rule, d);
  const QuotientOptions opt{cfg.parallelism, a.samples, cfg.seed, cfg.profile_guard};
  const auto r = quotient_reduce(phi, s.p.profile, s.q.profile, opt);
  const auto& names = d->alternatives();
  const bool consistent = r.invariants_hold && r.samples_agree;
  const bool witness_ok = r.outcome_p == r.outcome_q || !r.hypotheses_hold || r.lift_validated;
  const char* case_name = r.quotient_case == QuotientCase::kSharedDomain ? "shared-complete-domain" : "pair-domains";

  if (cfg.json()) {
    Json j = header("quotient", cfg);
    j["voters"] = d->voters();
    j["alpha"] = r.alpha;
    j["case"] = case_name;
    Json classes = Json::array();
    for (const auto& c : r.classes) {
      Json voters = Json::array();
      for (auto v : c.voters) voters.push_back(v + 1);
      classes.push_back({{"P", format_order(c.w, names)},
                         {"Q", format_order(c.w_prime, names)},
                         {"size", c.voters.size()},
                         {"voters", std::move(voters)}});
    }
    j["classes"] = std::move(classes);
    j["outcome_p"] = names.name(r.outcome_p);
    j["outcome_q"] = names.name(r.outcome_q);
    j["invariants_hold"] = r.invariants_hold;
    j["samples"] = r.samples;
    j["samples_agree"] = r.samples_agree;
    j["hypotheses_hold"] = r.hypotheses_hold;
    j["note"] = r.note;
    if (r.quotient_pr) j["quotient_pr"] = *r.quotient_pr;
    if (r.witness_lift)
      j["witness_lift"] = {{"class", r.witness_lift->first + 1}, {"voter", r.witness_lift->second + 1}};
    j["lift_validated"] = r.lift_validated;
    emit_json(j);
  } else {
    std::cout << "voters: " << d->voters() << "\nclasses: " << r.alpha << " (" << case_name << ")\n";
    for (std::size_t i = 0; i < r.classes.size(); ++i) {
      const auto& c = r.classes[i];
      std::cout << "  class " << i + 1 << ": P = " << format_order(c.w, names) << ", Q = "
                << format_order(c.w_prime, names) << ", " << c.voters.size() << " voters {"
                << show_voters(c.voters) << "}\n";
    }
    std::cout << "phi(P) = " << names.name(r.outcome_p) << ", phi(Q) = " << names.name(r.outcome_q) << "\n"
              << "quotient invariants: " << (r.invariants_hold ? "hold" : "FAIL") << "\n"
              << "blow-up samples: " << r.samples << ", " << (r.samples_agree ? "all agree" : "DISAGREE") << "\n"
              << "note: " << r.note << "\n";
    if (r.quotient_pr) std::cout << "quotient PR: " << (*r.quotient_pr ? "holds" : "FAILS") << "\n";
    if (r.witness_lift)
      std::cout << "witness: class " << r.witness_lift->first + 1 << ", voter " << r.witness_lift->second + 1
                << ", lift " << (r.lift_validated ? "validated" : "NOT validated") << "\n";
    std::cout << "seed: " << cfg.seed << "\n";
  }
  return consistent && witness_ok ? kExitHolds : kExitWitness;
}

struct NewScfArgs {
  DomainFlags domain;
  RuleFlags rule;
  bool tabulate = false;
  std::string domain_ref;
  std::string output;
};

int cmd_new_scf(const NewScfArgs& a, const RunConfig& cfg) {
  const auto d = domain_from_flags(a.domain, kind_for(a.domain, a.rule.rule, "weak"));
  Scf f = scf_from_flags(a.rule, d);
  if (a.tabulate) f = tabulate(f, cfg.parallelism, cfg.profile_guard);
  const std::optional<std::string> ref = a.domain_ref.empty() ? std::nullopt : std::optional(a.domain_ref);
  const std::string text = save_scf(ScfDocument{f, ref});
  if (a.output.empty()) {
    std::cout << text;
  } else {
    write_file(a.output, text);
  }
  return kExitHolds;
}

int run(int argc, char** argv) {
  CLI::App app{"scfcheck: verify strategy-proofness and preference-reversal properties of social choice functions"};
  app.require_subcommand(1);
  app.fallthrough();
  RunConfig cfg;
  app.add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--parallelism", cfg.parallelism, "worker threads (default from SCFV_PARALLELISM)")
      ->check(CLI::Range(1u, 256u));
  app.add_option("--seed", cfg.seed, "seed for randomized steps");
  app.add_flag("--no-timing", cfg.no_timing, "omit timings from reports");
  app.add_option("--profile-guard", cfg.profile_guard, "maximum profiles per scf");
  app.add_option("--table-guard", cfg.table_guard, "maximum tables per universe");

  OrdersArgs orders;
  auto* c_orders = app.add_subcommand("orders", "list weak, strict or single-peaked orders");
  c_orders->add_option("--k", orders.k, "number of alternatives")->required()->check(CLI::Range(1, 8));
  c_orders->add_option("--kind", orders.kind)->check(CLI::IsMember({"weak", "strict", "single-peaked"}));
  c_orders->add_flag("--strict", orders.strict, "single-peaked: strict orders only");
  c_orders->add_option("--axis", orders.axis, "single-peaked axis, e.g. a<c<b or a,c,b");
  c_orders->add_option("--names", orders.names)->check(CLI::IsMember({"letters", "numbers"}));

  std::string domain_file;
  auto* c_domain = app.add_subcommand("domain", "domain file operations");
  c_domain->require_subcommand(1);
  auto* c_complete = c_domain->add_subcommand("complete", "decide completeness of each voter's feasible set");
  c_complete->add_option("file", domain_file, "domain file or bare order list")->required();

  CheckArgs check;
  auto* c_check = app.add_subcommand("check", "check properties of an scf");
  c_check->add_option("scf", check.scf_file, "scf file (JSON)");
  c_check->add_option("--properties", check.properties, "isp,gsp,pr,apr,dictator")->delimiter(',');
  c_check->add_option("--recheck-witness", check.recheck, "re-validate reports from a JSON output file");
  c_check->add_option("--isp-deviation", check.isp_deviation,
                      "restrict ISP witnesses: any, or inverse (deviator reports the inverse order)")
      ->check(CLI::IsMember({"any", "inverse"}));
  c_check->add_option("--isp-fix", check.isp_fix, "restrict ISP witnesses to truthful profiles with VOTER=ORDER");

  VerifyArgs verify;
  auto* c_verify = app.add_subcommand("verify", "run a theorem suite");
  c_verify->add_option("theorem", verify.theorem)
      ->required()
      ->check(CLI::IsMember({"prop-apr-gsp", "thm-range3", "summary-equivalence", "thm-complete",
                             "thm-infinite", "search-isp-not-pr"}));
  add_domain_flags(c_verify, verify.domain);
  add_rule_flags(c_verify, verify.rule);
  c_verify->add_option("--target", verify.target, "target range, e.g. a,b,c (default: all)");
  c_verify->add_option("--budget", verify.budget, "search budget in tables");
  c_verify->add_option("--p", verify.p_file, "profile file P (thm-infinite)");
  c_verify->add_option("--q", verify.q_file, "profile file Q (thm-infinite)");
  c_verify->add_option("--samples", verify.samples, "blow-up samples (thm-infinite)");

  QuotientArgs quotient;
  auto* c_quotient = app.add_subcommand("quotient", "reduce a large society to its voter classes");
  add_domain_flags(c_quotient, quotient.domain);
  add_rule_flags(c_quotient, quotient.rule);
  c_quotient->add_option("--p", quotient.p_file, "profile file P")->required();
  c_quotient->add_option("--q", quotient.q_file, "profile file Q")->required();
  c_quotient->add_option("--samples", quotient.samples, "blow-up samples");

  NewScfArgs news;
  auto* c_new = app.add_subcommand("new-scf", "write an scf file for a builtin rule");
  add_domain_flags(c_new, news.domain);
  add_rule_flags(c_new, news.rule);
  c_new->add_flag("--tabulate", news.tabulate, "store the full table instead of the rule");
  c_new->add_option("--domain-ref", news.domain_ref, "reference this domain file instead of inlining");
  c_new->add_option("-o,--output", news.output, "output file (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitHolds : kExitError;
  }

  if (c_orders->parsed()) return cmd_orders(orders, cfg);
  if (c_complete->parsed()) return cmd_domain_complete(domain_file, cfg);
  if (c_check->parsed()) return cmd_check(check, cfg);
  if (c_verify->parsed()) return cmd_verify(verify, cfg);
  if (c_quotient->parsed()) return cmd_quotient(quotient, cfg);
  if (c_new->parsed()) return cmd_new_scf(news, cfg);
  return kExitError;
}

}  // namespace
}  // namespace scfv

int main(int argc, char** argv) {
  try {
    return scfv::run(argc, argv);
  } catch (const scfv::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
  }
  return 1;
}
