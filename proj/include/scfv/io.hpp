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

// JSON documents: scf files, property reports and theorem verdicts.
// Profiles are written as arrays of orders in `a~b>c` notation; voters are
// 1-based.

#pragma once

#include <chrono>
#include <filesystem>
#include <fstream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "scfv/domains.hpp"
#include "scfv/error.hpp"
#include "scfv/harness.hpp"
#include "scfv/prefs.hpp"
#include "scfv/properties.hpp"
#include "scfv/scf.hpp"

namespace scfv {

using Json = nlohmann::ordered_json;

inline constexpr std::string_view kScfFormat = "scfv-scf/1";

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  out << text;
}

inline Json parse_json(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

namespace detail {

template <class T>
T json_get(const Json& j, std::string_view key) {
  const auto it = j.find(key);
  if (it == j.end()) throw ParseError("missing field '" + std::string(key) + "'");
  try {
    return it->get<T>();
  } catch (const Json::exception&) {
    throw ParseError("field '" + std::string(key) + "' has the wrong type");
  }
}

inline Json alt_list_json(const AlternativeList& list, const AlternativeSet& names) {
  Json out = Json::array();
  for (Alternative a : list) out.push_back(names.name(a));
  return out;
}

inline AlternativeList alt_list_from_json(const Json& j, const AlternativeSet& names) {
  if (!j.is_array()) throw ParseError("expected an array of alternatives");
  AlternativeList out;
  for (const auto& e : j) out.push_back(names.at(e.get<std::string>()));
  return out;
}

}  // namespace detail

inline Json profile_json(const Profile& p, const AlternativeSet& names) {
  Json out = Json::array();
  for (const auto& w : p) out.push_back(format_order(w, names));
  return out;
}

inline Profile profile_from_json(const Json& j, const AlternativeSet& names) {
  if (!j.is_array()) throw ParseError("profile must be an array of orders");
  Profile p;
  for (const auto& e : j) p.push_back(parse_order(e.get<std::string>(), names));
  return p;
}

// ---------------------------------------------------------------------------
// Domains inside scf documents: one entry per voter.

inline Json feasible_json(const FeasibleSet& set, const AlternativeSet& names) {
  Json j;
  switch (set.tag()) {
    case FeasibleTag::kUniversalWeak:
    case FeasibleTag::kUniversalStrict:
      j["preset"] = std::string(tag_name(set.tag()));
      return j;
    case FeasibleTag::kSinglePeaked:
      j["preset"] = "single-peaked";
      j["axis"] = detail::alt_list_json(set.axis()->order(), names);
      j["strict"] = set.strict();
      return j;
    case FeasibleTag::kExplicitList: break;
  }
  Json orders = Json::array();
  for (const auto& w : set.orders()) orders.push_back(format_order(w, names));
  j["orders"] = std::move(orders);
  return j;
}

inline FeasibleSet feasible_from_json(const Json& j, const AlternativeSet& names) {
  if (j.contains("preset")) {
    const auto preset = detail::json_get<std::string>(j, "preset");
    if (preset == "universal-weak") return FeasibleSet::universal_weak(names.size());
    if (preset == "universal-strict") return FeasibleSet::universal_strict(names.size());
    if (preset == "single-peaked") {
      const Axis axis = j.contains("axis") ? Axis(detail::alt_list_from_json(j["axis"], names))
                                           : Axis::identity(names.size());
      const bool strict = j.contains("strict") ? j["strict"].get<bool>() : true;
      return FeasibleSet::single_peaked(axis, strict);
    }
    throw ParseError("unknown preset '" + preset + "'");
  }
  std::vector<WeakOrder> orders;
  for (const auto& e : detail::json_get<Json>(j, "orders"))
    orders.push_back(parse_order(e.get<std::string>(), names));
  return FeasibleSet::explicit_list(std::move(orders));
}

inline Json domain_json(const Domain& d) {
  Json out = Json::array();
  const FeasibleSet* prev = nullptr;
  Json prev_json;
  for (std::size_t v = 0; v < d.voters(); ++v) {
    if (prev != &d.feasible(v)) {
      prev = &d.feasible(v);
      prev_json = feasible_json(*prev, d.alternatives());
    }
    out.push_back(prev_json);
  }
  return out;
}

inline Domain domain_from_json(const Json& j, const AlternativeSet& names) {
  if (!j.is_array() || j.empty()) throw ParseError("domain must be a non-empty array of voters");
  std::vector<FeasibleSetPtr> sets;
  for (std::size_t v = 0; v < j.size(); ++v) {
    if (v > 0 && j[v] == j[v - 1]) {
      sets.push_back(sets.back());
      continue;
    }
    sets.push_back(std::make_shared<const FeasibleSet>(feasible_from_json(j[v], names)));
  }
  return Domain(names, std::move(sets));
}

// ---------------------------------------------------------------------------
// Rules.

inline Json rule_json(const RuleSpec& spec, const AlternativeSet& names) {
  Json j;
  j["name"] = spec.name;
  Json params = Json::object();
  if (spec.constant) params["value"] = names.name(*spec.constant);
  if (spec.voter) params["voter"] = *spec.voter + 1;
  if (spec.tiebreak) params["tiebreak"] = detail::alt_list_json(*spec.tiebreak, names);
  if (spec.axis) params["axis"] = detail::alt_list_json(spec.axis->order(), names);
  j["params"] = std::move(params);
  return j;
}

inline RuleSpec rule_from_json(const Json& j, const AlternativeSet& names) {
  RuleSpec spec;
  spec.name = detail::json_get<std::string>(j, "name");
  const Json params = j.contains("params") ? j["params"] : Json::object();
  if (params.contains("value")) spec.constant = names.at(params["value"].get<std::string>());
  if (params.contains("voter")) {
    const auto v = params["voter"].get<long long>();
    if (v < 1) throw ParseError("rule voter must be >= 1");
    spec.voter = static_cast<std::size_t>(v - 1);
  }
  if (params.contains("tiebreak")) spec.tiebreak = detail::alt_list_from_json(params["tiebreak"], names);
  if (params.contains("axis")) spec.axis = Axis(detail::alt_list_from_json(params["axis"], names));
  return spec;
}

// ---------------------------------------------------------------------------
// Scf documents.

struct ScfDocument {
  Scf scf;
  // Set when the domain came from (and is written back as) a file reference.
  std::optional<std::string> domain_file;
};

inline Json scf_json(const Scf& f, const std::optional<std::string>& domain_file = std::nullopt) {
  const auto& names = f.domain().alternatives();
  Json j;
  j["format"] = std::string(kScfFormat);
  j["alternatives"] = names.names();
  j["voters"] = f.domain().voters();
  if (domain_file) {
    j["domain"] = Json{{"file", *domain_file}};
  } else {
    j["domain"] = domain_json(f.domain());
  }
  if (!f.is_table() && f.rule() && f.rule()->name != "quotient") {
    j["rule"] = rule_json(*f.rule(), names);
  } else {
    const Scf t = tabulate(f);
    Json table = Json::array();
    for (Alternative a : t.table()) table.push_back(names.name(a));
    j["table"] = std::move(table);
  }
  return j;
}

inline std::string save_scf(const ScfDocument& doc) {
  return scf_json(doc.scf, doc.domain_file).dump(2) + "\n";
}
inline std::string save_scf(const Scf& f) { return save_scf(ScfDocument{f, std::nullopt}); }

// `base_dir` resolves relative domain file references.
inline ScfDocument scf_from_json(const Json& j, const std::filesystem::path& base_dir = {}) {
  if (!j.is_object()) throw ParseError("scf document must be an object");
  if (j.contains("format") && j["format"] != kScfFormat)
    throw ParseError("unsupported scf format '" + j["format"].dump() + "'");
  const AlternativeSet names(detail::json_get<std::vector<std::string>>(j, "alternatives"));
  const auto voters = detail::json_get<std::size_t>(j, "voters");
  const Json& dj = detail::json_get<Json>(j, "domain").is_null() ? j : j["domain"];
  std::optional<std::string> domain_file;
  std::shared_ptr<const Domain> domain;
  if (dj.is_object() && dj.contains("file")) {
    domain_file = dj["file"].get<std::string>();
    Domain parsed = parse_domain(read_file(base_dir / *domain_file));
    if (!(parsed.alternatives() == names))
      throw ParseError("domain file alternatives differ from the scf document");
    domain = std::make_shared<const Domain>(std::move(parsed));
  } else {
    domain = std::make_shared<const Domain>(domain_from_json(dj, names));
  }
  if (domain->voters() != voters) throw ParseError("voter count differs from the domain");

  if (j.contains("rule")) {
    try {
      return {builtin(domain, rule_from_json(j["rule"], names)), domain_file};
    } catch (const ArgumentError& e) {
      throw ParseError(std::string("bad rule: ") + e.what());
    }
  }
  const Json& t = detail::json_get<Json>(j, "table");
  if (!t.is_array()) throw ParseError("table must be an array");
  std::vector<Alternative> table;
  table.reserve(t.size());
  for (const auto& e : t) table.push_back(names.at(e.get<std::string>()));
  try {
    return {Scf::from_table(domain, std::move(table)), domain_file};
  } catch (const ArgumentError& e) {
    throw ParseError(e.what());
  }
}

inline ScfDocument load_scf(std::string_view text, const std::filesystem::path& base_dir = {}) {
  return scf_from_json(parse_json(text), base_dir);
}

inline ScfDocument load_scf_file(const std::filesystem::path& path) {
  return load_scf(read_file(path), path.parent_path());
}

// ---------------------------------------------------------------------------
// Profile files: `alternatives: a,b,c` then one line per voter, either
// `<order>` or `<count> x <order>` for a block of identical voters.

struct ProfileDocument {
  AlternativeSet names;
  Profile profile;
};

inline ProfileDocument parse_profile_text(std::string_view text) {
  std::optional<AlternativeSet> names;
  Profile profile;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = detail::trim(raw.substr(0, raw.find('#')));
    if (line.empty()) continue;
    try {
      if (line.rfind("alternatives:", 0) == 0) {
        if (names) throw ParseError("duplicate alternatives header");
        names = AlternativeSet(detail::split(line.substr(13), ','));
        continue;
      }
      if (!names) throw ParseError("expected `alternatives:` header first");
      std::size_t count = 1;
      std::string body = line;
      if (const auto x = line.find(" x "); x != std::string::npos) {
        const std::string n = detail::trim(line.substr(0, x));
        if (n.empty() || n.find_first_not_of("0123456789") != std::string::npos)
          throw ParseError("bad voter count '" + n + "'");
        count = std::stoul(n);
        if (count == 0) throw ParseError("voter count must be positive");
        body = detail::trim(line.substr(x + 3));
      }
      const WeakOrder w = parse_order(body, *names);
      profile.insert(profile.end(), count, w);
    } catch (const ParseError& e) {
      throw ParseError(e.what(), line_no);
    } catch (const ArgumentError& e) {
      throw ParseError(e.what(), line_no);
    }
  }
  if (!names) throw ParseError("missing `alternatives:` header");
  if (profile.empty()) throw ParseError("profile has no voters");
  return {*names, std::move(profile)};
}

inline std::string format_profile_text(const Profile& p, const AlternativeSet& names) {
  std::string out = "alternatives: ";
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i > 0) out += ',';
    out += names.names()[i];
  }
  out += '\n';
  for (std::size_t v = 0; v < p.size();) {
    std::size_t run = 1;
    while (v + run < p.size() && p[v + run] == p[v]) ++run;
    if (run > 1) out += std::to_string(run) + " x ";
    out += format_order(p[v], names) + '\n';
    v += run;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Reports.

inline std::string_view relation_name(Relation r) {
  switch (r) {
    case Relation::kStrictlyBetter: return "better";
    case Relation::kIndifferent: return "indifferent";
    case Relation::kStrictlyWorse: return "worse";
  }
  return "?";
}

inline Relation relation_from_name(std::string_view s) {
  if (s == "better") return Relation::kStrictlyBetter;
  if (s == "indifferent") return Relation::kIndifferent;
  if (s == "worse") return Relation::kStrictlyWorse;
  throw ParseError("unknown relation '" + std::string(s) + "'");
}

inline Json witness_json(const Witness& w, const AlternativeSet& names) {
  if (const auto* m = std::get_if<ManipulationWitness>(&w)) {
    Json j;
    j["kind"] = "manipulation";
    Json coalition = Json::array(), deviation = Json::array();
    for (std::size_t i = 0; i < m->coalition.size(); ++i) {
      coalition.push_back(m->coalition[i] + 1);
      deviation.push_back(format_order(m->deviation[i], names));
    }
    j["coalition"] = std::move(coalition);
    j["truthful"] = profile_json(m->truthful, names);
    j["deviation"] = std::move(deviation);
    j["outcome_true"] = names.name(m->outcome_true);
    j["outcome_dev"] = names.name(m->outcome_dev);
    return j;
  }
  if (const auto* v = std::get_if<PrViolation>(&w)) {
    Json j;
    j["kind"] = v->kind == ReversalKind::kPr ? "pr-violation" : "apr-violation";
    j["P"] = profile_json(v->p, names);
    j["Q"] = profile_json(v->q, names);
    j["outcome_P"] = names.name(v->outcome_p);
    j["outcome_Q"] = names.name(v->outcome_q);
    Json analysis = Json::array();
    for (const auto& a : v->analysis) {
      Json e;
      e["voter"] = a.voter + 1;
      e["under_P"] = std::string(relation_name(a.under_p));
      e["under_Q"] = std::string(relation_name(a.under_q));
      e["changed"] = a.changed;
      analysis.push_back(std::move(e));
    }
    j["analysis"] = std::move(analysis);
    return j;
  }
  if (const auto* d = std::get_if<DictatorEvidence>(&w)) {
    Json j;
    j["kind"] = "dictator";
    if (d->dictator) {
      j["voter"] = *d->dictator + 1;
    } else {
      Json list = Json::array();
      for (const auto& c : d->counter_profiles) {
        Json e;
        e["voter"] = c.voter + 1;
        e["profile"] = profile_json(c.profile, names);
        e["outcome"] = names.name(c.outcome);
        list.push_back(std::move(e));
      }
      j["counter_profiles"] = std::move(list);
    }
    return j;
  }
  return nullptr;
}

inline Witness witness_from_json(const Json& j, const AlternativeSet& names) {
  if (j.is_null()) return std::monostate{};
  const auto kind = detail::json_get<std::string>(j, "kind");
  if (kind == "manipulation") {
    ManipulationWitness m;
    for (const auto& v : detail::json_get<Json>(j, "coalition")) {
      const auto id = v.get<long long>();
      if (id < 1) throw ParseError("voter ids are 1-based");
      m.coalition.push_back(static_cast<std::size_t>(id - 1));
    }
    m.truthful = profile_from_json(detail::json_get<Json>(j, "truthful"), names);
    for (const auto& o : detail::json_get<Json>(j, "deviation"))
      m.deviation.push_back(parse_order(o.get<std::string>(), names));
    m.outcome_true = names.at(detail::json_get<std::string>(j, "outcome_true"));
    m.outcome_dev = names.at(detail::json_get<std::string>(j, "outcome_dev"));
    return m;
  }
  if (kind == "pr-violation" || kind == "apr-violation") {
    PrViolation v;
    v.kind = kind == "pr-violation" ? ReversalKind::kPr : ReversalKind::kApr;
    v.p = profile_from_json(detail::json_get<Json>(j, "P"), names);
    v.q = profile_from_json(detail::json_get<Json>(j, "Q"), names);
    v.outcome_p = names.at(detail::json_get<std::string>(j, "outcome_P"));
    v.outcome_q = names.at(detail::json_get<std::string>(j, "outcome_Q"));
    for (const auto& e : detail::json_get<Json>(j, "analysis")) {
      v.analysis.push_back({detail::json_get<std::size_t>(e, "voter") - 1,
                            relation_from_name(detail::json_get<std::string>(e, "under_P")),
                            relation_from_name(detail::json_get<std::string>(e, "under_Q")),
                            detail::json_get<bool>(e, "changed")});
    }
    return v;
  }
  if (kind == "dictator") {
    DictatorEvidence d;
    if (j.contains("voter")) d.dictator = j["voter"].get<std::size_t>() - 1;
    if (j.contains("counter_profiles")) {
      for (const auto& e : j["counter_profiles"]) {
        d.counter_profiles.push_back({detail::json_get<std::size_t>(e, "voter") - 1,
                                      profile_from_json(detail::json_get<Json>(e, "profile"), names),
                                      names.at(detail::json_get<std::string>(e, "outcome"))});
      }
    }
    return d;
  }
  throw ParseError("unknown witness kind '" + kind + "'");
}

inline Json report_json(const PropertyReport& r, const AlternativeSet& names, bool timing = true) {
  Json j;
  j["property"] = std::string(property_name(r.property));
  j["holds"] = r.holds;
  if (!std::holds_alternative<std::monostate>(r.witness)) j["witness"] = witness_json(r.witness, names);
  j["checked"] = r.checked;
  if (timing)
    j["elapsed_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(r.elapsed).count();
  return j;
}

inline PropertyReport report_from_json(const Json& j, const AlternativeSet& names) {
  PropertyReport r;
  r.property = parse_property(detail::json_get<std::string>(j, "property"));
  r.holds = detail::json_get<bool>(j, "holds");
  if (j.contains("witness")) r.witness = witness_from_json(j["witness"], names);
  if (j.contains("checked")) r.checked = j["checked"].get<std::uint64_t>();
  if (j.contains("elapsed_ms")) r.elapsed = std::chrono::milliseconds(j["elapsed_ms"].get<long long>());
  return r;
}

// ---------------------------------------------------------------------------
// Verdicts.

inline Json verdict_json(const TheoremVerdict& v, bool timing = true) {
  Json j;
  j["theorem"] = v.theorem;
  j["universe"] = v.universe;
  j["status"] = v.status;
  j["holds"] = v.holds;
  if (!v.note.empty()) j["note"] = v.note;
  j["checked"] = v.checked;
  Json counts = Json::object();
  for (const auto& [key, value] : v.counts) counts[key] = value;
  j["counts"] = std::move(counts);
  if (v.seed) j["seed"] = *v.seed;
  if (v.counterexample) {
    const auto& names = v.counterexample->scf.domain().alternatives();
    Json ce;
    ce["scf"] = scf_json(v.counterexample->scf);
    Json reports = Json::array();
    for (const auto& r : v.counterexample->reports) reports.push_back(report_json(r, names, timing));
    ce["reports"] = std::move(reports);
    j["counterexample"] = std::move(ce);
  }
  if (timing)
    j["elapsed_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(v.elapsed).count();
  return j;
}

// Rebuilds a counterexample from a serialized verdict.
inline std::optional<Counterexample> counterexample_from_json(const Json& verdict) {
  if (!verdict.contains("counterexample")) return std::nullopt;
  const Json& ce = verdict["counterexample"];
  ScfDocument doc = scf_from_json(detail::json_get<Json>(ce, "scf"));
  Counterexample out{doc.scf, {}};
  const auto& names = doc.scf.domain().alternatives();
  for (const auto& r : detail::json_get<Json>(ce, "reports"))
    out.reports.push_back(report_from_json(r, names));
  return out;
}

}  // namespace scfv
