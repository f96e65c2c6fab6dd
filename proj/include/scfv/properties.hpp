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

// Exhaustive decision procedures with witnesses: individual and group
// strategy-proofness, preference reversal, almost preference reversal and
// dictatorship.
//
// Scan orders (all witnesses are the first hit in these orders, for any
// worker count):
//   ISP       profile index, then voter, then deviation position.
//   GSP       profile index, then coalition (by size, then lexicographic),
//             then the members' deviations (first member most significant).
//             Every member must change its report.
//   PR, APR   ordered pairs (P, Q), lexicographic on profile indices.
//   dictator  voter, then profile index.

#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "scfv/domains.hpp"
#include "scfv/error.hpp"
#include "scfv/parallel.hpp"
#include "scfv/prefs.hpp"
#include "scfv/scf.hpp"

namespace scfv {

enum class Property : std::uint8_t { kIsp, kGsp, kPr, kApr, kDictator };

inline std::string_view property_name(Property p) {
  switch (p) {
    case Property::kIsp: return "isp";
    case Property::kGsp: return "gsp";
    case Property::kPr: return "pr";
    case Property::kApr: return "apr";
    case Property::kDictator: return "dictator";
  }
  return "?";
}

inline Property parse_property(std::string_view s) {
  for (Property p : {Property::kIsp, Property::kGsp, Property::kPr, Property::kApr,
                     Property::kDictator})
    if (property_name(p) == s) return p;
  throw ArgumentError("unknown property '" + std::string(s) + "'");
}

// Coalition D reports `deviation` (aligned with `coalition`) instead of its
// truthful orders and every member strictly gains.
struct ManipulationWitness {
  std::vector<std::size_t> coalition;
  Profile truthful;
  std::vector<WeakOrder> deviation;
  Alternative outcome_true;
  Alternative outcome_dev;

  Profile deviated_profile() const {
    Profile q = truthful;
    for (std::size_t i = 0; i < coalition.size(); ++i) q[coalition[i]] = deviation[i];
    return q;
  }
  friend bool operator==(const ManipulationWitness&, const ManipulationWitness&) = default;
};

enum class ReversalKind : std::uint8_t { kPr, kApr };

struct VoterAnalysis {
  std::size_t voter;
  // phi(P) against phi(Q) under P_v, and phi(Q) against phi(P) under Q_v.
  Relation under_p;
  Relation under_q;
  bool changed;
  friend bool operator==(const VoterAnalysis&, const VoterAnalysis&) = default;
};

struct PrViolation {
  ReversalKind kind;
  Profile p;
  Profile q;
  Alternative outcome_p;
  Alternative outcome_q;
  std::vector<VoterAnalysis> analysis;
  friend bool operator==(const PrViolation&, const PrViolation&) = default;
};

struct CounterProfile {
  std::size_t voter;
  Profile profile;
  Alternative outcome;
  friend bool operator==(const CounterProfile&, const CounterProfile&) = default;
};

// When the property holds `dictator` is set; otherwise one counter-profile
// per voter shows the outcome outside that voter's top set.
struct DictatorEvidence {
  std::optional<std::size_t> dictator;
  std::vector<CounterProfile> counter_profiles;
  friend bool operator==(const DictatorEvidence&, const DictatorEvidence&) = default;
};

using Witness = std::variant<std::monostate, ManipulationWitness, PrViolation, DictatorEvidence>;

struct PropertyReport {
  Property property;
  bool holds = false;
  Witness witness;
  std::uint64_t checked = 0;
  std::chrono::nanoseconds elapsed{0};
};

struct CheckOptions {
  unsigned workers = 1;
  std::uint64_t guard = kDefaultProfileGuard;
  // Restricts which individual manipulations count (check_isp only).
  std::function<bool(const Profile& truthful, std::size_t voter, const WeakOrder& deviation)>
      accept_isp;
};

namespace detail {

// Tabulated scf plus flat rank tables: rank(v, d, x) is the rank of x in the
// d-th order of voter v's feasible set.
class Kernel {
 public:
  Kernel(const Scf& f, const CheckOptions& opt)
      : domain_(&f.domain()), k_(f.domain().k()), n_(f.domain().voters()) {
    count_ = f.domain().checked_profile_count(opt.guard);
    table_ = tabulate(f, opt.workers, opt.guard).table();
    codec_ = ProfileCodec(*domain_);
    ranks_.resize(n_);
    for (std::size_t v = 0; v < n_; ++v) {
      const auto& set = domain_->feasible(v);
      ranks_[v].resize(set.size() * k_);
      for (std::size_t d = 0; d < set.size(); ++d)
        for (std::size_t x = 0; x < k_; ++x)
          ranks_[v][d * k_ + x] = static_cast<std::uint8_t>(set[d].rank(alternative(x)));
    }
  }

  std::size_t k() const { return k_; }
  std::size_t voters() const { return n_; }
  std::uint64_t count() const { return count_; }
  const ProfileCodec& codec() const { return codec_; }
  const Domain& domain() const { return *domain_; }
  Alternative out(std::uint64_t p) const { return table_[p]; }
  std::uint8_t rank(std::size_t v, std::size_t d, Alternative x) const {
    return ranks_[v][d * k_ + to_index(x)];
  }
  Profile profile(std::uint64_t p) const { return decode_profile(*domain_, codec_, p); }
  const WeakOrder& order(std::size_t v, std::size_t d) const { return domain_->feasible(v)[d]; }

 private:
  const Domain* domain_;
  std::size_t k_, n_;
  std::uint64_t count_ = 0;
  std::vector<Alternative> table_;
  ProfileCodec codec_;
  std::vector<std::vector<std::uint8_t>> ranks_;
};

inline Relation relation_from_ranks(std::size_t rx, std::size_t ry) {
  if (rx < ry) return Relation::kStrictlyBetter;
  if (rx == ry) return Relation::kIndifferent;
  return Relation::kStrictlyWorse;
}

inline PrViolation make_violation(const Kernel& kern, ReversalKind kind, std::uint64_t p,
                                  std::uint64_t q) {
  PrViolation w{kind, kern.profile(p), kern.profile(q), kern.out(p), kern.out(q), {}};
  for (std::size_t v = 0; v < kern.voters(); ++v) {
    w.analysis.push_back({v, w.p[v].prefers(w.outcome_p, w.outcome_q),
                          w.q[v].prefers(w.outcome_q, w.outcome_p), w.p[v] != w.q[v]});
  }
  return w;
}

// Lexicographic combinations of {0..n-1} of size s.
inline bool next_combination(std::vector<std::size_t>& c, std::size_t n) {
  const std::size_t s = c.size();
  for (std::size_t i = s; i-- > 0;) {
    if (c[i] < n - s + i) {
      ++c[i];
      for (std::size_t j = i + 1; j < s; ++j) c[j] = c[j - 1] + 1;
      return true;
    }
  }
  return false;
}

template <class F>
PropertyReport timed(Property property, F&& body) {
  const auto start = std::chrono::steady_clock::now();
  PropertyReport r = body();
  r.property = property;
  r.elapsed = std::chrono::steady_clock::now() - start;
  return r;
}

}  // namespace detail

// No single voter gains strictly by misreporting, at any profile.
inline PropertyReport check_isp(const Scf& f, const CheckOptions& opt = {}) {
  return detail::timed(Property::kIsp, [&] {
    const detail::Kernel kern(f, opt);
    const auto& codec = kern.codec();
    std::uint64_t per_profile = 0;
    for (std::size_t v = 0; v < kern.voters(); ++v) per_profile += codec.radix(v) - 1;

    struct Hit {
      std::size_t voter, deviation;
      std::uint64_t offset;
    };
    const auto hit = find_first<Hit>(kern.count(), opt.workers,
                                     [&](std::uint64_t p) -> std::optional<Hit> {
      const Alternative a = kern.out(p);
      std::uint64_t offset = 0;
      for (std::size_t v = 0; v < kern.voters(); ++v) {
        const std::size_t d = codec.digit(p, v);
        const std::uint64_t base = p - d * codec.stride(v);
        const std::uint8_t truth = kern.rank(v, d, a);
        for (std::size_t e = 0; e < codec.radix(v); ++e) {
          if (e == d) continue;
          ++offset;
          const Alternative b = kern.out(base + e * codec.stride(v));
          if (kern.rank(v, d, b) >= truth) continue;
          if (opt.accept_isp && !opt.accept_isp(kern.profile(p), v, kern.order(v, e))) continue;
          return Hit{v, e, offset};
        }
      }
      return std::nullopt;
    });

    PropertyReport r;
    if (!hit) {
      r.holds = true;
      r.checked = kern.count() * per_profile;
      return r;
    }
    const auto [p, h] = *hit;
    r.holds = false;
    r.checked = p * per_profile + h.offset;
    const std::uint64_t q = p + (h.deviation - codec.digit(p, h.voter)) * codec.stride(h.voter);
    r.witness = ManipulationWitness{{h.voter}, kern.profile(p), {kern.order(h.voter, h.deviation)},
                                    kern.out(p), kern.out(q)};
    return r;
  });
}

// No coalition whose members all change their report gains strictly for
// every member. Restricting to changing members loses nothing: a member
// repeating its truthful order can be dropped from the coalition.
inline PropertyReport check_gsp(const Scf& f, const CheckOptions& opt = {}) {
  return detail::timed(Property::kGsp, [&] {
    const detail::Kernel kern(f, opt);
    const auto& codec = kern.codec();
    const std::size_t n = kern.voters();
    const std::uint64_t per_profile = kern.count() - 1;

    struct Hit {
      std::vector<std::size_t> coalition, deviation;
      std::uint64_t q;
      std::uint64_t offset;
    };
    const auto hit = find_first<Hit>(kern.count(), opt.workers,
                                     [&](std::uint64_t p) -> std::optional<Hit> {
      const Alternative a = kern.out(p);
      std::vector<std::size_t> dp(n);
      codec.decode(p, dp);
      std::uint64_t offset = 0;
      for (std::size_t s = 1; s <= n; ++s) {
        std::vector<std::size_t> members(s);
        for (std::size_t i = 0; i < s; ++i) members[i] = i;
        do {
          bool feasible = true;
          for (std::size_t v : members) feasible = feasible && codec.radix(v) > 1;
          if (!feasible) continue;
          // Deviation digits skip the truthful digit: slot j maps to j or j+1.
          std::vector<std::size_t> slot(s, 0);
          while (true) {
            std::uint64_t q = p;
            std::vector<std::size_t> dev(s);
            for (std::size_t i = 0; i < s; ++i) {
              const std::size_t v = members[i];
              dev[i] = slot[i] < dp[v] ? slot[i] : slot[i] + 1;
              q = q - dp[v] * codec.stride(v) + dev[i] * codec.stride(v);
            }
            ++offset;
            const Alternative b = kern.out(q);
            bool all_gain = b != a;
            for (std::size_t i = 0; all_gain && i < s; ++i) {
              const std::size_t v = members[i];
              all_gain = kern.rank(v, dp[v], b) < kern.rank(v, dp[v], a);
            }
            if (all_gain) return Hit{members, dev, q, offset};
            std::size_t i = s;
            while (i-- > 0) {
              if (++slot[i] < codec.radix(members[i]) - 1) break;
              slot[i] = 0;
            }
            if (i == static_cast<std::size_t>(-1)) break;
          }
        } while (detail::next_combination(members, n));
      }
      return std::nullopt;
    });

    PropertyReport r;
    if (!hit) {
      r.holds = true;
      r.checked = kern.count() * per_profile;
      return r;
    }
    const auto& [p, h] = *hit;
    r.holds = false;
    r.checked = p * per_profile + h.offset;
    ManipulationWitness w{h.coalition, kern.profile(p), {}, kern.out(p), kern.out(h.q)};
    for (std::size_t i = 0; i < h.coalition.size(); ++i)
      w.deviation.push_back(kern.order(h.coalition[i], h.deviation[i]));
    r.witness = std::move(w);
    return r;
  });
}

struct ReversalReports {
  PropertyReport pr;
  PropertyReport apr;
};

// One pairwise scan deciding both reversal properties. For every ordered
// pair with phi(P) != phi(Q):
//   PR   some voter v with P_v != Q_v has phi(P) >=_{P_v} phi(Q) and
//        phi(Q) >=_{Q_v} phi(P);
//   APR  some changing voter has the first comparison and some (possibly
//        other) changing voter has the second.
inline ReversalReports check_reversal(const Scf& f, const CheckOptions& opt = {}) {
  const auto start = std::chrono::steady_clock::now();
  const detail::Kernel kern(f, opt);
  const auto& codec = kern.codec();
  const std::size_t n = kern.voters();
  const std::uint64_t count = kern.count();
  const std::uint64_t per_profile = count - 1;

  struct Hit {
    std::uint64_t q, offset;
  };
  const auto hits = find_first_hits<2, Hit>(
      count, opt.workers,
      [&](std::uint64_t p, const std::array<bool, 2>& wanted) {
        std::array<std::optional<Hit>, 2> found;
        bool want_pr = wanted[0], want_apr = wanted[1];
        const Alternative a = kern.out(p);
        std::vector<std::size_t> dp(n), dq(n, 0);
        codec.decode(p, dp);
        std::uint64_t offset = 0;
        for (std::uint64_t q = 0; q < count && (want_pr || want_apr); ++q) {
          if (q != p) {
            ++offset;
            const Alternative b = kern.out(q);
            if (a != b) {
              bool pr = false, first = false, second = false;
              for (std::size_t v = 0; v < n; ++v) {
                if (dp[v] == dq[v]) continue;
                const bool c1 = kern.rank(v, dp[v], a) <= kern.rank(v, dp[v], b);
                const bool c2 = kern.rank(v, dq[v], b) <= kern.rank(v, dq[v], a);
                pr = pr || (c1 && c2);
                first = first || c1;
                second = second || c2;
              }
              if (want_pr && !pr) {
                found[0] = Hit{q, offset};
                want_pr = false;
              }
              if (want_apr && !(first && second)) {
                found[1] = Hit{q, offset};
                want_apr = false;
              }
            }
          }
          for (std::size_t v = n; v-- > 0;) {
            if (++dq[v] < codec.radix(v)) break;
            dq[v] = 0;
          }
        }
        return found;
      });

  const auto elapsed = std::chrono::steady_clock::now() - start;
  ReversalReports out;
  auto fill = [&](PropertyReport& r, Property prop, ReversalKind kind,
                  const std::optional<std::pair<std::uint64_t, Hit>>& hit) {
    r.property = prop;
    r.elapsed = elapsed;
    if (!hit) {
      r.holds = true;
      r.checked = count * per_profile;
      return;
    }
    r.holds = false;
    r.checked = hit->first * per_profile + hit->second.offset;
    r.witness = detail::make_violation(kern, kind, hit->first, hit->second.q);
  };
  fill(out.pr, Property::kPr, ReversalKind::kPr, hits[0]);
  fill(out.apr, Property::kApr, ReversalKind::kApr, hits[1]);
  return out;
}

inline PropertyReport check_pr(const Scf& f, const CheckOptions& opt = {}) {
  return check_reversal(f, opt).pr;
}

inline PropertyReport check_apr(const Scf& f, const CheckOptions& opt = {}) {
  return check_reversal(f, opt).apr;
}

// Some voter v always gets an outcome from their own top set.
inline PropertyReport check_dictator(const Scf& f, const CheckOptions& opt = {}) {
  return detail::timed(Property::kDictator, [&] {
    const detail::Kernel kern(f, opt);
    const auto& codec = kern.codec();
    PropertyReport r;
    DictatorEvidence evidence;
    for (std::size_t v = 0; v < kern.voters(); ++v) {
      const auto hit = find_first<bool>(kern.count(), opt.workers,
                                        [&](std::uint64_t p) -> std::optional<bool> {
        if (kern.rank(v, codec.digit(p, v), kern.out(p)) != 0) return true;
        return std::nullopt;
      });
      if (!hit) {
        r.checked += kern.count();
        r.holds = true;
        r.witness = DictatorEvidence{v, {}};
        return r;
      }
      r.checked += hit->first + 1;
      evidence.counter_profiles.push_back({v, kern.profile(hit->first), kern.out(hit->first)});
    }
    r.holds = false;
    r.witness = std::move(evidence);
    return r;
  });
}

inline PropertyReport check_property(const Scf& f, Property p, const CheckOptions& opt = {}) {
  switch (p) {
    case Property::kIsp: return check_isp(f, opt);
    case Property::kGsp: return check_gsp(f, opt);
    case Property::kPr: return check_pr(f, opt);
    case Property::kApr: return check_apr(f, opt);
    case Property::kDictator: return check_dictator(f, opt);
  }
  throw ArgumentError("unknown property");
}

// ---------------------------------------------------------------------------
// Witness re-validation through Scf::evaluate only; nothing here reuses the
// checkers' tables.

inline bool validate_manipulation(const Scf& f, const ManipulationWitness& w) {
  if (w.coalition.empty() || w.coalition.size() != w.deviation.size()) return false;
  for (std::size_t i = 0; i < w.coalition.size(); ++i) {
    if (w.coalition[i] >= w.truthful.size()) return false;
    if (i > 0 && w.coalition[i] <= w.coalition[i - 1]) return false;
    if (w.deviation[i] == w.truthful[w.coalition[i]]) return false;
  }
  const Alternative truth = f.evaluate(w.truthful);
  const Alternative dev = f.evaluate(w.deviated_profile());
  if (truth != w.outcome_true || dev != w.outcome_dev) return false;
  for (std::size_t v : w.coalition)
    if (!w.truthful[v].strictly_prefers(dev, truth)) return false;
  return true;
}

inline bool validate_violation(const Scf& f, const PrViolation& w) {
  const Alternative a = f.evaluate(w.p);
  const Alternative b = f.evaluate(w.q);
  if (a != w.outcome_p || b != w.outcome_q || a == b) return false;
  if (w.analysis.size() != w.p.size()) return false;
  bool pr = false, first = false, second = false;
  for (std::size_t v = 0; v < w.p.size(); ++v) {
    const VoterAnalysis expect{v, w.p[v].prefers(a, b), w.q[v].prefers(b, a), w.p[v] != w.q[v]};
    if (!(w.analysis[v] == expect)) return false;
    if (!expect.changed) continue;
    const bool c1 = w.p[v].weakly_prefers(a, b);
    const bool c2 = w.q[v].weakly_prefers(b, a);
    pr = pr || (c1 && c2);
    first = first || c1;
    second = second || c2;
  }
  return w.kind == ReversalKind::kPr ? !pr : !(first && second);
}

// A claimed dictator is re-verified by a full profile sweep.
inline bool validate_dictator(const Scf& f, const DictatorEvidence& e,
                              std::uint64_t guard = kDefaultProfileGuard) {
  const Domain& d = f.domain();
  if (e.dictator) {
    const std::size_t v = *e.dictator;
    if (v >= d.voters()) return false;
    const std::uint64_t count = d.checked_profile_count(guard);
    ProfileCodec codec(d);
    for (std::uint64_t i = 0; i < count; ++i) {
      const Profile p = decode_profile(d, codec, i);
      if (p[v].rank(f.evaluate(p)) != 0) return false;
    }
    return true;
  }
  if (e.counter_profiles.size() != d.voters()) return false;
  for (std::size_t v = 0; v < d.voters(); ++v) {
    const auto& c = e.counter_profiles[v];
    if (c.voter != v) return false;
    const Alternative got = f.evaluate(c.profile);
    if (got != c.outcome || c.profile[v].rank(got) == 0) return false;
  }
  return true;
}

// True when the report's witness re-validates (or, for a holding report
// without a witness, trivially).
inline bool validate_report(const Scf& f, const PropertyReport& r) {
  if (std::holds_alternative<std::monostate>(r.witness)) return r.holds;
  if (const auto* m = std::get_if<ManipulationWitness>(&r.witness)) {
    if (r.holds) return false;
    if (r.property == Property::kIsp && m->coalition.size() != 1) return false;
    return validate_manipulation(f, *m);
  }
  if (const auto* v = std::get_if<PrViolation>(&r.witness)) {
    if (r.holds) return false;
    const auto want = r.property == Property::kPr ? ReversalKind::kPr : ReversalKind::kApr;
    return v->kind == want && validate_violation(f, *v);
  }
  const auto& e = std::get<DictatorEvidence>(r.witness);
  return r.holds == e.dictator.has_value() && validate_dictator(f, e);
}

}  // namespace scfv
