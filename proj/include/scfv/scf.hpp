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

// Social choice functions over a restricted product domain: tables, named
// rules, evaluation, tabulation and range.

#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "scfv/domains.hpp"
#include "scfv/error.hpp"
#include "scfv/parallel.hpp"
#include "scfv/prefs.hpp"

namespace scfv {

using Profile = std::vector<WeakOrder>;
using DomainPtr = std::shared_ptr<const Domain>;

// Mixed-radix profile numbering: voter 0 is the most significant digit and
// digit v is the canonical position of P_v inside feasible(v).
class ProfileCodec {
 public:
  ProfileCodec() = default;

  explicit ProfileCodec(const Domain& domain)
      : radices_(domain.voters()), strides_(domain.voters()) {
    const auto total = domain.profile_count();
    if (!total) throw ResourceError("profile space does not fit in 64 bits");
    count_ = *total;
    std::uint64_t stride = 1;
    for (std::size_t v = domain.voters(); v-- > 0;) {
      radices_[v] = domain.feasible(v).size();
      strides_[v] = stride;
      stride *= radices_[v];
    }
  }

  std::size_t voters() const noexcept { return radices_.size(); }
  std::uint64_t count() const noexcept { return count_; }
  std::uint64_t radix(std::size_t v) const { return radices_[v]; }
  std::uint64_t stride(std::size_t v) const { return strides_[v]; }

  std::uint64_t encode(std::span<const std::size_t> digits) const {
    std::uint64_t index = 0;
    for (std::size_t v = 0; v < radices_.size(); ++v) {
      if (digits[v] >= radices_[v]) throw ArgumentError("profile digit out of range");
      index += digits[v] * strides_[v];
    }
    return index;
  }

  void decode(std::uint64_t index, std::span<std::size_t> digits) const {
    if (index >= count_) throw ArgumentError("profile index out of range");
    for (std::size_t v = 0; v < radices_.size(); ++v) {
      digits[v] = static_cast<std::size_t>(index / strides_[v]);
      index %= strides_[v];
    }
  }

  std::size_t digit(std::uint64_t index, std::size_t v) const {
    return static_cast<std::size_t>((index / strides_[v]) % radices_[v]);
  }

 private:
  std::vector<std::uint64_t> radices_;
  std::vector<std::uint64_t> strides_;
  std::uint64_t count_ = 0;
};

inline std::vector<std::size_t> profile_digits(const Domain& domain, const Profile& profile) {
  if (profile.size() != domain.voters())
    throw ArgumentError("profile has " + std::to_string(profile.size()) + " voters, domain has " +
                        std::to_string(domain.voters()));
  std::vector<std::size_t> digits(profile.size());
  for (std::size_t v = 0; v < profile.size(); ++v) {
    const auto pos = domain.feasible(v).position(profile[v]);
    if (!pos)
      throw ArgumentError("voter " + std::to_string(v + 1) +
                          " reports an order outside its feasible set");
    digits[v] = *pos;
  }
  return digits;
}

inline Profile profile_from_digits(const Domain& domain, std::span<const std::size_t> digits) {
  Profile p(domain.voters());
  for (std::size_t v = 0; v < p.size(); ++v) p[v] = domain.feasible(v)[digits[v]];
  return p;
}

inline Profile decode_profile(const Domain& domain, const ProfileCodec& codec,
                              std::uint64_t index) {
  std::vector<std::size_t> digits(codec.voters());
  codec.decode(index, digits);
  return profile_from_digits(domain, digits);
}

// Named rule with typed parameters. Voter indices are 0-based here and
// 1-based in every external format.
struct RuleSpec {
  std::string name;
  std::optional<Alternative> constant = std::nullopt;
  std::optional<std::size_t> voter = std::nullopt;
  // Priority order, first entry wins ties.
  std::optional<AlternativeList> tiebreak = std::nullopt;
  std::optional<Axis> axis = std::nullopt;

  friend bool operator==(const RuleSpec&, const RuleSpec&) = default;
};

class Scf {
 public:
  using RuleFn = std::function<Alternative(std::span<const WeakOrder>)>;

  static Scf from_table(DomainPtr domain, std::vector<Alternative> table) {
    Scf f(std::move(domain));
    const auto count = f.domain_->profile_count();
    if (!count || table.size() != *count)
      throw ArgumentError("table size does not match the profile space");
    for (Alternative a : table)
      if (to_index(a) >= f.domain_->k()) throw ArgumentError("table entry out of range");
    f.table_ = std::move(table);
    f.codec_ = ProfileCodec(*f.domain_);
    return f;
  }

  static Scf from_rule(DomainPtr domain, RuleSpec spec, RuleFn fn) {
    Scf f(std::move(domain));
    f.rule_ = std::move(spec);
    f.fn_ = std::move(fn);
    if (f.domain_->profile_count()) f.codec_ = ProfileCodec(*f.domain_);
    return f;
  }

  const Domain& domain() const noexcept { return *domain_; }
  const DomainPtr& domain_ptr() const noexcept { return domain_; }
  bool is_table() const noexcept { return !fn_; }
  const std::vector<Alternative>& table() const noexcept { return table_; }
  const std::optional<RuleSpec>& rule() const noexcept { return rule_; }
  // Present whenever the profile space fits in 64 bits.
  const std::optional<ProfileCodec>& codec() const noexcept { return codec_; }

  Alternative evaluate(const Profile& profile) const {
    if (is_table()) {
      const auto digits = profile_digits(*domain_, profile);
      return table_[codec_->encode(digits)];
    }
    (void)profile_digits(*domain_, profile);
    return fn_(profile);
  }

  // Skips membership validation; `profile` must lie in the domain.
  Alternative evaluate_unchecked(std::span<const WeakOrder> profile) const {
    if (is_table()) {
      std::uint64_t index = 0;
      for (std::size_t v = 0; v < profile.size(); ++v)
        index += *domain_->feasible(v).position(profile[v]) * codec_->stride(v);
      return table_[index];
    }
    return fn_(profile);
  }

  Alternative evaluate_index(std::uint64_t index) const {
    if (!codec_) throw ResourceError("profile space does not fit in 64 bits");
    if (index >= codec_->count()) throw ArgumentError("profile index out of range");
    if (is_table()) return table_[index];
    return fn_(decode_profile(*domain_, *codec_, index));
  }

 private:
  explicit Scf(DomainPtr domain) : domain_(std::move(domain)) {
    if (!domain_) throw ArgumentError("null domain");
  }

  DomainPtr domain_;
  std::vector<Alternative> table_;
  std::optional<RuleSpec> rule_;
  RuleFn fn_;
  std::optional<ProfileCodec> codec_;
};

// Table body agreeing with `f` on every profile. Idempotent on tables.
inline Scf tabulate(const Scf& f, unsigned workers = 1,
                    std::uint64_t guard = kDefaultProfileGuard) {
  if (f.is_table()) return f;
  const std::uint64_t count = f.domain().checked_profile_count(guard);
  std::vector<Alternative> table(count);
  const auto& codec = *f.codec();
  parallel_for(count, workers, [&](std::uint64_t begin, std::uint64_t end) {
    std::vector<std::size_t> digits(codec.voters());
    codec.decode(begin, digits);
    Profile profile = profile_from_digits(f.domain(), digits);
    for (std::uint64_t i = begin; i < end; ++i) {
      table[i] = f.evaluate_unchecked(profile);
      // Odometer step, last voter least significant.
      for (std::size_t v = codec.voters(); v-- > 0;) {
        if (++digits[v] < codec.radix(v)) {
          profile[v] = f.domain().feasible(v)[digits[v]];
          break;
        }
        digits[v] = 0;
        profile[v] = f.domain().feasible(v)[0];
      }
    }
  });
  return Scf::from_table(f.domain_ptr(), std::move(table));
}

inline AlternativeList range_of(const Scf& f, unsigned workers = 1,
                                std::uint64_t guard = kDefaultProfileGuard) {
  const Scf t = tabulate(f, workers, guard);
  std::vector<bool> hit(f.domain().k(), false);
  for (Alternative a : t.table()) hit[to_index(a)] = true;
  AlternativeList out;
  for (std::size_t x = 0; x < hit.size(); ++x)
    if (hit[x]) out.push_back(alternative(x));
  return out;
}

// ---------------------------------------------------------------------------
// Built-in rules.

inline constexpr std::string_view kRuleConstant = "constant";
inline constexpr std::string_view kRuleDictator = "dictator-tiebreak";
inline constexpr std::string_view kRuleInverseTiebreak = "dictator-inverse-tiebreak";
inline constexpr std::string_view kRuleMedian = "median-peaks";
inline constexpr std::string_view kRulePlurality = "plurality-tiebreak";

inline std::vector<std::string_view> builtin_rule_names() {
  return {kRuleConstant, kRuleDictator, kRuleInverseTiebreak, kRuleMedian, kRulePlurality};
}

namespace detail {

inline AlternativeList identity_priority(std::size_t k) {
  AlternativeList order(k);
  for (std::size_t i = 0; i < k; ++i) order[i] = alternative(i);
  return order;
}

inline void check_priority(const AlternativeList& order, std::size_t k) {
  std::vector<bool> seen(k, false);
  if (order.size() != k) throw ArgumentError("tiebreak must list every alternative once");
  for (Alternative a : order) {
    if (to_index(a) >= k || seen[to_index(a)])
      throw ArgumentError("tiebreak must list every alternative once");
    seen[to_index(a)] = true;
  }
}

// First member of `priority` contained in the candidate mask.
inline Alternative first_by_priority(const AlternativeList& priority, std::uint32_t mask) {
  for (Alternative a : priority)
    if (mask & (1u << to_index(a))) return a;
  return priority.front();
}

inline std::uint32_t top_mask(const WeakOrder& w) {
  std::uint32_t mask = 0;
  for (std::size_t x = 0; x < w.size(); ++x)
    if (w.rank(alternative(x)) == 0) mask |= 1u << x;
  return mask;
}

}  // namespace detail

// Builds the named rule after checking its parameters against the domain.
//
//   constant                   always `constant`.
//   dictator-tiebreak          highest-priority member of the top set of `voter`.
//   dictator-inverse-tiebreak  two voters; voter 1's unique top if it exists,
//                              else among voter 1's tops those ranked lowest by
//                              voter 2, alphabetically first.
//   median-peaks               left median of the voters' peak positions on
//                              `axis`; requires strict single-peaked feasible sets.
//   plurality-tiebreak         most frequent unique top, ties by priority; a
//                              deliberately manipulable control.
inline Scf builtin(DomainPtr domain, RuleSpec spec) {
  if (!domain) throw ArgumentError("null domain");
  const std::size_t k = domain->k();
  const std::size_t n = domain->voters();
  const std::string& name = spec.name;

  if (name == kRuleConstant) {
    if (!spec.constant) throw ArgumentError("constant rule needs parameter `value`");
    if (to_index(*spec.constant) >= k) throw ArgumentError("constant out of range");
    const Alternative c = *spec.constant;
    return Scf::from_rule(std::move(domain), std::move(spec),
                          [c](std::span<const WeakOrder>) { return c; });
  }

  if (name == kRuleDictator) {
    if (!spec.voter) spec.voter = 0;
    if (*spec.voter >= n) throw ArgumentError("dictator voter out of range");
    if (!spec.tiebreak) spec.tiebreak = detail::identity_priority(k);
    detail::check_priority(*spec.tiebreak, k);
    const std::size_t v = *spec.voter;
    const AlternativeList priority = *spec.tiebreak;
    return Scf::from_rule(std::move(domain), std::move(spec),
                          [v, priority](std::span<const WeakOrder> p) {
                            return detail::first_by_priority(priority, detail::top_mask(p[v]));
                          });
  }

  if (name == kRuleInverseTiebreak) {
    if (n != 2) throw ArgumentError("dictator-inverse-tiebreak rule needs exactly 2 voters");
    return Scf::from_rule(std::move(domain), std::move(spec), [](std::span<const WeakOrder> p) {
      const AlternativeList tops = p[0].top_set();
      if (tops.size() == 1) return tops.front();
      // Best under the inverse of voter 2 = worst under voter 2.
      std::size_t worst = 0;
      for (Alternative a : tops) worst = std::max(worst, p[1].rank(a));
      for (Alternative a : tops)
        if (p[1].rank(a) == worst) return a;
      return tops.front();
    });
  }

  if (name == kRuleMedian) {
    if (!spec.axis) {
      const auto& first = domain->feasible(0);
      spec.axis = first.tag() == FeasibleTag::kSinglePeaked ? *first.axis() : Axis::identity(k);
    }
    if (spec.axis->size() != k) throw ArgumentError("axis size differs from k");
    for (std::size_t v = 0; v < n; ++v) {
      if (v > 0 && domain->feasible_ptr(v) == domain->feasible_ptr(v - 1)) continue;
      for (const auto& w : domain->feasible(v).orders())
        if (!w.is_strict() || !is_single_peaked(w, *spec.axis))
          throw ArgumentError("median-peaks requires strict single-peaked feasible sets");
    }
    const Axis axis = *spec.axis;
    return Scf::from_rule(std::move(domain), std::move(spec), [axis](std::span<const WeakOrder> p) {
      std::vector<std::size_t> peaks(p.size());
      for (std::size_t v = 0; v < p.size(); ++v) {
        for (std::size_t x = 0; x < p[v].size(); ++x) {
          if (p[v].rank(alternative(x)) == 0) {
            peaks[v] = axis.position(alternative(x));
            break;
          }
        }
      }
      const auto mid = peaks.begin() + static_cast<std::ptrdiff_t>((peaks.size() - 1) / 2);
      std::nth_element(peaks.begin(), mid, peaks.end());
      return axis.at(*mid);
    });
  }

  if (name == kRulePlurality) {
    if (!spec.tiebreak) spec.tiebreak = detail::identity_priority(k);
    detail::check_priority(*spec.tiebreak, k);
    const AlternativeList priority = *spec.tiebreak;
    return Scf::from_rule(std::move(domain), std::move(spec),
                          [priority, k](std::span<const WeakOrder> p) {
                            std::vector<std::size_t> votes(k, 0);
                            for (const auto& w : p) {
                              const auto mask = detail::top_mask(w);
                              if (std::has_single_bit(mask)) ++votes[std::countr_zero(mask)];
                            }
                            const std::size_t best = *std::max_element(votes.begin(), votes.end());
                            std::uint32_t mask = 0;
                            for (std::size_t x = 0; x < k; ++x)
                              if (votes[x] == best) mask |= 1u << x;
                            return detail::first_by_priority(priority, mask);
                          });
  }

  throw ArgumentError("unknown rule '" + name + "'");
}

}  // namespace scfv
