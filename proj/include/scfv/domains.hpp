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

// Feasible preference sets, restricted product domains, resolvent
// constructions and the completeness decision procedure.

#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "scfv/error.hpp"
#include "scfv/parallel.hpp"
#include "scfv/prefs.hpp"

namespace scfv {

enum class FeasibleTag : std::uint8_t {
  kUniversalWeak,
  kUniversalStrict,
  kSinglePeaked,
  kExplicitList,
};

inline std::string_view tag_name(FeasibleTag tag) {
  switch (tag) {
    case FeasibleTag::kUniversalWeak: return "universal-weak";
    case FeasibleTag::kUniversalStrict: return "universal-strict";
    case FeasibleTag::kSinglePeaked: return "single-peaked";
    case FeasibleTag::kExplicitList: return "explicit-list";
  }
  return "?";
}

// Non-empty, deduplicated, canonically sorted set of orders over one k.
class FeasibleSet {
 public:
  static FeasibleSet universal_weak(std::size_t k) {
    return FeasibleSet(enumerate_weak_orders(k), FeasibleTag::kUniversalWeak);
  }
  static FeasibleSet universal_strict(std::size_t k) {
    return FeasibleSet(enumerate_strict_orders(k), FeasibleTag::kUniversalStrict);
  }
  static FeasibleSet single_peaked(const Axis& axis, bool strict) {
    FeasibleSet s(enumerate_single_peaked(axis.size(), axis, strict),
                  FeasibleTag::kSinglePeaked);
    s.axis_ = axis;
    s.strict_ = strict;
    return s;
  }
  static FeasibleSet explicit_list(std::vector<WeakOrder> orders) {
    return FeasibleSet(std::move(orders), FeasibleTag::kExplicitList);
  }

  std::size_t k() const noexcept { return orders_.front().size(); }
  std::size_t size() const noexcept { return orders_.size(); }
  const std::vector<WeakOrder>& orders() const noexcept { return orders_; }
  const WeakOrder& operator[](std::size_t i) const { return orders_[i]; }
  FeasibleTag tag() const noexcept { return tag_; }
  // Meaningful for kSinglePeaked only.
  const std::optional<Axis>& axis() const noexcept { return axis_; }
  bool strict() const noexcept { return strict_; }

  std::optional<std::size_t> position(const WeakOrder& w) const {
    auto it = std::lower_bound(orders_.begin(), orders_.end(), w);
    if (it == orders_.end() || *it != w) return std::nullopt;
    return static_cast<std::size_t>(it - orders_.begin());
  }
  bool contains(const WeakOrder& w) const { return position(w).has_value(); }

  // Equality is on the member orders; provenance is descriptive only.
  bool operator==(const FeasibleSet& other) const { return orders_ == other.orders_; }

 private:
  FeasibleSet(std::vector<WeakOrder> orders, FeasibleTag tag)
      : orders_(std::move(orders)), tag_(tag) {
    if (orders_.empty()) throw ArgumentError("feasible set must be non-empty");
    std::sort(orders_.begin(), orders_.end());
    orders_.erase(std::unique(orders_.begin(), orders_.end()), orders_.end());
    for (const auto& w : orders_)
      if (w.size() != orders_.front().size())
        throw ArgumentError("feasible set mixes orders over different alternative counts");
  }

  std::vector<WeakOrder> orders_;
  FeasibleTag tag_;
  std::optional<Axis> axis_;
  bool strict_ = false;
};

using FeasibleSetPtr = std::shared_ptr<const FeasibleSet>;

// Default cap on profile-space size for anything that materializes tables
// or scans all profiles.
inline constexpr std::uint64_t kDefaultProfileGuard = 10'000'000;

// Cartesian product of per-voter feasible sets.
class Domain {
 public:
  Domain(AlternativeSet alternatives, std::vector<FeasibleSetPtr> feasible)
      : alternatives_(std::move(alternatives)), feasible_(std::move(feasible)) {
    if (feasible_.empty()) throw ArgumentError("domain needs at least one voter");
    for (const auto& f : feasible_) {
      if (!f) throw ArgumentError("null feasible set");
      if (f->k() != alternatives_.size())
        throw ArgumentError("feasible set alternative count differs from the domain");
    }
  }

  // n voters all drawing from `shared`.
  static Domain uniform(AlternativeSet alternatives, std::size_t voters, FeasibleSet shared) {
    auto ptr = std::make_shared<const FeasibleSet>(std::move(shared));
    return Domain(std::move(alternatives), std::vector<FeasibleSetPtr>(voters, ptr));
  }

  const AlternativeSet& alternatives() const noexcept { return alternatives_; }
  std::size_t k() const noexcept { return alternatives_.size(); }
  std::size_t voters() const noexcept { return feasible_.size(); }
  const FeasibleSet& feasible(std::size_t v) const { return *feasible_.at(v); }
  const FeasibleSetPtr& feasible_ptr(std::size_t v) const { return feasible_.at(v); }

  bool shares_one_feasible_set() const {
    for (const auto& f : feasible_)
      if (f != feasible_.front() && *f != *feasible_.front()) return false;
    return true;
  }

  // Product cardinality, or nullopt on 64-bit overflow.
  std::optional<std::uint64_t> profile_count() const {
    std::uint64_t total = 1;
    for (const auto& f : feasible_) {
      if (total > std::numeric_limits<std::uint64_t>::max() / f->size()) return std::nullopt;
      total *= f->size();
    }
    return total;
  }

  std::uint64_t checked_profile_count(std::uint64_t guard = kDefaultProfileGuard) const {
    const auto n = profile_count();
    if (!n || *n > guard)
      throw ResourceError("profile space exceeds the guard of " + std::to_string(guard) +
                          " profiles");
    return *n;
  }

 private:
  AlternativeSet alternatives_;
  std::vector<FeasibleSetPtr> feasible_;
};

// ---------------------------------------------------------------------------
// Resolvents.

// a is weakly above b under P and b weakly above a under Q: no resolvent can
// exist. Everything else is admissible.
inline bool admissible(const WeakOrder& p, const WeakOrder& q, Alternative a, Alternative b) {
  return !(p.weakly_prefers(a, b) && q.weakly_prefers(b, a));
}

// W ranks a strictly above every x != a that P ranks weakly below a.
inline bool resolves_indifference_at(const WeakOrder& w, const WeakOrder& p, Alternative a) {
  for (std::size_t x = 0; x < p.size(); ++x) {
    const Alternative ax = alternative(x);
    if (ax != a && p.weakly_prefers(a, ax) && !w.strictly_prefers(a, ax)) return false;
  }
  return true;
}

inline bool is_resolvent(const WeakOrder& w, Alternative a, Alternative b, const WeakOrder& p,
                         const WeakOrder& q) {
  if (a == b) throw ArgumentError("resolvent requires distinct alternatives");
  return resolves_indifference_at(w, p, a) && resolves_indifference_at(w, q, b);
}

// a > b > (everything else tied).
inline WeakOrder make_w_ab(Alternative a, Alternative b, std::size_t k) {
  if (a == b) throw ArgumentError("make_w_ab requires distinct alternatives");
  WeakOrder::Levels levels{{a}, {b}};
  AlternativeList rest;
  for (std::size_t x = 0; x < k; ++x)
    if (alternative(x) != a && alternative(x) != b) rest.push_back(alternative(x));
  if (!rest.empty()) levels.push_back(std::move(rest));
  return WeakOrder::from_levels(k, levels);
}

// Four-block resolvent for the case a >_Q b:
//   {a} > (everything not in {a, b} or L(Q, b)) > {b} > L(Q, b).
// The middle block holds L(P, a) \ L(Q, b) together with any alternative
// the construction leaves unconstrained.
inline WeakOrder make_w_prime(Alternative a, Alternative b, const WeakOrder& p,
                              const WeakOrder& q) {
  if (a == b) throw ArgumentError("make_w_prime requires distinct alternatives");
  if (!q.strictly_prefers(a, b))
    throw ArgumentError("make_w_prime requires a strictly above b in Q");
  (void)p;  // the P-side constraint is met by placing a alone on top
  const std::size_t k = q.size();
  AlternativeList middle, bottom;
  for (std::size_t x = 0; x < k; ++x) {
    const Alternative ax = alternative(x);
    if (ax == a || ax == b) continue;
    (q.weakly_prefers(b, ax) ? bottom : middle).push_back(ax);
  }
  WeakOrder::Levels levels{{a}};
  if (!middle.empty()) levels.push_back(std::move(middle));
  levels.push_back({b});
  if (!bottom.empty()) levels.push_back(std::move(bottom));
  return WeakOrder::from_levels(k, levels);
}

namespace detail {

// Strict single-peaked order with `top` as peak: first the axis segment from
// top toward `target` (inclusive), then the remaining right-hand side moving
// right, then the remaining left-hand side moving left.
inline WeakOrder sp_chain(Alternative top, Alternative target, const Axis& axis) {
  const std::size_t k = axis.size();
  const std::size_t t = axis.position(top);
  const std::size_t g = axis.position(target);
  AlternativeList order;
  std::size_t lo = t, hi = t;
  if (g >= t) {
    for (std::size_t p = t; p <= g; ++p) order.push_back(axis.at(p));
    hi = g;
  } else {
    for (std::size_t p = t + 1; p-- > g;) order.push_back(axis.at(p));
    lo = g;
  }
  for (std::size_t p = hi + 1; p < k; ++p) order.push_back(axis.at(p));
  for (std::size_t p = lo; p-- > 0;) order.push_back(axis.at(p));
  return WeakOrder::strict(order);
}

}  // namespace detail

// Single-peaked (a, b)-resolvent of single-peaked P, Q. If b >_P a the
// result peaks at b and keeps a above everything P ranks weakly below a;
// otherwise a >_Q b and the roles of a and b swap.
inline WeakOrder make_sp_resolvent(Alternative a, Alternative b, const WeakOrder& p,
                                   const WeakOrder& q, const Axis& axis) {
  if (a == b) throw ArgumentError("make_sp_resolvent requires distinct alternatives");
  if (!is_single_peaked(p, axis) || !is_single_peaked(q, axis))
    throw ArgumentError("make_sp_resolvent requires single-peaked P and Q");
  if (!admissible(p, q, a, b))
    throw ArgumentError("no resolvent exists: a weakly above b in P and b weakly above a in Q");
  if (p.strictly_prefers(b, a)) return detail::sp_chain(b, a, axis);
  return detail::sp_chain(a, b, axis);
}

// Canonically first member of `set` that is an (a, b)-resolvent of (P, Q).
inline std::optional<WeakOrder> find_resolvent(const FeasibleSet& set, Alternative a,
                                               Alternative b, const WeakOrder& p,
                                               const WeakOrder& q) {
  if (a == b) throw ArgumentError("resolvent requires distinct alternatives");
  if (!set.contains(p) || !set.contains(q))
    throw ArgumentError("P and Q must belong to the examined set");
  if (!admissible(p, q, a, b)) return std::nullopt;
  for (const auto& w : set.orders())
    if (is_resolvent(w, a, b, p, q)) return w;
  return std::nullopt;
}

struct ResolventGap {
  WeakOrder p;
  WeakOrder q;
  Alternative a;
  Alternative b;

  friend bool operator==(const ResolventGap&, const ResolventGap&) = default;
};

struct CompletenessResult {
  bool complete = false;
  std::optional<ResolventGap> gap;
  // Admissible (P, Q, a, b) quadruples examined in canonical order.
  std::uint64_t checked = 0;
};

inline constexpr std::uint64_t kDefaultCompletenessGuard = 1'000'000'000;

// Decides completeness. The reported gap is the lexicographically first
// (P, Q, a, b) in canonical order, whatever the worker count.
inline CompletenessResult is_complete(const FeasibleSet& set, unsigned workers = 1,
                                      std::uint64_t guard = kDefaultCompletenessGuard) {
  const std::uint64_t m = set.size();
  const std::uint64_t k = set.k();
  if (m * m * m * k * k > guard)
    throw ResourceError("completeness scan of " + std::to_string(m) + " orders over k = " +
                        std::to_string(k) + " exceeds the guard");

  struct Hit {
    ResolventGap gap;
    std::uint64_t offset;  // admissible quadruples before and including the gap within P's row
  };
  std::vector<std::uint64_t> row_admissible(m, 0);
  const auto hit = find_first<Hit>(m, workers, [&](std::uint64_t pi) -> std::optional<Hit> {
    const WeakOrder& p = set[pi];
    std::uint64_t count = 0;
    for (const auto& q : set.orders()) {
      for (std::size_t a = 0; a < k; ++a) {
        for (std::size_t b = 0; b < k; ++b) {
          if (a == b) continue;
          const Alternative aa = alternative(a), ab = alternative(b);
          if (!admissible(p, q, aa, ab)) continue;
          // Admissibility means at least one of the two constructive cases applies.
          if (!p.strictly_prefers(ab, aa) && !q.strictly_prefers(aa, ab))
            throw Error("internal: admissibility dichotomy violated");
          ++count;
          bool found = false;
          for (const auto& w : set.orders()) {
            if (is_resolvent(w, aa, ab, p, q)) {
              found = true;
              break;
            }
          }
          if (!found) return Hit{ResolventGap{p, q, aa, ab}, count};
        }
      }
    }
    row_admissible[pi] = count;
    return std::nullopt;
  });

  CompletenessResult result;
  if (hit) {
    result.complete = false;
    result.gap = hit->second.gap;
    for (std::uint64_t i = 0; i < hit->first; ++i) result.checked += row_admissible[i];
    result.checked += hit->second.offset;
  } else {
    result.complete = true;
    for (auto c : row_admissible) result.checked += c;
  }
  return result;
}

// ---------------------------------------------------------------------------
// Domain file format:
//
//   alternatives: a,b,c
//   voters: 2                  (optional; required for `voter *`)
//   voter 1:
//   a~b>c
//   c>a~b
//   voter 2: @universal-weak
//   voter *: @single-peaked(axis=1..k)
//
// Presets: @universal-weak, @universal-strict,
// @single-peaked(axis=1..k | axis=x<y<z [, weak]) (strict unless `weak`).

namespace detail {

inline std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r')) ++b;
  while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r')) --e;
  return std::string(s.substr(b, e - b));
}

inline std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

}  // namespace detail

// Parses `x<y<z`, or `1..k` / `identity` for the identity axis.
inline Axis parse_axis(std::string_view text, const AlternativeSet& names) {
  const std::string t = detail::trim(text);
  if (t == "1..k" || t == "identity" || t.empty()) return Axis::identity(names.size());
  AlternativeList order;
  for (const auto& part : detail::split(t, '<')) order.push_back(names.at(part));
  if (order.size() != names.size()) throw ParseError("axis must list every alternative once");
  return Axis(std::move(order));
}

inline std::string format_axis(const Axis& axis, const AlternativeSet& names) {
  std::string out;
  for (std::size_t p = 0; p < axis.size(); ++p) {
    if (p > 0) out += '<';
    out += names.name(axis.at(p));
  }
  return out;
}

// Resolves a preset body such as `@single-peaked(axis=1..k)`.
inline FeasibleSet parse_preset(std::string_view text, const AlternativeSet& names) {
  const std::string t = detail::trim(text);
  if (t == "@universal-weak") return FeasibleSet::universal_weak(names.size());
  if (t == "@universal-strict") return FeasibleSet::universal_strict(names.size());
  const std::string sp = "@single-peaked";
  if (t.rfind(sp, 0) == 0) {
    std::string args = detail::trim(std::string_view(t).substr(sp.size()));
    Axis axis = Axis::identity(names.size());
    bool strict = true;
    if (!args.empty()) {
      if (args.front() != '(' || args.back() != ')')
        throw ParseError("malformed preset '" + t + "'");
      for (const auto& arg : detail::split(std::string_view(args).substr(1, args.size() - 2), ',')) {
        if (arg.empty()) continue;
        if (arg == "weak") {
          strict = false;
        } else if (arg == "strict") {
          strict = true;
        } else if (arg.rfind("axis=", 0) == 0) {
          axis = parse_axis(std::string_view(arg).substr(5), names);
        } else {
          throw ParseError("unknown preset argument '" + arg + "'");
        }
      }
    }
    return FeasibleSet::single_peaked(axis, strict);
  }
  throw ParseError("unknown preset '" + t + "'");
}

inline std::string format_preset(const FeasibleSet& set, const AlternativeSet& names) {
  switch (set.tag()) {
    case FeasibleTag::kUniversalWeak: return "@universal-weak";
    case FeasibleTag::kUniversalStrict: return "@universal-strict";
    case FeasibleTag::kSinglePeaked: {
      std::string axis = set.axis()->is_identity() ? "1..k" : format_axis(*set.axis(), names);
      return "@single-peaked(axis=" + axis + (set.strict() ? "" : ",weak") + ")";
    }
    case FeasibleTag::kExplicitList: break;
  }
  return "";
}

inline Domain parse_domain(std::string_view text) {
  std::optional<AlternativeSet> names;
  std::optional<std::size_t> declared_voters;
  struct Block {
    std::size_t first_line = 0;
    std::optional<FeasibleSet> preset;
    std::vector<WeakOrder> orders;
  };
  std::vector<std::pair<std::optional<std::size_t>, Block>> blocks;  // nullopt voter = `*`

  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = detail::trim(raw.substr(0, raw.find('#')));
    if (line.empty()) continue;
    try {
      if (line.rfind("alternatives:", 0) == 0) {
        if (names) throw ParseError("duplicate alternatives header");
        names = AlternativeSet(detail::split(line.substr(13), ','));
        continue;
      }
      if (!names) throw ParseError("expected `alternatives:` header first");
      if (line.rfind("voters:", 0) == 0) {
        declared_voters = std::stoul(detail::trim(line.substr(7)));
        if (*declared_voters == 0) throw ParseError("voters must be positive");
        continue;
      }
      if (line.rfind("voter", 0) == 0 && line.find(':') != std::string::npos) {
        const auto colon = line.find(':');
        const std::string id = detail::trim(std::string_view(line).substr(5, colon - 5));
        std::optional<std::size_t> voter;
        if (id != "*") {
          std::size_t used = 0;
          const unsigned long v = std::stoul(id, &used);
          if (used != id.size() || v == 0) throw ParseError("bad voter id '" + id + "'");
          voter = v - 1;
        }
        Block block;
        block.first_line = line_no;
        const std::string rest = detail::trim(std::string_view(line).substr(colon + 1));
        if (!rest.empty()) block.preset = parse_preset(rest, *names);
        blocks.emplace_back(voter, std::move(block));
        continue;
      }
      if (blocks.empty()) throw ParseError("order outside a voter block");
      auto& block = blocks.back().second;
      if (block.preset) throw ParseError("voter block already defined by a preset");
      block.orders.push_back(parse_order(line, *names));
    } catch (const ParseError& e) {
      if (e.line() != 0) throw;
      throw ParseError(e.what(), line_no);
    } catch (const std::invalid_argument&) {
      throw ParseError("expected a number", line_no);
    } catch (const ArgumentError& e) {
      throw ParseError(e.what(), line_no);
    }
  }
  if (!names) throw ParseError("missing `alternatives:` header");
  if (blocks.empty()) throw ParseError("no voter blocks");

  std::size_t n = declared_voters.value_or(0);
  for (const auto& [voter, block] : blocks) {
    if (!voter && !declared_voters)
      throw ParseError("`voter *` requires a `voters:` line", block.first_line);
    if (voter) n = std::max(n, *voter + 1);
  }
  if (declared_voters && n != *declared_voters)
    throw ParseError("voter ids exceed the declared voter count");

  std::vector<FeasibleSetPtr> feasible(n);
  for (auto& [voter, block] : blocks) {
    if (!block.preset && block.orders.empty())
      throw ParseError("voter block has no orders", block.first_line);
    auto set = std::make_shared<const FeasibleSet>(
        block.preset ? std::move(*block.preset)
                     : FeasibleSet::explicit_list(std::move(block.orders)));
    if (voter) {
      if (feasible[*voter]) throw ParseError("voter defined twice", block.first_line);
      feasible[*voter] = set;
    } else {
      for (auto& f : feasible)
        if (!f) f = set;
    }
  }
  for (std::size_t v = 0; v < n; ++v)
    if (!feasible[v]) throw ParseError("voter " + std::to_string(v + 1) + " is not defined");
  return Domain(std::move(*names), std::move(feasible));
}

// A bare list of orders, one per line, without any header. Alternative
// names are taken from the first order and sorted; the result is a
// one-voter domain.
inline Domain parse_order_list(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line_no = 0;
  std::optional<AlternativeSet> names;
  std::vector<WeakOrder> orders;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = detail::trim(raw.substr(0, raw.find('#')));
    if (line.empty()) continue;
    try {
      if (!names) {
        std::vector<std::string> found;
        for (const auto& level : detail::split(line, '>'))
          for (const auto& name : detail::split(level, '~')) found.push_back(detail::trim(name));
        std::sort(found.begin(), found.end());
        names = AlternativeSet(std::move(found));
      }
      orders.push_back(parse_order(line, *names));
    } catch (const ParseError& e) {
      throw ParseError(e.what(), line_no);
    } catch (const ArgumentError& e) {
      throw ParseError(e.what(), line_no);
    }
  }
  if (!names) throw ParseError("no orders");
  return Domain::uniform(std::move(*names), 1, FeasibleSet::explicit_list(std::move(orders)));
}

// Domain file if it has an `alternatives:` header, bare order list otherwise.
inline Domain parse_domain_or_orders(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string raw;
  while (std::getline(in, raw)) {
    const std::string line = detail::trim(raw.substr(0, raw.find('#')));
    if (line.empty()) continue;
    if (line.rfind("alternatives:", 0) == 0) return parse_domain(text);
    break;
  }
  return parse_order_list(text);
}

inline std::string format_domain(const Domain& domain) {
  const auto& names = domain.alternatives();
  std::string out = "alternatives: ";
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i > 0) out += ',';
    out += names.names()[i];
  }
  out += '\n';
  for (std::size_t v = 0; v < domain.voters(); ++v) {
    const auto& set = domain.feasible(v);
    out += "voter " + std::to_string(v + 1) + ":";
    if (set.tag() != FeasibleTag::kExplicitList) {
      out += ' ' + format_preset(set, names) + '\n';
      continue;
    }
    out += '\n';
    for (const auto& w : set.orders()) out += format_order(w, names) + '\n';
  }
  return out;
}

}  // namespace scfv
