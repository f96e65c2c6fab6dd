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

// Weak, strict and single-peaked preference orders over a finite set of
// alternatives, their textual notation (`a~b>c`) and canonical enumerators.

#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "scfv/error.hpp"

namespace scfv {

enum class Alternative : std::uint8_t {};

constexpr std::size_t to_index(Alternative a) noexcept {
  return static_cast<std::size_t>(a);
}
constexpr Alternative alternative(std::size_t i) noexcept {
  return static_cast<Alternative>(i);
}

// Hard capacity of a WeakOrder.
inline constexpr std::size_t kMaxAlternatives = 16;
// Enumerators refuse larger k: ordered Bell(8) = 545835 is already past desk
// scale once products of feasible sets are formed.
inline constexpr std::size_t kMaxEnumeratedAlternatives = 8;

using AlternativeList = std::vector<Alternative>;

// Letters a, b, c, ... for k <= 26, otherwise 1..k.
inline std::string default_name(std::size_t i, std::size_t k) {
  if (k <= 26) return std::string(1, static_cast<char>('a' + i));
  return std::to_string(i + 1);
}

class AlternativeSet {
 public:
  AlternativeSet() = default;

  explicit AlternativeSet(std::vector<std::string> names) : names_(std::move(names)) {
    if (names_.empty()) throw ArgumentError("alternative set must be non-empty");
    if (names_.size() > kMaxAlternatives)
      throw ResourceError("at most " + std::to_string(kMaxAlternatives) +
                          " alternatives are supported");
    for (std::size_t i = 0; i < names_.size(); ++i) {
      if (names_[i].empty()) throw ArgumentError("alternative names must be non-empty");
      for (char c : names_[i]) {
        if (c == '>' || c == '~' || c == ',' || c == '<' || c == ' ' || c == '\t')
          throw ArgumentError("alternative name '" + names_[i] +
                              "' contains a reserved character");
      }
      if (!index_.emplace(names_[i], i).second)
        throw ArgumentError("duplicate alternative name '" + names_[i] + "'");
    }
  }

  static AlternativeSet letters(std::size_t k) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < k; ++i) names.push_back(default_name(i, k));
    return AlternativeSet(std::move(names));
  }

  static AlternativeSet numbers(std::size_t k) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < k; ++i) names.push_back(std::to_string(i + 1));
    return AlternativeSet(std::move(names));
  }

  std::size_t size() const noexcept { return names_.size(); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  const std::string& name(Alternative a) const { return names_.at(to_index(a)); }

  std::optional<Alternative> find(std::string_view name) const {
    auto it = index_.find(std::string(name));
    if (it == index_.end()) return std::nullopt;
    return alternative(it->second);
  }

  Alternative at(std::string_view name) const {
    auto a = find(name);
    if (!a) throw ParseError("unknown alternative '" + std::string(name) + "'");
    return *a;
  }

  bool operator==(const AlternativeSet& other) const { return names_ == other.names_; }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, std::size_t> index_;
};

enum class Relation : std::uint8_t { kStrictlyBetter, kIndifferent, kStrictlyWorse };

// Complete transitive preference stored as a rank vector: ranks[x] is the
// indifference level of x, level 0 best. Levels are contiguous 0..L-1.
class WeakOrder {
 public:
  using Levels = std::vector<AlternativeList>;

  WeakOrder() = default;

  static WeakOrder from_ranks(std::span<const std::size_t> ranks) {
    if (ranks.empty() || ranks.size() > kMaxAlternatives)
      throw ArgumentError("rank vector size must be in [1, " +
                          std::to_string(kMaxAlternatives) + "]");
    WeakOrder w;
    w.size_ = static_cast<std::uint8_t>(ranks.size());
    std::uint32_t seen = 0;
    for (std::size_t x = 0; x < ranks.size(); ++x) {
      if (ranks[x] >= ranks.size()) throw ArgumentError("rank out of range");
      w.ranks_[x] = static_cast<std::uint8_t>(ranks[x]);
      seen |= 1u << ranks[x];
    }
    const auto levels = static_cast<std::size_t>(std::popcount(seen));
    if (seen != (1u << levels) - 1u)
      throw ArgumentError("rank levels must be contiguous from 0");
    w.levels_ = static_cast<std::uint8_t>(levels);
    return w;
  }

  static WeakOrder from_ranks(std::initializer_list<std::size_t> ranks) {
    return from_ranks(std::span<const std::size_t>(ranks.begin(), ranks.size()));
  }

  // `levels` lists indifference classes best first; together they must
  // partition {0, ..., k-1}.
  static WeakOrder from_levels(std::size_t k, const Levels& levels) {
    if (k == 0 || k > kMaxAlternatives)
      throw ArgumentError("alternative count out of range");
    std::vector<std::size_t> ranks(k, k);
    for (std::size_t r = 0; r < levels.size(); ++r) {
      if (levels[r].empty())
        throw ArgumentError("level " + std::to_string(r + 1) + " is empty");
      for (Alternative a : levels[r]) {
        const auto x = to_index(a);
        if (x >= k) throw ArgumentError("alternative index out of range");
        if (ranks[x] != k)
          throw ArgumentError("alternative " + default_name(x, k) + " in two levels");
        ranks[x] = r;
      }
    }
    for (std::size_t x = 0; x < k; ++x) {
      if (ranks[x] == k)
        throw ArgumentError("alternative " + default_name(x, k) + " missing from levels");
    }
    return from_ranks(std::span<const std::size_t>(ranks));
  }

  // All alternatives tied.
  static WeakOrder indifferent(std::size_t k) {
    std::vector<std::size_t> ranks(k, 0);
    return from_ranks(std::span<const std::size_t>(ranks));
  }

  // The strict order listing `order` best first.
  static WeakOrder strict(std::span<const Alternative> order) {
    Levels levels;
    for (Alternative a : order) levels.push_back({a});
    return from_levels(order.size(), levels);
  }

  std::size_t size() const noexcept { return size_; }
  std::size_t level_count() const noexcept { return levels_; }
  std::size_t rank(Alternative x) const noexcept { return ranks_[to_index(x)]; }
  std::span<const std::uint8_t> ranks() const noexcept { return {ranks_.data(), size_}; }

  Relation prefers(Alternative x, Alternative y) const noexcept {
    const auto rx = rank(x), ry = rank(y);
    if (rx < ry) return Relation::kStrictlyBetter;
    if (rx == ry) return Relation::kIndifferent;
    return Relation::kStrictlyWorse;
  }
  // x weakly preferred to y.
  bool weakly_prefers(Alternative x, Alternative y) const noexcept { return rank(x) <= rank(y); }
  bool strictly_prefers(Alternative x, Alternative y) const noexcept { return rank(x) < rank(y); }
  bool indifferent(Alternative x, Alternative y) const noexcept { return rank(x) == rank(y); }

  AlternativeList level(std::size_t r) const {
    AlternativeList out;
    for (std::size_t x = 0; x < size_; ++x)
      if (ranks_[x] == r) out.push_back(alternative(x));
    return out;
  }

  Levels levels() const {
    Levels out(levels_);
    for (std::size_t x = 0; x < size_; ++x) out[ranks_[x]].push_back(alternative(x));
    return out;
  }

  AlternativeList top_set() const { return level(0); }

  // {y != x : x weakly preferred to y}.
  AlternativeList lower_contour(Alternative x) const {
    AlternativeList out;
    for (std::size_t y = 0; y < size_; ++y)
      if (y != to_index(x) && ranks_[to_index(x)] <= ranks_[y]) out.push_back(alternative(y));
    return out;
  }

  WeakOrder inverted() const {
    WeakOrder w = *this;
    for (std::size_t x = 0; x < size_; ++x)
      w.ranks_[x] = static_cast<std::uint8_t>(levels_ - 1 - ranks_[x]);
    return w;
  }

  bool is_strict() const noexcept { return levels_ == size_; }

  friend bool operator==(const WeakOrder&, const WeakOrder&) = default;
  // Lexicographic on rank vectors; orders over different k compare by k first.
  friend std::strong_ordering operator<=>(const WeakOrder& a, const WeakOrder& b) {
    if (auto c = a.size_ <=> b.size_; c != 0) return c;
    return a.ranks_ <=> b.ranks_;
  }

  std::size_t hash() const noexcept {
    std::size_t h = size_;
    for (std::size_t x = 0; x < size_; ++x) h = h * 31 + ranks_[x];
    return h;
  }

 private:
  std::array<std::uint8_t, kMaxAlternatives> ranks_{};
  std::uint8_t size_ = 0;
  std::uint8_t levels_ = 0;
};

// Left-to-right spatial order used for single-peakedness.
class Axis {
 public:
  Axis() = default;

  explicit Axis(AlternativeList order) : order_(std::move(order)), position_(order_.size()) {
    std::vector<bool> seen(order_.size(), false);
    for (std::size_t p = 0; p < order_.size(); ++p) {
      const auto x = to_index(order_[p]);
      if (x >= order_.size() || seen[x]) throw ArgumentError("axis is not a permutation");
      seen[x] = true;
      position_[x] = p;
    }
  }

  static Axis identity(std::size_t k) {
    AlternativeList order(k);
    for (std::size_t i = 0; i < k; ++i) order[i] = alternative(i);
    return Axis(std::move(order));
  }

  std::size_t size() const noexcept { return order_.size(); }
  const AlternativeList& order() const noexcept { return order_; }
  Alternative at(std::size_t position) const { return order_.at(position); }
  std::size_t position(Alternative a) const { return position_.at(to_index(a)); }
  bool is_identity() const {
    for (std::size_t p = 0; p < order_.size(); ++p)
      if (to_index(order_[p]) != p) return false;
    return true;
  }

  bool operator==(const Axis& other) const { return order_ == other.order_; }

 private:
  AlternativeList order_;
  std::vector<std::size_t> position_;
};

// Unique top p, strictly worse stepping away from p on either side. Ties
// between alternatives on opposite sides of the peak are allowed.
inline bool is_single_peaked(const WeakOrder& w, const Axis& axis) {
  const std::size_t k = w.size();
  if (axis.size() != k) throw ArgumentError("axis size differs from order size");
  std::size_t peak = k;
  for (std::size_t p = 0; p < k; ++p) {
    if (w.rank(axis.at(p)) == 0) {
      if (peak != k) return false;
      peak = p;
    }
  }
  for (std::size_t p = peak; p + 1 < k; ++p)
    if (!w.strictly_prefers(axis.at(p), axis.at(p + 1))) return false;
  for (std::size_t p = peak; p > 0; --p)
    if (!w.strictly_prefers(axis.at(p), axis.at(p - 1))) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Textual notation: levels separated by '>', ties by '~', e.g. `a~b>c`.

inline std::string format_order(const WeakOrder& w, const AlternativeSet& names) {
  std::string out;
  const auto levels = w.levels();
  for (std::size_t r = 0; r < levels.size(); ++r) {
    if (r > 0) out += '>';
    for (std::size_t i = 0; i < levels[r].size(); ++i) {
      if (i > 0) out += '~';
      out += names.name(levels[r][i]);
    }
  }
  return out;
}

inline WeakOrder parse_order(std::string_view text, const AlternativeSet& names) {
  std::string compact;
  for (char c : text)
    if (c != ' ' && c != '\t' && c != '\r' && c != '\n') compact += c;
  if (compact.empty()) throw ParseError("empty order");

  WeakOrder::Levels levels;
  std::vector<bool> used(names.size(), false);
  std::size_t start = 0;
  while (true) {
    const auto end = compact.find('>', start);
    const std::string_view level_text =
        std::string_view(compact).substr(start, end == std::string::npos ? end : end - start);
    if (level_text.empty())
      throw ParseError("empty level " + std::to_string(levels.size() + 1) + " in '" +
                       compact + "'");
    AlternativeList level;
    std::size_t s = 0;
    while (true) {
      const auto e = level_text.find('~', s);
      const auto name = level_text.substr(s, e == std::string_view::npos ? e : e - s);
      if (name.empty()) throw ParseError("empty name in '" + compact + "'");
      const Alternative a = names.at(name);
      if (used[to_index(a)])
        throw ParseError("alternative " + std::string(name) + " in two levels");
      used[to_index(a)] = true;
      level.push_back(a);
      if (e == std::string_view::npos) break;
      s = e + 1;
    }
    levels.push_back(std::move(level));
    if (end == std::string::npos) break;
    start = end + 1;
  }
  for (std::size_t x = 0; x < names.size(); ++x)
    if (!used[x])
      throw ParseError("alternative " + names.names()[x] + " missing from '" + compact + "'");
  return WeakOrder::from_levels(names.size(), levels);
}

// ---------------------------------------------------------------------------
// Enumeration. All enumerators emit lexicographically increasing rank vectors.

namespace detail {

inline void check_enumeration_guard(std::size_t k) {
  if (k == 0) throw ArgumentError("k must be at least 1");
  if (k > kMaxEnumeratedAlternatives)
    throw ResourceError("enumeration limited to k <= " +
                        std::to_string(kMaxEnumeratedAlternatives) + " (got " +
                        std::to_string(k) + ")");
}

inline void enumerate_weak(std::size_t k, std::size_t pos, std::uint32_t used,
                           std::array<std::size_t, kMaxAlternatives>& ranks,
                           const std::function<void(const WeakOrder&)>& emit) {
  if (pos == k) {
    const auto levels = std::popcount(used);
    if (used == (1u << levels) - 1u)
      emit(WeakOrder::from_ranks(std::span<const std::size_t>(ranks.data(), k)));
    return;
  }
  for (std::size_t r = 0; r < k; ++r) {
    const std::uint32_t next = used | (1u << r);
    // Holes below the highest used level must still be fillable.
    const auto highest = static_cast<std::size_t>(std::bit_width(next));
    const auto holes = highest - static_cast<std::size_t>(std::popcount(next));
    if (holes > k - pos - 1) continue;
    ranks[pos] = r;
    enumerate_weak(k, pos + 1, next, ranks, emit);
  }
}

}  // namespace detail

inline void for_each_weak_order(std::size_t k, const std::function<void(const WeakOrder&)>& emit) {
  detail::check_enumeration_guard(k);
  std::array<std::size_t, kMaxAlternatives> ranks{};
  detail::enumerate_weak(k, 0, 0, ranks, emit);
}

inline std::vector<WeakOrder> enumerate_weak_orders(std::size_t k) {
  std::vector<WeakOrder> out;
  for_each_weak_order(k, [&](const WeakOrder& w) { out.push_back(w); });
  return out;
}

inline std::vector<WeakOrder> enumerate_strict_orders(std::size_t k) {
  detail::check_enumeration_guard(k);
  std::vector<std::size_t> ranks(k);
  std::iota(ranks.begin(), ranks.end(), std::size_t{0});
  std::vector<WeakOrder> out;
  do {
    out.push_back(WeakOrder::from_ranks(std::span<const std::size_t>(ranks)));
  } while (std::next_permutation(ranks.begin(), ranks.end()));
  return out;
}

inline std::vector<WeakOrder> enumerate_single_peaked(std::size_t k, const Axis& axis,
                                                      bool strict) {
  detail::check_enumeration_guard(k);
  if (axis.size() != k) throw ArgumentError("axis size differs from k");
  std::vector<WeakOrder> out;
  auto keep = [&](const WeakOrder& w) {
    if (is_single_peaked(w, axis)) out.push_back(w);
  };
  if (strict) {
    for (const auto& w : enumerate_strict_orders(k)) keep(w);
  } else {
    for_each_weak_order(k, keep);
  }
  return out;
}

}  // namespace scfv

template <>
struct std::hash<scfv::WeakOrder> {
  std::size_t operator()(const scfv::WeakOrder& w) const noexcept { return w.hash(); }
};
