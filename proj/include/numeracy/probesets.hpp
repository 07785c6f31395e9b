#pragma once

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "numeracy/bundle.hpp"
#include "numeracy/error.hpp"

namespace numeracy {

enum class ValueScale { Count, Magnitude, Rank };

constexpr std::string_view to_string(ValueScale s) {
  switch (s) {
    case ValueScale::Count: return "count";
    case ValueScale::Magnitude: return "magnitude";
    case ValueScale::Rank: return "rank";
  }
  return "count";
}

struct TokenEntry {
  std::string surface;
  double value = 0.0;
  std::string label;

  friend bool operator==(const TokenEntry&, const TokenEntry&) = default;
};

/// Named probe set. Entries are ordered by strictly increasing value and
/// surfaces are unique; `make` enforces both.
struct TokenSet {
  std::string name;
  std::vector<TokenEntry> entries;
  ValueScale value_scale_hint = ValueScale::Count;

  static TokenSet make(std::string name, std::vector<TokenEntry> entries, ValueScale hint) {
    if (entries.empty()) throw Error(ErrorCode::InvalidArgument, "token set '" + name + "' is empty");
    std::set<std::string_view> seen;
    for (std::size_t i = 0; i < entries.size(); ++i) {
      auto& e = entries[i];
      if (e.surface.empty()) throw Error(ErrorCode::InvalidArgument, "empty surface in set '" + name + "'");
      if (!std::isfinite(e.value)) {
        throw Error(ErrorCode::InvalidArgument, "non-finite value for '" + e.surface + "'");
      }
      if (!seen.insert(e.surface).second) {
        throw Error(ErrorCode::ParseError, "duplicate surface '" + e.surface + "'");
      }
      if (i > 0 && !(entries[i - 1].value < e.value)) {
        throw Error(ErrorCode::DuplicateValue,
                    "values must be strictly increasing at '" + e.surface + "'");
      }
      if (e.label.empty()) e.label = e.surface;
    }
    return TokenSet{std::move(name), std::move(entries), hint};
  }

  std::size_t size() const noexcept { return entries.size(); }

  std::vector<double> values() const {
    std::vector<double> v;
    v.reserve(entries.size());
    for (const auto& e : entries) v.push_back(e.value);
    return v;
  }

  friend bool operator==(const TokenSet&, const TokenSet&) = default;
};

inline constexpr std::array<std::string_view, 5> kBuiltinSetNames = {
    "numerals_0_20", "words_zero_twenty", "numerals_1_100", "magnitudes", "ordinals"};

inline TokenSet builtin_set(std::string_view name) {
  static constexpr std::array<std::string_view, 21> kNumberWords = {
      "zero",    "one",     "two",       "three",    "four",     "five",    "six",
      "seven",   "eight",   "nine",      "ten",      "eleven",   "twelve",  "thirteen",
      "fourteen", "fifteen", "sixteen",  "seventeen", "eighteen", "nineteen", "twenty"};
  static constexpr std::array<std::string_view, 10> kOrdinals = {
      "first", "second", "third", "fourth", "fifth", "sixth", "seventh", "eighth", "ninth", "tenth"};

  std::vector<TokenEntry> entries;
  auto numeral_range = [&](int lo, int hi) {
    for (int v = lo; v <= hi; ++v) {
      entries.push_back({std::to_string(v), static_cast<double>(v), std::to_string(v)});
    }
  };

  if (name == "numerals_0_20") {
    numeral_range(0, 20);
    return TokenSet::make(std::string(name), std::move(entries), ValueScale::Count);
  }
  if (name == "numerals_1_100") {
    numeral_range(1, 100);
    return TokenSet::make(std::string(name), std::move(entries), ValueScale::Count);
  }
  if (name == "words_zero_twenty") {
    for (std::size_t i = 0; i < kNumberWords.size(); ++i) {
      entries.push_back({std::string(kNumberWords[i]), static_cast<double>(i), std::string(kNumberWords[i])});
    }
    return TokenSet::make(std::string(name), std::move(entries), ValueScale::Count);
  }
  if (name == "magnitudes") {
    entries = {{"hundred", 1e2, "hundred"},
               {"thousand", 1e3, "thousand"},
               {"million", 1e6, "million"},
               {"billion", 1e9, "billion"},
               {"trillion", 1e12, "trillion"}};
    return TokenSet::make(std::string(name), std::move(entries), ValueScale::Magnitude);
  }
  if (name == "ordinals") {
    for (std::size_t i = 0; i < kOrdinals.size(); ++i) {
      entries.push_back({std::string(kOrdinals[i]), static_cast<double>(i + 1), std::string(kOrdinals[i])});
    }
    return TokenSet::make(std::string(name), std::move(entries), ValueScale::Rank);
  }
  throw Error(ErrorCode::UnknownSet, "unknown probe set '" + std::string(name) + "'");
}

namespace detail {

inline std::string_view trim(std::string_view s) {
  constexpr std::string_view ws = " \t\r";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

inline std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  for (;;) {
    const auto comma = line.find(',', start);
    fields.push_back(trim(line.substr(start, comma == std::string_view::npos ? line.npos : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

}  // namespace detail

/// Parses "surface,value[,label]" lines, optionally preceded by the header
/// "surface,value[,label]". Blank lines are skipped. Result is sorted by value.
inline TokenSet parse_custom_set(std::string_view text, std::string name = "custom") {
  std::vector<TokenEntry> entries;
  std::set<std::string, std::less<>> surfaces;
  std::size_t line_no = 0;
  bool first_content = true;

  std::size_t start = 0;
  while (start <= text.size()) {
    const auto nl = text.find('\n', start);
    const auto raw = text.substr(start, nl == std::string_view::npos ? text.npos : nl - start);
    start = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;

    const auto line = detail::trim(raw);
    if (line.empty()) continue;
    const auto fields = detail::split_fields(line);
    const bool header = first_content && fields.size() >= 2 && fields[0] == "surface" && fields[1] == "value";
    first_content = false;
    if (header) continue;

    const auto where = " on line " + std::to_string(line_no);
    if (fields.size() < 2 || fields.size() > 3) {
      throw Error(ErrorCode::ParseError, "expected surface,value[,label]" + where);
    }
    if (fields[0].empty()) throw Error(ErrorCode::ParseError, "empty surface" + where);

    double value = 0.0;
    const auto num = fields[1];
    const auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), value);
    if (num.empty() || ec != std::errc() || ptr != num.data() + num.size() || !std::isfinite(value)) {
      throw Error(ErrorCode::ParseError, "bad number '" + std::string(num) + "'" + where);
    }
    if (!surfaces.emplace(fields[0]).second) {
      throw Error(ErrorCode::ParseError, "duplicate surface '" + std::string(fields[0]) + "'" + where);
    }
    std::string label(fields.size() == 3 && !fields[2].empty() ? fields[2] : fields[0]);
    entries.push_back({std::string(fields[0]), value, std::move(label)});
  }
  if (entries.empty()) throw Error(ErrorCode::ParseError, "custom set has no entries");

  std::stable_sort(entries.begin(), entries.end(),
                   [](const TokenEntry& a, const TokenEntry& b) { return a.value < b.value; });
  for (std::size_t i = 1; i < entries.size(); ++i) {
    if (entries[i].value == entries[i - 1].value) {
      throw Error(ErrorCode::DuplicateValue, "'" + entries[i - 1].surface + "' and '" +
                                                 entries[i].surface + "' share a value");
    }
  }
  return TokenSet::make(std::move(name), std::move(entries), ValueScale::Count);
}

/// Canonical text form accepted by parse_custom_set.
inline std::string format_custom_set(const TokenSet& set) {
  std::string out = "surface,value,label\n";
  for (const auto& e : set.entries) {
    char buf[32];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, e.value);
    out += e.surface + "," + std::string(buf, ptr) + "," + e.label + "\n";
  }
  return out;
}

struct ResolvedSet {
  TokenSet set;
  std::vector<std::size_t> rows;          // one per resolved entry, entry order
  std::vector<std::size_t> entry_index;   // which entry each row belongs to
  std::vector<std::string> missing;       // unresolved surfaces, entry order

  std::size_t size() const noexcept { return rows.size(); }

  std::vector<double> values() const {
    std::vector<double> v;
    v.reserve(rows.size());
    for (auto i : entry_index) v.push_back(set.entries[i].value);
    return v;
  }

  std::vector<std::string> labels() const {
    std::vector<std::string> v;
    v.reserve(rows.size());
    for (auto i : entry_index) v.push_back(set.entries[i].label);
    return v;
  }
};

inline ResolvedSet resolve(const TokenSet& set, const EmbeddingBundle& bundle, const LookupPolicy& policy) {
  ResolvedSet out{set, {}, {}, {}};
  for (std::size_t i = 0; i < set.entries.size(); ++i) {
    if (auto row = lookup_token(bundle, set.entries[i].surface, policy)) {
      out.rows.push_back(*row);
      out.entry_index.push_back(i);
    } else {
      out.missing.push_back(set.entries[i].surface);
    }
  }
  if (!policy.allow_missing && !out.missing.empty()) {
    std::string list;
    for (const auto& m : out.missing) list += (list.empty() ? "" : ", ") + m;
    throw Error(ErrorCode::MissingTokens,
                "set '" + set.name + "' has tokens missing from '" + bundle.model_name() + "': " + list);
  }
  return out;
}

}  // namespace numeracy
