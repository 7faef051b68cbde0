#include "gridecon/quantities.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <span>
#include <vector>

namespace gridecon {

namespace {

struct Suffix {
  std::string_view text;
  double scale;
};

// Ordered largest scale first; format_quantity walks them in order.
constexpr Suffix kByteSuffixes[] = {
    {"PB", 1e15}, {"TB", 1e12}, {"GB", 1e9}, {"MB", 1e6}, {"KB", 1e3},
    {"B", 1.0},
};
constexpr Suffix kInstructionSuffixes[] = {
    {"T", 1e12}, {"G", 1e9}, {"M", 1e6}, {"K", 1e3}, {"", 1.0},
};
constexpr Suffix kCpuTimeSuffixes[] = {
    {"y", kCpuHoursPerYear}, {"d", 24.0}, {"h", 1.0},
    {"min", 1.0 / 60.0},     {"s", 1.0 / 3600.0},
};
// "u$" is an input-only alias for "µ$".
constexpr Suffix kMoneySuffixes[] = {
    {"$", 1.0}, {"m$", 1e-3}, {"\xc2\xb5$", 1e-6}, {"u$", 1e-6},
};
constexpr Suffix kMoneyDisplaySuffixes[] = {
    {"$", 1.0}, {"m$", 1e-3}, {"\xc2\xb5$", 1e-6},
};

std::span<const Suffix> suffixes_for(QuantityKind kind) {
  switch (kind) {
    case QuantityKind::Bytes: return kByteSuffixes;
    case QuantityKind::Instructions: return kInstructionSuffixes;
    case QuantityKind::CpuTime: return kCpuTimeSuffixes;
    case QuantityKind::Money: return kMoneySuffixes;
  }
  throw ValidationError("unknown quantity kind");
}

std::span<const Suffix> display_suffixes_for(QuantityKind kind) {
  if (kind == QuantityKind::Money) return kMoneyDisplaySuffixes;
  return suffixes_for(kind);
}

bool is_space(char c) { return c == ' ' || c == '\t'; }

std::string_view trim(std::string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

char ascii_lower(char c) { return (c >= 'A' && c <= 'Z') ? char(c + 32) : c; }

bool suffix_matches(std::string_view text, std::string_view suffix,
                    bool case_sensitive) {
  if (text.size() != suffix.size()) return false;
  for (size_t i = 0; i < text.size(); ++i) {
    if (case_sensitive ? text[i] != suffix[i]
                       : ascii_lower(text[i]) != ascii_lower(suffix[i]))
      return false;
  }
  return true;
}

std::string quoted(std::string_view s) { return "'" + std::string(s) + "'"; }

}  // namespace

std::string_view to_string(QuantityKind kind) {
  switch (kind) {
    case QuantityKind::Bytes: return "bytes";
    case QuantityKind::Instructions: return "instructions";
    case QuantityKind::CpuTime: return "cpu_time";
    case QuantityKind::Money: return "money";
  }
  return "?";
}

double parse_quantity(std::string_view text, QuantityKind kind) {
  const std::string_view input = trim(text);
  if (input.empty())
    throw ValidationError("empty " + std::string(to_string(kind)) +
                          " quantity");

  double value = 0.0;
  const auto [rest, ec] =
      std::from_chars(input.data(), input.data() + input.size(), value);
  if (ec == std::errc::result_out_of_range)
    throw ValidationError("quantity out of range: " + quoted(text));
  if (ec != std::errc{} || rest == input.data())
    throw ValidationError("not a number: " + quoted(text));
  if (!std::isfinite(value))
    throw ValidationError("quantity must be finite: " + quoted(text));

  std::string_view suffix =
      trim(input.substr(static_cast<size_t>(rest - input.data())));

  double scale = 1.0;
  if (!suffix.empty()) {
    const bool case_sensitive = kind == QuantityKind::Money;
    bool found = false;
    for (const Suffix& s : suffixes_for(kind)) {
      if (!s.text.empty() && suffix_matches(suffix, s.text, case_sensitive)) {
        scale = s.scale;
        found = true;
        break;
      }
    }
    if (!found)
      throw ValidationError("unknown " + std::string(to_string(kind)) +
                            " suffix " + quoted(suffix) + " in " +
                            quoted(text));
  }

  if (value < 0.0 && kind != QuantityKind::Money)
    throw ValidationError(std::string(to_string(kind)) +
                          " must be non-negative: " + quoted(text));

  const double result = value * scale;
  if (!std::isfinite(result))
    throw ValidationError("quantity out of range: " + quoted(text));
  return result;
}

std::string format_quantity(double value, QuantityKind kind,
                            int significant_digits) {
  if (!std::isfinite(value))
    throw ValidationError("cannot format non-finite quantity");

  std::string sign;
  if (value < 0.0) {
    sign = "-";
    value = -value;
  }

  const auto table = display_suffixes_for(kind);
  // Largest suffix whose mantissa is at least 1; smallest suffix otherwise.
  // The threshold is a hair under 1 so that values like 1/1e-9, a few ulps
  // shy of 1e9, still read "1GB" rather than "1000MB".
  const Suffix* chosen = &table.back();
  if (value > 0.0) {
    for (const Suffix& s : table) {
      if (value / s.scale >= 1.0 - 1e-12) {
        chosen = &s;
        break;
      }
    }
  } else if (kind == QuantityKind::CpuTime) {
    chosen = &table[2];  // "0h"
  } else if (kind == QuantityKind::Money) {
    chosen = &table[0];  // "0$"
  }

  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", significant_digits,
                value / chosen->scale);
  return sign + buf + std::string(chosen->text);
}

namespace {

double checked_non_negative(double v, const char* what) {
  if (!std::isfinite(v))
    throw ValidationError(std::string(what) + " must be finite");
  if (v < 0.0)
    throw ValidationError(std::string(what) + " must be non-negative");
  return v;
}

}  // namespace

ByteCount::ByteCount(double bytes)
    : bytes_(checked_non_negative(bytes, "byte count")) {}

InstructionCount::InstructionCount(double count)
    : count_(checked_non_negative(count, "instruction count")) {}

CpuTime::CpuTime(double hours)
    : hours_(checked_non_negative(hours, "cpu time")) {}

Money::Money(double dollars) : dollars_(dollars) {
  if (!std::isfinite(dollars)) throw ValidationError("money must be finite");
}

ByteCount parse_bytes(std::string_view text) {
  return ByteCount(parse_quantity(text, QuantityKind::Bytes));
}

InstructionCount parse_instructions(std::string_view text) {
  return InstructionCount(parse_quantity(text, QuantityKind::Instructions));
}

CpuTime parse_cpu_time(std::string_view text) {
  return CpuTime(parse_quantity(text, QuantityKind::CpuTime));
}

Money parse_money(std::string_view text) {
  return Money(parse_quantity(text, QuantityKind::Money));
}

}  // namespace gridecon
