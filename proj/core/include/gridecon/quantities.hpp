#pragma once

#include <compare>
#include <string>
#include <string_view>

#include "gridecon/errors.hpp"

namespace gridecon {

// One cpu-year is 365.25 days of cpu time.
inline constexpr double kCpuHoursPerYear = 8766.0;

enum class QuantityKind { Bytes, Instructions, CpuTime, Money };

std::string_view to_string(QuantityKind kind);

// Parses "<number><optional suffix>" into the kind's canonical unit:
// bytes, instructions, cpu-hours, or dollars.
//
// Suffixes are decimal SI throughout:
//   bytes:         B KB MB GB TB PB          (1 KB = 1e3 B)
//   instructions:  K M G T                   (1 T = 1e12)
//   cpu time:      s min h d y               (1 y = 8766 h)
//   money:         $  m$ = 1e-3 $  µ$/u$ = 1e-6 $
//
// Byte, instruction, and time suffixes are case-insensitive; money suffixes
// are case-sensitive so that milli-dollars stay unambiguous. Negative values
// are rejected for every kind except money. Throws ValidationError.
double parse_quantity(std::string_view text, QuantityKind kind);

// Renders a value with the largest suffix that keeps the mantissa in
// [1, 1000): 1e9 bytes -> "1GB", 1.5e13 instructions -> "15T",
// 1e-5 dollars -> "10µ$". significant_digits defaults high enough that
// parse(format(q)) round-trips within one part in 1e12.
std::string format_quantity(double value, QuantityKind kind,
                            int significant_digits = 12);

// Non-negative byte count (decimal SI). Real-valued: corpus aggregates
// exceed 64-bit integer range.
class ByteCount {
 public:
  ByteCount() = default;
  explicit ByteCount(double bytes);
  double bytes() const { return bytes_; }
  friend auto operator<=>(const ByteCount&, const ByteCount&) = default;
  friend ByteCount operator+(ByteCount a, ByteCount b) {
    return ByteCount(a.bytes_ + b.bytes_);
  }

 private:
  double bytes_ = 0.0;
};

// Non-negative instruction count, real-valued.
class InstructionCount {
 public:
  InstructionCount() = default;
  explicit InstructionCount(double count);
  double count() const { return count_; }
  friend auto operator<=>(const InstructionCount&,
                          const InstructionCount&) = default;

 private:
  double count_ = 0.0;
};

// Non-negative cpu time in cpu-hours.
class CpuTime {
 public:
  CpuTime() = default;
  explicit CpuTime(double hours);
  double hours() const { return hours_; }
  friend auto operator<=>(const CpuTime&, const CpuTime&) = default;

 private:
  double hours_ = 0.0;
};

// Dollars. May be negative; must be finite.
class Money {
 public:
  Money() = default;
  explicit Money(double dollars);
  double dollars() const { return dollars_; }
  friend auto operator<=>(const Money&, const Money&) = default;

 private:
  double dollars_ = 0.0;
};

ByteCount parse_bytes(std::string_view text);
InstructionCount parse_instructions(std::string_view text);
CpuTime parse_cpu_time(std::string_view text);
Money parse_money(std::string_view text);

}  // namespace gridecon
