// Copyright 2026 The packconv Authors
// SPDX-License-Identifier: Apache-2.0

#include "packconv/packing.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <string>

#include "packconv/errors.hpp"

namespace packconv {
namespace {

std::atomic<std::uint64_t> g_wide_multiplies{0};

constexpr u128 low_mask(int bits) noexcept {
  return bits >= 128 ? ~u128{0} : (u128{1} << bits) - 1;
}

std::int64_t sign_extend(std::uint64_t field, int bits) noexcept {
  const std::uint64_t sign = std::uint64_t{1} << (bits - 1);
  return static_cast<std::int64_t>((field ^ sign) - sign);
}

void check_slice_geometry(const QuantSeq& seq, int slice_bits, int width) {
  seq.validate();
  if (width < 1 || width > kMaxWordBits) {
    fail(Errc::invalid_argument, "word width must lie in [1, 128], got " + std::to_string(width));
  }
  if (slice_bits < 1) fail(Errc::range, "slice width must be positive");
  if (seq.values.empty()) return;
  const auto span_bits =
      static_cast<std::int64_t>(seq.bitwidth) +
      static_cast<std::int64_t>(seq.values.size() - 1) * slice_bits;
  if (span_bits > width) {
    fail(Errc::overflow, std::to_string(seq.values.size()) + " slices of " +
                             std::to_string(slice_bits) + " bits do not fit a " +
                             std::to_string(width) + "-bit word");
  }
}

}  // namespace

std::int64_t QuantSeq::min_value() const noexcept {
  return is_signed ? -(std::int64_t{1} << (bitwidth - 1)) : 0;
}

std::int64_t QuantSeq::max_value() const noexcept {
  return is_signed ? (std::int64_t{1} << (bitwidth - 1)) - 1 : (std::int64_t{1} << bitwidth) - 1;
}

bool QuantSeq::in_range(std::int64_t v) const noexcept {
  return v >= min_value() && v <= max_value();
}

void QuantSeq::validate() const {
  if (bitwidth < 1 || bitwidth > 62) {
    fail(Errc::invalid_argument, "sequence bitwidth must lie in [1, 62]");
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!in_range(values[i])) {
      fail(Errc::range, "value " + std::to_string(values[i]) + " at index " + std::to_string(i) +
                            " exceeds " + (is_signed ? "signed " : "unsigned ") +
                            std::to_string(bitwidth) + "-bit range");
    }
  }
}

PackedWord::PackedWord(u128 bits, int width, bool is_signed)
    : bits_(bits), width_(width), signed_(is_signed) {
  if (width < 1 || width > kMaxWordBits) {
    fail(Errc::invalid_argument, "word width must lie in [1, 128]");
  }
  if ((bits & ~low_mask(width)) != 0) fail(Errc::overflow, "bits exceed declared word width");
}

PackedWord PackedWord::from_integer(i128 value, int width, bool is_signed) {
  if (width < 1 || width > kMaxWordBits) {
    fail(Errc::invalid_argument, "word width must lie in [1, 128]");
  }
  if (is_signed) {
    if (width < 128) {
      const i128 lo = -(i128{1} << (width - 1));
      const i128 hi = (i128{1} << (width - 1)) - 1;
      if (value < lo || value > hi) fail(Errc::overflow, "value does not fit signed word");
    }
  } else if (value < 0 || (width < 127 && value > static_cast<i128>(low_mask(width)))) {
    fail(Errc::overflow, "value does not fit unsigned word");
  }
  return PackedWord(static_cast<u128>(value) & low_mask(width), width, is_signed);
}

i128 PackedWord::to_integer() const {
  if (signed_) {
    if (width_ == 128) return static_cast<i128>(bits_);
    const u128 sign = u128{1} << (width_ - 1);
    return static_cast<i128>(bits_ ^ sign) - static_cast<i128>(sign);
  }
  if (width_ == 128 && (bits_ >> 127) != 0) {
    fail(Errc::overflow, "unsigned 128-bit word exceeds the signed conversion range");
  }
  return static_cast<i128>(bits_);
}

bool PackedWord::bit(int index) const noexcept {
  if (index < 0) return false;
  if (index >= width_) return signed_ && ((bits_ >> (width_ - 1)) & 1) != 0;
  return ((bits_ >> index) & 1) != 0;
}

std::uint64_t PackedWord::field(int offset, int count) const noexcept {
  // Materialize the sign/zero-extended 128-bit pattern, then shift.
  u128 extended = bits_;
  const bool negative = signed_ && ((bits_ >> (width_ - 1)) & 1) != 0;
  if (negative) extended |= ~low_mask(width_);
  u128 shifted = 0;
  if (offset >= 128) {
    shifted = negative ? ~u128{0} : 0;
  } else {
    shifted = extended >> offset;
    if (negative && offset > 0) shifted |= ~low_mask(128 - offset);
  }
  return static_cast<std::uint64_t>(shifted & low_mask(count));
}

PackedWord pack_unsigned(const QuantSeq& seq, int slice_bits, int width) {
  check_slice_geometry(seq, slice_bits, width);
  if (seq.is_signed && std::any_of(seq.values.begin(), seq.values.end(),
                                   [](std::int64_t v) { return v < 0; })) {
    fail(Errc::range, "pack_unsigned: negative value in sequence");
  }
  if (slice_bits < seq.bitwidth && seq.values.size() > 1) {
    fail(Errc::range, "pack_unsigned: slice narrower than the element bitwidth");
  }
  u128 bits = 0;
  for (std::size_t n = 0; n < seq.values.size(); ++n) {
    bits |= static_cast<u128>(seq.values[n]) << (slice_bits * static_cast<int>(n));
  }
  return PackedWord(bits, width, false);
}

PackedWord pack_signed(const QuantSeq& seq, int slice_bits, int width) {
  check_slice_geometry(seq, slice_bits, width);
  const std::size_t len = seq.values.size();
  if (len > 1 && slice_bits < seq.bitwidth + 1) {
    fail(Errc::range, "pack_signed: slices need bitwidth + 1 bits for the borrow");
  }
  if (len == 0) return PackedWord(0, width, true);

  u128 bits = 0;
  std::int64_t borrow = 0;
  const int top = static_cast<int>(len - 1);
  for (int n = 0; n < top; ++n) {
    const std::int64_t slice = seq.values[static_cast<std::size_t>(n)] - borrow;
    const u128 field = static_cast<u128>(static_cast<i128>(slice)) & low_mask(slice_bits);
    bits |= field << (slice_bits * n);
    borrow = static_cast<std::int64_t>((field >> (slice_bits - 1)) & 1);
  }
  // The top slice keeps its full signed value; everything above it is the
  // sign extension, so it must fit the bits left in the word.
  const std::int64_t top_value = seq.values[len - 1] - borrow;
  const int top_offset = slice_bits * top;
  const int room = width - top_offset;
  const bool fits = room >= 64 || (top_value >= -(std::int64_t{1} << (room - 1)) &&
                                   top_value <= (std::int64_t{1} << (room - 1)) - 1);
  if (!fits) {
    fail(Errc::overflow, "pack_signed: top slice value " + std::to_string(top_value) +
                             " needs more than the " + std::to_string(room) +
                             " bits left in the word");
  }
  bits |= (static_cast<u128>(static_cast<i128>(top_value)) << top_offset) & low_mask(width);
  return PackedWord(bits, width, true);
}

PackedWord multiply(const PackedWord& a, const PackedWord& b) {
  const int width = a.width() + b.width();
  if (width > kMaxWordBits) {
    fail(Errc::overflow, "product width " + std::to_string(width) + " exceeds 128 bits");
  }
  g_wide_multiplies.fetch_add(1, std::memory_order_relaxed);
  if (!a.is_signed() && !b.is_signed()) return PackedWord(a.bits() * b.bits(), width, false);
  // |a * b| < 2^(width - 1), so the i128 product cannot overflow.
  return PackedWord::from_integer(a.to_integer() * b.to_integer(), width, true);
}

PackedWord accumulate(std::span<const PackedWord> words) {
  if (words.empty()) fail(Errc::shape, "accumulate: no words");
  int widest = 0;
  bool any_signed = false;
  bool any_unsigned = false;
  for (const auto& w : words) {
    widest = std::max(widest, w.width());
    any_signed = any_signed || w.is_signed();
    any_unsigned = any_unsigned || !w.is_signed();
  }
  // An unsigned addend inside a signed sum needs one extra bit.
  const int growth = static_cast<int>(std::bit_width(words.size() - 1));
  const int width = widest + growth + ((any_signed && any_unsigned) ? 1 : 0);
  if (width > kMaxWordBits) {
    fail(Errc::overflow, "accumulator width " + std::to_string(width) + " exceeds 128 bits");
  }
  i128 sum = 0;
  for (const auto& w : words) sum += w.to_integer();
  return PackedWord::from_integer(sum, width, any_signed);
}

std::vector<std::int64_t> unpack(const PackedWord& word, int slice_bits, int count,
                                 bool signed_output) {
  if (slice_bits < 1 || slice_bits > 62) fail(Errc::range, "slice width must lie in [1, 62]");
  if (count < 0) fail(Errc::range, "segment count must be non-negative");
  if (count > 0 && static_cast<std::int64_t>(count - 1) * slice_bits >= word.width()) {
    fail(Errc::range, std::to_string(count) + " segments of " + std::to_string(slice_bits) +
                          " bits exceed a " + std::to_string(word.width()) + "-bit word");
  }
  std::vector<std::int64_t> out(static_cast<std::size_t>(count));
  for (int m = 0; m < count; ++m) {
    const std::uint64_t field = word.field(slice_bits * m, slice_bits);
    if (!signed_output) {
      out[static_cast<std::size_t>(m)] = static_cast<std::int64_t>(field);
      continue;
    }
    std::int64_t value = sign_extend(field, slice_bits);
    if (m > 0 && word.bit(slice_bits * m - 1)) ++value;
    out[static_cast<std::size_t>(m)] = value;
  }
  return out;
}

std::uint64_t wide_multiply_count() noexcept {
  return g_wide_multiplies.load(std::memory_order_relaxed);
}

void reset_wide_multiply_count() noexcept { g_wide_multiplies.store(0, std::memory_order_relaxed); }

}  // namespace packconv
