// Copyright 2026 The packconv Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace packconv {

__extension__ using u128 = unsigned __int128;
__extension__ using i128 = __int128;

inline constexpr int kMaxWordBits = 128;

/// A quantized integer sequence. Unsigned values lie in [0, 2^bitwidth - 1],
/// signed values in [-2^(bitwidth-1), 2^(bitwidth-1) - 1].
struct QuantSeq {
  std::vector<std::int64_t> values;
  int bitwidth = 8;
  bool is_signed = false;

  std::int64_t min_value() const noexcept;
  std::int64_t max_value() const noexcept;
  bool in_range(std::int64_t v) const noexcept;
  std::size_t size() const noexcept { return values.size(); }

  /// Throws Error(range) on an out-of-range value, Error(invalid_argument) on
  /// a bitwidth outside [1, 62].
  void validate() const;
};

/// Raw bits of a wide register plus the width it was declared with. Signed
/// words are two's complement over width() bits; reads beyond width() see
/// sign extension for signed words and zeros otherwise.
class PackedWord {
 public:
  PackedWord() = default;
  PackedWord(u128 bits, int width, bool is_signed = false);

  /// Two's-complement encoding of `value`; Error(overflow) if it does not fit.
  static PackedWord from_integer(i128 value, int width, bool is_signed);

  u128 bits() const noexcept { return bits_; }
  int width() const noexcept { return width_; }
  bool is_signed() const noexcept { return signed_; }

  /// Integer value under the word's interpretation. Unsigned words of
  /// width 128 only convert when the top bit is clear.
  i128 to_integer() const;

  /// Bits [offset + count - 1 : offset] of the (extended) word.
  std::uint64_t field(int offset, int count) const noexcept;
  bool bit(int index) const noexcept;

  friend bool operator==(const PackedWord&, const PackedWord&) = default;

 private:
  u128 bits_ = 0;
  int width_ = 1;
  bool signed_ = false;
};

/// Places values[n] at bits [S(n+1)-1 : S n] with zero extension.
/// Error(overflow) if bitwidth + (len-1) S > width; Error(range) if a value is
/// out of range or S < bitwidth.
PackedWord pack_unsigned(const QuantSeq& seq, int slice_bits, int width);

/// Signed packing with the borrow trick: slice 0 holds values[0], slice n > 0
/// holds values[n] - (MSB of slice n-1), each as S-bit two's complement; the
/// top slice is sign-extended to `width`. The result read as a signed integer
/// equals sum(values[n] * 2^(S n)). Requires S >= bitwidth + 1 when len > 1.
PackedWord pack_signed(const QuantSeq& seq, int slice_bits, int width);

/// Exact product, width a.width() + b.width() (<= 128, else Error(overflow)).
/// Signed when either factor is. Every call counts as one wide multiply.
PackedWord multiply(const PackedWord& a, const PackedWord& b);

/// Packed-domain sum of words; the result is signed if any input is and its
/// width grows by ceil(log2(count)) over the widest input.
PackedWord accumulate(std::span<const PackedWord> words);

/// Segments the word into `count` S-bit fields.
///   unsigned: y[m] = bits[S(m+1)-1 : S m]
///   signed:   y[0] = signed(bits[S-1 : 0]),
///             y[m] = signed(bits[S(m+1)-1 : S m]) + bit[S m - 1]
/// Segments may run into the extension region above width(); Error(range)
/// if a segment would start at or beyond width(), or S is not in [1, 62].
std::vector<std::int64_t> unpack(const PackedWord& word, int slice_bits, int count,
                                 bool signed_output);

/// Process-wide count of multiply() calls. Atomic; safe from any thread.
std::uint64_t wide_multiply_count() noexcept;
void reset_wide_multiply_count() noexcept;

}  // namespace packconv
