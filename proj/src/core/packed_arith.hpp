#pragma once

// Sub-word packed integer arithmetic over a 32-bit container. The three
// precision modes split the word into 16x2-bit, 4x8-bit or 1x32-bit lanes.
// Lanes are two's-complement, lane 0 sits in the least-significant bits and
// no carry or borrow ever crosses a lane boundary.

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace lspine {

enum class PrecisionMode : std::uint8_t { Int2, Int4, Int8 };

struct LaneGeometry {
  int lane_count;
  int lane_width;
  int value_width;  // bits used by a stored weight; the rest is headroom
};

constexpr LaneGeometry lanes_of(PrecisionMode mode) noexcept {
  switch (mode) {
    case PrecisionMode::Int2: return {16, 2, 2};
    case PrecisionMode::Int4: return {4, 8, 4};
    case PrecisionMode::Int8: return {1, 32, 8};
  }
  return {1, 32, 8};
}

constexpr int bits_of(PrecisionMode mode) noexcept { return lanes_of(mode).value_width; }

std::string_view to_string(PrecisionMode mode) noexcept;
std::optional<PrecisionMode> parse_mode(std::string_view name) noexcept;
std::optional<PrecisionMode> mode_for_bits(int bits) noexcept;

// Signed range representable in one lane.
std::int64_t lane_min(PrecisionMode mode) noexcept;
std::int64_t lane_max(PrecisionMode mode) noexcept;

// Signed range of a stored value (weight) at this precision.
std::int32_t value_min(PrecisionMode mode) noexcept;
std::int32_t value_max(PrecisionMode mode) noexcept;

class PackedWord {
 public:
  constexpr PackedWord() noexcept = default;
  constexpr PackedWord(std::uint32_t raw, PrecisionMode mode) noexcept : raw_(raw), mode_(mode) {}

  constexpr std::uint32_t raw() const noexcept { return raw_; }
  constexpr PrecisionMode mode() const noexcept { return mode_; }

  static constexpr PackedWord zero(PrecisionMode mode) noexcept { return {0u, mode}; }

  // Sign-interpreted value of one lane.
  std::int32_t lane(int index) const noexcept;

  friend constexpr bool operator==(PackedWord, PackedWord) noexcept = default;

 private:
  std::uint32_t raw_ = 0;
  PrecisionMode mode_ = PrecisionMode::Int8;
};

PackedWord pack(std::span<const std::int32_t> values, PrecisionMode mode);
std::vector<std::int32_t> unpack(PackedWord word);

PackedWord packed_add(PackedWord a, PackedWord b);
PackedWord packed_sub(PackedWord a, PackedWord b);

// Adds weights into acc on the lanes whose spike bit is set. `spike_bits`
// holds one bit per lane, bit i for lane i.
PackedWord spike_gated_accumulate(PackedWord acc, PackedWord weights, std::uint32_t spike_bits);
PackedWord spike_gated_accumulate(PackedWord acc, PackedWord weights,
                                  std::span<const std::uint8_t> spike_mask);

PackedWord packed_shift_right_arith(PackedWord word, int k);

// v - (v >> k) per lane.
PackedWord packed_leak(PackedWord word, int k);

// Sum of all lanes, widened to 64 bits.
std::int64_t fold_lanes(PackedWord word) noexcept;

// Each lane bit of `bits` widened into an all-ones lane.
std::uint32_t expand_mask(std::uint32_t bits, PrecisionMode mode) noexcept;

}  // namespace lspine
