#include "packed_arith.hpp"

#include <string>

#include "error.hpp"

namespace lspine {

namespace {

// Bit `offset` of every lane.
constexpr std::uint32_t replicate_bit(PrecisionMode mode, int offset) noexcept {
  const auto g = lanes_of(mode);
  std::uint64_t out = 0;
  for (int i = 0; i < g.lane_count; ++i) out |= std::uint64_t{1} << (i * g.lane_width + offset);
  return static_cast<std::uint32_t>(out);
}

// Low `bits` bits of every lane.
constexpr std::uint32_t replicate_low(PrecisionMode mode, int bits) noexcept {
  const auto g = lanes_of(mode);
  const std::uint64_t lane = (std::uint64_t{1} << bits) - 1;
  std::uint64_t out = 0;
  for (int i = 0; i < g.lane_count; ++i) out |= lane << (i * g.lane_width);
  return static_cast<std::uint32_t>(out);
}

constexpr std::uint32_t msb_mask(PrecisionMode mode) noexcept {
  return replicate_bit(mode, lanes_of(mode).lane_width - 1);
}

void require_same_mode(PackedWord a, PackedWord b) {
  if (a.mode() != b.mode()) {
    throw Error(ErrorCode::ModeMismatch, std::string("packed operands differ in mode: ") +
                                             std::string(to_string(a.mode())) + " vs " +
                                             std::string(to_string(b.mode())));
  }
}

void require_shift(PrecisionMode mode, int k) {
  if (k < 0 || k >= lanes_of(mode).lane_width) {
    throw Error(ErrorCode::ShiftOutOfRange,
                "shift " + std::to_string(k) + " outside [0, " +
                    std::to_string(lanes_of(mode).lane_width) + ") for " +
                    std::string(to_string(mode)));
  }
}

}  // namespace

std::string_view to_string(PrecisionMode mode) noexcept {
  switch (mode) {
    case PrecisionMode::Int2: return "int2";
    case PrecisionMode::Int4: return "int4";
    case PrecisionMode::Int8: return "int8";
  }
  return "int8";
}

std::optional<PrecisionMode> parse_mode(std::string_view name) noexcept {
  if (name == "int2") return PrecisionMode::Int2;
  if (name == "int4") return PrecisionMode::Int4;
  if (name == "int8") return PrecisionMode::Int8;
  return std::nullopt;
}

std::optional<PrecisionMode> mode_for_bits(int bits) noexcept {
  switch (bits) {
    case 2: return PrecisionMode::Int2;
    case 4: return PrecisionMode::Int4;
    case 8: return PrecisionMode::Int8;
    default: return std::nullopt;
  }
}

std::int64_t lane_min(PrecisionMode mode) noexcept {
  return -(std::int64_t{1} << (lanes_of(mode).lane_width - 1));
}
std::int64_t lane_max(PrecisionMode mode) noexcept {
  return (std::int64_t{1} << (lanes_of(mode).lane_width - 1)) - 1;
}
std::int32_t value_min(PrecisionMode mode) noexcept {
  return -(std::int32_t{1} << (lanes_of(mode).value_width - 1));
}
std::int32_t value_max(PrecisionMode mode) noexcept {
  return (std::int32_t{1} << (lanes_of(mode).value_width - 1)) - 1;
}

std::int32_t PackedWord::lane(int index) const noexcept {
  const auto g = lanes_of(mode_);
  const std::uint64_t field =
      (std::uint64_t{raw_} >> (index * g.lane_width)) & ((std::uint64_t{1} << g.lane_width) - 1);
  const std::uint64_t sign = std::uint64_t{1} << (g.lane_width - 1);
  return static_cast<std::int32_t>(static_cast<std::int64_t>(field ^ sign) -
                                   static_cast<std::int64_t>(sign));
}

PackedWord pack(std::span<const std::int32_t> values, PrecisionMode mode) {
  const auto g = lanes_of(mode);
  if (values.size() != static_cast<std::size_t>(g.lane_count)) {
    throw Error(ErrorCode::LengthMismatch, "pack expects " + std::to_string(g.lane_count) +
                                               " lanes, got " + std::to_string(values.size()));
  }
  const std::uint64_t field_mask = (std::uint64_t{1} << g.lane_width) - 1;
  std::uint64_t raw = 0;
  for (int i = 0; i < g.lane_count; ++i) {
    const std::int64_t v = values[static_cast<std::size_t>(i)];
    if (v < lane_min(mode) || v > lane_max(mode)) {
      throw Error(ErrorCode::LaneOverflow, "lane " + std::to_string(i) + " value " +
                                               std::to_string(v) + " does not fit " +
                                               std::string(to_string(mode)) + " lane");
    }
    raw |= (static_cast<std::uint64_t>(v) & field_mask) << (i * g.lane_width);
  }
  return {static_cast<std::uint32_t>(raw), mode};
}

std::vector<std::int32_t> unpack(PackedWord word) {
  const auto g = lanes_of(word.mode());
  std::vector<std::int32_t> out(static_cast<std::size_t>(g.lane_count));
  for (int i = 0; i < g.lane_count; ++i) out[static_cast<std::size_t>(i)] = word.lane(i);
  return out;
}

PackedWord packed_add(PackedWord a, PackedWord b) {
  require_same_mode(a, b);
  const std::uint32_t h = msb_mask(a.mode());
  // Low bits add without reaching the next lane; the lane MSB is a carry-less XOR.
  const std::uint32_t low = (a.raw() & ~h) + (b.raw() & ~h);
  return {low ^ ((a.raw() ^ b.raw()) & h), a.mode()};
}

PackedWord packed_sub(PackedWord a, PackedWord b) {
  require_same_mode(a, b);
  const std::uint32_t h = msb_mask(a.mode());
  // Setting each lane MSB of the minuend absorbs the borrow inside the lane.
  const std::uint32_t low = (a.raw() | h) - (b.raw() & ~h);
  return {low ^ ((a.raw() ^ ~b.raw()) & h), a.mode()};
}

std::uint32_t expand_mask(std::uint32_t bits, PrecisionMode mode) noexcept {
  const auto g = lanes_of(mode);
  std::uint64_t lsbs = 0;
  for (int i = 0; i < g.lane_count; ++i) {
    lsbs |= std::uint64_t{(bits >> i) & 1u} << (i * g.lane_width);
  }
  const std::uint64_t msbs = lsbs << (g.lane_width - 1);
  return static_cast<std::uint32_t>((msbs - lsbs) | msbs);
}

PackedWord spike_gated_accumulate(PackedWord acc, PackedWord weights, std::uint32_t spike_bits) {
  require_same_mode(acc, weights);
  const int lanes = lanes_of(acc.mode()).lane_count;
  if (lanes < 32 && (spike_bits >> lanes) != 0) {
    throw Error(ErrorCode::MaskLengthMismatch,
                "spike mask has bits beyond lane " + std::to_string(lanes - 1));
  }
  const std::uint32_t gated = weights.raw() & expand_mask(spike_bits, acc.mode());
  return packed_add(acc, PackedWord{gated, acc.mode()});
}

PackedWord spike_gated_accumulate(PackedWord acc, PackedWord weights,
                                  std::span<const std::uint8_t> spike_mask) {
  const int lanes = lanes_of(acc.mode()).lane_count;
  if (spike_mask.size() != static_cast<std::size_t>(lanes)) {
    throw Error(ErrorCode::MaskLengthMismatch, "spike mask length " +
                                                   std::to_string(spike_mask.size()) +
                                                   " != lane count " + std::to_string(lanes));
  }
  std::uint32_t bits = 0;
  for (std::size_t i = 0; i < spike_mask.size(); ++i) {
    if (spike_mask[i] != 0) bits |= 1u << i;
  }
  return spike_gated_accumulate(acc, weights, bits);
}

PackedWord packed_shift_right_arith(PackedWord word, int k) {
  const PrecisionMode mode = word.mode();
  require_shift(mode, k);
  const int w = lanes_of(mode).lane_width;
  const std::uint32_t keep = replicate_low(mode, w - k);
  const std::uint32_t shifted = (word.raw() >> k) & keep;
  const std::uint32_t signs = word.raw() & msb_mask(mode);
  const std::uint32_t negative_lanes = (signs - (signs >> (w - 1))) | signs;
  return {shifted | (negative_lanes & ~keep), mode};
}

PackedWord packed_leak(PackedWord word, int k) {
  return packed_sub(word, packed_shift_right_arith(word, k));
}

std::int64_t fold_lanes(PackedWord word) noexcept {
  const int lanes = lanes_of(word.mode()).lane_count;
  std::int64_t sum = 0;
  for (int i = 0; i < lanes; ++i) sum += word.lane(i);
  return sum;
}

}  // namespace lspine
