#pragma once

// Integer leaky integrate-and-fire neuron. One timestep is
//   leak -> integrate -> fire/reset
// with the synaptic sum produced by spike-gated packed accumulation.

#include <cstdint>
#include <span>
#include <string_view>
#include <optional>

#include "packed_arith.hpp"

namespace lspine {

enum class ResetMode : std::uint8_t { HardZero, SubtractThreshold };

std::string_view to_string(ResetMode mode) noexcept;
std::optional<ResetMode> parse_reset(std::string_view name) noexcept;

inline constexpr int kMaxLeakShift = 15;
inline constexpr std::int32_t kDefaultVClamp = 1 << 20;
inline constexpr int kDefaultLeakShift = 3;

struct LIFConfig {
  std::int32_t threshold = 1;
  int leak_shift = kDefaultLeakShift;
  ResetMode reset = ResetMode::HardZero;
  std::int32_t v_clamp = kDefaultVClamp;

  // Throws Error(InvalidConfig) unless threshold > 0, 0 <= leak_shift <= 15
  // and v_clamp >= threshold.
  void validate() const;
};

struct LIFState {
  std::int32_t v = 0;
  std::uint32_t spike_count = 0;
  std::uint32_t t = 0;

  friend bool operator==(const LIFState&, const LIFState&) = default;
};

struct SpikeEvent {
  std::uint32_t timestep = 0;
  std::uint32_t layer = 0;
  std::uint32_t neuron_id = 0;

  friend bool operator==(const SpikeEvent&, const SpikeEvent&) = default;
};

struct StepResult {
  LIFState state;
  bool spiked = false;
};

// Shift leak v - (v >> shift). A shift of 0 disables leakage.
LIFState leak(LIFState state, int shift) noexcept;

// Adds the synaptic sum and saturates to [-v_clamp, +v_clamp].
LIFState integrate(LIFState state, std::int64_t synaptic_sum, const LIFConfig& cfg) noexcept;

StepResult fire_and_reset(LIFState state, const LIFConfig& cfg) noexcept;

// Spike-gated sum over one fan-in row held as packed words. `spike_words`
// carries lane_count spike bits per word, chunk-aligned with `weight_words`.
std::int64_t synaptic_sum(std::span<const PackedWord> weight_words,
                          std::span<const std::uint32_t> spike_words);

// Full timestep with pre-packed operands.
StepResult step_packed(LIFState state, std::span<const PackedWord> weight_words,
                       std::span<const std::uint32_t> spike_words, const LIFConfig& cfg);

// Full timestep from an unpacked spike vector and weight row; packs the
// operands into lane_count-wide chunks (zero padded) first.
StepResult step(LIFState state, std::span<const std::uint8_t> spikes,
                std::span<const std::int32_t> weights, const LIFConfig& cfg, PrecisionMode mode);

std::uint32_t read_and_clear_counter(LIFState& state) noexcept;

// Packs a weight row into ceil(n / lane_count) words.
std::vector<PackedWord> pack_row(std::span<const std::int32_t> weights, PrecisionMode mode);

// Packs a spike vector into ceil(n / lane_count) lane masks.
std::vector<std::uint32_t> pack_spikes(std::span<const std::uint8_t> spikes, PrecisionMode mode);
void pack_spikes_into(std::span<const std::uint8_t> spikes, PrecisionMode mode,
                      std::span<std::uint32_t> out) noexcept;

constexpr std::size_t chunks_for(std::size_t fan_in, PrecisionMode mode) noexcept {
  const auto lanes = static_cast<std::size_t>(lanes_of(mode).lane_count);
  return (fan_in + lanes - 1) / lanes;
}

}  // namespace lspine
