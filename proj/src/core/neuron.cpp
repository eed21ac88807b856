#include "neuron.hpp"

#include <algorithm>
#include <utility>
#include <string>
#include <vector>

#include "error.hpp"

namespace lspine {

std::string_view to_string(ResetMode mode) noexcept {
  return mode == ResetMode::HardZero ? "hard" : "subtract";
}

std::optional<ResetMode> parse_reset(std::string_view name) noexcept {
  if (name == "hard") return ResetMode::HardZero;
  if (name == "subtract") return ResetMode::SubtractThreshold;
  return std::nullopt;
}

void LIFConfig::validate() const {
  if (threshold <= 0) {
    throw Error(ErrorCode::InvalidConfig, "threshold must be positive, got " + std::to_string(threshold));
  }
  if (leak_shift < 0 || leak_shift > kMaxLeakShift) {
    throw Error(ErrorCode::InvalidConfig, "leak_shift must be in [0, 15], got " + std::to_string(leak_shift));
  }
  if (v_clamp < threshold) {
    throw Error(ErrorCode::InvalidConfig, "v_clamp " + std::to_string(v_clamp) +
                                              " below threshold " + std::to_string(threshold));
  }
}

LIFState leak(LIFState state, int shift) noexcept {
  if (shift > 0) state.v -= state.v >> shift;
  return state;
}

LIFState integrate(LIFState state, std::int64_t synaptic_sum, const LIFConfig& cfg) noexcept {
  const std::int64_t v = std::clamp<std::int64_t>(std::int64_t{state.v} + synaptic_sum,
                                                  -std::int64_t{cfg.v_clamp}, cfg.v_clamp);
  state.v = static_cast<std::int32_t>(v);
  return state;
}

StepResult fire_and_reset(LIFState state, const LIFConfig& cfg) noexcept {
  if (state.v < cfg.threshold) return {state, false};
  state.v = cfg.reset == ResetMode::HardZero ? 0 : state.v - cfg.threshold;
  ++state.spike_count;
  return {state, true};
}

std::int64_t synaptic_sum(std::span<const PackedWord> weight_words,
                          std::span<const std::uint32_t> spike_words) {
  if (weight_words.size() != spike_words.size()) {
    throw Error(ErrorCode::FanInMismatch, "weight chunks " + std::to_string(weight_words.size()) +
                                              " != spike chunks " + std::to_string(spike_words.size()));
  }
  std::int64_t sum = 0;
  for (std::size_t c = 0; c < weight_words.size(); ++c) {
    if (spike_words[c] == 0) continue;
    const PackedWord w = weight_words[c];
    sum += fold_lanes(spike_gated_accumulate(PackedWord::zero(w.mode()), w, spike_words[c]));
  }
  return sum;
}

StepResult step_packed(LIFState state, std::span<const PackedWord> weight_words,
                       std::span<const std::uint32_t> spike_words, const LIFConfig& cfg) {
  const std::int64_t sum = synaptic_sum(weight_words, spike_words);
  state = leak(state, cfg.leak_shift);
  state = integrate(state, sum, cfg);
  StepResult r = fire_and_reset(state, cfg);
  ++r.state.t;
  return r;
}

StepResult step(LIFState state, std::span<const std::uint8_t> spikes,
                std::span<const std::int32_t> weights, const LIFConfig& cfg, PrecisionMode mode) {
  if (spikes.size() != weights.size()) {
    throw Error(ErrorCode::FanInMismatch, "spike vector length " + std::to_string(spikes.size()) +
                                              " != weight row length " + std::to_string(weights.size()));
  }
  const auto words = pack_row(weights, mode);
  const auto masks = pack_spikes(spikes, mode);
  return step_packed(state, words, masks, cfg);
}

std::uint32_t read_and_clear_counter(LIFState& state) noexcept {
  return std::exchange(state.spike_count, 0u);
}

std::vector<PackedWord> pack_row(std::span<const std::int32_t> weights, PrecisionMode mode) {
  const auto lanes = static_cast<std::size_t>(lanes_of(mode).lane_count);
  std::vector<PackedWord> out;
  out.reserve(chunks_for(weights.size(), mode));
  std::vector<std::int32_t> chunk(lanes);
  for (std::size_t base = 0; base < weights.size(); base += lanes) {
    std::fill(chunk.begin(), chunk.end(), 0);
    const std::size_t n = std::min(lanes, weights.size() - base);
    std::copy_n(weights.begin() + static_cast<std::ptrdiff_t>(base), n, chunk.begin());
    out.push_back(pack(chunk, mode));
  }
  return out;
}

void pack_spikes_into(std::span<const std::uint8_t> spikes, PrecisionMode mode,
                      std::span<std::uint32_t> out) noexcept {
  const auto lanes = static_cast<std::size_t>(lanes_of(mode).lane_count);
  std::fill(out.begin(), out.end(), 0u);
  for (std::size_t i = 0; i < spikes.size(); ++i) {
    if (spikes[i] != 0) out[i / lanes] |= 1u << (i % lanes);
  }
}

std::vector<std::uint32_t> pack_spikes(std::span<const std::uint8_t> spikes, PrecisionMode mode) {
  std::vector<std::uint32_t> out(chunks_for(spikes.size(), mode));
  pack_spikes_into(spikes, mode, out);
  return out;
}

}  // namespace lspine
