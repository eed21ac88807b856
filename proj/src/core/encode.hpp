#pragma once

// Rate encoders turning normalized features in [0, 1] into spike rasters.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace lspine {

enum class EncoderKind : std::uint8_t { DeterministicRate, StochasticRate };

std::string_view to_string(EncoderKind kind) noexcept;
std::optional<EncoderKind> parse_encoder(std::string_view name) noexcept;

struct EncoderConfig {
  EncoderKind kind = EncoderKind::DeterministicRate;
  std::uint64_t seed = 0;
};

// T x N binary raster, row t holds the spikes of timestep t.
class SpikeTrain {
 public:
  SpikeTrain() = default;
  SpikeTrain(std::size_t timesteps, std::size_t width)
      : timesteps_(timesteps), width_(width), bits_(timesteps * width, 0) {}

  std::size_t timesteps() const noexcept { return timesteps_; }
  std::size_t width() const noexcept { return width_; }

  std::uint8_t at(std::size_t t, std::size_t i) const noexcept { return bits_[t * width_ + i]; }
  void set(std::size_t t, std::size_t i, bool spike) noexcept { bits_[t * width_ + i] = spike ? 1 : 0; }

  std::span<const std::uint8_t> row(std::size_t t) const noexcept {
    return {bits_.data() + t * width_, width_};
  }
  std::span<std::uint8_t> row(std::size_t t) noexcept { return {bits_.data() + t * width_, width_}; }

  std::size_t count(std::size_t i) const noexcept;
  std::size_t total_spikes() const noexcept;

  friend bool operator==(const SpikeTrain&, const SpikeTrain&) = default;

 private:
  std::size_t timesteps_ = 0;
  std::size_t width_ = 0;
  std::vector<std::uint8_t> bits_;
};

// Sigma-delta rate code: input i spikes at 1-indexed step t exactly when
// floor(x_i * t) > floor(x_i * (t - 1)).
SpikeTrain encode_deterministic(std::span<const double> x, std::size_t timesteps);

// Independent Bernoulli(x_i) draws. The generator is std::mt19937_64 seeded
// with `seed`; draws are consumed row-major over (t, i) and converted to a
// uniform double as (r >> 11) * 2^-53. Entry spikes iff u < x_i.
SpikeTrain encode_stochastic(std::span<const double> x, std::size_t timesteps, std::uint64_t seed);

SpikeTrain encode(const EncoderConfig& cfg, std::span<const double> x, std::size_t timesteps);

// Argmax with lowest-index tie-break.
std::size_t decode_counts(std::span<const std::uint32_t> counts);

// Text form: "T N" header line, then T lines of N '0'/'1' characters.
void write_spike_train(std::ostream& os, const SpikeTrain& train);
SpikeTrain read_spike_train(std::istream& is);

}  // namespace lspine
