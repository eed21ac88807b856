#include "encode.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <random>
#include <string>

#include "error.hpp"

namespace lspine {

namespace {

void require_unit_interval(std::span<const double> x) {
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] >= 0.0 && x[i] <= 1.0)) {
      throw Error(ErrorCode::InputOutOfRange,
                  "input " + std::to_string(i) + " = " + std::to_string(x[i]) + " outside [0, 1]");
    }
  }
}

void require_timesteps(std::size_t timesteps) {
  if (timesteps == 0) throw Error(ErrorCode::InvalidConfig, "timesteps must be >= 1");
}

}  // namespace

std::string_view to_string(EncoderKind kind) noexcept {
  return kind == EncoderKind::DeterministicRate ? "det" : "stoch";
}

std::optional<EncoderKind> parse_encoder(std::string_view name) noexcept {
  if (name == "det") return EncoderKind::DeterministicRate;
  if (name == "stoch") return EncoderKind::StochasticRate;
  return std::nullopt;
}

std::size_t SpikeTrain::count(std::size_t i) const noexcept {
  std::size_t n = 0;
  for (std::size_t t = 0; t < timesteps_; ++t) n += at(t, i);
  return n;
}

std::size_t SpikeTrain::total_spikes() const noexcept {
  std::size_t n = 0;
  for (auto b : bits_) n += b;
  return n;
}

SpikeTrain encode_deterministic(std::span<const double> x, std::size_t timesteps) {
  require_unit_interval(x);
  require_timesteps(timesteps);
  SpikeTrain train(timesteps, x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    // The running level floor(x * t) is the integer part of the sigma-delta
    // accumulator; computing it directly keeps float drift out of the count.
    double previous = 0.0;
    for (std::size_t t = 1; t <= timesteps; ++t) {
      const double level = std::floor(x[i] * static_cast<double>(t));
      if (level > previous) train.set(t - 1, i, true);
      previous = level;
    }
  }
  return train;
}

SpikeTrain encode_stochastic(std::span<const double> x, std::size_t timesteps, std::uint64_t seed) {
  require_unit_interval(x);
  require_timesteps(timesteps);
  SpikeTrain train(timesteps, x.size());
  std::mt19937_64 rng(seed);
  constexpr double kInv53 = 1.0 / 9007199254740992.0;
  for (std::size_t t = 0; t < timesteps; ++t) {
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double u = static_cast<double>(rng() >> 11) * kInv53;
      train.set(t, i, u < x[i]);
    }
  }
  return train;
}

SpikeTrain encode(const EncoderConfig& cfg, std::span<const double> x, std::size_t timesteps) {
  return cfg.kind == EncoderKind::DeterministicRate ? encode_deterministic(x, timesteps)
                                                    : encode_stochastic(x, timesteps, cfg.seed);
}

std::size_t decode_counts(std::span<const std::uint32_t> counts) {
  if (counts.empty()) throw Error(ErrorCode::EmptyCounts, "cannot decode an empty count vector");
  std::size_t best = 0;
  for (std::size_t k = 1; k < counts.size(); ++k) {
    if (counts[k] > counts[best]) best = k;
  }
  return best;
}

void write_spike_train(std::ostream& os, const SpikeTrain& train) {
  os << train.timesteps() << ' ' << train.width() << '\n';
  std::string line(train.width(), '0');
  for (std::size_t t = 0; t < train.timesteps(); ++t) {
    for (std::size_t i = 0; i < train.width(); ++i) line[i] = train.at(t, i) ? '1' : '0';
    os << line << '\n';
  }
}

SpikeTrain read_spike_train(std::istream& is) {
  long long timesteps = -1;
  long long width = -1;
  if (!(is >> timesteps >> width) || timesteps < 1 || width < 0) {
    throw Error(ErrorCode::Parse, "spike train header must be 'T N' with T >= 1");
  }
  SpikeTrain train(static_cast<std::size_t>(timesteps), static_cast<std::size_t>(width));
  std::string line;
  std::getline(is, line);
  for (std::size_t t = 0; t < train.timesteps(); ++t) {
    if (!std::getline(is, line)) {
      throw Error(ErrorCode::Parse, "spike train ends after " + std::to_string(t) + " rows");
    }
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.size() != train.width()) {
      throw Error(ErrorCode::Parse, "spike train row " + std::to_string(t) + " has " +
                                        std::to_string(line.size()) + " columns, expected " +
                                        std::to_string(train.width()));
    }
    for (std::size_t i = 0; i < line.size(); ++i) {
      if (line[i] != '0' && line[i] != '1') {
        throw Error(ErrorCode::Parse, "spike train row " + std::to_string(t) + " has non-binary character");
      }
      train.set(t, i, line[i] == '1');
    }
  }
  return train;
}

}  // namespace lspine
