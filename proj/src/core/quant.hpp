#pragma once

// Post-training symmetric quantization, memory-footprint accounting, the
// floating-point reference LIF, and a small surrogate-gradient trainer used
// to produce desk-scale fixtures.

#include <cstdint>
#include <span>
#include <vector>

#include "array.hpp"
#include "encode.hpp"
#include "neuron.hpp"

namespace lspine {

struct FloatLayer {
  std::size_t in_dim = 0;
  std::size_t out_dim = 0;
  std::vector<double> weights;  // out_dim x in_dim, row-major
  double threshold = 1.0;
  int leak_shift = kDefaultLeakShift;
  ResetMode reset = ResetMode::HardZero;

  std::span<const double> row(std::size_t neuron) const noexcept {
    return {weights.data() + neuron * in_dim, in_dim};
  }
  void validate() const;
};

struct FloatModel {
  std::vector<FloatLayer> layers;
  std::uint32_t timesteps = 1;
  EncoderConfig encoder;

  std::size_t input_dim() const noexcept { return layers.empty() ? 0 : layers.front().in_dim; }
  std::size_t output_dim() const noexcept { return layers.empty() ? 0 : layers.back().out_dim; }
  void validate() const;
};

struct QuantParams {
  int bits = 8;
  double scale = 1.0;
  std::int32_t qmax = 127;
};

// Restricted symmetric range: qmax = 2^(bits-1) - 1. Throws InvalidBits
// unless bits is 2, 4 or 8.
std::int32_t qmax_for_bits(int bits);

struct QuantizedMatrix {
  std::vector<std::int32_t> values;
  QuantParams params;
};

// s = max|W| / qmax (s = 1 for an all-zero matrix);
// Q = clamp(round_half_away_from_zero(W / s), -qmax, qmax).
QuantizedMatrix quantize_layer(std::span<const double> weights, int bits);

// max(1, round(theta / s)).
std::int32_t rescale_threshold(double threshold, double scale);

QuantizedModel quantize_model(const FloatModel& model, int bits);

// Weights q * s and thresholds theta * s.
FloatModel dequantize_model(const QuantizedModel& model);

// Dequantize, then quantize again at `bits`.
QuantizedModel requantize(const QuantizedModel& model, int bits);

struct FootprintReport {
  int bits = 8;
  std::uint64_t params = 0;
  std::uint64_t neurons = 0;
  std::uint64_t weight_bits = 0;
  std::uint64_t state_bits = 0;   // 32-bit membrane per neuron when included
  std::uint64_t total_bytes = 0;  // ceil((weight_bits + state_bits) / 8)
  double ratio_vs_fp32 = 0.0;     // weight storage only
};

struct LayerShape {
  std::size_t in_dim = 0;
  std::size_t out_dim = 0;
};

// bits is 2, 4, 8, or 32 for the FP32 baseline.
FootprintReport footprint(std::span<const LayerShape> shapes, int bits, bool include_state);
FootprintReport footprint(const QuantizedModel& model, int bits, bool include_state);
FootprintReport footprint(const FloatModel& model, int bits, bool include_state);

std::vector<LayerShape> shapes_of(const QuantizedModel& model);
std::vector<LayerShape> shapes_of(const FloatModel& model);

// Decay factor 1 - 2^-shift; a shift of 0 means no leak (factor 1).
double leak_factor(int shift) noexcept;

struct FloatRun {
  std::vector<SpikeTrain> rasters;  // per-layer output rasters
  std::vector<std::uint32_t> counts;
  std::size_t predicted = 0;
};

// Floating-point LIF with the same step order as the integer neuron:
// v <- v * leak_factor + I, fire on v >= theta, then reset. No clamp.
FloatRun simulate_float(const FloatModel& model, const SpikeTrain& train);

struct Dataset {
  std::size_t dim = 0;
  std::size_t classes = 0;
  std::vector<std::vector<double>> x;  // features in [0, 1]
  std::vector<std::size_t> y;

  std::size_t size() const noexcept { return x.size(); }
};

// Gaussian blobs around random class centres in [0.15, 0.85]^dim, clipped
// to [0, 1]. Labels are balanced and the sample order is shuffled.
Dataset make_blobs(std::size_t samples, std::size_t dim, std::size_t classes, double spread,
                   std::uint64_t seed);

// First `train_count` samples and the rest.
std::pair<Dataset, Dataset> split_dataset(const Dataset& data, std::size_t train_count);

struct TrainConfig {
  std::vector<std::size_t> hidden{32};
  std::uint32_t timesteps = 16;
  std::size_t epochs = 30;
  double learning_rate = 0.05;
  double threshold = 1.0;
  int leak_shift = kDefaultLeakShift;
  double logit_gain = 8.0;  // logits = gain * count / T
  std::uint64_t seed = 1;
};

// BPTT over the float LIF with a triangular surrogate derivative
// max(0.05, 1 - |v - theta| / theta) / theta, plain per-sample SGD, reset path
// detached. Deterministic for a fixed seed. Throws DatasetTooSmall for fewer
// than two classes or fewer than two samples per class.
FloatModel train_reference_model(const Dataset& data, const TrainConfig& cfg);

double accuracy_float(const FloatModel& model, const Dataset& data);
double accuracy_quantized(const QuantizedModel& model, const ArrayConfig& cfg, const Dataset& data,
                          std::size_t workers = 1);

}  // namespace lspine
